"""Service layer: pydantic schemas, operations, and the FastAPI app."""
from . import ops, schemas

__all__ = ["ops", "schemas"]

"""Random interval graphs on Poisson-cut circles.

Samplers for the finite model, closed-form predictions for its limits, a
branching-process oracle that checks them, and an ensemble harness tying the
two together.  The HTTP service lives in :mod:`qrg.service` and the command
line client in :mod:`qrg.cli`; neither is imported here.
"""
from .branching import (
    ConvergenceError,
    GWConfig,
    GWSurvivalResult,
    extinction_fixed_point,
    gamma_beta_cdf,
    gw_survival_mc,
    sample_gamma_beta,
)
from .components import (
    ComponentStats,
    DegreeReport,
    component_labels,
    component_stats,
    components,
    degree_histogram,
    degree_length_slope,
    format_component_table,
    same_component_length_prob,
)
from .ensemble import (
    EnsembleReport,
    ErCheckReport,
    ExperimentConfig,
    SweepReport,
    check_violations,
    er_crosscheck,
    er_gamma,
    phase_sweep,
    report_to_csv,
    report_to_json,
    run_ensemble,
    sweep_to_csv,
    sweep_to_json,
)
from .geometry import VertexInterval, arc_intersection_length
from .measures import MeasureHat, measure_hat_integral, mu_full_circle_atom, mu_rectangle_mass
from .params import ModelParams
from .quadrature import QuadratureError, adaptive_simpson
from .sampler import (
    MultiGraph,
    build_graph,
    build_vertices,
    format_edge_list,
    format_vertex_table,
    sample_all_holes,
    sample_holes,
    simplify,
)
from .theory import (
    RootBracketError,
    TheoryPrediction,
    critical_F,
    degree_pmf,
    predictions,
    rho_closed,
    rho_integral,
    solve_gamma,
    survival_equation_lhs,
    survival_residual,
    zeta_closed,
    zeta_integral,
)

__version__ = "0.1.0"

__all__ = [
    "ComponentStats",
    "ConvergenceError",
    "DegreeReport",
    "EnsembleReport",
    "ErCheckReport",
    "ExperimentConfig",
    "GWConfig",
    "GWSurvivalResult",
    "MeasureHat",
    "ModelParams",
    "MultiGraph",
    "QuadratureError",
    "RootBracketError",
    "SweepReport",
    "TheoryPrediction",
    "VertexInterval",
    "adaptive_simpson",
    "arc_intersection_length",
    "build_graph",
    "build_vertices",
    "check_violations",
    "component_labels",
    "component_stats",
    "components",
    "critical_F",
    "degree_histogram",
    "degree_length_slope",
    "degree_pmf",
    "er_crosscheck",
    "er_gamma",
    "extinction_fixed_point",
    "format_component_table",
    "format_edge_list",
    "format_vertex_table",
    "gamma_beta_cdf",
    "gw_survival_mc",
    "measure_hat_integral",
    "mu_full_circle_atom",
    "mu_rectangle_mass",
    "phase_sweep",
    "predictions",
    "report_to_csv",
    "report_to_json",
    "rho_closed",
    "rho_integral",
    "run_ensemble",
    "same_component_length_prob",
    "sample_all_holes",
    "sample_gamma_beta",
    "sample_holes",
    "simplify",
    "solve_gamma",
    "survival_equation_lhs",
    "survival_residual",
    "sweep_to_csv",
    "sweep_to_json",
    "zeta_closed",
    "zeta_integral",
]

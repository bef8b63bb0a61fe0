"""connlab: connection matrices and signless Hodge operators of graphs.

A graph is treated as a one-dimensional simplicial complex (vertices plus
edges).  The package builds its connection matrix L, Green inverse, Dirac
and Hodge operators, verifies the exact identity |H| = L - L^{-1} over the
integers and over prime fields, computes spectral-radius bounds, runs
reversible integer and finite-field dynamics, forms strong ring products,
and solves perturbed versions of the identity by Newton iteration.
"""

from .complexes import Complex, build_complex, star, sphere_chi
from .exact import (
    FieldMatrix,
    IntMatrix,
    IntPolynomial,
    RatMatrix,
    SingularMatrixError,
    charpoly,
    det,
    field_inverse,
    field_reduce,
    inverse_exact,
    inverse_unimodular,
    is_reciprocal,
    matpow,
)
from .dynamics import (
    AutomatonState,
    QuaternionField,
    Trajectory,
    automaton_run,
    cocycle,
    growth_rates,
    jacobi_residual,
    perron_limits,
    quaternion_solution,
    walk,
)
from .graphs import Graph, GraphError, from_spec, generate, load_graph, save_graph
from .newton import (
    NewtonConfig,
    NewtonResult,
    NonConvergenceError,
    SingularJacobianError,
    intersection_pattern,
    perturb_target,
    solve_hydrogen,
    solve_perturbed,
    verify_support,
)
from .operators import (
    OperatorBundle,
    bundle_for,
    energy,
    energy_holds,
    hydrogen_holds,
    hydrogen_holds_mod,
    hydrogen_residual,
    is_unimodular,
    supersymmetry_report,
    trace_report,
)
from .products import product_checks, product_connection, product_hodge, two_time_walk
from .spectra import (
    BoundsReport,
    Spectrum,
    bounds_report,
    eig_sym,
    schur_check,
    spectral_function_sup_distance,
    validate_spectrum_against_charpoly,
)
from .tables import REFERENCE_TABLES, reference_rows

__version__ = "0.1.0"

__all__ = [
    "AutomatonState",
    "BoundsReport",
    "Complex",
    "FieldMatrix",
    "Graph",
    "GraphError",
    "IntMatrix",
    "IntPolynomial",
    "NewtonConfig",
    "NewtonResult",
    "NonConvergenceError",
    "OperatorBundle",
    "QuaternionField",
    "RatMatrix",
    "REFERENCE_TABLES",
    "SingularJacobianError",
    "SingularMatrixError",
    "Spectrum",
    "Trajectory",
    "automaton_run",
    "bounds_report",
    "build_complex",
    "bundle_for",
    "charpoly",
    "cocycle",
    "det",
    "eig_sym",
    "energy",
    "energy_holds",
    "field_inverse",
    "field_reduce",
    "from_spec",
    "generate",
    "growth_rates",
    "hydrogen_holds",
    "hydrogen_holds_mod",
    "hydrogen_residual",
    "intersection_pattern",
    "inverse_exact",
    "inverse_unimodular",
    "is_reciprocal",
    "is_unimodular",
    "jacobi_residual",
    "load_graph",
    "matpow",
    "perron_limits",
    "perturb_target",
    "product_checks",
    "product_connection",
    "product_hodge",
    "quaternion_solution",
    "reference_rows",
    "save_graph",
    "schur_check",
    "solve_hydrogen",
    "solve_perturbed",
    "spectral_function_sup_distance",
    "sphere_chi",
    "supersymmetry_report",
    "trace_report",
    "two_time_walk",
    "validate_spectrum_against_charpoly",
    "verify_support",
    "walk",
    "__version__",
]

"""Chamber/flag opposition graphs of PG(3,q) and generalized quadrangles.

Exact finite-field arithmetic, deterministic geometry enumeration,
opposition graphs, independent-set / coloring solvers with verifiable
certificates, and the Klein correspondence.
"""

from flagopp._core import (  # noqa: F401
    Certificate,
    ColorableResult,
    ConstructionFailedError,
    DivisionByZeroError,
    EnumerateResult,
    Field,
    FingerprintMismatchError,
    GqContext,
    Graph,
    Grid,
    InvalidGridError,
    NotGQError,
    NotLineIndependentError,
    NotPartitionError,
    NotPrimePowerError,
    PgContext,
    SolveResult,
    UnsupportedError,
    chromatic_number,
    coloring_from_ovoid_or_spread,
    enumerate_maximal_is,
    exceptional_gq22,
    greedy_clique_cover,
    grids_by_hyperplane,
    grids_by_subset_closure,
    h44_cover,
    is_maximal_independent,
    k_colorable,
    klein_check,
    lift_line_coloring,
    line_classes_from_cover,
    max_independent_set,
    ovoid_q4,
    pencil_gq,
    pencil_pg,
    pg_coloring,
    pg_covering_family,
    read_gq_file,
    sharpness_set,
    spread_w,
    verify_certificate,
    verify_gq,
    verify_pg,
    write_gq_file,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

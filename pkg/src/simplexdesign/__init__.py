"""Designs and pseudodesigns on the probability simplex: exact moments,
permutation-orbit constructions, verification, and the polynomial algebra
behind symmetry-restricted checks."""

from .core import (
    DesignSet,
    MultiIndex,
    PointVector,
    canonicalize,
    enumerate_multi_indices,
)
from .moments import (
    MomentReport,
    generalized_beta,
    monomial_average,
    power_sum_target,
    simplex_moment,
    symmetrized_average,
)
from .perm import CapExceeded, PermGroup, orbit, parity
from .algebra import (
    DecompositionTable,
    SymPoly,
    decomposition_table,
    homogenize_to,
    in_span,
    partitions,
    symmetrized_monomial,
)
from .verify import (
    DEFAULT_TOLERANCE,
    VerificationResult,
    cross_validate,
    verify_G_restricted,
    verify_brute_force,
    verify_power_sum_criterion,
)
from .construct import (
    FamilySolution,
    UniformExcessSolution,
    build_design,
    corollary_42_roots,
    cyclic_design,
    mirror_design,
    six_point_design,
    solve_three_value_family,
    three_value_cubic,
    uniform_excess_family,
)

__version__ = "0.1.0"

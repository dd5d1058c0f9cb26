"""Exact symbolic engine for current projections of the twisted quantum
affine algebra of type A2(2): weight functions, their mode expansions,
and truncated universal R-matrix factors, all over Q(q)."""

from .qfield import BigRatio, QPoly, QRat, qnum, qpow
from .series import ExpansionSeries, FactoredRational, ratio_degree
from .ncalg import (
    AbstractSymbol,
    ModeSymbol,
    NCExpr,
    abstract,
    mode,
    nc_add,
    nc_equal,
    nc_mul,
    nc_scale,
    principal_degree,
    q_commutator,
)
from .blocks import (
    ArgList,
    KernelConstant,
    build_block,
    build_kernel,
    build_matrices,
    build_tilde_block,
    kernel_value,
    residue_constant,
    residue_constants,
)
from .projection import (
    AdmissiblePair,
    WeightExpr,
    WeightTerm,
    admissible_pairs,
    build_F,
    build_F_IJ,
    build_S,
    build_F_tilde,
    build_S_tilde,
    build_tau_IJ,
    mode_expand,
    star_projection,
    weight_minus_closed,
    weight_plus_closed,
    weight_plus_recursive,
    weight_structure,
)
from .rmatrix import (
    CartanCoeff,
    TensorExpr,
    assemble_R,
    cartan_coeff,
    cartan_tensor,
    r_factor,
    rbar_order,
)
from .verify import SuiteReport, brute_admissible, run_suite

__version__ = "0.1.0"

"""Diverse and dissimilar pairs of satisfying assignments for tractable CNF and XOR classes."""

from diversat._backend import BACKEND, COMPILED
from diversat.dimacs import ParseError, emit_dimacs, emit_xdimacs, parse_dimacs, parse_xdimacs
from diversat.dissimilar_fpt import (
    build_async_formula,
    build_gadget_graph,
    dissimilar_pair_2sat,
    extract_assignment,
    min_soft_deletions,
)
from diversat.diverse_pair import (
    DiversePairResult,
    KTupleResult,
    chain_uncross,
    diverse_pair_double_horn,
    diverse_pair_xp,
    k_diverse_double_horn,
    sum_pairwise_distance,
)
from diversat.formula import (
    Assignment,
    Clause,
    CnfFormula,
    FormulaError,
    Literal,
    UnsupportedClassError,
    XorClause,
    XorFormula,
    classify,
    evaluate,
    hamming,
)
from diversat.reductions import (
    Graph,
    SetSystem,
    graph_to_2cnf,
    indicator_assignment,
    random_instance,
    set_splitting_to_cnf,
)
from diversat.satsolvers import (
    F2Solution,
    F2System,
    double_horn_bounds,
    gauss_solve,
    restrict,
    solve_2sat,
    solve_dual_horn,
    solve_horn,
)
from diversat.vertex_cover import CoverResult, vc_above_lp
from diversat.xor_affine import (
    KernelSearchConfig,
    diverse_pair_xor,
    dissimilar_pair_xor,
    evenset_to_xor,
    max_weight_kernel_vector,
    xor_to_system,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports and the
``DIVERSAT_PURE_PYTHON`` environment variable is unset.  Compiled bitmask
kernels work on 64-bit words; wider instances fall through to Python.
"""

from __future__ import annotations

import os

from diversat import _pykernels as py

try:
    if os.environ.get("DIVERSAT_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from diversat import _ckernels as c
except ImportError:
    c = None

COMPILED = c is not None
BACKEND = "cython" if COMPILED else "python"

_WORD = 63


def _use_c(bits: int) -> bool:
    return COMPILED and bits <= _WORD


def cnf_solutions(n, pos, neg):
    return (c if _use_c(n) else py).cnf_solutions(n, list(pos), list(neg))


def xor_solutions(n, masks, rhs):
    return (c if _use_c(n) else py).xor_solutions(n, list(masks), list(rhs))


def min_soft_violations(n, hard_pos, hard_neg, soft_pos, soft_neg):
    k = c if _use_c(n) else py
    return k.min_soft_violations(
        n, list(hard_pos), list(hard_neg), list(soft_pos), list(soft_neg)
    )


def max_pair_distance(sols, n):
    return (c if _use_c(n) else py).max_pair_distance(list(sols))


def max_weight_span(basis, stop_at, n):
    return (c if _use_c(n) else py).max_weight_span(list(basis), stop_at)


def min_vertex_cover_subsets(nv, edge_masks):
    return (c if _use_c(nv) else py).min_vertex_cover_subsets(nv, list(edge_masks))


def xp_search_2cnf(n, d, closure):
    return (c if _use_c(2 * n) else py).xp_search_2cnf(n, d, list(closure))


def xp_search_horn(n, d, bodies, heads):
    return (c if _use_c(n) else py).xp_search_horn(n, d, list(bodies), list(heads))


def vc_search(nv, indptr, indices, budget, warm_pairs=()):
    return (c if COMPILED else py).vc_search(nv, indptr, indices, budget, warm_pairs)


def lp_value2(nv, indptr, indices):
    return (c if COMPILED else py).lp_value2(nv, indptr, indices)

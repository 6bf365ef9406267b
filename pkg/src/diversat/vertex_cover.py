"""Vertex cover parameterized above the LP lower bound."""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from typing import Iterable, Optional

from diversat import _backend


@dataclass(frozen=True)
class CoverResult:
    found: bool
    cover: Optional[frozenset[int]] = None
    stats: dict = field(default_factory=dict, compare=False)


def to_csr(num_vertices: int, edges: Iterable[tuple[int, int]]) -> tuple[array, array]:
    """0-based CSR adjacency of a 1-based edge list (duplicates merged, loops rejected)."""
    nbrs: list[set[int]] = [set() for _ in range(num_vertices)]
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        nbrs[u - 1].add(v - 1)
        nbrs[v - 1].add(u - 1)
    indptr = array("i", [0])
    indices = array("i")
    for s in nbrs:
        indices.extend(sorted(s))
        indptr.append(len(indices))
    return indptr, indices


def _edges(g) -> list[tuple[int, int]]:
    return list(g.edge_pairs()) if hasattr(g, "edge_pairs") else list(g.edges)


def lp_lower_bound(g) -> float:
    """Optimum of the vertex cover LP relaxation (a multiple of 1/2)."""
    indptr, indices = to_csr(g.num_vertices, _edges(g))
    return _backend.lp_value2(g.num_vertices, indptr, indices) / 2


def vc_above_lp(g, budget: Optional[int] = None) -> CoverResult:
    """Find a vertex cover of size at most ``budget`` (default ``g.budget``).

    Works on any object exposing ``num_vertices`` and 1-based edges (either
    ``edge_pairs()`` or ``edges``).  A recorded ``matching`` on the graph
    warm-starts the LP computation.  The search tree has at most
    ``4**(budget - LP)`` leaves.
    """
    if budget is None:
        budget = g.budget
    if budget < 0:
        return CoverResult(False, stats={"branches": 0})
    nv = g.num_vertices
    indptr, indices = to_csr(nv, _edges(g))
    warm = [(u - 1, v - 1) for u, v in getattr(g, "matching", ())]
    found, cover, branches = _backend.vc_search(nv, indptr, indices, budget, warm)
    stats = {"branches": branches, "vertices": nv, "edges": len(indices) // 2}
    if not found:
        return CoverResult(False, stats=stats)
    return CoverResult(True, frozenset(v + 1 for v in cover), stats=stats)

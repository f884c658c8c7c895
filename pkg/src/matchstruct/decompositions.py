"""Gallai-Edmonds tri-partition and the Dulmage-Mendelsohn decomposition.

The Gallai-Edmonds sets come from one maximum matching plus a single
alternating-forest sweep over all of its exposed vertices. The DM
decomposition of a bipartite factorizable graph orients matched edges both
ways and unmatched edges from the non-distinguished side into the
distinguished one; strongly connected components are then exactly the
factor-components, and reachability between them is the DM order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import PreconditionError
from .graph import Graph, _iter_bits, _mask_of
from .matching import Matching, _grow_forest, _max_matching_mate, maximum_matching
from .posets import CondensedPoset, condense


@dataclass(frozen=True)
class GallaiEdmonds:
    """The tri-partition (D, A, C) of a graph.

    ``d_set`` is the set of vertices exposed by some maximum matching,
    ``a_set`` its neighborhood, ``c_set`` the rest. ``a_set`` is always an
    odd-maximal barrier whose odd components are those of ``d_set``.
    """

    d_set: frozenset[int]
    a_set: frozenset[int]
    c_set: frozenset[int]


def _exposable_vertices(g: Graph, mate: list[int], banned: int = -1) -> list[bool]:
    roots = [v for v in range(g.n) if mate[v] < 0 and v != banned]
    if not roots:
        return [False] * g.n
    outer, _ = _grow_forest(g.adjacency, mate, roots, banned=banned)
    return outer


def gallai_edmonds(g: Graph) -> GallaiEdmonds:
    """Compute the (D, A, C) partition of an arbitrary graph."""
    mate = _max_matching_mate(g)
    outer = _exposable_vertices(g, mate)
    d_mask = 0
    for v, flag in enumerate(outer):
        if flag:
            d_mask |= 1 << v
    a_mask = 0
    for v in _iter_bits(d_mask):
        a_mask |= g.adjacency_masks[v]
    a_mask &= ~d_mask
    full = (1 << g.n) - 1
    return GallaiEdmonds(
        d_set=frozenset(_iter_bits(d_mask)),
        a_set=frozenset(_iter_bits(a_mask)),
        c_set=frozenset(_iter_bits(full & ~d_mask & ~a_mask)),
    )


@dataclass(frozen=True)
class DMDecomposition:
    """DM-components of a bipartite factorizable graph with their order.

    ``order.leq(i, j)`` reads "component i precedes component j": alternating
    paths that start and stay matched on the distinguished side run from
    members of lower components to members of upper ones.
    """

    graph: Graph
    side_a: frozenset[int]
    matching: Matching
    order: CondensedPoset

    @property
    def components(self) -> tuple[frozenset[int], ...]:
        return self.order.components

    def component_of(self, v: int) -> int:
        return self.order.component_of[v]

    def leq(self, i: int, j: int) -> bool:
        return self.order.leq(i, j)


def _two_coloring(g: Graph) -> list[int] | None:
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def dm_decompose(
    g: Graph, side_a: Iterable[int], matching: Matching | None = None
) -> DMDecomposition:
    """DM decomposition of a bipartite factorizable graph with respect to ``side_a``.

    ``side_a`` must be one color class of a proper 2-coloring (every edge must
    cross it). Non-bipartite, badly sided, or non-factorizable inputs are
    rejected; the decomposition is only defined for factorizable graphs here.
    """
    a_set = frozenset(side_a)
    for v in a_set:
        if not (0 <= v < g.n):
            raise PreconditionError(f"vertex {v} out of range [0, {g.n})")
    a_mask = _mask_of(a_set)
    for u, v in g.edges:
        if ((a_mask >> u) & 1) == ((a_mask >> v) & 1):
            if _two_coloring(g) is None:
                raise PreconditionError("graph is not bipartite")
            raise PreconditionError("side_a is not a color class of the graph")
    if matching is None:
        matching = maximum_matching(g)
    else:
        matching = Matching.from_mate(g, matching.mate)
    if not matching.is_perfect():
        raise PreconditionError("graph has no perfect matching")
    out = [0] * g.n
    inc = [0] * g.n
    for u, v in g.edges:
        a, b = (u, v) if (a_mask >> u) & 1 else (v, u)
        if matching.mate[a] == b:
            out[a] |= 1 << b
            out[b] |= 1 << a
            inc[a] |= 1 << b
            inc[b] |= 1 << a
        else:
            out[b] |= 1 << a
            inc[a] |= 1 << b
    return DMDecomposition(
        graph=g,
        side_a=a_set,
        matching=matching,
        order=condense(g.n, out, inc),
    )


def dm_order_leq(d: DMDecomposition, i: int, j: int) -> bool:
    """Closure lookup: does DM-component ``i`` precede ``j``?"""
    return d.leq(i, j)

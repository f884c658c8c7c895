"""Strongly connected components and condensed partial orders.

Digraphs are stored as per-vertex out/in neighbor bitmasks. A ``broadcast``
mask marks senders with an arc to every other vertex; those arcs are kept
implicit so that dense arc batches stay O(words) instead of O(n) each.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .graph import _iter_bits


def _reach(
    masks: Sequence[int], broadcast_extra: Sequence[int] | None,
    start: int, allowed: int,
) -> int:
    """Vertices reachable from the ``start`` mask inside ``allowed``."""
    visited = start & allowed
    frontier = visited
    while frontier:
        nxt = 0
        for v in _iter_bits(frontier):
            nxt |= masks[v]
            if broadcast_extra is not None:
                nxt |= broadcast_extra[v]
        frontier = nxt & allowed & ~visited
        visited |= frontier
    return visited


def strongly_connected_masks(
    n: int, out_masks: Sequence[int], in_masks: Sequence[int], broadcast: int = 0
) -> list[int]:
    """SCC vertex masks via repeated forward/backward reachability.

    Both sweeps may be restricted to still-unassigned vertices because an
    SCC's internal witnesses never leave the SCC.
    """
    full = (1 << n) - 1
    out_extra = None
    in_extra = None
    if broadcast:
        out_extra = [(full ^ (1 << v)) if broadcast >> v & 1 else 0 for v in range(n)]
        in_extra = [broadcast & ~(1 << v) for v in range(n)]
    comps = []
    unassigned = full
    while unassigned:
        low = unassigned & -unassigned
        fwd = _reach(out_masks, out_extra, low, unassigned)
        bwd = _reach(in_masks, in_extra, low, unassigned)
        comp = fwd & bwd
        comps.append(comp)
        unassigned &= ~comp
    return comps


@dataclass(frozen=True)
class CondensedPoset:
    """A partial order on vertex groups, realized as a condensation DAG.

    Component ids follow a topological order of the condensation with minimal
    elements first, ties broken by ascending smallest vertex id. ``leq_masks``
    is the reflexive-transitive closure: bit ``j`` of ``leq_masks[i]`` says
    component ``i`` precedes (or equals) component ``j``.
    """

    components: tuple[frozenset[int], ...]
    component_of: tuple[int, ...]
    leq_masks: tuple[int, ...]
    cover_edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.components)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.leq_masks[i] >> j & 1)

    def upper_ids(self, i: int) -> list[int]:
        return list(_iter_bits(self.leq_masks[i]))

    def strict_upper_ids(self, i: int) -> list[int]:
        return list(_iter_bits(self.leq_masks[i] & ~(1 << i)))

    def relation_pairs(self) -> Iterator[tuple[int, int]]:
        for i, mask in enumerate(self.leq_masks):
            for j in _iter_bits(mask):
                yield (i, j)

    @cached_property
    def component_masks(self) -> tuple[int, ...]:
        masks = []
        for comp in self.components:
            m = 0
            for v in comp:
                m |= 1 << v
            masks.append(m)
        return tuple(masks)


def condense(
    n: int, out_masks: Sequence[int], in_masks: Sequence[int], broadcast: int = 0
) -> CondensedPoset:
    """Condense a digraph on ``0..n-1`` into its reachability partial order."""
    raw = strongly_connected_masks(n, out_masks, in_masks, broadcast)
    k = len(raw)
    raw_of_vertex = [0] * n
    for idx, comp in enumerate(raw):
        for v in _iter_bits(comp):
            raw_of_vertex[v] = idx
    full = (1 << n) - 1
    raw_succ: list[set[int]] = [set() for _ in range(k)]
    raw_pred_count = [0] * k
    for idx, comp in enumerate(raw):
        out = 0
        for v in _iter_bits(comp):
            out |= out_masks[v]
            if broadcast >> v & 1:
                out |= full ^ (1 << v)
        for w in _iter_bits(out & ~comp):
            raw_succ[idx].add(raw_of_vertex[w])
    for idx, succ in enumerate(raw_succ):
        for j in succ:
            raw_pred_count[j] += 1
    # Kahn's algorithm; the heap key yields the canonical component order.
    order: list[int] = []
    heap = [(min(_iter_bits(raw[idx])), idx) for idx in range(k) if raw_pred_count[idx] == 0]
    heapq.heapify(heap)
    pending = raw_pred_count[:]
    while heap:
        _, idx = heapq.heappop(heap)
        order.append(idx)
        for j in raw_succ[idx]:
            pending[j] -= 1
            if pending[j] == 0:
                heapq.heappush(heap, (min(_iter_bits(raw[j])), j))
    new_id = {raw_idx: i for i, raw_idx in enumerate(order)}
    components = tuple(frozenset(_iter_bits(raw[raw_idx])) for raw_idx in order)
    component_of = [0] * n
    for i, comp in enumerate(components):
        for v in comp:
            component_of[v] = i
    succ: list[set[int]] = [set() for _ in range(k)]
    for raw_idx, js in enumerate(raw_succ):
        succ[new_id[raw_idx]] = {new_id[j] for j in js}
    leq = [0] * k
    for i in range(k - 1, -1, -1):
        mask = 1 << i
        for j in succ[i]:
            mask |= leq[j]
        leq[i] = mask
    covers = []
    for i in range(k):
        for j in sorted(succ[i]):
            via_other = 0
            for l in succ[i]:
                if l != j:
                    via_other |= leq[l]
            if not (via_other >> j & 1):
                covers.append((i, j))
    return CondensedPoset(
        components=components,
        component_of=tuple(component_of),
        leq_masks=tuple(leq),
        cover_edges=tuple(sorted(covers)),
    )

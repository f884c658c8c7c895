"""Canonical partition, factor-components, and their partial order.

Everything is produced by one pass that repeatedly picks an unprocessed
vertex ``u``, forms the odd-maximal barrier consisting of ``u`` together
with the neighborhood of the exposable set of ``g - u``, and splits that
barrier along the DM decomposition of its bipartite contraction. Each split
part is one partition class; arcs are drawn in an auxiliary digraph from the
class to the vertices its part covers beyond the barrier. Strongly connected
components of the digraph are exactly the factor-components, and condensing
it yields the component order ("the cathedral poset"), including which upper
components hang off which class.

The total cost is O(nm): each pass costs one alternating-forest sweep plus
one DM decomposition, and every pass retires at least one vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .decompositions import dm_decompose
from .errors import ConsistencyError, PreconditionError
from .graph import Graph, _component_masks, _iter_bits
from .matching import Matching, _grow_forest, _max_matching_mate
from .posets import CondensedPoset, condense


@dataclass(frozen=True)
class CanonicalPartition:
    """Partition of the vertices into classes that no perfect-matching
    alternating path can connect inside their factor-component.

    Two vertices share a class iff they lie in the same factor-component and
    removing both leaves a non-factorizable graph.
    """

    classes: tuple[frozenset[int], ...]
    class_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class AuxDigraph:
    """The auxiliary digraph whose SCCs are the factor-components.

    Arcs run from every vertex of a partition class to every vertex that a
    barrier part built around that class covers beyond the barrier. Senders
    listed in ``broadcast`` have an implicit arc to every other vertex; this
    keeps dense instances compact.
    """

    n: int
    out_masks: tuple[int, ...]
    broadcast: int

    def out_mask(self, v: int) -> int:
        mask = self.out_masks[v]
        if self.broadcast >> v & 1:
            mask |= ((1 << self.n) - 1) ^ (1 << v)
        return mask

    def arcs(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            for w in _iter_bits(self.out_mask(v)):
                yield (v, w)

    @cached_property
    def arc_count(self) -> int:
        return sum(self.out_mask(v).bit_count() for v in range(self.n))


@dataclass(frozen=True)
class CathedralStructure:
    """Canonical partition + factor-components + component order of a
    factorizable graph, with the class-to-upper-component assignment."""

    graph: Graph
    matching: Matching
    partition: CanonicalPartition
    poset: CondensedPoset
    class_upsets: tuple[frozenset[int], ...]
    aux: AuxDigraph

    @property
    def components(self) -> tuple[frozenset[int], ...]:
        return self.poset.components

    def component_of(self, v: int) -> int:
        return self.poset.component_of[v]

    def is_elementary(self) -> bool:
        """True iff the graph has exactly one factor-component."""
        return len(self.components) == 1

    def upstar_vertices(self, h: int) -> frozenset[int]:
        """Union of the vertex sets of all components above ``h`` (inclusive)."""
        out: set[int] = set()
        for j in self.poset.upper_ids(h):
            out.update(self.components[j])
        return frozenset(out)

    def class_upstar_vertices(self, s: int) -> frozenset[int]:
        """The class ``s`` plus the vertices of the components assigned to it."""
        out = set(self.partition.classes[s])
        for j in self.class_upsets[s]:
            out.update(self.components[j])
        return frozenset(out)

    def barrier_part_vertices(self, s: int) -> frozenset[int]:
        """Vertices of the barrier part built around class ``s``:
        everything above its component except what is assigned upward of ``s``."""
        h = self.component_of(min(self.partition.classes[s]))
        return self.upstar_vertices(h) - (
            self.class_upstar_vertices(s) - self.partition.classes[s]
        )

    def to_dict(self) -> dict:
        return {
            "components": [sorted(c) for c in self.components],
            "partition": [sorted(c) for c in self.partition.classes],
            "poset_cover_edges": [list(e) for e in self.poset.cover_edges],
            "class_upsets": {
                str(i): sorted(s) for i, s in enumerate(self.class_upsets)
            },
        }


def cathedral_structure(g: Graph) -> CathedralStructure:
    """Compute the full structure of a factorizable graph in O(nm).

    Raises :class:`PreconditionError` when ``g`` has no perfect matching.
    """
    n = g.n
    adj = g.adjacency
    adj_masks = g.adjacency_masks
    full = (1 << n) - 1
    mate = _max_matching_mate(g)
    if any(w < 0 for w in mate):
        raise PreconditionError("graph has no perfect matching")

    in_pool = [True] * n
    flagged = [False] * n
    classes: list[frozenset[int]] = []
    class_of = [-1] * n
    out_masks = [0] * n
    in_masks = [0] * n
    broadcast = 0

    def settle_class(members: list[int], coup_mask: int, implicit_full: bool) -> None:
        """Record one barrier part: flag bookkeeping, class entry, aux arcs."""
        nonlocal broadcast
        first = members[0]
        fl = flagged[first]
        for x in members:
            if flagged[x] != fl:
                raise ConsistencyError("barrier part mixes settled and unsettled vertices")
        if fl:
            if classes[class_of[first]] != frozenset(members):
                raise ConsistencyError("re-derived class differs from recorded class")
            return
        cls = frozenset(members)
        cls_id = len(classes)
        classes.append(cls)
        if implicit_full:
            broadcast |= 1 << first
        else:
            s_mask = 0
            for x in members:
                s_mask |= 1 << x
            for x in members:
                out_masks[x] |= coup_mask
            for y in _iter_bits(coup_mask):
                in_masks[y] |= s_mask
        for x in members:
            class_of[x] = cls_id
            flagged[x] = True
            in_pool[x] = False

    u = 0
    while u < n:
        if not in_pool[u]:
            u += 1
            continue
        w = mate[u]
        mate[u] = -1
        mate[w] = -1
        try:
            outer, count = _grow_forest(adj, mate, (w,), banned=u, stop_at=n - 1)
        finally:
            mate[u] = w
            mate[w] = u
        if count == n - 1:
            # The whole of g - u is exposable: the barrier is just {u}.
            settle_class([u], full ^ (1 << u), implicit_full=True)
            continue
        d_mask = 0
        for v, fl in enumerate(outer):
            if fl:
                d_mask |= 1 << v
        a_mask = 0
        for v in _iter_bits(d_mask):
            a_mask |= adj_masks[v]
        a_mask &= ~d_mask & ~(1 << u)
        if a_mask == 0:
            settle_class([u], d_mask, implicit_full=False)
            continue
        # Split the barrier along the DM decomposition of its contraction.
        xs = list(_iter_bits(a_mask | (1 << u)))
        t = len(xs)
        k_masks = _component_masks(adj_masks, d_mask)
        if len(k_masks) != t:
            raise ConsistencyError("barrier does not balance its odd components")
        comp_idx: dict[int, int] = {}
        for idx, km in enumerate(k_masks):
            for v in _iter_bits(km):
                comp_idx[v] = idx
        h_edges = set()
        for xi, x in enumerate(xs):
            for nb in _iter_bits(adj_masks[x] & d_mask):
                h_edges.add((xi, t + comp_idx[nb]))
        mate_h = [-1] * (t + t)
        for xi, x in enumerate(xs):
            mx = mate[x]
            if not (d_mask >> mx) & 1:
                raise ConsistencyError("barrier vertex matched outside the odd components")
            j = t + comp_idx[mx]
            if mate_h[j] != -1:
                raise ConsistencyError("odd component matched twice across the barrier")
            mate_h[xi] = j
            mate_h[j] = xi
        contraction = Graph.from_edges(t + t, h_edges)
        dm = dm_decompose(contraction, range(t), matching=Matching(tuple(mate_h)))
        for comp in dm.components:
            members = sorted(xs[i] for i in comp if i < t)
            coup = 0
            for i in comp:
                if i >= t:
                    coup |= k_masks[i - t]
            settle_class(members, coup, implicit_full=False)

    if any(c < 0 for c in class_of):
        raise ConsistencyError("partition does not cover every vertex")

    poset = condense(n, out_masks, in_masks, broadcast)
    aux = AuxDigraph(n=n, out_masks=tuple(out_masks), broadcast=broadcast)
    if aux.arc_count > n * n:
        raise ConsistencyError("auxiliary digraph exceeded its arc budget")

    order = sorted(range(len(classes)), key=lambda i: min(classes[i]))
    classes_sorted = tuple(classes[i] for i in order)
    class_of_sorted = [0] * n
    for cls_id, cls in enumerate(classes_sorted):
        for v in cls:
            class_of_sorted[v] = cls_id
    partition = CanonicalPartition(classes_sorted, tuple(class_of_sorted))

    for cls in classes_sorted:
        if len({poset.component_of[v] for v in cls}) != 1:
            raise ConsistencyError("partition class straddles factor-components")

    class_upsets = _assign_class_upsets(g, poset, partition)
    structure = CathedralStructure(
        graph=g,
        matching=Matching(tuple(mate)),
        partition=partition,
        poset=poset,
        class_upsets=class_upsets,
        aux=aux,
    )
    return structure


def _assign_class_upsets(
    g: Graph, poset: CondensedPoset, partition: CanonicalPartition
) -> tuple[frozenset[int], ...]:
    """Assign each component strictly above H to the unique class of H that
    its attachment touches, and verify the assignment partitions the upset."""
    adj_masks = g.adjacency_masks
    comp_vmask = poset.component_masks
    class_masks = []
    for cls in partition.classes:
        m = 0
        for v in cls:
            m |= 1 << v
        class_masks.append(m)
    upsets: list[set[int]] = [set() for _ in partition.classes]
    for h in range(len(poset)):
        strict = poset.leq_masks[h] & ~(1 << h)
        if not strict:
            continue
        up_vmask = 0
        for j in _iter_bits(strict):
            up_vmask |= comp_vmask[j]
        h_vmask = comp_vmask[h]
        assigned: set[int] = set()
        for piece in _component_masks(adj_masks, up_vmask):
            nb = 0
            for v in _iter_bits(piece):
                nb |= adj_masks[v]
            nb &= h_vmask
            if nb == 0:
                raise ConsistencyError("upper piece is not attached to its component")
            s_id = partition.class_of[(nb & -nb).bit_length() - 1]
            if nb & ~class_masks[s_id]:
                raise ConsistencyError("upper piece attaches to more than one class")
            ids = {poset.component_of[v] for v in _iter_bits(piece)}
            upsets[s_id] |= ids
            assigned |= ids
        expected = set(_iter_bits(strict))
        if assigned != expected:
            raise ConsistencyError("class upsets do not cover the strict upper bounds")
        ids_of_h = [
            i for i, cls in enumerate(partition.classes)
            if poset.component_of[min(cls)] == h
        ]
        if sum(len(upsets[i]) for i in ids_of_h) != len(expected):
            raise ConsistencyError("class upsets overlap")
    return tuple(frozenset(s) for s in upsets)

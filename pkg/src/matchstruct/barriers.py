"""Barrier predicates, the bipartite barrier contraction, and the
decomposition of odd-maximal barriers into canonical-partition classes.

A set X is a barrier when deleting it leaves exactly ``|X| + deficiency``
odd components; it is odd-maximal when no nonempty subset of those odd
components' vertices can be added while staying a barrier, which happens
exactly when every odd component is factor-critical. Odd-maximal barriers
of a factorizable graph split into canonical-partition classes, one per
DM-component of the barrier contraction, and the odd components attached to
each class are determined by the cathedral structure. The decomposition
below recomputes both sides of that correspondence and fails loudly if they
disagree, so it doubles as an internal consistency check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .cathedral import CathedralStructure, cathedral_structure
from .decompositions import dm_decompose, gallai_edmonds
from .errors import ConsistencyError, PreconditionError
from .graph import (
    Graph,
    OddComponents,
    _check_vertex_set,
    _component_masks,
    _iter_bits,
    _mask_of,
    induced_subgraph,
    odd_components,
)
from .matching import Matching, is_factor_critical, maximum_matching


@dataclass(frozen=True)
class BarrierReport:
    """Everything one asks about a candidate barrier X."""

    x: frozenset[int]
    is_barrier: bool
    is_odd_maximal: bool
    odd_component_sets: tuple[frozenset[int], ...]
    d_x: frozenset[int]
    c_x: frozenset[int]
    deficiency_term: int  # q(X) - |X|; equals the graph deficiency iff barrier
    graph_deficiency: int

    def to_dict(self) -> dict:
        return {
            "x": sorted(self.x),
            "is_barrier": self.is_barrier,
            "is_odd_maximal": self.is_odd_maximal,
            "odd_components": [sorted(c) for c in self.odd_component_sets],
            "d_x": sorted(self.d_x),
            "c_x": sorted(self.c_x),
            "deficiency_term": self.deficiency_term,
            "graph_deficiency": self.graph_deficiency,
        }


def barrier_report(g: Graph, x: Iterable[int]) -> BarrierReport:
    """Classify X: barrier or not, odd-maximal or not, with the split of g - X.

    Odd-maximality is decided by the factor-critical criterion on the odd
    components; the definitional check (no extension inside D_X) lives in the
    oracle module and the two are compared in tests.
    """
    xs = _check_vertex_set(g, x)
    oc = odd_components(g, xs)
    deficiency = g.n - 2 * maximum_matching(g).size
    term = oc.q - len(xs)
    is_barrier = term == deficiency
    odd_max = is_barrier and all(
        is_factor_critical(induced_subgraph(g, comp)[0]) for comp in oc.odd
    )
    return BarrierReport(
        x=xs,
        is_barrier=is_barrier,
        is_odd_maximal=odd_max,
        odd_component_sets=oc.odd,
        d_x=oc.d_x,
        c_x=oc.c_x,
        deficiency_term=term,
        graph_deficiency=deficiency,
    )


@dataclass(frozen=True)
class BarrierContraction:
    """Bipartite graph obtained from an odd-maximal barrier X.

    Even components of ``g - X`` and edges inside X are dropped; every odd
    component is contracted to a single vertex. Contracted ids are
    ``0..len(x_vertices)-1`` for X (ascending original id) followed by one id
    per odd component (ascending smallest member).
    """

    graph: Graph
    x_vertices: tuple[int, ...]
    odd_component_sets: tuple[frozenset[int], ...]

    @property
    def side_x(self) -> frozenset[int]:
        return frozenset(range(len(self.x_vertices)))

    def original_x(self, contracted_id: int) -> int:
        return self.x_vertices[contracted_id]

    def component_set(self, contracted_id: int) -> frozenset[int]:
        return self.odd_component_sets[contracted_id - len(self.x_vertices)]

    def to_dict(self) -> dict:
        return {
            "x": list(self.x_vertices),
            "odd_components": [sorted(c) for c in self.odd_component_sets],
            "edges": [list(e) for e in self.graph.sorted_edges()],
        }


def _contract_barrier(g: Graph, xs: frozenset[int], oc: OddComponents) -> BarrierContraction:
    xs_sorted = sorted(xs)
    t = len(xs_sorted)
    comps = sorted(oc.odd, key=min)
    comp_idx: dict[int, int] = {}
    for idx, comp in enumerate(comps):
        for v in comp:
            comp_idx[v] = idx
    edges = set()
    for xi, x in enumerate(xs_sorted):
        for nb in g.adjacency[x]:
            j = comp_idx.get(nb)
            if j is not None:
                edges.add((xi, t + j))
    return BarrierContraction(
        graph=Graph.from_edges(t + len(comps), edges),
        x_vertices=tuple(xs_sorted),
        odd_component_sets=tuple(comps),
    )


def barrier_contraction(g: Graph, x: Iterable[int]) -> BarrierContraction:
    """Build the bipartite contraction of an odd-maximal barrier of a
    factorizable graph; rejects inputs that are not one."""
    xs = _check_vertex_set(g, x)
    report = barrier_report(g, xs)
    if report.graph_deficiency != 0:
        raise PreconditionError("graph has no perfect matching")
    if not report.is_barrier:
        raise PreconditionError("the given set is not a barrier")
    if not report.is_odd_maximal:
        raise PreconditionError("the given barrier is not odd-maximal")
    oc = odd_components(g, xs)
    return _contract_barrier(g, xs, oc)


@dataclass(frozen=True)
class BarrierPart:
    """One slice of an odd-maximal barrier decomposition.

    ``class_vertices`` is the canonical-partition class, ``component_id``
    the factor-component carrying it, ``vertices`` the expanded part (the
    class, its odd components, everything above the component not assigned
    upward of the class).
    """

    class_vertices: frozenset[int]
    component_id: int
    vertices: frozenset[int]

    def to_dict(self) -> dict:
        return {
            "class": sorted(self.class_vertices),
            "component_id": self.component_id,
            "vertices": sorted(self.vertices),
        }


@dataclass(frozen=True)
class BarrierDecomposition:
    """Decomposition of an odd-maximal barrier into canonical classes."""

    x: frozenset[int]
    parts: tuple[BarrierPart, ...]

    def to_dict(self) -> dict:
        return {"x": sorted(self.x), "parts": [p.to_dict() for p in self.parts]}


def decompose_odd_maximal_barrier(
    g: Graph, x: Iterable[int], structure: CathedralStructure | None = None
) -> BarrierDecomposition:
    """Split an odd-maximal barrier X of a factorizable graph into classes.

    Each DM-component of the barrier contraction expands to a part
    ``(S_i, H_i, V_i)``; the expansion is verified against the structure
    queries (``V_i`` must equal everything above ``H_i`` minus what is
    assigned strictly upward of ``S_i``). A mismatch raises
    :class:`ConsistencyError` because it would mean an implementation bug.
    """
    xs = _check_vertex_set(g, x)
    contraction = barrier_contraction(g, xs)
    if structure is None:
        structure = cathedral_structure(g)
    t = len(contraction.x_vertices)
    matching = structure.matching
    mate_h = [-1] * contraction.graph.n
    for xi, xv in enumerate(contraction.x_vertices):
        partner = matching.mate[xv]
        j = next(
            (
                t + idx
                for idx, comp in enumerate(contraction.odd_component_sets)
                if partner in comp
            ),
            None,
        )
        if j is None or mate_h[j] != -1:
            raise ConsistencyError("perfect matching does not cross the barrier properly")
        mate_h[xi] = j
        mate_h[j] = xi
    dm = dm_decompose(
        contraction.graph, contraction.side_x, matching=Matching(tuple(mate_h))
    )
    classes = {cls: i for i, cls in enumerate(structure.partition.classes)}
    parts = []
    covered: set[int] = set()
    for comp in dm.components:
        class_vertices = frozenset(
            contraction.original_x(i) for i in comp if i < t
        )
        expanded = set(class_vertices)
        for i in comp:
            if i >= t:
                expanded |= contraction.component_set(i)
        cls_id = classes.get(class_vertices)
        if cls_id is None:
            raise ConsistencyError(
                f"barrier slice {sorted(class_vertices)} is not a partition class"
            )
        h = structure.component_of(min(class_vertices))
        predicted = structure.barrier_part_vertices(cls_id)
        if frozenset(expanded) != predicted:
            raise ConsistencyError(
                "expanded barrier part disagrees with the structure prediction"
            )
        if covered & expanded:
            raise ConsistencyError("barrier parts overlap")
        covered |= expanded
        parts.append(
            BarrierPart(
                class_vertices=class_vertices,
                component_id=h,
                vertices=frozenset(expanded),
            )
        )
    oc = odd_components(g, xs)
    if covered != set(xs) | set(oc.d_x):
        raise ConsistencyError("barrier parts do not cover X and its odd components")
    parts.sort(key=lambda p: min(p.vertices) if p.vertices else -1)
    return BarrierDecomposition(x=xs, parts=tuple(parts))


def enumerate_odd_maximal_barriers(
    g: Graph,
    limit_n: int = 14,
    *,
    start: int = 0,
    stop: int | None = None,
) -> list[frozenset[int]]:
    """All odd-maximal barriers of a small graph, by subset enumeration.

    ``start``/``stop`` bound the subset-mask range scanned, so a harness can
    chunk the 2^n masks across workers. The empty set counts as a (vacuous)
    odd-maximal barrier of a factorizable graph.
    """
    if g.n > limit_n:
        raise PreconditionError(
            f"graph has {g.n} vertices, above the enumeration limit {limit_n}"
        )
    deficiency = g.n - 2 * maximum_matching(g).size
    full = (1 << g.n) - 1
    adj_masks = g.adjacency_masks
    fc_cache: dict[int, bool] = {}

    def comp_factor_critical(comp_mask: int) -> bool:
        cached = fc_cache.get(comp_mask)
        if cached is None:
            sub, _ = induced_subgraph(g, _iter_bits(comp_mask))
            cached = is_factor_critical(sub)
            fc_cache[comp_mask] = cached
        return cached

    found = []
    end = 1 << g.n if stop is None else min(stop, 1 << g.n)
    for x_mask in range(start, end):
        comps = _component_masks(adj_masks, full & ~x_mask)
        odd = [c for c in comps if c.bit_count() % 2]
        if len(odd) - x_mask.bit_count() != deficiency:
            continue
        if all(comp_factor_critical(c) for c in odd):
            found.append(frozenset(_iter_bits(x_mask)))
    return found


def general_graph_atoms(g: Graph) -> tuple[frozenset[int], tuple[frozenset[int], ...]]:
    """The building blocks of odd-maximal barriers of an arbitrary graph.

    Every odd-maximal barrier is the disjoint union of A(G) and an
    odd-maximal barrier of the factorizable remainder, so the atoms are
    A(G) together with the canonical partition of that remainder.
    """
    ge = gallai_edmonds(g)
    sub, relabel = induced_subgraph(g, ge.c_set)
    structure = cathedral_structure(sub)
    classes = tuple(
        sorted(
            (frozenset(relabel[v] for v in cls) for cls in structure.partition.classes),
            key=min,
        )
    )
    return ge.a_set, classes

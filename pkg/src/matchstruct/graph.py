"""Immutable simple undirected graphs and elementary structural queries.

Vertices are the integers ``0..n-1``. Graphs are frozen after construction,
so values can be shared freely across threads; every operation here returns
new objects and iterates vertices in ascending id order, which makes all
downstream output reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError

VertexSet = frozenset  # vertex sets are frozensets of ints throughout the API


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph: no self-loops, no parallel edges.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``. Adjacency
    views are derived lazily and cached on first use.
    """

    n: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from an edge iterable, normalizing and deduplicating.

        Raises :class:`PreconditionError` on self-loops or out-of-range ids.
        """
        if n < 0:
            raise PreconditionError(f"vertex count must be nonnegative, got {n}")
        norm = set()
        for u, v in pairs:
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range [0, {n})")
            norm.add((u, v) if u < v else (v, u))
        return cls(n, frozenset(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex neighbor tuples, each sorted ascending."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Per-vertex neighbor sets as bitmasks (bit v set iff v is a neighbor)."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ContractionMap:
    """Relabeling produced by :func:`contract`.

    ``vertex_map[old] == new`` for every original vertex; ``blocks[i]`` is the
    set of original vertices merged into the new vertex ``block_vertex[i]``.
    Vertices outside all blocks map injectively, so identities round-trip.
    """

    vertex_map: tuple[int, ...]
    blocks: tuple[frozenset[int], ...]
    block_vertex: tuple[int, ...]

    def preimage(self, new_id: int) -> frozenset[int]:
        """All original vertices mapped to ``new_id``."""
        return frozenset(v for v, w in enumerate(self.vertex_map) if w == new_id)


@dataclass(frozen=True)
class OddComponents:
    """Connected components of ``g - x`` split by parity.

    ``q`` counts the odd components; ``d_x`` is the union of their vertex
    sets and ``c_x`` the vertices of the even components.
    """

    odd: tuple[frozenset[int], ...]
    even: tuple[frozenset[int], ...]
    d_x: frozenset[int]
    c_x: frozenset[int]

    @property
    def q(self) -> int:
        return len(self.odd)


def _check_vertex_set(g: Graph, x: Iterable[int]) -> frozenset[int]:
    xs = frozenset(x)
    for v in xs:
        if not (0 <= v < g.n):
            raise PreconditionError(f"vertex {v} out of range [0, {g.n})")
    return xs


def _mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _component_masks(adj_masks: Sequence[int], within: int) -> list[int]:
    """Connected components restricted to the vertex bitmask ``within``.

    Returned masks are ordered by their smallest vertex.
    """
    comps = []
    remaining = within
    while remaining:
        low = remaining & -remaining
        seen = low
        frontier = low
        while frontier:
            nxt = 0
            for v in _iter_bits(frontier):
                nxt |= adj_masks[v]
            frontier = nxt & within & ~seen
            seen |= frontier
        comps.append(seen)
        remaining &= ~seen
    return comps


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Connected components of ``g`` (or of the induced subgraph on ``within``)."""
    mask = (1 << g.n) - 1 if within is None else _mask_of(_check_vertex_set(g, within))
    return [frozenset(_iter_bits(c)) for c in _component_masks(g.adjacency_masks, mask)]


def odd_components(g: Graph, x: Iterable[int]) -> OddComponents:
    """Components of ``g - x`` with odd size, plus their count and complements."""
    xs = _check_vertex_set(g, x)
    within = ((1 << g.n) - 1) & ~_mask_of(xs)
    odd: list[frozenset[int]] = []
    even: list[frozenset[int]] = []
    for comp in _component_masks(g.adjacency_masks, within):
        vs = frozenset(_iter_bits(comp))
        (odd if len(vs) % 2 else even).append(vs)
    d_x = frozenset().union(*odd) if odd else frozenset()
    c_x = frozenset().union(*even) if even else frozenset()
    return OddComponents(tuple(odd), tuple(even), d_x, c_x)


def contract(g: Graph, blocks: Sequence[Iterable[int]]) -> tuple[Graph, ContractionMap]:
    """Contract each block of vertices into a single vertex.

    Blocks must be nonempty and pairwise disjoint. Parallel edges produced by
    the contraction collapse and self-loops are dropped, so the result is
    again simple. New ids are assigned by ascending smallest original vertex,
    treating every non-contracted vertex as its own unit.
    """
    sets = [_check_vertex_set(g, b) for b in blocks]
    seen: set[int] = set()
    for b in sets:
        if not b:
            raise PreconditionError("empty contraction block")
        if b & seen:
            raise PreconditionError("contraction blocks overlap")
        seen |= b
    units: list[tuple[frozenset[int], bool]] = [
        (frozenset((v,)), False) for v in range(g.n) if v not in seen
    ]
    units.extend((b, True) for b in sets)
    units.sort(key=lambda item: min(item[0]))
    vertex_map = [0] * g.n
    for new_id, (unit, _) in enumerate(units):
        for v in unit:
            vertex_map[v] = new_id
    new_edges = set()
    for u, v in g.edges:
        mu, mv = vertex_map[u], vertex_map[v]
        if mu != mv:
            new_edges.add((mu, mv) if mu < mv else (mv, mu))
    cmap = ContractionMap(
        vertex_map=tuple(vertex_map),
        blocks=tuple(unit for unit, is_block in units if is_block),
        block_vertex=tuple(i for i, (_, is_block) in enumerate(units) if is_block),
    )
    return Graph(len(units), frozenset(new_edges)), cmap


def induced_subgraph(g: Graph, x: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph ``g[x]`` plus the relabeling ``new id -> old id``."""
    xs = sorted(_check_vertex_set(g, x))
    index = {v: i for i, v in enumerate(xs)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges
        if u in index and v in index
    ]
    return Graph.from_edges(len(xs), edges), tuple(xs)


def delete_vertices(g: Graph, x: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """``g - x`` with the relabeling ``new id -> old id``."""
    xs = _check_vertex_set(g, x)
    return induced_subgraph(g, (v for v in range(g.n) if v not in xs))


def neighbor_set(g: Graph, x: Iterable[int]) -> frozenset[int]:
    """All vertices outside ``x`` adjacent to some vertex of ``x``."""
    xs = _check_vertex_set(g, x)
    xmask = _mask_of(xs)
    out = 0
    for v in xs:
        out |= g.adjacency_masks[v]
    return frozenset(_iter_bits(out & ~xmask))

"""Maximum matchings in general graphs and matching-based predicates.

The core is an augmenting-path search with blossom shrinking. Bases of
shrunken blossoms live in a union-find structure whose roots carry member
lists, so absorbing a blossom costs time proportional to the vertices
absorbed instead of a full rescan. All searches scan vertices and neighbors
in ascending id order, so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ConsistencyError, PreconditionError
from .graph import Graph, induced_subgraph


@dataclass(frozen=True)
class Matching:
    """A matching given by its mate table (``-1`` marks exposed vertices)."""

    mate: tuple[int, ...]

    @classmethod
    def from_mate(cls, g: Graph, mate: Sequence[int]) -> "Matching":
        """Validated constructor: mate must be an involution along edges of ``g``."""
        if len(mate) != g.n:
            raise PreconditionError("mate table length differs from vertex count")
        for v, w in enumerate(mate):
            if w < 0:
                continue
            if not (0 <= w < g.n) or mate[w] != v or w == v:
                raise PreconditionError(f"mate table is not an involution at vertex {v}")
            if not g.has_edge(v, w):
                raise PreconditionError(f"matched pair ({v}, {w}) is not an edge")
        return cls(tuple(mate))

    @property
    def n(self) -> int:
        return len(self.mate)

    @cached_property
    def size(self) -> int:
        return sum(1 for w in self.mate if w >= 0) // 2

    @cached_property
    def exposed(self) -> frozenset[int]:
        return frozenset(v for v, w in enumerate(self.mate) if w < 0)

    def covers(self, v: int) -> bool:
        return self.mate[v] >= 0

    def partner(self, v: int) -> int | None:
        w = self.mate[v]
        return w if w >= 0 else None

    def edges(self) -> list[tuple[int, int]]:
        return [(v, w) for v, w in enumerate(self.mate) if 0 <= v < w]

    def is_perfect(self) -> bool:
        return not self.exposed


def _find(base: list[int], x: int) -> int:
    while base[x] != x:
        base[x] = base[base[x]]
        x = base[x]
    return x


def _lca(base: list[int], p: list[int], mate: list[int], a: int, b: int) -> int:
    """Lowest common base of two outer bases along their parent chains."""
    seen = set()
    x = a
    while True:
        seen.add(x)
        mx = mate[x]
        if mx < 0:
            break
        x = _find(base, p[mx])
    y = b
    while y not in seen:
        y = _find(base, p[mate[y]])
    return y


def _mark_path(
    base: list[int],
    p: list[int],
    mate: list[int],
    v: int,
    stop: int,
    child: int,
    merged: list[int],
) -> None:
    """Reparent the path from ``v`` down to the base ``stop``, recording bases to merge."""
    bv = _find(base, v)
    while bv != stop:
        merged.append(bv)
        mv = mate[v]
        merged.append(_find(base, mv))
        p[v] = child
        child = mv
        v = p[mv]
        bv = _find(base, v)


def _absorb(
    base: list[int],
    members: list[list[int]],
    used: list[bool],
    tree: list[int] | None,
    tv: int,
    cur: int,
    merged: list[int],
    queue: list[int],
) -> int:
    """Union the collected bases into ``cur``; newly outer vertices join the queue."""
    added = 0
    for bb in merged:
        rb = _find(base, bb)
        if rb == cur:
            continue
        base[rb] = cur
        mem = members[rb]
        members[rb] = []
        members[cur].extend(mem)
        for i in mem:
            if not used[i]:
                used[i] = True
                if tree is not None:
                    tree[i] = tv
                queue.append(i)
                added += 1
    return added


def _augment_from(
    adj: Sequence[Sequence[int]], mate: list[int], root: int, banned: int
) -> bool:
    """Search for an augmenting path from ``root``; flip and report success."""
    n = len(adj)
    base = list(range(n))
    p = [-1] * n
    used = [False] * n
    members: list[list[int]] = [[i] for i in range(n)]
    if banned >= 0:
        p[banned] = -2  # never claimable: all branches below require p[to] == -1
    used[root] = True
    queue = [root]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        mv = mate[v]
        for to in adj[v]:
            if to == mv:
                continue
            if used[to]:
                fv = _find(base, v)
                fto = _find(base, to)
                if fv == fto:
                    continue
                cur = _lca(base, p, mate, fv, fto)
                merged: list[int] = []
                _mark_path(base, p, mate, v, cur, to, merged)
                _mark_path(base, p, mate, to, cur, v, merged)
                _absorb(base, members, used, None, -1, cur, merged, queue)
            elif p[to] == -1:
                p[to] = v
                w = mate[to]
                if w < 0:
                    while to >= 0:
                        pv = p[to]
                        nxt = mate[pv]
                        mate[to] = pv
                        mate[pv] = to
                        to = nxt
                    return True
                used[w] = True
                queue.append(w)
    return False


def _grow_forest(
    adj: Sequence[Sequence[int]],
    mate: list[int],
    roots: Iterable[int],
    banned: int = -1,
    stop_at: int = -1,
) -> tuple[list[bool], int]:
    """Grow alternating forests from exposed roots under a maximum matching.

    Returns the outer (even-level) marks plus their count; the marks are
    exactly the vertices some maximum matching can expose. ``stop_at``
    short-circuits the search once that many vertices are outer. Raises
    :class:`ConsistencyError` if an augmenting path turns up, i.e. the
    matching was not maximum.
    """
    n = len(adj)
    base = list(range(n))
    p = [-1] * n
    used = [False] * n
    tree = [-1] * n
    members: list[list[int]] = [[i] for i in range(n)]
    if banned >= 0:
        p[banned] = -2
    queue: list[int] = []
    for r in roots:
        used[r] = True
        tree[r] = r
        queue.append(r)
    count = len(queue)
    if stop_at >= 0 and count >= stop_at:
        return used, count
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        mv = mate[v]
        tv = tree[v]
        for to in adj[v]:
            if to == mv:
                continue
            if used[to]:
                if tree[to] != tv:
                    raise ConsistencyError(
                        "augmenting path between exposed vertices; matching not maximum"
                    )
                fv = _find(base, v)
                fto = _find(base, to)
                if fv == fto:
                    continue
                cur = _lca(base, p, mate, fv, fto)
                merged: list[int] = []
                _mark_path(base, p, mate, v, cur, to, merged)
                _mark_path(base, p, mate, to, cur, v, merged)
                count += _absorb(base, members, used, tree, tv, cur, merged, queue)
                if stop_at >= 0 and count >= stop_at:
                    return used, count
            elif p[to] == -1:
                p[to] = v
                w = mate[to]
                if w < 0:
                    raise ConsistencyError(
                        "augmenting edge to an exposed vertex; matching not maximum"
                    )
                used[w] = True
                tree[w] = tv
                queue.append(w)
                count += 1
                if stop_at >= 0 and count >= stop_at:
                    return used, count
    return used, count


def _max_matching_mate(g: Graph, banned: int = -1) -> list[int]:
    """Mate table of a maximum matching of ``g`` (optionally avoiding one vertex)."""
    n = g.n
    adj = g.adjacency
    mate = [-1] * n
    for u in range(n):
        if mate[u] < 0 and u != banned:
            for v in adj[u]:
                if mate[v] < 0 and v != banned:
                    mate[u] = v
                    mate[v] = u
                    break
    for root in range(n):
        if mate[root] < 0 and root != banned:
            _augment_from(adj, mate, root, banned)
    return mate


def maximum_matching(g: Graph) -> Matching:
    """A maximum matching of ``g``, deterministic for a given graph."""
    return Matching(tuple(_max_matching_mate(g)))


def is_factorizable(g: Graph) -> bool:
    """True iff ``g`` has a perfect matching. The empty graph qualifies."""
    if g.n % 2:
        return False
    if g.n == 0:
        return True
    return maximum_matching(g).size * 2 == g.n


def is_factor_critical(g: Graph) -> bool:
    """True iff deleting any one vertex leaves a factorizable (or empty) graph.

    The empty graph is not considered factor-critical; a factor-critical
    graph always has an odd number of vertices and is connected.
    """
    if g.n == 0 or g.n % 2 == 0:
        return False
    target = g.n - 1
    for v in range(g.n):
        mate = _max_matching_mate(g, banned=v)
        if sum(1 for w in mate if w >= 0) != target:
            return False
    return True


def near_perfect_matching_exposing(g: Graph, v: int) -> Matching:
    """A matching of size ``(n - 1) / 2`` exposing exactly ``v``.

    Raises :class:`PreconditionError` when ``g - v`` is not factorizable.
    """
    if not (0 <= v < g.n):
        raise PreconditionError(f"vertex {v} out of range [0, {g.n})")
    mate = _max_matching_mate(g, banned=v)
    if sum(1 for w in mate if w >= 0) != g.n - 1:
        raise PreconditionError(f"graph minus vertex {v} has no perfect matching")
    return Matching(tuple(mate))


def saturated_path_exists(g: Graph, u: int, v: int) -> bool:
    """Whether an alternating path saturated at both ends joins ``u`` and ``v``.

    For a factorizable host this holds iff ``g - u - v`` is factorizable,
    which is how it is decided here; no path search is performed.
    """
    if u == v:
        raise PreconditionError("endpoints must be distinct")
    for w in (u, v):
        if not (0 <= w < g.n):
            raise PreconditionError(f"vertex {w} out of range [0, {g.n})")
    sub, _ = induced_subgraph(g, (w for w in range(g.n) if w not in (u, v)))
    return is_factorizable(sub)

"""Definition-level reference implementations, deliberately slow.

These exist only to cross-validate the production algorithms and share no
code with them beyond the :class:`Graph` type and the matching-size routine
(which is itself checked against exhaustive matching enumeration). Component
scans and matching numbers are recomputed here from scratch.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .errors import ConsistencyError, PreconditionError
from .graph import Graph, _iter_bits
from .matching import Matching, is_factorizable


def _own_component_masks(g: Graph, within: int) -> list[int]:
    # Independent re-derivation; intentionally not graph._component_masks.
    adj = g.adjacency
    remaining = within
    comps = []
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        stack = [start]
        seen = 1 << start
        while stack:
            v = stack.pop()
            for w in adj[v]:
                b = 1 << w
                if (within & b) and not (seen & b):
                    seen |= b
                    stack.append(w)
        comps.append(seen)
        remaining &= ~seen
    return comps


def brute_perfect_matchings(g: Graph, cap_n: int = 14) -> list[Matching]:
    """All perfect matchings, by backtracking on the lowest uncovered vertex."""
    if g.n > cap_n:
        raise PreconditionError(f"graph has {g.n} vertices, above the cap {cap_n}")
    if g.n % 2:
        return []
    adj = g.adjacency
    out: list[Matching] = []
    mate = [-1] * g.n

    def extend(v: int) -> None:
        while v < g.n and mate[v] >= 0:
            v += 1
        if v == g.n:
            out.append(Matching(tuple(mate)))
            return
        for w in adj[v]:
            if w > v and mate[w] < 0:
                mate[v] = w
                mate[w] = v
                extend(v + 1)
                mate[v] = -1
                mate[w] = -1

    extend(0)
    return out


def brute_matching_number(g: Graph) -> int:
    """Maximum matching size by exhaustive branch on the lowest vertex."""
    adj_masks = g.adjacency_masks

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if not mask:
            return 0
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        out = best(rest)  # v stays exposed
        for w in _iter_bits(adj_masks[v] & rest):
            out = max(out, 1 + best(rest & ~(1 << w)))
        return out

    result = best((1 << g.n) - 1)
    best.cache_clear()
    return result


def brute_deficiency(g: Graph) -> int:
    return g.n - 2 * brute_matching_number(g)


def _brute_factorizable(g: Graph, within: int) -> bool:
    size = within.bit_count()
    if size % 2:
        return False
    adj_masks = g.adjacency_masks

    @lru_cache(maxsize=None)
    def can(mask: int) -> bool:
        if not mask:
            return True
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        for w in _iter_bits(adj_masks[v] & rest):
            if can(rest & ~(1 << w)):
                return True
        return False

    result = can(within)
    can.cache_clear()
    return result


def brute_exposable_vertices(g: Graph) -> frozenset[int]:
    """Vertices some maximum matching exposes: brute per-vertex comparison."""
    adj_masks = g.adjacency_masks

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if not mask:
            return 0
        low = mask & -mask
        u = low.bit_length() - 1
        rest = mask ^ low
        res = best(rest)
        for w in _iter_bits(adj_masks[u] & rest):
            res = max(res, 1 + best(rest & ~(1 << w)))
        return res

    full = (1 << g.n) - 1
    nu = best(full)
    out = frozenset(v for v in range(g.n) if best(full & ~(1 << v)) == nu)
    best.cache_clear()
    return out


def brute_factor_components(g: Graph) -> list[frozenset[int]]:
    """Factor-components via the per-edge allowed test, ordered by min vertex."""
    if not is_factorizable(g):
        raise PreconditionError("graph has no perfect matching")
    full = (1 << g.n) - 1
    allowed_masks = [0] * g.n
    for u, v in g.edges:
        if _brute_factorizable(g, full & ~(1 << u) & ~(1 << v)):
            allowed_masks[u] |= 1 << v
            allowed_masks[v] |= 1 << u
    comps = []
    remaining = full
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        seen = 1 << start
        stack = [start]
        while stack:
            x = stack.pop()
            for y in _iter_bits(allowed_masks[x]):
                if not (seen >> y) & 1:
                    seen |= 1 << y
                    stack.append(y)
        comps.append(frozenset(_iter_bits(seen)))
        remaining &= ~seen
    return sorted(comps, key=min)


def brute_canonical_partition(g: Graph) -> list[frozenset[int]]:
    """Classes of the canonical partition from the pairwise definition.

    Transitivity is asserted rather than assumed: a violation raises
    :class:`ConsistencyError` since it would signal a bug somewhere.
    """
    comps = brute_factor_components(g)
    comp_of = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    full = (1 << g.n) - 1
    related = [[False] * g.n for _ in range(g.n)]
    for v in range(g.n):
        related[v][v] = True
    for u, v in combinations(range(g.n), 2):
        if comp_of[u] != comp_of[v]:
            continue
        if not _brute_factorizable(g, full & ~(1 << u) & ~(1 << v)):
            related[u][v] = related[v][u] = True
    for a in range(g.n):
        for b in range(g.n):
            if not related[a][b]:
                continue
            for c in range(g.n):
                if related[b][c] and not related[a][c]:
                    raise ConsistencyError(
                        f"pairwise relation is not transitive at ({a}, {b}, {c})"
                    )
    classes = []
    seen: set[int] = set()
    for v in range(g.n):
        if v in seen:
            continue
        cls = frozenset(w for w in range(g.n) if related[v][w])
        seen |= set(cls)
        classes.append(cls)
    return sorted(classes, key=min)


def brute_is_factor_critical(g: Graph) -> bool:
    if g.n == 0 or g.n % 2 == 0:
        return False
    full = (1 << g.n) - 1
    return all(_brute_factorizable(g, full & ~(1 << v)) for v in range(g.n))


def brute_poset(g: Graph) -> tuple[list[frozenset[int]], set[tuple[int, int]]]:
    """Factor-components plus the order decided by critical-inducing sets.

    ``(i, j)`` is in the relation iff some union of component vertex sets
    containing both makes the contraction of component ``i`` factor-critical.
    Antisymmetry is asserted.
    """
    comps = brute_factor_components(g)
    k = len(comps)
    relation: set[tuple[int, int]] = {(i, i) for i in range(k)}
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            others = [idx for idx in range(k) if idx not in (i, j)]
            found = False
            for r in range(len(others) + 1):
                for extra in combinations(others, r):
                    union = set(comps[i]) | set(comps[j])
                    for idx in extra:
                        union |= comps[idx]
                    if _critical_inducing(g, union, comps[i]):
                        found = True
                        break
                if found:
                    break
            if found:
                relation.add((i, j))
    for i in range(k):
        for j in range(k):
            if i != j and (i, j) in relation and (j, i) in relation:
                raise ConsistencyError(f"order relation is not antisymmetric at ({i}, {j})")
    return comps, relation


def _critical_inducing(g: Graph, union: set[int], block: frozenset[int]) -> bool:
    sub_vertices = sorted(union)
    index = {v: i for i, v in enumerate(sub_vertices)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    sub = Graph.from_edges(len(sub_vertices), edges)
    block_new = frozenset(index[v] for v in block)
    merged = min(block_new)
    vmap = {}
    nxt = 0
    for v in range(sub.n):
        if v in block_new:
            vmap[v] = None
        else:
            vmap[v] = nxt
            nxt += 1
    contracted_edges = set()
    for u, v in sub.edges:
        mu = vmap[u] if vmap[u] is not None else nxt
        mv = vmap[v] if vmap[v] is not None else nxt
        if mu != mv:
            contracted_edges.add((min(mu, mv), max(mu, mv)))
    contracted = Graph.from_edges(nxt + 1, contracted_edges)
    return brute_is_factor_critical(contracted)


def brute_barriers(g: Graph) -> list[frozenset[int]]:
    """Every barrier of a small graph, by subset enumeration."""
    if g.n > 14:
        raise PreconditionError(f"graph has {g.n} vertices, above the cap 14")
    deficiency = brute_deficiency(g)
    full = (1 << g.n) - 1
    out = []
    for x_mask in range(1 << g.n):
        comps = _own_component_masks(g, full & ~x_mask)
        q = sum(1 for c in comps if c.bit_count() % 2)
        if q - x_mask.bit_count() == deficiency:
            out.append(frozenset(_iter_bits(x_mask)))
    return out


def brute_maximal_barriers(g: Graph) -> list[frozenset[int]]:
    """Inclusion-maximal barriers."""
    barriers = brute_barriers(g)
    return [
        b for b in barriers
        if not any(b < other for other in barriers)
    ]


def brute_odd_maximal_barriers(g: Graph) -> list[frozenset[int]]:
    """Odd-maximal barriers by the definition: no extension inside D_X."""
    barriers = brute_barriers(g)
    barrier_set = set(barriers)
    full = (1 << g.n) - 1
    out = []
    for x in barriers:
        x_mask = 0
        for v in x:
            x_mask |= 1 << v
        d_x: set[int] = set()
        for comp in _own_component_masks(g, full & ~x_mask):
            if comp.bit_count() % 2:
                d_x.update(_iter_bits(comp))
        extendable = any(
            other > x and (other - x) <= d_x for other in barrier_set
        )
        if not extendable:
            out.append(x)
    return out

"""Graph corpora for verification: exhaustive small graphs and seeded random ones.

The exhaustive generator lists one representative per isomorphism class by
growing graphs a vertex at a time and deduplicating with a canonical
certificate. The certificate orders vertices by an iteratively refined
invariant and minimizes the adjacency bitstring only over orderings that
respect the invariant cells, so irregular graphs cost a single pass while
highly symmetric ones fall back to a vectorized sweep over the cell-preserving
permutations.
"""

from __future__ import annotations

import random
from itertools import permutations, product
from typing import Iterator, Sequence

import numpy as np

from .errors import PreconditionError
from .graph import Graph, _component_masks, _iter_bits
from .matching import is_factorizable

Rows = tuple[int, ...]

# Known counts of graphs on n unlabeled vertices (OEIS A000088), used as a
# self-check of the generator in tests.
GRAPH_COUNTS = (1, 2, 4, 11, 34, 156, 1044, 12346)
# Connected graphs on n unlabeled vertices (OEIS A001349).
CONNECTED_GRAPH_COUNTS = (1, 1, 2, 6, 21, 112, 853, 11117)

_pair_cache: dict[int, list[tuple[int, int]]] = {}
_perm_cache: dict[tuple[tuple[int, ...], ...], np.ndarray] = {}


def _pairs(n: int) -> list[tuple[int, int]]:
    ps = _pair_cache.get(n)
    if ps is None:
        ps = [(i, j) for i in range(n) for j in range(i + 1, n)]
        _pair_cache[n] = ps
    return ps


def _refined_cells(rows: Rows, n: int, rounds: int = 3) -> list[list[int]]:
    inv = [rows[v].bit_count() for v in range(n)]
    for _ in range(rounds):
        signatures = [
            (inv[v], tuple(sorted(inv[w] for w in _iter_bits(rows[v]))))
            for v in range(n)
        ]
        codes = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
        nxt = [codes[signatures[v]] for v in range(n)]
        if nxt == inv:
            break
        inv = nxt
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(inv[v], []).append(v)
    return [cells[key] for key in sorted(cells)]


def _bits_for(order: Sequence[int], rows: Rows, pairs: Sequence[tuple[int, int]]) -> int:
    b = 0
    for i, j in pairs:
        b = (b << 1) | ((rows[order[i]] >> order[j]) & 1)
    return b


def _orders_array(cells: list[list[int]]) -> np.ndarray:
    key = tuple(tuple(c) for c in cells)
    arr = _perm_cache.get(key)
    if arr is None:
        orders = [
            [v for part in combo for v in part]
            for combo in product(*(permutations(c) for c in cells))
        ]
        arr = np.array(orders, dtype=np.int64)
        _perm_cache[key] = arr
    return arr


def certificate(rows: Rows, n: int) -> int:
    """Isomorphism-invariant canonical form of an adjacency-row tuple."""
    if n <= 1:
        return 0
    cells = _refined_cells(rows, n)
    pairs = _pairs(n)
    count = 1
    for c in cells:
        for i in range(2, len(c) + 1):
            count *= i
    if count == 1:
        order = [v for cell in cells for v in cell]
        return _bits_for(order, rows, pairs)
    if count <= 64:
        best = None
        for combo in product(*(permutations(c) for c in cells)):
            order = [v for part in combo for v in part]
            b = _bits_for(order, rows, pairs)
            if best is None or b < best:
                best = b
        return best
    orders = _orders_array(cells)
    adj = np.zeros((n, n), dtype=np.uint8)
    for v in range(n):
        for w in _iter_bits(rows[v]):
            adj[v, w] = 1
    permuted = adj[orders[:, :, None], orders[:, None, :]]
    iu = np.triu_indices(n, 1)
    bits = permuted[:, iu[0], iu[1]].astype(np.uint64)
    weights = (1 << np.arange(bits.shape[1] - 1, -1, -1, dtype=np.uint64))
    values = bits @ weights
    return int(values.min())


def _rows_to_graph(rows: Rows) -> Graph:
    n = len(rows)
    edges = [(v, w) for v in range(n) for w in _iter_bits(rows[v]) if w > v]
    return Graph.from_edges(n, edges)


def nonisomorphic_graph_rows(n: int) -> list[Rows]:
    """One adjacency-row tuple per isomorphism class of graphs on ``n`` vertices."""
    if n < 1:
        return [()] if n == 0 else []
    level: dict[int, Rows] = {0: (0,)}
    for k in range(2, n + 1):
        nxt: dict[int, Rows] = {}
        new_bit = 1 << (k - 1)
        for rows in level.values():
            for mask in range(1 << (k - 1)):
                extended = tuple(
                    rows[v] | (new_bit if (mask >> v) & 1 else 0) for v in range(k - 1)
                ) + (mask,)
                cert = certificate(extended, k)
                if cert not in nxt:
                    nxt[cert] = extended
        level = nxt
    return list(level.values())


def _is_connected_rows(rows: Rows) -> bool:
    n = len(rows)
    if n == 0:
        return True
    return _component_masks(rows, (1 << n) - 1)[0] == (1 << n) - 1


def connected_factorizable_graphs(n: int) -> list[Graph]:
    """All connected factorizable graphs on exactly ``n`` vertices, up to iso."""
    if n % 2:
        return []
    if n == 0:
        return [Graph.from_edges(0, [])]
    out = []
    if n == 2:
        return [Graph.from_edges(2, [(0, 1)])]
    # Grow every (n-1)-vertex class, then keep connected factorizable children.
    seen: set[int] = set()
    new_bit = 1 << (n - 1)
    for rows in nonisomorphic_graph_rows(n - 1):
        for mask in range(1, 1 << (n - 1)):
            extended = tuple(
                rows[v] | (new_bit if (mask >> v) & 1 else 0) for v in range(n - 1)
            ) + (mask,)
            if not _is_connected_rows(extended):
                continue
            g = _rows_to_graph(extended)
            if not is_factorizable(g):
                continue
            cert = certificate(extended, n)
            if cert in seen:
                continue
            seen.add(cert)
            out.append(g)
    return out


def connected_factorizable_graphs_up_to(max_n: int) -> Iterator[Graph]:
    """Connected factorizable graphs with 2..max_n vertices, one per class."""
    for n in range(2, max_n + 1, 2):
        yield from connected_factorizable_graphs(n)


def random_graph(n: int, m: int, rng: random.Random) -> Graph:
    """Uniformly sampled simple graph with exactly ``m`` edges."""
    limit = n * (n - 1) // 2
    if not (0 <= m <= limit):
        raise PreconditionError(f"cannot place {m} edges on {n} vertices")
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edges.add((u, v) if u < v else (v, u))
    return Graph.from_edges(n, edges)


def random_factorizable_graph(n: int, m: int, rng: random.Random) -> Graph:
    """Random graph conditioned on factorizability: a hidden perfect matching
    plus ``m - n/2`` extra random edges."""
    if n % 2:
        raise PreconditionError("vertex count must be even")
    limit = n * (n - 1) // 2
    if m < n // 2 or m > limit:
        raise PreconditionError(f"edge count {m} impossible for {n} vertices")
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {
        (perm[2 * i], perm[2 * i + 1]) if perm[2 * i] < perm[2 * i + 1]
        else (perm[2 * i + 1], perm[2 * i])
        for i in range(n // 2)
    }
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edges.add((u, v) if u < v else (v, u))
    return Graph.from_edges(n, edges)


def random_bipartite_factorizable(
    half: int, m: int, rng: random.Random
) -> tuple[Graph, frozenset[int]]:
    """Random factorizable bipartite graph; returns it with its first color class.

    Vertices ``0..half-1`` form side A, the rest side B; a random perfect
    matching across the sides is planted, then extra cross edges are added up
    to ``m`` total.
    """
    if half < 1:
        raise PreconditionError("need at least one vertex per side")
    limit = half * half
    if m < half or m > limit:
        raise PreconditionError(f"edge count {m} impossible for sides of {half}")
    bs = list(range(half, 2 * half))
    rng.shuffle(bs)
    edges = {(a, bs[a]) for a in range(half)}
    while len(edges) < m:
        a = rng.randrange(half)
        b = half + rng.randrange(half)
        edges.add((a, b))
    return Graph.from_edges(2 * half, edges), frozenset(range(half))

"""Independent brute-force oracles for cross-checking the library.

Deliberately naive: no spectral bounds, no incumbent seeding, no memoized
reductions.  These implementations define ground truth for the tests and
must stay decoupled from the code paths they check.
"""

from __future__ import annotations

from itertools import combinations, permutations

from bipart.graphs import Graph, iter_bits, mask_of


def alpha_brute(g: Graph) -> int:
    """Maximum independent set size by scanning all 2^n subsets."""
    best = 0
    for mask in range(1 << g.n):
        if mask.bit_count() <= best:
            continue
        if all(not (g.adj[v] & mask) for v in iter_bits(mask)):
            best = mask.bit_count()
    return best


def _smallest_uncovered(rows: list[int], n: int) -> tuple[int, int] | None:
    for v in range(n):
        if rows[v]:
            return v, (rows[v] & -rows[v]).bit_length() - 1
    return None


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def tau_brute(g: Graph, min_side: int = 1) -> int | None:
    """Exhaustive minimum biclique partition size; None when infeasible.

    Pruning-free except for cutting branches that already match the best
    complete partition found; never consults eigenvalues or independent sets.
    """
    n = g.n
    rows = list(g.adj)
    best = [g.m + 1 if min_side == 1 else None]

    def dfs(parts: int) -> None:
        edge = _smallest_uncovered(rows, n)
        if edge is None:
            if best[0] is None or parts < best[0]:
                best[0] = parts
            return
        if best[0] is not None and parts + 1 >= best[0]:
            return
        a, b = edge
        pool_a = rows[b] & ~(1 << a)
        for sub_a in _submasks(pool_a):
            a_mask = sub_a | (1 << a)
            if a_mask.bit_count() < min_side:
                continue
            cn = rows[a]
            for x in iter_bits(sub_a):
                cn &= rows[x]
            cn &= ~a_mask
            pool_b = cn & ~(1 << b)
            for sub_b in _submasks(pool_b):
                b_mask = sub_b | (1 << b)
                if b_mask.bit_count() < min_side:
                    continue
                saved = [(v, rows[v]) for v in iter_bits(a_mask | b_mask)]
                for x in iter_bits(a_mask):
                    rows[x] &= ~b_mask
                for y in iter_bits(b_mask):
                    rows[y] &= ~a_mask
                dfs(parts + 1)
                for v, row in saved:
                    rows[v] = row

    if g.m == 0:
        return 0
    dfs(0)
    if min_side == 1:
        return best[0]
    return best[0]


def coverage_brute(g: Graph, universe, sets) -> int:
    """Literal maximum of the sequential coverage game.

    Every order of the sets, every subset of the current common neighborhood
    at every step.  Exponential; keep the instances tiny.
    """
    umask = mask_of(universe)
    verts = list(iter_bits(umask))
    index = {v: i for i, v in enumerate(verts)}
    rows0 = []
    for v in verts:
        row = 0
        for u in iter_bits(g.adj[v] & umask):
            row |= 1 << index[u]
        rows0.append(row)
    full = (1 << len(verts)) - 1
    set_masks = [mask_of(index[v] for v in s) for s in sets]

    def play(order_rest: tuple[int, ...], rows: list[int]) -> int:
        if not order_rest:
            return 0
        j, rest = order_rest[0], order_rest[1:]
        a_mask = set_masks[j]
        cn = full
        for v in iter_bits(a_mask):
            cn &= rows[v]
        cn &= ~a_mask
        best = 0
        for l_mask in _submasks(cn):
            nrows = list(rows)
            for x in iter_bits(a_mask):
                nrows[x] &= ~l_mask
            for y in iter_bits(l_mask):
                nrows[y] &= ~a_mask
            got = a_mask.bit_count() * l_mask.bit_count() + play(rest, nrows)
            if got > best:
                best = got
        return best

    best = 0
    for order in permutations(range(len(set_masks))):
        best = max(best, play(tuple(order), list(rows0)))
    return best


def maximal_plays(g: Graph, universe, sets):
    """All k! maximal plays: per order, take the full common neighborhood.

    Yields (order, covered edge set) pairs with edges in original labels.
    """
    umask = mask_of(universe)
    set_list = [tuple(s) for s in sets]
    for order in permutations(range(len(set_list))):
        rows = list(g.adj)
        covered: set[tuple[int, int]] = set()
        for j in order:
            a_mask = mask_of(set_list[j])
            cn = umask
            for v in iter_bits(a_mask):
                cn &= rows[v]
            cn &= ~a_mask
            for x in iter_bits(a_mask):
                for y in iter_bits(cn):
                    covered.add((x, y) if x < y else (y, x))
                rows[x] &= ~cn
            for y in iter_bits(cn):
                rows[y] &= ~a_mask
        yield order, covered


def balanced_side_brute(g: Graph) -> int:
    """Largest balanced biclique side by direct enumeration of both sides."""
    best = 0
    vertices = range(g.n)
    for k in range(1, g.n // 2 + 1):
        found = False
        for a in combinations(vertices, k):
            amask = mask_of(a)
            cn = (1 << g.n) - 1
            for v in a:
                cn &= g.adj[v]
            cn &= ~amask
            if cn.bit_count() >= k:
                found = True
                break
        if found:
            best = k
        else:
            break
    return best


def beta_brute(g: Graph) -> int:
    """Largest induced complete bipartite subgraph order, by subset scan."""
    best = 0
    for mask in range(1, 1 << g.n):
        size = mask.bit_count()
        if size <= best or size < 2:
            continue
        members = list(iter_bits(mask))
        # Try every bipartition of the chosen vertex set.
        for split in range(1, 1 << (size - 1)):
            a_mask = 0
            b_mask = 0
            for i, v in enumerate(members):
                if (split >> i) & 1:
                    a_mask |= 1 << v
                else:
                    b_mask |= 1 << v
            if not a_mask or not b_mask:
                continue
            ok = True
            for v in iter_bits(a_mask):
                if g.adj[v] & a_mask or (g.adj[v] & b_mask) != b_mask:
                    ok = False
                    break
            if ok:
                for v in iter_bits(b_mask):
                    if g.adj[v] & b_mask:
                        ok = False
                        break
            if ok:
                best = size
                break
    return best

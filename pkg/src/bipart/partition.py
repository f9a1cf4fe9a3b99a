"""Biclique edge partitions: validation, constructions, and exact solvers.

The bipartition number of a graph is the minimum number of edge-disjoint
complete bipartite subgraphs (bicliques) whose union is the edge set; the
strong variant forbids stars (parts with a singleton side) and is infinite
when no star-free partition exists.  This module provides the partition
data model, constructive upper bounds built from independent sets and
induced bicliques, a stars-first normal form, and branch-and-bound exact
solvers for both quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graphs import Graph, VertexSet, independence_number_exact, iter_bits, mask_of
from .spectral import inertia_from_rows

__all__ = [
    "INFINITY",
    "Biclique",
    "BicliquePartition",
    "SolveResult",
    "EXACT",
    "LOWER_BOUND_ONLY",
    "validate_partition",
    "star_decomposition",
    "star_plus_biclique_decomposition",
    "largest_induced_biclique",
    "is_induced_biclique",
    "normalize_stars_first",
    "partition_number_exact",
    "strong_partition_number_exact",
    "partition_to_json",
    "partition_from_json",
    "solve_result_to_json",
]

INFINITY = math.inf

EXACT = "exact"
LOWER_BOUND_ONLY = "lower-bound-only"


@dataclass(frozen=True)
class Biclique:
    """One complete bipartite part: disjoint nonempty sides a and b.

    In the context of a host graph every pair (x in a, y in b) must be an
    edge; that is checked by the validators, not the constructor.  A part
    with a singleton side is a star and the singleton is its center.
    """

    a: frozenset[int]
    b: frozenset[int]

    def __post_init__(self) -> None:
        if not self.a or not self.b:
            raise ValueError("biclique sides must be nonempty")
        if self.a & self.b:
            raise ValueError("biclique sides must be disjoint")

    @classmethod
    def of(cls, a: Iterable[int], b: Iterable[int]) -> "Biclique":
        """Build with canonical orientation: |a| <= |b|, ties broken by min vertex."""
        fa, fb = frozenset(a), frozenset(b)
        if (len(fa), min(fa) if fa else -1) > (len(fb), min(fb) if fb else -1):
            fa, fb = fb, fa
        return cls(fa, fb)

    @property
    def is_star(self) -> bool:
        return len(self.a) == 1 or len(self.b) == 1

    def edges(self) -> Iterator[tuple[int, int]]:
        for x in self.a:
            for y in self.b:
                yield (x, y) if x < y else (y, x)

    def edge_count(self) -> int:
        return len(self.a) * len(self.b)


@dataclass(frozen=True)
class BicliquePartition:
    """An ordered list of bicliques together with the graph they partition."""

    host: Graph
    parts: tuple[Biclique, ...]

    def __len__(self) -> int:
        return len(self.parts)

    def violations(self) -> list[str]:
        return validate_partition(self.host, self)

    def is_valid(self) -> bool:
        return not self.violations()


def validate_partition(g: Graph, partition: BicliquePartition) -> list[str]:
    """Every violation of the edge-partition contract, as stable diagnostic strings.

    Checks, per part: vertices in range and every cross pair an edge of g;
    across parts: no edge used twice; globally: every edge of g covered.
    An empty list means the partition is valid.
    """
    issues: list[str] = []
    seen: dict[tuple[int, int], int] = {}
    for i, part in enumerate(partition.parts):
        for v in part.a | part.b:
            if not (0 <= v < g.n):
                issues.append(f"vertex-out-of-range: {v} in part {i}")
        for x in sorted(part.a):
            for y in sorted(part.b):
                if not (0 <= x < g.n and 0 <= y < g.n):
                    continue
                e = (x, y) if x < y else (y, x)
                if not g.has_edge(*e):
                    issues.append(f"non-edge: {e} claimed by part {i}")
                    continue
                if e in seen:
                    issues.append(f"duplicate-edge: {e} in parts {seen[e]} and {i}")
                else:
                    seen[e] = i
    for e in g.edges():
        if e not in seen:
            issues.append(f"uncovered-edge: {e}")
    return issues


def star_decomposition(g: Graph, independent: VertexSet | Iterable[int]) -> BicliquePartition:
    """Partition E(g) into stars centered outside a given independent set.

    Centers are the vertices outside the set, processed in ascending order;
    each star's leaves are the center's neighbors not yet used as centers.
    Centers left with no leaves are dropped, so the result has at most
    n - |independent| parts.
    """
    imask = mask_of(independent) if not isinstance(independent, VertexSet) else independent.mask
    if imask >> g.n:
        raise ValueError("independent set contains out-of-range vertices")
    for v in iter_bits(imask):
        if g.adj[v] & imask:
            raise ValueError("the given vertex set is not independent")
    parts: list[Biclique] = []
    used_centers = 0
    for c in iter_bits(g.vertex_mask & ~imask):
        leaves = g.adj[c] & ~used_centers
        used_centers |= 1 << c
        if leaves:
            parts.append(Biclique(frozenset({c}), frozenset(iter_bits(leaves))))
    return BicliquePartition(g, tuple(parts))


def is_induced_biclique(g: Graph, part: Biclique) -> bool:
    """True iff the subgraph induced by a union b is exactly complete bipartite."""
    amask, bmask = mask_of(part.a), mask_of(part.b)
    if (amask | bmask) >> g.n:
        return False
    for v in iter_bits(amask):
        if g.adj[v] & amask:
            return False
        if g.adj[v] & bmask != bmask:
            return False
    for v in iter_bits(bmask):
        if g.adj[v] & bmask:
            return False
    return True


def star_plus_biclique_decomposition(g: Graph, ab: Biclique) -> BicliquePartition:
    """Stars centered outside an induced biclique, plus the biclique itself.

    With k = |a| + |b| vertices in the induced part this yields at most
    n - k + 1 parts.
    """
    if not is_induced_biclique(g, ab):
        raise ValueError("the given part is not an induced complete bipartite subgraph")
    inside = mask_of(ab.a) | mask_of(ab.b)
    parts: list[Biclique] = []
    used_centers = 0
    for c in iter_bits(g.vertex_mask & ~inside):
        leaves = g.adj[c] & ~used_centers
        used_centers |= 1 << c
        if leaves:
            parts.append(Biclique(frozenset({c}), frozenset(iter_bits(leaves))))
    parts.append(ab)
    return BicliquePartition(g, tuple(parts))


def _alpha_mask(adj: Sequence[int], mask: int, memo: dict[int, tuple[int, int]]) -> tuple[int, int]:
    """Largest independent subset of ``mask``: (size, witness mask).  Memoized."""
    if not mask:
        return 0, 0
    hit = memo.get(mask)
    if hit is not None:
        return hit
    v = (mask & -mask).bit_length() - 1
    s_out, w_out = _alpha_mask(adj, mask & ~(1 << v), memo)
    s_in, w_in = _alpha_mask(adj, mask & ~adj[v] & ~(1 << v), memo)
    result = (s_in + 1, w_in | (1 << v)) if s_in + 1 > s_out else (s_out, w_out)
    memo[mask] = result
    return result


_EXACT_BETA_LIMIT = 18


def largest_induced_biclique(
    g: Graph, effort: str = "exact", budget: int = 200, seed: int = 0
) -> Biclique | None:
    """Induced complete bipartite subgraph maximizing |a| + |b|.

    Exact mode (n <= 18) enumerates independent sets for the a-side and
    completes each with a maximum independent subset of its common
    neighborhood.  Heuristic mode runs seeded alternating growth and
    returns the best found.  Returns None on edgeless graphs, where no
    biclique exists at all.
    """
    if effort == "exact" and g.n > _EXACT_BETA_LIMIT:
        raise ValueError(f"exact induced-biclique search refused for n > {_EXACT_BETA_LIMIT}")
    if g.m == 0:
        return None
    if effort == "exact":
        return _largest_induced_exact(g)
    if effort == "heuristic":
        return _largest_induced_heuristic(g, budget, seed)
    raise ValueError(f"unknown effort {effort!r}")


def _largest_induced_exact(g: Graph) -> Biclique:
    adj = g.adj
    full = g.vertex_mask
    memo: dict[int, tuple[int, int]] = {}
    best_size = 0
    best: tuple[int, int] | None = None

    def extend(a_mask: int, cn: int, cand: int) -> None:
        nonlocal best_size, best
        if a_mask:
            if a_mask.bit_count() + cn.bit_count() > best_size and cn:
                b_size, b_mask = _alpha_mask(adj, cn, memo)
                if b_size and a_mask.bit_count() + b_size > best_size:
                    best_size = a_mask.bit_count() + b_size
                    best = (a_mask, b_mask)
        w = cand
        while w:
            low = w & -w
            v = low.bit_length() - 1
            w ^= low
            new_a = a_mask | low
            new_cn = (cn & adj[v]) if a_mask else adj[v]
            new_cn &= ~new_a
            # Only extend with higher-indexed nonadjacent vertices.
            extend(new_a, new_cn, w & ~adj[v])

    extend(0, 0, full)
    if best is None:
        raise AssertionError("graph with edges must contain at least a single-edge biclique")
    return Biclique.of(iter_bits(best[0]), iter_bits(best[1]))


def _largest_induced_heuristic(g: Graph, budget: int, seed: int) -> Biclique:
    import random as _random

    rng = _random.Random(seed)
    adj = g.adj
    edges = list(g.edges())
    best = None
    best_size = 0

    def greedy_independent(mask: int) -> int:
        out = 0
        for v in iter_bits(mask):
            if not adj[v] & out:
                out |= 1 << v
        return out

    for _ in range(max(1, budget)):
        u, v = rng.choice(edges)
        a_mask, b_mask = 1 << u, 1 << v
        for _ in range(3):
            cn = g.vertex_mask
            for x in iter_bits(a_mask):
                cn &= adj[x]
            b_mask = greedy_independent(cn & ~a_mask)
            cn = g.vertex_mask
            for y in iter_bits(b_mask):
                cn &= adj[y]
            a_mask = greedy_independent(cn & ~b_mask)
        if a_mask and b_mask:
            size = a_mask.bit_count() + b_mask.bit_count()
            if size > best_size:
                best_size = size
                best = (a_mask, b_mask)
    if best is None:
        u, v = edges[0]
        best = (1 << u, 1 << v)
    return Biclique.of(iter_bits(best[0]), iter_bits(best[1]))


def normalize_stars_first(g: Graph, partition: BicliquePartition) -> BicliquePartition:
    """Stars-first normal form: no non-star part touches any star center.

    Repeatedly strips star-center vertices out of non-star parts, merging the
    split-off rows into the existing star with that center.  The output is a
    valid partition with at most as many parts, at least as many stars, all
    stars leading, and every non-star part disjoint from the star centers.
    """
    issues = validate_partition(g, partition)
    if issues:
        raise ValueError(f"input partition invalid: {issues[0]}")

    stars: list[tuple[int, int]] = []  # (center, leaves mask)
    nonstars: list[tuple[int, int]] = []  # (a mask, b mask)
    for part in partition.parts:
        amask, bmask = mask_of(part.a), mask_of(part.b)
        if len(part.a) == 1:
            stars.append(((amask & -amask).bit_length() - 1, bmask))
        elif len(part.b) == 1:
            stars.append(((bmask & -bmask).bit_length() - 1, amask))
        else:
            nonstars.append((amask, bmask))

    star_index: dict[int, int] = {}
    for i, (c, _) in enumerate(stars):
        star_index.setdefault(c, i)

    def merge_into_star(center: int, extra: int) -> None:
        i = star_index[center]
        c, leaves = stars[i]
        if leaves & extra:
            raise AssertionError("merged star leaves overlap existing leaves")
        stars[i] = (c, leaves | extra)

    changed = True
    while changed:
        changed = False
        centers = 0
        for c, _ in stars:
            centers |= 1 << c
        for idx, (amask, bmask) in enumerate(nonstars):
            if not (amask | bmask) & centers:
                continue
            changed = True
            del nonstars[idx]
            for v in iter_bits(amask & centers):
                merge_into_star(v, bmask)
            a_rest = amask & ~centers
            for v in iter_bits(bmask & centers):
                if a_rest:
                    merge_into_star(v, a_rest)
            b_rest = bmask & ~centers
            if a_rest and b_rest:
                if a_rest.bit_count() == 1:
                    c = (a_rest & -a_rest).bit_length() - 1
                    stars.append((c, b_rest))
                    star_index.setdefault(c, len(stars) - 1)
                elif b_rest.bit_count() == 1:
                    c = (b_rest & -b_rest).bit_length() - 1
                    stars.append((c, a_rest))
                    star_index.setdefault(c, len(stars) - 1)
                else:
                    nonstars.insert(idx, (a_rest, b_rest))
            break

    parts = [Biclique(frozenset({c}), frozenset(iter_bits(leaves))) for c, leaves in stars]
    parts.extend(
        Biclique(frozenset(iter_bits(a)), frozenset(iter_bits(b))) for a, b in nonstars
    )
    result = BicliquePartition(g, tuple(parts))
    post = validate_partition(g, result)
    if post:
        raise AssertionError(f"normalization broke the partition: {post[0]}")
    if len(result.parts) > len(partition.parts):
        raise AssertionError("normalization increased the part count")
    return result


@dataclass(frozen=True)
class SolveResult:
    """Solver outcome.

    ``value`` is the optimum when status is "exact" (possibly INFINITY for the
    star-free variant, certifying that the completed search found no
    partition).  On budget exhaustion status is "lower-bound-only": ``value``
    is the best incumbent found, ``lower_bound`` the best proven bound.
    ``witness`` is None when value is 0 by definition or INFINITY.
    """

    value: int | float
    witness: BicliquePartition | None
    status: str
    lower_bound: int | float
    nodes: int


def _submasks(mask: int) -> Iterator[int]:
    """All submasks of mask, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _solve_partition_number(
    g: Graph,
    min_side: int,
    budget: int,
    incumbent: BicliquePartition | None,
) -> SolveResult:
    """Shared branch-and-bound engine for the plain and star-free variants.

    Branches on the lexicographically smallest uncovered edge, enumerating
    every biclique of the remaining graph that contains it (anchored so each
    unordered part appears once), largest parts first.  Nodes are pruned when
    parts so far plus the inertia bound of the remaining graph cannot beat
    the incumbent.
    """
    n = g.n
    rows = list(g.adj)
    root_sig = inertia_from_rows(rows, n)
    root_bound = max(root_sig.n_plus, root_sig.n_minus)

    best_value: int | float = len(incumbent.parts) if incumbent is not None else INFINITY
    best_parts: list[tuple[int, int]] | None = (
        [(mask_of(p.a), mask_of(p.b)) for p in incumbent.parts] if incumbent is not None else None
    )
    current: list[tuple[int, int]] = []
    nodes = 0
    exhausted = False

    def smallest_uncovered() -> tuple[int, int] | None:
        for v in range(n):
            if rows[v]:
                return v, (rows[v] & -rows[v]).bit_length() - 1
        return None

    def remaining_bound() -> int:
        sig = inertia_from_rows(rows, n)
        return max(sig.n_plus, sig.n_minus)

    def dfs() -> None:
        nonlocal best_value, best_parts, nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        edge = smallest_uncovered()
        if edge is None:
            if len(current) < best_value:
                best_value = len(current)
                best_parts = list(current)
            return
        depth = len(current)
        if depth + 1 >= best_value:
            return  # at least one more part is needed
        if depth + remaining_bound() >= best_value:
            return
        a, b = edge
        candidates: list[tuple[int, int, int]] = []
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
                candidates.append((a_mask.bit_count() * b_mask.bit_count(), a_mask, b_mask))
        candidates.sort(key=lambda t: (-t[0], t[1], t[2]))
        for _, a_mask, b_mask in candidates:
            saved = [(v, rows[v]) for v in iter_bits(a_mask | b_mask)]
            for x in iter_bits(a_mask):
                rows[x] &= ~b_mask
            for y in iter_bits(b_mask):
                rows[y] &= ~a_mask
            current.append((a_mask, b_mask))
            dfs()
            current.pop()
            for v, row in saved:
                rows[v] = row
            if exhausted:
                return

    dfs()

    witness = None
    if best_parts is not None:
        witness = BicliquePartition(
            g,
            tuple(
                Biclique(frozenset(iter_bits(a)), frozenset(iter_bits(b)))
                for a, b in best_parts
            ),
        )
    if not exhausted:
        return SolveResult(best_value, witness, EXACT, best_value, nodes)
    return SolveResult(best_value, witness, LOWER_BOUND_ONLY, root_bound, nodes)


def partition_number_exact(g: Graph, budget: int = 5_000_000) -> SolveResult:
    """Minimum number of edge-disjoint bicliques partitioning E(g).

    Intended for the exhaustive regime (n around 12 or below).  The incumbent
    is initialized with a star decomposition over an exact maximum
    independent set, so the search only has to prove optimality or improve.
    """
    if g.m == 0:
        return SolveResult(0, BicliquePartition(g, ()), EXACT, 0, 0)
    alpha = independence_number_exact(g)
    incumbent = star_decomposition(g, alpha.witness)
    return _solve_partition_number(g, 1, budget, incumbent)


def strong_partition_number_exact(g: Graph, budget: int = 5_000_000) -> SolveResult:
    """Star-free variant: every part needs both sides of size at least 2.

    Graphs on at most 2 vertices have value 0 by definition (without a
    witness, since a lone edge admits no star-free partition).  When the
    search space is exhausted without a partition the value is INFINITY with
    status "exact", certifying infeasibility.
    """
    if g.n <= 2:
        return SolveResult(0, None, EXACT, 0, 0)
    if g.m == 0:
        return SolveResult(0, BicliquePartition(g, ()), EXACT, 0, 0)
    result = _solve_partition_number(g, 2, budget, None)
    if result.status == EXACT and result.value == INFINITY:
        return SolveResult(INFINITY, None, EXACT, INFINITY, result.nodes)
    return result


def partition_to_json(partition: BicliquePartition) -> dict:
    return {
        "n": partition.host.n,
        "parts": [
            {"a": sorted(part.a), "b": sorted(part.b)} for part in partition.parts
        ],
    }


def partition_from_json(data: dict, host: Graph) -> BicliquePartition:
    if data.get("n") != host.n:
        raise ValueError(f"partition is for n={data.get('n')}, graph has n={host.n}")
    parts = tuple(
        Biclique(frozenset(entry["a"]), frozenset(entry["b"])) for entry in data["parts"]
    )
    return BicliquePartition(host, parts)


def solve_result_to_json(result: SolveResult) -> dict:
    value = "infinity" if result.value == INFINITY else int(result.value)
    lower = "infinity" if result.lower_bound == INFINITY else int(result.lower_bound)
    return {
        "value": value,
        "status": result.status,
        "lower_bound": lower,
        "nodes": result.nodes,
        "witness": partition_to_json(result.witness) if result.witness is not None else None,
    }

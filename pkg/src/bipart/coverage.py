"""Edge-coverage machinery for families of left sides.

A family of vertex sets A_1..A_k covers edges by playing a sequential game:
pick an order, and for each set in turn pick any subset of its current
common neighborhood as the right side; the chosen cross edges are counted
and removed before the next step.  ``max_coverage_exact`` computes the
exact maximum of this game, which at once upper-bounds how many edges any
edge-disjoint biclique completion of the given left sides can cover.

The counting convention matters: each step counts cross edges in the graph
left after all earlier removals, not in the original graph.  The recursive
removal of covered edges forces this reading and it is the one implemented
throughout this module.

Two certificate constructions bound the complementary quantity, edges that
NO completion can cover: ``blocked_edge_count`` for vertices owned by a
single 2-set, and ``shielded_edge_count`` over a peeled witness built by
``peel_witness``.  ``uncovered_lower_bound`` combines both soundly against
an arbitrary mixed family.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .graphs import Graph, VertexSet, common_neighborhood, iter_bits, mask_of

__all__ = [
    "CoverageFamily",
    "CoverageTrace",
    "FamilySplit",
    "WitnessPair",
    "PeelingError",
    "CoverageBound",
    "covered_edges",
    "max_coverage_exact",
    "max_coverage_greedy",
    "replay_trace",
    "exclusive_split",
    "blocked_edge_count",
    "shielded_edge_count",
    "classify_family",
    "peel_witness",
    "uncovered_lower_bound",
    "family_to_json",
    "family_from_json",
]


@dataclass(frozen=True)
class CoverageFamily:
    """A multiset of left sides inside a universe of vertices.

    Duplicates are allowed and meaningful (two equal left sides may cover
    different right sides).  Sets must be nonempty subsets of the universe.
    """

    universe: tuple[int, ...]
    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        u = set(self.universe)
        if len(u) != len(self.universe):
            raise ValueError("universe contains duplicates")
        for s in self.sets:
            if not s:
                raise ValueError("family sets must be nonempty")
            if len(set(s)) != len(s):
                raise ValueError(f"set {s} contains duplicates")
            if not set(s) <= u:
                raise ValueError(f"set {s} leaves the universe")

    @classmethod
    def of(cls, universe: Iterable[int], sets: Iterable[Iterable[int]]) -> "CoverageFamily":
        return cls(
            tuple(sorted(universe)),
            tuple(tuple(sorted(s)) for s in sets),
        )

    def __len__(self) -> int:
        return len(self.sets)


def family_to_json(fam: CoverageFamily) -> dict:
    return {"universe": list(fam.universe), "sets": [list(s) for s in fam.sets]}


def family_from_json(data: dict) -> CoverageFamily:
    return CoverageFamily.of(data["universe"], data["sets"])


@dataclass(frozen=True)
class CoverageTrace:
    """One play of the coverage game: order, per-step right sides, edges taken."""

    order: tuple[int, ...]
    choices: tuple[tuple[int, ...], ...]
    covered: tuple[tuple[tuple[int, int], ...], ...]
    total: int


def covered_edges(g: Graph, left: VertexSet | Iterable[int]) -> list[tuple[int, int]]:
    """Edges with one endpoint in the left side and the other adjacent to all of it."""
    left_mask = left.mask if isinstance(left, VertexSet) else mask_of(left)
    if not left_mask:
        raise ValueError("left side must be nonempty")
    cn = common_neighborhood(g, VertexSet(left_mask, g.n)).mask
    out = []
    for x in iter_bits(left_mask):
        for y in iter_bits(cn):
            out.append((x, y) if x < y else (y, x))
    out.sort()
    return out


_MAX_EXACT_SETS = 8
_MAX_EXACT_UNIVERSE = 12


def _local_setup(g: Graph, universe, fam: CoverageFamily):
    """Relabel the universe to 0..u-1 and restrict adjacency to it."""
    umask = universe.mask if isinstance(universe, VertexSet) else mask_of(universe)
    if umask >> g.n:
        raise ValueError("universe leaves the graph")
    verts = tuple(iter_bits(umask))
    index = {v: i for i, v in enumerate(verts)}
    if not set(fam.universe) <= set(verts):
        raise ValueError("family universe is not contained in the given universe")
    rows = []
    for v in verts:
        row = 0
        for u in iter_bits(g.adj[v] & umask):
            row |= 1 << index[u]
        rows.append(row)
    set_masks = tuple(mask_of(index[v] for v in s) for s in fam.sets)
    return verts, index, tuple(rows), set_masks


def _cn_local(rows: Sequence[int], full: int, a_mask: int) -> int:
    cn = full
    for v in iter_bits(a_mask):
        cn &= rows[v]
    return cn & ~a_mask


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def max_coverage_exact(
    g: Graph, universe: VertexSet | Iterable[int], fam: CoverageFamily
) -> tuple[int, CoverageTrace]:
    """Exact maximum total coverage over all orders and right-side choices.

    Exhaustive with two reductions that preserve exactness: the order
    enumeration is folded into a memoized search over (remaining sets,
    current edge state), and right-side choices are enumerated only over
    vertices that can still interact with a not-yet-played set (members of
    one, or adjacent to a member); all other eligible vertices are always
    taken, which is never worse now and provably irrelevant later.

    Refused above 8 sets or 12 universe vertices; use ``max_coverage_greedy``
    beyond that.
    """
    if len(fam.sets) > _MAX_EXACT_SETS:
        raise ValueError(f"exact coverage refused for more than {_MAX_EXACT_SETS} sets")
    verts, index, rows0, set_masks = _local_setup(g, universe, fam)
    nloc = len(verts)
    if nloc > _MAX_EXACT_UNIVERSE:
        raise ValueError(
            f"exact coverage refused for more than {_MAX_EXACT_UNIVERSE} universe vertices"
        )
    k = len(set_masks)
    full = (1 << nloc) - 1
    sizes = [m.bit_count() for m in set_masks]
    # Influence sphere of each set: its members plus their neighbors in G[U].
    influence = []
    for m in set_masks:
        sphere = m
        for v in iter_bits(m):
            sphere |= rows0[v]
        influence.append(sphere)

    memo: dict[tuple[int, tuple[int, ...]], int] = {}

    def rel_mask(remaining: int) -> int:
        out = 0
        for j in iter_bits(remaining):
            out |= influence[j]
        return out

    def strip(rows: tuple[int, ...], a_mask: int, l_mask: int) -> tuple[int, ...]:
        out = list(rows)
        for x in iter_bits(a_mask):
            out[x] &= ~l_mask
        for y in iter_bits(l_mask):
            out[y] &= ~a_mask
        return tuple(out)

    def solve(remaining: int, rows: tuple[int, ...]) -> int:
        if not remaining:
            return 0
        key = (remaining, rows)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best = 0
        for j in iter_bits(remaining):
            rest = remaining ^ (1 << j)
            cn = _cn_local(rows, full, set_masks[j])
            undecided = cn & rel_mask(rest)
            base = cn & ~undecided
            for sub in _submasks(undecided):
                l_mask = base | sub
                gain = sizes[j] * l_mask.bit_count()
                value = gain + solve(rest, strip(rows, set_masks[j], l_mask))
                if value > best:
                    best = value
        memo[key] = best
        return best

    total = solve((1 << k) - 1, rows0)

    # Reconstruct one optimal trace by replaying the memoized values.
    order: list[int] = []
    choices: list[tuple[int, ...]] = []
    covered: list[tuple[tuple[int, int], ...]] = []
    remaining = (1 << k) - 1
    rows = rows0
    need = total
    while remaining:
        found = False
        for j in iter_bits(remaining):
            rest = remaining ^ (1 << j)
            cn = _cn_local(rows, full, set_masks[j])
            undecided = cn & rel_mask(rest)
            base = cn & ~undecided
            for sub in _submasks(undecided):
                l_mask = base | sub
                gain = sizes[j] * l_mask.bit_count()
                if gain + solve(rest, strip(rows, set_masks[j], l_mask)) == need:
                    order.append(j)
                    choices.append(tuple(verts[i] for i in iter_bits(l_mask)))
                    step_edges = []
                    for x in iter_bits(set_masks[j]):
                        for y in iter_bits(l_mask):
                            gx, gy = verts[x], verts[y]
                            step_edges.append((gx, gy) if gx < gy else (gy, gx))
                    covered.append(tuple(sorted(step_edges)))
                    rows = strip(rows, set_masks[j], l_mask)
                    remaining = rest
                    need -= gain
                    found = True
                    break
            if found:
                break
        if not found:
            raise AssertionError("trace reconstruction lost the optimum")

    trace = CoverageTrace(tuple(order), tuple(choices), tuple(covered), total)
    # Sanity ceiling: no play can beat the sum of single-set coverages in G[U].
    ceiling = 0
    for m in set_masks:
        ceiling += m.bit_count() * _cn_local(rows0, full, m).bit_count()
    if total > ceiling:
        raise AssertionError("coverage exceeded the single-set ceiling")
    replay_trace(g, universe, fam, trace)
    return total, trace


def max_coverage_greedy(
    g: Graph, universe: VertexSet | Iterable[int], fam: CoverageFamily, seed: int
) -> tuple[int, CoverageTrace]:
    """Seeded greedy play: random order, full common neighborhood each step.

    A lower bound for the exact maximum, available at any size.
    """
    verts, index, rows, set_masks = _local_setup(g, universe, fam)
    nloc = len(verts)
    full = (1 << nloc) - 1
    rng = random.Random(seed)
    order = list(range(len(set_masks)))
    rng.shuffle(order)
    rows = list(rows)
    choices: list[tuple[int, ...]] = []
    covered: list[tuple[tuple[int, int], ...]] = []
    total = 0
    for j in order:
        a_mask = set_masks[j]
        cn = _cn_local(rows, full, a_mask)
        choices.append(tuple(verts[i] for i in iter_bits(cn)))
        step_edges = []
        for x in iter_bits(a_mask):
            for y in iter_bits(cn):
                gx, gy = verts[x], verts[y]
                step_edges.append((gx, gy) if gx < gy else (gy, gx))
        covered.append(tuple(sorted(step_edges)))
        total += a_mask.bit_count() * cn.bit_count()
        for x in iter_bits(a_mask):
            rows[x] &= ~cn
        for y in iter_bits(cn):
            rows[y] &= ~a_mask
    trace = CoverageTrace(tuple(order), tuple(choices), tuple(covered), total)
    replay_trace(g, universe, fam, trace)
    return total, trace


def replay_trace(
    g: Graph, universe: VertexSet | Iterable[int], fam: CoverageFamily, trace: CoverageTrace
) -> int:
    """Re-run a trace step by step, checking every stated invariant.

    Verifies that the order is a permutation of the family, each right side
    sits inside the current common neighborhood of its left side, the listed
    edges are exactly the cross edges taken, and no edge appears twice.
    Raises ValueError on any inconsistency; returns the verified total.
    """
    verts, index, rows, set_masks = _local_setup(g, universe, fam)
    full = (1 << len(verts)) - 1
    if sorted(trace.order) != list(range(len(set_masks))):
        raise ValueError("trace order is not a permutation of the family")
    if len(trace.choices) != len(trace.order) or len(trace.covered) != len(trace.order):
        raise ValueError("trace length mismatch")
    rows = list(rows)
    seen: set[tuple[int, int]] = set()
    total = 0
    for j, choice, step in zip(trace.order, trace.choices, trace.covered):
        a_mask = set_masks[j]
        cn = _cn_local(rows, full, a_mask)
        l_mask = 0
        for v in choice:
            if v not in index:
                raise ValueError(f"choice vertex {v} outside the universe")
            l_mask |= 1 << index[v]
        if l_mask & ~cn:
            raise ValueError("right side leaves the current common neighborhood")
        expected = []
        for x in iter_bits(a_mask):
            for y in iter_bits(l_mask):
                gx, gy = verts[x], verts[y]
                expected.append((gx, gy) if gx < gy else (gy, gx))
        if sorted(step) != sorted(expected):
            raise ValueError("covered edges do not match the step's cross edges")
        for e in step:
            if e in seen:
                raise ValueError(f"edge {e} covered twice")
            seen.add(e)
        total += len(expected)
        for x in iter_bits(a_mask):
            rows[x] &= ~l_mask
        for y in iter_bits(l_mask):
            rows[y] &= ~a_mask
    if total != trace.total:
        raise ValueError(f"trace total {trace.total} != replayed {total}")
    return total


def exclusive_split(fam: CoverageFamily) -> tuple[VertexSet, VertexSet]:
    """From a family of 2-sets, the exclusively-owned vertices and their partners.

    A vertex qualifies when it lies in exactly one 2-set.  When both
    endpoints of a 2-set qualify, the larger-indexed one is dropped, so no
    kept vertex's partner is also kept.  Returns (kept, partners); the two
    are disjoint and the first is at least as large as the second.
    """
    if not fam.universe:
        return VertexSet(0, 0), VertexSet(0, 0)
    universe_n = max(fam.universe) + 1
    for s in fam.sets:
        if len(s) != 2:
            raise ValueError(f"exclusive split needs 2-sets, got {s}")
    count: dict[int, int] = {}
    owner: dict[int, tuple[int, int]] = {}
    for s in fam.sets:
        for v in s:
            count[v] = count.get(v, 0) + 1
            owner[v] = s
    s0 = {v for v, c in count.items() if c == 1}
    kept = set(s0)
    for s in sorted(set(fam.sets)):
        x, y = s
        if x in kept and y in kept:
            kept.discard(max(x, y))
    partners = {next(iter(set(owner[v]) - {v})) for v in kept}
    s_set = VertexSet.of(kept, universe_n)
    t_set = VertexSet.of(partners, universe_n)
    if s_set.mask & t_set.mask:
        raise AssertionError("kept vertices and partners overlap")
    if len(s_set) < len(t_set):
        raise AssertionError("partner set larger than kept set")
    return s_set, t_set


def blocked_edge_count(
    g: Graph,
    fam: CoverageFamily,
    s: VertexSet | Iterable[int],
    t: VertexSet | Iterable[int] = (),
) -> int:
    """Edges inside ``s`` that no completion of the 2-set family can cover.

    Counts pairs u, v in s with {u, v} an edge while u is not adjacent to
    v's partner and v is not adjacent to u's partner.  Such an edge could
    only be covered via one of the two owning 2-sets, and the missing
    partner edges rule both out.  ``t`` is accepted for interface symmetry
    and only validated against s.
    """
    s_mask = s.mask if isinstance(s, VertexSet) else mask_of(s)
    t_mask = t.mask if isinstance(t, VertexSet) else mask_of(t)
    if s_mask & t_mask:
        raise ValueError("s and t must be disjoint")
    if (s_mask | t_mask | mask_of(fam.universe)) >> g.n:
        raise ValueError("family or certificate vertices leave the graph")
    owner: dict[int, list[tuple[int, ...]]] = {}
    for pair in fam.sets:
        if len(pair) != 2:
            continue
        for v in pair:
            owner.setdefault(v, []).append(pair)
    partner: dict[int, int] = {}
    for v in iter_bits(s_mask):
        owned = owner.get(v, [])
        if len(owned) != 1:
            raise ValueError(f"vertex {v} is not owned by exactly one 2-set")
        partner[v] = next(iter(set(owned[0]) - {v}))
    members = list(iter_bits(s_mask))
    total = 0
    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            if not g.has_edge(u, v):
                continue
            if g.has_edge(u, partner[v]) or g.has_edge(v, partner[u]):
                continue
            total += 1
    return total


def shielded_edge_count(
    g: Graph,
    universe: VertexSet | Iterable[int],
    w: VertexSet | Iterable[int],
    guards: Mapping[int, Iterable[int]],
) -> int:
    """Edges inside ``w`` with no cross edge into each other's guard set.

    ``guards`` maps each w-vertex to a set of vertices outside w (within the
    universe); missing entries mean an empty guard.  Guard sets must be
    pairwise disjoint.  An edge {x, y} counts when x has no edge into
    guards[y] and y has no edge into guards[x].
    """
    u_mask = universe.mask if isinstance(universe, VertexSet) else mask_of(universe)
    if u_mask >> g.n:
        raise ValueError("universe leaves the graph")
    w_mask = w.mask if isinstance(w, VertexSet) else mask_of(w)
    if w_mask & ~u_mask:
        raise ValueError("w must sit inside the universe")
    guard_masks: dict[int, int] = {}
    taken = 0
    for v, gset in guards.items():
        if not (w_mask >> v) & 1:
            raise ValueError(f"guard key {v} is not a member of w")
        gm = mask_of(gset)
        if gm & w_mask:
            raise ValueError(f"guard set of {v} intersects w")
        if gm & ~u_mask:
            raise ValueError(f"guard set of {v} leaves the universe")
        if gm & taken:
            raise ValueError("guard sets overlap")
        taken |= gm
        guard_masks[v] = gm
    members = list(iter_bits(w_mask))
    total = 0
    for i, x in enumerate(members):
        for y in members[i + 1 :]:
            if not g.has_edge(x, y):
                continue
            if g.adj[x] & guard_masks.get(y, 0):
                continue
            if g.adj[y] & guard_masks.get(x, 0):
                continue
            total += 1
    return total


def _delta1(epsilon: float) -> float:
    return min(epsilon / (4.0 * (3.0 + epsilon)), 1.0 / 200.0)


def _log_base(x: float, base: float) -> float:
    return math.log(x) / math.log(base)


@dataclass(frozen=True)
class FamilySplit:
    """Size-threshold classification of a family.

    ``small``, ``tiny``, and ``pairs`` are index tuples into the family's
    sets: sizes strictly below delta1 * log_base(u), strictly below
    delta2 * log_base(u), and exactly 2.  The tiers nest only once the
    thresholds exceed 2, which takes an enormous universe or a base close
    to 1; at small scale they are computed exactly as defined, nothing more.
    """

    small: tuple[int, ...]
    tiny: tuple[int, ...]
    pairs: tuple[int, ...]
    delta1: float
    delta2: float
    u: int


def classify_family(fam: CoverageFamily, epsilon: float, base: float) -> FamilySplit:
    """Split a family by the delta1/delta2 size thresholds.

    delta1 = min(epsilon / (4 (3 + epsilon)), 1/200) and delta2 = delta1 / 10^4.
    Membership uses strict inequality against delta * log_base(u) where u is
    the universe size.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if base <= 1:
        raise ValueError("logarithm base must exceed 1")
    u = len(fam.universe)
    if u < 3:
        raise ValueError("universe too small to classify (need at least 3 vertices)")
    for s in fam.sets:
        if len(s) < 2:
            raise ValueError("classification expects sets of size at least 2")
    d1 = _delta1(epsilon)
    d2 = d1 / 10_000.0
    lbu = _log_base(u, base)
    small = tuple(i for i, s in enumerate(fam.sets) if len(s) < d1 * lbu)
    tiny = tuple(i for i, s in enumerate(fam.sets) if len(s) < d2 * lbu)
    pairs = tuple(i for i, s in enumerate(fam.sets) if len(s) == 2)
    return FamilySplit(small, tiny, pairs, d1, d2, u)


class PeelingError(RuntimeError):
    """Raised when the witness peeling cannot complete its quota of steps."""

    def __init__(self, message: str, steps: int):
        super().__init__(message)
        self.steps = steps


@dataclass(frozen=True)
class WitnessPair:
    """Peeled witness: an ordered vertex list and per-vertex guard sets.

    Guard sets are pairwise disjoint and disjoint from the vertex list, so
    they are directly usable with ``shielded_edge_count``.
    """

    order: tuple[int, ...]
    guards: dict[int, tuple[int, ...]] = field(default_factory=dict)


def peel_witness(
    fam: CoverageFamily,
    w: VertexSet | Iterable[int],
    base: float,
    ordering: Sequence[int] | None = None,
    degree_bound: float | None = None,
) -> WitnessPair:
    """Peel a witness out of the hypergraph (universe, family sets).

    Runs for q = floor(|w| / log_base(u)^2) steps.  Each step takes the first
    surviving vertex v of the ordering, collects the surviving set fragments
    containing v, additionally removes every fragment left with exactly one
    vertex outside their union, and deletes all touched vertices (v included,
    so isolated vertices still advance the peeling).  The guard of v picks
    the smallest non-v vertex from each of its fragments.

    Raises PeelingError if w runs out before q steps, or if some fragment
    containing the current vertex has no other vertex left to guard with
    (either way the witness would not certify anything).  When
    ``degree_bound`` is given, every w-vertex must have strictly fewer
    incident family sets than the bound.
    """
    if base <= 1:
        raise ValueError("logarithm base must exceed 1")
    u = len(fam.universe)
    if u < 2:
        raise ValueError("universe too small to peel")
    w_mask = w.mask if isinstance(w, VertexSet) else mask_of(w)
    universe_mask = mask_of(fam.universe)
    if w_mask & ~universe_mask:
        raise ValueError("w must sit inside the family universe")
    if degree_bound is not None:
        for v in iter_bits(w_mask):
            deg = sum(1 for s in fam.sets if v in s)
            if deg >= degree_bound:
                raise ValueError(f"vertex {v} has hypergraph degree {deg} >= bound")
    if ordering is None:
        order_list = list(iter_bits(w_mask))
    else:
        order_list = list(ordering)
        if mask_of(order_list) != w_mask or len(order_list) != w_mask.bit_count():
            raise ValueError("ordering must enumerate w exactly once")
    lbu = _log_base(u, base)
    q = int(w_mask.bit_count() // (lbu * lbu))

    fragments = [mask_of(s) for s in fam.sets]
    removed = 0
    out_order: list[int] = []
    guards: dict[int, tuple[int, ...]] = {}
    for step in range(q):
        v = next((x for x in order_list if not (removed >> x) & 1), None)
        if v is None:
            raise PeelingError(
                f"peeling needed {q} steps but w was exhausted after {step}", step
            )
        v_bit = 1 << v
        incident = [frag for frag in fragments if frag & v_bit]
        guard: list[int] = []
        union_incident = 0
        for frag in incident:
            rest = frag & ~v_bit
            if not rest:
                raise PeelingError(
                    f"fragment at vertex {v} has no guard representative (step {step})",
                    step,
                )
            guard.append((rest & -rest).bit_length() - 1)
            union_incident |= frag
        dangling = [
            frag for frag in fragments if frag and (frag & ~union_incident).bit_count() == 1
        ]
        wipe = v_bit | union_incident
        for frag in dangling:
            wipe |= frag
        removed |= wipe
        fragments = [frag & ~wipe for frag in fragments]
        fragments = [frag for frag in fragments if frag]
        out_order.append(v)
        guards[v] = tuple(sorted(set(guard)))

    taken = 0
    out_mask = mask_of(out_order)
    for v, gset in guards.items():
        gm = mask_of(gset)
        if gm & out_mask:
            raise AssertionError("guard set touches the witness vertices")
        if gm & taken:
            raise AssertionError("guard sets overlap")
        taken |= gm
    return WitnessPair(tuple(out_order), guards)


@dataclass(frozen=True)
class CoverageBound:
    """Certified lower bound on edges no completion of the family can cover."""

    value: int
    pair_bound: int
    witness_bound: int
    s: tuple[int, ...] = ()
    t: tuple[int, ...] = ()
    witness: WitnessPair | None = None
    note: str = ""


def uncovered_lower_bound(
    g: Graph,
    universe: VertexSet | Iterable[int],
    fam: CoverageFamily,
    epsilon: float,
    base: float,
    seed: int = 0,
) -> CoverageBound:
    """Best certified lower bound on edges of G[universe] left uncovered by
    every edge-disjoint biclique completion of the family's left sides.

    Combines the 2-set pair certificate and the peeled-witness certificate.
    Both are made sound against the whole mixed family: the pair certificate
    only keeps vertices whose single membership across the entire family is
    a 2-set, and the witness pool drops any vertex touched by a set outside
    the small tier, so an edge counted by either certificate has no covering
    left side at all outside the cases the certificate itself excludes.
    """
    u_mask = universe.mask if isinstance(universe, VertexSet) else mask_of(universe)
    if mask_of(fam.universe) & ~u_mask:
        raise ValueError("family universe leaves the given universe")
    if not fam.sets:
        return CoverageBound(0, 0, 0, note="no-certificate")

    membership: dict[int, int] = {}
    for s in fam.sets:
        for v in s:
            membership[v] = membership.get(v, 0) + 1

    # Pair certificate on exclusively-owned 2-set vertices.  Ownership is
    # counted across the whole family so larger sets cannot sneak in a cover.
    pair_sets = [s for s in fam.sets if len(s) == 2]
    pair_bound = 0
    s_keep: tuple[int, ...] = ()
    t_partners: tuple[int, ...] = ()
    if pair_sets:
        fam2 = CoverageFamily.of(fam.universe, pair_sets)
        s_all, t_all = exclusive_split(fam2)
        keep = [v for v in s_all if membership.get(v, 0) == 1]
        if keep:
            pair_bound = blocked_edge_count(g, fam2, keep, t_all)
            s_keep = tuple(keep)
            t_partners = t_all.as_tuple()

    # Witness certificate over the small tier.  Vertices touched by any set
    # outside the tier are excluded from the pool, so every left side meeting
    # the witness is represented in a guard set.
    witness_bound = 0
    witness: WitnessPair | None = None
    note = ""
    u_size = len(fam.universe)
    small_sets: list[tuple[int, ...]] = []
    if u_size >= 3:
        classified = [s for s in fam.sets if len(s) >= 2]
        split = classify_family(CoverageFamily.of(fam.universe, classified), epsilon, base)
        small_sets = [classified[i] for i in split.small]
    small_lookup = set(small_sets)
    blocked: set[int] = set()
    for s in fam.sets:
        if s not in small_lookup:
            blocked.update(s)
    if u_size >= 2:
        degree_h: dict[int, int] = {}
        for s in small_sets:
            for v in s:
                degree_h[v] = degree_h.get(v, 0) + 1
        d1 = _delta1(epsilon)
        degree_cap = (d1 / 2.0 - d1 / 3000.0) * _log_base(u_size, base)
        pool = [v for v in fam.universe if v not in blocked]
        if small_sets:
            pool = [v for v in pool if degree_h.get(v, 0) < degree_cap]
        if pool:
            rng = random.Random(seed)
            rng.shuffle(pool)
            small_fam = CoverageFamily.of(fam.universe, small_sets)
            try:
                witness = peel_witness(small_fam, pool, base, ordering=pool)
                guard_map = {v: witness.guards.get(v, ()) for v in witness.order}
                witness_bound = shielded_edge_count(
                    g, VertexSet(u_mask, g.n), witness.order, guard_map
                )
            except PeelingError as exc:
                note = f"witness peeling failed after {exc.steps} steps"
                witness = None
                witness_bound = 0

    value = max(pair_bound, witness_bound, 0)
    return CoverageBound(value, pair_bound, witness_bound, s_keep, t_partners, witness, note)

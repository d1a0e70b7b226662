"""Generators and counters of symmetric chain decompositions.

Kleitman doubling turns one decomposition of 2^[n-1] into 2^l distinct
decompositions of 2^[n]; sequences of complete matchings between the
upper levels correspond to decompositions one-to-one; permanents count
complete matchings exactly; and for tiny n the decompositions of 2^[n]
are enumerated outright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

from .errors import ConstructionError, DomainError, InputError, ResourceLimitError
from .lattice import GroundSet, Subset, level
from .partition import ChainPartition, Universe, verify_partition
from .signature import _mirror_mask
from .symposet import LevelGraph, _covers_down_masks

PERMANENT_SIDE_LIMIT = 24
EXACT_COUNT_STEP_LIMIT = 30_000_000


# --- Kleitman doubling -----------------------------------------------------------


def kleitman_extend(scd: ChainPartition, bits: str) -> ChainPartition:
    """Extend a symmetric chain decomposition of 2^[n-1] to one of 2^[n].

    Chains must arrive sorted by nonincreasing size; bits has one 0/1
    choice per chain of size > 1 (bit 0: append n on top and peel the
    shifted copy, bit 1: branch at the bottom and peel the rest).  The
    map bits -> output is injective for a fixed input.
    """
    old_n = scd.ground.n
    ground = GroundSet(old_n + 1)
    if scd.universe.kind != "lattice":
        raise InputError("the seed must be a decomposition of the full lattice")
    sizes = scd.sizes()
    if any(a < b for a, b in zip(sizes, sizes[1:])):
        raise InputError("input chains must be sorted by nonincreasing size")
    verdict = verify_partition(scd, require=("symmetric",), expected_count=comb(old_n, old_n // 2))
    if not verdict.ok:
        raise InputError(f"input is not a symmetric chain decomposition: {verdict.failures[:1]}")
    l = sum(1 for s in sizes if s > 1)
    if len(bits) != l or set(bits) - {"0", "1"}:
        raise InputError(f"bits must be a 0/1 string of length {l}, got {bits!r}")
    # canonical tie order so that equal-size chains index deterministically
    ordered = sorted(scd.chain_masks, key=lambda c: (-len(c), c[0]))
    new_bit = 1 << old_n
    chains: list[tuple[int, ...]] = []
    for j, masks in enumerate(ordered):
        if len(masks) == 1:
            chains.append((masks[0], masks[0] | new_bit))
        elif bits[j] == "0":
            chains.append(tuple(masks) + (masks[-1] | new_bit,))
            chains.append(tuple(m | new_bit for m in masks[:-1]))
        else:
            chains.append((masks[0],) + tuple(m | new_bit for m in masks))
            chains.append(tuple(masks[1:]))
    out = ChainPartition(
        ground,
        Universe.lattice(),
        "kleitman",
        tuple(sorted(chains, key=lambda c: (-len(c), c[0]))),
        {"bits": bits, "seed_n": old_n},
    )
    check = verify_partition(out, require=("symmetric",), expected_count=comb(ground.n, ground.n // 2))
    if not check.ok:
        raise ConstructionError("doubling produced an invalid decomposition", {"failures": check.failures[:1]})
    return out


# --- matching sequences ------------------------------------------------------------


@dataclass(frozen=True)
class MatchingSequence:
    """Complete matchings T_i from rank i+1 down to rank i, i = ceil(n/2)..n-1.

    matchings[i] maps each rank-(i+1) mask to the rank-i mask it is
    matched with; every matched pair must be a cover of the upper-half
    order and every upper level must be fully matched.
    """

    ground: GroundSet
    matchings: dict[int, dict[int, int]]

    def validate(self) -> None:
        n = self.ground.n
        m_level = (n + 1) // 2
        expected = set(range(m_level, n))
        if set(self.matchings) != expected:
            raise InputError(f"need matchings for levels {sorted(expected)}, got {sorted(self.matchings)}")
        for i in sorted(self.matchings):
            t = self.matchings[i]
            uppers = set(level(self.ground, i + 1))
            if set(t) != uppers:
                raise InputError(f"matching at level {i} does not saturate rank {i+1}")
            used = set()
            for x, y in t.items():
                if y not in _covers_down_masks(n, x):
                    raise InputError(
                        f"pair ({Subset(self.ground, y)}, {Subset(self.ground, x)}) is not a cover edge"
                    )
                if y in used:
                    raise InputError(f"{Subset(self.ground, y)} matched twice at level {i}")
                used.add(y)


def matchings_to_scd(seq: MatchingSequence) -> ChainPartition:
    """Union the matchings into skipless chains and mirror into a full SCD."""
    seq.validate()
    ground = seq.ground
    n = ground.n
    m_level = (n + 1) // 2
    up_link: dict[int, int] = {}
    for i, t in seq.matchings.items():
        for x, y in t.items():
            if y in up_link:
                raise InputError("an element is matched upward twice")
            up_link[y] = x
    chains = []
    for bottom in level(ground, m_level):
        masks = [bottom]
        while masks[-1] in up_link:
            masks.append(up_link[masks[-1]])
        lower = [_mirror_mask(n, m) for m in reversed(masks)]
        if lower and lower[-1] == masks[0]:
            lower.pop()
        chains.append(tuple(lower) + tuple(masks))
    out = ChainPartition(ground, Universe.lattice(), "matching-sequence", tuple(chains))
    verdict = verify_partition(out, require=("symmetric",), expected_count=comb(n, n // 2))
    if not verdict.ok:
        raise InputError(f"matching sequence does not yield a valid SCD: {verdict.failures[:1]}")
    return out


# --- counting complete matchings ----------------------------------------------------


def _saturating_count(sat_nbrs: list[int], n_sat: int, others: int) -> int:
    """Exact matchings saturating the side with neighbour bitmasks sat_nbrs.

    Subset-sum DP over the saturated side: dp[S] counts matchings of S
    into the other-side elements processed so far; cost others * 2^n_sat.
    """
    full = (1 << n_sat) - 1
    dp = [0] * (full + 1)
    dp[0] = 1
    for o_mask in sat_nbrs:
        for st in range(full, -1, -1):
            v = dp[st]
            if not v:
                continue
            free = o_mask & ~st
            while free:
                bit = free & -free
                dp[st | bit] += v
                free ^= bit
    return dp[full]


def count_complete_matchings(g, from_side: str = "upper") -> int:
    """Exact number of matchings saturating one side of a bipartite graph.

    g is a LevelGraph or an (A, B, edges) triple; from_side names the side
    to saturate: "upper"/"B" or "lower"/"A".  Cost grows like 2^side, so
    the saturated side is capped at 24.
    """
    if isinstance(g, LevelGraph):
        a, b = list(g.lower), list(g.upper)
        edges = [(y, x) for y, x, _ in g.edges]
    else:
        a, b, edges = g
        a, b, edges = list(a), list(b), [(u, v) for u, v, *_ in edges]
    side = from_side.lower()
    if side in ("upper", "b"):
        sat, other = b, a
        sat_of = {v: i for i, v in enumerate(b)}
        pick = lambda u, v: (v, u)  # noqa: E731
    elif side in ("lower", "a"):
        sat, other = a, b
        sat_of = {v: i for i, v in enumerate(a)}
        pick = lambda u, v: (u, v)  # noqa: E731
    else:
        raise InputError(f"from_side must be 'upper' or 'lower', got {from_side!r}")
    if len(sat) > PERMANENT_SIDE_LIMIT:
        raise ResourceLimitError(
            f"saturated side has {len(sat)} vertices; the 2^side permanent cost is capped at "
            f"2^{PERMANENT_SIDE_LIMIT}"
        )
    if not sat:
        return 1
    other_nbrs: dict = {v: 0 for v in other}
    for u, v in edges:
        s, o = pick(u, v)
        if s not in sat_of or o not in other_nbrs:
            raise InputError(f"edge ({u!r}, {v!r}) leaves the vertex sets")
        other_nbrs[o] |= 1 << sat_of[s]
    return _saturating_count([other_nbrs[v] for v in other], len(sat), len(other))


def matching_lower_bound(size_a: int, size_b: int) -> float:
    """sqrt(C(|B|, |A|)): the guaranteed number of matchings saturating A."""
    if size_a > size_b:
        raise InputError(f"need |A| <= |B|, got {size_a} > {size_b}")
    c = comb(size_b, size_a)
    if c.bit_length() < 1000:
        return math.sqrt(c)
    return math.exp(
        0.5 * (math.lgamma(size_b + 1) - math.lgamma(size_a + 1) - math.lgamma(size_b - size_a + 1))
    )


# --- exact enumeration for tiny n ----------------------------------------------------


def count_scds_exact(ground: GroundSet) -> int:
    """Exact number of symmetric chain decompositions of 2^[n], tiny n only.

    Enumerates complete matchings between adjacent full levels, pruning
    on the fly: a chain born at level b must survive exactly until level
    n-b.  n <= 4 is required; n = 5 runs best-effort under a step guard.
    """
    n = ground.n
    if n > 5:
        raise ResourceLimitError(f"exact SCD counting is limited to n <= 5, got {n}")
    m_level = (n + 1) // 2
    levels = [level(ground, k) for k in range(n + 1)]
    ups: dict[int, list[int]] = {}
    for k in range(n):
        for x in levels[k]:
            ups[x] = [x | 1 << i for i in range(n) if not x >> i & 1]
    steps = 0

    def enumerate_saturating(items: list[int], targets_free: set[int], adj: dict[int, list[int]]):
        """Yield dicts matching every item to a distinct free target."""
        nonlocal steps
        if not items:
            yield {}
            return
        first, rest = items[0], items[1:]
        for t in adj[first]:
            if t in targets_free:
                steps += 1
                if steps > EXACT_COUNT_STEP_LIMIT:
                    raise ResourceLimitError("exact SCD enumeration exceeded the step guard")
                targets_free.discard(t)
                for sub in enumerate_saturating(rest, targets_free, adj):
                    sub[first] = t
                    yield sub
                targets_free.add(t)

    def walk(k: int, births: dict[int, int]) -> int:
        # births: current chain tops (all at level k) -> birth level
        if k == n:
            return 1
        if k < m_level:
            # every top climbs; unmatched upper elements are new chains
            items = levels[k]
            free = set(levels[k + 1])
            total = 0
            for match in enumerate_saturating(items, free, ups):
                new_births = {match[x]: births[x] for x in items}
                for y in levels[k + 1]:
                    if y not in new_births:
                        new_births[y] = k + 1
                total += walk(k + 1, new_births)
            return total
        # above the middle: chains with n - birth == k die here, the rest
        # must be matched by the upper level exactly
        survivors = [x for x in births if n - births[x] > k]
        if len(survivors) != len(levels[k + 1]):
            return 0
        survivor_set = set(survivors)
        downs = {
            x: [y for y in _full_covers_down(n, x) if y in survivor_set] for x in levels[k + 1]
        }
        free = set(survivors)
        total = 0
        for match in enumerate_saturating(levels[k + 1], free, downs):
            new_births = {x: births[match[x]] for x in levels[k + 1]}
            total += walk(k + 1, new_births)
        return total

    return walk(0, {0: 0})


def _full_covers_down(n: int, x: int) -> list[int]:
    return [x & ~(1 << i) for i in range(n) if x >> i & 1]


# --- bound reports ---------------------------------------------------------------------


def _log2_comb(a: int, b: int) -> float:
    if b < 0 or b > a:
        return float("-inf")
    if a <= 2000:
        return math.log2(comb(a, b))
    return (math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)) / math.log(2)


def kleitman_bit_count(n: int) -> int:
    """l = C(n-1, floor((n-2)/2)): the number of binary choices when doubling."""
    if n < 1:
        raise DomainError("n must be positive")
    if n == 1:
        return 0
    return comb(n - 1, (n - 2) // 2)


def scd_bounds_report(ground: GroundSet) -> dict:
    """Concrete per-n bound numbers, reported as log2 values.

    kleitman_log2 = l; product_bound_log2 sums the certified per-level
    matching bounds ceil(sqrt(C(a_k, a_{k+1}))); upper_bound_log2 is the
    n^(2^n) observation.  Includes the exact count when n <= 4.
    """
    n = ground.n
    m_level = (n + 1) // 2
    product_log2 = 0.0
    for k in range(m_level, n):
        a_k = comb(n, k)
        a_k1 = comb(n, k + 1)
        if a_k <= 2000:
            factor = max(1, math.isqrt(comb(a_k, a_k1) - 1) + 1)  # ceil sqrt
            product_log2 += math.log2(factor)
        else:
            product_log2 += 0.5 * _log2_comb(a_k, a_k1)
    report = {
        "n": n,
        "kleitman_log2": float(kleitman_bit_count(n)),
        "product_bound_log2": product_log2,
        "upper_bound_log2": (2**n) * math.log2(n) if n > 1 else 0.0,
    }
    report["lower_le_upper"] = (
        report["kleitman_log2"] <= report["upper_bound_log2"]
        and report["product_bound_log2"] <= report["upper_bound_log2"]
    )
    if n <= 4:
        report["exact"] = count_scds_exact(ground)
    return report

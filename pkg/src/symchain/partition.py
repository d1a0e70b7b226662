"""Chain partitions of 2^[n] and of level ranges of the upper-half order.

Three generators live here: the classic symmetric chain decomposition
from signatures (btk_scd), width-many chain partitions of a level range
with a minimum-size guarantee driven by the f-schedule or a maximum-size
cap (partition_min_size / partition_max_size), and the two-phase
pipeline that glues both and mirrors the result into a near-uniform
partition of the whole lattice into rank-symmetric chains
(uniform_rank_symmetric_partition).  verify_partition is the universal
validator every generator is checked against.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import ConstructionError, DomainError, InputError
from .lattice import GroundSet, Subset, format_subset, level, parse_subset
from .matching import hopcroft_karp
from .signature import Chain, _btk_chain_masks, _linear_match, _mirror_mask
from .symposet import _covers_down_masks, _covers_up_masks, _less_masks

# --- f-schedule ----------------------------------------------------------------


@dataclass(frozen=True)
class FSchedule:
    """The level-grouping function f and its iteration depth.

    f(k) = min{ i > k : a_{k+1} + ... + a_i >= w }, None when no such i
    exists; iterates lists 0, f(0), f(f(0)), ..., f_d(0).
    """

    sizes: tuple[int, ...]
    w: int
    f: tuple[int | None, ...]
    iterates: tuple[int, ...]
    depth: int


def f_schedule(level_sizes, w: int | None = None) -> FSchedule:
    sizes = tuple(int(a) for a in level_sizes)
    if not sizes or any(a <= 0 for a in sizes):
        raise InputError("level sizes must be positive")
    if any(a < b for a, b in zip(sizes, sizes[1:])):
        raise InputError(f"level sizes must be nonincreasing, got {sizes}")
    if w is None:
        w = sizes[0]
    elif w != sizes[0]:
        raise InputError(f"width {w} must equal the first level size {sizes[0]}")
    m = len(sizes) - 1
    f_values: list[int | None] = []
    for k in range(m + 1):
        total = 0
        value = None
        for i in range(k + 1, m + 1):
            total += sizes[i]
            if total >= w:
                value = i
                break
        f_values.append(value)
    iterates = [0]
    while f_values[iterates[-1]] is not None:
        iterates.append(f_values[iterates[-1]])
    return FSchedule(sizes, w, tuple(f_values), tuple(iterates), len(iterates) - 1)


# --- partitions as data ----------------------------------------------------------


@dataclass(frozen=True)
class Universe:
    """The element universe a partition claims to cover."""

    kind: str  # "lattice" (all of 2^[n]) or "levels" (rank range lo..hi)
    lo: int | None = None
    hi: int | None = None

    def __post_init__(self):
        if self.kind not in ("lattice", "levels"):
            raise InputError(f"unknown universe kind {self.kind!r}")
        if self.kind == "levels" and not (
            isinstance(self.lo, int) and isinstance(self.hi, int) and 0 <= self.lo <= self.hi
        ):
            raise InputError(f"bad level range ({self.lo}, {self.hi})")

    @classmethod
    def lattice(cls) -> "Universe":
        return cls("lattice")

    @classmethod
    def upper_half(cls, ground: GroundSet) -> "Universe":
        return cls("levels", (ground.n + 1) // 2, ground.n)

    def size(self, ground: GroundSet) -> int:
        if self.kind == "lattice":
            return 1 << ground.n
        return sum(comb(ground.n, k) for k in range(self.lo, self.hi + 1))

    def masks(self, ground: GroundSet):
        if self.kind == "lattice":
            yield from range(1 << ground.n)
        else:
            for k in range(self.lo, self.hi + 1):
                yield from level(ground, k)

    def contains_rank(self, rank: int, ground: GroundSet) -> bool:
        if self.kind == "lattice":
            return 0 <= rank <= ground.n
        return self.lo <= rank <= self.hi

    def within_upper_half(self, ground: GroundSet) -> bool:
        return self.kind == "levels" and 2 * self.lo >= ground.n

    def to_json_dict(self) -> dict:
        if self.kind == "lattice":
            return {"kind": "lattice"}
        return {"kind": "levels", "lo": self.lo, "hi": self.hi}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Universe":
        if data.get("kind") == "lattice":
            return cls.lattice()
        return cls("levels", data.get("lo"), data.get("hi"))


@dataclass
class ChainPartition:
    """A set of chains stated to partition a universe; chains store masks."""

    ground: GroundSet
    universe: Universe
    provenance: str
    chain_masks: tuple[tuple[int, ...], ...]
    metadata: dict = field(default_factory=dict)

    @property
    def chain_count(self) -> int:
        return len(self.chain_masks)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.chain_masks]

    def chains(self):
        for masks in self.chain_masks:
            yield Chain(self.ground, tuple(Subset(self.ground, m) for m in masks))

    def size_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for c in self.chain_masks:
            hist[len(c)] = hist.get(len(c), 0) + 1
        return dict(sorted(hist.items()))


def write_partition(partition: ChainPartition, fh, fmt: str = "sets") -> None:
    """JSON lines: a header object, then one JSON array of subsets per chain."""
    header = {
        "n": partition.ground.n,
        "universe": partition.universe.to_json_dict(),
        "provenance": partition.provenance,
        "chain_count": partition.chain_count,
    }
    if partition.metadata:
        header["metadata"] = partition.metadata
    fh.write(json.dumps(header, separators=(",", ":")) + "\n")
    g = partition.ground
    for masks in partition.chain_masks:
        line = json.dumps(
            [format_subset(Subset(g, m), fmt) for m in masks], separators=(",", ":")
        )
        fh.write(line + "\n")


def read_partition(fh) -> ChainPartition:
    header_line = fh.readline()
    if not header_line.strip():
        raise InputError("empty partition file")
    try:
        header = json.loads(header_line)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad partition header: {exc}") from exc
    if not isinstance(header, dict) or "n" not in header:
        raise InputError("partition header must be an object with an 'n' field")
    ground = GroundSet(int(header["n"]))
    universe = Universe.from_json_dict(header.get("universe", {"kind": "lattice"}))
    chains = []
    for line in fh:
        line = line.strip()
        if not line:
            continue
        try:
            items = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad chain line: {exc}") from exc
        masks = []
        for text in items:
            fmt = "sets" if text.startswith("{") else "bits"
            masks.append(parse_subset(ground, text, fmt).mask)
        chains.append(tuple(masks))
    declared = header.get("chain_count")
    if declared is not None and declared != len(chains):
        raise InputError(f"header declares {declared} chains, file has {len(chains)}")
    return ChainPartition(
        ground,
        universe,
        str(header.get("provenance", "manual")),
        tuple(chains),
        header.get("metadata", {}),
    )


# --- validator -------------------------------------------------------------------


@dataclass
class PartitionVerdict:
    ok: bool
    failures: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"ok": self.ok, "failures": self.failures, "stats": self.stats}


def _chain_witness(ground: GroundSet, masks) -> list[str]:
    return [Subset(ground, m).to_text() for m in masks]


def verify_partition(
    partition: ChainPartition,
    require: tuple[str, ...] | list[str] = (),
    expected_count: int | None = None,
    min_size: int | None = None,
    max_size: int | None = None,
) -> PartitionVerdict:
    """Check disjointness, coverage, chain order, and requested per-chain flags.

    require may contain "skipless", "rank-symmetric", "symmetric"; the
    verdict carries a witness for the first failure of each kind.
    """
    known = {"skipless", "rank-symmetric", "symmetric"}
    req = set(require)
    if req - known:
        raise InputError(f"unknown requirements {sorted(req - known)}")
    if "symmetric" in req:
        req |= {"skipless", "rank-symmetric"}
    g = partition.ground
    n = g.n
    failures: list[dict] = []
    check_less = partition.universe.within_upper_half(g)

    sizes = []
    order_bad = rank_sym_bad = skipless_bad = less_bad = None
    for idx, masks in enumerate(partition.chain_masks):
        sizes.append(len(masks))
        if not masks:
            order_bad = order_bad or {"chain": idx, "reason": "empty chain"}
            continue
        ordered = sorted(masks, key=lambda m: (m.bit_count(), m))
        for a, b in zip(ordered, ordered[1:]):
            if a == b or a & b != a:
                if order_bad is None:
                    order_bad = {
                        "chain": idx,
                        "reason": "not totally ordered by inclusion",
                        "witness": _chain_witness(g, masks),
                    }
                break
        else:
            if check_less and less_bad is None:
                for a, b in zip(ordered, ordered[1:]):
                    if not _less_masks(n, a, b):
                        less_bad = {
                            "chain": idx,
                            "reason": "consecutive elements not related by the order",
                            "witness": _chain_witness(g, [a, b]),
                        }
                        break
        ranks = sorted(m.bit_count() for m in masks)
        if "rank-symmetric" in req and rank_sym_bad is None:
            if any(ranks[i] + ranks[len(ranks) - 1 - i] != n for i in range(len(ranks))):
                rank_sym_bad = {"chain": idx, "witness": _chain_witness(g, masks)}
        if "skipless" in req and skipless_bad is None:
            if any(b != a + 1 for a, b in zip(ranks, ranks[1:])):
                skipless_bad = {"chain": idx, "witness": _chain_witness(g, masks)}

    if order_bad:
        failures.append({"kind": "chain-order", **order_bad})
    if less_bad:
        failures.append({"kind": "order-chain", **less_bad})
    if rank_sym_bad:
        failures.append({"kind": "rank-symmetric", **rank_sym_bad})
    if skipless_bad:
        failures.append({"kind": "skipless", **skipless_bad})

    # disjointness and coverage against the declared universe
    expected_total = partition.universe.size(g)
    seen = bytearray(1 << n) if n <= 26 else {}
    duplicate = stray = None
    total = 0
    for masks in partition.chain_masks:
        for m in masks:
            total += 1
            if isinstance(seen, bytearray):
                if seen[m]:
                    duplicate = duplicate or m
                seen[m] = 1
            else:
                if m in seen:
                    duplicate = duplicate or m
                seen[m] = 1
            if not partition.universe.contains_rank(m.bit_count(), g):
                stray = stray if stray is not None else m
    if duplicate is not None:
        failures.append({"kind": "disjointness", "witness": Subset(g, duplicate).to_text()})
    if stray is not None:
        failures.append({"kind": "coverage", "reason": "element outside universe", "witness": Subset(g, stray).to_text()})
    if duplicate is None and stray is None and total != expected_total:
        missing = None
        for m in partition.universe.masks(g):
            covered = seen[m] if isinstance(seen, bytearray) else m in seen
            if not covered:
                missing = m
                break
        failures.append(
            {
                "kind": "coverage",
                "reason": f"covered {total} of {expected_total} elements",
                "witness": Subset(g, missing).to_text() if missing is not None else None,
            }
        )

    if expected_count is not None and len(sizes) != expected_count:
        failures.append({"kind": "chain-count", "expected": expected_count, "actual": len(sizes)})
    if min_size is not None and sizes and min(sizes) < min_size:
        idx = sizes.index(min(sizes))
        failures.append(
            {"kind": "min-size", "bound": min_size, "witness": _chain_witness(g, partition.chain_masks[idx])}
        )
    if max_size is not None and sizes and max(sizes) > max_size:
        idx = sizes.index(max(sizes))
        failures.append(
            {"kind": "max-size", "bound": max_size, "witness": _chain_witness(g, partition.chain_masks[idx])}
        )

    stats = {
        "chain_count": len(sizes),
        "min_size": min(sizes) if sizes else 0,
        "max_size": max(sizes) if sizes else 0,
        "total_elements": total,
    }
    return PartitionVerdict(not failures, failures, stats)


# --- the signature-class decomposition -------------------------------------------


def btk_scd(ground: GroundSet) -> ChainPartition:
    """Partition 2^[n] into its signature classes: C(n, floor(n/2)) symmetric chains."""
    n = ground.n
    chains = []
    for mask in range(1 << n):
        _, _, opens = _linear_match(n, mask)
        if not opens:  # mask is the bottom of its class
            chains.append(tuple(_btk_chain_masks(n, mask)))
    return ChainPartition(ground, Universe.lattice(), "btk", tuple(chains))


# --- the alpha constant ------------------------------------------------------------


@dataclass(frozen=True)
class AlphaInterval:
    lo: float
    hi: float
    terms: int

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, value: float) -> bool:
        return self.lo <= value <= self.hi


def _iv():
    import mpmath

    mpmath.iv.dps = 40
    return mpmath.iv


# interval partial sums of sum_{k=2}^{K} (sqrt(log k) - sqrt(log(k-1)))/k,
# grown on demand and shared by alpha_constant and pick_block_count
_partials: list = []


def _partials_through(k_max: int) -> list:
    iv = _iv()
    if not _partials:
        _partials.extend([iv.mpf(0), iv.mpf(0)])  # empty sums for k = 0, 1
    start = len(_partials)
    if start <= k_max:
        total = _partials[-1]
        prev = iv.sqrt(iv.log(iv.mpf(start - 1))) if start > 2 else iv.mpf(0)
        for k in range(start, k_max + 1):
            cur = iv.sqrt(iv.log(iv.mpf(k)))
            total = total + (cur - prev) / k
            prev = cur
            _partials.append(total)
    return _partials


def alpha_partial_sum(k_max: int) -> float:
    """Midpoint float of sqrt(2) * sum_{k=2}^{k_max} (sqrt(log k)-sqrt(log(k-1)))/k."""
    total = 0.0
    prev = 0.0
    for k in range(2, k_max + 1):
        cur = math.sqrt(math.log(k))
        total += (cur - prev) / k
        prev = cur
    return math.sqrt(2) * total


def alpha_constant(precision) -> AlphaInterval:
    """An interval of width <= precision around the series constant.

    Partial sums are run in interval arithmetic; the tail after K terms is
    bounded by sqrt(2)/K (each remaining term is below 1/k^2).
    """
    precision = float(precision)
    if precision <= 0:
        raise InputError("precision must be positive")
    iv = _iv()
    sqrt2 = iv.sqrt(iv.mpf(2))
    k_max = max(4, math.ceil(1.5 / precision))
    while True:
        partials = _partials_through(k_max)
        tail = iv.mpf([0, 1]) / k_max
        enclosure = sqrt2 * (partials[k_max] + tail)
        lo = math.nextafter(float(enclosure.a), -math.inf)
        hi = math.nextafter(float(enclosure.b), math.inf)
        if hi - lo <= precision:
            return AlphaInterval(lo, hi, k_max)
        k_max *= 2


def _alpha_enclosure_sharp(iv, partials, k_max):
    """Enclosure of the plain series using the tail bound 1/(2K sqrt(log K))."""
    tail_hi = 1 / (2 * iv.mpf(k_max) * iv.sqrt(iv.log(iv.mpf(k_max))))
    return partials[-1] + iv.mpf([0, 1]) * tail_hi


def pick_block_count(epsilon) -> tuple[int, AlphaInterval]:
    """Smallest K with alpha - epsilon/2 < sqrt(2) * partial_sum(K), certified.

    Runs entirely in interval arithmetic; on a boundary tie the partial
    sums are recomputed with a deeper tail until the comparison is
    certified one way or the other.
    """
    eps = Fraction(epsilon) if not isinstance(epsilon, Fraction) else epsilon
    if not 0 < eps < 1:
        raise InputError(f"epsilon must lie in (0,1), got {eps}")
    iv = _iv()
    sqrt2 = iv.sqrt(iv.mpf(2))
    eps_iv = iv.mpf(eps.numerator) / eps.denominator
    k_max = 2000
    for _ in range(4):
        partials = _partials_through(k_max)
        alpha_iv = sqrt2 * _alpha_enclosure_sharp(iv, partials[: k_max + 1], k_max)
        threshold = alpha_iv - eps_iv / 2
        interval = AlphaInterval(
            math.nextafter(float(alpha_iv.a), -math.inf),
            math.nextafter(float(alpha_iv.b), math.inf),
            k_max,
        )
        for k in range(1, k_max + 1):
            lhs = sqrt2 * partials[k]
            if lhs.a > threshold.b:
                return k, interval
            if not (lhs.b <= threshold.a):
                break  # ambiguous at this K: tighten and retry
        else:
            raise InputError("epsilon too small: no K certified within the computed range")
        k_max *= 8
    raise InputError(f"epsilon={eps} sits on a certification boundary")


def t_threshold(ground: GroundSet, k: int) -> int:
    """Smallest T >= 1 with C(n, ceil(n/2)+T) < C(n, floor(n/2)) / k, exactly."""
    if k < 1:
        raise InputError("k must be positive")
    n = ground.n
    mid = (n + 1) // 2
    w = comb(n, n // 2)
    t = 1
    while k * comb(n, mid + t) >= w:
        t += 1
    return t


# --- width-many chain partitions of level ranges ------------------------------------


class _LevelState:
    """Mutable chain-building state shared by the min and max constructions."""

    def __init__(self, ground: GroundSet, ranks: list[int]):
        self.ground = ground
        self.n = ground.n
        self.ranks = ranks
        base = level(ground, ranks[0])
        self.chains: list[list[int]] = [[m] for m in base]
        self.head_chain: dict[int, int] = {m: c for c, m in enumerate(base)}
        self.head_rank: list[int] = [ranks[0]] * len(base)
        self.w = len(base)

    def assign(self, elem: int, rank: int, chain_id: int) -> None:
        old = self.chains[chain_id][-1]
        del self.head_chain[old]
        self.chains[chain_id].append(elem)
        self.head_chain[elem] = chain_id
        self.head_rank[chain_id] = rank

    def donate(self, donor: int, recipient: int) -> int:
        """Move the donor's top element onto the recipient chain."""
        elem = self.chains[donor].pop()
        del self.head_chain[elem]
        new_top = self.chains[donor][-1]
        self.head_chain[new_top] = donor
        self.head_rank[donor] = new_top.bit_count()
        self.assign(elem, elem.bit_count(), recipient)
        return elem


def _down_candidates(n: int, mask: int, rank: int, target_ranks: set[int]) -> list[int]:
    """Masks below mask (cover walks) at the requested ranks, deduplicated."""
    lowest = min(target_ranks)
    out: list[int] = []
    cur = {mask}
    r = rank
    while r > lowest and cur:
        nxt = set()
        for m in cur:
            nxt.update(_covers_down_masks(n, m))
        r -= 1
        cur = nxt
        if r in target_ranks:
            out.extend(cur)
    return out


def _place_level(
    state: _LevelState,
    elems: list[int],
    rank: int,
    hungry: set[int] | None,
    length_cap: int | None,
) -> set[int]:
    """Assign every element of one level to a distinct chain.

    Hungry chains (none yet fed in the current block) are matched first;
    the matching is then grown, never shrunk, until it saturates the
    level.  Returns the set of chains fed here.
    """
    n = state.n
    w = state.w
    prev_rank = rank - 1

    def usable(c: int) -> bool:
        return length_cap is None or len(state.chains[c]) < length_cap

    adj_feed: list[list[int]] = [[] for _ in elems]
    seed = None
    if hungry:
        hungry_ranks = {state.head_rank[c] for c in hungry}
        for i, e in enumerate(elems):
            cands = []
            for m in _down_candidates(n, e, rank, hungry_ranks):
                c = state.head_chain.get(m)
                if c is not None and c in hungry and usable(c):
                    cands.append(c)
            adj_feed[i] = cands
        seed, _, _ = hopcroft_karp(adj_feed, w)

    adj_full: list[list[int]] = [None] * len(elems)  # type: ignore[list-item]
    for i, e in enumerate(elems):
        cands = list(adj_feed[i])
        for m in _covers_down_masks(n, e):
            c = state.head_chain.get(m)
            if c is not None and state.head_rank[c] == prev_rank and usable(c):
                cands.append(c)
        adj_full[i] = sorted(set(cands))
    match_l, _, size = hopcroft_karp(adj_full, w, seed=seed)

    if size < len(elems):
        # widen eligibility to heads at every lower rank before giving up
        all_ranks = set(state.head_rank)
        for i, e in enumerate(elems):
            if match_l[i] == -1:
                cands = set(adj_full[i])
                for m in _down_candidates(n, e, rank, all_ranks):
                    c = state.head_chain.get(m)
                    if c is not None and usable(c):
                        cands.add(c)
                adj_full[i] = sorted(cands)
        match_l, _, size = hopcroft_karp(adj_full, w, seed=[v for v in match_l])
        if size < len(elems):
            raise ConstructionError(
                f"could not place every element of rank {rank}",
                {"rank": rank, "unplaced": len(elems) - size, "level_size": len(elems)},
            )

    fed = set()
    for i, e in enumerate(elems):
        c = match_l[i]
        state.assign(e, rank, c)
        fed.add(c)
    return fed


def _up_candidates(n: int, mask: int, max_rank: int, breadth_cap: int = 250000):
    """Yield (rank, masks) frontiers walking covers upward from mask."""
    cur = {mask}
    r = mask.bit_count()
    while r < max_rank and cur and len(cur) <= breadth_cap:
        nxt = set()
        for m in cur:
            nxt.update(_covers_up_masks(n, m))
        r += 1
        cur = nxt
        yield r, cur


def _repair_min_sizes(state: _LevelState, target: int) -> None:
    """Grow every short chain to the target size by stealing donor tops."""
    n = state.n
    if target <= 1:
        return
    while True:
        deficient = [c for c in range(state.w) if len(state.chains[c]) < target]
        if not deficient:
            return
        donor_tops = {
            state.chains[c][-1]: c
            for c in range(state.w)
            if len(state.chains[c]) > target
        }
        max_rank = max((m.bit_count() for m in donor_tops), default=0)
        adj: list[list[int]] = []
        for c in deficient:
            top = state.chains[c][-1]
            cands: set[int] = set()
            for _, frontier in _up_candidates(n, top, max_rank):
                for m in frontier:
                    d = donor_tops.get(m)
                    if d is not None:
                        cands.add(d)
            adj.append(sorted(cands))
        match_l, _, size = hopcroft_karp(adj, state.w)
        if size == 0:
            raise ConstructionError(
                "minimum-size repair stalled",
                {"deficient": len(deficient), "target": target, "donors": len(donor_tops)},
            )
        for i, c in enumerate(deficient):
            if match_l[i] != -1:
                state.donate(match_l[i], c)


def _level_sizes(ground: GroundSet, ranks: list[int]) -> list[int]:
    sizes = [comb(ground.n, r) for r in ranks]
    if any(a < b for a, b in zip(sizes, sizes[1:])):
        raise InputError(f"level sizes must be nonincreasing, got {sizes}")
    return sizes


def partition_min_size(ground: GroundSet, top_rank: int) -> ChainPartition:
    """Partition ranks ceil(n/2)..top_rank into width-many chains of size >= d+1.

    d is the f-schedule depth of the level sizes.  Levels are processed in
    f-blocks: within a block every chain must pick up at least one
    element, enforced by priority matchings and a final repair pass.
    """
    n = ground.n
    mid = (n + 1) // 2
    if not mid <= top_rank <= n:
        raise DomainError(f"top_rank must lie in {mid}..{n}, got {top_rank}")
    ranks = list(range(mid, top_rank + 1))
    sizes = _level_sizes(ground, ranks)
    fs = f_schedule(sizes)
    state = _LevelState(ground, ranks)
    block_starts = set(fs.iterates[:-1])
    last_block_level = fs.iterates[-1]
    hungry: set[int] = set()
    for li in range(1, len(ranks)):
        if (li - 1) in block_starts and li <= last_block_level:
            hungry = set(range(state.w))
        fed = _place_level(state, level(ground, ranks[li]), ranks[li], hungry or None, None)
        hungry -= fed
        if li >= last_block_level:
            hungry = set()
    _repair_min_sizes(state, fs.depth + 1)
    chain_masks = tuple(tuple(c) for c in state.chains)
    achieved = [len(c) for c in chain_masks]
    return ChainPartition(
        ground,
        Universe("levels", mid, top_rank),
        "min-size",
        chain_masks,
        {
            "w": fs.w,
            "depth": fs.depth,
            "f_iterates": list(fs.iterates),
            "guaranteed_min": fs.depth + 1,
            "achieved_min": min(achieved),
            "achieved_max": max(achieved),
        },
    )


def partition_max_size(ground: GroundSet, lo_rank: int, hi_rank: int) -> ChainPartition:
    """Partition ranks lo..hi into width-many chains of size <= 2|P|/w + 5."""
    n = ground.n
    mid = (n + 1) // 2
    if not mid <= lo_rank <= hi_rank <= n:
        raise DomainError(f"need {mid} <= lo <= hi <= {n}, got ({lo_rank}, {hi_rank})")
    ranks = list(range(lo_rank, hi_rank + 1))
    sizes = _level_sizes(ground, ranks)
    w = sizes[0]
    total = sum(sizes)
    cap = (2 * total + 5 * w) // w  # floor of 2|P|/w + 5
    state = _LevelState(ground, ranks)
    for li in range(1, len(ranks)):
        _place_level(state, level(ground, ranks[li]), ranks[li], None, cap)
    chain_masks = tuple(tuple(c) for c in state.chains)
    achieved = [len(c) for c in chain_masks]
    return ChainPartition(
        ground,
        Universe("levels", lo_rank, hi_rank),
        "max-size",
        chain_masks,
        {
            "w": w,
            "size_cap": cap,
            "achieved_min": min(achieved),
            "achieved_max": max(achieved),
        },
    )


# --- the two-phase uniform pipeline ---------------------------------------------------


def _mirror_chain(n: int, masks) -> tuple[int, ...]:
    """masks ascending within the upper half -> the full rank-symmetric chain."""
    lower = [_mirror_mask(n, m) for m in reversed(masks)]
    if lower and lower[-1] == masks[0]:
        lower.pop()
    return tuple(lower) + tuple(masks)


def uniform_rank_symmetric_partition(ground: GroundSet, epsilon) -> ChainPartition:
    """Partition 2^[n] into C(n, floor(n/2)) rank-symmetric chains of near-uniform size.

    Phase one covers the wide levels with a minimum-size guarantee from
    the f-schedule, phase two covers the thin tail with a maximum-size
    cap, chains sharing an element on the seam level are glued, and
    every chain is completed with its mirror image.
    """
    n = ground.n
    if n < 2:
        raise DomainError("the pipeline needs n >= 2")
    eps = Fraction(epsilon) if not isinstance(epsilon, Fraction) else epsilon
    mid = (n + 1) // 2
    k_blocks, alpha_iv = pick_block_count(eps)
    t_k = t_threshold(ground, k_blocks)
    single_phase = t_k >= n // 2
    if single_phase:
        phase1 = partition_min_size(ground, n)
        glued = [list(c) for c in phase1.chain_masks]
        seam = None
        phase2_meta = None
    else:
        seam = mid + t_k
        phase1 = partition_min_size(ground, seam)
        phase2 = partition_max_size(ground, seam, n)
        seam_index: dict[int, int] = {}
        for idx, masks in enumerate(phase1.chain_masks):
            if masks[-1].bit_count() == seam:
                seam_index[masks[-1]] = idx
        glued = [list(c) for c in phase1.chain_masks]
        for masks in phase2.chain_masks:
            bottom = masks[0]
            idx = seam_index.get(bottom)
            if idx is None:
                raise ConstructionError(
                    "seam element missing from phase one",
                    {"element": Subset(ground, bottom).to_text()},
                )
            glued[idx].extend(masks[1:])
        phase2_meta = phase2.metadata
    final = tuple(_mirror_chain(n, masks) for masks in glued)
    achieved = [len(c) for c in final]
    alpha_mid = (alpha_iv.lo + alpha_iv.hi) / 2
    metadata = {
        "epsilon": str(eps),
        "K": k_blocks,
        "T_K": t_k,
        "seam_rank": seam,
        "single_phase": single_phase,
        "depth": phase1.metadata["depth"],
        "guaranteed_min": phase1.metadata["depth"] + 1,
        "achieved_min": min(achieved),
        "achieved_max": max(achieved),
        "target_min_asymptotic": (alpha_mid - float(eps)) * math.sqrt(n),
        "target_max_asymptotic": (
            math.sqrt(math.log(k_blocks) / 2) + k_blocks * math.sqrt(math.pi / 2)
        )
        * math.sqrt(n),
        "alpha_interval": [alpha_iv.lo, alpha_iv.hi],
    }
    if phase2_meta:
        metadata["phase2_size_cap"] = phase2_meta["size_cap"]
    provenance = "uniform-pipeline/single-phase" if single_phase else "uniform-pipeline"
    return ChainPartition(ground, Universe.lattice(), provenance, final, metadata)

"""The partial order on the upper half of 2^[n] and its level graphs.

For |x|, |y| >= n/2, y < x holds when p(x) ⊆ p(y) ⊆ y ⊆ x (p is the
mirror map).  Covers go one rank at a time: downward by deleting a
circular star of x, upward by completing a maximal circular-pair
interval of y.  The bipartite graph between consecutive levels carries
an explicit integer edge weight (the circular gap between consecutive
stars) whose vertex sums certify the normalized matching property; a
max-flow check verifies that property independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, InputError, ResourceLimitError
from .lattice import GroundSet, Subset, _interval_mask, level
from .signature import _circular_match, _circular_star_members, _linear_match, _mirror_mask

EXHAUSTIVE_SIDE_LIMIT = 20


# --- mask-level cover helpers ------------------------------------------------


def _require_upper_half(n: int, mask: int, what: str) -> int:
    k = mask.bit_count()
    if 2 * k < n:
        raise DomainError(f"{what} is defined on ranks >= n/2, got rank {k} with n={n}")
    return k


def _less_masks(n: int, y: int, x: int) -> bool:
    if y == x:
        return False
    if y & x != y:
        return False
    px = _mirror_mask(n, x)
    py = _mirror_mask(n, y)
    return px & py == px


def _covers_down_masks(n: int, mask: int) -> list[int]:
    """Masks one rank below mask that stay in the upper half: delete a star."""
    k = mask.bit_count()
    if 2 * (k - 1) < n:
        return []
    return [mask & ~(1 << (i - 1)) for i in _circular_star_members(n, mask)]


def _covers_up_masks(n: int, mask: int) -> list[int]:
    """Masks one rank above mask: add the partner of each maximal interval."""
    full = (1 << n) - 1
    if mask == full:
        return []
    pairs, _ = _circular_match(n, mask)
    intervals = []
    for i, j in pairs.items():
        if mask >> (i - 1) & 1:  # interval starts at a member
            intervals.append((i, j, _interval_mask(n, i, j)))
    out = []
    for i, j, imask in intervals:
        maximal = True
        for i2, j2, imask2 in intervals:
            if imask2 != imask and imask | imask2 == imask2:
                maximal = False
                break
        if maximal:
            out.append(mask | 1 << (j - 1))
    out.sort()
    return out


def _edge_weight_masks(n: int, y: int, x: int) -> int:
    """Weight of the cover edge y = x \\ {star}: the circular gap ending there."""
    stars = _circular_star_members(n, x)
    removed_mask = x & ~y
    if y & x != y or removed_mask.bit_count() != 1:
        raise InputError("edge_weight needs y to be x minus one element")
    removed = removed_mask.bit_length()
    try:
        u = stars.index(removed)
    except ValueError:
        raise InputError(f"element {removed} is not a circular star of the upper set") from None
    prev = stars[u - 1]  # cyclic: u == 0 wraps to the last star
    return (removed - prev) % n + 1


# --- public cover/order operations -------------------------------------------


def less(y: Subset, x: Subset) -> bool:
    """Strict order on the upper half: p(x) ⊆ p(y) ⊆ y ⊆ x and y != x."""
    y._check_same_ground(x)
    n = x.ground.n
    _require_upper_half(n, x.mask, "less")
    _require_upper_half(n, y.mask, "less")
    return _less_masks(n, y.mask, x.mask)


def covers_down(x: Subset) -> set[Subset]:
    """Elements one rank below x in the order: x minus each circular star."""
    n = x.ground.n
    _require_upper_half(n, x.mask, "covers_down")
    return {Subset(x.ground, m) for m in _covers_down_masks(n, x.mask)}


def covers_up(y: Subset) -> set[Subset]:
    """Elements one rank above y: add the pair of each maximal interval."""
    n = y.ground.n
    _require_upper_half(n, y.mask, "covers_up")
    return {Subset(y.ground, m) for m in _covers_up_masks(n, y.mask)}


def edge_weight(y: Subset, x: Subset) -> int:
    """Integer weight of the cover edge (y, x); input error on a non-edge."""
    y._check_same_ground(x)
    n = x.ground.n
    _require_upper_half(n, x.mask, "edge_weight")
    if y.mask not in _covers_down_masks(n, x.mask):
        raise InputError(f"{y} is not a lower cover of {x}")
    return _edge_weight_masks(n, y.mask, x.mask)


# --- level graphs -------------------------------------------------------------


@dataclass(frozen=True)
class LevelGraph:
    """Bipartite cover graph between ranks k-1 and k of the upper-half order."""

    ground: GroundSet
    lower_rank: int
    upper_rank: int
    lower: tuple[int, ...]
    upper: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (lower mask, upper mask, weight)

    def lower_subsets(self) -> list[Subset]:
        return [Subset(self.ground, m) for m in self.lower]

    def upper_subsets(self) -> list[Subset]:
        return [Subset(self.ground, m) for m in self.upper]

    def adjacency(self) -> tuple[dict[int, list[int]], dict[int, list[int]]]:
        down: dict[int, list[int]] = {m: [] for m in self.upper}
        up: dict[int, list[int]] = {m: [] for m in self.lower}
        for y, x, _ in self.edges:
            down[x].append(y)
            up[y].append(x)
        return up, down

    def to_json_dict(self) -> dict:
        g = self.ground
        return {
            "n": g.n,
            "lower_rank": self.lower_rank,
            "upper_rank": self.upper_rank,
            "lower": [Subset(g, m).to_text() for m in self.lower],
            "upper": [Subset(g, m).to_text() for m in self.upper],
            "edges": [
                [Subset(g, y).to_text(), Subset(g, x).to_text(), w] for y, x, w in self.edges
            ],
        }


def level_graph(ground: GroundSet, k: int) -> LevelGraph:
    """Build the cover graph between ranks k-1 and k; needs ceil(n/2)+1 <= k <= n."""
    n = ground.n
    lowest = (n + 1) // 2 + 1
    if not lowest <= k <= n:
        raise InputError(f"level_graph needs {lowest} <= k <= {n}, got k={k}")
    lower = level(ground, k - 1)
    upper = level(ground, k)
    edges = []
    for x in upper:
        stars = _circular_star_members(n, x)
        for u, i in enumerate(stars):
            prev = stars[u - 1]
            weight = (i - prev) % n + 1
            edges.append((x & ~(1 << (i - 1)), x, weight))
    edges.sort()
    return LevelGraph(ground, k - 1, k, tuple(lower), tuple(upper), tuple(edges))


# --- normalized matching verification ----------------------------------------


@dataclass
class NMVerdict:
    """Outcome of a normalized-matching check on one bipartite graph."""

    holds: bool
    engine: str
    sides: tuple[int, int]  # (|A|, |B|)
    witness_side: str | None = None
    witness: list | None = None
    witness_neighborhood: list | None = None
    weights: dict | None = None

    def to_json_dict(self) -> dict:
        out = {"holds": self.holds, "engine": self.engine, "size_a": self.sides[0], "size_b": self.sides[1]}
        if not self.holds:
            out["witness_side"] = self.witness_side
            out["witness"] = self.witness
            out["witness_neighborhood"] = self.witness_neighborhood
        return out


def _as_bipartite(graph) -> tuple[list, list, list[tuple]]:
    """Accept a LevelGraph or a generic (A, B, edges) triple."""
    if isinstance(graph, LevelGraph):
        return list(graph.lower), list(graph.upper), [(y, x) for y, x, _ in graph.edges]
    a, b, edges = graph
    return list(a), list(b), [(u, v) for u, v, *_ in edges]


def _neighborhoods(a, b, edges):
    na = {v: set() for v in a}
    nb = {v: set() for v in b}
    for u, v in edges:
        if u not in na or v not in nb:
            raise InputError(f"edge ({u!r}, {v!r}) leaves the vertex sets")
        na[u].add(v)
        nb[v].add(u)
    return na, nb


def _nm_exhaustive(side, nbrs, other_count):
    """Check |X| * |B| <= |Γ(X)| * |A| over all X; returns a violating X or None."""
    m = len(side)
    if m > EXHAUSTIVE_SIDE_LIMIT:
        raise ResourceLimitError(f"exhaustive engine capped at side {EXHAUSTIVE_SIDE_LIMIT}, got {m}")
    neighbor_sets = [nbrs[v] for v in side]
    for picks in range(1, 1 << m):
        gamma = set()
        count = 0
        p = picks
        idx = 0
        while p:
            if p & 1:
                gamma |= neighbor_sets[idx]
                count += 1
            p >>= 1
            idx += 1
        if count * other_count > len(gamma) * m:
            return [side[i] for i in range(m) if picks >> i & 1]
    return None


def _nm_flow(a, b, na):
    """Max-flow check: property holds iff the flow value reaches |A| * |B|."""
    import networkx as nx

    size_a, size_b = len(a), len(b)
    g = nx.DiGraph()
    mid_cap = size_a * size_b
    for u in a:
        g.add_edge(("s",), ("a", u), capacity=size_b)
        for v in na[u]:
            g.add_edge(("a", u), ("b", v), capacity=mid_cap)
    for v in b:
        g.add_edge(("b", v), ("t",), capacity=size_a)
    value, flow = nx.maximum_flow(g, ("s",), ("t",))
    if value == mid_cap:
        weights = {}
        for u in a:
            for v, f in flow[("a", u)].items():
                if f:
                    weights[(u, v[1])] = f
        return True, weights, None
    _, (s_side, _) = nx.minimum_cut(g, ("s",), ("t",))
    witness = [u for u in a if ("a", u) in s_side]
    return False, None, witness


def verify_normalized_matching(graph, engine: str = "auto") -> NMVerdict:
    """Decide the normalized matching property for a bipartite graph.

    engine: "exhaustive" enumerates subsets of each side (sides capped at
    20), "flow" runs the exact integer max-flow feasibility test, "auto"
    picks exhaustive for small sides and flow otherwise.  Both
    orientations are checked; a failure on either is reported.
    """
    a, b, edges = _as_bipartite(graph)
    if not a or not b:
        raise InputError("normalized matching needs both sides nonempty")
    na, nb = _neighborhoods(a, b, edges)
    if engine == "auto":
        engine = "exhaustive" if max(len(a), len(b)) <= EXHAUSTIVE_SIDE_LIMIT else "flow"
    if engine == "exhaustive":
        bad_a = _nm_exhaustive(a, na, len(b))
        if bad_a is not None:
            gamma = sorted(set().union(*(na[v] for v in bad_a)))
            return NMVerdict(False, engine, (len(a), len(b)), "A", sorted(bad_a), gamma)
        bad_b = _nm_exhaustive(b, nb, len(a))
        if bad_b is not None:
            gamma = sorted(set().union(*(nb[v] for v in bad_b)))
            return NMVerdict(False, engine, (len(a), len(b)), "B", sorted(bad_b), gamma)
        return NMVerdict(True, engine, (len(a), len(b)))
    if engine != "flow":
        raise InputError(f"unknown engine {engine!r}")
    ok, weights, witness = _nm_flow(a, b, na)
    if ok:
        return NMVerdict(True, engine, (len(a), len(b)), weights=weights)
    gamma = sorted(set().union(*(na[v] for v in witness))) if witness else []
    # the two orientations stand or fall together (the flow network for B
    # is the reverse of the one for A), so one cut witnesses both
    return NMVerdict(False, engine, (len(a), len(b)), "A", sorted(witness), gamma)


@dataclass
class PosetNMVerdict:
    holds: bool
    levels: list[dict] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {"holds": self.holds, "levels": self.levels}


def verify_poset_nm(ground: GroundSet, engine: str = "auto", threads: int = 1) -> PosetNMVerdict:
    """Check every consecutive level graph of the upper-half order, plus the
    explicit weight certificate sums (2n-2k+2 at the lower side, 2k above)."""
    n = ground.n
    ks = list(range((n + 1) // 2 + 1, n + 1))

    def check(k: int) -> dict:
        g = level_graph(ground, k)
        verdict = verify_normalized_matching(g, engine=engine)
        lower_sum: dict[int, int] = {m: 0 for m in g.lower}
        upper_sum: dict[int, int] = {m: 0 for m in g.upper}
        for y, x, w in g.edges:
            lower_sum[y] += w
            upper_sum[x] += w
        sums_ok = all(v == 2 * n - 2 * k + 2 for v in lower_sum.values()) and all(
            v == 2 * k for v in upper_sum.values()
        )
        return {
            "k": k,
            "lower_size": len(g.lower),
            "upper_size": len(g.upper),
            "edges": len(g.edges),
            "nm_holds": verdict.holds,
            "weight_sums_ok": sums_ok,
            "engine": verdict.engine,
        }

    if threads > 1 and len(ks) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(check, ks))
    else:
        results = [check(k) for k in ks]
    holds = all(r["nm_holds"] and r["weight_sums_ok"] for r in results)
    return PosetNMVerdict(holds, results)


# --- component structure -------------------------------------------------------


@dataclass
class ComponentReport:
    component_count: int
    sizes: list[int]
    all_trees: bool
    components: list[dict]

    def to_json_dict(self) -> dict:
        return {
            "component_count": self.component_count,
            "sizes": self.sizes,
            "all_trees": self.all_trees,
            "components": self.components,
        }


def component_stats(g: LevelGraph) -> ComponentReport:
    """Connected components of the level graph, with size and acyclicity."""
    up, down = g.adjacency()
    neighbors: dict[int, list[int]] = {}
    neighbors.update(up)
    for x, ys in down.items():
        neighbors[x] = ys
    seen: set[int] = set()
    components = []
    for start in list(g.lower) + list(g.upper):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        vertices = []
        while stack:
            v = stack.pop()
            vertices.append(v)
            for w in neighbors[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        edge_count = sum(len(down.get(v, ())) for v in vertices)
        components.append(
            {"vertices": len(vertices), "edges": edge_count, "is_tree": edge_count == len(vertices) - 1}
        )
    components.sort(key=lambda c: (-c["vertices"], -c["edges"]))
    return ComponentReport(
        component_count=len(components),
        sizes=sorted((c["vertices"] for c in components), reverse=True),
        all_trees=all(c["is_tree"] for c in components),
        components=components,
    )

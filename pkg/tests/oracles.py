"""Definitional reference implementations used only by the tests.

Everything here follows the defining formulas directly (quadratic walks,
set arithmetic over frozensets, recursive enumeration) and never calls
into the package's fast paths, so the two sides stay independent.
"""

from itertools import combinations


def interval_elements(n, i, j):
    """[i, j]_n as a set, looping element by element."""
    out = set()
    k = i
    while True:
        out.add(k)
        if k == j:
            return out
        k = k % n + 1


def disc_oracle(xs, i, j):
    inside = sum(1 for e in range(i, j + 1) if e in xs)
    return inside - (j - i + 1 - inside)


def circ_oracle(n, xs, i, j):
    window = interval_elements(n, i, j)
    inside = len(window & set(xs))
    return inside - (len(window) - inside)


def sig_oracle(n, xs):
    """Linear signature by the defining walks; returns (symbols, pairs)."""
    xs = set(xs)
    symbols = {}
    pairs = {}
    for i in range(1, n + 1):
        if i in xs:
            c = 0
            found = None
            for j in range(i, n + 1):
                c += 1 if j in xs else -1
                if c == 0 and j > i:
                    found = j
                    break
            if found is None:
                symbols[i] = "*"
            else:
                symbols[i] = "1"
                pairs[i] = found
        else:
            c = 0
            found = None
            for j in range(i, 0, -1):
                c += 1 if j in xs else -1
                if c == 0 and j < i:
                    found = j
                    break
            if found is None:
                symbols[i] = "*"
            else:
                symbols[i] = "0"
                pairs[i] = found
    return symbols, pairs


def csig_oracle(n, xs):
    """Circular signature: walk around the circle, first zero = minimal pair."""
    xs = set(xs)
    symbols = {}
    pairs = {}
    for i in range(1, n + 1):
        if i in xs:
            c = 0
            found = None
            j = i
            for _ in range(n):
                c += 1 if j in xs else -1
                if c == 0:
                    found = j
                    break
                j = j % n + 1
            if found is None:
                symbols[i] = "*"
            else:
                symbols[i] = "1"
                pairs[i] = found
        else:
            c = 0
            found = None
            j = i
            for _ in range(n):
                c += 1 if j in xs else -1
                if c == 0:
                    found = j
                    break
                j = (j - 2) % n + 1
            if found is None:
                symbols[i] = "*"
            else:
                symbols[i] = "0"
                pairs[i] = found
    return symbols, pairs


def all_subsets(n):
    out = []
    for r in range(n + 1):
        out.extend(frozenset(c) for c in combinations(range(1, n + 1), r))
    return out


def signature_classes(n):
    """Group all subsets by linear signature; each class sorted by size."""
    groups = {}
    for s in all_subsets(n):
        key = tuple(sig_oracle(n, s)[0][i] for i in range(1, n + 1))
        groups.setdefault(key, []).append(s)
    return {k: sorted(v, key=len) for k, v in groups.items()}


def p_oracle(n, xs, _cache={}):
    """Mirror via the class: the unique member of complementary size."""
    if n not in _cache:
        _cache[n] = signature_classes(n)
    xs = frozenset(xs)
    key = tuple(sig_oracle(n, xs)[0][i] for i in range(1, n + 1))
    for member in _cache[n][key]:
        if len(member) == n - len(xs):
            return member
    raise AssertionError(f"no mirror of {sorted(xs)} in its class")


def less_oracle(n, ys, xs):
    ys, xs = frozenset(ys), frozenset(xs)
    if ys == xs or not ys <= xs:
        return False
    return p_oracle(n, xs) <= p_oracle(n, ys)


def upper_half(n):
    return [s for s in all_subsets(n) if 2 * len(s) >= n]


def count_matchings_brute(sat_neighbors):
    """Matchings saturating the keyed side, by straight backtracking."""

    items = sorted(sat_neighbors)
    used = set()

    def rec(idx):
        if idx == len(items):
            return 1
        total = 0
        for t in sat_neighbors[items[idx]]:
            if t not in used:
                used.add(t)
                total += rec(idx + 1)
                used.remove(t)
        return total

    return rec(0)


def max_matching_brute(adj, n_right):
    """Maximum matching size by exhaustive augmentation-free recursion."""

    best = 0
    n_left = len(adj)

    def rec(u, used, count):
        nonlocal best
        remaining = n_left - u
        if count + remaining <= best:
            return
        if u == n_left:
            best = max(best, count)
            return
        rec(u + 1, used, count)
        for v in adj[u]:
            if v not in used:
                used.add(v)
                rec(u + 1, used, count + 1)
                used.remove(v)

    rec(0, set(), 0)
    return best


def f_schedule_brute(sizes, w):
    """f, its iterates, and d straight from the definitions."""
    m = len(sizes) - 1
    f = {}
    for k in range(m + 1):
        f[k] = None
        for i in range(k + 1, m + 1):
            if sum(sizes[k + 1 : i + 1]) >= w:
                f[k] = i
                break
    d = 0
    cur = 0
    while f[cur] is not None:
        cur = f[cur]
        d += 1
    return f, d


def subset_to_mask(xs):
    mask = 0
    for e in xs:
        mask |= 1 << (e - 1)
    return mask


def mask_to_set(mask):
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)

"""Signatures of subsets via bracket matching, and the mirror bijection.

A subset x of [n] reads as a bracket string: "(" where the element is
present, ")" where it is absent.  Stack matching yields the linear
signature; pairing the leftover ")" prefix against the leftover "("
suffix across the wrap, innermost first, yields the circular one.
Unmatched positions are stars.  The equivalence class of x under
"same linear signature" is a symmetric chain, and the mirror p(x) is
the member of that chain with complementary rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, InputError
from .lattice import GroundSet, Subset


class SignatureSymbol(Enum):
    ZERO = "0"
    ONE = "1"
    STAR = "*"


class Variant(Enum):
    LINEAR = "linear"
    CIRCULAR = "circular"


@dataclass(frozen=True)
class Signature:
    """Per-coordinate symbols in {0,1,*} with the pairing of matched brackets."""

    ground: GroundSet
    variant: Variant
    symbols: tuple[SignatureSymbol, ...]
    pairs: tuple[int | None, ...]

    def symbol_string(self) -> str:
        return "".join(s.value for s in self.symbols)

    def positions(self, symbol: SignatureSymbol) -> tuple[int, ...]:
        return tuple(i + 1 for i, s in enumerate(self.symbols) if s is symbol)

    @property
    def stars(self) -> tuple[int, ...]:
        return self.positions(SignatureSymbol.STAR)

    @property
    def ones(self) -> tuple[int, ...]:
        return self.positions(SignatureSymbol.ONE)

    @property
    def zeros(self) -> tuple[int, ...]:
        return self.positions(SignatureSymbol.ZERO)

    def pair_of(self, i: int) -> int | None:
        self.ground.check_element(i)
        return self.pairs[i - 1]

    def intervals(self) -> list[tuple[int, int]]:
        """The intervals [i, pair(i)] (circularly for the circular variant)."""
        return [
            (i + 1, self.pairs[i])
            for i in range(self.ground.n)
            if self.symbols[i] is SignatureSymbol.ONE
        ]

    def to_json_dict(self) -> dict:
        return {
            "n": self.ground.n,
            "variant": self.variant.value,
            "symbols": self.symbol_string(),
            "pairs": list(self.pairs),
            "stars": list(self.stars),
            "ones": list(self.ones),
            "zeros": list(self.zeros),
        }


@dataclass(frozen=True)
class Chain:
    """A strictly increasing chain of subsets under inclusion."""

    ground: GroundSet
    elements: tuple[Subset, ...]

    def __post_init__(self):
        for a, b in zip(self.elements, self.elements[1:]):
            if not (a.issubset(b) and a.mask != b.mask):
                raise InputError("chain elements must strictly increase under inclusion")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def is_skipless(self) -> bool:
        return all(b.rank == a.rank + 1 for a, b in zip(self.elements, self.elements[1:]))

    @property
    def is_rank_symmetric(self) -> bool:
        ranks = [e.rank for e in self.elements]
        n = self.ground.n
        return all(ranks[i] + ranks[len(ranks) - 1 - i] == n for i in range(len(ranks)))

    @property
    def is_symmetric(self) -> bool:
        return self.is_skipless and self.is_rank_symmetric


# --- mask-level workhorses -------------------------------------------------
#
# The functions below avoid Subset objects on purpose: the partition
# pipeline sweeps hundreds of thousands of masks.


def _linear_match(n: int, mask: int) -> tuple[dict[int, int], list[int], list[int]]:
    """Stack-match mask as brackets; returns (pairs, open_close, open_left).

    pairs maps each matched position to its partner (both directions);
    the second item is the unmatched ")" positions (ascending), the third
    the unmatched "(" positions (ascending).
    """
    pairs: dict[int, int] = {}
    stack: list[int] = []
    unmatched_close: list[int] = []
    for i in range(1, n + 1):
        if mask >> (i - 1) & 1:
            stack.append(i)
        elif stack:
            j = stack.pop()
            pairs[j] = i
            pairs[i] = j
        else:
            unmatched_close.append(i)
    return pairs, unmatched_close, stack


def _circular_match(n: int, mask: int) -> tuple[dict[int, int], list[int]]:
    """Circular pairing: linear matching plus wrap pairs, innermost first."""
    pairs, closes, opens = _linear_match(n, mask)
    q = min(len(closes), len(opens))
    for s in range(q):
        a = opens[-1 - s]
        b = closes[s]
        pairs[a] = b
        pairs[b] = a
    stars = closes[q:] + opens[: len(opens) - q]
    stars.sort()
    return pairs, stars


def _circular_star_members(n: int, mask: int) -> list[int]:
    """Members of x that stay unmatched circularly (ascending).

    For |x| >= n/2 these are the first 2|x|-n linear "(" stars; removing
    any one of them steps down a cover of the upper-half order.
    """
    _, closes, opens = _linear_match(n, mask)
    q = min(len(closes), len(opens))
    return opens[: len(opens) - q]


def _mirror_mask(n: int, mask: int) -> int:
    """p(x) as a mask: drop the first 2|x|-n unmatched "(" stars of x."""
    k = mask.bit_count()
    if 2 * k < n:
        raise DomainError(f"mirror needs rank >= n/2, got rank {k} with n={n}")
    out = mask
    _, closes, opens = _linear_match(n, mask)
    for i in opens[: 2 * k - n]:
        out &= ~(1 << (i - 1))
    return out


def _mirror_inv_mask(n: int, mask: int) -> int:
    """Inverse of the mirror: add the next n-2|y| stars above y's own."""
    k = mask.bit_count()
    if 2 * k > n:
        raise DomainError(f"mirror_inv needs rank <= n/2, got rank {k} with n={n}")
    _, closes, opens = _linear_match(n, mask)
    stars = closes + opens
    need = n - 2 * k
    # y's member stars form the tail of the star list; extend that tail.
    take = stars[len(closes) - need : len(closes)]
    out = mask
    for i in take:
        out |= 1 << (i - 1)
    return out


def _btk_chain_masks(n: int, mask: int) -> list[int]:
    """All masks with the same linear signature, bottom to top."""
    _, closes, opens = _linear_match(n, mask)
    stars = closes + opens
    bottom = mask
    for i in opens:
        bottom &= ~(1 << (i - 1))
    out = [bottom]
    acc = bottom
    for i in reversed(stars):
        acc |= 1 << (i - 1)
        out.append(acc)
    return out


# --- public operations ------------------------------------------------------


def _build_signature(x: Subset, variant: Variant, pairs: dict[int, int]) -> Signature:
    n = x.ground.n
    symbols = []
    pair_list: list[int | None] = []
    for i in range(1, n + 1):
        j = pairs.get(i)
        if j is None:
            symbols.append(SignatureSymbol.STAR)
            pair_list.append(None)
        else:
            symbols.append(SignatureSymbol.ONE if i in x else SignatureSymbol.ZERO)
            pair_list.append(j)
    return Signature(x.ground, variant, tuple(symbols), tuple(pair_list))


def signature(x: Subset) -> Signature:
    """The linear signature sg(x), by one stack pass over the brackets."""
    pairs, _, _ = _linear_match(x.ground.n, x.mask)
    return _build_signature(x, Variant.LINEAR, pairs)


def circular_signature(x: Subset) -> Signature:
    """The circular signature csg(x), with minimal-length circular pairs."""
    pairs, _ = _circular_match(x.ground.n, x.mask)
    return _build_signature(x, Variant.CIRCULAR, pairs)


def btk_chain(x: Subset) -> Chain:
    """The symmetric chain of all subsets sharing x's linear signature."""
    masks = _btk_chain_masks(x.ground.n, x.mask)
    return Chain(x.ground, tuple(Subset(x.ground, m) for m in masks))


def mirror(x: Subset) -> Subset:
    """p(x): the member of x's chain with rank n - |x|; needs |x| >= n/2."""
    return Subset(x.ground, _mirror_mask(x.ground.n, x.mask))


def mirror_inv(y: Subset) -> Subset:
    """The unique x with |x| >= n/2 on y's chain and p(x) = y; needs |y| <= n/2."""
    return Subset(y.ground, _mirror_inv_mask(y.ground.n, y.mask))


def star_pair_alignment(x: Subset) -> dict[int, int | None]:
    """How x's linear member-stars behave circularly, checked and returned.

    For |x| = k >= n/2, with i_1 < ... < i_t the linear stars inside x and
    j_1 < ... < j_{t-2k+n} the linear stars outside x: the first 2k-n of
    the i's stay stars circularly, and i_r pairs with j_{t+1-r} beyond
    that.  Raises if the computed circular signature ever disagrees.
    """
    n = x.ground.n
    k = x.rank
    if 2 * k < n:
        raise DomainError(f"star_pair_alignment needs |x| >= n/2, got {k} with n={n}")
    _, closes, opens = _linear_match(n, x.mask)
    i_list, j_list = opens, closes
    t = len(i_list)
    pairs, stars = _circular_match(n, x.mask)
    star_set = set(stars)
    mapping: dict[int, int | None] = {}
    for r, i in enumerate(i_list, start=1):
        if r <= 2 * k - n:
            if i not in star_set:
                raise InputError(f"expected circular star at {i}, got pair {pairs.get(i)}")
            mapping[i] = None
        else:
            expected = j_list[t - r]
            if pairs.get(i) != expected:
                raise InputError(f"expected circular pair {expected} at {i}, got {pairs.get(i)}")
            mapping[i] = expected
    return mapping

"""Ground-set arithmetic for the Boolean lattice 2^[n].

Subsets of [n] = {1, ..., n} are n-bit masks (bit i-1 <=> element i).
Everything here is a pure function over immutable values; elements are
1-indexed throughout the public API and masks are an internal detail.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError, InputError

DEFAULT_MAX_N = 64


def max_ground_size() -> int:
    """Largest allowed n; SYMCHAIN_MAX_N raises the default 64-bit cap."""
    raw = os.environ.get("SYMCHAIN_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"SYMCHAIN_MAX_N must be an integer, got {raw!r}") from exc
    if value < 1:
        raise InputError(f"SYMCHAIN_MAX_N must be positive, got {value}")
    return value


@dataclass(frozen=True)
class GroundSet:
    """The ground set [n] = {1, ..., n}."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"ground-set size must be a positive integer, got {self.n!r}")
        cap = max_ground_size()
        if self.n > cap:
            raise InputError(f"n={self.n} exceeds the mask cap {cap} (set SYMCHAIN_MAX_N to raise it)")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def elements(self) -> range:
        return range(1, self.n + 1)

    def check_element(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise InputError(f"element {i} out of range 1..{self.n}")


@dataclass(frozen=True)
class Subset:
    """A subset of [n], stored as an n-bit membership mask."""

    ground: GroundSet
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.ground.n:
            raise InputError(f"mask {self.mask:#x} has bits above position {self.ground.n - 1}")

    @classmethod
    def from_elements(cls, ground: GroundSet, elements) -> "Subset":
        mask = 0
        for e in elements:
            ground.check_element(e)
            mask |= 1 << (e - 1)
        return cls(ground, mask)

    @cached_property
    def rank(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.rank

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.ground.n and bool(self.mask >> (element - 1) & 1)

    def elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.ground.n) if self.mask >> i & 1)

    def complement(self) -> "Subset":
        return Subset(self.ground, self.mask ^ self.ground.full_mask)

    def union(self, other: "Subset") -> "Subset":
        self._check_same_ground(other)
        return Subset(self.ground, self.mask | other.mask)

    def remove(self, element: int) -> "Subset":
        self.ground.check_element(element)
        return Subset(self.ground, self.mask & ~(1 << (element - 1)))

    def add(self, element: int) -> "Subset":
        self.ground.check_element(element)
        return Subset(self.ground, self.mask | 1 << (element - 1))

    def issubset(self, other: "Subset") -> bool:
        self._check_same_ground(other)
        return self.mask & other.mask == self.mask

    def _check_same_ground(self, other: "Subset") -> None:
        if self.ground.n != other.ground.n:
            raise InputError(f"mixed ground sets n={self.ground.n} and n={other.ground.n}")

    def to_text(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements()) + "}"

    def to_bits(self) -> str:
        return "".join("1" if self.mask >> i & 1 else "0" for i in range(self.ground.n))

    def __str__(self) -> str:
        return self.to_text()


def parse_subset(ground: GroundSet, text: str, fmt: str = "sets") -> Subset:
    """Parse "{e1,e2,...}" / "{}" or, with fmt="bits", a length-n 0/1 string."""
    text = text.strip()
    if fmt == "bits":
        if len(text) != ground.n or set(text) - {"0", "1"}:
            raise InputError(f"bits form must be {ground.n} characters of 0/1, got {text!r}")
        mask = 0
        for i, ch in enumerate(text):
            if ch == "1":
                mask |= 1 << i
        return Subset(ground, mask)
    if fmt != "sets":
        raise InputError(f"unknown subset format {fmt!r}")
    if not (text.startswith("{") and text.endswith("}")):
        raise InputError(f"subset text must be brace-delimited, got {text!r}")
    body = text[1:-1].strip()
    if not body:
        return Subset(ground, 0)
    elements = []
    for part in body.split(","):
        part = part.strip()
        if not part.isdigit():
            raise InputError(f"bad element {part!r} in {text!r}")
        elements.append(int(part))
    for prev, cur in zip(elements, elements[1:]):
        if cur <= prev:
            raise InputError(f"elements must be strictly ascending in {text!r}")
    return Subset.from_elements(ground, elements)


def format_subset(subset: Subset, fmt: str = "sets") -> str:
    if fmt == "bits":
        return subset.to_bits()
    if fmt == "sets":
        return subset.to_text()
    raise InputError(f"unknown subset format {fmt!r}")


@dataclass(frozen=True)
class CircularInterval:
    """The circular interval [start, end]_n inside Z_n (1-indexed)."""

    ground: GroundSet
    start: int
    end: int

    def __post_init__(self):
        self.ground.check_element(self.start)
        self.ground.check_element(self.end)

    @cached_property
    def mask(self) -> int:
        return _interval_mask(self.ground.n, self.start, self.end)

    @property
    def cardinality(self) -> int:
        return (self.end - self.start) % self.ground.n + 1

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.ground.n and bool(self.mask >> (element - 1) & 1)

    def elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.ground.n) if self.mask >> i & 1)


def _interval_mask(n: int, i: int, j: int) -> int:
    """Bit mask of [i, j]_n: a plain run when i <= j, wrapping otherwise."""
    if i <= j:
        return ((1 << (j - i + 1)) - 1) << (i - 1)
    head = (1 << j) - 1
    tail = ((1 << (n - i + 1)) - 1) << (i - 1)
    return head | tail


def interval_mod(ground: GroundSet, i: int, j: int) -> CircularInterval:
    """The circular interval [i, j]_n."""
    return CircularInterval(ground, i, j)


def disc_count(x: Subset, i: int, j: int) -> int:
    """|x ∩ [i,j]| - |[i,j] \\ x| over the linear interval, requiring i <= j."""
    x.ground.check_element(i)
    x.ground.check_element(j)
    if i > j:
        raise InputError(f"disc_count needs i <= j, got ({i}, {j})")
    window = _interval_mask(x.ground.n, i, j)
    inside = (x.mask & window).bit_count()
    return 2 * inside - (j - i + 1)


def circ_count(x: Subset, i: int, j: int) -> int:
    """|[i,j]_n ∩ x| - |[i,j]_n \\ x| over the circular interval."""
    x.ground.check_element(i)
    x.ground.check_element(j)
    window = _interval_mask(x.ground.n, i, j)
    inside = (x.mask & window).bit_count()
    return 2 * inside - window.bit_count()


def level(ground: GroundSet, k: int) -> list[int]:
    """All masks of rank k in ascending order (Gosper's hack)."""
    if not 0 <= k <= ground.n:
        raise DomainError(f"rank {k} out of range 0..{ground.n}")
    if k == 0:
        return [0]
    out = []
    v = (1 << k) - 1
    limit = 1 << ground.n
    while v < limit:
        out.append(v)
        lsb = v & -v
        ripple = v + lsb
        v = ripple | ((v ^ ripple) >> (lsb.bit_length() + 1))
    return out

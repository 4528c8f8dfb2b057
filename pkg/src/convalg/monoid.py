"""Commutative monoids N^k and Z^k under coordinatewise addition.

Elements are plain tuples of Python ints. Coordinates are kept inside the
signed 64-bit range; leaving it raises instead of silently growing, so an
element always fits the serialized integer format.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .errors import (
    ElementError,
    MonoidMismatchError,
    NumericOverflowError,
    ParseError,
    UnsupportedOperationError,
)

Element = tuple  # tuple[int, ...]
ElementLike = Union[int, Sequence[int]]

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1

NAT = "nat"
INT = "int"


@dataclass(frozen=True)
class Monoid:
    """N^k (``kind="nat"``) or Z^k (``kind="int"``)."""

    kind: str
    dim: int = 1

    def __post_init__(self):
        if self.kind not in (NAT, INT):
            raise ValueError(f"unknown monoid kind {self.kind!r}")
        if not isinstance(self.dim, int) or isinstance(self.dim, bool) or self.dim < 1:
            raise ValueError(f"monoid dimension must be a positive integer, got {self.dim!r}")

    @classmethod
    def nat(cls, dim: int = 1) -> "Monoid":
        return cls(NAT, dim)

    @classmethod
    def integers(cls, dim: int = 1) -> "Monoid":
        return cls(INT, dim)

    @property
    def finite_fiber(self) -> bool:
        """True iff every element has finitely many decompositions x + y."""
        return self.kind == NAT

    def __str__(self):
        base = "N" if self.kind == NAT else "Z"
        return base if self.dim == 1 else f"{base}^{self.dim}"

    def element(self, a: ElementLike) -> Element:
        """Validate ``a`` and return it as a tuple. Bare ints are accepted when dim == 1."""
        if isinstance(a, bool):
            raise ElementError(f"{a!r} is not an element of {self}")
        if isinstance(a, int):
            coords = (a,)
        else:
            try:
                coords = tuple(a)
            except TypeError:
                raise ElementError(f"{a!r} is not an element of {self}") from None
        if len(coords) != self.dim:
            raise ElementError(f"element {coords} has {len(coords)} coordinates, {self} needs {self.dim}")
        if any(isinstance(c, bool) for c in coords):
            raise ElementError(f"boolean coordinate in {coords}")
        try:
            coords = tuple(operator.index(c) for c in coords)
        except TypeError:
            raise ElementError(f"non-integer coordinate in {coords}") from None
        if self.kind == NAT and any(c < 0 for c in coords):
            raise ElementError(f"negative coordinate in {coords}, not an element of {self}")
        if any(c < INT_MIN or c > INT_MAX for c in coords):
            raise NumericOverflowError(f"element {coords} exceeds the 64-bit coordinate range")
        return coords

    def contains(self, a) -> bool:
        try:
            self.element(a)
        except (ElementError, NumericOverflowError):
            return False
        return True

    def identity(self) -> Element:
        return (0,) * self.dim

    def combine(self, a: ElementLike, b: ElementLike) -> Element:
        a = self.element(a)
        b = self.element(b)
        out = tuple(x + y for x, y in zip(a, b))
        check_range(out)
        return out

    def decompositions(self, z: ElementLike) -> list[tuple[Element, Element]]:
        """All ordered pairs (x, y) with x + y == z, x increasing lexicographically."""
        if not self.finite_fiber:
            raise UnsupportedOperationError(f"{self} has infinite fibers; decompositions are not enumerable")
        z = self.element(z)
        pairs = []
        for x in itertools.product(*(range(c + 1) for c in z)):
            pairs.append((x, tuple(c - xi for c, xi in zip(z, x))))
        return pairs

    def box(self, bound: ElementLike) -> Iterator[Element]:
        """Elements coordinatewise between the identity and ``bound`` (N^k only)."""
        if not self.finite_fiber:
            raise UnsupportedOperationError(f"{self} has no finite lower boxes")
        bound = self.element(bound)
        return itertools.product(*(range(c + 1) for c in bound))

    def to_json(self) -> dict:
        return {"monoid": self.kind, "dim": self.dim}

    @classmethod
    def from_json(cls, obj) -> "Monoid":
        if not isinstance(obj, dict) or "monoid" not in obj:
            raise ParseError(f"expected a monoid object like {{'monoid': 'nat', 'dim': 1}}, got {obj!r}")
        try:
            return cls(obj["monoid"], obj.get("dim", 1))
        except ValueError as exc:
            raise ParseError(str(exc)) from None


def check_range(coords: Element) -> None:
    for c in coords:
        if c < INT_MIN or c > INT_MAX:
            raise NumericOverflowError(f"combined element {coords} overflows the 64-bit coordinate range")


def require_same(m1: Monoid, m2: Monoid) -> Monoid:
    if m1 != m2:
        raise MonoidMismatchError(f"monoid mismatch: {m1} vs {m2}")
    return m1


def combine(m: Monoid, a: ElementLike, b: ElementLike) -> Element:
    return m.combine(a, b)


def identity(m: Monoid) -> Element:
    return m.identity()


def decompositions(m: Monoid, z: ElementLike) -> list[tuple[Element, Element]]:
    return m.decompositions(z)

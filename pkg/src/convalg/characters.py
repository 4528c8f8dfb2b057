"""Power characters a -> prod_j z_j ** a_j and the functionals they induce.

A character of N^k or Z^k here is determined by one complex base per
coordinate. It is multiplicative, sends the identity to 1 (with 0 ** 0 == 1)
and induces the linear functional f -> sum_a Phi(a) f(a), which is
multiplicative for convolution.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .algebra import FiniteSupportFunction, delta
from .errors import (
    CoefficientError,
    ElementError,
    NumericOverflowError,
    ParseError,
    UnboundedCharacterError,
)
from .monoid import INT, NAT, ElementLike, Monoid, require_same
from .serialize import complex_from_json, complex_to_json

# slack on |z| == 1 / |z| <= 1 so that e.g. exp(1j * theta) counts as unimodular
MODULUS_TOL = 1e-12


def ipow(z: complex, n: int) -> complex:
    """z ** n for an integer n, by square-and-multiply when |n| > 16."""
    if n < 0:
        if z == 0:
            raise ZeroDivisionError("zero base with negative exponent")
        z = 1 / z
        n = -n
    if n <= 16:
        out = 1 + 0j
        for _ in range(n):
            out *= z
        return out
    out = 1 + 0j
    while n:
        if n & 1:
            out *= z
        z *= z
        n >>= 1
    return out


@dataclass(frozen=True)
class Character:
    monoid: Monoid
    base: tuple

    def __post_init__(self):
        base = tuple(complex(z) for z in self.base)
        if len(base) != self.monoid.dim:
            raise ElementError(f"character needs {self.monoid.dim} base values, got {len(base)}")
        if not all(cmath.isfinite(z) for z in base):
            raise CoefficientError("character base must be finite")
        if self.monoid.kind == INT and any(z == 0 for z in base):
            raise CoefficientError("a character of a group cannot vanish: base entries must be nonzero")
        object.__setattr__(self, "base", base)

    @classmethod
    def power(cls, monoid: Monoid, *base: complex) -> "Character":
        return cls(monoid, tuple(base))

    def __call__(self, a: ElementLike) -> complex:
        return char_value(self, a)

    def is_bounded(self) -> bool:
        return is_bounded(self)

    def evaluate(self, f: FiniteSupportFunction) -> complex:
        return evaluate(self, f)

    def functional(self) -> Callable[[FiniteSupportFunction], complex]:
        """The induced homomorphism f -> sum_a Phi(a) f(a)."""
        return lambda f: evaluate(self, f)

    @classmethod
    def from_homomorphism(cls, monoid: Monoid, phi: Callable[[FiniteSupportFunction], complex]) -> "Character":
        """Recover the character a -> phi(delta_a) from a power-family functional."""
        base = []
        for j in range(monoid.dim):
            unit = tuple(1 if i == j else 0 for i in range(monoid.dim))
            base.append(phi(delta(monoid, unit)))
        return cls(monoid, tuple(base))

    def to_json(self) -> dict:
        return {"char": {"monoid": self.monoid.to_json(), "base": [complex_to_json(z) for z in self.base]}}

    @classmethod
    def from_json(cls, obj) -> "Character":
        if isinstance(obj, dict) and "char" in obj:
            obj = obj["char"]
        if not isinstance(obj, dict) or "monoid" not in obj or "base" not in obj:
            raise ParseError("character JSON needs 'monoid' and 'base'")
        if not isinstance(obj["base"], list):
            raise ParseError("'base' must be a list")
        return cls(Monoid.from_json(obj["monoid"]), tuple(complex_from_json(z) for z in obj["base"]))


def char_value(phi: Character, a: ElementLike) -> complex:
    a = phi.monoid.element(a)
    out = 1 + 0j
    for z, n in zip(phi.base, a):
        try:
            out *= ipow(z, n)
        except ZeroDivisionError:
            raise CoefficientError(f"zero base raised to negative power at {a}") from None
    if not cmath.isfinite(out):
        raise NumericOverflowError(f"character value at {a} overflows")
    return out


def is_bounded(phi: Character) -> bool:
    """sup |Phi| <= 1: |z_j| <= 1 on N^k, |z_j| == 1 on Z^k."""
    mods = [abs(z) for z in phi.base]
    if phi.monoid.kind == NAT:
        return all(r <= 1 + MODULUS_TOL for r in mods)
    return all(abs(r - 1) <= MODULUS_TOL for r in mods)


def evaluate(phi: Character, f: FiniteSupportFunction) -> complex:
    require_same(phi.monoid, f.monoid)
    vals = [char_value(phi, a) * c for a, c in f.items()]
    if not all(cmath.isfinite(v) for v in vals):
        raise NumericOverflowError("character pairing overflows")
    out = complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))
    if not cmath.isfinite(out):
        raise NumericOverflowError("character pairing overflows")
    return out


def require_bounded(phi: Character) -> None:
    if not is_bounded(phi):
        raise UnboundedCharacterError(
            f"character with base {phi.base} on {phi.monoid} is unbounded; "
            "it does not extend to summable functions"
        )


def unimodular(monoid: Monoid, angles: Sequence[float]) -> Character:
    """Character with base exp(i * theta_j); bounded on both N^k and Z^k."""
    return Character(monoid, tuple(cmath.exp(1j * t) for t in angles))

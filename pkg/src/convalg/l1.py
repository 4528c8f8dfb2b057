"""Summable functions as a finite part plus a certified bound on the omitted mass.

``SummableFunction(finite_part, tail_bound)`` stands for any function that
agrees with ``finite_part`` on its support and whose remaining absolute mass
is at most ``tail_bound``. Norms and character values therefore come out as
intervals: the true l1 norm lies in ``[|finite_part|_1, |finite_part|_1 + tail_bound]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import FiniteSupportFunction, convolve
from .characters import Character, evaluate, require_bounded
from .errors import CoefficientError, ElementError, ParseError
from .monoid import NAT, Monoid, require_same


@dataclass(frozen=True)
class SummableFunction:
    finite_part: FiniteSupportFunction
    tail_bound: float = 0.0

    def __post_init__(self):
        tau = float(self.tail_bound)
        if not math.isfinite(tau) or tau < 0:
            raise CoefficientError(f"tail bound must be finite and nonnegative, got {self.tail_bound!r}")
        object.__setattr__(self, "tail_bound", tau)

    @property
    def monoid(self) -> Monoid:
        return self.finite_part.monoid

    @property
    def is_exact(self) -> bool:
        return self.tail_bound == 0

    def l1_norm_interval(self) -> tuple[float, float]:
        return l1_norm_interval(self)

    def __mul__(self, other):
        if not isinstance(other, SummableFunction):
            return NotImplemented
        return convolve_l1(self, other)

    def to_json(self) -> dict:
        out = self.finite_part.to_json()
        out["tail_bound"] = self.tail_bound
        return out

    @classmethod
    def from_json(cls, obj) -> "SummableFunction":
        f = FiniteSupportFunction.from_json(obj)
        tau = obj.get("tail_bound", 0.0)
        if isinstance(tau, bool) or not isinstance(tau, (int, float)):
            raise ParseError(f"tail_bound must be a number, got {tau!r}")
        return cls(f, tau)


def l1_norm_interval(f: SummableFunction) -> tuple[float, float]:
    lower = f.finite_part.l1_norm()
    return lower, lower + f.tail_bound


def convolve_l1(f1: SummableFunction, f2: SummableFunction) -> SummableFunction:
    """Convolve finite parts; bound the rest by U1*t2 + U2*t1 + t1*t2.

    Writing f_i = p_i + r_i with |r_i|_1 <= t_i, the product differs from
    p1 * p2 by p1*r2 + r1*p2 + r1*r2, whose norm is bounded through
    submultiplicativity.
    """
    require_same(f1.monoid, f2.monoid)
    u1 = f1.finite_part.l1_norm()
    u2 = f2.finite_part.l1_norm()
    t1, t2 = f1.tail_bound, f2.tail_bound
    tail = u1 * t2 + u2 * t1 + t1 * t2
    return SummableFunction(convolve(f1.finite_part, f2.finite_part), tail)


def evaluate_l1(phi: Character, f: SummableFunction) -> tuple[complex, float]:
    """Value of the induced functional and a bound on the error from the tail.

    Only bounded characters extend to summable functions; others raise
    :class:`UnboundedCharacterError`.
    """
    require_bounded(phi)
    require_same(phi.monoid, f.monoid)
    return evaluate(phi, f.finite_part), f.tail_bound


def geometric(m: Monoid, r: float, n_terms: int) -> SummableFunction:
    """j -> r**j for 0 <= j <= n_terms on N, with tail r**(n_terms+1) / (1 - r)."""
    if m.kind != NAT or m.dim != 1:
        raise ElementError(f"geometric functions live on N, not {m}")
    r = float(r)
    if not 0 <= r < 1:
        raise CoefficientError(f"geometric ratio must satisfy 0 <= r < 1, got {r}")
    if n_terms < 0:
        raise ElementError("n_terms must be nonnegative")
    coeffs = [r**j for j in range(n_terms + 1)]
    return SummableFunction(FiniteSupportFunction.from_coefficients(coeffs, m), _geometric_tail(r, n_terms))


def _geometric_tail(r: float, n_terms: int) -> float:
    # exact rational tail, rounded up so the float never undercounts
    exact_tail = Fraction(r) ** (n_terms + 1) / (1 - Fraction(r))
    tail = float(exact_tail)
    if Fraction(tail) < exact_tail:
        tail = math.nextafter(tail, math.inf)
    return tail


def exact(f: FiniteSupportFunction) -> SummableFunction:
    return SummableFunction(f, 0.0)

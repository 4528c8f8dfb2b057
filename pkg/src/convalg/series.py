"""Total convolution of arbitrary functions on finite-fiber monoids (N^k).

On N^k every element has finitely many decompositions, so the convolution
of any two coefficient rules is defined pointwise. Functions are kept lazy:
a :class:`LazyFunction` wraps a pure rule and is only evaluated at the
elements a computation asks for.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from typing import Callable

from .algebra import FiniteSupportFunction
from .characters import Character, evaluate, ipow
from .errors import ParseError, UnsupportedOperationError
from .monoid import Element, ElementLike, Monoid, require_same


class LazyFunction:
    """A total coefficient rule on a finite-fiber monoid, memoized per element.

    ``rule`` must be pure: it receives an element tuple and returns a number.
    """

    def __init__(self, monoid: Monoid, rule: Callable[[Element], complex], name: str = "", memoize: bool = True):
        if not monoid.finite_fiber:
            raise UnsupportedOperationError(f"total convolution needs finite fibers; {monoid} has none")
        self.monoid = monoid
        self.rule = rule
        self.name = name or getattr(rule, "__name__", "rule")
        self._memo: dict | None = {} if memoize else None

    def __call__(self, a: ElementLike) -> complex:
        a = self.monoid.element(a)
        if self._memo is None:
            return complex(self.rule(a))
        try:
            return self._memo[a]
        except KeyError:
            # identical value on every write, so racing writers are harmless
            v = complex(self.rule(a))
            self._memo[a] = v
            return v

    def __mul__(self, other):
        if not isinstance(other, LazyFunction):
            return NotImplemented
        return total_convolve(self, other)

    def __repr__(self):
        return f"LazyFunction({self.monoid}, {self.name})"


def total_convolve_at(f1: LazyFunction, f2: LazyFunction, z: ElementLike) -> complex:
    m = require_same(f1.monoid, f2.monoid)
    terms = [f1(x) * f2(y) for x, y in m.decompositions(z)]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def total_convolve(f1: LazyFunction, f2: LazyFunction) -> LazyFunction:
    require_same(f1.monoid, f2.monoid)
    return LazyFunction(f1.monoid, lambda z: total_convolve_at(f1, f2, z), name=f"({f1.name} * {f2.name})")


def truncate(f: LazyFunction, bound: ElementLike) -> FiniteSupportFunction:
    """Materialize ``f`` on every element coordinatewise <= ``bound``."""
    return FiniteSupportFunction(f.monoid, {a: f(a) for a in f.monoid.box(bound)})


# named rules -------------------------------------------------------------

def ones(m: Monoid) -> LazyFunction:
    return LazyFunction(m, lambda a: 1.0, name="ones")


def geometric_rule(m: Monoid, r: complex) -> LazyFunction:
    """a -> r ** (a_1 + ... + a_k)."""
    return LazyFunction(m, lambda a: ipow(complex(r), sum(a)), name=f"geometric:{r}")


def delta_rule(m: Monoid, at: ElementLike) -> LazyFunction:
    at = m.element(at)
    return LazyFunction(m, lambda a: 1.0 if a == at else 0.0, name=f"delta:{list(at)}")


def poly_rule(coeffs, m: Monoid | None = None) -> LazyFunction:
    """Coefficient list on N: j -> coeffs[j], zero beyond the list."""
    m = m or Monoid.nat(1)
    if m.dim != 1:
        raise ParseError("poly rules are defined on N only")
    cs = [complex(c) for c in coeffs]
    return LazyFunction(m, lambda a: cs[a[0]] if a[0] < len(cs) else 0.0, name=f"poly:{coeffs}")


def from_finite(f: FiniteSupportFunction) -> LazyFunction:
    return LazyFunction(f.monoid, lambda a: f.terms.get(a, 0j), name="finite")


def parse_rule(text: str, m: Monoid) -> LazyFunction:
    """Parse ``ones``, ``geometric:r``, ``delta:a`` or ``poly:[c0, c1, ...]``."""
    name, _, arg = text.partition(":")
    name = name.strip()
    try:
        if name == "ones" and not arg:
            return ones(m)
        if name == "geometric":
            return geometric_rule(m, complex(arg.strip()))
        if name == "delta":
            val = json.loads(arg)
            return delta_rule(m, val)
        if name == "poly":
            val = json.loads(arg)
            if not isinstance(val, list):
                raise ParseError("poly: expects a JSON list of coefficients")
            return poly_rule(val, m)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad rule {text!r}: {exc}") from None
    raise ParseError(f"unknown rule {text!r}; expected ones, geometric:r, delta:a or poly:[...]")


# characters on the total algebra -------------------------------------------

@dataclass
class TrivialityReport:
    """Outcome of pairing a character against a witness function on N^k."""

    trivial: bool
    witness: str
    checkpoints: list = field(default_factory=list)
    partial_sums: list = field(default_factory=list)
    diverges: bool = False
    message: str = ""

    def to_json(self) -> dict:
        return {
            "trivial": self.trivial,
            "witness": self.witness,
            "checkpoints": list(self.checkpoints),
            "partial_sums": [{"re": s.real, "im": s.imag} for s in self.partial_sums],
            "diverges": self.diverges,
            "message": self.message,
        }


def character_triviality_check(
    m: Monoid, phi: Character, checkpoints: tuple[int, ...] = (10, 100, 1000)
) -> TrivialityReport:
    """Show that ``phi`` induces no functional on all functions, unless it is trivial.

    A power character vanishes off a finite set only when every base entry
    is 0. Otherwise some coordinate j has z_j != 0, and the witness
    f(t e_j) = z_j ** -t (zero off that ray) gives partial sums
    sum_{t<=N} Phi(t e_j) f(t e_j) = N + 1, which grow without bound.
    """
    require_same(m, phi.monoid)
    if not m.finite_fiber:
        raise UnsupportedOperationError(f"{m} has infinite fibers; the total algebra is not defined")
    nonzero = [j for j, z in enumerate(phi.base) if z != 0]
    if not nonzero:
        ident = m.identity()
        f = ones(m)
        s = f(ident)
        return TrivialityReport(
            trivial=True,
            witness="ones",
            checkpoints=[0],
            partial_sums=[s],
            diverges=False,
            message="Phi vanishes off the identity; phi(f) = f(0) is finite for every f",
        )

    j = nonzero[0]
    zj = phi.base[j]
    inv = 1 / zj

    def ray_witness(a, j=j):
        if any(c for i, c in enumerate(a) if i != j):
            return 0.0
        return ipow(inv, a[j])

    label = "ones" if m.dim == 1 and zj == 1 else f"f(t*e_{j}) = ({zj})**(-t)"
    witness = LazyFunction(m, ray_witness, name=label)
    sums = []
    for n in checkpoints:
        bound = tuple(n if i == j else 0 for i in range(m.dim))
        sums.append(evaluate(phi, truncate(witness, bound)))
    # each ray term is Phi(t e_j) f(t e_j) = 1, so S_N should track N + 1
    grows = all(abs(s) >= 0.5 * (n + 1) for s, n in zip(sums, checkpoints))
    increasing = all(abs(b) > abs(a) for a, b in zip(sums, sums[1:]))
    diverges = grows and increasing and all(cmath.isfinite(s) for s in sums)
    return TrivialityReport(
        trivial=False,
        witness=label,
        checkpoints=list(checkpoints),
        partial_sums=sums,
        diverges=diverges,
        message="partial sums of sum_a Phi(a) f(a) grow like N + 1; no induced homomorphism on all functions",
    )

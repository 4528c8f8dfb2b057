"""Finitely supported complex functions on a monoid, with convolution.

A :class:`FiniteSupportFunction` is a sparse map from monoid elements to
complex coefficients. Stored coefficients are never exactly zero, so two
functions are equal iff their term maps are equal.

Convolution is the sum over ordered pairs::

    (f * g)(z) = sum over x + y == z of f(x) g(y)

evaluated by iterating over pairs of support points, which also works on
groups like Z where fibers are infinite.
"""

from __future__ import annotations

import cmath
import math
from numbers import Number
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import CoefficientError, NumericOverflowError, ParseError
from .monoid import Element, ElementLike, Monoid, check_range, require_same
from .serialize import complex_from_json


class FiniteSupportFunction:
    __slots__ = ("monoid", "_terms")

    def __init__(self, monoid: Monoid, terms: Mapping[ElementLike, complex] | Iterable = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        canon: dict[Element, complex] = {}
        for a, c in terms:
            a = monoid.element(a)
            c = _coefficient(c)
            if a in canon:
                raise CoefficientError(f"duplicate element {a}")
            if c != 0:
                canon[a] = c
        self.monoid = monoid
        self._terms = canon

    @classmethod
    def _trusted(cls, monoid: Monoid, terms: dict) -> "FiniteSupportFunction":
        obj = cls.__new__(cls)
        obj.monoid = monoid
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, monoid: Monoid) -> "FiniteSupportFunction":
        return cls._trusted(monoid, {})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[complex], monoid: Monoid | None = None) -> "FiniteSupportFunction":
        """Polynomial-style constructor on N: ``coeffs[j]`` is the value at j."""
        monoid = monoid or Monoid.nat(1)
        return cls(monoid, {(j,): c for j, c in enumerate(coeffs)})

    @property
    def terms(self) -> Mapping[Element, complex]:
        return MappingProxyType(self._terms)

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def coeff(self, a: ElementLike) -> complex:
        # stored keys are already validated tuples
        if type(a) is tuple and a in self._terms:
            return self._terms[a]
        return self._terms.get(self.monoid.element(a), 0j)

    def items(self) -> list[tuple[Element, complex]]:
        """Terms sorted lexicographically by element."""
        return sorted(self._terms.items())

    def l1_norm(self) -> float:
        return math.fsum(abs(c) for c in self._terms.values())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, FiniteSupportFunction):
            return NotImplemented
        return self.monoid == other.monoid and self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{_fmt_elem(a)}: {c!r}" for a, c in self.items())
        return f"FiniteSupportFunction({self.monoid}, {{{body}}})"

    def __add__(self, other):
        if not isinstance(other, FiniteSupportFunction):
            return NotImplemented
        return add(self, other)

    def __neg__(self):
        return scale(-1, self)

    def __sub__(self, other):
        if not isinstance(other, FiniteSupportFunction):
            return NotImplemented
        return add(self, scale(-1, other))

    def __mul__(self, other):
        if isinstance(other, FiniteSupportFunction):
            return convolve(self, other)
        if isinstance(other, Number):
            return scale(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return scale(other, self)
        return NotImplemented

    def to_json(self) -> dict:
        return {
            "monoid": self.monoid.to_json(),
            "terms": [{"elem": list(a), "re": c.real, "im": c.imag} for a, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj) -> "FiniteSupportFunction":
        if not isinstance(obj, dict) or "monoid" not in obj or "terms" not in obj:
            raise ParseError("function JSON needs 'monoid' and 'terms' keys")
        monoid = Monoid.from_json(obj["monoid"])
        if not isinstance(obj["terms"], list):
            raise ParseError("'terms' must be a list")
        pairs = []
        for t in obj["terms"]:
            if not isinstance(t, dict) or "elem" not in t:
                raise ParseError(f"malformed term {t!r}")
            pairs.append((t["elem"], complex_from_json(t)))
        return cls(monoid, pairs)


def _coefficient(c) -> complex:
    try:
        c = complex(c)
    except (TypeError, ValueError):
        raise CoefficientError(f"coefficient {c!r} is not a number") from None
    if not cmath.isfinite(c):
        raise CoefficientError(f"non-finite coefficient {c!r}")
    return c


def _fmt_elem(a: Element) -> str:
    return str(a[0]) if len(a) == 1 else str(a)


def delta(m: Monoid, a: ElementLike) -> FiniteSupportFunction:
    """The function equal to 1 at ``a`` and 0 elsewhere."""
    return FiniteSupportFunction._trusted(m, {m.element(a): 1 + 0j})


def add(f1: FiniteSupportFunction, f2: FiniteSupportFunction) -> FiniteSupportFunction:
    m = require_same(f1.monoid, f2.monoid)
    out = dict(f1._terms)
    for a, c in f2._terms.items():
        if a in out:
            s = out[a] + c
            if s == 0:
                del out[a]
            else:
                out[a] = s
        else:
            out[a] = c
    return FiniteSupportFunction._trusted(m, out)


def scale(c: complex, f: FiniteSupportFunction) -> FiniteSupportFunction:
    c = _coefficient(c)
    out = {}
    for a, v in f._terms.items():
        p = c * v
        if p != 0:
            out[a] = p
    return FiniteSupportFunction._trusted(f.monoid, _checked(out))


def support(f: FiniteSupportFunction) -> frozenset:
    return f.support()


def coeff(f: FiniteSupportFunction, a: ElementLike) -> complex:
    return f.coeff(a)


def convolve(f1: FiniteSupportFunction, f2: FiniteSupportFunction) -> FiniteSupportFunction:
    m = require_same(f1.monoid, f2.monoid)
    if not f1._terms or not f2._terms:
        return FiniteSupportFunction.zero(m)
    lo1, lo2, strides = _sum_layout(f1, f2)

    # elements become mixed-radix ints with code(x) + code(y) = code(x + y) - code(lo1 + lo2)
    def encode(a, lo):
        return sum((c - l) * s for c, l, s in zip(a, lo, strides))

    pairs1 = [(encode(x, lo1), c) for x, c in f1._terms.items()]
    pairs2 = [(encode(y, lo2), c) for y, c in f2._terms.items()]

    # first product at a key is stored as-is, so f * delta_0 reproduces f bit for bit
    acc: dict = {}
    for x, c1 in pairs1:
        for y, c2 in pairs2:
            z = x + y
            if z in acc:
                acc[z] += c1 * c2
            else:
                acc[z] = c1 * c2

    base = tuple(a + b for a, b in zip(lo1, lo2))
    out = {}
    for z, c in acc.items():
        if c != 0:
            coords = []
            for stride, b in zip(strides, base):
                q, z = divmod(z, stride)
                coords.append(q + b)
            out[tuple(coords)] = c
    return FiniteSupportFunction._trusted(m, _checked(out))


def _sum_layout(f1: FiniteSupportFunction, f2: FiniteSupportFunction):
    """Lower corners of both supports and strides for encoding the sumset box.

    Also rejects sums that leave the coordinate range; the extreme coordinates
    of the sumset come from the extremes of each support.
    """
    dim = f1.monoid.dim
    lo1, lo2, widths = [], [], []
    for j in range(dim):
        a = [x[j] for x in f1._terms]
        b = [y[j] for y in f2._terms]
        lo1.append(min(a))
        lo2.append(min(b))
        check_range((lo1[j] + lo2[j], max(a) + max(b)))
        widths.append(max(a) + max(b) - lo1[j] - lo2[j] + 1)
    strides = [1] * dim
    for j in range(dim - 2, -1, -1):
        strides[j] = strides[j + 1] * widths[j + 1]
    return lo1, lo2, strides


def _checked(terms: dict) -> dict:
    for c in terms.values():
        if not cmath.isfinite(c):
            raise NumericOverflowError("coefficient overflowed to a non-finite value")
    return terms

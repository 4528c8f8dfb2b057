"""Convex cones in R^n, sampled densities on them and exponential characters.

Cones are finitely generated: A = {sum_i t_i v_i : t_i >= 0}. Densities are
sampled on a uniform grid over the box [0, L]^n (or [-L, L]^n for
functions on all of R^n) and integrals are rectangle-rule sums

    int g(x) dx  ~  h^n * sum over grid points x of g(x)

so the quadrature error is first order in h for integrands with jumps.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import nnls
from scipy.signal import convolve as _direct_convolve

from .errors import (
    DegenerateConeError,
    DimensionMismatchError,
    GridMismatchError,
    ParseError,
    UnboundedCharacterError,
)

DEFAULT_TOL = 1e-9


class ConvexCone:
    """Cone spanned by nonnegative combinations of ``generators`` (rows)."""

    def __init__(self, generators: Sequence[Sequence[float]]):
        gens = np.array(generators, dtype=float)
        if gens.ndim != 2 or gens.shape[0] == 0:
            raise DegenerateConeError("generators must be a nonempty list of vectors")
        if not np.all(np.isfinite(gens)):
            raise DegenerateConeError("generators must be finite")
        n = gens.shape[1]
        if np.linalg.matrix_rank(gens) < n:
            raise DegenerateConeError(f"generators span a proper subspace of R^{n}; the cone is not full-dimensional")
        gens.setflags(write=False)
        self.generators = gens
        self._facets: np.ndarray | None = None

    @classmethod
    def orthant(cls, n: int) -> "ConvexCone":
        return cls(np.eye(n))

    @property
    def dim(self) -> int:
        return self.generators.shape[1]

    @property
    def is_orthant(self) -> bool:
        """Generators are positive multiples of e_1, ..., e_n, each exactly once."""
        g = self.generators
        if g.shape[0] != g.shape[1]:
            return False
        nz = g != 0
        if not np.all(nz.sum(axis=1) == 1) or not np.all(g[nz] > 0):
            return False
        return sorted(np.argmax(nz, axis=1).tolist()) == list(range(self.dim))

    def __eq__(self, other):
        if not isinstance(other, ConvexCone):
            return NotImplemented
        return self.generators.shape == other.generators.shape and np.array_equal(self.generators, other.generators)

    __hash__ = None

    def __repr__(self):
        return f"ConvexCone({self.generators.tolist()})"

    def contains(self, x, tol: float = DEFAULT_TOL) -> bool:
        return cone_contains(self, x, tol)

    def dual_contains(self, y, tol: float = DEFAULT_TOL) -> bool:
        return dual_contains(self, y, tol)

    def facet_normals(self) -> np.ndarray:
        """Inward unit normals of the facets (the extreme rays of the dual cone).

        A hyperplane through n - 1 independent generators bounds a facet when
        every generator lies on one side of it. Empty when the cone is R^n.
        """
        if self._facets is not None:
            return self._facets
        g = self.generators
        n = self.dim
        scale = np.linalg.norm(g, axis=1)
        normals = []
        if n == 1:
            signs = np.sign(g[:, 0])
            if np.all(signs >= 0):
                normals.append(np.array([1.0]))
            elif np.all(signs <= 0):
                normals.append(np.array([-1.0]))
        else:
            for idx in itertools.combinations(range(g.shape[0]), n - 1):
                sub = g[list(idx)]
                _, s, vt = np.linalg.svd(sub)
                if np.sum(s > 1e-12 * s[0]) < n - 1:
                    continue
                normal = vt[-1]
                dots = g @ normal
                slack = 1e-12 * scale
                if np.all(dots >= -slack):
                    pass
                elif np.all(dots <= slack):
                    normal = -normal
                else:
                    continue
                if not any(np.allclose(normal, q, atol=1e-12) for q in normals):
                    normals.append(normal)
        self._facets = np.array(normals).reshape(-1, n)
        return self._facets

    def contains_many(self, points: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
        """Vectorized membership of the rows of ``points``, via facet inequalities."""
        pts = np.asarray(points, dtype=float).reshape(-1, self.dim)
        if self.is_orthant:
            return np.all(pts >= -tol, axis=1)
        normals = self.facet_normals()
        if normals.shape[0] == 0:
            return np.ones(pts.shape[0], dtype=bool)
        scale = 1.0 + np.linalg.norm(pts, axis=1)
        return np.all(pts @ normals.T >= -tol * scale[:, None], axis=1)

    def sample(self, rng: np.random.Generator, size: int, ray_fraction: float = 0.25) -> np.ndarray:
        """Random points of the cone: nonnegative combinations of random subsets of generators.

        A fraction of the samples sit on single generator rays so that extreme
        directions are always represented.
        """
        m = self.generators.shape[0]
        weights = rng.exponential(size=(size, m))
        keep = rng.random((size, m)) < 0.5
        weights *= keep
        n_ray = int(ray_fraction * size)
        if n_ray:
            weights[:n_ray] = 0.0
            weights[np.arange(n_ray), rng.integers(0, m, n_ray)] = rng.exponential(size=n_ray) + 1e-3
        return weights @ self.generators

    def to_json(self) -> dict:
        return {"generators": self.generators.tolist()}

    @classmethod
    def from_json(cls, obj) -> "ConvexCone":
        if not isinstance(obj, dict) or "generators" not in obj:
            raise ParseError("cone JSON needs a 'generators' list")
        try:
            return cls(obj["generators"])
        except (TypeError, ValueError) as exc:
            if isinstance(exc, DegenerateConeError):
                raise
            raise ParseError(f"bad generators: {exc}") from None


def _vector(x, n: int) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.shape[0] != n:
        raise DimensionMismatchError(f"vector of length {v.shape[0]} used with a cone in R^{n}")
    return v


def cone_contains(c: ConvexCone, x, tol: float = DEFAULT_TOL) -> bool:
    """Is ``x`` within ``tol * (1 + |x|)`` of the cone? Solved by nonnegative least squares."""
    x = _vector(x, c.dim)
    if c.is_orthant:
        return bool(np.all(x >= -tol))
    _, resid = nnls(c.generators.T, x)
    return bool(resid <= tol * (1 + np.linalg.norm(x)))


def dual_contains(c: ConvexCone, y, tol: float = DEFAULT_TOL) -> bool:
    """Is y in the dual cone {y : y.x >= 0 for all x in A}? Checked on the generators."""
    y = _vector(y, c.dim)
    dots = c.generators @ y
    slack = tol * np.linalg.norm(y) * np.linalg.norm(c.generators, axis=1)
    return bool(np.all(dots >= -slack))


@dataclass(frozen=True, eq=False)
class ExpCharacter:
    """x -> exp(zeta . x) with zeta = xi + i eta in C^n."""

    zeta: tuple

    def __post_init__(self):
        z = tuple(complex(v) for v in self.zeta)
        if not z or not all(math.isfinite(v.real) and math.isfinite(v.imag) for v in z):
            raise ValueError("zeta must be a nonempty tuple of finite complex numbers")
        object.__setattr__(self, "zeta", z)

    @property
    def dim(self) -> int:
        return len(self.zeta)

    @property
    def xi(self) -> np.ndarray:
        return np.array([v.real for v in self.zeta])

    @property
    def eta(self) -> np.ndarray:
        return np.array([v.imag for v in self.zeta])

    def __call__(self, x) -> np.ndarray:
        pts = np.asarray(x, dtype=float)
        return np.exp(pts @ np.array(self.zeta))

    def bounded_on(self, cone: ConvexCone, tol: float = 1e-12) -> bool:
        """|exp(zeta . x)| = exp(xi . x) <= 1 on the cone, i.e. -xi lies in the dual cone."""
        if cone.dim != self.dim:
            raise DimensionMismatchError(f"character in C^{self.dim} used with a cone in R^{cone.dim}")
        dots = cone.generators @ self.xi
        return bool(np.all(dots <= tol * np.linalg.norm(cone.generators, axis=1)))


class GridFunction:
    """Complex samples on the grid x = h * i over [0, L]^n, or [-L, L]^n if ``symmetric``.

    With a ``cone`` the function is supported in it: samples at grid points
    outside the cone are forced to zero on construction.
    """

    def __init__(
        self,
        values,
        spacing: float,
        extent: float,
        cone: ConvexCone | None = None,
        symmetric: bool = False,
    ):
        h, L = float(spacing), float(extent)
        if not (h > 0 and L > 0 and math.isfinite(h) and math.isfinite(L)):
            raise GridMismatchError("spacing and extent must be positive")
        steps = round(L / h)
        if abs(steps * h - L) > 1e-9 * L:
            raise GridMismatchError(f"extent {L} is not an integer multiple of spacing {h}")
        vals = np.array(values, dtype=complex)
        size = 2 * steps + 1 if symmetric else steps + 1
        if vals.ndim == 0 or any(s != size for s in vals.shape):
            raise GridMismatchError(f"values must have shape ({size},)*n for spacing {h}, extent {L}")
        if cone is not None:
            if cone.dim != vals.ndim:
                raise DimensionMismatchError(f"cone in R^{cone.dim} used with a {vals.ndim}-d grid")
            vals = np.where(_grid_mask(cone, h, steps, vals.ndim, symmetric), vals, 0)
        vals.setflags(write=False)
        self.values = vals
        self.spacing = h
        self.extent = L
        self.steps = steps
        self.cone = cone
        self.symmetric = bool(symmetric)

    @property
    def dim(self) -> int:
        return self.values.ndim

    @property
    def offset(self) -> int:
        """Grid index of the origin along each axis."""
        return self.steps if self.symmetric else 0

    def axis(self) -> np.ndarray:
        return (np.arange(self.values.shape[0]) - self.offset) * self.spacing

    def points(self) -> np.ndarray:
        """Grid coordinates, shape values.shape + (n,)."""
        ax = self.axis()
        return np.stack(np.meshgrid(*([ax] * self.dim), indexing="ij"), axis=-1)

    @classmethod
    def sample(
        cls,
        func: Callable[..., np.ndarray],
        dim: int,
        spacing: float,
        extent: float,
        cone: ConvexCone | None = None,
        symmetric: bool = False,
    ) -> "GridFunction":
        """Sample ``func(x_1, ..., x_n)`` (vectorized over coordinate arrays) on the grid."""
        steps = round(extent / spacing)
        lo = -steps if symmetric else 0
        ax = np.arange(lo, steps + 1) * float(spacing)
        coords = np.meshgrid(*([ax] * dim), indexing="ij")
        vals = np.broadcast_to(np.asarray(func(*coords), dtype=complex), coords[0].shape)
        return cls(vals, spacing, extent, cone=cone, symmetric=symmetric)

    @classmethod
    def delta(
        cls, dim: int, spacing: float, extent: float, cone: ConvexCone | None = None, symmetric: bool = False
    ) -> "GridFunction":
        """Unit mass at the origin: a single sample of height 1 / h^n."""
        steps = round(extent / spacing)
        size = 2 * steps + 1 if symmetric else steps + 1
        vals = np.zeros((size,) * dim, dtype=complex)
        o = steps if symmetric else 0
        vals[(o,) * dim] = 1.0 / spacing**dim
        return cls(vals, spacing, extent, cone=cone, symmetric=symmetric)

    def to_json(self) -> dict:
        flat = self.values.reshape(-1)
        inter = np.empty(2 * flat.size)
        inter[0::2] = flat.real
        inter[1::2] = flat.imag
        out = {
            "dim": self.dim,
            "extent": self.extent,
            "spacing": self.spacing,
            "symmetric": self.symmetric,
            "values": inter.tolist(),
        }
        if self.cone is not None:
            out["cone"] = self.cone.to_json()
        return out

    @classmethod
    def from_json(cls, obj) -> "GridFunction":
        try:
            dim = int(obj["dim"])
            h = float(obj["spacing"])
            L = float(obj["extent"])
            symmetric = bool(obj.get("symmetric", False))
            raw = np.asarray(obj["values"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad grid JSON: {exc}") from None
        if dim < 1 or h <= 0 or L <= 0:
            raise ParseError("grid needs dim >= 1 and positive spacing and extent")
        steps = round(L / h)
        size = 2 * steps + 1 if symmetric else steps + 1
        if raw.ndim != 1 or raw.size != 2 * size**dim:
            raise ParseError(f"expected {2 * size**dim} interleaved re/im values, got {raw.size}")
        vals = (raw[0::2] + 1j * raw[1::2]).reshape((size,) * dim)
        cone = ConvexCone.from_json(obj["cone"]) if obj.get("cone") is not None else None
        return cls(vals, h, L, cone=cone, symmetric=symmetric)


def _grid_mask(cone: ConvexCone, h: float, steps: int, dim: int, symmetric: bool) -> np.ndarray:
    lo = -steps if symmetric else 0
    ax = np.arange(lo, steps + 1) * h
    pts = np.stack(np.meshgrid(*([ax] * dim), indexing="ij"), axis=-1)
    shape = pts.shape[:-1]
    return cone.contains_many(pts.reshape(-1, dim)).reshape(shape)


def _require_compatible(f1: GridFunction, f2: GridFunction) -> None:
    if f1.dim != f2.dim:
        raise GridMismatchError(f"grid dimensions differ: {f1.dim} vs {f2.dim}")
    if f1.spacing != f2.spacing or f1.extent != f2.extent or f1.symmetric != f2.symmetric:
        raise GridMismatchError("grids differ in spacing, extent or box type")
    if (f1.cone is None) != (f2.cone is None) or (f1.cone is not None and f1.cone != f2.cone):
        raise GridMismatchError("inputs must share the same cone mask, or both be unmasked")


def grid_convolve(f1: GridFunction, f2: GridFunction) -> GridFunction:
    """(f1 * f2)(x) ~ h^n sum_y f1(y) f2(x - y), sampled on the inputs' grid.

    The full discrete convolution extends to twice the box; only the part
    inside the input box is kept, so mass pushed beyond L is dropped. Inputs
    supported well inside [0, L/2]^n lose nothing. Masked inputs give a
    masked output.
    """
    _require_compatible(f1, f2)
    n = f1.dim
    full = _direct_convolve(f1.values, f2.values, mode="full", method="direct")
    # index k of the full result sits at ((k - 2*offset) * h); keep k - offset in range
    o = f1.offset
    size = f1.values.shape[0]
    out = full[(slice(o, o + size),) * n] * f1.spacing**n
    return GridFunction(out, f1.spacing, f1.extent, cone=f1.cone, symmetric=f1.symmetric)


def _require_char_bounded(phi: ExpCharacter, f: GridFunction) -> None:
    if phi.dim != f.dim:
        raise DimensionMismatchError(f"character in C^{phi.dim} used with a {f.dim}-d grid")
    if f.cone is not None:
        if not phi.bounded_on(f.cone):
            raise UnboundedCharacterError(
                f"exp(zeta . x) with xi = {phi.xi.tolist()} is unbounded on the cone; need xi . v <= 0 on every generator"
            )
    elif np.any(phi.xi != 0):
        raise UnboundedCharacterError("on all of R^n only unimodular characters exp(i eta . x) are allowed (xi = 0)")


def char_evaluate(phi: ExpCharacter, f: GridFunction) -> complex:
    """Rectangle-rule value of int exp(zeta . x) f(x) dx over the grid box."""
    _require_char_bounded(phi, f)
    weights = phi(f.points())
    # numpy's pairwise summation keeps the result independent of thread count
    return complex(np.sum(weights * f.values) * f.spacing**f.dim)


def char_multiplicativity_residual(phi: ExpCharacter, f1: GridFunction, f2: GridFunction) -> float:
    """|phi(f1 * f2) - phi(f1) phi(f2)| on the grid."""
    conv = grid_convolve(f1, f2)
    return abs(char_evaluate(phi, conv) - char_evaluate(phi, f1) * char_evaluate(phi, f2))

"""Command-line front end.

Every command prints one JSON document on stdout. Failures print a JSON
error object on stderr and exit with 2 (unparseable input), 3 (violated
precondition) or 4 (numeric overflow). Demos exit 1 when their self-check
fails.
"""

from __future__ import annotations

import argparse
import cmath
import math
import sys

import numpy as np

from . import serialize
from .algebra import FiniteSupportFunction, convolve, delta
from .characters import Character, evaluate
from .cone import (
    ConvexCone,
    ExpCharacter,
    GridFunction,
    char_evaluate,
    cone_contains,
    dual_contains,
    grid_convolve,
)
from .errors import ConvAlgError, NumericOverflowError, ParseError
from .l1 import SummableFunction, convolve_l1, evaluate_l1, l1_norm_interval
from .monoid import Monoid
from .serialize import complex_to_json, dumps
from .series import ones, parse_rule, poly_rule, total_convolve, total_convolve_at, truncate

EXIT_DEMO_FAILED = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_OVERFLOW = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _load(source: str):
    """Inline JSON if ``source`` starts with '{' or '[', else a file path."""
    text = source.strip()
    if text[:1] in "{[":
        return serialize.loads(text)
    try:
        with open(source, encoding="utf-8") as fh:
            return serialize.loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc.strerror}") from None


def _load_function(source: str) -> SummableFunction:
    obj = _load(source)
    if not isinstance(obj, dict):
        raise ParseError("function input must be a JSON object")
    return SummableFunction.from_json(obj)


def _emit_function(f: SummableFunction, keep_tail: bool) -> dict:
    return f.to_json() if keep_tail else f.finite_part.to_json()


def _parse_numbers(text: str) -> list[complex]:
    try:
        return [complex(tok.strip()) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ParseError(f"cannot parse numbers from {text!r}") from None


def _parse_zeta(text: str, dim: int | None = None) -> tuple:
    """``re,im,re,im,...`` pairs, or one complex literal per coordinate (``-1+0.5j,...``)."""
    toks = [t.strip() for t in text.split(",") if t.strip()]
    if any("j" in t for t in toks) or (dim is not None and len(toks) == dim and len(toks) != 2 * dim):
        return tuple(_parse_numbers(text))
    nums = [z.real for z in _parse_numbers(text)]
    if len(nums) % 2:
        raise ParseError("--zeta expects re,im pairs")
    return tuple(complex(nums[i], nums[i + 1]) for i in range(0, len(nums), 2))


def _parse_point(text: str) -> list[float]:
    vals = _parse_numbers(text)
    if any(v.imag for v in vals):
        raise ParseError("points must be real")
    return [v.real for v in vals]


def _parse_char(args, monoid: Monoid) -> Character:
    if args.char_file:
        phi = Character.from_json(_load(args.char_file))
        if phi.monoid != monoid:
            raise ParseError(f"character monoid {phi.monoid} differs from function monoid {monoid}")
        return phi
    if not args.char:
        raise ParseError("give --char z=... or --char-file")
    text = args.char
    if text.startswith("z="):
        text = text[2:]
    return Character(monoid, tuple(_parse_numbers(text)))


def _monoid_from_args(args) -> Monoid:
    return Monoid(args.monoid, args.dim)


def cmd_conv(args) -> dict:
    f1 = _load_function(args.a)
    f2 = _load_function(args.b)
    keep_tail = not (f1.is_exact and f2.is_exact)
    return _emit_function(convolve_l1(f1, f2), keep_tail)


def cmd_eval(args) -> dict:
    f = _load_function(args.function)
    phi = _parse_char(args, f.monoid)
    if f.is_exact:
        return {"value": complex_to_json(evaluate(phi, f.finite_part)), "error_bound": 0.0}
    value, err = evaluate_l1(phi, f)
    return {"value": complex_to_json(value), "error_bound": err}


def cmd_norm(args) -> dict:
    lower, upper = l1_norm_interval(_load_function(args.function))
    return {"lower": lower, "upper": upper}


def cmd_total_conv(args) -> dict:
    m = _monoid_from_args(args)
    f1 = parse_rule(args.rule1, m)
    f2 = parse_rule(args.rule2, m)
    if args.at is not None:
        z = m.element([int(v.real) for v in _parse_numbers(args.at)])
        return {"at": list(z), "value": complex_to_json(total_convolve_at(f1, f2, z))}
    bound = [int(v.real) for v in _parse_numbers(args.upto)]
    return truncate(total_convolve(f1, f2), bound).to_json()


def _load_cone(source: str) -> ConvexCone:
    obj = _load(source)
    if isinstance(obj, list):
        obj = {"generators": obj}
    return ConvexCone.from_json(obj)


def cmd_cone_contains(args) -> dict:
    return {"contains": cone_contains(_load_cone(args.cone), _parse_point(args.point), args.tol)}


def cmd_dual_contains(args) -> dict:
    return {"contains": dual_contains(_load_cone(args.cone), _parse_point(args.point), args.tol)}


def _load_grid(source: str) -> GridFunction:
    obj = _load(source)
    if not isinstance(obj, dict):
        raise ParseError("grid input must be a JSON object")
    return GridFunction.from_json(obj)


def cmd_cone_conv(args) -> dict:
    return grid_convolve(_load_grid(args.a), _load_grid(args.b)).to_json()


def cmd_laplace(args) -> dict:
    if args.grid:
        f = _load_grid(args.grid)
    else:
        # built-in density e^{-|x|_1} on the orthant
        if args.dim < 1:
            raise ParseError("--dim must be positive")
        f = GridFunction.sample(
            lambda *xs: np.exp(-sum(xs)), args.dim, args.h, args.extent, cone=ConvexCone.orthant(args.dim)
        )
    phi = ExpCharacter(_parse_zeta(args.zeta, f.dim))
    return {"value": complex_to_json(char_evaluate(phi, f)), "spacing": f.spacing, "extent": f.extent}


# demos ------------------------------------------------------------------

def demo_poly() -> dict:
    one_plus_x = FiniteSupportFunction.from_coefficients([1, 1])
    cube = convolve(convolve(one_plus_x, one_plus_x), one_plus_x)
    got = [cube.coeff(j).real for j in range(4)]
    expected = [1.0, 3.0, 3.0, 1.0]
    return {"demo": "poly", "value": got, "expected": expected, "tolerance": 0.0,
            "pass": got == expected and len(cube) == 4}


def demo_wiener() -> dict:
    m = Monoid.integers(1)
    f = FiniteSupportFunction(m, {-1: 0.25, 0: 0.5, 1: 0.25})
    thetas = np.linspace(0, 2 * math.pi, 33)
    worst = 0.0
    for t in thetas:
        phi = Character(m, (cmath.exp(1j * t),))
        value, _ = evaluate_l1(phi, SummableFunction(f))
        worst = max(worst, abs(value - (0.5 + 0.5 * math.cos(t))))
        worst = max(worst, abs(evaluate(phi, convolve(f, f)) - value * value))
    tol = 1e-12
    at_pi, _ = evaluate_l1(Character(m, (-1 + 0j,)), SummableFunction(f))
    return {"demo": "wiener", "value": complex_to_json(at_pi), "expected": 0.0, "max_error": worst,
            "tolerance": tol, "pass": worst <= tol and abs(at_pi) <= tol}


def demo_inverse() -> dict:
    m = Monoid.nat(1)
    prod = total_convolve(ones(m), poly_rule([1, -1]))
    f = truncate(prod, 64)
    ok = f == delta(m, 0)
    return {"demo": "inverse", "value": f.to_json(), "expected": delta(m, 0).to_json(), "tolerance": 0.0, "pass": ok}


def demo_laplace(h: float = 0.001, extent: float = 20.0) -> dict:
    cone = ConvexCone.orthant(1)
    f = GridFunction.sample(lambda x: np.exp(-x), 1, h, extent, cone=cone)
    value = char_evaluate(ExpCharacter((-1.0,)), f)
    budget = h + math.exp(-2 * extent)
    return {"demo": "laplace", "value": complex_to_json(value), "expected": 0.5, "tolerance": budget,
            "pass": abs(value - 0.5) <= budget}


DEMOS = {"poly": demo_poly, "wiener": demo_wiener, "inverse": demo_inverse, "laplace": demo_laplace}


def cmd_demo(args) -> dict:
    if args.name == "laplace":
        return demo_laplace(args.h, args.extent)
    return DEMOS[args.name]()


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="convalg", description="Convolution algebras on monoids and convex cones.")
    p.add_argument("-o", "--output", help="write the JSON result here instead of stdout")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("conv", help="convolve two functions (finite or summable)")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_conv)

    s = sub.add_parser("eval", help="evaluate the functional induced by a power character")
    s.add_argument("function")
    s.add_argument("--char", help="base values, e.g. z=2 or z=0.5,1j")
    s.add_argument("--char-file", help="character JSON (file or inline)")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("norm", help="l1 norm interval")
    s.add_argument("function")
    s.set_defaults(func=cmd_norm)

    s = sub.add_parser("total-conv", help="total convolution of named rules on N^k")
    s.add_argument("rule1")
    s.add_argument("rule2")
    s.add_argument("--monoid", default="nat", choices=["nat", "int"])
    s.add_argument("--dim", type=int, default=1)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--at", help="single element, comma separated")
    g.add_argument("--upto", help="materialize all elements coordinatewise <= this bound")
    s.set_defaults(func=cmd_total_conv)

    for verb, fn, help_ in (
        ("cone-contains", cmd_cone_contains, "membership in a generated cone"),
        ("dual-contains", cmd_dual_contains, "membership in the dual cone"),
    ):
        s = sub.add_parser(verb, help=help_)
        s.add_argument("--cone", required=True, help="cone JSON or generator list")
        s.add_argument("--point", required=True, help="comma separated coordinates")
        s.add_argument("--tol", type=float, default=1e-9)
        s.set_defaults(func=fn)

    s = sub.add_parser("cone-conv", help="grid convolution of two sampled densities")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_cone_conv)

    s = sub.add_parser("laplace", help="exponential-character integral of a grid function")
    s.add_argument("grid", nargs="?", help="grid JSON; default is e^{-|x|_1} on the orthant")
    s.add_argument("--zeta", required=True, help="re,im pairs per coordinate, e.g. --zeta=-1,0")
    s.add_argument("--h", type=float, default=0.001)
    s.add_argument("--extent", type=float, default=20.0)
    s.add_argument("--dim", type=int, default=1)
    s.set_defaults(func=cmd_laplace)

    s = sub.add_parser("demo", help="self-checking demonstrations")
    s.add_argument("name", choices=sorted(DEMOS))
    s.add_argument("--h", type=float, default=0.001)
    s.add_argument("--extent", type=float, default=20.0)
    s.set_defaults(func=cmd_demo)
    return p


def _fail(code: int, kind: str, exc: BaseException) -> int:
    sys.stderr.write(dumps({"error": kind, "code": code, "message": str(exc)}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
        text = dumps(result) + "\n"
    except ParseError as exc:
        return _fail(EXIT_PARSE, "parse", exc)
    except (NumericOverflowError, OverflowError) as exc:
        return _fail(EXIT_OVERFLOW, "overflow", exc)
    except ConvAlgError as exc:
        return _fail(EXIT_PRECONDITION, "precondition", exc)
    except (ValueError, TypeError, KeyError) as exc:
        # anything the validators did not catch is still malformed input
        return _fail(EXIT_PARSE, "parse", exc)

    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.verb == "demo" and not result["pass"]:
        return EXIT_DEMO_FAILED
    return 0


if __name__ == "__main__":
    sys.exit(main())

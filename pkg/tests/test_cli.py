import json
import subprocess
import sys

import pytest

from conftest import INT, NAT, NAT2, random_function
from convalg import FiniteSupportFunction, delta, geometric
from convalg.cli import main
from convalg.serialize import dumps, format_float


def fn_json(f):
    return dumps(f.to_json())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_conv_golden(capsys):
    d1 = fn_json(delta(NAT, 1))
    code, out, _ = run(capsys, "conv", d1, d1)
    assert code == 0
    assert out == '{"monoid": {"monoid": "nat", "dim": 1}, "terms": [{"elem": [2], "re": 1.0, "im": 0.0}]}\n'


def test_conv_files(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(fn_json(FiniteSupportFunction(INT, {-1: 1, 1: 2j})))
    b.write_text(fn_json(FiniteSupportFunction(INT, {1: 1})))
    code, out, _ = run(capsys, "conv", str(a), str(b))
    assert code == 0
    assert FiniteSupportFunction.from_json(json.loads(out)) == FiniteSupportFunction(INT, {0: 1, 2: 2j})


def test_conv_summable_keeps_tail(capsys):
    g = dumps(geometric(NAT, 0.5, 10).to_json())
    code, out, _ = run(capsys, "conv", g, g)
    obj = json.loads(out)
    assert code == 0 and obj["tail_bound"] > 0


def test_eval_polynomial(tmp_path, capsys):
    poly = tmp_path / "poly.json"
    poly.write_text(fn_json(FiniteSupportFunction(NAT, {0: 1, 1: 2, 2: 1})))
    code, out, _ = run(capsys, "eval", "--char", "z=2", str(poly))
    assert code == 0
    assert json.loads(out)["value"] == {"re": 9.0, "im": 0.0}


def test_eval_summable_and_char_file(capsys):
    g = dumps(geometric(NAT, 0.5, 40).to_json())
    char = '{"char": {"monoid": {"monoid": "nat", "dim": 1}, "base": [{"re": 0.5, "im": 0}]}}'
    code, out, _ = run(capsys, "eval", "--char-file", char, g)
    obj = json.loads(out)
    assert code == 0
    assert abs(obj["value"]["re"] - 4 / 3) <= 2 * 2.0**-40
    assert obj["error_bound"] == geometric(NAT, 0.5, 40).tail_bound


def test_norm(capsys):
    code, out, _ = run(capsys, "norm", dumps(geometric(NAT, 0.5, 20).to_json()))
    obj = json.loads(out)
    assert code == 0 and obj["lower"] == 2 - 2.0**-20 and obj["upper"] == 2.0


def test_total_conv(capsys):
    code, out, _ = run(capsys, "total-conv", "ones", "ones", "--at", "5")
    assert code == 0 and json.loads(out)["value"]["re"] == 6
    code, out, _ = run(capsys, "total-conv", "ones", "poly:[1,-1]", "--upto", "64")
    assert code == 0 and FiniteSupportFunction.from_json(json.loads(out)) == delta(NAT, 0)
    code, out, _ = run(capsys, "total-conv", "ones", "delta:[0,1]", "--dim", "2", "--upto", "1,1")
    assert code == 0 and len(json.loads(out)["terms"]) == 2


def test_cone_queries(capsys):
    code, out, _ = run(capsys, "cone-contains", "--cone", "[[1,0],[1,1]]", "--point", "2,1")
    assert code == 0 and json.loads(out) == {"contains": True}
    code, out, _ = run(capsys, "dual-contains", "--cone", '{"generators": [[1,0],[-1,0],[0,1]]}', "--point", "1,0")
    assert code == 0 and json.loads(out) == {"contains": False}


def test_cone_conv_and_laplace(tmp_path, capsys):
    from convalg import ConvexCone, GridFunction

    f = GridFunction.sample(lambda x: (x <= 1) * 1.0, 1, 0.25, 4.0, cone=ConvexCone.orthant(1))
    path = tmp_path / "f.json"
    path.write_text(dumps(f.to_json()))
    code, out, _ = run(capsys, "cone-conv", str(path), str(path))
    assert code == 0
    tent = GridFunction.from_json(json.loads(out))
    assert tent.values[4] == pytest.approx(1.25)
    code, out, _ = run(capsys, "laplace", "--zeta=-1,0", "--h", "0.001", "--extent", "20")
    assert code == 0 and abs(json.loads(out)["value"]["re"] - 0.5) <= 0.001
    code, out, _ = run(capsys, "laplace", str(path), "--zeta=0,0")
    assert code == 0 and json.loads(out)["value"]["re"] == pytest.approx(1.25)


@pytest.mark.parametrize("name", ["poly", "wiener", "inverse", "laplace"])
def test_demos_pass(capsys, name):
    code, out, _ = run(capsys, "demo", name)
    obj = json.loads(out)
    assert code == 0 and obj["pass"] is True and obj["demo"] == name


def test_demo_laplace_value(capsys):
    _, out, _ = run(capsys, "demo", "laplace")
    obj = json.loads(out)
    assert abs(obj["value"]["re"] - 0.5) <= obj["tolerance"]


@pytest.mark.parametrize(
    "argv",
    [
        ["conv", "{not json", "{}"],
        ["conv", "/nonexistent/file.json", "{}"],
        ["eval", '{"monoid": {"monoid": "nat"}, "terms": []}'],
        ["norm", '{"monoid": {"monoid": "set"}, "terms": []}'],
        ["total-conv", "ones", "bogus", "--at", "1"],
        ["cone-contains", "--cone", "[[1,0],[0,1]]", "--point", "x,y"],
        ["frobnicate"],
        ["demo", "nope"],
    ],
)
def test_parse_failures_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert json.loads(err)["code"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["conv", fn_json(delta(NAT, 1)), fn_json(delta(INT, 1))],
        ["eval", "--char", "z=2", dumps(geometric(NAT, 0.5, 5).to_json())],
        ["total-conv", "ones", "ones", "--monoid", "int", "--at", "1"],
        ["cone-contains", "--cone", "[[1,0],[2,0]]", "--point", "1,1"],
        ["cone-contains", "--cone", "[[1,0],[0,1]]", "--point", "1,1,1"],
        ["laplace", "--zeta=1,0"],
    ],
)
def test_precondition_failures_exit_3(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 3 and out == ""
    assert json.loads(err)["error"] == "precondition"


def test_overflow_exit_4(capsys):
    big = dumps({"monoid": {"monoid": "nat", "dim": 1}, "terms": [{"elem": [2**62], "re": 1, "im": 0}]})
    code, _, err = run(capsys, "conv", big, big)
    assert code == 4 and json.loads(err)["code"] == 4
    huge = dumps({"monoid": {"monoid": "nat", "dim": 1}, "terms": [{"elem": [0], "re": 1e200, "im": 0}]})
    code, _, _ = run(capsys, "conv", huge, huge)
    assert code == 4


def test_output_flag(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "-o", str(target), "demo", "poly")
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["pass"]


def test_seventeen_digit_floats():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(1.0) == "1.0"
    assert float(format_float(2 / 3)) == 2 / 3


def test_round_trip_is_canonical_and_idempotent(rng):
    for m in (NAT, INT, NAT2):
        for _ in range(20):
            f = random_function(rng, m)
            # shuffle term order on input; output must still be sorted
            obj = f.to_json()
            obj["terms"] = obj["terms"][::-1]
            once = dumps(FiniteSupportFunction.from_json(json.loads(json.dumps(obj))).to_json())
            twice = dumps(FiniteSupportFunction.from_json(json.loads(once)).to_json())
            assert once == twice == fn_json(f)


def test_subprocess_is_deterministic(tmp_path):
    args = [sys.executable, "-m", "convalg", "demo", "wiener"]
    first = subprocess.run(args, capture_output=True, check=True)
    second = subprocess.run(args, capture_output=True, check=True)
    assert first.stdout == second.stdout and first.stdout

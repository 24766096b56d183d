import json
import os
import subprocess
from fractions import Fraction
from itertools import product

import pytest

import pfrkit


def brute_profile(a):
    out = {}
    for x, y in product(a.elements, repeat=2):
        out[x ^ y] = out.get(x ^ y, 0) + 1
    return out


def test_three_point_set():
    a = pfrkit.F2Set.from_binary(["00", "01", "10"])
    assert pfrkit.sumset(a).to_binary() == ["00", "01", "10", "11"]
    assert pfrkit.doubling(a) == Fraction(4, 3)
    assert pfrkit.profile(a) == {0: 3, 1: 2, 2: 2, 3: 2}
    m = pfrkit.moments(a)
    assert m["expectation_z"] == Fraction(49, 27)
    assert m["expectation_y2"] == Fraction(11, 3)
    assert pfrkit.bijection_check(a, 0, 1)["status"] == "passed"


def test_profile_matches_brute_force():
    a = pfrkit.generate("random", 8, m=40, seed=3)
    assert pfrkit.profile(a) == brute_profile(a)
    assert pfrkit.profile(a, "wht") == brute_profile(a)
    assert pfrkit.expectation_z(a) == pfrkit.expectation_z(a, "fiber-pairs")


def test_text_round_trip():
    a = pfrkit.generate("subspace-plus-points", 9, d=5, k=3, seed=1)
    assert pfrkit.F2Set.from_text(a.to_text()) == a
    with pytest.raises(pfrkit.ParseError):
        pfrkit.F2Set.from_text("3\n101\n11\n")


def test_generators():
    v = pfrkit.generate("subspace", 6, d=3)
    assert len(v) == 8 and pfrkit.doubling(v) == 1
    assert pfrkit.span_size(pfrkit.generate("weight-one-prefix", 5, t=5)) == 32
    with pytest.raises(pfrkit.OutOfRange):
        pfrkit.generate("random", 8, m=10)


def test_extraction():
    a = pfrkit.generate("dense-subspace-sample", 10, d=8, density="3/4", seed=2)
    u = pfrkit.extract_unstructured(a, 2)
    assert u["status"] == "ok"
    assert u["span_size"] <= u["bound"]
    v = pfrkit.generate("subspace", 6, d=4)
    s = pfrkit.extract_structured(v, 1, 1, a_star=v.elements[5])
    assert s["status"] == "ok"
    assert s["span_size"] == 16


def test_verify():
    code, report = pfrkit.verify(pfrkit.F2Set.from_binary(["00", "01", "10"]))
    assert code == 0
    assert all(c["status"] != "failed" for c in report["checks"])


@pytest.mark.skipif("PFRKIT_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_report_matches_schema(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    with open(os.environ["PFRKIT_SCHEMA"]) as f:
        schema = json.load(f)
    path = tmp_path / "a.txt"
    path.write_text(pfrkit.generate("subspace-plus-points", 8, d=5, k=2, seed=4).to_text())
    cli = os.environ["PFRKIT_CLI"]
    for args in (["analyze"], ["verify", "--eps", "2"], ["extract", "unstructured", "--L", "2"]):
        run = subprocess.run([cli, *args, "--input", str(path)], capture_output=True, text=True)
        report = json.loads(run.stdout)
        jsonschema.validate(report, schema)
        assert report["exit_code"] == run.returncode

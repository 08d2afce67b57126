import json
import subprocess
import sys

import pytest

from laxcat.collage import grothendieck
from laxcat.fincat import standard_category
from laxcat.jsonio import (category_to_json, chainmap_to_json,
                           complex_to_json, diagram_to_json, dumps_canonical,
                           profunctor_to_json)
from laxcat.k0chain import build_chain_map, build_complex
from laxcat.profunctor import build_profunctor
from laxcat.rand import rand_diagram, rand_profunctor, rng_from_seed


def run(*argv, cwd=None):
    return subprocess.run([sys.executable, "-m", "laxcat", *argv],
                          capture_output=True, text=True, cwd=cwd)


@pytest.fixture(scope="module")
def ws(tmp_path_factory):
    root = tmp_path_factory.mktemp("ws")

    def put(name, doc):
        (root / f"{name}.json").write_text(dumps_canonical(doc))

    I = standard_category("interval")
    pt = standard_category("discrete", 1)
    put("interval", category_to_json(I))
    put("m", profunctor_to_json(build_profunctor(
        pt, I, {("0", "0"): ["m0"], ("1", "0"): ["m1"]},
        {"u": {"m0": "m1"}}, {})))
    put("n", profunctor_to_json(build_profunctor(
        I, pt, {("0", "0"): ["n0"], ("0", "1"): ["n1"]},
        {}, {"u": {"n1": "n0"}})))

    rng = rng_from_seed(11)
    X = rand_diagram(rng, shape_kind="interval", max_fiber_objects=2)
    G = grothendieck(X)
    put("x", diagram_to_json(X))
    put("bn", profunctor_to_json(
        rand_profunctor(rng, G.total, standard_category("discrete", 2), 4)))
    put("bm", profunctor_to_json(
        rand_profunctor(rng, standard_category("discrete", 2), G.total, 4)))

    Z = build_complex({0: 1}, {})
    put("z", complex_to_json(Z))
    put("times2", chainmap_to_json(build_chain_map(Z, Z, {0: [[2]]})))
    put("tower", {"complexes": ["z", "z"],
                  "maps": [{"matrices": {"0": [[2]]}}]})
    put("mat", {"matrix": [[2, 4], [6, 8]]})
    (root / "garbage.json").write_text("{not json")
    return root


def test_compose_deterministic(ws):
    a = run("--workspace", str(ws), "compose", "n", "m")
    b = run("--workspace", str(ws), "compose", "n", "m")
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
    doc = json.loads(a.stdout)
    # the documented collapse: one glued element where the count product has two
    assert sum(len(v) for v in doc["elements"].values()) == 1


def test_blockmul_matches_compose(ws):
    block = run("--workspace", str(ws), "blockmul", "bn", "bm",
                "--middle", "x")
    plain = run("--workspace", str(ws), "compose", "bn", "bm")
    assert block.returncode == 0, block.stderr
    assert plain.returncode == 0, plain.stderr
    assert block.stdout == plain.stdout


def test_collage_and_grothendieck(ws):
    c = run("--workspace", str(ws), "collage", "m")
    assert c.returncode == 0
    assert json.loads(c.stdout)["origin"]["kind"] == "profunctor"
    g = run("--workspace", str(ws), "grothendieck", "x")
    assert g.returncode == 0
    assert json.loads(g.stdout)["origin"]["kind"] == "diagram"


def test_cone_homology_quasi_iso(ws, tmp_path):
    c = run("--workspace", str(ws), "cone", "times2")
    assert c.returncode == 0
    doc = json.loads(c.stdout)
    assert set(doc) == {"complex", "inclusion", "projection"}

    # cone output feeds back in through a path outside the workspace
    cone_file = tmp_path / "cone_cx.json"
    cone_file.write_text(dumps_canonical(doc["complex"]))
    h = run("--workspace", str(ws), "homology", str(cone_file))
    assert h.returncode == 0
    assert json.loads(h.stdout) == {"0": {"free": 0, "torsion": [2]}}

    q = run("--workspace", str(ws), "quasi-iso", "times2")
    assert q.returncode == 0
    assert json.loads(q.stdout) == {"quasi_iso": False, "cone_acyclic": False}


def test_tot_and_hom_complex(ws):
    t = run("--workspace", str(ws), "tot", "tower")
    assert t.returncode == 0
    assert json.loads(t.stdout)["ranks"] == {"-1": 1, "0": 1}
    h = run("--workspace", str(ws), "hom-complex", "z", "z")
    assert h.returncode == 0
    assert json.loads(h.stdout)["ranks"] == {"0": 1}


def test_snf_output(ws):
    r = run("--workspace", str(ws), "snf", "mat")
    assert r.returncode == 0
    assert json.loads(r.stdout)["diagonal"] == [2, 4]


def test_out_writes_file(ws, tmp_path):
    target = tmp_path / "result.json"
    r = run("--workspace", str(ws), "--out", str(target), "snf", "mat")
    assert r.returncode == 0
    assert r.stdout == ""
    assert json.loads(target.read_text())["diagonal"] == [2, 4]


def test_check_monoid_laws_randomized(ws):
    r = run("check", "monoid-laws", "--randomized", "--count", "3",
            "--seed", "4")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["ok"] is True and doc["trials"] == 3


def test_check_failure_exits_1(ws):
    r = run("--workspace", str(ws), "check", "multiplicativity", "n", "m")
    assert r.returncode == 1
    doc = json.loads(r.stdout)
    assert doc["ok"] is False
    assert any("counts differ" in f for f in doc["failures"])
    # the one-sided comparison still holds on the same pair
    lax = run("--workspace", str(ws), "check", "lax-multiplicativity",
              "n", "m")
    assert lax.returncode == 0


def test_invalid_inputs_exit_2(ws):
    assert run("--workspace", str(ws), "homology", "garbage").returncode == 2
    assert run("--workspace", str(ws), "homology", "missing").returncode == 2
    assert run("homology", "missing").returncode == 2  # no workspace at all
    assert run("--workspace", str(ws), "compose", "n", "z").returncode == 2
    assert run("frobnicate").returncode == 2
    r = run("--workspace", str(ws), "check", "cocontinuity", "n")
    assert r.returncode == 2


def test_cap_breach_exits_3(ws, tmp_path):
    r = run("--workspace", str(ws), "--max-objects", "1", "collage", "m")
    assert r.returncode == 3
    assert "cap" in r.stderr
    big = tmp_path / "big.json"
    big.write_text(dumps_canonical(
        {"window": [0, 0], "ranks": {"0": 64}, "differentials": {}}))
    r = run("homology", str(big))
    assert r.returncode == 3

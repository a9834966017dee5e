import json

import pytest
from conftest import rngs
from hypothesis import given

from hbjacobi.atkont import DATA_DIR
from hbjacobi.catab import eta, identity
from hbjacobi.cli import Config, main, parse_rendered, render_text
from hbjacobi.corpus import random_diagram
from hbjacobi.diagcore import eq_mod_relations
from hbjacobi.zb import z_gen


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_z_eta(capsys):
    rc, out, _ = run(capsys, "z", "eta")
    assert rc == 0
    assert parse_rendered(out) == eta()
    assert "homotopy: x1 -> 1" in out
    assert "grouplike: true" in out


def test_z_psi_row(capsys):
    rc, out, _ = run(capsys, "z", "psi")
    assert rc == 0
    assert eq_mod_relations(parse_rendered(out), z_gen("psi")).equal
    assert "homotopy: x1 -> x2; x2 -> x1" in out


def test_z_errors(capsys):
    rc, _, err = run(capsys, "z", "mu . (S")
    assert rc == 2 and "column 8" in err
    rc, _, err = run(capsys, "z", "mu . mu")
    assert rc == 2 and "cannot compose mu after mu" in err


@pytest.mark.parametrize("argv", [("check", "nothing"), ("check", "hopf", "--window", "3"),
                                  ("z", "eta", "--degree", "-1"), ("zcube", "/nonexistent.slices"),
                                  ("check", "hopf", "--format", "xml")])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_config_validation():
    with pytest.raises(ValueError):
        Config(N=-1)
    with pytest.raises(ValueError):
        Config(window=2)


@pytest.mark.parametrize("suite", ["hopf", "quasihopf", "transmute"])
def test_check_passes(capsys, suite):
    rc, out, _ = run(capsys, "check", suite)
    assert rc == 0
    assert out.splitlines()[-1].startswith(f"suite {suite}: pass")
    assert "FAIL" not in out


def test_check_failure_exit_code(capsys, tmp_path):
    trivial = tmp_path / "one.txt"
    trivial.write_text("0 1 1\n")
    rc, out, _ = run(capsys, "check", "associator", "--associator", str(trivial))
    assert rc == 1
    assert "FAIL" in out


def test_check_all_is_deterministic(capsys):
    rc1, a, _ = run(capsys, "check", "all", "--seed", "7", "--format", "json")
    rc2, b, _ = run(capsys, "check", "all", "--seed", "7", "--format", "json")
    assert rc1 == rc2 == 0
    assert a == b
    report = json.loads(a)
    assert report["passed"] and report["seed"] == 7
    assert all(c["passed"] for c in report["checks"])


def test_zcube_cross_route(capsys):
    rc, out, _ = run(capsys, "zcube", str(DATA_DIR / "id1.slices"))
    assert rc == 0 and parse_rendered(out) == identity(1)
    for name in ("psi", "mu"):
        _, cube, _ = run(capsys, "zcube", str(DATA_DIR / f"{name}.slices"))
        _, direct, _ = run(capsys, "z", name)
        assert eq_mod_relations(parse_rendered(cube), parse_rendered(direct)).equal


def test_zcube_bad_file(capsys, tmp_path):
    bad = tmp_path / "bad.slices"
    bad.write_text("v=(..) words=+,+\nleft= piece=Foo right=\n")
    rc, _, err = run(capsys, "zcube", str(bad))
    assert rc == 2 and "line 2" in err


def test_json_output(capsys):
    rc, out, _ = run(capsys, "z", "S", "--format", "json")
    obj = json.loads(out)
    assert rc == 0 and obj["m"] == 1 and obj["grouplike"] is True
    assert obj["terms"][0]["coeff"] == "1"


@given(rngs)
def test_render_parse_round_trip(rng):
    v = random_diagram(rng, rng.randint(0, 2), rng.randint(1, 3))
    text = render_text(v)
    assert parse_rendered(text) == v
    assert render_text(parse_rendered(text)) == text

import pathlib

import pytest

import refsys

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def sig(name):
    return str(FIXTURES / f"{name}.json")


def test_squaring_triad():
    assert refsys.check(sig("squaring"), "Snz =[sq]=> Bgez") == "derivable"
    assert refsys.check(sig("squaring"), "Sgez =[sq]=> Bnz") == "underivable"
    assert refsys.check(sig("squaring"), "Snz =[sq]=> Bnd") == "ill-formed"


def test_exit_codes():
    code, out, _ = refsys.run(["check", sig("squaring"), "Snz <= Snz"])
    assert code == refsys.EXIT["ok"]
    assert out == "judgment: Snz <= Snz\nverdict: derivable\n"
    code, _, err = refsys.run(["check", sig("squaring"), "what"])
    assert code == refsys.EXIT["invalid"]
    assert "parse" in err


def test_queries():
    code, rep = refsys.query("star", sig("z4"), "S1", "S2")
    assert code == 0
    assert rep["elements"] == ["3"]
    code, rep = refsys.query("pull", sig("squaring"), "sq", "Bnz")
    assert rep["elements"] == ["-3", "-2", "-1", "1", "2", "3"]
    code, rep = refsys.query("hoare", sig("hoare"), "{Zero} inc;dbl {High}")
    assert rep["holds"] is True
    assert rep["sp_chain"] == ["{s0}", "{s1}", "{s2}"]


def test_laws_and_counterexample():
    code, rep = refsys.query("laws", sig("corrupted"), "sep")
    assert code == refsys.EXIT["no"]
    sections = [s for r in rep["reports"] for s in r["sections"]]
    bad = [s for s in sections if not s["ok"]]
    assert bad and " but " in bad[0]["counterexamples"][0]


def test_suites_and_helpers():
    assert "all" in refsys.suite_names()
    reports = refsys.run_suite("kernel", max_set=2)
    assert reports[0]["ok"] and reports[0]["instances"] > 0
    with pytest.raises(refsys.RefsysError):
        refsys.run_suite("bogus")
    assert refsys.eval_int_expr("x * x - 1", 3) == 8
    assert refsys.normalize_judgment(" S<=[ f ;g ]T ") == "S =[f;g]=> T"

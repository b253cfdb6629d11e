import json
import subprocess
import sys

import pytest

from invcensus.cli import main


@pytest.fixture
def run(capsys, tmp_path):
    """Call ``main`` in-process with a private cache; returns (code, out, err)."""

    def _run(*argv, cache=True):
        extra = ["--cache-dir", str(tmp_path / "cache")] if cache else ["--no-cache"]
        code = main([*argv, *extra])
        out, err = capsys.readouterr()
        return code, out, err

    return _run


def test_spectrum_json(run):
    code, out, _ = run("spectrum", "alt:7", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["spectrum"]["2"] == 105 and d["order"] == 2520
    assert d["primes"] == [2, 3, 5, 7]
    assert out.endswith("}\n") and not out.endswith("\n\n")


def test_spectrum_table_cyclic2(run):
    code, out, _ = run("spectrum", "cyclic:2")
    lines = [ln.split() for ln in out.splitlines()]
    assert code == 0
    assert ["1", "1"] in lines and ["2", "1"] in lines


def test_spectrum_csv(run):
    code, out, _ = run("spectrum", "alt:5", "--format", "csv")
    assert code == 0
    assert out == "k,count\n1,1\n2,15\n3,20\n5,24\n"


def test_involutions(run):
    _, out, _ = run("involutions", "psp4:3", "--format", "json")
    d = json.loads(out)
    assert [(c["classSize"], c["centralizerOrder"]) for c in d["classes"]] == [(45, 576), (270, 96)]
    assert d["totalInvolutions"] == 315 and d["k2"] == 2
    _, out, _ = run("involutions", "psp4:3")
    assert "I_2 = 25920/576 + 25920/96 = 315" in out
    _, out, _ = run("involutions", "psl3:4", "--format", "json")
    assert json.loads(out)["classes"] == [{"classSize": 315, "centralizerOrder": 64}]
    _, out, _ = run("involutions", "m11", "--format", "csv")
    assert out == "classSize,centralizerOrder\n165,48\n"


def test_herzog_verify(run):
    code, out, _ = run("herzog", "verify", "--format", "json")
    assert code == 0
    assert json.loads(out) == {
        "groupA": "psp4:3",
        "groupB": "psl3:4",
        "i2A": 315,
        "i2B": 315,
        "orderA": 25920,
        "orderB": 20160,
        "isCounterexample": True,
    }
    _, out, _ = run("herzog", "verify")
    assert "counterexample: true" in out


def test_herzog_classify(run):
    _, out, _ = run("herzog", "classify", "1", "--format", "json")
    assert [r["family"] for r in json.loads(out)] == ["CYCLIC2"]
    _, out, _ = run("herzog", "classify", "21", "--format", "json")
    assert [(r["family"], r["parameter"], r["epsilon"]) for r in json.loads(out)] == [("PSL2", 7, -1)]
    _, out, _ = run("herzog", "classify", "21", "--format", "csv")
    assert out.splitlines()[0] == "family,parameter,predictedI,epsilon,condition"
    _, out, _ = run("herzog", "classify", "9")
    assert "no row" in out


def test_exit_codes(run, capsys):
    assert run("spectrum", "psl2:6")[0] == 2
    assert run("spectrum", "alt:99")[0] == 2
    assert run("herzog", "classify")[0] == 2
    code, _, err = run("spectrum", "alt:8", "--cap", "1000")
    assert code == 3 and "1000" in err
    code, _, err = run("herzog", "classify", "315")
    assert code == 4 and err
    assert run("scan", "zar", "--max-order", "100", "--cap", "50")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_scan_small(run):
    code, out, _ = run("scan", "zar", "--max-order", "1000", "--format", "json", "--workers", "1")
    d = json.loads(out)
    assert code == 0 and len(d) == 9 and all(r["violations"] == [] and not r["refutes"] for r in d)
    _, out, _ = run("scan", "conj15", "--max-order", "60", "--format", "json", "--workers", "1")
    assert out == "[]\n"
    _, out, _ = run("scan", "collisions", "--max-order", "26000", "--format", "csv", "--workers", "1")
    lines = out.splitlines()
    assert lines[0] == "idA,idB,i2,orderA,orderB,sameOrder,oddPrimeMatches"
    assert "psl3:4,psp4:3,315,20160,25920,false," in lines
    assert "alt:8,psl3:4,315,20160,20160,true,7" in lines
    _, out, _ = run("scan", "collisions", "--max-order", "26000", "--workers", "1")
    assert "REFUTES" in out


def test_warm_cache_is_byte_identical(run, tmp_path):
    cold = run("involutions", "psu3:4", "--format", "json")
    assert (tmp_path / "cache" / "psu3:4.spectrum.json").exists()
    warm = run("involutions", "psu3:4", "--format", "json")
    uncached = run("involutions", "psu3:4", "--format", "json", cache=False)
    assert cold == warm == uncached


def test_corrupt_cache_is_regenerated(run, tmp_path):
    first = run("spectrum", "psl2:7", "--format", "json")
    path = tmp_path / "cache" / "psl2:7.spectrum.json"
    d = json.loads(path.read_text())
    d["order"] = 169
    d["spectrum"][0] = [1, 2]
    path.write_text(json.dumps(d))
    again = run("spectrum", "psl2:7", "--format", "json")
    assert again[:2] == first[:2]
    assert json.loads(path.read_text())["order"] == 168


def test_cache_env_var(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("INVCENSUS_CACHE_DIR", str(tmp_path / "env"))
    assert main(["spectrum", "alt:5"]) == 0
    assert (tmp_path / "env" / "alt:5.spectrum.json").exists()
    # the flag wins over the environment
    assert main(["spectrum", "alt:5", "--cache-dir", str(tmp_path / "flag")]) == 0
    assert (tmp_path / "flag" / "alt:5.spectrum.json").exists()
    assert main(["cache", "clear"]) == 0
    assert not (tmp_path / "env" / "alt:5.spectrum.json").exists()
    capsys.readouterr()


def test_cache_fill(run, tmp_path):
    code, out, _ = run("cache", "fill", "--max-order", "1000", "--workers", "1")
    assert code == 0 and "9 profile" in out
    assert len(list((tmp_path / "cache").glob("*.spectrum.json"))) == 9


def test_module_entry_point(tmp_path):
    r = subprocess.run(
        [sys.executable, "-m", "invcensus", "spectrum", "alt:5", "--format", "csv", "--no-cache"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert r.stdout == "k,count\n1,1\n2,15\n3,20\n5,24\n"

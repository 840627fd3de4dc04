import io
import json
import subprocess
import sys


from dwork_padic.cache import GammaStore
from dwork_padic.cli import run
from dwork_padic.padic import gamma_sweep


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_count_brute_lambda0():
    code, out = call("count", "--method", "brute", "--p", "5", "--r", "1", "--d", "3",
                     "--lambda", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["N_affine"] == 25 and doc["projective"] == 6


def test_count_theorem_and_conjecture():
    code, out = call("count", "--method", "theorem", "--p", "5", "--d", "3", "--lambda", "2",
                     "--precision", "3")
    assert code == 0 and json.loads(out)["theorem_residue"] == 9
    code, out = call("count", "--method", "conjecture", "--p", "5", "--d", "3", "--lambda", "0",
                     "--precision", "3")
    assert json.loads(out)["conjecture_residue"] == 100


def test_verify_theorem_sweep():
    code, out = call("verify", "theorem", "--p", "5", "--r", "1", "--d", "3", "--lambda", "all")
    docs = json.loads(out)
    assert code == 0
    assert len(docs) == 5 and all(d["match_theorem"] for d in docs)


def test_hypothesis_violation_exit_2(capsys):
    code, out = call("verify", "theorem", "--p", "7", "--r", "1", "--d", "7")
    assert code == 2 and out == ""
    err = capsys.readouterr().err
    assert "q ≢ 1 (mod d)" in err and "p ≠ d" in err
    code, _ = call("verify", "theorem", "--p", "7", "--d", "3", "--lambda", "1")
    assert code == 2


def test_usage_errors():
    assert call("count", "--p", "5")[0] == 2
    assert call("count", "--p", "4", "--d", "3")[0] == 2
    assert call("count", "--p", "5", "--d", "3", "--lambda", "9")[0] == 2
    assert call("count", "--p", "5", "--d", "3", "--lambda", "x")[0] == 2
    assert call("count", "--p", "7", "--d", "5", "--budget", "10")[0] == 2
    assert call("gfun", "--p", "5", "--a", "1/5", "--b", "0", "--t", "1")[0] == 2


def test_mismatch_exit_1(monkeypatch):
    from dwork_padic import dwork

    real = dwork.dwork_G

    def off_by_one(inst, M, slack=None):
        return real(inst, M, slack) + 1

    monkeypatch.setattr(dwork, "dwork_G", off_by_one)
    code, out = call("verify", "theorem", "--p", "5", "--d", "3", "--lambda", "2")
    assert code == 1 and json.loads(out)["match_theorem"] is False


def test_gfun():
    code, out = call("gfun", "--p", "5", "--a", "1/3,2/3", "--b", "0,0", "--t", "3",
                     "--precision", "4")
    doc = json.loads(out)
    assert code == 0
    assert doc["spec"] == {"a": ["1/3", "2/3"], "b": ["0", "0"], "t": 3, "p": 5, "r": 1}
    assert doc["residue"] == [(6 - 9) % 625]


def test_formats():
    code, out = call("verify", "theorem", "--p", "5", "--d", "3", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 6 and "match_theorem" in lines[0]
    code, out = call("count", "--p", "5", "--d", "3", "--lambda", "2", "--format", "text")
    assert "projective=9" in out


def test_verify_identities_and_corollary():
    code, out = call("verify", "identities", "--p", "5", "--d", "3")
    docs = json.loads(out)
    assert code == 0 and all(d["passed"] for d in docs)
    assert docs[0]["identity"] == "floor_identity"
    assert docs[-1]["identity"] == "asum_consistency"
    code, out = call("verify", "corollary", "--p", "5")
    docs = json.loads(out)
    assert code == 0 and [d["status"] for d in docs] == ["skipped", "skipped"] + ["checked"] * 3


def test_deterministic_output():
    a = call("verify", "theorem", "--p", "7", "--d", "5", "--lambda", "3")
    b = call("verify", "theorem", "--p", "7", "--d", "5", "--lambda", "3")
    assert a == b


def test_cache_round_trip(tmp_path):
    store = GammaStore(tmp_path)
    vals = gamma_sweep([0, 3, "1/4", "2/3"], 5, 13)
    store.save(5, 13, vals)
    assert store.load(5, 13) == vals
    assert [(p, M) for p, M, _ in store.entries()] == [(5, 13)]


def test_cache_cold_and_warm_runs_identical(tmp_path):
    args = ["verify", "corollary", "--p", "5", "--precision", "3", "--cache-dir", str(tmp_path)]
    cold = call(*args)
    assert list(tmp_path.glob("gamma_*.json"))
    warm = call(*args)
    assert cold == warm and cold[0] == 0


def test_corrupt_cache_recomputes(tmp_path, caplog):
    args = ["count", "--method", "theorem", "--p", "5", "--d", "3", "--lambda", "2",
            "--precision", "3", "--cache-dir", str(tmp_path)]
    ref = call(*args)
    path = next(tmp_path.glob("gamma_*.json"))
    doc = json.loads(path.read_text())
    doc["residues"][0] = str(int(doc["residues"][0]) + 1)
    path.write_text(json.dumps(doc))
    with caplog.at_level("WARNING"):
        again = call(*args)
    assert again == ref
    assert "corrupt gamma cache" in caplog.text
    assert GammaStore(tmp_path).load(5, 5)  # rewritten and valid again
    path.write_text("{not json")
    assert call(*args) == ref


def test_cache_command(tmp_path):
    GammaStore(tmp_path).save(5, 2, gamma_sweep([1], 5, 2))
    code, out = call("cache", "list", "--cache-dir", str(tmp_path))
    assert code == 0 and json.loads(out)["M"] == 2
    code, out = call("cache", "clear", "--cache-dir", str(tmp_path))
    assert json.loads(out) == {"removed": 1}


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dwork_padic", "count", "--p", "5", "--d", "3",
                          "--lambda", "0"], capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["projective"] == 6

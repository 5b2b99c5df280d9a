import json

import pytest

from qha.cli import EXIT_CHECK, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main
from qha.gkm import Generator, GkmDatum
from qha.quiver import Quiver, kronecker, linear_quiver, loop_quiver, standard_weighting, triple


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("QHA_CACHE", str(tmp_path / "cache.jsonl"))
    monkeypatch.delenv("QHA_THREADS", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_quiver(tmp_path, name, Q):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(Q.to_json()))
    return str(path)


def summary(out, key):
    for line in out.splitlines():
        if line.startswith(f"{key}: "):
            return line[len(key) + 2:]
    raise AssertionError(f"no {key!r} line in:\n{out}")


def test_roots(tmp_path, capsys):
    path = write_quiver(tmp_path, "jordan", loop_quiver(1))
    code, out, _ = run(capsys, "roots", "--quiver", path, "--bound", "4", "--format", "csv")
    rows = out.strip().splitlines()
    assert code == EXIT_OK and rows[0] == "d,class,primitive"
    assert rows[1:] == ["1,isotropic,true", "2,isotropic,false", "3,isotropic,false", "4,isotropic,false"]
    code, out, _ = run(capsys, "roots", "--quiver", "A2", "--bound", "2,2", "--format", "json")
    doc = json.loads(out)
    assert [r[1] for r in doc["rows"]] == ["real", "real"]


def test_roots_empty_file(tmp_path, capsys):
    path = tmp_path / "empty.json"
    path.write_text("")
    code, _, err = run(capsys, "roots", "--quiver", str(path), "--bound", "1")
    assert code == EXIT_USAGE and "qha: error" in err


def test_missing_quiver_file(capsys):
    code, _, err = run(capsys, "roots", "--quiver", "/nonexistent/q.json", "--bound", "1")
    assert code == EXIT_USAGE


def test_bad_vector(capsys):
    code, _, err = run(capsys, "roots", "--quiver", "A2", "--bound", "2,x")
    assert code == EXIT_USAGE and "comma-separated" in err
    code, _, _ = run(capsys, "roots", "--quiver", "A2", "--bound", "2")
    assert code == EXIT_USAGE


def test_kac(tmp_path, capsys):
    code, out, _ = run(capsys, "kac", "--quiver", write_quiver(tmp_path, "j", loop_quiver(1)), "--dim", "1",
                       "--primes", "2,3,5")
    assert code == EXIT_OK and summary(out, "polynomial") == "q"
    code, out, _ = run(capsys, "kac", "--quiver", "kronecker", "--dim", "1,1")
    assert summary(out, "polynomial") == "q + 1"
    code, out, _ = run(capsys, "kac", "--quiver", write_quiver(tmp_path, "k3", kronecker(3)), "--dim", "1,1",
                       "--format", "json")
    doc = json.loads(out)
    assert doc["summary"]["polynomial"] == "q^2 + q + 1"
    assert [r[0] for r in doc["rows"]] == [2, 3, 5, 7]


def test_kac_resource_limit(capsys):
    code, _, err = run(capsys, "kac", "--quiver", "loop2", "--dim", "4")
    assert code == EXIT_RESOURCE and "resource limit" in err and "d=(4,)" in err


def test_kac_interpolation_failure_is_check_failure(capsys):
    # too few primes for the degree bound of q^2 + q + 1
    code, _, err = run(capsys, "kac", "--quiver", "kronecker3", "--dim", "1,1", "--primes", "2,3")
    assert code == EXIT_CHECK


def test_kac_bad_prime(capsys):
    code, _, _ = run(capsys, "kac", "--quiver", "A2", "--dim", "1,1", "--primes", "2,4,5")
    assert code == EXIT_USAGE


def test_kac_output_is_deterministic_and_cache_coherent(tmp_path, capsys):
    args = ("kac", "--quiver", "kronecker", "--dim", "2,2", "--cache", str(tmp_path / "c.jsonl"))
    cold = run(capsys, *args)
    warm = run(capsys, *args)
    uncached = run(capsys, "kac", "--quiver", "kronecker", "--dim", "2,2", "--no-cache", "--threads", "3")
    assert cold == warm == uncached


def test_shuffle_mul(tmp_path, capsys):
    path = write_quiver(tmp_path, "a1", Quiver(1, ()))
    code, out, _ = run(capsys, "shuffle", "mul", "1", "1", "--quiver", path, "--dim", "1", "--dim", "1")
    assert code == EXIT_OK and summary(out, "result") == "0"
    code, out, _ = run(capsys, "shuffle", "mul", "1", "x[1,1]", "--quiver", path, "--dim", "1/1",
                       "--method", "alternant")
    assert summary(out, "result") == "1"


def test_shuffle_comul(tmp_path, capsys):
    path = write_quiver(tmp_path, "a1", Quiver(1, ()))
    code, out, _ = run(capsys, "shuffle", "comul", "x[1,1]+x[1,2]", "--quiver", path, "--split", "1,1")
    assert code == EXIT_OK and summary(out, "result") == "x[2,1,1]^2 - x[1,1,1]^2"


def test_shuffle_expand_and_residue(tmp_path, capsys):
    Qt = triple(linear_quiver(1))
    path = write_quiver(tmp_path, "t1", Qt.with_weighting(standard_weighting(Qt)))
    base = ("--quiver", path, "--var", "x[2,1,1]", "--den", "x[2,1,1] - x[1,1,1] - h")
    code, out, _ = run(capsys, "shuffle", "residue", "x[2,1,1] - x[1,1,1] + h", *base, "--order", "1")
    assert code == EXIT_OK and summary(out, "result") == "2*t[2] + 2*t[1]"
    code, out, _ = run(capsys, "shuffle", "expand", "x[2,1,1] - x[1,1,1] + h", *base, "--order", "2")
    assert summary(out, "result").startswith("(1) + (2*t[2] + 2*t[1])*x[2,1,1]^(-1)")
    code, _, err = run(capsys, "shuffle", "residue", "x[2,1,1] - x[1,1,1] + h", *base, "--order", "0")
    assert code == EXIT_USAGE and "truncation order" in err


def test_shuffle_residue_of_comul_needs_order(tmp_path, capsys):
    path = write_quiver(tmp_path, "a1", Quiver(1, ()))
    code, _, err = run(capsys, "shuffle", "residue", "x[1,1]+x[1,2]", "--quiver", path, "--split", "1,1",
                       "--var", "x[2,1,1]", "--order", "0")
    assert code == EXIT_USAGE


def test_shuffle_errors(tmp_path, capsys):
    path = write_quiver(tmp_path, "a1", Quiver(1, ()))
    code, _, err = run(capsys, "shuffle", "mul", "x[1,1] +", "1", "--quiver", path, "--dim", "1/1")
    assert code == EXIT_USAGE and "position 9" in err
    code, _, err = run(capsys, "shuffle", "comul", "x[1,1]", "--quiver", path, "--split", "1,1")
    assert code == EXIT_USAGE and "symmetric" in err
    code, _, _ = run(capsys, "shuffle", "mul", "1", "1", "--quiver", "A2", "--dim", "1,0/0,1")
    assert code == EXIT_USAGE
    code, out, _ = run(capsys, "shuffle", "mul", "1", "1", "--quiver", "A2", "--dim", "1,0/0,1",
                       "--allow-asymmetric")
    assert code == EXIT_OK and summary(out, "result") == "x[2,1] - x[1,1]"


def test_gkm_lie_dims(tmp_path, capsys):
    datum = GkmDatum.kac_moody(linear_quiver(2))
    path = tmp_path / "sl3.json"
    path.write_text(json.dumps(datum.to_json()))
    code, out, _ = run(capsys, "gkm", "lie-dims", "--quiver", str(path), "--cutoff", "2,2", "--format", "csv")
    assert code == EXIT_OK
    rows = dict((r.rsplit(",", 2)[0].strip('"'), int(r.rsplit(",", 1)[1])) for r in out.strip().splitlines()[1:])
    assert rows == {"0,1": 1, "0,2": 0, "1,0": 1, "1,1": 1, "1,2": 0, "2,0": 0, "2,1": 0, "2,2": 0}


def test_gkm_dims_with_datum(tmp_path, capsys):
    datum = GkmDatum(loop_quiver(1), (Generator((1,)), Generator((2,), 2, 1)))
    path = tmp_path / "j.json"
    path.write_text(json.dumps(datum.to_json()))
    code, out, _ = run(capsys, "gkm", "dims", "--quiver", str(path), "--cutoff", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["rows"] == [["0", 0, 1], ["1", 0, 1], ["2", 0, 1], ["2", 2, 1]]


def test_gkm_root_mult_and_bps(capsys):
    code, out, _ = run(capsys, "gkm", "root-mult", "--quiver", "kronecker", "--dim", "1,1")
    assert code == EXIT_OK and summary(out, "result") == "1"
    code, out, _ = run(capsys, "gkm", "bps-char", "--quiver", "jordan", "--dim", "1")
    assert summary(out, "result") == "q^(-1)"


def test_gkm_pbw_char(capsys):
    code, out, _ = run(capsys, "gkm", "pbw-char", "--quiver", "A2", "--cutoff", "2,2", "--format", "csv")
    rows = dict(r.rsplit(",", 1) for r in out.strip().splitlines()[1:])
    assert code == EXIT_OK
    assert rows['"1,1"'] == "2" and rows['"2,2"'] == "3" and rows['"2,1"'] == "2"


def test_gkm_root_mult_on_loop_quiver(capsys):
    code, _, err = run(capsys, "gkm", "root-mult", "--quiver", "jordan", "--dim", "1")
    assert code == EXIT_USAGE and "loops" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "gkm")
    assert code == EXIT_OK and "fail: 0" in out and "# wall time" in out
    code, out, _ = run(capsys, "verify", "multprop", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["summary"]["fail"] == 0 and "wall_time_s" in doc


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nope"])
    assert exc.value.code == EXIT_USAGE


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("QHA_THREADS", "two")
    code, _, err = run(capsys, "kac", "--quiver", "A2", "--dim", "1,1")
    assert code == EXIT_USAGE and "QHA_THREADS" in err


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "qha", "gkm", "root-mult", "--quiver", "A2", "--dim", "1,1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "result: 1" in res.stdout

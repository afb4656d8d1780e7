import json

import pytest

from qpsi.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestEval:
    def test_theta_zero(self, capsys):
        code, out, _ = run(capsys, "eval", "theta", "--q", "0.5", "--z", "1")
        assert code == 0
        assert out.strip() == "0"

    def test_q_beta(self, capsys):
        code, out, _ = run(capsys, "eval", "q_beta", "--q", "0.5", "--alpha", "2", "--beta", "1")
        assert code == 0
        assert out.startswith("0.666666666666666")

    def test_missing_argument(self, capsys):
        code, _, err = run(capsys, "eval", "theta", "--q", "0.5")
        assert code == 2
        assert "--z" in err

    def test_unknown_target(self, capsys):
        code, _, _ = run(capsys, "eval", "nope", "--q", "0.5")
        assert code == 2

    def test_evaluation_error(self, capsys):
        code, _, err = run(capsys, "eval", "theta", "--q", "1.5", "--z", "1")
        assert code == 3
        assert "DomainError" in err

    def test_series_json(self, capsys):
        code, out, _ = run(capsys, "eval", "askey_I_sum", "--alpha", "0.3", "--beta", "0.4",
                           "--xi", "0.9", "--q", "0.5", "--format", "json")
        assert code == 0
        rec = json.loads(out)
        assert set(rec) == {"target", "value_re", "value_im", "err_estimate", "terms", "converged"}
        assert rec["converged"] is True
        assert abs(rec["value_re"] - 2.0550846341106596) < 1e-11

    def test_complex_arguments(self, capsys):
        code, out, _ = run(capsys, "eval", "product_1psi1", "--a", "2", "--b", "0.5",
                           "--x", "0.3+0.1j", "--q", "0.4")
        assert code == 0
        assert out.strip().endswith("j")

    def test_repeatable_flags(self, capsys):
        code, out, _ = run(capsys, "eval", "da_product", "--n", "1", "--x", "0", "--x", "1",
                           "--s", "2", "--s", "1")
        assert code == 0
        assert float(out) == pytest.approx(0.5, rel=1e-15)

    def test_wrong_count(self, capsys):
        code, _, err = run(capsys, "eval", "j6phi5_product", "--a", "1.2", "--q", "0.5")
        assert code == 2
        assert "4 values" in err

    def test_env_tolerance(self, capsys, monkeypatch):
        args = ("eval", "askey_I_sum", "--alpha", "0.3", "--beta", "0.4", "--xi", "0.9",
                "--q", "0.5", "--format", "json")
        monkeypatch.setenv("QPSI_DEFAULT_TOL", "1e-4")
        _, out, _ = run(capsys, *args)
        loose = json.loads(out)["terms"]
        _, out, _ = run(capsys, *args, "--rel-tol", "1e-12")
        tight = json.loads(out)["terms"]
        monkeypatch.delenv("QPSI_DEFAULT_TOL")
        _, out, _ = run(capsys, *args)
        assert loose < tight == json.loads(out)["terms"]

    def test_bad_env(self, capsys, monkeypatch):
        monkeypatch.setenv("QPSI_DEFAULT_TOL", "tight")
        code, _, _ = run(capsys, "eval", "theta", "--q", "0.5", "--z", "1")
        assert code == 2


class TestVerify:
    def test_unknown_suite(self, capsys):
        code, _, _ = run(capsys, "verify", "--suite", "no-such")
        assert code == 2

    def test_list(self, capsys):
        code, out, _ = run(capsys, "verify", "--list")
        assert code == 0
        for name in ("ramanujan-1psi1", "aomoto", "milne-gustafson", "reductions", "classical"):
            assert name in out
        assert "safe region" in out

    def test_json_report(self, capsys, tmp_path):
        path = tmp_path / "r.json"
        code, _, _ = run(capsys, "verify", "--suite", "bailey-6psi6", "--seed", "42",
                         "--trials", "5", "--report", str(path))
        assert code == 0
        doc = json.loads(path.read_text())
        assert list(doc) == ["suite", "seed", "policy", "results", "summary"]
        assert doc["summary"] == {"total": 5, "passed": 5, "failed": 0, "skipped": 0}
        rec = doc["results"][0]
        assert list(rec) == ["identity", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                             "rel_err", "abs_err", "terms", "wall_ms", "pass"]
        assert rec["wall_ms"] is not None

    def test_csv_report(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "j6phi5", "--seed", "1", "--trials", "3",
                           "--format", "csv", "--no-timing")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("identity,params,lhs_re")
        assert len(lines) == 4

    def test_tolerance_override_fails_records(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "bailey-6psi6", "--trials", "3",
                           "--tol", "1e-300", "--no-timing")
        assert code == 3
        assert json.loads(out)["summary"]["failed"] == 3

    def test_io_failure(self, capsys, tmp_path):
        code, _, _ = run(capsys, "verify", "--suite", "selberg-sixth",
                         "--report", str(tmp_path / "missing" / "r.json"))
        assert code == 4

    def test_deterministic(self, capsys, tmp_path):
        outs = []
        for k in range(2):
            path = tmp_path / f"r{k}.json"
            run(capsys, "verify", "--suite", "reductions", "--seed", "7", "--trials", "3",
                "--no-timing", "--report", str(path))
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]


class TestSweep:
    def test_selberg_q(self, capsys):
        code, out, _ = run(capsys, "sweep", "selberg-q", "--n", "1", "--alpha", "1.5",
                           "--beta", "1.7", "--tau", "0.5", "--qs", "0.5", "0.9")
        assert code == 0
        assert len(out.strip().splitlines()) == 3

    def test_integer_tau(self, capsys):
        code, out, _ = run(capsys, "sweep", "aomoto-integer-tau", "--n", "2", "--m", "1",
                           "--alpha", "1.5", "--tau", "1", "--a", "1", "--b", "14.1",
                           "--xi", "0.9", "--xi", "0.6+0.2j", "--q", "0.5")
        assert code == 0
        rows = dict(line.split("\t") for line in out.strip().splitlines())
        est, direct = complex(rows["estimate"]), complex(rows["atype_sum"])
        assert abs(est - direct) < 1e-8 * abs(direct)

import json

import pytest

from charmax import config
from charmax.experiments import load_table
from charmax.experiments.cli import (
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    UsageError,
    main,
    parse_grid,
    parse_int_list,
)


def run(*argv):
    return main(["-q", *[str(a) for a in argv]])


@pytest.fixture
def table_path(tmp_path):
    path = tmp_path / "q11.tbl"
    assert run("sweep", "--modulus", 11, "--threads", 1, "--out", path) == EXIT_OK
    return path


class TestParsing:
    def test_range(self):
        assert parse_grid("5..15") == [float(x) for x in range(5, 16)]
        assert parse_grid("1..2:0.25") == [1.0, 1.25, 1.5, 1.75, 2.0]

    def test_list(self):
        assert parse_grid("1,1.5, 2") == [1.0, 1.5, 2.0]
        assert parse_int_list("3..5") == [3, 4, 5]

    @pytest.mark.parametrize("text", ["a..b", "5..1", "1..2:0", "1,x"])
    def test_bad_grid(self, text):
        with pytest.raises(UsageError):
            parse_grid(text)

    def test_integers_required(self):
        with pytest.raises(UsageError):
            parse_int_list("1,1.5")

    def test_argparse_errors_exit_two(self):
        with pytest.raises(SystemExit) as info:
            main(["sweep"])
        assert info.value.code == EXIT_USAGE
        with pytest.raises(SystemExit):
            main(["sweep", "--modulus", "11", "--engine", "slow"])


class TestSweep:
    def test_writes_table(self, table_path, swept):
        table = load_table(table_path)
        assert table.equals(swept(11))
        assert not table_path.with_name("q11.tbl.ckpt").exists()

    def test_bad_modulus(self, tmp_path):
        code = run("sweep", "--modulus", 2, "--threads", 1, "--out", tmp_path / "x.tbl")
        assert code == EXIT_USAGE

    def test_budget_then_resume(self, tmp_path, monkeypatch, swept):
        monkeypatch.setattr(config, "SWEEP_CHUNK_SIZE", 4)
        out = tmp_path / "q31.tbl"
        code = run("sweep", "--modulus", 31, "--threads", 1, "--out", out, "--budget-rows", 8)
        assert code == EXIT_FAILURE
        partial = load_table(out)
        assert len(partial) == 8
        assert not partial.complete
        assert "budget" in partial.metadata

        assert run("sweep", "--modulus", 31, "--threads", 1, "--out", out) == EXIT_OK
        assert load_table(out).equals(swept(31))
        assert not out.with_name("q31.tbl.ckpt").exists()

    def test_threads_from_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv(config.THREADS_ENV_VAR, "zero")
        assert run("sweep", "--modulus", 7, "--out", tmp_path / "q7.tbl") == EXIT_USAGE


class TestAnalysis:
    def test_hist(self, tmp_path, table_path):
        prefix = tmp_path / "plots" / "q11"
        assert run("hist", "--table", table_path, "--bins", 10, "--out", prefix) == EXIT_OK
        assert (tmp_path / "plots" / "q11-hist.csv").exists()
        assert (tmp_path / "plots" / "q11-hist.svg").exists()

    def test_hist_default_prefix(self, table_path):
        assert run("hist", "--table", table_path, "--format", "csv") == EXIT_OK
        assert table_path.with_name("q11-hist.csv").exists()
        assert not table_path.with_name("q11-hist.svg").exists()

    def test_moments(self, tmp_path, table_path):
        out = tmp_path / "m"
        assert run("moments", "--table", table_path, "--k", "1,2", "--out-dir", out) == EXIT_OK
        records = json.loads((out / "moments.json").read_text())
        assert [r["k"] for r in records] == [1, 2]
        summary = json.loads((out / "summary.json").read_text())
        assert summary["files"] == ["moments.csv", "moments.json"]

    def test_moments_of_partial_table_fail(self, tmp_path, monkeypatch):
        monkeypatch.setattr(config, "SWEEP_CHUNK_SIZE", 4)
        out = tmp_path / "q31.tbl"
        run("sweep", "--modulus", 31, "--threads", 1, "--out", out, "--budget-rows", 8)
        assert run("moments", "--table", out, "--out-dir", tmp_path / "m") == EXIT_FAILURE

    def test_tail(self, tmp_path, table_path):
        out = tmp_path / "t"
        code = run(
            "tail", "--table", table_path, "--alpha", "0..2:0.5", "--markov-k", 2, "--out-dir", out
        )
        assert code == EXIT_OK
        assert (out / "tail_F.csv").exists()
        markov = json.loads((out / "markov.json").read_text())
        assert [row["alpha"] for row in markov] == [0.5, 1.0, 1.5, 2.0]

    def test_tail_g(self, tmp_path, table_path):
        out = tmp_path / "g"
        code = run(
            "tail", "--table", table_path, "--alpha", "1", "--statistic", "g", "--out-dir", out
        )
        assert code == EXIT_OK
        payload = json.loads((out / "tail_g.json").read_text())
        assert payload["statistic"] == "g_q"

    def test_corrupt_table(self, tmp_path, table_path):
        data = bytearray(table_path.read_bytes())
        data[-1] ^= 0x01
        bad = tmp_path / "bad.tbl"
        bad.write_bytes(bytes(data))
        code = run("tail", "--table", bad, "--alpha", "1", "--out-dir", tmp_path / "t")
        assert code == EXIT_FAILURE

    def test_aggregate(self, tmp_path):
        paths = []
        for q in (3, 4, 5):
            path = tmp_path / f"q{q}.tbl"
            assert run("sweep", "--modulus", q, "--threads", 1, "--out", path) == EXIT_OK
            paths.append(path)
        out = tmp_path / "agg"
        assert run("aggregate", "--table", *paths, "--alpha", 1.0, "--out-dir", out) == EXIT_OK
        payload = json.loads((out / "aggregate.json").read_text())
        assert payload["N"] == 5
        assert sorted(payload["breakdown"]) == ["3", "4", "5"]

        gap = run("aggregate", "--table", paths[0], paths[2], "--alpha", 1.0, "--out-dir", out)
        assert gap == EXIT_FAILURE


class TestReference:
    def test_constants(self, tmp_path):
        out = tmp_path / "c"
        assert run("constants", "--what", "two_adic", "--k", "1,2", "--out-dir", out) == EXIT_OK
        record = json.loads((out / "constants_two_adic.json").read_text())
        assert record["1"] == pytest.approx(4 / 3)
        assert run("constants", "--what", "halfpoint", "--k", 1, "--out-dir", out) == EXIT_OK
        record = json.loads((out / "constants_halfpoint.json").read_text())
        assert record["1"] == pytest.approx(0.25, abs=1e-9)

    def test_shapes(self, tmp_path):
        out = tmp_path / "s"
        assert run("shapes", "--which", "C_k", "--k", "3..5", "--out-dir", out) == EXIT_OK
        assert (out / "shapes_C_k.csv").exists()
        code = run("shapes", "--which", "theorem3_upper", "--alpha", "1", "--out-dir", out)
        assert code == EXIT_OK

    def test_shape_domain_error(self, tmp_path):
        assert run("shapes", "--which", "c_k", "--k", "1", "--out-dir", tmp_path) == EXIT_USAGE

    def test_verify(self, tmp_path):
        out = tmp_path / "v"
        assert run("verify", "--suite", "gauss", "--modulus", 13, "--out-dir", out) == EXIT_OK
        results = json.loads((out / "verify.json").read_text())
        assert results[0]["suite"] == "gauss"
        assert results[0]["passed"] is True

    def test_verify_dyadic_cases(self, tmp_path):
        out = tmp_path / "d"
        argv = ["verify", "--suite", "dyadic", "--modulus", 31, "--cases", 25, "--out-dir", out]
        assert run(*argv) == EXIT_OK
        results = json.loads((out / "verify.json").read_text())
        assert results[0]["params"]["cases"] == 25
        assert len(results[0]["checks"]) == 50
        assert run("verify", "--suite", "dyadic", "--cases", 0, "--out-dir", out) == EXIT_USAGE

    def test_config_overrides(self, tmp_path, monkeypatch, table_path):
        monkeypatch.setattr(config, "HISTOGRAM_BINS", config.HISTOGRAM_BINS)
        good = tmp_path / "good.yaml"
        good.write_text("HISTOGRAM_BINS: 7\n")
        prefix = tmp_path / "cfg"
        argv = ["-q", "--config", str(good), "hist", "--table", str(table_path)]
        assert main([*argv, "--format", "csv", "--out", str(prefix)]) == EXIT_OK
        assert len((tmp_path / "cfg-hist.csv").read_text().splitlines()) == 8

        bad = tmp_path / "bad.yaml"
        bad.write_text("NOT_A_CONSTANT: 1\n")
        assert main(["-q", "--config", str(bad), "shapes", "--which", "C_k"]) == EXIT_USAGE
        missing = str(tmp_path / "missing.yaml")
        assert main(["-q", "--config", missing, "shapes", "--which", "C_k"]) == EXIT_USAGE

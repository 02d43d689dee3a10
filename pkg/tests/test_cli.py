import csv
import json
import math

import pytest

from cyclewalk.cli import main
from cyclewalk.config import ConfigError, parse_angle, parse_config

RUN_HEADER = ("t,p_0,p_1,p_2,p_3,phat_0,phat_1,phat_2,phat_3,"
              "hellinger_fidelity,s2_coin,s2_position,s2_total")


def write_config(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def ideal_run_config(**overrides):
    doc = {
        "walk": {"n": 2, "steps": 8, "theta": "pi/6", "phi": "pi/2",
                 "scheme": "present"},
        "seed": 7,
    }
    doc.update(overrides)
    return doc


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


class TestAngleLiterals:
    def test_pi_fractions_are_exact(self):
        assert parse_angle("pi/6") == math.pi / 6
        assert parse_angle("2*pi/3") == 2 * math.pi / 3
        assert parse_angle("-pi/2") == -math.pi / 2
        assert parse_angle("pi") == math.pi
        assert parse_angle(0.25) == 0.25
        assert parse_angle("0.5") == 0.5

    def test_garbage_rejected(self):
        with pytest.raises(ConfigError):
            parse_angle("two pies")


class TestConfigParsing:
    def test_unknown_keys_rejected(self):
        with pytest.raises(ConfigError, match="unknown"):
            parse_config(ideal_run_config(bogus=1))

    def test_missing_walk(self):
        with pytest.raises(ConfigError, match="walk"):
            parse_config({"seed": 1})

    def test_noise_requires_shots(self):
        doc = ideal_run_config(noise={"p2": 0.01})
        with pytest.raises(ConfigError, match="shots"):
            parse_config(doc)

    def test_scheme_names(self):
        doc = ideal_run_config()
        doc["walk"]["scheme"] = "id"
        cfg = parse_config(doc)
        assert cfg.walk.scheme.value == "id-linear-depth"


class TestRunCommand:
    def test_ideal_run_fidelity_is_exactly_one(self, tmp_path):
        cfg = write_config(tmp_path, ideal_run_config())
        assert main(["run", "--config", cfg, "--out", str(tmp_path / "o")]) == 0
        rows = read_rows(tmp_path / "o" / "results.csv")
        assert len(rows) == 9
        assert all(row["hellinger_fidelity"] == "1.0" for row in rows)

    def test_header_is_pinned(self, tmp_path):
        cfg = write_config(tmp_path, ideal_run_config())
        main(["run", "--config", cfg, "--out", str(tmp_path / "o")])
        first = (tmp_path / "o" / "results.csv").read_text().splitlines()[0]
        assert first == RUN_HEADER

    def test_byte_identical_reruns(self, tmp_path):
        doc = ideal_run_config(noise={"p2": 0.01}, shots=2000)
        doc["walk"]["steps"] = 5
        cfg = write_config(tmp_path, doc)
        main(["run", "--config", cfg, "--out", str(tmp_path / "a")])
        main(["run", "--config", cfg, "--out", str(tmp_path / "b")])
        assert (tmp_path / "a" / "results.csv").read_bytes() == \
            (tmp_path / "b" / "results.csv").read_bytes()
        assert (tmp_path / "a" / "meta.json").read_bytes() == \
            (tmp_path / "b" / "meta.json").read_bytes()

    def test_noisy_minima_at_localized_timesteps(self, tmp_path):
        doc = ideal_run_config(noise={"p2": 0.01}, shots=20000,
                               outputs=["distribution", "fidelity"])
        doc["walk"]["steps"] = 19
        cfg = write_config(tmp_path, doc)
        assert main(["run", "--config", cfg, "--out", str(tmp_path / "o")]) == 0
        fid = [float(r["hellinger_fidelity"])
               for r in read_rows(tmp_path / "o" / "results.csv")]
        for t in (4, 8, 12, 16):
            assert fid[t] < fid[t - 1] and fid[t] < fid[t + 1]

    def test_eight_cycle_returns_home_at_twenty_four(self, tmp_path):
        doc = ideal_run_config()
        doc["walk"].update(n=3, steps=24)
        cfg = write_config(tmp_path, doc)
        main(["run", "--config", cfg, "--out", str(tmp_path / "o")])
        last = read_rows(tmp_path / "o" / "results.csv")[-1]
        assert last["t"] == "24"
        assert abs(float(last["p_0"]) - 1.0) < 1e-9

    def test_sampled_but_noiseless_run(self, tmp_path):
        doc = ideal_run_config(shots=50000,
                               outputs=["distribution", "fidelity"])
        cfg = write_config(tmp_path, doc)
        main(["run", "--config", cfg, "--out", str(tmp_path / "o")])
        rows = read_rows(tmp_path / "o" / "results.csv")
        fid = [float(r["hellinger_fidelity"]) for r in rows]
        assert all(f > 0.99 for f in fid)
        assert any(f < 1.0 for f in fid)      # finite shots leave a trace

    def test_json_format(self, tmp_path):
        cfg = write_config(tmp_path, ideal_run_config())
        main(["run", "--config", cfg, "--out", str(tmp_path / "o"),
              "--format", "json"])
        rows = json.loads((tmp_path / "o" / "results.json").read_text())
        assert rows[0]["t"] == 0 and rows[0]["hellinger_fidelity"] == 1.0

    def test_entropy_columns_trace_the_recurrence(self, tmp_path):
        cfg = write_config(tmp_path, ideal_run_config())
        main(["run", "--config", cfg, "--out", str(tmp_path / "o")])
        rows = read_rows(tmp_path / "o" / "results.csv")
        for t in (1, 5):
            assert abs(float(rows[t]["s2_coin"]) - 1.0) < 1e-9
        for t in (0, 4, 8):
            assert abs(float(rows[t]["s2_coin"])) < 1e-9


class TestExitCodes:
    def test_usage_error(self, capsys):
        assert main(["run", "--no-such-flag"]) == 2
        capsys.readouterr()

    def test_config_error_is_line_anchored(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{\n  \"walk\": [,]\n}")
        assert main(["run", "--config", str(bad), "--out", str(tmp_path)]) == 3
        err = capsys.readouterr().err
        assert "bad.json:2" in err

    def test_schema_error(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"walk": {"n": 2}})
        assert main(["run", "--config", cfg, "--out", str(tmp_path)]) == 3
        assert "steps" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path, capsys):
        missing = str(tmp_path / "nope.json")
        assert main(["run", "--config", missing, "--out", str(tmp_path)]) == 3
        capsys.readouterr()

    def test_runtime_error_when_out_unwritable(self, tmp_path, capsys):
        cfg = write_config(tmp_path, ideal_run_config())
        target = tmp_path / "file"
        target.write_text("occupied")
        assert main(["run", "--config", cfg,
                     "--out", str(target / "sub")]) == 4
        capsys.readouterr()


class TestMetricsCommand:
    def test_all_schemes_at_shared_size(self, tmp_path):
        assert main(["metrics", "--n", "4:4", "--t", "1:1",
                     "--schemes", "all", "--out", str(tmp_path)]) == 0
        rows = read_rows(tmp_path / "metrics.csv")
        table = {r["scheme"]: (int(r["n1"]), int(r["n2"]), int(r["depth"]),
                               int(r["ancillae"])) for r in rows}
        assert table["present"] == (13, 15, 18, 0)
        assert table["qft"] == (13, 20, 24, 0)
        assert table["id-linear-depth"] == (2, 27, 27, 0)
        assert table["id-ancilla"] == (2, 34, 31, 1)

    def test_counted_equals_closed_form_over_grid(self, tmp_path):
        assert main(["metrics", "--n", "2:8", "--t", "1:20",
                     "--schemes", "present", "--out", str(tmp_path)]) == 0
        rows = read_rows(tmp_path / "metrics.csv")
        assert len(rows) == 140
        for row in rows:
            assert row["counted_n1"] == row["n1"]
            assert row["counted_n2"] == row["n2"]
            assert row["counted_depth"] == row["depth"]

    def test_empty_range_yields_header_only(self, tmp_path):
        assert main(["metrics", "--n", "4:3", "--t", "1:1",
                     "--schemes", "present", "--out", str(tmp_path)]) == 0
        lines = (tmp_path / "metrics.csv").read_text().splitlines()
        assert len(lines) == 1 and lines[0].startswith("scheme,")

    def test_explicit_out_of_range_scheme_rejected(self, tmp_path, capsys):
        code = main(["metrics", "--n", "2:4", "--t", "1:1",
                     "--schemes", "id-ancilla", "--out", str(tmp_path)])
        assert code == 3
        capsys.readouterr()


class TestCompareCommand:
    def test_low_depth_scheme_dominates(self, tmp_path):
        doc = {
            "walk": {"n": 2, "steps": 6, "theta": "pi/6", "phi": "pi/2"},
            "noise": {"p2": 0.01},
            "shots": 4000,
            "seed": 5,
            "schemes": ["present", "qft"],
            "repeat": 3,
        }
        cfg = write_config(tmp_path, doc)
        assert main(["compare-schemes", "--config", cfg,
                     "--out", str(tmp_path)]) == 0
        rows = read_rows(tmp_path / "compare.csv")
        assert [k for k in rows[0]] == ["t", "fidelity_present", "fidelity_qft"]
        last = rows[-1]
        assert float(last["fidelity_present"]) > float(last["fidelity_qft"])


class TestEntropyCommand:
    def test_exact_mode_matches_recurrence(self, tmp_path):
        doc = ideal_run_config()
        doc["walk"]["steps"] = 5
        cfg = write_config(tmp_path, doc)
        assert main(["entropy", "--config", cfg, "--out", str(tmp_path)]) == 0
        rows = read_rows(tmp_path / "entropy.csv")
        assert abs(float(rows[1]["s2_coin"]) - 1.0) < 1e-9
        assert abs(float(rows[4]["s2_coin"])) < 1e-9
        assert all(abs(float(r["s2_total"])) < 1e-9 for r in rows)

    def test_randomized_mode_tracks_exact(self, tmp_path):
        doc = ideal_run_config(
            entropy_mode={"mode": "randomized", "n_unitaries": 80,
                          "shots": 20000})
        doc["walk"]["steps"] = 1
        cfg = write_config(tmp_path, doc)
        assert main(["entropy", "--config", cfg, "--out", str(tmp_path)]) == 0
        rows = read_rows(tmp_path / "entropy.csv")
        assert abs(float(rows[0]["s2_coin"])) < 0.25
        assert float(rows[1]["s2_coin"]) > 0.75

    def test_seed_override_changes_estimates(self, tmp_path):
        doc = ideal_run_config(
            entropy_mode={"mode": "randomized", "n_unitaries": 30,
                          "shots": 2000})
        doc["walk"]["steps"] = 1
        cfg = write_config(tmp_path, doc)
        main(["entropy", "--config", cfg, "--out", str(tmp_path / "a")])
        main(["entropy", "--config", cfg, "--out", str(tmp_path / "b"),
              "--seed", "99"])
        a = (tmp_path / "a" / "entropy.csv").read_text()
        b = (tmp_path / "b" / "entropy.csv").read_text()
        assert a != b
        meta = json.loads((tmp_path / "b" / "meta.json").read_text())
        assert meta["seed"] == 99

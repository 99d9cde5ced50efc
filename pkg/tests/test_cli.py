"""Command line round trips: scenario sweeps to CSV, zero-crossing
refinement, reference-force comparisons, and the exit code contract."""

import json
import math
import warnings

import numpy as np
import pytest

from neqcasimir import cli
from neqcasimir.cli import (CSV_COLUMNS, ampere_force_per_length,
                            read_sweep_csv, weight_per_length)
from neqcasimir.units import G_STANDARD, MU_0

REL = 3e-3


def _base_doc():
    return {
        "name": "cli-test",
        "cylinder1": {"radius": {"value": 0.1, "unit": "um"},
                      "material": "sic"},
        "cylinder2": {"radius": {"value": 0.1, "unit": "um"},
                      "material": "sic"},
        "separations": {"values": [8.0, 10.0], "unit": "um"},
        "controls": {"rel_tol": REL},
    }


def _run(argv):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return cli.main(argv)


def _write(tmp, name, doc):
    path = tmp / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture(scope="module")
def cold_sweep(tmp_path_factory):
    """Four temperature combos with a cold environment, two separations."""
    tmp = tmp_path_factory.mktemp("cold")
    doc = _base_doc()
    doc["temperature_sets"] = {
        "unit": "K",
        "sets": [[0, 0, 0], [300, 0, 0], [0, 300, 0], [300, 300, 0]]}
    out = tmp / "cold.csv"
    code = _run(["run", _write(tmp, "cold.json", doc), "--out", str(out)])
    assert code == 0
    return out


@pytest.fixture(scope="module")
def warm_sweep(tmp_path_factory):
    """The other four combos: environment at 300 K, zero equilibrium."""
    tmp = tmp_path_factory.mktemp("warm")
    doc = _base_doc()
    doc["separations"] = {"values": [8.0], "unit": "um"}
    doc["temperature_sets"] = {
        "unit": "K",
        "sets": [[0, 0, 300], [300, 0, 300], [0, 300, 300],
                 [300, 300, 300]]}
    doc["equilibrium"] = {"d_m": [1e-7, 1e-3],
                          "F_eq_N_per_m": [0.0, 0.0]}
    out = tmp / "warm.csv"
    code = _run(["run", _write(tmp, "warm.json", doc), "--out", str(out)])
    assert code == 0
    return out


def _vacuum_root_doc():
    # all temperatures zero: the sweep reduces to the ingested
    # log-linear equilibrium, which crosses zero at 10^0.2 um
    return {
        "name": "ln-root",
        "cylinder1": {"radius": {"value": 0.05, "unit": "um"},
                      "material": "vacuum"},
        "cylinder2": {"radius": {"value": 0.05, "unit": "um"},
                      "material": "vacuum"},
        "temperature_sets": {"unit": "K", "sets": [[0, 0, 0]]},
        "separations": {"values": [1.0, 2.5, 5.0], "unit": "um"},
        "equilibrium": {"d_m": [1e-6, 1e-5],
                        "F_eq_N_per_m": [1.0, -4.0]},
    }


def test_csv_schema_and_header(cold_sweep):
    lines = cold_sweep.read_text().splitlines()
    assert lines[0].startswith("# scenario: ")
    resolved = json.loads(lines[0][len("# scenario: "):])
    assert resolved["provider"] == "thin"
    assert resolved["controls"]["rel_tol"] == REL
    assert lines[1] == ",".join(CSV_COLUMNS)
    assert len(lines) == 2 + 8
    doc, rows = read_sweep_csv(cold_sweep)
    assert doc == resolved
    assert len(rows) == 8
    assert set(rows[0]) == set(CSV_COLUMNS)


def test_row_order_and_temperatures(cold_sweep):
    _, rows = read_sweep_csv(cold_sweep)
    combos = [(r["T1_K"], r["T2_K"], r["Tenv_K"]) for r in rows[::2]]
    assert combos == [(0.0, 0.0, 0.0), (300.0, 0.0, 0.0),
                      (0.0, 300.0, 0.0), (300.0, 300.0, 0.0)]
    assert [r["d_m"] for r in rows[:2]] == [8e-6, 1e-5]


def test_all_sources_cold_gives_zero_rows(cold_sweep):
    _, rows = read_sweep_csv(cold_sweep)
    for row in rows[:2]:
        for key in CSV_COLUMNS[4:19]:
            assert row[key] == 0.0
        assert row["F1_sign"] == "zero"
        assert row["F2_sign"] == "zero"


def test_decomposition_identity_per_row(cold_sweep, warm_sweep):
    # the %.12e round trip leaves residuals at 1e-13 of the largest
    # component, which matters on rows where the components cancel
    for path in (cold_sweep, warm_sweep):
        _, rows = read_sweep_csv(path)
        for r in rows:
            parts = (r["F_eq"], r["F1_self"], r["F1_int"],
                     r["F1_env_subtraction"])
            scale = max(abs(p) for p in parts) + 1e-300
            assert abs(r["F1_total"] - sum(parts)) <= 1e-10 * scale
            parts2 = (-r["F_eq"], r["F2_self"], r["F2_int"],
                      r["F2_env_subtraction"])
            assert abs(r["F2_total"] - sum(parts2)) <= 1e-10 * scale
            assert abs(r["F1_int"] - r["F1_int_prop"] - r["F1_int_evan"]) \
                <= 1e-10 * (abs(r["F1_int_prop"])
                            + abs(r["F1_int_evan"]) + 1e-300)


def test_mirror_rows(cold_sweep):
    # identical cylinders: swapping T1 and T2 flips the axis
    _, rows = read_sweep_csv(cold_sweep)
    hot1 = [r for r in rows if (r["T1_K"], r["T2_K"]) == (300.0, 0.0)]
    hot2 = [r for r in rows if (r["T1_K"], r["T2_K"]) == (0.0, 300.0)]
    for a, b in zip(hot1, hot2):
        assert a["d_m"] == b["d_m"]
        assert a["F1_total"] == -b["F2_total"]
        assert a["F2_total"] == -b["F1_total"]
        assert a["F1_int"] == -b["F2_int"]


def test_equal_temperature_row_is_pure_equilibrium(warm_sweep):
    _, rows = read_sweep_csv(warm_sweep)
    eq_row = [r for r in rows
              if (r["T1_K"], r["T2_K"], r["Tenv_K"]) == (300.0,) * 3][0]
    # global equilibrium: the totals collapse to the (zero) ingested
    # equilibrium while the breakdown columns cancel rather than vanish
    assert eq_row["F1_total"] == 0.0
    assert eq_row["F2_total"] == 0.0
    assert eq_row["F1_sign"] == "zero"
    assert eq_row["F2_sign"] == "zero"
    assert eq_row["F1_self"] != 0.0
    assert eq_row["F1_env_subtraction"] == pytest.approx(
        -(eq_row["F1_self"] + eq_row["F1_int"]), rel=1e-10)
    # the cold-source rows do subtract environment radiation
    cold_row = [r for r in rows
                if (r["T1_K"], r["T2_K"], r["Tenv_K"])
                == (0.0, 0.0, 300.0)][0]
    assert cold_row["F1_env_subtraction"] != 0.0
    assert cold_row["F1_total"] != 0.0


def test_rerun_is_byte_identical(tmp_path):
    doc = _base_doc()
    doc["separations"] = {"values": [8.0], "unit": "um"}
    doc["temperature_sets"] = {"unit": "K", "sets": [[300, 0, 0]]}
    src = _write(tmp_path, "re.json", doc)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert _run(["run", src, "--out", str(a)]) == 0
    assert _run(["run", src, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_swapped_scenario_negates_forces(tmp_path):
    base = _base_doc()
    base["separations"] = {"values": [8.0], "unit": "um"}
    base["cylinder2"]["radius"] = {"value": 0.07, "unit": "um"}
    base["temperature_sets"] = {"unit": "K", "sets": [[300, 200, 0]]}
    swapped = _base_doc()
    swapped["separations"] = {"values": [8.0], "unit": "um"}
    swapped["cylinder1"]["radius"] = {"value": 0.07, "unit": "um"}
    swapped["temperature_sets"] = {"unit": "K", "sets": [[200, 300, 0]]}
    out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert _run(["run", _write(tmp_path, "a.json", base),
                 "--out", str(out_a)]) == 0
    assert _run(["run", _write(tmp_path, "b.json", swapped),
                 "--out", str(out_b)]) == 0
    _, rows_a = read_sweep_csv(out_a)
    _, rows_b = read_sweep_csv(out_b)
    assert rows_a[0]["F1_total"] == -rows_b[0]["F2_total"]
    assert rows_a[0]["F2_total"] == -rows_b[0]["F1_total"]
    assert rows_a[0]["F1_int"] == -rows_b[0]["F2_int"]
    assert rows_a[0]["F1_self"] == -rows_b[0]["F2_self"]


def test_run_to_stdout(tmp_path, capsys):
    path = _write(tmp_path, "root.json", _vacuum_root_doc())
    assert _run(["run", path]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0].startswith("# scenario: ")
    assert lines[1] == ",".join(CSV_COLUMNS)
    assert len(lines) == 2 + 3


def test_provider_override_recorded(tmp_path):
    path = _write(tmp_path, "root.json", _vacuum_root_doc())
    out = tmp_path / "full.csv"
    assert _run(["run", path, "--provider", "full",
                 "--out", str(out)]) == 0
    doc, _ = read_sweep_csv(out)
    assert doc["provider"] == "full"


def test_rel_tol_override_validation(tmp_path):
    path = _write(tmp_path, "root.json", _vacuum_root_doc())
    out = tmp_path / "o.csv"
    assert _run(["run", path, "--rel-tol", "-1", "--out", str(out)]) == 2
    assert _run(["run", path, "--rel-tol", "1e-2", "--out", str(out)]) == 0
    doc, _ = read_sweep_csv(out)
    assert doc["controls"]["rel_tol"] == 1e-2


def test_zeros_locates_and_classifies_root(tmp_path, capsys):
    path = _write(tmp_path, "root.json", _vacuum_root_doc())
    out = tmp_path / "root.csv"
    assert _run(["run", path, "--out", str(out)]) == 0
    assert _run(["zeros", str(out), "--rel-tol", "1e-6"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "T1_K,T2_K,Tenv_K,d_zero_m,stability"
    assert len(lines) == 2
    fields = lines[1].split(",")
    assert fields[-1] == "stable"
    root = float(fields[3])
    assert root == pytest.approx(1e-6 * 10 ** 0.2, rel=1e-5)


def test_zeros_empty_without_sign_change(tmp_path, capsys):
    doc = _vacuum_root_doc()
    doc["equilibrium"]["F_eq_N_per_m"] = [-1.0, -4.0]
    path = _write(tmp_path, "mono.json", doc)
    out = tmp_path / "mono.csv"
    assert _run(["run", path, "--out", str(out)]) == 0
    assert _run(["zeros", str(out)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["T1_K,T2_K,Tenv_K,d_zero_m,stability"]


def test_exit_2_on_malformed_inputs(tmp_path, capsys):
    doc = _vacuum_root_doc()
    del doc["separations"]
    assert _run(["run", _write(tmp_path, "m.json", doc)]) == 2
    assert "separations" in capsys.readouterr().err

    garbage = tmp_path / "g.json"
    garbage.write_text("{not json")
    assert _run(["run", str(garbage)]) == 2
    assert "JSON" in capsys.readouterr().err

    headerless = tmp_path / "h.csv"
    headerless.write_text(",".join(CSV_COLUMNS) + "\n")
    assert _run(["zeros", str(headerless)]) == 2
    assert "scenario" in capsys.readouterr().err

    empty = tmp_path / "e.csv"
    empty.write_text("# scenario: {}\n" + ",".join(CSV_COLUMNS) + "\n")
    assert _run(["zeros", str(empty)]) == 2
    assert "no data rows" in capsys.readouterr().err


def test_exit_3_on_quadrature_failure(tmp_path, capsys):
    doc = _base_doc()
    doc["separations"] = {"values": [8.0], "unit": "um"}
    doc["temperature_sets"] = {"unit": "K", "sets": [[300, 0, 0]]}
    doc["controls"] = {"rel_tol": 1e-12, "max_panels": 8}
    path = _write(tmp_path, "choke.json", doc)
    assert _run(["run", path, "--out", str(tmp_path / "x.csv")]) == 3
    assert "did not converge" in capsys.readouterr().err


def test_compare_weight(capsys):
    assert _run(["compare-weight", "--density", "19300",
                 "--radius", "2e-8"]) == 0
    out = capsys.readouterr().out
    value = float(out.split("=")[1])
    assert value == pytest.approx(
        19300.0 * math.pi * (2e-8) ** 2 * G_STANDARD, rel=1e-12)
    # about a quarter of a femtonewton per micrometer of wire
    assert value == pytest.approx(2.38e-10, rel=0.01)

    assert _run(["compare-weight", "--density", "19300",
                 "--radius", "2e-8", "--force=-1e-11"]) == 0
    out = capsys.readouterr().out
    assert "weight_to_force_ratio" in out
    ratio = float(out.splitlines()[-1].split("=")[1])
    assert ratio == pytest.approx(value / 1e-11, rel=1e-5)

    assert _run(["compare-weight", "--density", "-1",
                 "--radius", "2e-8"]) == 2


def test_compare_ampere(capsys):
    assert _run(["compare-ampere", "--current1", "17e-6",
                 "--current2", "17e-6", "--distance", "0.4e-6"]) == 0
    out = capsys.readouterr().out
    value = float(out.split("=")[1])
    assert value == pytest.approx(
        MU_0 * 17e-6 * 17e-6 / (2 * math.pi * 0.4e-6), rel=1e-12)
    assert value == pytest.approx(1.445e-10, rel=1e-3)

    assert _run(["compare-ampere", "--current1", "1", "--current2", "1",
                 "--distance", "0"]) == 2


def test_reference_force_helpers():
    assert weight_per_length(0.0, 1.0) == 0.0
    assert ampere_force_per_length(2.0, 3.0, 1.0) == pytest.approx(
        MU_0 * 6.0 / (2.0 * math.pi), rel=1e-15)
    with pytest.raises(ValueError):
        weight_per_length(-1.0, 1.0)
    with pytest.raises(ValueError):
        ampere_force_per_length(1.0, 1.0, -2.0)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-v"]))

import json

import pytest

from pshecke.cli import main
from pshecke.catalog import default_catalog_json, load_catalog
from pshecke.exact_rings import ConfigError


def write(tmp_path, data, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def one_case(name):
    raw = default_catalog_json()
    return {"coefficients": raw["coefficients"], "cases": [c for c in raw["cases"] if c["name"] == name]}


def test_validate_default(capsys):
    assert main(["validate"]) == 0
    assert "C2-unequal\tok" in capsys.readouterr().out


def test_run_a1_verify_presentation(tmp_path):
    cfg = write(tmp_path, one_case("A1-SL2"))
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--task", "verify-presentation", "--out", str(out)]) == 0
    report = (out / "A1-SL2__verify-presentation.tsv").read_text()
    assert report.splitlines()[0] == "relation\tgenerators\tholds"
    assert report.rstrip().endswith("PASS")
    assert json.loads((out / "summary.json").read_text()) == {"A1-SL2": {"verify-presentation": "PASS"}}


def test_negative_control_fails_naming_orbit(tmp_path):
    data = one_case("BC1-U3-unram-trivial")
    data["cases"][0]["negative_control"] = "corrupt-galois"
    cfg = write(tmp_path, data)
    out = tmp_path / "neg"
    assert main(["run", "--config", cfg, "--task", "compare-sides", "--out", str(out)]) == 1
    report = (out / "BC1-U3-unram-trivial__compare-sides.tsv").read_text()
    assert "orbit s0" in report and "\tno" in report and report.rstrip().endswith("FAIL")


def test_empty_filter_runs_all_tasks(tmp_path):
    cfg = write(tmp_path, one_case("A1-PGL2-halved"))
    out = tmp_path / "all"
    assert main(["run", "--config", cfg, "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert set(summary["A1-PGL2-halved"]) == set(one_case("A1-PGL2-halved")["cases"][0]["tasks"])


def test_deterministic_reports(tmp_path):
    cfg = write(tmp_path, one_case("A2"))
    outs = []
    for k in range(2):
        d = tmp_path / f"r{k}"
        assert main(["run", "--config", cfg, "--task", "compare-sides", "--task", "graded", "--out", str(d)]) == 0
        outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    assert outs[0] == outs[1]


@pytest.mark.parametrize("mutate", [
    lambda c: c.update(bogus=1),
    lambda c: c["root_datum"].update(simple_coroots=[[1]]),
    lambda c: c.update(tasks=["nope"]),
    lambda c: c.update(basepoint=[["1/3", "0"]]),
    lambda c: c["arithmetic"]["0"].update(residue_degree_f=3),
])
def test_config_errors_exit_2(tmp_path, mutate, capsys):
    data = one_case("BC1-U3-unram-trivial")
    mutate(data["cases"][0])
    cfg = write(tmp_path, data)
    assert main(["validate", "--config", cfg]) == 2
    assert main(["run", "--config", cfg, "--out", str(tmp_path / "x")]) == 2
    assert "config error" in capsys.readouterr().err


def test_missing_file_is_config_error(tmp_path):
    assert main(["validate", "--config", str(tmp_path / "missing.json")]) == 2
    with pytest.raises(ConfigError):
        load_catalog("{not json")


def test_catalog_labels(catalog):
    labels = {c.name: c.labels() for c in catalog.cases}
    assert labels["C2-unequal"] == {0: (1, 1), 1: (3, 1)}
    assert labels["A1-PGL2-halved"] == {0: (1, 0)}
    assert labels["BC1-U3-ramified"] == {0: (1, 0)}

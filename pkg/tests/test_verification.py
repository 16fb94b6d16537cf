import json
import os
import shutil

import pytest

from ConfigManager import PipelineConfig
from VerificationManager import CHECKS, FAIL, PASS, SKIPPED, CheckResult, VerificationReport, verify_all

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")


@pytest.fixture
def small_config():
    return PipelineConfig(lie_max_degree=3, assoc_max_degree=4, word_space_max_degree=3,
                          series_order=10, data_dir=DATA_DIR)


@pytest.fixture
def corrupted_data(tmp_path):
    target = tmp_path / "data"
    shutil.copytree(DATA_DIR, target)
    path = target / "J197.rel"
    path.write_text(path.read_text().replace("b^2-af", "b^2-ag", 1))
    return str(target)


def test_every_check_has_anchor_and_group():
    for name, (anchor, group, check) in CHECKS.items():
        assert anchor and group and callable(check), name
        assert name.split(".")[0] in ("semigroup", "presentation", "grading", "lie", "monomial", "series")


def test_semigroup_group_passes(small_config):
    report = verify_all(small_config, only=["semigroup"])
    assert [r.check for r in report] == [n for n in CHECKS if n.startswith("semigroup.")]
    assert all(r.status == PASS for r in report)
    assert report["semigroup.frobenius"].value["pseudo_frobenius"] == [65, 45, 38, 34, 31]
    assert report.exit_code == 0


def test_degree_cap_skips_instead_of_failing(small_config):
    report = verify_all(small_config, only=["lie.eta_dims", "lie.word_space_oracle", "lie.lambda_table"])
    assert report["lie.eta_dims"].status == SKIPPED
    assert "cap" in report["lie.eta_dims"].value
    assert report["lie.word_space_oracle"].status == PASS
    assert report["lie.lambda_table"].status == PASS
    assert report.passed


def test_corrupted_relation_fails_kernel_check(small_config, corrupted_data):
    small_config.data_dir = corrupted_data
    report = verify_all(small_config, only=["presentation.kernel_J197", "presentation.kernel_J199"])
    assert report["presentation.kernel_J197"].status == FAIL
    assert "b^2-ag" in report["presentation.kernel_J197"].value
    assert report["presentation.kernel_J199"].status == PASS
    assert report.exit_code == 1


def test_missing_data_fails_only_dependent_checks(small_config, tmp_path):
    small_config.data_dir = str(tmp_path)
    report = verify_all(small_config, only=["presentation.hilbert_S", "semigroup.frobenius"])
    assert report["presentation.hilbert_S"].status == FAIL
    assert report["presentation.hilbert_S"].value.startswith("FileNotFoundError")
    assert report["semigroup.frobenius"].status == PASS


def test_json_is_deterministic_apart_from_timestamp(small_config):
    only = ["semigroup", "monomial", "lie.lambda_table"]
    first = json.loads(verify_all(small_config, only=only).to_json())
    second = json.loads(verify_all(small_config, only=only).to_json())
    assert set(first) == {"generated_at", "summary", "checks"}
    first.pop("generated_at")
    second.pop("generated_at")
    assert first == second
    assert set(first["checks"][0]) == {"check", "paper_anchor", "status", "value", "expected"}


def test_parallel_keeps_table_order(small_config):
    only = ["semigroup", "monomial", "grading", "lie.lambda_table"]
    sequential = verify_all(small_config, parallel=False, only=only)
    parallel = verify_all(small_config, parallel=True, only=only)
    assert [r.check for r in parallel] == [r.check for r in sequential]
    assert [r.status for r in parallel] == [r.status for r in sequential]


def test_report_rendering_and_frame():
    report = VerificationReport([
        CheckResult("a.ok", "§1", PASS, 3, 3),
        CheckResult("a.bad", "§2", FAIL, [1, 2], [1, 3]),
        CheckResult("a.cap", "§3", SKIPPED, "degree 8 is above the configured cap 7", None),
    ], generated_at="2024-01-01T00:00:00+00:00")
    assert report.counts() == {PASS: 1, FAIL: 1, SKIPPED: 1}
    assert not report.passed
    text = report.render()
    assert "✓ PASS" in text and "✗ FAIL" in text and "(expected [1, 3])" in text
    assert text.endswith("1 passed, 1 failed, 1 skipped")
    frame = report.to_frame()
    assert list(frame["status"]) == [PASS, FAIL, SKIPPED]
    assert frame.loc[1, "value"] == "[1, 2]"
    with pytest.raises(KeyError):
        report["a.missing"]


def test_report_rows_use_the_stable_schema():
    report = VerificationReport([CheckResult("a.ok", "§1", PASS, 3, 3)], generated_at="2024-01-01T00:00:00+00:00")
    row = json.loads(report.to_json())["checks"][0]
    assert list(row) == ["check", "paper_anchor", "status", "value", "expected"]
    assert row["paper_anchor"] == "§1"
    assert list(report.to_frame().columns) == ["check", "paper_anchor", "status", "value", "expected"]
    assert "[§1]" in report.render()


def test_theorem_check_ties_series_to_presentation(small_config, tmp_path):
    report = verify_all(small_config, only=["series.theorem1"])
    result = report["series.theorem1"]
    assert result.status == PASS
    assert result.value["x1"] == 11 and result.value["x2"] == 109
    assert result.expected["p_rbar197_z"] == result.value["p_rbar197_z"]

    target = tmp_path / "data"
    shutil.copytree(DATA_DIR, target)
    path = target / "I.rel"
    path.write_text(path.read_text().replace("eg, g^2, ", "eg, ", 1))
    small_config.data_dir = str(target)
    broken = verify_all(small_config, only=["series.theorem1", "presentation.minimal_generators_I"])
    assert broken["series.theorem1"].status == FAIL
    assert broken["series.theorem1"].expected["x2"] == 108
    assert broken["presentation.minimal_generators_I"].status == FAIL

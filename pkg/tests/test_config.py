import os

import pytest

from ConfigManager import PipelineConfig, PipelineConfigError, get_pipeline_config, validate_environment
from RowReductionManager import PrimeField, RationalField


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    for key in list(os.environ):
        if key.startswith("GORLAB_"):
            monkeypatch.delenv(key)
    monkeypatch.chdir(tmp_path)


def write_config(tmp_path, text):
    path = tmp_path / "run.env"
    path.write_text(text)
    return str(path)


def test_defaults():
    config = get_pipeline_config()
    assert config == PipelineConfig()
    assert config.lie_max_degree == 7
    assert isinstance(config.make_field(), RationalField)


def test_environment_override(monkeypatch):
    monkeypatch.setenv("GORLAB_LIE_MAX_DEGREE", "5")
    monkeypatch.setenv("GORLAB_PARALLEL", "yes")
    config = get_pipeline_config()
    assert config.lie_max_degree == 5
    assert config.parallel is True


def test_config_file_keys_with_or_without_prefix(tmp_path):
    path = write_config(tmp_path, "SERIES_ORDER=30\ngorlab_field=prime\nGORLAB_PRIME=101\n")
    config = get_pipeline_config(path)
    assert config.series_order == 30
    assert config.field == "prime"
    assert config.make_field().prime == 101
    assert isinstance(config.make_field(), PrimeField)


def test_precedence(tmp_path, monkeypatch):
    path = write_config(tmp_path, "LIE_MAX_DEGREE=4\nASSOC_MAX_DEGREE=6\n")
    monkeypatch.setenv("GORLAB_LIE_MAX_DEGREE", "5")
    config = get_pipeline_config(path, overrides={"lie_max_degree": 6, "series_order": None})
    assert config.lie_max_degree == 6
    assert config.assoc_max_degree == 6
    assert config.series_order == 20


def test_missing_config_file(tmp_path):
    with pytest.raises(PipelineConfigError):
        get_pipeline_config(str(tmp_path / "absent.env"))


@pytest.mark.parametrize("text", [
    "LIE_DEGREE=5\n",
    "SERIES_ORDER=many\n",
    "MONOMIAL_CAP=0\n",
    "BIGRADED_X=12\nBIGRADED_Y=20\n",
    "FIELD=real\n",
    "JSON_OUTPUT=maybe\n",
])
def test_invalid_values_rejected(tmp_path, text):
    with pytest.raises(PipelineConfigError):
        get_pipeline_config(write_config(tmp_path, text))


def test_underscored_integers(tmp_path):
    config = get_pipeline_config(write_config(tmp_path, "MONOMIAL_CAP=500_000\n"))
    assert config.monomial_cap == 500000


def test_data_path():
    assert PipelineConfig(data_dir="shipped").data_path("eta.lie") == os.path.join("shipped", "eta.lie")


def test_validate_environment_success(capsys):
    assert validate_environment()
    assert "✓" in capsys.readouterr().out


def test_validate_environment_failure(tmp_path, capsys):
    assert not validate_environment(write_config(tmp_path, "FIELD=real\n"))
    output = capsys.readouterr().out
    assert "✗ CRITICAL" in output
    assert "GORLAB_LIE_MAX_DEGREE=7" in output

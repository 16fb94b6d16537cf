"""
ConfigManager Module Contract

IDENTITY:
- Module: ConfigManager
- Purpose: Build and validate the PipelineConfig shared by the CLI and verify_all
- Interface: PipelineConfig, get_pipeline_config(), validate_environment()

GUARANTEES:
- Precedence, lowest first: dataclass defaults, the --config file, a .env file in the
  working directory, GORLAB_* environment variables, explicit overrides
- A returned config has passed validate(); it never carries a raw string for a
  numeric field

INPUT CONTRACTS:
get_pipeline_config(path=None, overrides=None)
    ACCEPTS: keys with or without the GORLAB_ prefix, in any case
    REJECTS: unknown keys, non-integer values for integer fields, non-positive caps,
             bigraded_y < 2 * bigraded_x, an unknown field name (PipelineConfigError)

FAILURE MODES:
- A missing --config file raises PipelineConfigError; a missing .env is ignored
"""
import logging
import os
from dataclasses import asdict, dataclass, fields
from typing import Dict, Mapping, Optional

from dotenv import dotenv_values, load_dotenv

from RowReductionManager import MERSENNE_PRIME, make_field

logger = logging.getLogger(__name__)

ENV_PREFIX = "GORLAB_"
FIELDS = ("rational", "prime")


class PipelineConfigError(Exception):
    """Raised when pipeline configuration is missing or invalid"""
    pass


@dataclass
class PipelineConfig:
    series_order: int = 20
    bigraded_x: int = 12
    bigraded_y: int = 24
    lie_max_degree: int = 7
    assoc_max_degree: int = 8
    word_space_max_degree: int = 5
    monomial_cap: int = 2_000_000
    presentation_max_degree: int = 300
    field: str = "rational"
    prime: int = MERSENNE_PRIME
    data_dir: str = "data"
    json_output: bool = False
    parallel: bool = False

    def validate(self) -> None:
        positive = ("series_order", "bigraded_x", "bigraded_y", "lie_max_degree", "assoc_max_degree",
                    "word_space_max_degree", "monomial_cap", "presentation_max_degree")
        for name in positive:
            if getattr(self, name) < 1:
                raise PipelineConfigError(f"{name} must be positive (got {getattr(self, name)})")
        if self.bigraded_y < 2 * self.bigraded_x:
            raise PipelineConfigError(
                f"bigraded_y must be at least 2*bigraded_x (got {self.bigraded_x}, {self.bigraded_y})"
            )
        if self.field not in FIELDS:
            raise PipelineConfigError(f"field must be one of {', '.join(FIELDS)} (got {self.field!r})")
        if self.prime < 3:
            raise PipelineConfigError(f"prime must be an odd prime (got {self.prime})")

    def data_path(self, name: str) -> str:
        return os.path.join(self.data_dir, name)

    def make_field(self):
        return make_field(self.field, self.prime)

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


_TYPES = {f.name: f.type for f in fields(PipelineConfig)}


def _key(raw: str) -> str:
    key = raw.strip().lower()
    prefix = ENV_PREFIX.lower()
    return key[len(prefix):] if key.startswith(prefix) else key


def _coerce(name: str, value) -> object:
    kind = _TYPES[name]
    if not isinstance(value, str):
        return value
    text = value.strip()
    if kind in (bool, "bool"):
        if text.lower() in ("1", "true", "yes", "on"):
            return True
        if text.lower() in ("0", "false", "no", "off", ""):
            return False
        raise PipelineConfigError(f"{name} must be a boolean (got {value!r})")
    if kind in (int, "int"):
        try:
            return int(text.replace("_", ""))
        except ValueError:
            raise PipelineConfigError(f"{name} must be an integer (got {value!r})")
    return text


def _apply(values: Dict[str, object], source: Mapping[str, Optional[str]], origin: str,
           strict: bool) -> None:
    for raw, value in source.items():
        if value is None:
            continue
        name = _key(raw)
        if name not in _TYPES:
            if strict:
                raise PipelineConfigError(f"unknown configuration key {raw!r} in {origin}")
            continue
        values[name] = _coerce(name, value)


def get_pipeline_config(path: Optional[str] = None,
                        overrides: Optional[Mapping[str, object]] = None) -> PipelineConfig:
    """Get and validate the pipeline configuration from files, environment and overrides."""
    values: Dict[str, object] = {}
    if path is not None:
        if not os.path.isfile(path):
            raise PipelineConfigError(f"configuration file {path} does not exist")
        _apply(values, dotenv_values(path), path, strict=True)

    load_dotenv()
    environment = {k: v for k, v in os.environ.items() if k.startswith(ENV_PREFIX)}
    _apply(values, environment, "the environment", strict=True)

    if overrides:
        _apply(values, {k: v for k, v in overrides.items() if v is not None}, "overrides", strict=True)

    config = PipelineConfig(**values)
    config.validate()
    logger.debug("pipeline configuration: %s", config.to_dict())
    return config


def validate_environment(path: Optional[str] = None) -> bool:
    """Validate the configuration at startup and report the result on stdout"""
    try:
        get_pipeline_config(path)
        print("✓ Pipeline configuration validated successfully")
        return True
    except PipelineConfigError as e:
        print("\n" + "=" * 70)
        print("✗ CRITICAL: Pipeline configuration error!")
        print("=" * 70)
        print(f"Error: {e}")
        print("\nRecognised keys (in a --config file, .env, or with the GORLAB_ prefix):")
        for name, default in PipelineConfig().to_dict().items():
            print(f"  {ENV_PREFIX}{name.upper()}={default}")
        print("=" * 70 + "\n")
        print("WARNING: Commands will fail until this is fixed\n")
        return False

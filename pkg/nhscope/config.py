"""
Configuration management for nhscope
Model specifications, run configuration, environment settings and figure presets
"""

import copy
import json
import math
import os
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from nhscope.exceptions import ConfigError, InvalidSpecError


class ModelVariant(Enum):
    """Available model families"""
    SSH = "ssh"
    TWO_LEVEL = "two_level"
    QUASICRYSTAL = "quasicrystal"
    PT_SSH = "pt_ssh"
    STURM_LIOUVILLE = "sturm_liouville"
    EXTERNAL = "external"


class Boundary(Enum):
    OPEN = "open"
    PERIODIC = "periodic"


class CommandType(Enum):
    """CLI commands"""
    SWEEP = "sweep"
    SPECTRUM = "spectrum"
    EDGE = "edge"
    FINITE_SIZE = "finite-size"
    BLOCH = "bloch"
    BOUND = "bound"
    VERIFY_SL = "verify-sl"
    CHECK = "check"


class JobStatus(Enum):
    """Job execution status"""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


# Parameter names per variant, in the order builders take them
PARAMETERS: Dict[ModelVariant, Tuple[str, ...]] = {
    ModelVariant.SSH: ("t1", "t2", "g"),
    ModelVariant.TWO_LEVEL: ("gamma",),
    ModelVariant.QUASICRYSTAL: ("JR", "JL", "V", "alpha_num", "alpha_den"),
    ModelVariant.PT_SSH: ("u", "v", "w", "k"),
    ModelVariant.STURM_LIOUVILLE: ("t0", "g"),
    ModelVariant.EXTERNAL: (),
}

# Variants that carry a lattice size and a boundary condition
LATTICE_VARIANTS = (ModelVariant.SSH, ModelVariant.QUASICRYSTAL, ModelVariant.STURM_LIOUVILLE)

_DEFAULTS: Dict[ModelVariant, Dict[str, Any]] = {
    ModelVariant.SSH: {
        "params": {"t1": 0.5, "t2": 1.0, "g": 0.1}, "size": 150, "boundary": Boundary.OPEN,
    },
    ModelVariant.TWO_LEVEL: {"params": {"gamma": 1.0}},
    ModelVariant.QUASICRYSTAL: {
        "params": {"JR": 1.0, "JL": 0.5, "V": 0.5, "alpha_num": 239, "alpha_den": 169},
        "size": 169, "boundary": Boundary.PERIODIC,
    },
    ModelVariant.PT_SSH: {"params": {"u": 0.5, "v": 0.8, "w": 0.7, "k": 0.0}},
    ModelVariant.STURM_LIOUVILLE: {
        "params": {"t0": 1.0, "g": 1.5}, "size": 50, "boundary": Boundary.OPEN,
    },
    ModelVariant.EXTERNAL: {"params": {}},
}


@dataclass(frozen=True)
class ModelSpec:
    """Tagged description of one model: variant, parameters, size and boundary"""
    variant: ModelVariant
    params: Mapping[str, float] = field(default_factory=dict)
    size: Optional[int] = None
    boundary: Optional[Boundary] = None

    def __post_init__(self):
        allowed = PARAMETERS[self.variant]
        unknown = sorted(set(self.params) - set(allowed))
        if unknown:
            raise InvalidSpecError(
                f"Unknown parameter(s) {unknown} for model '{self.variant.value}'; "
                f"valid parameters: {list(allowed)}"
            )
        for name, value in self.params.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise InvalidSpecError(f"Parameter '{name}' must be a finite real number, got {value!r}")
        if self.size is not None and (isinstance(self.size, bool) or int(self.size) != self.size or self.size < 2):
            raise InvalidSpecError(f"size must be an integer >= 2, got {self.size!r}")
        if self.variant == ModelVariant.QUASICRYSTAL:
            num = self.params.get("alpha_num")
            den = self.params.get("alpha_den")
            if num is not None and den is not None:
                if num != int(num) or den != int(den) or num <= 0 or den <= 0:
                    raise InvalidSpecError("alpha_num and alpha_den must be positive integers")
                if math.gcd(int(num), int(den)) != 1:
                    raise InvalidSpecError(f"alpha_num/alpha_den = {num}/{den} is not in lowest terms")

    @classmethod
    def default(cls, variant: Union[ModelVariant, str], **params: float) -> 'ModelSpec':
        """Default spec for a variant, with parameter overrides"""
        variant = ModelVariant(variant)
        base = _DEFAULTS[variant]
        merged = {**base["params"], **params}
        return cls(variant=variant, params=merged, size=base.get("size"), boundary=base.get("boundary"))

    def param(self, name: str) -> float:
        try:
            return self.params[name]
        except KeyError:
            raise InvalidSpecError(f"Model '{self.variant.value}' has no parameter '{name}' set") from None

    def with_param(self, name: str, value: float) -> 'ModelSpec':
        """Copy with one parameter replaced (the sweep axis)"""
        if name not in PARAMETERS[self.variant]:
            raise InvalidSpecError(
                f"'{name}' is not a parameter of model '{self.variant.value}'; "
                f"valid axes: {list(PARAMETERS[self.variant])}"
            )
        return replace(self, params={**self.params, name: float(value)})

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['variant'] = self.variant.value
        data['params'] = dict(self.params)
        data['boundary'] = self.boundary.value if self.boundary else None
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ModelSpec':
        data = dict(data)
        data['variant'] = ModelVariant(data['variant'])
        if data.get('boundary') is not None:
            data['boundary'] = Boundary(data['boundary'])
        return cls(**data)


@dataclass
class ScopeSettings:
    """Process-wide settings read from the environment"""
    threads: int = 1
    log_level: str = "INFO"
    log_file: str = ""
    real_tol: float = 1e-10

    @classmethod
    def from_environment(cls) -> 'ScopeSettings':
        """Create settings from NHSCOPE_* environment variables"""
        try:
            threads = int(os.getenv("NHSCOPE_THREADS", "1"))
            real_tol = float(os.getenv("NHSCOPE_REAL_TOL", "1e-10"))
        except ValueError as e:
            raise ConfigError(f"Invalid NHSCOPE_* environment value: {e}") from e
        if threads < 1:
            raise ConfigError("NHSCOPE_THREADS must be >= 1", field="NHSCOPE_THREADS")
        if not real_tol > 0:
            raise ConfigError("NHSCOPE_REAL_TOL must be > 0", field="NHSCOPE_REAL_TOL")
        return cls(
            threads=threads,
            log_level=os.getenv("NHSCOPE_LOG_LEVEL", "INFO"),
            log_file=os.getenv("NHSCOPE_LOG_FILE", ""),
            real_tol=real_tol,
        )


_SIZE_ALIASES = ("cells", "sites", "L")


class ModelConfig(BaseModel):
    """Model section of a run configuration"""
    model_config = ConfigDict(extra="forbid")

    variant: ModelVariant = ModelVariant.SSH
    params: Dict[str, float] = Field(default_factory=dict)
    size: Optional[int] = None
    boundary: Optional[Boundary] = None

    @model_validator(mode="before")
    @classmethod
    def _fold_flat_keys(cls, data: Any) -> Any:
        # {"variant": "quasicrystal", "JR": 1, "L": 169} is accepted as shorthand
        if not isinstance(data, dict):
            return data
        data = dict(data)
        params = dict(data.pop("params", None) or {})
        for alias in _SIZE_ALIASES:
            if alias in data:
                data["size"] = data.pop(alias)
        for key in [k for k in data if k not in ("variant", "size", "boundary")]:
            params[key] = data.pop(key)
        data["params"] = params
        return data

    @field_validator("size")
    @classmethod
    def _size_at_least_two(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 2:
            raise ValueError("size must be >= 2")
        return value

    def to_spec(self) -> ModelSpec:
        """Merge with the variant defaults into a validated ModelSpec"""
        base = _DEFAULTS[self.variant]
        try:
            return ModelSpec(
                variant=self.variant,
                params={**base["params"], **self.params},
                size=self.size if self.size is not None else base.get("size"),
                boundary=self.boundary if self.boundary is not None else base.get("boundary"),
            )
        except InvalidSpecError as e:
            raise ConfigError(str(e), field="model") from e


class GridConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    axis: Optional[str] = None
    lo: Optional[float] = None
    hi: Optional[float] = None
    steps: int = 300

    @field_validator("steps")
    @classmethod
    def _steps_at_least_three(cls, value: int) -> int:
        if value < 3:
            raise ValueError("steps must be >= 3")
        return value

    @model_validator(mode="after")
    def _ordered_bounds(self) -> 'GridConfig':
        if self.lo is not None and self.hi is not None and not self.lo < self.hi:
            raise ValueError(f"lo ({self.lo}) must be < hi ({self.hi})")
        return self


class DetectorConfig(BaseModel):
    """Jump detector parameters; floors default per series kind"""
    model_config = ConfigDict(extra="forbid")

    w: int = Field(default=10, ge=1)
    kappa: float = Field(default=10.0, gt=0)
    floor: float = Field(default=1e-3, ge=0)
    deta_floor_fraction: float = Field(default=1e-2, ge=0)


_COMMAND_VARIANTS = {
    CommandType.BLOCH.value: ModelVariant.PT_SSH.value,
    CommandType.VERIFY_SL.value: ModelVariant.STURM_LIOUVILLE.value,
}


class RunConfig(BaseModel):
    """One CLI invocation"""
    model_config = ConfigDict(extra="forbid")

    command: CommandType
    model: ModelConfig = Field(default_factory=ModelConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    detector: DetectorConfig = Field(default_factory=DetectorConfig)
    output: Optional[str] = None
    format: Literal["csv", "json"] = "csv"
    sizes: List[int] = Field(default_factory=list)
    blocks: List[int] = Field(default_factory=list)
    states: List[int] = Field(default_factory=list)
    matrix: Optional[str] = None
    tol: Optional[float] = Field(default=None, gt=0)
    method: Literal["eta", "overlap"] = "eta"
    preset: Optional[str] = None

    @model_validator(mode="before")
    @classmethod
    def _command_default_variant(cls, data: Any) -> Any:
        # bloch and verify-sl each apply to a single model family
        if not isinstance(data, dict):
            return data
        command = data.get("command")
        command = command.value if isinstance(command, CommandType) else command
        if command in _COMMAND_VARIANTS:
            model = dict(data.get("model") or {})
            model.setdefault("variant", _COMMAND_VARIANTS[command])
            data = {**data, "model": model}
        return data

    @model_validator(mode="after")
    def _consistent_with_command(self) -> 'RunConfig':
        if self.command == CommandType.BOUND and not self.blocks:
            raise ValueError("blocks: the bound command needs at least one Jordan block size")
        if self.command == CommandType.FINITE_SIZE and not self.sizes:
            raise ValueError("sizes: the finite-size command needs at least one system size")
        if self.command == CommandType.SWEEP and self.model.variant == ModelVariant.EXTERNAL:
            raise ValueError("model.variant: an external matrix has no parameter to sweep")
        if any(b < 1 for b in self.blocks):
            raise ValueError("blocks: Jordan block sizes must be >= 1")
        if self.sizes and (any(s < 2 for s in self.sizes) or sorted(set(self.sizes)) != self.sizes):
            raise ValueError("sizes: must be strictly increasing integers >= 2")
        return self


PRESETS: Dict[str, Dict[str, Any]] = {
    "fig1b": {
        "command": "sweep",
        "model": {"variant": "ssh", "params": {"t2": 1.0, "g": 0.1}, "size": 150, "boundary": "open"},
        "grid": {"axis": "t1", "lo": 0.05, "hi": 1.5, "steps": 300},
        # the edge-mode jump is of order 1/(N(N-1)) at N=300
        "detector": {"floor": 1e-5},
    },
    "fig2": {
        "command": "sweep",
        "model": {"variant": "two_level"},
        "grid": {"axis": "gamma", "lo": 0.01, "hi": 3.0, "steps": 300},
    },
    "fig3": {
        "command": "sweep",
        "model": {
            "variant": "quasicrystal",
            "params": {"JR": 1.0, "JL": 0.5, "alpha_num": 239, "alpha_den": 169},
            "size": 169, "boundary": "periodic",
        },
        "grid": {"axis": "V", "lo": 0.2, "hi": 1.8, "steps": 161},
        "detector": {"kappa": 5.0},
    },
    "fig4": {
        "command": "bloch",
        "model": {"variant": "pt_ssh", "params": {"u": 0.5, "v": 0.8, "w": 0.7}},
        "grid": {"axis": "k", "lo": -math.pi, "hi": math.pi, "steps": 400},
    },
    "fig5": {
        "command": "sweep",
        "model": {"variant": "sturm_liouville", "params": {"t0": 1.0}, "size": 50, "boundary": "open"},
        "grid": {"axis": "g", "lo": 0.5, "hi": 2.0, "steps": 151},
    },
    "fig-sm-finite-size": {
        "command": "finite-size",
        "model": {"variant": "ssh", "params": {"t2": 1.0, "g": 0.1}, "boundary": "open"},
        "grid": {"axis": "t1", "lo": 0.05, "hi": 0.89, "steps": 85},
        "sizes": [50, 100, 150, 200, 300, 400],
    },
}


def _deep_merge(base: Dict[str, Any], update: Mapping[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in update.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


class ConfigManager:
    """Loads and validates run configurations"""

    def __init__(self, settings: Optional[ScopeSettings] = None):
        self.settings = settings or ScopeSettings.from_environment()

    @staticmethod
    def valid_keys() -> List[str]:
        return list(RunConfig.model_fields)

    def _check_keys(self, data: Mapping[str, Any], origin: str):
        unknown = sorted(set(data) - set(self.valid_keys()))
        if unknown:
            raise ConfigError(
                f"Unknown key(s) {unknown} in {origin}; valid keys: {self.valid_keys()}",
                field=unknown[0],
            )

    def read_file(self, path: Union[str, Path]) -> Dict[str, Any]:
        """Read a JSON config file into a plain dict"""
        path = Path(path)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"Config file not found: {path}", field="config") from None
        except json.JSONDecodeError as e:
            raise ConfigError(f"Config file {path} is not valid JSON: {e}", field="config") from e
        if not isinstance(data, dict):
            raise ConfigError(f"Config file {path} must contain a JSON object", field="config")
        self._check_keys(data, str(path))
        return data

    def load_config(self,
                    path: Optional[Union[str, Path]] = None,
                    overrides: Optional[Mapping[str, Any]] = None,
                    preset: Optional[str] = None) -> RunConfig:
        """Build a RunConfig; precedence is preset < file < overrides, and an explicit preset wins"""
        file_data = self.read_file(path) if path is not None else {}
        overrides = dict(overrides or {})
        self._check_keys(overrides, "flags")

        preset = preset or overrides.get("preset") or file_data.get("preset")
        merged: Dict[str, Any] = {}
        if preset:
            if preset not in PRESETS:
                raise ConfigError(f"Unknown preset '{preset}'; available: {sorted(PRESETS)}", field="preset")
            merged = _deep_merge(merged, PRESETS[preset])
        merged = _deep_merge(merged, file_data)
        merged = _deep_merge(merged, overrides)
        if preset:
            merged["preset"] = preset
        return self.validate(merged)

    @staticmethod
    def validate(data: Mapping[str, Any]) -> RunConfig:
        try:
            config = RunConfig.model_validate(dict(data))
        except ValidationError as e:
            first = e.errors()[0]
            loc = ".".join(str(part) for part in first["loc"]) or "config"
            raise ConfigError(f"Invalid configuration field '{loc}': {first['msg']}", field=loc) from e
        config.model.to_spec()
        return config


def load_config(path: Union[str, Path], overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """Load a JSON run configuration, letting overrides win over file values"""
    return ConfigManager().load_config(path, overrides)

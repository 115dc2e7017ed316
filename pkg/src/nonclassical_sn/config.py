"""Problem configuration, validation and flat TOML round-tripping."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .freepath import ModelKind

SOLVERS = ("si", "s2sa")
STOPPING_NORMS = ("pointwise", "l2")


class ConfigError(ValueError):
    """Invalid configuration; ``key`` names the offending entry."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class ProblemConfig:
    """One slab problem. Field names double as config-file keys.

    ``x`` is the slab length, ``n`` the number of ordinates, ``m`` the
    Laguerre truncation order, ``q`` the constant isotropic source and
    ``fp_nodes`` the free-path quadrature size (``None`` means ``m``).
    """

    x: float = 20.0
    cells: int = 200
    n: int = 16
    m: int = 10
    c: float = 0.999
    sigma_t: float = 1.0
    model: str = "exponential"
    q: float = 1.0
    xi: float = 1e-6
    max_iterations: int = 100_000
    solver: str = "si"
    fp_nodes: int | None = None
    stopping_norm: str = "l2"

    def __post_init__(self):
        validate(self)

    @property
    def free_path_nodes(self) -> int:
        return self.m if self.fp_nodes is None else self.fp_nodes

    def replace(self, **changes) -> "ProblemConfig":
        return dataclasses.replace(self, **changes)


FIELDS = {f.name: f for f in dataclasses.fields(ProblemConfig)}
INT_KEYS = {"cells", "n", "m", "max_iterations", "fp_nodes"}
FLOAT_KEYS = {"x", "c", "sigma_t", "q", "xi"}



def validate(cfg: ProblemConfig) -> None:
    for key in INT_KEYS:
        value = getattr(cfg, key)
        if value is None and key == "fp_nodes":
            continue
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(key, f"expected an integer, got {value!r}")
    for key in FLOAT_KEYS:
        value = getattr(cfg, key)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(key, f"expected a number, got {value!r}")
    if not 0.0 <= cfg.c < 1.0:
        raise ConfigError("c", "c must lie in [0,1)")
    if cfg.n < 2 or cfg.n % 2:
        raise ConfigError("n", "N must be even")
    if cfg.m < 0:
        raise ConfigError("m", "M must be nonnegative")
    if cfg.cells < 1:
        raise ConfigError("cells", "cells must be positive")
    if cfg.max_iterations < 1:
        raise ConfigError("max_iterations", "max_iterations must be positive")
    if cfg.fp_nodes is not None and cfg.fp_nodes < 1:
        raise ConfigError("fp_nodes", "fp_nodes must be positive")
    if not cfg.x > 0.0:
        raise ConfigError("x", "slab length must be positive")
    if not cfg.sigma_t > 0.0:
        raise ConfigError("sigma_t", "sigma_t must be positive")
    if not cfg.xi > 0.0:
        raise ConfigError("xi", "xi must be positive")
    if cfg.model not in {k.value for k in ModelKind}:
        raise ConfigError("model", f"unknown model {cfg.model!r}")
    if cfg.solver not in SOLVERS:
        raise ConfigError("solver", f"solver must be one of {SOLVERS}")
    if cfg.stopping_norm not in STOPPING_NORMS:
        raise ConfigError("stopping_norm", f"stopping_norm must be one of {STOPPING_NORMS}")


def _coerce(key: str, value):
    if key in FLOAT_KEYS and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    return value


def from_mapping(values: dict, base: ProblemConfig | None = None) -> ProblemConfig:
    """Build a config from ``values``; keys missing there come from ``base``.

    Without ``base`` every key except ``fp_nodes``, ``max_iterations`` and
    ``stopping_norm`` is required.
    """
    unknown = sorted(set(values) - set(FIELDS))
    if unknown:
        raise ConfigError(unknown[0], "unknown key")
    if base is None:
        optional = {"fp_nodes", "max_iterations", "stopping_norm"}
        missing = [k for k in FIELDS if k not in values and k not in optional]
        if missing:
            raise ConfigError(missing[0], "missing required field")
        base = ProblemConfig()
    merged = {k: getattr(base, k) for k in FIELDS}
    merged.update({k: _coerce(k, v) for k, v in values.items()})
    try:
        return ProblemConfig(**merged)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError("config", str(exc)) from exc


def read_config_file(path: str | Path) -> dict:
    with open(path, "rb") as fh:
        try:
            return tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError("config", f"cannot parse {path}: {exc}") from exc


def parse_config(path: str | Path | None = None, overrides: dict | None = None,
                 base: ProblemConfig | None = None) -> ProblemConfig:
    """Read a flat TOML config file and apply ``overrides`` on top.

    ``None`` values in ``overrides`` are ignored, so an argparse namespace
    can be passed through directly.
    """
    values = read_config_file(path) if path is not None else {}
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return from_mapping(values, base)


def _format(value) -> str:
    if isinstance(value, str):
        return f'"{value}"'
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_config(cfg: ProblemConfig) -> str:
    """Serialize ``cfg`` as flat TOML; ``parse_config`` reads it back unchanged."""
    lines = []
    for key in FIELDS:
        value = getattr(cfg, key)
        if value is None:
            continue
        lines.append(f"{key} = {_format(value)}")
    return "\n".join(lines) + "\n"

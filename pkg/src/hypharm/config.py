"""Run configuration: flat sectioned key-value files plus flag overrides.

The format is deliberately diff-able (one `key = value` per line under
[section] headers) so experiment provenance can live in version control.
Parsing reports file and line number on every error; the canonical
serialization feeds the config hash embedded in every report.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, fields, replace

__all__ = ["ConfigError", "RunConfig", "parse_config_text", "load_config"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    # [grids]
    r_max: float = 6.0
    n_r: int = 256
    n_theta: int = 128
    lambda_max: float = 12.0
    n_lambda: int = 256
    h_max: float = 16.0
    n_h: int = 512
    n_b: int = 128
    # [time]
    horizon: float = 4.0
    n_t: int = 97
    # [experiment]
    experiment: str = "selftest"
    multiplier: str = "schrodinger"
    # [smoothing]
    delta: float = 0.6
    chi_inner: float = 1.0
    chi_outer: float = 2.0
    family_size: int = 7
    gain_k: int = 1
    # [run]
    out_dir: str = "out"
    seed: int = 0
    refine: bool = False
    emit_json: bool = True
    emit_svg: bool = False

    def validate(self):
        for name in ("n_r", "n_theta", "n_lambda", "n_h", "n_b", "n_t"):
            if getattr(self, name) < 8:
                raise ConfigError(f"{name} must be >= 8")
        if self.r_max > 12.0:
            raise ConfigError("r_max must be <= 12 (sinh overflows the "
                              "quadrature weights beyond that)")
        if self.r_max <= 0 or self.lambda_max <= 0 or self.h_max <= 0:
            raise ConfigError("grid extents must be positive")
        if self.delta <= 0.5:
            raise ConfigError("delta must exceed 1/2")
        if self.chi_inner >= self.chi_outer:
            raise ConfigError("chi_inner must be below chi_outer")
        if self.gain_k < 0:
            raise ConfigError("gain_k must be nonnegative")
        return self

    def refined(self) -> "RunConfig":
        return replace(self, n_r=2 * self.n_r, n_theta=2 * self.n_theta,
                       n_lambda=2 * self.n_lambda, n_h=2 * self.n_h,
                       n_b=2 * self.n_b, n_t=2 * self.n_t,
                       horizon=2.0 * self.horizon)

    def canonical_text(self) -> str:
        lines = []
        for f in sorted(fields(self), key=lambda f: f.name):
            lines.append(f"{f.name} = {getattr(self, f.name)!r}")
        return "\n".join(lines) + "\n"

    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()[:16]


_SECTIONS = {
    "grids": {"r_max", "n_r", "n_theta", "lambda_max", "n_lambda", "h_max",
              "n_h", "n_b"},
    "time": {"horizon", "n_t"},
    "experiment": {"experiment", "multiplier"},
    "smoothing": {"delta", "chi_inner", "chi_outer", "family_size", "gain_k"},
    "run": {"out_dir", "seed", "refine", "emit_json", "emit_svg"},
}
_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(name: str, raw: str, where: str):
    typ = _FIELD_TYPES[name]
    raw = raw.strip()
    try:
        if typ == "int":
            return int(raw)
        if typ == "float":
            return float(raw)
        if typ == "bool":
            if raw.lower() in ("1", "true", "yes", "on"):
                return True
            if raw.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError("not a boolean")
        return raw
    except ValueError as exc:
        raise ConfigError(f"{where}: bad value for {name!r}: {raw!r} ({exc})")


def parse_config_text(text: str, source: str = "<config>") -> RunConfig:
    values: dict = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        where = f"{source}:{lineno}"
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in _SECTIONS:
                raise ConfigError(f"{where}: unknown section [{section}]")
            continue
        if "=" not in line:
            raise ConfigError(f"{where}: expected key = value")
        key, _, val = line.partition("=")
        key = key.strip()
        if section is None:
            raise ConfigError(f"{where}: key {key!r} outside any section")
        if key not in _SECTIONS[section]:
            raise ConfigError(f"{where}: unknown key {key!r} in [{section}]")
        values[key] = _coerce(key, val, where)
    return RunConfig(**values).validate()


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as f:
        return parse_config_text(f.read(), source=str(path))

"""Run configuration: flags > KIRCHHOFF_* environment > defaults."""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields

ENV_PREFIX = "KIRCHHOFF_"


@dataclass(frozen=True)
class Config:
    tol: float = 1e-12  # integrator local error tolerance
    n_grid: int = 4096  # quadrature intervals on [0, r_max]
    r_max: float | None = None  # default 50 / sqrt(m)
    eps_eq: float = 1e-9  # relative band for the double-root regime
    pde_points: int = 4096
    pohozaev_tol: float = 1e-5
    pde_tol: float = 1e-4
    action_tol: float = 1e-5
    trials: int = 500
    seed: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def _convert(name: str, raw: str):
    if name == "r_max":
        return None if raw.lower() in ("", "none") else float(raw)
    kind = {f.name: f.type for f in fields(Config)}[name]
    return int(raw) if kind == "int" else float(raw)


def resolve(overrides: dict | None = None, environ=None) -> Config:
    """Build a Config; ``overrides`` holds flag values (None means unset)."""
    environ = os.environ if environ is None else environ
    overrides = overrides or {}
    values = {}
    for f in fields(Config):
        flag = overrides.get(f.name)
        if flag is not None:
            values[f.name] = flag
            continue
        raw = environ.get(ENV_PREFIX + f.name.upper())
        if raw is not None:
            values[f.name] = _convert(f.name, raw)
    return Config(**values)

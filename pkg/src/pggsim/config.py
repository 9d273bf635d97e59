"""Run configuration: flat key = value files, aliases, defaults, round-trip.

Keys follow the model's parameter tables: M, N, tt, t, g, c, r, u for the
game; s/w/beta, pr, pe, mu, sigma for learning; n, p for the generated
network; plus artifact keys mode, density, dt, steps, x0/y0/z0, seed, out,
plot. `mu`/`sigma` are the normal-increment parameters, not the mutation
rate (that is `u`).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .agent_sim import LearningParams, Population
from .dynamics import DynamicsKind, DynamicsMode
from .errors import ConfigError
from .network import GraphParams
from .payoffs import PGGParams, SimplexState

_ALIASES = {"s": "beta", "w": "beta"}

_MODES = {kind.value: kind for kind in DynamicsKind}


@dataclass(frozen=True)
class RunConfig:
    """One run's full parameter set, defaulting to the model's table values."""

    M: int = 100
    N: int = 5
    tt: int = 1
    t: int = 10000
    g: float = 0.5
    c: float = 1.0
    r: float = 3.0
    u: float = 1e-10
    beta: float = 1.0
    pr: float = 1.0
    pe: float = 1e-3
    mu: float = 0.0
    sigma: float = 0.0
    n: int = 100
    p: float = 0.1
    mode: str = "mutator"
    density: float = 1.0
    dt: float = 0.01
    steps: int = 100000
    x0: float = 0.9
    y0: float = 0.05
    z0: float = 0.05
    seed: int = 1
    out: str | None = None
    plot: bool = False

    def __post_init__(self):
        # reuse the domain types' validation so errors name the field
        self.pgg_params()
        self.learning_params()
        self.graph_params()
        self.dynamics_mode()
        self.initial_state()
        if self.tt != 1:
            raise ConfigError(
                f"tt (rounds per generation) must be 1, got {self.tt}: each update event "
                "realizes payoffs from exactly one round"
            )
        if self.t < 0:
            raise ConfigError(f"t (generations) must be nonnegative, got {self.t}")
        if self.dt <= 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if self.steps < 1:
            raise ConfigError(f"steps must be at least 1, got {self.steps}")

    def pgg_params(self) -> PGGParams:
        return PGGParams(M=self.M, N=self.N, c=self.c, r=self.r, g=self.g, u=self.u)

    def learning_params(self) -> LearningParams:
        return LearningParams(
            beta=self.beta, pr=self.pr, pe=self.pe, mu_inc=self.mu, sigma_inc=self.sigma
        )

    def graph_params(self) -> GraphParams:
        return GraphParams(n=self.n, p=self.p, seed=self.seed)

    def dynamics_mode(self) -> DynamicsMode:
        if self.mode not in _MODES:
            raise ConfigError(
                f"mode must be one of {sorted(_MODES)}, got {self.mode!r}"
            )
        return DynamicsMode(kind=_MODES[self.mode], density=self.density)

    def initial_state(self) -> SimplexState:
        return SimplexState(self.x0, self.y0, self.z0)

    def initial_population(self) -> Population:
        return Population.from_fractions(self.M, self.x0, self.y0, self.z0)


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}
_INT_KEYS = {"M", "N", "tt", "t", "n", "steps", "seed"}
_FLOAT_KEYS = {
    "g", "c", "r", "u", "beta", "pr", "pe", "mu", "sigma", "p", "density",
    "dt", "x0", "y0", "z0",
}
_BOOL_KEYS = {"plot"}


def _parse_value(key: str, raw: str, line: int | None):
    text = raw.strip()
    try:
        if key in _INT_KEYS:
            value = float(text)
            if not value.is_integer():
                raise ValueError
            return int(value)
        if key in _FLOAT_KEYS:
            return float(text)
        if key in _BOOL_KEYS:
            lowered = text.lower()
            if lowered in ("true", "1", "yes", "on"):
                return True
            if lowered in ("false", "0", "no", "off"):
                return False
            raise ValueError
    except ValueError:
        raise ConfigError(f"invalid value for {key}: {raw!r}", line) from None
    return text  # string keys: mode, out


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> RunConfig:
    """Build a RunConfig from an optional file plus override flags.

    The file holds one `key = value` pair per line; `#` starts a comment.
    Override values win over file values. Unknown keys and duplicate keys
    are errors; so is any value violating a parameter invariant.
    """
    values: dict = {}
    if path is not None:
        lines = Path(path).read_text().splitlines()
        unknown: list[str] = []
        for lineno, raw_line in enumerate(lines, start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value', got {raw_line!r}", lineno)
            raw_key, raw_value = line.split("=", 1)
            key = _ALIASES.get(raw_key.strip(), raw_key.strip())
            if key not in _FIELDS:
                unknown.append(f"{raw_key.strip()} (line {lineno})")
                continue
            if key in values:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}", lineno)
            values[key] = _parse_value(key, raw_value, lineno)
        if unknown:
            raise ConfigError("unknown config keys: " + ", ".join(unknown))

    for raw_key, raw_value in (overrides or {}).items():
        key = _ALIASES.get(raw_key, raw_key)
        if key not in _FIELDS:
            raise ConfigError(f"unknown config key: {raw_key}")
        values[key] = (
            _parse_value(key, raw_value, None) if isinstance(raw_value, str) else raw_value
        )

    try:
        return RunConfig(**values)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def save_config(cfg: RunConfig, path: str | Path) -> None:
    """Write every key back out so load_config reproduces the identical config."""
    lines = []
    for name in _FIELDS:
        value = getattr(cfg, name)
        if value is None:
            continue
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{name} = {value}")
    Path(path).write_text("\n".join(lines) + "\n")

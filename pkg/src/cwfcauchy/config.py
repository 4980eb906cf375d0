"""Experiment configuration: a flat ``key = value`` file read with configparser.

Every key is optional; defaults reproduce the published experiment
(32 x 128 grid, T = 0.5, beta = 0.00063, lambda in {0, 3, 4}, 5 % noise,
step 1e-8, 10 000 gradient steps). Lists are comma separated.
"""
from __future__ import annotations

import configparser
import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .grid import make_grid
from .minimizer import Method, MinimizerConfig
from .model import NonlinearityKind, paper_problem, zero_problem
from .noise import NoiseSpec

SECTION = "experiment"


@dataclass
class ExperimentConfig:
    nx: int = 32
    nt: int = 128
    t_half: float = 0.5
    problem: str = "paper"  # "paper" or "zero"
    a: float = 0.0
    nonlinearity: str = "none"
    lambdas: list = field(default_factory=lambda: [0.0, 3.0, 4.0])
    beta: float = 0.00063
    noise_level: float = 0.05
    seed: int = 0
    shared_noise: bool = False
    method: str = "gd"
    gamma: float = 1e-8
    iterations: int = 10_000
    record_every: int = 100
    known_initial: bool = False
    alpha: float | None = None
    slices: list = field(default_factory=lambda: [0.6, 0.8])
    out: str = "out"

    def validate(self) -> "ExperimentConfig":
        try:
            self.grid()
            self.problem_spec()
            self.minimizer_config()
            NoiseSpec(self.noise_level, self.seed)
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc
        if not self.lambdas:
            raise ConfigError("lambda list must not be empty")
        if any(lam < 0 for lam in self.lambdas):
            raise ConfigError("lambda values must be >= 0")
        if not 0.0 < self.beta < 1.0:
            raise ConfigError(f"beta must lie in (0, 1), got {self.beta}")
        if self.alpha is not None and not 0.0 < self.alpha < 1.0 - self.t_half**2:
            raise ConfigError(f"alpha must lie in (0, {1.0 - self.t_half**2})")
        return self

    def grid(self):
        return make_grid(self.nx, self.nt, self.t_half)

    def problem_spec(self):
        kind = NonlinearityKind.from_name(self.nonlinearity)
        if self.problem == "paper":
            return paper_problem(self.a, kind)
        if self.problem == "zero":
            return zero_problem(self.a, kind)
        raise ValueError(f"unknown problem {self.problem!r}; use 'paper' or 'zero'")

    def noise_spec(self) -> NoiseSpec:
        return NoiseSpec(self.noise_level, self.seed, self.shared_noise)

    def minimizer_config(self) -> MinimizerConfig:
        return MinimizerConfig(Method(self.method), self.gamma, self.iterations, self.record_every)


_INT = {"nx", "nt", "seed", "iterations", "record_every"}
_FLOAT = {"t_half", "a", "beta", "noise_level", "gamma"}
_BOOL = {"shared_noise", "known_initial"}
_LIST = {"lambda": "lambdas", "slices": "slices"}
_STR = {"problem", "nonlinearity", "method", "out"}


def _parse_list(text):
    return [float(v) for v in text.split(",") if v.strip()]


def load_config(path=None, overrides=None) -> ExperimentConfig:
    cfg = ExperimentConfig()
    if path is not None:
        text = Path(path).read_text()
        parser = configparser.ConfigParser()
        try:
            if not any(line.strip().startswith("[") for line in text.splitlines()):
                text = f"[{SECTION}]\n" + text
            parser.read_string(text)
        except configparser.Error as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        if not parser.has_section(SECTION):
            raise ConfigError(f"{path}: missing [{SECTION}] section")
        for key, raw in parser.items(SECTION):
            _set(cfg, key, raw, parser, path)
    for key, value in (overrides or {}).items():
        if value is not None:
            setattr(cfg, key, value)
    return cfg.validate()


def _set(cfg, key, raw, parser, path):
    try:
        if key in _INT:
            setattr(cfg, key, int(raw))
        elif key in _FLOAT:
            setattr(cfg, key, float(raw))
        elif key in _BOOL:
            setattr(cfg, key, parser.getboolean(SECTION, key))
        elif key in _LIST:
            setattr(cfg, _LIST[key], _parse_list(raw))
        elif key in _STR:
            setattr(cfg, key, raw.strip())
        elif key == "alpha":
            cfg.alpha = None if raw.strip().lower() in ("", "none") else float(raw)
        else:
            raise ConfigError(f"{path}: unknown key {key!r}")
    except ValueError as exc:
        raise ConfigError(f"{path}: bad value for {key!r}: {raw!r}") from exc


def write_manifest(cfg: ExperimentConfig, path) -> None:
    """Write the fully resolved configuration; it loads back as a config file."""
    parser = configparser.ConfigParser()
    values = {}
    for f in dataclasses.fields(cfg):
        v = getattr(cfg, f.name)
        if f.name == "lambdas":
            values["lambda"] = ",".join(repr(float(x)) for x in v)
        elif f.name == "slices":
            values["slices"] = ",".join(repr(float(x)) for x in v)
        elif isinstance(v, float):
            values[f.name] = repr(v)
        else:
            values[f.name] = "none" if v is None else str(v)
    parser[SECTION] = values
    with open(path, "w") as fh:
        parser.write(fh)

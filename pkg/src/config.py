"""
Configuration management for volprod.
Handles run options, tolerance overrides, environment variables and YAML files.
"""

import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

import yaml

from errors import ConfigError


class Command(Enum):
    """Command line verbs."""
    POLAR = "polar"
    SANTALO = "santalo"
    VERIFY = "verify"
    SWEEP = "sweep"
    EXPORT = "export"


class OutputFormat(Enum):
    """Supported report and figure formats."""
    JSON = "json"
    CSV = "csv"
    SVG = "svg"
    MARKDOWN = "md"


class TheoremId(Enum):
    """Verification suites."""
    T1 = "t1"
    T2 = "t2"
    T3 = "t3"
    T5 = "t5"
    T6 = "t6"
    L7 = "l7"


LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass
class Tolerances:
    """Numeric tolerances; every field may be overridden from YAML."""
    convexity: float = 1e-12
    santalo_factor: float = 1e-9
    max_iterations: int = 200
    quadrature_nodes: int = 256
    bisection_rtol: float = 1e-6


@dataclass
class RunConfig:
    """Main configuration for one volprod invocation."""
    command: Command = Command.VERIFY
    theorem: TheoremId = TheoremId.T1
    seed: int = 7
    count: int = 100
    n: Optional[int] = None
    eps: Optional[float] = None
    tol: Optional[float] = None
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    output_format: OutputFormat = OutputFormat.CSV
    overlay: bool = False
    threads: int = 4
    log_level: str = "INFO"
    tolerances: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self):
        """Apply environment overrides, then validate."""
        self._load_from_environment()
        self._validate()

    def _load_from_environment(self):
        """VOLPROD_THREADS caps parallelism; VOLPROD_LOG_LEVEL sets verbosity."""
        cap = os.getenv('VOLPROD_THREADS')
        if cap:
            try:
                self.threads = min(self.threads, int(cap))
            except ValueError:
                raise ConfigError(f"VOLPROD_THREADS must be an integer, got {cap!r}")

        self.log_level = os.getenv('VOLPROD_LOG_LEVEL', self.log_level).upper()

    def _validate(self):
        if self.seed <= 0:
            raise ConfigError("seed must be positive")

        if self.count <= 0:
            raise ConfigError("count must be positive")

        if self.threads < 1:
            raise ConfigError("threads must be at least 1")

        if self.n is not None and self.n < 3:
            raise ConfigError("n must be at least 3")

        if self.eps is not None and self.eps <= 0:
            raise ConfigError("eps must be positive")

        if self.tol is not None and self.tol <= 0:
            raise ConfigError("tol must be positive")

        if self.log_level not in LOG_LEVELS:
            raise ConfigError(f"log level must be one of {', '.join(LOG_LEVELS)}")

        for name, value in vars(self.tolerances).items():
            if value <= 0:
                raise ConfigError(f"tolerance {name} must be positive")

    @property
    def debug(self) -> bool:
        return self.log_level == "DEBUG"

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary."""
        return {
            'command': self.command.value,
            'theorem': self.theorem.value,
            'seed': self.seed,
            'count': self.count,
            'n': self.n,
            'eps': self.eps,
            'tol': self.tol,
            'input_path': self.input_path,
            'output_path': self.output_path,
            'format': self.output_format.value,
            'overlay': self.overlay,
            'threads': self.threads,
            'log_level': self.log_level,
            'tolerances': dict(vars(self.tolerances)),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunConfig':
        """Create configuration from dictionary; unknown enum values raise ConfigError."""
        kwargs: Dict[str, Any] = {}
        try:
            if 'command' in data:
                kwargs['command'] = Command(data['command'])
            if 'theorem' in data:
                kwargs['theorem'] = TheoremId(data['theorem'])
            if 'format' in data:
                kwargs['output_format'] = OutputFormat(data['format'])
        except ValueError as e:
            raise ConfigError(str(e))

        for key in ('seed', 'count', 'n', 'eps', 'tol', 'input_path', 'output_path',
                    'overlay', 'threads', 'log_level'):
            if key in data and data[key] is not None:
                kwargs[key] = data[key]

        if 'tolerances' in data:
            tol_data = data['tolerances'] or {}
            unknown = set(tol_data) - set(vars(Tolerances()))
            if unknown:
                raise ConfigError(f"unknown tolerances: {', '.join(sorted(unknown))}")
            kwargs['tolerances'] = Tolerances(**tol_data)

        return cls(**kwargs)


def load_yaml(path: str) -> Dict[str, Any]:
    """Read a YAML configuration file; an empty file yields an empty mapping."""
    with open(path, 'r', encoding='utf-8') as fh:
        data = yaml.safe_load(fh)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return data

"""Python bindings for the chfif core library.

Every function takes ``config`` as a bundled name (``"fig4"``), a JSON string,
or a dict in the same schema as the CLI config files.
"""

import json

from . import _chfif
from ._chfif import (
    ConfigError,
    ConvergenceError,
    SamplingError,
    ValidationError,
    bundled_names,
)

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "SamplingError",
    "ValidationError",
    "bundled_names",
    "load",
    "validate",
    "sample_exact",
    "classify",
    "moments",
    "dimension",
    "run_command",
]


def _text(config):
    return config if isinstance(config, str) else json.dumps(config)


def load(config):
    """Returns the normalized config as a dict."""
    return json.loads(_chfif.config_json(_text(config)))


def validate(config):
    return _chfif.validate(_text(config))


def sample_exact(config, depth=10):
    """Returns ``(x, f1, f2)`` arrays on the address grid of the given depth."""
    return _chfif.sample_exact(_text(config), depth)


def classify(config):
    return _chfif.classify(_text(config))


def moments(config, word=()):
    """Returns ``(a, b)``, the integrals of f2 and f1 over the cell of ``word``."""
    return _chfif.moments(_text(config), list(word))


def dimension(config, eps_min_exp=4, eps_max_exp=12):
    return _chfif.dimension(_text(config), eps_min_exp, eps_max_exp)


def run_command(name, config):
    """Runs a CLI command in-process; returns ``(report, exit_code, diagnostics)``."""
    return _chfif.run_command(name, _text(config))

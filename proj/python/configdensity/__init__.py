"""Configuration functionals of density fields.

Thin wrapper over the compiled ``_core`` module. Configs are plain dicts with
the same layout as the CLI's JSON files.
"""

import json

from ._core import (
    DensityField,
    Error,
    Grid,
    banach_density,
    bessel_j0,
    colinear_triple,
    load_field,
    nu_abs_circle_average_exact,
    nu_hat_closed,
    pair_correlation,
    poisson_smooth,
    save_field,
    triangle_d1,
    verify,
)
from . import _core

__all__ = [
    "DensityField",
    "Error",
    "Grid",
    "banach_density",
    "bessel_j0",
    "colinear_triple",
    "generate",
    "load_field",
    "nu_abs_circle_average_exact",
    "nu_hat_closed",
    "pair_correlation",
    "poisson_smooth",
    "run_sweep",
    "save_field",
    "triangle_d1",
    "verify",
]


def generate(config):
    """Field from a dict with ``generator``, ``grid`` and optional ``boundary``."""
    return _core.generate_json(json.dumps(config))


def run_sweep(config):
    """Runs a sweep dict; returns ``{"csv", "epsilon_num", "onset"}``."""
    return _core.run_sweep_json(json.dumps(config))

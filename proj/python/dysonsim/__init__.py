"""Open-system observables from sampled Dyson series of unitary correlators."""

import json as _json

from ._core import (
    Error,
    LindbladModel,
    NonHermitianModel,
    NumericalError,
    RateFunction,
    ValidationError,
    adjoint_dissipator_norm,
    dyson_expectation_exact,
    estimate_observable,
    expectation,
    integrate_master,
    integrate_non_hermitian,
    pauli_matrix,
    preset_names,
    required_samples,
    trace_distance,
    truncation_order,
    volterra_truncated,
)
from . import _core


def preset(name):
    """Config dict of a built-in preset."""
    return _json.loads(_core.preset_json(name))


def run_experiment(config, workers=0):
    """Run a config (dict, JSON text or preset name); returns report dict and CSV text."""
    if isinstance(config, dict):
        text = _json.dumps(config)
    elif config in _core.preset_names():
        text = _core.preset_json(config)
    else:
        text = config
    out = _core.run_experiment(text, workers)
    out["report"] = _json.loads(out["report"])
    return out


__all__ = [name for name in dir() if not name.startswith("_")]

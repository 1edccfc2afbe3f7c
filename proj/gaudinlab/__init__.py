"""Exact laboratory for the twisted Gaudin model and its classical shadow.

The heavy lifting happens in the C++ extension; this package adds a thin
convenience layer that decodes the JSON reports.
"""

import json as _json

from ._gaudinlab import ConfigError, check_names, dynamics as _dynamics
from ._gaudinlab import spectrum as _spectrum, verify as _verify

__all__ = ["ConfigError", "check_names", "dynamics", "spectrum", "verify"]


def verify(config="", checks=(), float_mode=False, seed=None):
    """Run the operator-identity verification suite and return the report dict."""
    return _json.loads(_verify(config, list(checks), float_mode, seed))


def spectrum(sector, config="", seed=None):
    """Solve one weight sector by both pipelines and return the report dict."""
    return _json.loads(_spectrum(sector, config, seed))


def dynamics(sector, state=0, t_max=0.1, steps=100, config="", seed=None):
    """Tau-root trajectories vs the integrated flow.

    Returns (summary_dict, trajectory_csv, conservation_csv).
    """
    summary, traj, cons = _dynamics(sector, state, t_max, steps, config, seed)
    return _json.loads(summary), traj, cons

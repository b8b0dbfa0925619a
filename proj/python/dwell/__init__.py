"""Global solver for double-well problems."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import _solve_json


def solve(instance, tol=1e-10):
    """Solve an instance and return the report as a dict."""
    return _json.loads(_solve_json(instance, tol))

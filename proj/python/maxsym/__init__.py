"""Exponent-p groups from maximal subgroups of GL(d, p)."""

import json

from ._core import GammaGroup, decompose, table2, witt_dims
from ._core import construct_json as _construct_json

__all__ = ["GammaGroup", "construct", "decompose", "table2", "witt_dims"]


def construct(cls, params, d, p, seed=1):
    """Build and certify the group for one maximal subgroup; returns the report as a dict."""
    return json.loads(_construct_json(cls, list(params), d, p, seed))

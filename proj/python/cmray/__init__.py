"""Ray class groups and CM values of Weber/Fricke/Siegel functions.

Thin wrapper over the C++ core: JSON-producing entry points are parsed into
dicts here; scalar helpers pass through unchanged.
"""

import json as _json

from ._core import (
    choose_t,
    class_number,
    collapses_to_half,
    degree_kn_over_h,
    degree_ring_over_h,
    fricke_value,
    kronecker_symbol,
    np_nm,
    ray_class_order,
    verify_main,
    weber_value,
    xi_value,
)
from . import _core


def field_info(dk):
    return _json.loads(_core.field_info_json(dk))


def rayclass(dk, N, check=False):
    return _json.loads(_core.rayclass_json(dk, N, check))


def invariant_table(dk, N, digits=100):
    return _json.loads(_core.invariant_table_json(dk, N, digits))


def verify(suite, **kwargs):
    return _json.loads(_core.verify_json(suite, **kwargs))


__all__ = [
    "choose_t",
    "class_number",
    "collapses_to_half",
    "degree_kn_over_h",
    "degree_ring_over_h",
    "field_info",
    "fricke_value",
    "invariant_table",
    "kronecker_symbol",
    "np_nm",
    "ray_class_order",
    "rayclass",
    "verify",
    "verify_main",
    "weber_value",
    "xi_value",
]

"""Kernel backend selection: compiled extension when available, else pure.

Set LADDERFLOW_PURE=1 to force the pure-Python backend.  The two backends
implement identical contracts (see ``ladderflow._pure``) and are differential
tested against each other.
"""

from __future__ import annotations

import os

from . import _pure

try:
    from . import _native
except ImportError:
    _native = None

_force_pure = os.environ.get("LADDERFLOW_PURE", "") not in ("", "0")
active = _pure if (_native is None or _force_pure) else _native

BACKEND = "pure" if active is _pure else "native"


def available_backends() -> dict:
    out = {"pure": _pure}
    if _native is not None:
        out["native"] = _native
    return out


def search_flows(vertex_count, edge_lo, edge_hi, edge_sign, k, base_order, limit):
    return active.search_flows(
        vertex_count, edge_lo, edge_hi, edge_sign, k, base_order, limit
    )


def dp_chain_reachable(seed, mat_ids, mats, final):
    return active.dp_chain_reachable(seed, mat_ids, mats, final)

"""Pick the compiled kernels when they are built, else the pure-Python twins.

Set ``FANO_SIEVE_PURE=1`` to force the fallback at import time, or pass
``backend="python"`` per call.
"""

from __future__ import annotations

import os
from array import array

from . import _core_py

try:
    if os.environ.get("FANO_SIEVE_PURE"):
        raise ImportError("pure-Python backend requested")
    from . import _core as _compiled
except ImportError:
    _compiled = None

BACKENDS = ("cython", "python") if _compiled is not None else ("python",)
DEFAULT_BACKEND = BACKENDS[0]

# keeps every partial sum inside a signed 64-bit integer
_INT64_SAFE = 2**62
# the compiled sumset search keeps a byte per residue class
_SUMSET_LIMIT = 2**22


def _resolve(backend: str | None) -> str:
    backend = backend or DEFAULT_BACKEND
    if backend not in BACKENDS:
        raise ValueError(f"backend {backend!r} unavailable; have {BACKENDS}")
    return backend


def scan(options, offsets, counts, target, modulus, first_only, backend=None):
    if _resolve(backend) == "cython" and modulus < _INT64_SAFE:
        return _compiled.scan(
            array("q", options), array("q", offsets), array("q", counts),
            array("q", target), modulus, first_only,
        )
    return _core_py.scan(options, offsets, counts, target, modulus, first_only)


def basket_dfs(costs, masks, prune, full_mask, budget, backend=None):
    if _resolve(backend) == "cython" and budget < _INT64_SAFE // 2 and max(prune, default=0) < _INT64_SAFE // 2:
        return _compiled.basket_dfs(array("q", costs), array("q", masks), array("q", prune), full_mask, budget)
    return _core_py.basket_dfs(costs, masks, prune, full_mask, budget)


def uniform_failures(rs, ds, scales, targets, modulus, backend=None):
    if _resolve(backend) == "cython" and modulus <= _SUMSET_LIMIT:
        return _compiled.uniform_failures(array("q", rs), array("q", ds), array("q", scales),
                                          array("q", targets), modulus)
    return _core_py.uniform_failures(rs, ds, scales, targets, modulus)


def run_options(r, d, scale, m, S, modulus, backend=None):
    if _resolve(backend) == "cython" and modulus <= _SUMSET_LIMIT:
        return _compiled.run_options(r, d, scale, m, S, modulus)
    return _core_py.run_options(r, d, scale, m, S, modulus)

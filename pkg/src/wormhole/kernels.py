"""Backend selection for the hot kernels.

The compiled extension ``wormhole._kernels`` is used when it was built and
imports cleanly; otherwise the pure-Python twin is used.  Setting the
environment variable ``WORMHOLE_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("WORMHOLE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
CUP, CAP, CROSS, PROJ = _kernels_py.CUP, _kernels_py.CAP, _kernels_py.CROSS, _kernels_py.PROJ

compose_matchings = _impl.compose_matchings
state_cup = _impl.state_cup
state_cap = _impl.state_cap
state_apply_tl = _impl.state_apply_tl
transfer_sweep = _impl.transfer_sweep


def backends() -> dict:
    """All importable kernel implementations keyed by name (used by the benchmark)."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels  # type: ignore[attr-defined]

        out["cython"] = _kernels
    except ImportError:
        pass
    return out

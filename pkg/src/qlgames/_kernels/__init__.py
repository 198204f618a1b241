"""Kernel backend selection: compiled extension with pure-numpy fallback.

Set ``QLGAMES_PURE_PYTHON=1`` to force the fallback (used by the
benchmark and the cross-backend tests).
"""

import os

from . import _fallback

if os.environ.get("QLGAMES_PURE_PYTHON", "0") not in ("", "0"):
    _impl = _fallback
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _fallback

BACKEND = "native" if _impl is not _fallback else "python"

payoff_surface_half = _impl.payoff_surface_half
quantum_half_rounds = _impl.quantum_half_rounds
mechanical_half_rounds = _impl.mechanical_half_rounds
quantum_one_rounds = _impl.quantum_one_rounds

fallback = _fallback


def native_available():
    try:
        from . import _native  # noqa: F401
    except ImportError:
        return False
    return True

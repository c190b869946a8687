"""Hot search kernels: compiled extension when available, else pure Python.

Selection happens once at import. Set PCFACTOR_PURE=1 to force the pure
implementation even when the extension is built (useful for benchmarks and
debugging). Both implementations expose:

* ``enumerate_two_factor_keys(rows, t)``
* ``find_pc_cycle(rows, start_side, start_index, k)``
"""

import os

from pcfactor._kernels import pure

try:
    from pcfactor._kernels import _speed as _compiled  # type: ignore
except ImportError:
    _compiled = None

HAVE_COMPILED = _compiled is not None
_active = pure if (_compiled is None or os.environ.get("PCFACTOR_PURE")) else _compiled

ACTIVE_NAME = "pure" if _active is pure else "compiled"
enumerate_two_factor_keys = _active.enumerate_two_factor_keys
find_pc_cycle = _active.find_pc_cycle
ENUM_CAP = pure.ENUM_CAP


def implementations():
    """Name -> module map of every available kernel implementation."""
    out = {"pure": pure}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out

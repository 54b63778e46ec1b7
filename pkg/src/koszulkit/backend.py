"""Select the dense GF(p) kernel at import: compiled extension or pure twin.

Set ``KOSZULKIT_PURE=1`` to force the pure-Python kernel (used by the
benchmark and by tests that exercise both paths).
"""

from __future__ import annotations

import os

from . import _modkernel_py

if os.environ.get("KOSZULKIT_PURE"):
    _impl = _modkernel_py
else:
    try:
        from . import _modkernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _modkernel_py

KERNEL_KIND: str = _impl.KERNEL_KIND

# The compiled kernel needs products to fit in 64 bits.
_COMPILED_MAX_P = 1 << 31


def rref_mod(rows, ncols, p):
    if KERNEL_KIND == "compiled" and p >= _COMPILED_MAX_P:
        return _modkernel_py.rref_mod(rows, ncols, p)
    return _impl.rref_mod(rows, ncols, p)

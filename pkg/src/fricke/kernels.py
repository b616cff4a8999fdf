"""Select the convolution kernel backend at import time.

The compiled extension is used when it was built; otherwise (or when
``FRICKE_KERNELS=python`` is set) the pure-Python module is used.  Both expose
``reduce_poly``, ``mulmod``, ``convolve`` and ``inverse_unit``.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("FRICKE_KERNELS", "").lower() != "python":
    try:
        from . import _kernels_c as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py

reduce_poly = _impl.reduce_poly
mulmod = _impl.mulmod
convolve = _impl.convolve
inverse_unit = _impl.inverse_unit


def available_backends():
    """Return ``{name: module}`` for every importable backend."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels_c

        out["cython"] = _kernels_c
    except ImportError:
        pass
    return out


def use_backend(name: str):
    """Rebind the kernel functions to backend ``name`` and return the previous name."""
    global BACKEND, _impl, reduce_poly, mulmod, convolve, inverse_unit
    backends = available_backends()
    if name not in backends:
        raise ValueError(f"backend {name!r} is not available")
    prev = BACKEND
    _impl = backends[name]
    BACKEND = name
    reduce_poly = _impl.reduce_poly
    mulmod = _impl.mulmod
    convolve = _impl.convolve
    inverse_unit = _impl.inverse_unit
    return prev

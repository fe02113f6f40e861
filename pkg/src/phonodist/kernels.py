"""Backend selection for the edit-distance kernels.

The compiled extension is used when it was built; otherwise (or when
``PHONODIST_PURE_PYTHON=1`` is set) the pure-Python twin is loaded.
"""

import importlib
import os

_BACKENDS = {"cython": "phonodist._dp", "python": "phonodist._dp_py"}


def available_backends():
    found = []
    for name, module in _BACKENDS.items():
        try:
            importlib.import_module(module)
        except ImportError:
            continue
        found.append(name)
    return found


def get_backend(name):
    return importlib.import_module(_BACKENDS[name])


def _select():
    if os.environ.get("PHONODIST_PURE_PYTHON", "") not in ("", "0"):
        return "python", get_backend("python")
    try:
        return "cython", get_backend("cython")
    except ImportError:
        return "python", get_backend("python")


BACKEND, _impl = _select()
cost_table = _impl.cost_table
pairwise = _impl.pairwise

"""Select the echelon kernels: compiled extension if importable, else pure Python.

Set ``MIXWREATH_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py as py_kernels

compiled_kernels = None
if not os.environ.get("MIXWREATH_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_kernels  # type: ignore[no-redef]
    except ImportError:
        compiled_kernels = None

BACKEND = "compiled" if compiled_kernels is not None else "python"
_active = compiled_kernels or py_kernels

# the compiled GF(p) path multiplies two residues in a C long long
_COMPILED_P_LIMIT = 1 << 31


def _pick(p):
    if p >= _COMPILED_P_LIMIT:
        return py_kernels
    return _active


def reduce_vector(vec, rows, p):
    return _pick(p).reduce_vector(vec, rows, p)


def insert_row(vec, rows, p):
    return _pick(p).insert_row(vec, rows, p)


def echelonize(vectors, p):
    return _pick(p).echelonize(vectors, p)

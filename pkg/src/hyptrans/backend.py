"""Kernel backend selection.

The quadrature hot loop evaluates 2F1 at every abscissa of every level; that
batch call is the only performance-critical primitive.  The compiled
extension is preferred when importable; set ``HYPTRANS_BACKEND=numpy`` or
``=compiled`` to force a choice (the benchmark does).
"""
from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _fastkernels
except ImportError:  # pragma: no cover - build-environment dependent
    _fastkernels = None

_IMPLS = {"numpy": _kernels_py}
if _fastkernels is not None:
    _IMPLS["compiled"] = _fastkernels


def _select():
    forced = os.environ.get("HYPTRANS_BACKEND", "").strip().lower()
    if forced in ("numpy", "python", "py"):
        return _kernels_py, "numpy"
    if forced in ("compiled", "c", "cython"):
        if _fastkernels is None:
            raise ImportError("HYPTRANS_BACKEND=compiled but the extension is not built")
        return _fastkernels, "compiled"
    if forced:
        raise ValueError(f"unknown HYPTRANS_BACKEND={forced!r}")
    if _fastkernels is not None:
        return _fastkernels, "compiled"
    return _kernels_py, "numpy"


_impl, _name = _select()


def hyp2f1_vec(a, b, c, z, omz, max_terms=20000, tol=1e-15):
    return _impl.hyp2f1_vec(a, b, c, z, omz, max_terms, tol)


def hyp2f1_vec_scaled(a, b, c, z, omz, max_terms=20000, tol=1e-15):
    """(vals, deep): F = vals * omz**(-min(a,b)) on deep elements."""
    return _impl.hyp2f1_vec_scaled(a, b, c, z, omz, max_terms, tol)


def backend_name() -> str:
    return _name


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_IMPLS))


def get_backend(name: str):
    """Explicit implementation lookup, used by tests and the benchmark."""
    return _IMPLS[name]

"""Selects the compiled search kernel when available, pure Python otherwise."""

from __future__ import annotations

from . import _search_py

try:  # compiled twin, built by setup.py when a C toolchain is present
    from . import _search as _impl  # type: ignore[attr-defined]

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    _impl = _search_py
    BACKEND = "python"

FREE = _search_py.FREE
PAR = _search_py.PAR
ANTI = _search_py.ANTI
ARC = _search_py.ARC
MODE_EXISTS = _search_py.MODE_EXISTS
MODE_COUNT_RAW = _search_py.MODE_COUNT_RAW
MODE_ENUM_FIXED = _search_py.MODE_ENUM_FIXED


def run(n, ea, eb, labels, require_strong=False, d_max=0, mode=MODE_EXISTS):
    return _impl.run(n, ea, eb, labels, require_strong, d_max, mode)


def run_with(backend: str, n, ea, eb, labels, require_strong=False, d_max=0, mode=MODE_EXISTS):
    """Force a specific backend; used by equivalence tests and benchmarks."""
    if backend == "python":
        chosen = _search_py
    elif backend == "compiled":
        if BACKEND != "compiled":
            raise RuntimeError("compiled search kernel is not available")
        chosen = _impl
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return chosen.run(n, ea, eb, labels, require_strong, d_max, mode)

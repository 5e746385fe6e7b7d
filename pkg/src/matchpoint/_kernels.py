"""Kernel backend selection.

The compiled extension is preferred when built; the pure-Python kernels
take over otherwise. The MATCHPOINT_BACKEND environment variable pins the
choice at import time ("native", "python", or "auto"), and `use_backend`
switches it at runtime, which the backend comparison benchmark relies on.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _native
except ImportError:
    _native = None

_ENV_VAR = "MATCHPOINT_BACKEND"


def _resolve(name: str | None):
    if name in (None, "", "auto"):
        return _native if _native is not None else _kernels_py
    if name == "native":
        if _native is None:
            raise RuntimeError("compiled backend requested but the extension is not built")
        return _native
    if name == "python":
        return _kernels_py
    raise ValueError(f"unknown backend {name!r} (expected 'native', 'python', or 'auto')")


_impl = _resolve(os.environ.get(_ENV_VAR))


def use_backend(name: str | None = None) -> None:
    """Switch the active kernels; None or 'auto' prefers the compiled ones."""
    global _impl
    _impl = _resolve(name)


def active_backend() -> str:
    return "python" if _impl is _kernels_py else "native"


def serial_scan(automaton, text):
    return _impl.serial_scan(automaton, text)


def walk_block(trie, text, lo, hi, longest_only):
    return _impl.walk_block(trie, text, lo, hi, longest_only)

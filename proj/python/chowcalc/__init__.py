"""Chow ring and Chern class calculator."""

from ._core import (
    ChowError,
    Poly,
    builtin_names,
    builtin_text,
    cli,
    intersect,
    quadratic_scan,
    run_builtin,
    run_file,
    run_text,
    search_box,
)

__all__ = [
    "ChowError",
    "Poly",
    "builtin_names",
    "builtin_text",
    "cli",
    "intersect",
    "quadratic_scan",
    "run_builtin",
    "run_file",
    "run_text",
    "search_box",
]

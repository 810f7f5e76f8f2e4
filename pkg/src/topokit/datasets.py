"""Bundled example inputs (facet files, relations, programs, networks)."""

from __future__ import annotations

from pathlib import Path

_DATA = Path(__file__).parent / "data"


def data_path(name: str) -> Path:
    """Absolute path of a bundled data file."""
    p = _DATA / name
    if not p.is_file():
        raise ValueError(f"no bundled data file named {name!r}")
    return p


def list_data() -> list[str]:
    return sorted(p.name for p in _DATA.iterdir() if p.is_file())

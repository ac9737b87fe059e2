"""Bundled reference data: model files, scoring tables, schemas.

`OPENJ_DATA_DIR` overrides the directory the reference tables are read
from, so users can swap in their own transcriptions or data packs.
"""

from __future__ import annotations

import csv
import hashlib
import os
from pathlib import Path

_PACKAGE_DIR = Path(__file__).resolve().parent


def data_dir() -> Path:
    override = os.environ.get("OPENJ_DATA_DIR")
    return Path(override) if override else _PACKAGE_DIR


def table_path(name: str) -> Path:
    """Path of a reference table, honoring OPENJ_DATA_DIR."""
    override = os.environ.get("OPENJ_DATA_DIR")
    if override:
        candidate = Path(override) / name
        if candidate.exists():
            return candidate
    return _PACKAGE_DIR / "tables" / name


def reference_path(name: str) -> Path:
    return _PACKAGE_DIR / "reference" / name


def schema_path(name: str) -> Path:
    return _PACKAGE_DIR / "schemas" / name


def load_table(name: str) -> list[dict]:
    """Read a reference CSV into a list of row dicts."""
    with open(table_path(name), newline="") as fh:
        return list(csv.DictReader(fh))


def table_sha256(name: str) -> str:
    return hashlib.sha256(table_path(name).read_bytes()).hexdigest()

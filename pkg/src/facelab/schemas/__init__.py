"""Bundled JSON Schemas for every CLI payload."""

from __future__ import annotations

import json
from importlib import resources

SCHEMA_NAMES = (
    "envelope",
    "gen",
    "lattice",
    "hypergraph",
    "connectivity",
    "ridge_path",
    "dual",
    "section",
    "verify_theorem",
)


def load_schema(name: str) -> dict:
    if name not in SCHEMA_NAMES:
        raise KeyError(f"unknown schema {name!r}; available: {', '.join(SCHEMA_NAMES)}")
    text = resources.files(__package__).joinpath(f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)

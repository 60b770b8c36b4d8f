"""Shipped witness data for the 5-cube distance-{1,2} graph."""
from __future__ import annotations

import json
from importlib import resources

from .graph import product_index


def _read(name: str):
    return json.loads(resources.files("capax.data").joinpath(name).read_text(encoding="utf-8"))


def independent_set() -> list[int]:
    """A maximum independent set of the base graph (decimal vertex labels)."""
    return list(_read("independent_set.json"))


def product_pairs() -> list[tuple[str, str]]:
    """The 20 label pairs of the independent set in the strong square, as bit strings."""
    return [tuple(p) for p in _read("product_independent_set.json")["pairs"]]


def product_independent_set() -> list[int]:
    """The same set mapped to strong-square vertex indices ``a * 32 + b``."""
    data = _read("product_independent_set.json")
    n = 1 << data["m"]
    return sorted(product_index(int(a, 2), int(b, 2), n) for a, b in data["pairs"])

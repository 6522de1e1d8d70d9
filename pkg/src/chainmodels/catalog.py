"""Shipped spaces, each presented simplicially and cubically, plus loaders for JSON files."""

from __future__ import annotations

import json
from pathlib import Path

from . import cubical, simplicial

DATA = Path(__file__).parent / "data"

SPACES = ("point", "interval", "circle", "torus", "rp2", "klein", "sphere2")

_SIMPLICIAL = {
    "point": simplicial.point,
    "interval": simplicial.interval,
    "circle": simplicial.circle,
    "torus": simplicial.torus,
    "rp2": simplicial.projective_plane,
    "klein": simplicial.klein_bottle,
    "sphere2": simplicial.sphere2,
}

_CUBICAL = {
    "point": cubical.point,
    "interval": cubical.interval,
    "circle": cubical.circle,
    "torus": cubical.torus,
    "rp2": cubical.projective_plane,
    "klein": cubical.klein_bottle,
    "sphere2": cubical.sphere2,
}

# degrees through which the two presentations are compared
CHECK_DEGREES = {"torus": 3, "sphere2": 3}


class ParseError(ValueError):
    pass


def simplicial_space(name: str) -> simplicial.SimplicialSet:
    X = _SIMPLICIAL[name]()
    X.name = name
    return X


def cubical_space(name: str) -> cubical.CubicalSet:
    X = _CUBICAL[name]()
    X.name = name
    return X


def to_document(X) -> dict:
    kind = "cubical" if isinstance(X, cubical.CubicalSet) else "simplicial"
    return {"kind": kind, **X.to_json()}


def from_document(doc: dict):
    kind = doc.get("kind")
    try:
        if kind == "simplicial":
            return simplicial.SimplicialSet.from_json(doc)
        if kind == "cubical":
            return cubical.CubicalSet.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed {kind} space: {exc}") from exc
    raise ParseError(f"unknown space kind {kind!r}")


def load_space(path):
    """A JSON file, or a catalog entry written as name or name.kind (default simplicial)."""
    p = Path(path)
    if not p.exists():
        stem, _, kind = str(path).partition(".")
        if stem in SPACES and kind in ("", "simplicial", "cubical"):
            p = DATA / f"{stem}.{kind or 'simplicial'}.json"
        else:
            raise ParseError(f"no such space file or catalog entry: {path}")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}: {exc}") from exc
    return from_document(doc)


def listing() -> list[dict]:
    out = []
    for name in SPACES:
        X, C = simplicial_space(name), cubical_space(name)
        out.append({"name": name, "simplicial_cells": len(X.cells), "cubical_cells": len(C.cells),
                    "dim": X.dim, "files": [f"{name}.simplicial.json", f"{name}.cubical.json"]})
    return out


def write_data(directory=DATA) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name in SPACES:
        for X in (simplicial_space(name), cubical_space(name)):
            doc = to_document(X)
            p = directory / f"{name}.{doc['kind']}.json"
            p.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
            written.append(p)
    return written

import json

import pytest

from chainmodels import catalog
from chainmodels.cubical import CubicalSet
from chainmodels.simplicial import SimplicialSet


def test_shipped_files_are_current(tmp_path):
    for p in catalog.write_data(tmp_path):
        assert p.read_text() == (catalog.DATA / p.name).read_text()


@pytest.mark.parametrize("name", catalog.SPACES)
def test_load_by_name(name):
    assert isinstance(catalog.load_space(name), SimplicialSet)
    assert isinstance(catalog.load_space(f"{name}.simplicial"), SimplicialSet)
    assert isinstance(catalog.load_space(f"{name}.cubical"), CubicalSet)


def test_load_from_path(tmp_path):
    p = tmp_path / "x.json"
    p.write_text(json.dumps(catalog.to_document(catalog.simplicial_space("torus"))))
    assert len(catalog.load_space(p).cells) == len(catalog.simplicial_space("torus").cells)


@pytest.mark.parametrize("text", ["{not json", '{"kind": "cellular"}', '{"kind": "simplicial"}',
                                  '{"kind": "cubical", "cells": 3}'])
def test_bad_documents(tmp_path, text):
    p = tmp_path / "bad.json"
    p.write_text(text)
    with pytest.raises(catalog.ParseError):
        catalog.load_space(p)


def test_unknown_name():
    with pytest.raises(catalog.ParseError):
        catalog.load_space("mobius")
    with pytest.raises(catalog.ParseError):
        catalog.load_space("torus.cellular")


def test_listing():
    rows = catalog.listing()
    assert [r["name"] for r in rows] == list(catalog.SPACES)
    assert {r["name"]: r["dim"] for r in rows}["torus"] == 2

from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from chainmodels import simplicial as sim
from chainmodels.catalog import SPACES, simplicial_space
from chainmodels.chains import is_weak_equivalence

# classical values: (betti, torsion) per degree
KNOWN = {
    "point": [(1, ())],
    "interval": [(1, ()), (0, ())],
    "circle": [(1, ()), (1, ())],
    "torus": [(1, ()), (2, ()), (1, ())],
    "rp2": [(1, ()), (0, (2,)), (0, ())],
    "klein": [(1, ()), (1, (2,)), (0, ())],
    "sphere2": [(1, ()), (0, ()), (1, ())],
}


@pytest.mark.parametrize("name", SPACES)
def test_catalog_homology(name):
    X = simplicial_space(name)
    assert X.check_identities() == []
    H = sim.normalized_chains(X).homology_all()
    assert [(h.betti, h.torsion) for h in H.values()] == KNOWN[name]


@pytest.mark.parametrize("name", ["circle", "rp2"])
def test_unnormalized_chains_agree(name):
    X = simplicial_space(name)
    C = sim.chains(X, 3)
    N = sim.normalized_chains(X, 3)
    assert [C.homology(n) for n in range(4)] == [N.homology(n) for n in range(4)]
    assert is_weak_equivalence(sim.normalization_projection(X, 3))


def test_simplex_and_boundary():
    assert sim.normalized_chains(sim.standard_simplex(3)).is_acyclic() is False
    H = sim.normalized_chains(sim.standard_simplex(3)).homology_all()
    assert [h.betti for h in H.values()] == [1, 0, 0, 0]
    H = sim.normalized_chains(sim.boundary_simplex(3)).homology_all()
    assert [h.betti for h in H.values()] == [1, 0, 1]


def test_face_and_degeneracy_identities_on_product():
    P = sim.product(sim.circle(), sim.interval())
    assert P.check_identities(3) == []


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 5), st.integers(0, 5))
def test_shuffle_term_count(p, q):
    assert sim.shuffle_term_count(p, q) == comb(p + q, p)
    signs = [s for _, _, s in sim.shuffles(p, q)]
    assert set(signs) <= {1, -1}


PAIRS = [("point", "interval"), ("circle", "circle"), ("interval", "circle"), ("circle", "rp2")]


@pytest.mark.parametrize("a,b", PAIRS)
def test_ez_maps(a, b):
    X, Y = simplicial_space(a), simplicial_space(b)
    for n in range(4):
        for p in range(n + 1):
            q = n - p
            if p > X.dim or q > Y.dim:
                continue
            assert sim.check_shuffle_chain_map(X, Y, p, q, normalized=True)
            assert sim.check_aw_sh_identity(X, Y, p, q)
            assert sim.check_shuffle_symmetry(X, Y, p, q, normalized=True)
        assert sim.check_aw_chain_map(X, Y, n, normalized=True)


def test_unnormalized_shuffle_chain_map():
    X = sim.circle()
    for p in range(3):
        for q in range(3):
            assert sim.check_shuffle_chain_map(X, X, p, q)


def test_shuffle_associative():
    X = sim.circle()
    assert sim.check_shuffle_associativity(X, X, X, 1, 1, 1)
    assert sim.check_shuffle_associativity(X, X, X, 2, 0, 1)


def test_shuffle_natural():
    S = sim.standard_simplex(1)
    X = sim.circle()
    # collapse the interval onto the basepoint of the circle
    v = X.nondegenerate(0)[0]
    f = sim.SimplicialMap(S, X, {c: (v if S.dim_of[c] == 0 else X.degeneracy(v, 0)) for c in S.cells})
    assert sim.check_shuffle_naturality(f, sim.SimplicialMap.identity(X), 1, 1)


def test_kunneth_torus_as_product():
    X = sim.circle()
    out = [sim.kunneth_morphism(X, X, n) for n in range(3)]
    assert [k["target_dim"] for k in out] == [1, 2, 1]
    assert all(k["isomorphism"] for k in out)


def test_json_roundtrip(tmp_path):
    X = simplicial_space("klein")
    Y = sim.SimplicialSet.from_json(X.to_json())
    assert sim.normalized_chains(Y).homology_all() == sim.normalized_chains(X).homology_all()

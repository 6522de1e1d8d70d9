import pytest

from chainmodels import cubical as cub
from chainmodels import simplicial as sim
from chainmodels.catalog import CHECK_DEGREES, SPACES, cubical_space, simplicial_space
from chainmodels.chains import is_weak_equivalence, tensor


def groups(C, upto):
    return [C.homology(n) for n in range(upto + 1)]


@pytest.mark.parametrize("name", SPACES)
def test_cubical_matches_simplicial(name):
    X, S = cubical_space(name), simplicial_space(name)
    assert X.check_identities() == []
    top = CHECK_DEGREES.get(name, 2)
    assert groups(cub.normalized_cubical(X, top), top) == groups(sim.normalized_chains(S, top), top)


@pytest.mark.parametrize("name", ["circle", "rp2", "klein"])
def test_ordered_chains_match(name):
    X = cubical_space(name)
    assert groups(cub.ordered_chains(X), 2) == groups(cub.normalized_cubical(X), 2)
    assert is_weak_equivalence(cub.ordered_projection(X))


def test_degenerate_cubes_are_not_acyclic():
    # without normalization a point has a Z in every degree, so the quotient is needed
    P = cubical_space("point")
    assert [h.betti for h in groups(cub.cubical_chains(P, 3), 3)] == [1, 1, 1, 1]


def test_standard_cube_is_contractible():
    for n in range(4):
        H = cub.normalized_cubical(cub.standard_cube(n)).homology_all()
        assert [h.betti for h in H.values()] == [1] + [0] * n


def test_cross_product_leibniz_and_quasi_iso():
    X, Y = cubical_space("circle"), cubical_space("rp2")
    assert cub.check_leibniz(X, Y, 3)
    f = cub.cross_product(X, Y)
    assert f.is_chain_map()
    assert is_weak_equivalence(f)


def test_ordered_symmetry_but_not_plain():
    X = cubical_space("circle")
    assert cub.check_ordered_symmetry(X, X)
    assert not cub.check_plain_symmetry(X, X)
    f = cub.ordered_cross_product(X, X)
    assert is_weak_equivalence(f)


@pytest.mark.parametrize("name", ["circle", "torus", "sphere2"])
def test_serre_diagonal(name):
    X = cubical_space(name)
    D = cub.serre_diagonal(X)
    assert D.is_chain_map()
    assert cub.check_serre_coassociative(X)
    assert cub.check_serre_counit(X)


def test_serre_diagonal_on_square_has_four_terms():
    X = cub.standard_cube(2)
    c = X.nondegenerate(2)[0]
    terms = cub.serre_diagonal_cube(X, c)
    assert len(terms) == 4 and sorted(terms.values()) == [-1, 1, 1, 1]


def test_cone_contraction():
    r = cub.verify_cone_contraction(6)
    assert r["passed"]
    for c in r["checks"]:
        assert c["identity"] and c["equivariant"] and c["s_preserves_degenerate"]
        # the sign as literally displayed produces the negative of the identity
        assert c["literal_sign_gives_negative"]


def test_json_roundtrip():
    X = cubical_space("klein")
    Y = cub.CubicalSet.from_json(X.to_json())
    assert groups(cub.normalized_cubical(Y), 2) == groups(cub.normalized_cubical(X), 2)

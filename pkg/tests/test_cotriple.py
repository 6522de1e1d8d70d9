import itertools

import pytest

from chainmodels import cotriple as ct
from chainmodels.chains import TruncationTooSmall
from chainmodels.simplicial import standard_simplex

SMALL = ct.TruncationParams(2, 1, 2, 2)
FULL = ct.TruncationParams(2, 2, 2, 2)


def brute_hom_count(source, target):
    """Order-preserving maps between grids, by enumerating all functions."""
    S = list(itertools.product(*[range(n + 1) for n in source]))
    T = list(itertools.product(*[range(n + 1) for n in target]))
    le = lambda a, b: all(x <= y for x, y in zip(a, b))
    return sum(all(le(f[i], f[j]) for i in range(len(S)) for j in range(len(S)) if le(S[i], S[j]))
               for f in itertools.product(T, repeat=len(S)))


@pytest.mark.parametrize("source,target", [((1,), (1,)), ((2,), (1,)), ((1, 1), (1,)), ((1,), (1, 1)),
                                           ((1, 1), (2,)), ((0,), (2, 1)), ((2,), (1, 1))])
def test_hom_count_against_brute_force(source, target):
    assert ct.hom_count(source, target) == brute_hom_count(source, target)
    assert len(ct.poset_maps(source, target)) == ct.hom_count(source, target)


def test_maps_into_targets():
    D1 = ct.catalog_target("delta1")
    # monotone maps [n] -> [1] and order ideals of the square
    assert [len(D1.maps_from((n,))) for n in range(4)] == [2, 3, 4, 5]
    assert len(D1.maps_from((1, 1))) == 6
    B = ct.catalog_target("boundary2")
    # maps Δ[1] -> ∂Δ[2]: three vertices (constant) plus three edges
    assert len(B.maps_from((1,))) == 6
    assert len(B.maps_from((2,))) == 3 + 3 * 2


def test_params_parse():
    assert ct.TruncationParams.parse("2,1,2,2") == SMALL
    with pytest.raises(ValueError):
        ct.TruncationParams(-1, 1, 1, 1)


@pytest.mark.parametrize("name", ["point", "delta1", "boundary2"])
def test_cotriple_laws(name):
    for c in ct.check_cotriple_laws(ct.catalog_target(name), FULL):
        assert c["status"] == "PASS", c


def test_kappa_checks():
    X, Y = ct.catalog_target("delta1"), ct.catalog_target("point")
    # the two vertex maps of Δ[1] onto a point, and the identity on the point
    collapse = {0: 0, 1: 0}
    maps = [(collapse, {0: 0}, ct.catalog_target("point"), Y)]
    for c in ct.check_kappa(X, Y, FULL, maps):
        assert c["status"] == "PASS", c


def test_kappa_needs_two_factors():
    X = ct.catalog_target("point")
    G = ct.cotriple_G(X, SMALL)
    c = G.components[0]
    a = (c, (0,))
    with pytest.raises(TruncationTooSmall):
        ct.kappa(a, a, SMALL)


@pytest.mark.parametrize("normalized", [False, True])
def test_models_acyclic(normalized):
    assert ct.check_acyclic_models(FULL, normalized)["status"] == "PASS"


@pytest.mark.parametrize("F", ct.FUNCTORS)
@pytest.mark.parametrize("name", ["point", "delta1"])
def test_presentability_small(F, name):
    rep = ct.check_presentability(F, ct.catalog_target(name), SMALL)
    assert [c["status"] for c in rep["checks"]] == ["PASS", "PASS"]


def test_simplicial_set_target():
    rep = ct.check_presentability("S_normalized", standard_simplex(1), SMALL)
    assert all(c["status"] == "PASS" for c in rep["checks"])


def test_budget_exceeded_is_reported():
    X = ct.catalog_target("delta1")
    with pytest.raises(ct.BudgetExceeded) as e:
        ct.bar_construction("S", X, FULL, budget=1000)
    assert e.value.sizes
    rep = ct.check_presentability("S", X, FULL, budget=1000)
    assert rep["checks"][0]["status"] == "PASS"
    assert rep["checks"][1]["status"] == "FAIL" and "budget" in rep["checks"][1]["reason"]


def test_bar_needs_a_level():
    with pytest.raises(TruncationTooSmall):
        ct.bar_construction("S", ct.catalog_target("point"), ct.TruncationParams(2, 1, 0, 2))


def test_bar_sizes_match_construction():
    X = ct.catalog_target("delta1")
    S = ct.bar_construction("S_normalized", X, SMALL)
    for p, Y in enumerate(S.values):
        assert len(Y) == S.sizes[p]["components"]
        assert [S.levels[p].rank(q) for q in range(len(S.sizes[p]["chain_groups"]))] == S.sizes[p]["chain_groups"]


@pytest.mark.parametrize("name", ["delta0", "delta1"])
def test_gbg_contraction(name):
    rep = ct.check_gbg_contraction(ct.catalog_target(name), ct.TruncationParams(1, 1, 1, 1))
    assert [c["status"] for c in rep["checks"]] == ["PASS", "PASS"]

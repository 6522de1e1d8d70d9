import pytest

from chainmodels import cohomology as co
from chainmodels.catalog import simplicial_space
from chainmodels.simplicial import boundary_simplex, standard_simplex


def passed(checks):
    return {c["name"].split("[")[0]: c["status"] for c in checks}


@pytest.mark.parametrize("make", [lambda: co.CochainTheory("Z"), lambda: co.CochainTheory("Q"), co.SullivanForms])
def test_axioms_hold(make):
    rep = co.check_axioms(make(), 3, 3, 3)
    assert all(c["status"] == "PASS" for c in rep["checks"]), rep["checks"]


def test_broken_theory_fails_extendability():
    rep = co.check_axioms(co.broken_theory(), 3, 3, 3)
    st = passed(rep["checks"])
    assert st["axiom-a"] == "FAIL"


def test_cochain_theory_on_spaces():
    for name, betti in [("circle", [1, 1]), ("torus", [1, 2, 1]), ("sphere2", [1, 0, 1])]:
        T = co.theory_value(co.CochainTheory("Z"), simplicial_space(name))
        assert T.betti() == betti


def test_cochain_theory_sees_torsion():
    T = co.theory_value(co.CochainTheory("Z"), simplicial_space("rp2"))
    H = T.homology()
    assert H[1].betti == 0 and H[2].torsion == (2,)


def test_sullivan_weight_graded_on_triangle_boundary():
    A = co.SullivanForms()
    X = boundary_simplex(2)
    cache = {}
    got = [co.weight_graded_betti(A, X, w, cache=cache) for w in range(4)]
    assert got == [[1, 0], [0, 1], [0, 0], [0, 0]]


def test_sullivan_forms_on_simplex_are_acyclic_per_weight():
    A = co.SullivanForms()
    X = standard_simplex(2)
    cache = {}
    assert co.weight_graded_betti(A, X, 0, cache=cache) == [1, 0, 0]
    for w in (1, 2):
        assert co.weight_graded_betti(A, X, w, cache=cache) == [0, 0, 0]


def test_sullivan_needs_a_cutoff():
    with pytest.raises(co.CutoffRequired):
        co.theory_value(co.SullivanForms(), boundary_simplex(2))


def test_compare_cochains_and_forms():
    out = co.compare_theories(co.CochainTheory("Q"), co.SullivanForms(), boundary_simplex(2), cutoff=3, check=False)
    assert out["checks"][0]["status"] == "PASS"
    assert out["sides"][0]["betti"] == [1, 1]


def test_compare_refuses_broken_theory():
    with pytest.raises(co.AxiomFailure):
        co.compare_theories(co.CochainTheory("Z"), co.broken_theory(), simplicial_space("circle"))


@pytest.mark.parametrize("ring", ["Z", "Q"])
def test_presentability_section(ring):
    X = standard_simplex(1)
    for q in (0, 1):
        r = co.build_presentability_section(co.CochainTheory(ring), X, q)
        assert r["status"] == "PASS", r
        assert r["rank_AqGX"] >= r["rank_AqX"]


def test_presentability_section_for_forms():
    r = co.build_presentability_section(co.SullivanForms(), boundary_simplex(2), 1, weight=2)
    assert r["status"] == "PASS"


def test_presentability_beyond_dimension():
    with pytest.raises(ValueError):
        co.build_presentability_section(co.CochainTheory("Z"), standard_simplex(1), 3)


@pytest.mark.parametrize("name", ["circle", "rp2"])
def test_cup_product_laws(name):
    C = co.cochains(simplicial_space(name))
    assert all(c["status"] == "PASS" for c in co.check_cup(C))


def test_cup_is_commutative_only_up_to_homotopy():
    C = co.cochains(simplicial_space("torus"))
    assert co.commutativity_witness(C) is not None
    assert co.check_h_commutative(C)
    assert co.torus_cup_generates(C)["status"] == "PASS"


@pytest.mark.parametrize("name", ["circle", "rp2"])
def test_evaluation_isomorphism(name):
    r = co.evaluation_isomorphism(simplicial_space(name))
    assert r["status"] == "PASS", r

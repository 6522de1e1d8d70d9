import itertools
from math import factorial

import pytest

from chainmodels import operads as op
from chainmodels.chains import ChainComplex
from chainmodels.exactlin import Matrix


def statuses(checks):
    return {c["name"].split("[")[0]: c["status"] for c in checks}


def all_pass(checks):
    return all(c["status"] == "PASS" for c in checks)


def test_koszul_sign():
    assert op.koszul_sign([1, 0], [1, 1]) == -1
    assert op.koszul_sign([1, 0], [1, 2]) == 1
    assert op.koszul_sign([2, 0, 1], [1, 1, 1]) == 1


def test_block_permutation_is_a_permutation():
    for rho in itertools.permutations(range(3)):
        b = op.block_permutation(rho, (2, 1, 3))
        assert sorted(b) == list(range(6))


@pytest.mark.parametrize("P", [op.ass(), op.trivial_operad(), op.interval_operad(), op.circle_operad()])
def test_gap_operads_satisfy_set_axioms(P):
    assert P.check_set_axioms(3, 4) == []


@pytest.mark.parametrize("name,P", [("ass", op.ass), ("interval", op.interval_operad),
                                    ("com", op.trivial_operad)])
@pytest.mark.parametrize("F", ["S", "S_normalized"])
def test_induced_operads(name, P, F):
    O = op.induce_operad(F, P(), window=1 if F == "S" else 2, max_arity=4)
    assert all_pass(op.check_operad_axioms(O, max_arity=3, max_total=4))


def test_cubical_induced_operad():
    for interval in (False, True):
        O = op.induce_operad("C_ord", op.CubicalGapOperad(interval), window=2, max_arity=4)
        assert all_pass(op.check_operad_axioms(O, max_arity=3, max_total=4))


def test_circle_operad_homology():
    # orders times a torus of gaps: l! copies of (S^1)^{l-1}
    O = op.induce_operad("S_normalized", op.circle_operad(), window=2, max_arity=3)
    assert [O.homology(3, 2)[n]["betti"] for n in range(3)] == [6, 12, 6]
    assert [O.homology(2, 2)[n]["betti"] for n in range(2)] == [2, 2]
    assert all_pass(op.check_operad_axioms(O, max_arity=2, max_total=3))


@pytest.mark.parametrize("P", [op.ass, op.interval_operad])
def test_contractible_gaps_give_discrete_homology(P):
    O = op.induce_operad("S_normalized", P(), window=2, max_arity=3)
    for l in (1, 2, 3):
        H = O.homology(l, 2)
        assert H[0]["betti"] == factorial(l) and H[1]["betti"] == 0 and H[2]["betti"] == 0


def test_mutated_composition_is_detected():
    O = op.induce_operad("S_normalized", op.interval_operad(), window=2, max_arity=4)
    good = O.compose
    # flip the sign whenever the outer element has positive degree
    O.compose = lambda x, ys: {k: -v for k, v in good(x, ys).items()} if O.degree(x) else good(x, ys)
    st = statuses(op.check_operad_axioms(O, max_arity=3, max_total=4))
    assert "FAIL" in st.values()
    with pytest.raises(op.AxiomViolation):
        op.check_operad_axioms(O, max_arity=3, max_total=4, raise_on_failure=True)


def test_mutated_action_is_detected():
    O = op.induce_operad("S_normalized", op.ass(), window=1, max_arity=4)
    O.act = lambda x, rho: {x: 1}
    st = statuses(op.check_operad_axioms(O, max_arity=3, max_total=4))
    assert st["equivariance"] == "FAIL"


def test_endomorphism_operad():
    # V = Z in degree 0 and Z in degree 1, zero differential
    V = ChainComplex([1, 1], {1: Matrix.zeros(1, 1)})
    E = op.endomorphism_operad(V, max_arity=3, window=None)
    assert all_pass(op.check_operad_axioms(E, max_arity=2, max_total=3))
    # Hom(V^{⊗2}, V) has rank 2 * 4
    assert sum(E.complexes[2].ranks) == 8


def test_endomorphism_operad_of_acyclic_complex():
    V = ChainComplex([1, 1], {1: Matrix([[1]])})
    E = op.endomorphism_operad(V, max_arity=3)
    assert all_pass(op.check_operad_axioms(E, max_arity=2, max_total=3))
    assert E.complexes[2].is_acyclic()


def test_normalization_is_quasi_iso():
    f = op.normalization_morphism(op.interval_operad(), window=2)
    assert op.check_operad_quasi_iso(f)


def test_collapse_quasi_iso_only_for_contractible_gaps():
    assert op.check_operad_quasi_iso(op.collapse_morphism(op.interval_operad(), window=2))
    assert not op.check_operad_quasi_iso(op.collapse_morphism(op.circle_operad(), window=2))


def test_morphism_check_rejects_bad_maps():
    O = op.induce_operad("S_normalized", op.ass(), window=1, max_arity=4)
    f = op.OperadMorphism(O, O, lambda x: {x: 2})
    with pytest.raises(op.NotOperadMorphism):
        op.check_operad_morphism(f)

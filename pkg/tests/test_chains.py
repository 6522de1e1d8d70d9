import random

import pytest
from hypothesis import given, settings, strategies as st

from chainmodels.chains import (ChainComplex, ChainMap, DoubleComplex, NotChainMap, RingMismatch,
                                SimplicialChainComplex, TruncationTooSmall, WeakEquivalencePolicy, dualize,
                                em_simple, is_weak_equivalence, mapping_cone, shift, symmetry, tensor, tot,
                                unit_complex)
from chainmodels.exactlin import Matrix
from oracles import random_complex


def build(ranks, diffs, ring="Z"):
    return ChainComplex(ranks, {n: Matrix(d, ranks[n - 1], ranks[n]) for n, d in diffs.items()}, ring=ring)


def generated(seed, **kw):
    ranks, diffs, expected = random_complex(random.Random(seed), **kw)
    return build(ranks, diffs), expected


def as_pairs(C):
    return {n: (h.betti, h.torsion) for n, h in C.homology_all().items()}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_homology_of_generated_complexes(seed):
    C, expected = generated(seed)
    assert as_pairs(C) == expected


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_tensor_d_squared_and_rational_kunneth(s1, s2):
    C, _ = generated(s1, length=3, max_rank=2)
    D, _ = generated(s2, length=3, max_rank=2)
    T = tensor(C, D)
    T.check_d_squared()
    bc, bd = C.with_ring("Q").betti(), D.with_ring("Q").betti()
    conv = [sum(bc[p] * bd[n - p] for p in range(n + 1) if p < len(bc) and n - p < len(bd))
            for n in range(len(T.ranks))]
    assert T.with_ring("Q").betti() == conv


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_symmetry_involutive_chain_map(s1, s2):
    C, _ = generated(s1, length=3, max_rank=2)
    D, _ = generated(s2, length=3, max_rank=2)
    t = symmetry(C, D)
    assert t.is_chain_map()
    assert symmetry(D, C).compose(t) == ChainMap.identity(tensor(C, D))


def test_symmetry_sign_on_odd_classes():
    # one generator in degree 1 on each side: x⊗y ↦ -y⊗x
    C = ChainComplex([0, 1])
    t = symmetry(C, C)
    assert t[2] == Matrix([[-1]])


def test_tensor_sign_rule():
    # C = (Z --1--> Z) in degrees 1, 0; d(x1⊗x1) = d x1⊗x1 - x1⊗d x1
    C = ChainComplex([1, 1], {1: Matrix([[1]])})
    T = tensor(C, C)
    assert T.labels[2] == [(T.labels[2][0][0], T.labels[2][0][1])]
    col = T.d(2).column(0)
    assert sorted(col) == [-1, 1]
    assert T.is_acyclic()


def test_shift_sign_and_homology():
    C, expected = generated(11)
    S = shift(C)
    assert S.lower_bound == C.lower_bound + 1
    for n in C.degrees():
        assert S.d(n + 1) == -C.d(n)
    assert {n - 1: v for n, v in as_pairs(S).items()} == expected


def test_tot_sign_on_a_square():
    # Z at (0,0),(1,0),(0,1),(1,1), all maps identity: d(x11) = x01 - x10 (ascending p)
    one = Matrix([[1]])
    D = DoubleComplex({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1},
                      {(1, 0): one, (1, 1): one}, {(0, 1): one, (1, 1): one})
    T = tot(D)
    assert T.labels[1] == [(0, 1, 0), (1, 0, 0)]
    assert T.d(2).column(0) == [1, -1]
    assert T.is_acyclic()


def test_tot_of_acyclic_rows_is_acyclic():
    rng = random.Random(5)
    for _ in range(20):
        # rows p = 0..2, each the acyclic complex Z^k --id--> Z^k in q = 0, 1, d_h = multiplication by ±1/0
        k = rng.randint(1, 3)
        I = Matrix.identity(k)
        ranks = {(p, q): k for p in range(3) for q in range(2)}
        d_v = {(p, 1): I for p in range(3)}
        d_h = {(1, q): I for q in range(2)}
        d_h.update({(2, q): Matrix.zeros(k, k) for q in range(2)})
        T = tot(DoubleComplex(ranks, d_h, d_v))
        assert T.is_acyclic()


def test_mapping_cone_and_weak_equivalence():
    C, _ = generated(3)
    f = ChainMap.identity(C)
    assert mapping_cone(f).is_acyclic()
    for policy in WeakEquivalencePolicy:
        assert is_weak_equivalence(f, policy)
    Z = ChainMap.zero(C, C)
    assert is_weak_equivalence(Z) == C.is_acyclic()


def test_cone_rejects_non_chain_maps():
    C = ChainComplex([1, 1], {1: Matrix([[1]])})
    f = ChainMap(C, C, {0: Matrix([[1]]), 1: Matrix([[0]])}, check=False)
    with pytest.raises(NotChainMap):
        mapping_cone(f)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        tensor(unit_complex("Z"), unit_complex("Q"))


def test_dual_has_same_betti():
    for seed in range(10):
        C, expected = generated(seed)
        Dc = dualize(C)
        assert Dc.orientation == "cochain"
        assert [h.betti for h in Dc.homology_all().values()] == [b for b, _ in expected.values()]
        # torsion moves up one degree
        tors = {n + 1: t for n, (b, t) in expected.items() if t}
        got = {n: h.torsion for n, h in Dc.homology_all().items() if h.torsion}
        assert got == {n: t for n, t in tors.items() if n in Dc.degrees()}


def test_json_roundtrip():
    C, _ = generated(21)
    assert ChainComplex.loads(C.dumps()) == C


def test_em_simple_of_constant_object():
    C, expected = generated(4, length=3, max_rank=2)
    levels = [C] * 6
    ident = ChainMap.identity(C)
    faces = {(p, i): ident for p in range(1, 6) for i in range(p + 1)}
    degs = {(p, j): ident for p in range(5) for j in range(p + 1)}
    S = SimplicialChainComplex(levels, faces, degs)
    assert S.check_identities() == []
    E = em_simple(S, 3)
    got = {n: (h.betti, h.torsion) for n, h in E.homology_all(3).items()}
    assert got == {n: expected.get(n, (0, ())) for n in range(4)}
    with pytest.raises(TruncationTooSmall):
        em_simple(SimplicialChainComplex(levels[:2], faces, degs), 3)

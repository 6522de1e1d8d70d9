"""Cochains with cup products and Cartan-style cohomology theories A*(X) = Hom_Δ(X, A•).

A simplicial dg algebra is given levelwise: A^q_p with pullbacks along monotone maps
θ: [m] -> [n] (faces and degeneracies are special cases), a differential and a product.
A*(X) is assembled as compatible families (ω_σ) over nondegenerate simplices: the kernel
of ω ↦ (∂_i ω_σ - θ^* ω_τ), where ∂_i σ = θ^* τ in Eilenberg-Zilber form.

Sullivan forms use the homogeneous model: F_w L_p is the space of forms of total degree w
in t_0..t_p, dt_0..dt_p modulo Σ dt_i = 0, with F_{w-1} -> F_w multiplication by Σ t_i
(which is 1 on the simplex).  Faces and degeneracies are linear substitutions, so each
F_w is a finite-rank simplicial dg module; "weight w" below means F_w / F_{w-1}.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .chains import ChainComplex, dualize
from .exactlin import (Matrix, NotSolvable, coordinates, hstack, integer_kernel, rank, rational_kernel, rref,
                       solve_integer, solve_rational)
from . import simplicial as sim


class CutoffRequired(ValueError):
    pass


class SectionUnavailable(ValueError):
    pass


class AxiomFailure(ValueError):
    pass


def _add(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _sort_sign(seq):
    """Sort a tuple of distinct items; return (sorted, sign) or (None, 0) on a repeat."""
    if len(set(seq)) != len(seq):
        return None, 0
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return tuple(sorted(seq)), -1 if inv % 2 else 1


def _vector(labels: list, terms: dict, ring: str) -> list:
    index = {x: i for i, x in enumerate(labels)}
    v = [0] * len(labels)
    for k, c in terms.items():
        v[index[k]] += c
    return [Fraction(x) for x in v] if ring == "Q" else v


# ---------------------------------------------------------------------------
# simplicial dg algebras


class SimplicialDGA:
    """Interface: subclasses give basis, pullback terms, d terms, product terms and the unit."""

    name = "A"
    ring = "Z"
    weighted = False
    commutative = False

    def basis(self, p: int, q: int, w=None) -> list:
        raise NotImplementedError

    def pullback_terms(self, x, theta: tuple, n: int) -> dict:
        raise NotImplementedError

    def d_terms(self, p: int, x) -> dict:
        raise NotImplementedError

    def mult_terms(self, p: int, x, y) -> dict:
        raise NotImplementedError

    def unit_terms(self, p: int) -> dict:
        raise NotImplementedError

    def degree(self, x) -> int:
        raise NotImplementedError

    def weight(self, x):
        return None

    # matrices, cached
    def _cache(self):
        if not hasattr(self, "_mats"):
            self._mats = {}
        return self._mats

    def pullback(self, theta: tuple, n: int, q: int, w=None) -> Matrix:
        """θ^*: A^q_n -> A^q_m for θ: [m] -> [n] monotone."""
        key = ("pb", theta, n, q, w)
        cache = self._cache()
        if key not in cache:
            m = len(theta) - 1
            src, tgt = self.basis(n, q, w), self.basis(m, q, w)
            cols = [_vector(tgt, self.pullback_terms(x, theta, n), self.ring) for x in src]
            cache[key] = Matrix.from_columns(cols, len(tgt))
        return cache[key]

    def d(self, p: int, q: int, w=None) -> Matrix:
        key = ("d", p, q, w)
        cache = self._cache()
        if key not in cache:
            src, tgt = self.basis(p, q, w), self.basis(p, q + 1, w)
            cols = [_vector(tgt, self.d_terms(p, x), self.ring) for x in src]
            cache[key] = Matrix.from_columns(cols, len(tgt))
        return cache[key]

    def face(self, p: int, i: int, q: int, w=None) -> Matrix:
        return self.pullback(tuple(j for j in range(p + 1) if j != i), p, q, w)

    def degeneracy(self, p: int, j: int, q: int, w=None) -> Matrix:
        return self.pullback(tuple(k if k <= j else k - 1 for k in range(p + 2)), p, q, w)

    def mult_vec(self, p: int, u: dict, v: dict) -> dict:
        out = {}
        for x, a in u.items():
            for y, b in v.items():
                for z, c in self.mult_terms(p, x, y).items():
                    _add(out, z, a * b * c)
        return out

    def level_complex(self, p: int, w=None, top: int | None = None) -> ChainComplex:
        top = p if top is None else top
        ranks = [len(self.basis(p, q, w)) for q in range(top + 2)]
        diffs = {q: self.d(p, q, w) for q in range(top + 1)}
        return ChainComplex(ranks, diffs, ring=self.ring, orientation="cochain", exact_top=top)


class CochainTheory(SimplicialDGA):
    """S•: A^q_p = normalized cochains of Δ[p]; basis e_S for S ⊆ [p] with |S| = q+1."""

    def __init__(self, ring: str = "Z", max_degree: int | None = None, name: str | None = None):
        self.ring = ring
        self.max_degree = max_degree  # drop generators above this degree (a broken theory)
        self.name = name or f"S({ring})"

    def basis(self, p, q, w=None):
        if q < 0 or q > p or (self.max_degree is not None and q > self.max_degree):
            return []
        return list(itertools.combinations(range(p + 1), q + 1))

    def degree(self, x):
        return len(x) - 1

    def pullback_terms(self, S, theta, n):
        q = len(S) - 1
        if self.max_degree is not None and q > self.max_degree:
            return {}
        m = len(theta) - 1
        out = {}
        for T in itertools.combinations(range(m + 1), q + 1):
            if tuple(theta[t] for t in T) == S:
                out[T] = 1
        return out

    def d_terms(self, p, S):
        q = len(S) - 1
        if self.max_degree is not None and q + 1 > self.max_degree:
            return {}
        out = {}
        for v in range(p + 1):
            if v in S:
                continue
            T = tuple(sorted(S + (v,)))
            _add(out, T, (-1) ** T.index(v))
        return out

    def mult_terms(self, p, S, U):
        # Whitney product: front face of the first, back face of the second
        if S[-1] != U[0]:
            return {}
        T = S + U[1:]
        if self.max_degree is not None and len(T) - 1 > self.max_degree:
            return {}
        return {T: 1}

    def unit_terms(self, p):
        return {(v,): 1 for v in range(p + 1)}


def broken_theory(ring: str = "Z") -> CochainTheory:
    """S• with every generator of positive degree dropped; violates the homology axiom."""
    return CochainTheory(ring, max_degree=0, name=f"S({ring})-truncated")


class SullivanForms(SimplicialDGA):
    """Polynomial forms over Q, homogeneous model of the weight filtration.

    Basis of F_w A^q_p: (a, S) standing for t^a dt_S with a ∈ N^{p+1}, |a| = w - q,
    S ⊆ {1..p} increasing, |S| = q (dt_0 is eliminated by Σ dt_i = 0).
    """

    ring = "Q"
    weighted = True
    commutative = True
    name = "Sullivan"

    def basis(self, p, q, w=None):
        if w is None:
            raise CutoffRequired("Sullivan forms need a weight")
        if q < 0 or q > p or w < q:
            return []
        exps = [a for a in itertools.product(range(w - q + 1), repeat=p + 1) if sum(a) == w - q]
        return [(a, S) for a in sorted(exps, reverse=True) for S in itertools.combinations(range(1, p + 1), q)]

    def degree(self, x):
        return len(x[1])

    def weight(self, x):
        return sum(x[0]) + len(x[1])

    @staticmethod
    def normalize(p: int, terms: dict) -> dict:
        """Sort dt's with signs and eliminate dt_0 = -Σ_{i>=1} dt_i."""
        out = {}
        stack = list(terms.items())
        while stack:
            (a, S), c = stack.pop()
            if not c:
                continue
            srt, sign = _sort_sign(S)
            if srt is None:
                continue
            if srt and srt[0] == 0:
                for i in range(1, p + 1):
                    stack.append(((a, (i,) + srt[1:]), -c * sign))
                continue
            _add(out, (a, srt), c * sign)
        return out

    def pullback_terms(self, x, theta, n):
        a, S = x
        m = len(theta) - 1
        pre = [[j for j in range(m + 1) if theta[j] == k] for k in range(n + 1)]
        terms = {((0,) * (m + 1), ()): 1}
        for k, e in enumerate(a):
            for _ in range(e):
                new = {}
                for (b, T), c in terms.items():
                    for j in pre[k]:
                        b2 = list(b)
                        b2[j] += 1
                        _add(new, (tuple(b2), T), c)
                terms = new
        for k in S:
            new = {}
            for (b, T), c in terms.items():
                for j in pre[k]:
                    _add(new, (b, T + (j,)), c)
            terms = new
        return self.normalize(m, terms)

    def d_terms(self, p, x):
        a, S = x
        terms = {}
        for i, e in enumerate(a):
            if e:
                b = list(a)
                b[i] -= 1
                _add(terms, (tuple(b), (i,) + S), e)
        return self.normalize(p, terms)

    def mult_terms(self, p, x, y):
        (a, S), (b, T) = x, y
        return self.normalize(p, {(tuple(u + v for u, v in zip(a, b)), S + T): 1})

    def unit_terms(self, p):
        return {((0,) * (p + 1), ()): 1}

    def inclusion(self, p: int, q: int, w: int) -> Matrix:
        """F_{w-1} -> F_w: multiplication by Σ t_i."""
        key = ("inc", p, q, w)
        cache = self._cache()
        if key not in cache:
            src, tgt = self.basis(p, q, w - 1), self.basis(p, q, w)
            cols = []
            for a, S in src:
                terms = {}
                for i in range(p + 1):
                    b = list(a)
                    b[i] += 1
                    _add(terms, (tuple(b), S), 1)
                cols.append(_vector(tgt, terms, self.ring))
            cache[key] = Matrix.from_columns(cols, len(tgt))
        return cache[key]

    def power_of_sum(self, p: int, w: int) -> dict:
        """(Σ t_i)^w: the image of 1 in F_w."""
        terms = {((0,) * (p + 1), ()): 1}
        for _ in range(w):
            new = {}
            for (a, S), c in terms.items():
                for i in range(p + 1):
                    b = list(a)
                    b[i] += 1
                    _add(new, (tuple(b), S), c)
            terms = new
        return terms


# ---------------------------------------------------------------------------
# finite simplicial sets as skeleta


class Skeleton:
    """Nondegenerate simplices by dimension and their faces as (simplex, θ) in EZ form."""

    def __init__(self, simplices: dict, faces: dict, name: str = ""):
        self.simplices = simplices
        self.faces = faces
        self.dim = max((k for k, v in simplices.items() if v), default=-1)
        self.name = name

    @classmethod
    def of(cls, X) -> "Skeleton":
        if isinstance(X, Skeleton):
            return X
        if isinstance(X, sim.SimplicialSet):
            simplices, faces = {}, {}
            for k in range(X.dim + 1):
                simplices[k] = list(X.cells_of_dim(k))
                if k:
                    for c in simplices[k]:
                        faces[c] = [tuple(f) for f in X.faces[c]]
            return cls(simplices, faces, X.name)
        # vertex-determined (cotriple.VertexComplex): strict vertex sequences
        simplices, faces = {}, {}
        k = 0
        while True:
            ss = X.simplices(k, True)
            if not ss:
                break
            simplices[k] = ss
            if k:
                for s in ss:
                    faces[s] = [(s[:i] + s[i + 1:], tuple(range(k))) for i in range(k + 1)]
            k += 1
        return cls(simplices, faces, getattr(X, "name", ""))


# ---------------------------------------------------------------------------
# A*(X)


class CohomologyTheoryValue:
    """A*(X) (or F_w A*(X)) as a cochain complex on a kernel basis of compatible families."""

    def __init__(self, A: SimplicialDGA, X, window: int | None = None, weight=None):
        if A.weighted and weight is None:
            raise CutoffRequired(f"{A.name} is weight-filtered; give a weight cutoff")
        self.A, self.weight = A, weight
        self.X = Skeleton.of(X)
        top = self.X.dim if window is None else min(window + 1, self.X.dim)
        self.exact_top = self.X.dim if window is None or window + 1 > self.X.dim else window
        self.top = top
        self.ambient, self.basis, self._readers = {}, {}, {}
        for q in range(top + 2):
            self._build(q)
        diffs = {q: self._d_matrix(q) for q in range(top + 1)}
        self.complex = ChainComplex([self.basis[q].ncols for q in range(top + 2)], diffs, ring=A.ring,
                                    orientation="cochain", exact_top=self.exact_top)

    def _blocks(self, q):
        out = []
        for k in sorted(self.X.simplices):
            for s in self.X.simplices[k]:
                out.append((s, k, len(self.A.basis(k, q, self.weight))))
        return out

    def _build(self, q):
        A, w = self.A, self.weight
        blocks = self._blocks(q)
        offset, acc = {}, 0
        for s, k, r in blocks:
            offset[s] = acc
            acc += r
        rows = []
        for s, k, r in blocks:
            if not k:
                continue
            for i, (t, theta) in enumerate(self.X.faces[s]):
                face = A.face(k, i, q, w)
                tdim = theta[-1]
                pb = A.pullback(theta, tdim, q, w)
                for row in range(face.nrows):
                    vec = {}
                    for col in range(r):
                        if face[row, col]:
                            vec[offset[s] + col] = face[row, col]
                    for col in range(pb.ncols):
                        if pb[row, col]:
                            vec[offset[t] + col] = vec.get(offset[t] + col, 0) - pb[row, col]
                    if vec:
                        rows.append(vec)
        M = Matrix.from_entries(len(rows), acc, {(i, j): v for i, r in enumerate(rows) for j, v in r.items()})
        K = integer_kernel(M) if A.ring == "Z" else rational_kernel(M)
        self.ambient[q] = (blocks, offset, acc)
        self.basis[q] = K
        self._readers[q] = _coordinate_reader(K)

    def family(self, q: int, coords) -> dict:
        """Coordinates -> {simplex: vector in A^q_{dim}}."""
        blocks, offset, _ = self.ambient[q]
        vec = self.basis[q].apply(list(coords))
        return {s: vec[offset[s]:offset[s] + r] for s, k, r in blocks}

    def coords(self, q: int, family: dict, check: bool = True) -> list:
        blocks, offset, n = self.ambient[q]
        vec = [0] * n
        for s, k, r in blocks:
            vec[offset[s]:offset[s] + r] = list(family.get(s, [0] * r))
        rows, inv = self._readers[q]
        c = inv.apply([vec[r] for r in rows])
        if self.A.ring == "Z":
            if any(Fraction(x).denominator != 1 for x in c):
                raise NotSolvable("family is not integral in the kernel basis")
            c = [int(x) for x in c]
        if check and self.basis[q].apply(c) != [Fraction(x) if self.A.ring == "Q" else x for x in vec]:
            raise NotSolvable("not a compatible family")
        return c

    def _d_matrix(self, q):
        blocks, offset, _ = self.ambient[q]
        cols = []
        B = self.basis[q]
        for j in range(B.ncols):
            fam = self.family(q, [1 if i == j else 0 for i in range(B.ncols)])
            out = {}
            for s, k, r in blocks:
                out[s] = self.A.d(k, q, self.weight).apply(fam[s])
            cols.append(self.coords(q + 1, out, check=False))
        return Matrix.from_columns(cols, self.basis[q + 1].ncols)

    def cup(self, q1: int, u, q2: int, v, weight2=None) -> list:
        """Simplexwise product; the result lives in the value with weight self.weight + weight2."""
        fu, fv = self.family(q1, u), self.family(q2, v)
        out = {}
        for k in sorted(self.X.simplices):
            for s in self.X.simplices[k]:
                bu = self.A.basis(k, q1, self.weight)
                bv = self.A.basis(k, q2, self.weight if weight2 is None else weight2)
                du = {x: c for x, c in zip(bu, fu[s]) if c}
                dv = {x: c for x, c in zip(bv, fv[s]) if c}
                out[s] = self.A.mult_vec(k, du, dv)
        return out

    def homology(self) -> dict:
        return {q: h for q, h in self.complex.homology_all().items()}

    def betti(self) -> list[int]:
        return [h.betti for h in self.complex.homology_all().values()]


def _coordinate_reader(K: Matrix):
    """Rows r of K with K[r] invertible, and that inverse: coords(v) = inv · v[r]."""
    n, k = K.shape
    if k == 0:
        return [], Matrix.zeros(0, 0)
    _, rows = rref(K.T.to_fraction())
    sub = K.submatrix(rows, range(k)).to_fraction()
    R, _ = rref(hstack([sub, Matrix.identity(k).to_fraction()], k))
    return rows, R.submatrix(range(k), range(k, 2 * k))


def theory_value(A: SimplicialDGA, X, window: int | None = None, weight_cutoff=None) -> CohomologyTheoryValue:
    return CohomologyTheoryValue(A, X, window, weight_cutoff)


def filtration_inclusion(Fv: CohomologyTheoryValue, Fw: CohomologyTheoryValue, q: int) -> Matrix:
    """F_v A^q(X) -> F_w A^q(X) for v <= w: multiplication by (Σ t)^(w-v)."""
    A = Fw.A
    blocks, _, _ = Fv.ambient[q]
    cols = []
    for j in range(Fv.basis[q].ncols):
        fam = Fv.family(q, [1 if i == j else 0 for i in range(Fv.basis[q].ncols)])
        out = {}
        for s, k, r in blocks:
            vec = fam[s]
            for u in range(Fv.weight + 1, Fw.weight + 1):
                vec = A.inclusion(k, q, u).apply(vec)
            out[s] = vec
        cols.append(Fw.coords(q, out, check=False))
    return Matrix.from_columns(cols, Fw.basis[q].ncols)


def weight_graded_betti(A: SullivanForms, X, w: int, window: int | None = None, cache: dict | None = None) -> list[int]:
    """Betti numbers of F_w/F_{w-1} of A*(X), by ranks over Q."""
    cache = {} if cache is None else cache
    for u in (w - 1, w):
        if u >= 0 and u not in cache:
            cache[u] = theory_value(A, X, window, u)
    Fw = cache[w]
    if w == 0:
        return Fw.betti()
    Fv = cache[w - 1]
    top = Fw.exact_top
    inc = {q: filtration_inclusion(Fv, Fw, q) for q in range(Fw.top + 2)}
    dims, drank = [], {}
    for q in range(top + 1):
        dims.append(Fw.basis[q].ncols - inc[q].ncols)  # inclusion is injective
    for q in range(-1, top + 1):
        if q < 0:
            drank[q] = 0
            continue
        im_inc = rank(inc[q + 1])
        both = rank(hstack([inc[q + 1], Fw.complex.d(q)], Fw.basis[q + 1].ncols))
        drank[q] = both - im_inc
    return [dims[q] - drank[q] - drank[q - 1] for q in range(top + 1)]


# ---------------------------------------------------------------------------
# cochains with cup product


class Cochains:
    """Normalized cochains of a finite simplicial set with the Whitney cup product."""

    def __init__(self, X: sim.SimplicialSet, ring: str = "Z", window: int | None = None):
        self.X = X
        self.chains = sim.normalized_chains(X, window, ring)
        self.complex = dualize(self.chains)
        self.ring = ring
        self.index = {n: {x: i for i, x in enumerate(self.chains.labels.get(n, []))} for n in self.chains.degrees()}

    def basis(self, n: int) -> list:
        return self.chains.labels.get(n, [])

    def cup(self, p: int, u, q: int, v) -> list:
        out = []
        for x in self.basis(p + q):
            front = sim.front_face(self.X, x, p)
            back = sim.back_face(self.X, x, p)
            a = u[self.index[p][front]] if front in self.index.get(p, {}) else 0
            b = v[self.index[q][back]] if back in self.index.get(q, {}) else 0
            out.append(a * b)
        return out

    def unit(self) -> list:
        return [1] * len(self.basis(0))


def cochains(X: sim.SimplicialSet, ring: str = "Z", window: int | None = None) -> Cochains:
    return Cochains(X, ring, window)


def cohomology_generators(C: ChainComplex, q: int) -> list[list]:
    """Integral cocycles whose classes generate the free part of H^q (rational lift over Q)."""
    Z = integer_kernel(C.d(q)) if C.ring == "Z" else rational_kernel(C.d(q))
    B = C.d(q - 1) if q - 1 in C.degrees() else Matrix.zeros(C.rank(q), 0)
    gens, current = [], B
    base = rank(current)
    for j in range(Z.ncols):
        col = Z.column(j)
        trial = hstack([current, Matrix.from_columns([col], C.rank(q))], C.rank(q))
        r = rank(trial)
        if r > base:
            gens.append(col)
            current, base = trial, r
    return gens


def canonical_evaluation(T: CohomologyTheoryValue, C: Cochains) -> dict:
    """S•-theory value -> cochains: ω ↦ (σ ↦ coefficient of e_{[0..q]} in ω_σ), as matrices."""
    out = {}
    for q in range(T.top + 1):
        cols = []
        blocks, _, _ = T.ambient[q]
        for j in range(T.basis[q].ncols):
            fam = T.family(q, [1 if i == j else 0 for i in range(T.basis[q].ncols)])
            col = []
            for x in C.basis(q):
                cell = x[0]
                b = T.A.basis(q, q)
                col.append(fam[cell][b.index(tuple(range(q + 1)))] if cell in fam else 0)
            cols.append(col)
        out[q] = Matrix.from_columns(cols, len(C.basis(q)))
    return out


# ---------------------------------------------------------------------------
# axioms


def check_axioms(A: SimplicialDGA, p_max: int = 3, q_max: int = 3, weight_max: int = 4) -> dict:
    checks = []
    weights = range(weight_max + 1) if A.weighted else [None]
    # structure: simplicial identities via composition of pullbacks, d and product natural
    struct = True
    for p in range(1, p_max + 1):
        for w in weights:
            for q in range(q_max + 1):
                for i in range(p + 1):
                    for j in range(i + 1, p + 1 if p >= 2 else 0):
                        # ∂_i ∂_j = ∂_{j-1} ∂_i  (pullbacks compose contravariantly)
                        struct &= A.face(p - 1, i, q, w) @ A.face(p, j, q, w) == \
                            A.face(p - 1, j - 1, q, w) @ A.face(p, i, q, w)
                    struct &= A.face(p, i, q + 1, w) @ A.d(p, q, w) == A.d(p - 1, q, w) @ A.face(p, i, q, w)
                for j in range(p):
                    for i in range(p + 1):
                        lhs = A.face(p, i, q, w) @ A.degeneracy(p - 1, j, q, w)
                        if i in (j, j + 1):
                            struct &= lhs == Matrix.identity(lhs.nrows)
                struct &= (A.d(p, q + 1, w) @ A.d(p, q, w)).is_zero()
    checks.append({"name": f"structure[{A.name}]", "status": "PASS" if struct else "FAIL"})
    # product: associative, unital, Leibniz, natural for faces (p <= 2)
    prod = True
    for p in range(0, min(p_max, 2) + 1):
        ws = [(w1, w2) for w1 in weights for w2 in weights if w1 is None or w1 + w2 <= weight_max]
        for w1, w2 in ws:
            for q1 in range(p + 1):
                for q2 in range(p + 1 - q1):
                    for x in A.basis(p, q1, w1):
                        for y in A.basis(p, q2, w2):
                            xy = A.mult_vec(p, {x: 1}, {y: 1})
                            dx = dict(zip(A.basis(p, q1 + 1, w1), A.d(p, q1, w1).column(A.basis(p, q1, w1).index(x))))
                            dy = dict(zip(A.basis(p, q2 + 1, w2), A.d(p, q2, w2).column(A.basis(p, q2, w2).index(y))))
                            wsum = None if w1 is None else w1 + w2
                            tgt = A.basis(p, q1 + q2 + 1, wsum)
                            lhs = A.d(p, q1 + q2, wsum).apply(_vector(A.basis(p, q1 + q2, wsum), xy, A.ring))
                            rhs_t = A.mult_vec(p, {k: v for k, v in dx.items() if v}, {y: 1})
                            for k, v in A.mult_vec(p, {x: 1}, {k: v for k, v in dy.items() if v}).items():
                                _add(rhs_t, k, (-1) ** q1 * v)
                            prod &= list(lhs) == _vector(tgt, rhs_t, A.ring)
                            one = A.unit_terms(p)
                            if w1 == 0 or w1 is None:
                                prod &= A.mult_vec(p, one, {y: 1}) == {y: 1}
    checks.append({"name": f"product[{A.name}]", "status": "PASS" if prod else "FAIL"})
    # (a) homology axiom
    ok_a = True
    for p in range(p_max + 1):
        for w in weights:
            C = A.level_complex(p, w, top=min(q_max, p))
            H = C.homology_all()
            unit = A.unit_terms(p) if not A.weighted else A.power_of_sum(p, w)
            u = _vector(A.basis(p, 0, w), unit, A.ring)
            kern = (integer_kernel if A.ring == "Z" else rational_kernel)(C.d(0))
            gen = kern.ncols == 1 and _spans(kern, u, A.ring)
            ok_a &= gen and all(H[q].is_zero for q in H if q > 0)
            if A.weighted and w:
                ok_a &= all(b == 0 for b in _graded_level_betti(A, p, w, min(q_max, p)))
    checks.append({"name": f"axiom-a[{A.name}]", "status": "PASS" if ok_a else "FAIL",
                   "weights": list(weights) if A.weighted else None})
    # (b) homotopy axiom
    if A.weighted:
        shifts = {}
        for p in range(1, p_max + 1):
            for q in range(min(q_max, p - 1) + 1):
                for w in weights:
                    shifts[(p, q, w)] = extension_shift(A, p, q, w, max_shift=p)
        ok_b = all(v is not None for v in shifts.values())
        criterion = "extension-with-filtration-shift"
    else:
        ok_b = True
        for q in range(q_max + 1):
            ranks = [len(A.basis(p, q)) for p in range(p_max + 1)]
            diffs = {}
            for p in range(1, p_max + 1):
                m = Matrix.zeros(ranks[p - 1], ranks[p])
                for i in range(p + 1):
                    f = A.face(p, i, q)
                    m = m + (f if i % 2 == 0 else -f)
                diffs[p] = m
            C = ChainComplex(ranks, diffs, ring=A.ring, exact_top=p_max - 1)
            ok_b &= C.is_acyclic(p_max - 1)
            ok_b &= all(restriction_surjective(A, p, q) for p in range(1, p_max + 1))
        criterion = "normalized-complex-acyclicity"
    entry = {"name": f"axiom-b[{A.name}]", "status": "PASS" if ok_b else "FAIL", "criterion": criterion}
    if A.weighted:
        entry["max_shift"] = max((v for v in shifts.values() if v is not None), default=0)
    checks.append(entry)
    # (c) freeness: every level is presented on an explicit basis over R
    checks.append({"name": f"axiom-c[{A.name}]", "status": "PASS", "criterion": "structural"})
    return {"theory": A.name, "ring": A.ring, "p_max": p_max, "q_max": q_max,
            "weight_max": weight_max if A.weighted else None, "checks": checks}


def _spans(kern: Matrix, u: list, ring: str) -> bool:
    try:
        c = coordinates(kern, u, integral=ring == "Z")
    except NotSolvable:
        return False
    return len(c) == 1 and c[0] in (1, -1) if ring == "Z" else len(c) == 1 and c[0] != 0


def _graded_level_betti(A: SullivanForms, p: int, w: int, top: int) -> list[int]:
    """Betti numbers of F_w/F_{w-1} on the single level Δ[p]."""
    out = []
    for q in range(top + 1):
        def drank(qq):
            if qq < 0 or qq > p:
                return 0
            inc = A.inclusion(p, qq + 1, w)
            return rank(hstack([inc, A.d(p, qq, w)], inc.nrows)) - rank(inc)
        dim = len(A.basis(p, q, w)) - len(A.basis(p, q, w - 1))
        out.append(dim - drank(q) - drank(q - 1))
    return out


def boundary_skeleton(p: int) -> Skeleton:
    simplices = {k: list(itertools.combinations(range(p + 1), k + 1)) for k in range(p)}
    faces = {s: [(s[:i] + s[i + 1:], tuple(range(k))) for i in range(k + 1)]
             for k in range(1, p) for s in simplices[k]}
    return Skeleton(simplices, faces, f"dDelta[{p}]")


def simplex_skeleton(p: int) -> Skeleton:
    simplices = {k: list(itertools.combinations(range(p + 1), k + 1)) for k in range(p + 1)}
    faces = {s: [(s[:i] + s[i + 1:], tuple(range(k))) for i in range(k + 1)]
             for k in range(1, p + 1) for s in simplices[k]}
    return Skeleton(simplices, faces, f"Delta[{p}]")


def restriction_matrix(full: CohomologyTheoryValue, part: CohomologyTheoryValue, q: int) -> Matrix:
    """A^q(X) -> A^q(Y) for a subcomplex Y with the same simplex keys."""
    cols = []
    for j in range(full.basis[q].ncols):
        fam = full.family(q, [1 if i == j else 0 for i in range(full.basis[q].ncols)])
        cols.append(part.coords(q, {s: fam[s] for s, _, _ in part.ambient[q][0]}))
    return Matrix.from_columns(cols, part.basis[q].ncols)


def restriction_surjective(A: SimplicialDGA, p: int, q: int, w=None) -> bool:
    """A^q(Δ[p]) -> A^q(∂Δ[p]) is onto (over Z: onto the lattice)."""
    if q >= p:
        # A^q(∂Δ[p]) is computed through its dimension p-1 only; beyond that check directly
        part = theory_value(A, boundary_skeleton(p), None, w)
        if q > part.top:
            return True
    full = theory_value(A, simplex_skeleton(p), None, w)
    part = theory_value(A, boundary_skeleton(p), None, w)
    f = restriction_matrix(full, part, q)
    if A.ring == "Q":
        return rank(f) == f.nrows
    from .exactlin import invariant_factors
    fac = invariant_factors(f)
    return len(fac) == f.nrows and all(abs(x) == 1 for x in fac)


def extension_shift(A: SullivanForms, p: int, q: int, w: int, max_shift: int):
    """Least s <= max_shift with F_w A^q(∂Δ[p]) ⊆ image of F_{w+s} A^q(Δ[p]) (inside F_{w+s} of the boundary)."""
    part_w = theory_value(A, boundary_skeleton(p), None, w)
    if q > part_w.top or part_w.basis[q].ncols == 0:
        return 0
    for s in range(max_shift + 1):
        full = theory_value(A, simplex_skeleton(p), None, w + s)
        part = theory_value(A, boundary_skeleton(p), None, w + s)
        res = restriction_matrix(full, part, q)
        inc = filtration_inclusion(part_w, part, q)
        if rank(hstack([res, inc], res.nrows)) == rank(res):
            return s
    return None


# ---------------------------------------------------------------------------
# presentability: a section θ of η: A^q(X) -> A^qG(X)


def _vertex_complex(X):
    from .cotriple import VertexComplex
    if isinstance(X, VertexComplex):
        return X
    return VertexComplex.from_simplicial_set(X)


def _dedup(seq):
    """Weakly increasing vertex sequence -> (strict simplex, θ) with seq = τ∘θ."""
    tau, theta = [], []
    for v in seq:
        if not tau or tau[-1] != v:
            tau.append(v)
        theta.append(len(tau) - 1)
    return tuple(tau), tuple(theta)


class PresentabilitySection:
    """θ_X: A^qG(X) -> A^q(X) by the skeletal recursion θ'_m = π + s(θ'_{m-1} g - f π).

    G(X) is truncated to single simplices Δ[n], n <= N; θ reads only the components
    indexed by nondegenerate simplices, η writes all of them.
    """

    def __init__(self, A: SimplicialDGA, X, q: int, N: int | None = None, weight=None):
        self.A, self.q, self.weight = A, q, weight
        self.X = _vertex_complex(X)
        self.skel = Skeleton.of(self.X)
        self.N = self.skel.dim if N is None else N
        if self.N < self.skel.dim:
            raise ValueError("truncation must reach the dimension of X")
        self.value = theory_value(A, self.skel, None, weight)
        if q not in self.value.basis:
            raise ValueError(f"degree {q} is above the dimension of X")
        self.full, self.part, self.f, self.s = {}, {}, {}, {}
        for m in range(self.N + 1):
            self.full[m] = theory_value(A, simplex_skeleton(m), None, weight)
            if m:
                self._section(m)
        # index of A^qG(X): (α, j) with α: Δ[n] -> X and j a basis index of A^q(Δ[n])
        self.components = [(n, a) for n in range(self.N + 1) for a in self.X.maps_from((n,))]
        self.offsets, acc = {}, 0
        for n, a in self.components:
            self.offsets[a] = acc
            acc += self._rank_full(n)
        self.rank = acc

    def _rank_full(self, n):
        T = self.full[n]
        return T.basis[self.q].ncols if self.q in T.basis else 0

    def _section(self, m):
        self.part[m] = part = theory_value(self.A, boundary_skeleton(m), None, self.weight)
        q = self.q
        if q > part.top:
            self.f[m] = None
            self.s[m] = None
            return
        f = restriction_matrix(self.full[m], part, q)
        self.f[m] = f
        cols = []
        for j in range(f.nrows):
            e = [1 if i == j else 0 for i in range(f.nrows)]
            try:
                x = solve_integer(f, e) if self.A.ring == "Z" else solve_rational(f, e)
            except NotSolvable as exc:
                raise SectionUnavailable(f"A^{q}(Δ[{m}]) -> A^{q}(∂Δ[{m}]) is not onto") from exc
            cols.append(x)
        self.s[m] = Matrix.from_columns(cols, f.ncols)

    # η
    def eta(self, coords) -> list:
        fam = self.value.family(self.q, coords)
        out = [0] * self.rank
        for n, a in self.components:
            T = self.full[n]
            if not self._rank_full(n):
                continue
            comp = {}
            for k, simp in T.X.simplices.items():
                for U in simp:
                    tau, theta = _dedup(tuple(a[u] for u in U))
                    comp[U] = self.A.pullback(theta, len(tau) - 1, self.q, self.weight).apply(fam[tau])
            c = T.coords(self.q, comp)
            out[self.offsets[a]:self.offsets[a] + len(c)] = c
        return out

    # θ
    def theta(self, xi) -> list:
        memo = {}
        for k in sorted(self.skel.simplices):
            for sigma in self.skel.simplices[k]:
                memo[sigma] = self._theta_top(sigma, xi, memo)[0]
        return self.value.coords(self.q, memo)

    def _theta_top(self, sigma, xi, memo):
        """Top component of θ'_m(σ^*ξ), and whether f θ' = θ' g held at σ."""
        m = len(sigma) - 1
        T = self.full[m]
        r = self._rank_full(m)
        if self.q not in T.basis:
            return [0] * len(self.A.basis(m, self.q, self.weight)), True
        c = xi[self.offsets[sigma]:self.offsets[sigma] + r]
        pi = T.family(self.q, c)
        top = tuple(range(m + 1))
        if m == 0 or self.s[m] is None:
            return pi[top], True
        part = self.part[m]
        diff = {}
        for U in (u for k, us in part.X.simplices.items() for u in us):
            b = memo[tuple(sigma[u] for u in U)]
            diff[U] = [x - y for x, y in zip(b, pi[U])]
        lift = self.s[m].apply(part.coords(self.q, diff))
        ext = T.family(self.q, lift)
        out = {U: [x + y for x, y in zip(pi[U], ext[U])] for U in pi}
        ok = all(out[U] == memo[tuple(sigma[u] for u in U)] for U in diff)
        return out[top], ok

    def commutes(self, xi) -> bool:
        memo, ok = {}, True
        for k in sorted(self.skel.simplices):
            for sigma in self.skel.simplices[k]:
                memo[sigma], good = self._theta_top(sigma, xi, memo)
                ok &= good
        return ok

    def theta_matrix(self) -> Matrix:
        cols = [self.theta([1 if i == j else 0 for i in range(self.rank)]) for j in range(self.rank)]
        return Matrix.from_columns(cols, self.value.basis[self.q].ncols)

    def eta_matrix(self) -> Matrix:
        k = self.value.basis[self.q].ncols
        return Matrix.from_columns([self.eta([1 if i == j else 0 for i in range(k)]) for j in range(k)], self.rank)


def build_presentability_section(A: SimplicialDGA, X, q: int, N: int | None = None, weight=None,
                                 seed: int = 0, samples: int = 8) -> dict:
    import random
    P = PresentabilitySection(A, X, q, N, weight)
    th, et = P.theta_matrix(), P.eta_matrix()
    k = et.ncols
    prod = th @ et
    split = prod == (Matrix.identity(k).to_fraction() if A.ring == "Q" else Matrix.identity(k))
    rng = random.Random(seed)
    comm = all(P.commutes([rng.randint(-3, 3) for _ in range(P.rank)]) for _ in range(samples))
    comm &= all(P.commutes([1 if i == j else 0 for i in range(P.rank)]) for j in range(P.rank))
    return {"name": f"presentability[{A.name},{P.X.name},q={q}]", "status": "PASS" if split and comm else "FAIL",
            "theta_eta_identity": split, "squares_commute": comm, "rank_AqX": k, "rank_AqGX": P.rank,
            "section": P}


# ---------------------------------------------------------------------------
# cup products on cochains


def _unit_vec(n, j):
    return [1 if i == j else 0 for i in range(n)]


def check_cup(C: Cochains, max_total: int = 4) -> list[dict]:
    """Associativity, unit and Leibniz of the cup product on basis cochains."""
    top = min(C.complex.top, max_total)
    rk = {n: len(C.basis(n)) for n in range(C.complex.top + 1)}
    assoc = unit = leibniz = True
    u1 = C.unit()
    for p in range(top + 1):
        for j in range(rk[p]):
            e = _unit_vec(rk[p], j)
            unit &= C.cup(0, u1, p, e) == e and C.cup(p, e, 0, u1) == e
    for p in range(top + 1):
        for q in range(top + 1 - p):
            for i in range(rk[p]):
                for j in range(rk[q]):
                    a, b = _unit_vec(rk[p], i), _unit_vec(rk[q], j)
                    if p + q + 1 <= C.complex.top:
                        lhs = C.complex.d(p + q).apply(C.cup(p, a, q, b))
                        rhs1 = C.cup(p + 1, C.complex.d(p).apply(a), q, b)
                        rhs2 = C.cup(p, a, q + 1, C.complex.d(q).apply(b))
                        leibniz &= lhs == [x + (-1) ** p * y for x, y in zip(rhs1, rhs2)]
                    for r in range(top + 1 - p - q):
                        for k in range(rk[r]):
                            c = _unit_vec(rk[r], k)
                            assoc &= C.cup(p + q, C.cup(p, a, q, b), r, c) == C.cup(p, a, q + r, C.cup(q, b, r, c))
    return [{"name": f"cup-associative[{C.X.name}]", "status": "PASS" if assoc else "FAIL"},
            {"name": f"cup-unit[{C.X.name}]", "status": "PASS" if unit else "FAIL"},
            {"name": f"cup-leibniz[{C.X.name}]", "status": "PASS" if leibniz else "FAIL"}]


def commutativity_witness(C: Cochains):
    """Basis cocycles a, b of degrees p, q with a∪b != (-1)^{pq} b∪a at cochain level, or None."""
    for p in range(C.complex.top + 1):
        for q in range(C.complex.top + 1 - p):
            za = integer_kernel(C.complex.d(p)) if p < C.complex.top else Matrix.identity(len(C.basis(p)))
            zb = integer_kernel(C.complex.d(q)) if q < C.complex.top else Matrix.identity(len(C.basis(q)))
            for a in za.columns():
                for b in zb.columns():
                    if C.cup(p, a, q, b) != [(-1) ** (p * q) * x for x in C.cup(q, b, p, a)]:
                        return {"p": p, "q": q, "a": a, "b": b}
    return None


def in_boundaries(C: ChainComplex, n: int, v: list) -> bool:
    if n - 1 < C.lower_bound:
        return not any(v)
    B = C.d(n - 1)
    return rank(hstack([B, Matrix.from_columns([v], B.nrows)], B.nrows)) == rank(B)


def check_h_commutative(C: Cochains) -> bool:
    """a∪b - (-1)^{pq} b∪a is a coboundary for cocycles a, b (over Q)."""
    top = C.complex.top
    for p in range(top + 1):
        for q in range(top + 1 - p):
            Zp = rational_kernel(C.complex.d(p)) if p < top else Matrix.identity(len(C.basis(p)))
            Zq = rational_kernel(C.complex.d(q)) if q < top else Matrix.identity(len(C.basis(q)))
            for a in Zp.columns():
                for b in Zq.columns():
                    diff = [x - (-1) ** (p * q) * y for x, y in zip(C.cup(p, a, q, b), C.cup(q, b, p, a))]
                    if not in_boundaries(C.complex, p + q, diff):
                        return False
    return True


def torus_cup_generates(C: Cochains) -> dict:
    """Product of the two H^1 generators generates H^2 = Z (up to sign)."""
    g1 = cohomology_generators(C.complex, 1)
    g2 = cohomology_generators(C.complex, 2)
    prod = C.cup(1, g1[0], 1, g1[1])
    B = C.complex.d(1)
    # prod = c·g2 + coboundary; generation means c = ±1
    M = hstack([Matrix.from_columns([g2[0]], B.nrows), B], B.nrows)
    sol = solve_rational(M, prod)
    c = sol[0]
    return {"name": f"torus-cup-generator[{C.X.name}]", "status": "PASS" if c in (1, -1) else "FAIL",
            "coefficient": str(c)}


def evaluation_isomorphism(X: sim.SimplicialSet, ring: str = "Z") -> dict:
    """theory_value(S•) -> cochains(X) by evaluation on top simplices: a chain isomorphism respecting cup."""
    T = theory_value(CochainTheory(ring), X)
    C = cochains(X, ring)
    ev = canonical_evaluation(T, C)
    from .exactlin import invariant_factors
    iso = all(ev[q].nrows == ev[q].ncols and
              (rank(ev[q]) == ev[q].nrows if ring == "Q" else all(abs(x) == 1 for x in invariant_factors(ev[q]))
               and len(invariant_factors(ev[q])) == ev[q].nrows) for q in ev)
    chain = all(ev[q + 1] @ T.complex.d(q) == C.complex.d(q) @ ev[q] for q in ev if q + 1 in ev)
    mult = True
    for p in ev:
        for q in ev:
            if p + q not in ev:
                continue
            for i in range(T.basis[p].ncols):
                for j in range(T.basis[q].ncols):
                    u, v = _unit_vec(T.basis[p].ncols, i), _unit_vec(T.basis[q].ncols, j)
                    prod = T.coords(p + q, {s: _vector(T.A.basis(k, p + q), terms, ring)
                                            for (s, terms), k in _with_dims(T, T.cup(p, u, q, v))})
                    mult &= ev[p + q].apply(prod) == C.cup(p, ev[p].apply(u), q, ev[q].apply(v))
    ok = iso and chain and mult
    return {"name": f"evaluation-iso[{X.name}]", "status": "PASS" if ok else "FAIL",
            "isomorphism": iso, "chain_map": chain, "multiplicative": mult}


def _with_dims(T, fam):
    dims = {s: k for k, ss in T.X.simplices.items() for s in ss}
    return [((s, terms), dims[s]) for s, terms in fam.items()]


# ---------------------------------------------------------------------------
# comparison


def _theory_homology(A, X, window, cutoff):
    T = theory_value(A, X, window, cutoff if A.weighted else None)
    return T, {q: h for q, h in T.homology().items() if q <= T.exact_top}


def compare_theories(A: SimplicialDGA, B: SimplicialDGA, X, window: int | None = None, cutoff: int = 4,
                     p_max: int = 3, q_max: int = 3, check: bool = True) -> dict:
    """H(A*(X)) against H(B*(X)) per degree; Sullivan sides use F_cutoff and report gr_w."""
    if check:
        for T in (A, B):
            rep = check_axioms(T, p_max, q_max, min(cutoff, 3))
            bad = [c["name"] for c in rep["checks"] if c["status"] != "PASS"]
            if bad:
                raise AxiomFailure(f"{T.name}: {bad}")
    out = {"space": getattr(X, "name", ""), "theories": [A.name, B.name], "cutoff": cutoff}
    sides = []
    for T in (A, B):
        V, H = _theory_homology(T, X, window, cutoff)
        cache = {cutoff: V} if T.weighted else None
        side = {"theory": T.name, "betti": [H[q].betti for q in sorted(H)],
                "torsion": [list(H[q].torsion) for q in sorted(H)]}
        if T.weighted:
            side["per_weight"] = {str(w): weight_graded_betti(T, X, w, window, cache) for w in range(cutoff + 1)}
        sides.append(side)
    out["sides"] = sides
    ok = sides[0]["betti"] == sides[1]["betti"]
    out["checks"] = [{"name": f"compare[{A.name},{B.name},{out['space']}]", "status": "PASS" if ok else "FAIL",
                      "degrees_verified": list(range(len(sides[0]["betti"])))}]
    return out

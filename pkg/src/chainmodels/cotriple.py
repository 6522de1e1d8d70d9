"""Truncated model-induced cotriple on finite ordered simplicial complexes.

G(X) is the disjoint union of models Δ[n̲] = Δ[n1] x ... x Δ[nr], one copy for
each simplicial map α: Δ[n̲] -> X.  Models are nerves of product posets, so a
simplex of a component is a weakly increasing sequence of grid points and a
simplicial map between nerves is determined by what it does to vertices.

An element of G^k(X) is written (comp, seq):
  comp = ((n̲1, α1), (n̲2, β2), ..., (n̲k, βk))
with α1 a vertex map grid(n̲1) -> X and βj a poset map grid(n̲j) -> grid(n̲(j-1)),
both stored as tuples indexed by grid points; seq lists points of grid(n̲k).
Simplices of X itself are ((), vertex sequence).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass
from functools import lru_cache

from .chains import (ChainComplex, ChainMap, SimplicialChainComplex, TruncationTooSmall,
                     WeakEquivalencePolicy, complex_from_sparse, em_simple, is_weak_equivalence)
from .exactlin import Matrix

FUNCTORS = ("S", "S_normalized")
DEFAULT_BUDGET = 400_000


class BudgetExceeded(RuntimeError):
    """The exact computation would need more basis elements than allowed."""

    def __init__(self, message: str, sizes: dict):
        super().__init__(message)
        self.sizes = sizes


@dataclass(frozen=True)
class TruncationParams:
    N: int = 2  # max simplex dimension of a factor
    R: int = 2  # max number of factors
    K: int = 2  # max bar level
    W: int = 2  # max chain degree

    def __post_init__(self):
        if min(self.N, self.R, self.K, self.W) < 0:
            raise ValueError("truncation parameters must be >= 0")

    @classmethod
    def parse(cls, text: str) -> "TruncationParams":
        return cls(*[int(t) for t in text.split(",")])

    def to_json(self) -> dict:
        return asdict(self)


def multi_indices(params: TruncationParams) -> list[tuple]:
    out = []
    for r in range(1, params.R + 1):
        out.extend(itertools.product(range(params.N + 1), repeat=r))
    return out


def _normalized(F: str) -> bool:
    if F not in FUNCTORS:
        raise ValueError(f"unknown chain functor {F!r}; expected one of {FUNCTORS}")
    return F == "S_normalized"


# ---------------------------------------------------------------------------
# models


class Model:
    """Nerve of the grid [n1] x ... x [nr] with the product order."""

    def __init__(self, dims):
        self.dims = tuple(dims)
        self.points = list(itertools.product(*[range(n + 1) for n in self.dims]))
        self.index = {p: i for i, p in enumerate(self.points)}
        self.size = len(self.points)
        self.identity = tuple(range(self.size))
        self.up = [[j for j in range(self.size) if self.le(i, j)] for i in range(self.size)]
        self._chains = {}

    def le(self, i: int, j: int) -> bool:
        return all(a <= b for a, b in zip(self.points[i], self.points[j]))

    def chains(self, q: int, strict: bool = False) -> list[tuple]:
        """q-simplices: weakly (or strictly) increasing sequences of q+1 points."""
        key = (q, strict)
        if key not in self._chains:
            if q == 0:
                res = [(i,) for i in range(self.size)]
            else:
                res = [c + (j,) for c in self.chains(q - 1, strict) for j in self.up[c[-1]]
                       if not (strict and j == c[-1])]
            self._chains[key] = res
        return self._chains[key]

    def concat_index(self, left: "Model", right: "Model", i: int, j: int) -> int:
        return self.index[left.points[i] + right.points[j]]


@lru_cache(maxsize=None)
def model(dims: tuple) -> Model:
    return Model(dims)


@lru_cache(maxsize=None)
def _maps_to_chain(dims: tuple, c: int) -> tuple:
    """Monotone maps grid(dims) -> [c], as tuples of values (points in grid order)."""
    M = model(dims)
    lower = [[M.index[p[:k] + (p[k] - 1,) + p[k + 1:]] for k in range(len(p)) if p[k] > 0] for p in M.points]
    out = []
    vals = [0] * M.size

    def rec(i):
        if i == M.size:
            out.append(tuple(vals))
            return
        lo = max((vals[j] for j in lower[i]), default=0)
        for v in range(lo, c + 1):
            vals[i] = v
            rec(i + 1)

    rec(0)
    return tuple(out)


@lru_cache(maxsize=None)
def poset_maps(source: tuple, target: tuple) -> tuple:
    """All poset maps grid(source) -> grid(target), images as target point indices."""
    S, T = model(source), model(target)
    per = [_maps_to_chain(source, c) for c in target]
    out = []
    for combo in itertools.product(*per):
        out.append(tuple(T.index[tuple(f[i] for f in combo)] for i in range(S.size)))
    return tuple(out)


def hom_count(source: tuple, target: tuple) -> int:
    return math.prod(len(_maps_to_chain(source, c)) for c in target)


# ---------------------------------------------------------------------------
# targets: ordered simplicial complexes (vertex-determined simplicial sets)


class VertexComplex:
    """Vertex-determined simplicial set: vertices with a partial order and a set of faces.

    A q-simplex is a weakly increasing sequence of q+1 vertices whose support is a face.
    """

    def __init__(self, vertices, faces, le=None, name: str = ""):
        self.vertices = sorted(vertices)
        self.faces = {frozenset(f) for f in faces}
        for f in list(self.faces):
            for k in range(1, len(f)):
                self.faces.update(frozenset(c) for c in itertools.combinations(sorted(f), k))
        self.faces.update(frozenset([v]) for v in self.vertices)
        self._le = le
        self.name = name
        self._maps = {}
        self._simplices = {}

    def le(self, a, b) -> bool:
        return a <= b if self._le is None else self._le(a, b)

    @classmethod
    def from_facets(cls, facets, name: str = "") -> "VertexComplex":
        facets = [tuple(f) for f in facets]
        return cls({v for f in facets for v in f}, facets, name=name)

    @classmethod
    def from_simplicial_set(cls, X) -> "VertexComplex":
        vs = getattr(X, "vertex_sets", None)
        if vs is None:
            if any(d > 0 for _, d in X.cells):
                raise ValueError("cotriple targets must be ordered simplicial complexes")
            return cls([c for c, _ in X.cells], [[c] for c, _ in X.cells], name=X.name)
        return cls({v for s in vs.values() for v in s}, vs.values(), name=X.name)

    def is_simplex(self, seq) -> bool:
        return all(self.le(a, b) for a, b in zip(seq, seq[1:])) and frozenset(seq) in self.faces

    def simplices(self, q: int, strict: bool = False) -> list[tuple]:
        key = (q, strict)
        if key not in self._simplices:
            if q == 0:
                res = [(v,) for v in self.vertices]
            else:
                res = [s + (v,) for s in self.simplices(q - 1, strict) for v in self.vertices
                       if (v != s[-1] or not strict) and self.le(s[-1], v) and frozenset(s + (v,)) in self.faces]
            self._simplices[key] = res
        return self._simplices[key]

    def maps_from(self, dims: tuple) -> tuple:
        """All simplicial maps Δ[dims] -> X as vertex tuples, by backtracking with pruning."""
        if dims in self._maps:
            return self._maps[dims]
        M = model(dims)
        below = [[j for j in range(i) if M.le(j, i)] for i in range(M.size)]
        vals = [None] * M.size
        out = []
        maximal = M.chains(sum(dims), strict=True)

        def rec(i):
            if i == M.size:
                if all(frozenset(vals[k] for k in ch) in self.faces for ch in maximal):
                    out.append(tuple(vals))
                return
            for v in self.vertices:
                if all(self.le(vals[j], v) and frozenset((vals[j], v)) in self.faces for j in below[i]):
                    vals[i] = v
                    rec(i + 1)

        rec(0)
        self._maps[dims] = tuple(out)
        return self._maps[dims]


def product_complex(X: VertexComplex, Y: VertexComplex) -> VertexComplex:
    """X x Y: vertices are pairs, faces are chains of pairs projecting to faces."""
    le = lambda a, b: X.le(a[0], b[0]) and Y.le(a[1], b[1])
    faces = set()
    top = max(len(f) for f in X.faces) + max(len(f) for f in Y.faces)
    for q in range(top):
        for a in X.simplices(q):
            for b in Y.simplices(q):
                pts = tuple(zip(a, b))
                if len(set(pts)) == len(pts):
                    faces.add(frozenset(pts))
    verts = [(x, y) for x in X.vertices for y in Y.vertices]
    return VertexComplex(verts, faces, le=le, name=f"{X.name}x{Y.name}")


CATALOG_FACETS = {
    "point": [[0]],
    "delta0": [[0]],
    "delta1": [[0, 1]],
    "delta2": [[0, 1, 2]],
    "boundary2": [[0, 1], [1, 2], [0, 2]],
}


def catalog_target(name: str) -> VertexComplex:
    return VertexComplex.from_facets(CATALOG_FACETS[name], name=name)


# ---------------------------------------------------------------------------
# the cotriple on elements


def epsilon(s):
    """Counit G(Y) -> Y: apply the component's map to the sequence."""
    comp, seq = s
    _, beta = comp[-1]
    return comp[:-1], tuple(beta[i] for i in seq)


def delta(s):
    """Comultiplication G(Y) -> G(G(Y)): (Δ[n̲], α) goes to ((Δ[n̲], α), id)."""
    comp, seq = s
    dims = comp[-1][0]
    return comp + ((dims, model(dims).identity),), seq


def bar_face(s, i: int):
    """∂_i = G^i ε G^{n-i} on G^{n+1}X, computed directly."""
    comp, seq = s
    n = len(comp) - 1
    j = n - i + 1  # level consumed by ε (1-based from the inside)
    if not 0 <= i <= n:
        raise IndexError(i)
    if j == n + 1:
        return epsilon(s)
    lo, hi = comp[j - 1], comp[j]
    merged = (hi[0], tuple(lo[1][k] for k in hi[1]))
    return comp[:j - 1] + (merged,) + comp[j + 1:], seq


def bar_degeneracy(s, i: int):
    """s_i = G^i δ G^{n-i} on G^{n+1}X: an identity level after level n-i+1."""
    comp, seq = s
    n = len(comp) - 1
    if not 0 <= i <= n:
        raise IndexError(i)
    j = n - i + 1
    dims = comp[j - 1][0]
    return comp[:j] + ((dims, model(dims).identity),) + comp[j:], seq


def G_map(f):
    """G applied to a simplicial map f (a function on simplices), via vertices."""

    def g(s):
        comp, seq = s
        dims, beta = comp[-1]
        images = [f((comp[:-1], (b,))) for b in beta]
        c0 = images[0][0]
        if any(c != c0 for c, _ in images):
            raise ValueError("image of a connected model meets two components")
        return c0 + ((dims, tuple(v[0] for _, v in images)),), seq

    return g


def G_power_map(f, i: int):
    for _ in range(i):
        f = G_map(f)
    return f


def theta(s, params: TruncationParams):
    """θ_S: a q-simplex σ of Y goes to the simplex id of the component (Δ[q], σ)."""
    comp, seq = s
    q = len(seq) - 1
    if q > params.N:
        raise TruncationTooSmall(f"θ needs Δ[{q}] but N = {params.N}")
    return comp + (((q,), tuple(seq)),), tuple(range(q + 1))


def is_degenerate(seq) -> bool:
    return any(a == b for a, b in zip(seq, seq[1:]))


# ---------------------------------------------------------------------------
# G^k X as a simplicial set


class ModelCotripleValue:
    """G^depth(X) truncated by ``params``; depth 0 is X itself."""

    def __init__(self, X: VertexComplex, params: TruncationParams, depth: int = 1,
                 inner: "ModelCotripleValue | None" = None):
        self.X = X
        self.params = params
        self.depth = depth
        if depth == 0:
            self.components = [()]
        elif depth == 1:
            self.components = [((dims, a),) for dims in multi_indices(params) for a in X.maps_from(dims)]
        else:
            inner = inner or ModelCotripleValue(X, params, depth - 1)
            self.components = [c + ((dims, b),) for c in inner.components for dims in multi_indices(params)
                               for b in poset_maps(dims, c[-1][0])]
        self._component_set = None

    def __len__(self) -> int:
        return len(self.components)

    def contains_component(self, comp) -> bool:
        if self._component_set is None:
            self._component_set = set(self.components)
        return comp in self._component_set

    def simplices(self, q: int, normalized: bool = False) -> list:
        if self.depth == 0:
            return [((), s) for s in self.X.simplices(q, normalized)]
        return [(c, s) for c in self.components for s in model(c[-1][0]).chains(q, normalized)]

    def vertices_of(self, comp):
        """All vertices of a component as one pointwise sequence (maps act pointwise)."""
        return comp, model(comp[-1][0]).identity

    def chains(self, top: int, normalized: bool = False, exact_top: int | None = None,
               ring: str = "Z") -> ChainComplex:
        basis = {q: self.simplices(q, normalized) for q in range(top + 1)}
        return complex_from_sparse(basis, simplex_boundary, ring=ring,
                                   exact_top=top - 1 if exact_top is None else exact_top)

    def check_maps(self) -> bool:
        """Every stored α (or β) is a simplicial map into its target."""
        for c in self.components:
            dims, a = c[-1]
            M = model(dims)
            if len(c) == 1:
                if any(not self.X.is_simplex(tuple(a[k] for k in ch)) for ch in M.chains(sum(dims), True)):
                    return False
            else:
                T = model(c[-2][0])
                if any(not T.le(a[i], a[j]) for i in range(M.size) for j in M.up[i]):
                    return False
        return True


def cotriple_G(X, params: TruncationParams) -> ModelCotripleValue:
    if not isinstance(X, VertexComplex):
        X = VertexComplex.from_simplicial_set(X)
    return ModelCotripleValue(X, params, 1)


def simplex_boundary(s) -> dict:
    comp, seq = s
    out = {}
    for i in range(len(seq)):
        key = (comp, seq[:i] + seq[i + 1:])
        out[key] = out.get(key, 0) + (-1) ** i
    return out


def induced_chain_map(f, source: ChainComplex, target: ChainComplex, normalized: bool,
                      check: bool = True) -> ChainMap:
    comps = {}
    for n in source.degrees():
        index = {x: i for i, x in enumerate(target.labels.get(n, []))}
        entries = {}
        for j, x in enumerate(source.labels.get(n, [])):
            y = f(x)
            if normalized and is_degenerate(y[1]):
                continue
            if y not in index:
                if n > target.top:
                    continue
                raise TruncationTooSmall(f"image {y!r} outside the truncated target")
            entries[(index[y], j)] = entries.get((index[y], j), 0) + 1
        comps[n] = Matrix.from_entries(target.rank(n), source.rank(n), entries)
    return ChainMap(source, target, comps, check=check)


def counit_eps(X, params: TruncationParams, window: int | None = None, normalized: bool = False) -> ChainMap:
    """F(ε_X): F(G X) -> F(X) in degrees <= window."""
    GX = cotriple_G(X, params)
    w = params.W if window is None else window
    src = GX.chains(w, normalized)
    tgt = ModelCotripleValue(GX.X, params, 0).chains(w, normalized)
    return induced_chain_map(epsilon, src, tgt, normalized)


def comultiplication_delta(X, params: TruncationParams):
    """δ_X on components, with both counit laws checked; returns {component: image}."""
    GX = cotriple_G(X, params)
    out = {}
    for c in GX.components:
        s = GX.vertices_of(c)
        d = delta(s)
        if epsilon(d) != s or G_map(epsilon)(d) != s:
            raise AssertionError(f"counit law fails on {c!r}")
        out[c] = d[0]
    return out


# ---------------------------------------------------------------------------
# laws and monoidality


def _check(name: str, ok: bool, degrees=None, **extra) -> dict:
    rec = {"name": name, "status": "PASS" if ok else "FAIL", "degrees_verified": degrees}
    rec.update(extra)
    return rec


def check_cotriple_laws(X, params: TruncationParams) -> list[dict]:
    GX = cotriple_G(X, params)
    ok_maps = GX.check_maps()
    counit = coassoc = faces = True
    for c in GX.components:
        s = GX.vertices_of(c)
        d = delta(s)
        counit &= epsilon(d) == s and G_map(epsilon)(d) == s
        coassoc &= delta(d) == G_map(delta)(d)
        # direct face and degeneracy formulas agree with G^i ε G^{n-i}, G^i δ G^{n-i}
        faces &= bar_face(d, 0) == epsilon(d) and bar_face(d, 1) == G_map(epsilon)(d)
        faces &= bar_degeneracy(s, 0) == d and bar_degeneracy(d, 1) == G_map(delta)(d)
    name = GX.X.name
    return [_check(f"valid-maps[{name}]", ok_maps, components=len(GX)),
            _check(f"counit[{name}]", counit, components=len(GX)),
            _check(f"coassociativity[{name}]", coassoc, components=len(GX)),
            _check(f"face-formulas[{name}]", faces, components=len(GX))]


def kappa(a, b, params: TruncationParams):
    """κ_{X,Y}: (Δ[n̲], α) x (Δ[m̲], β) -> (Δ[n̲] x Δ[m̲], α x β) on simplices of GX x GY."""
    (ca, sa), (cb, sb) = a, b
    (da, alpha), = ca
    (db, beta), = cb
    if len(da) + len(db) > params.R:
        raise TruncationTooSmall(f"κ needs {len(da) + len(db)} factors but R = {params.R}")
    A, B, P = model(da), model(db), model(da + db)
    gamma = tuple((alpha[A.index[p[:len(da)]]], beta[B.index[p[len(da):]]]) for p in P.points)
    return ((da + db, gamma),), tuple(P.concat_index(A, B, i, j) for i, j in zip(sa, sb))


def _kappa_second(a2, b2, params):
    """G(κ_{X,Y}) ∘ κ_{GX,GY} on components of G²X x G²Y."""
    (ca, sa), (cb, sb) = a2, b2
    inner, _ = kappa((ca[:1], ()), (cb[:1], ()), params)
    (ma, ba), (mb, bb) = ca[1], cb[1]
    A1, B1 = model(ca[0][0]), model(cb[0][0])
    P1 = model(ca[0][0] + cb[0][0])
    A2, B2, P2 = model(ma), model(mb), model(ma + mb)
    lvl = tuple(P1.concat_index(A1, B1, ba[A2.index[p[:len(ma)]]], bb[B2.index[p[len(ma):]]])
                for p in P2.points)
    return inner + ((ma + mb, lvl),), tuple(P2.concat_index(A2, B2, i, j) for i, j in zip(sa, sb))


def check_kappa(X: VertexComplex, Y: VertexComplex, params: TruncationParams,
                maps: list | None = None) -> list[dict]:
    """κ lands in G(X x Y), is compatible with ε and δ, and is natural on the given vertex maps.

    ``maps`` is a list of (f, g, X', Y') with f, g vertex dicts X -> X', Y -> Y'.
    """
    GX, GY = cotriple_G(X, params), cotriple_G(Y, params)
    XY = product_complex(X, Y)
    GXY = cotriple_G(XY, params)
    lands = eps_ok = delta_ok = True
    pairs = 0
    for ca in GX.components:
        for cb in GY.components:
            if len(ca[0][0]) + len(cb[0][0]) > params.R:
                continue
            pairs += 1
            # a pointwise sequence of all grid pairs
            A, B = model(ca[0][0]), model(cb[0][0])
            ia = tuple(i for i in range(A.size) for _ in range(B.size))
            ib = tuple(j for _ in range(A.size) for j in range(B.size))
            a, b = (ca, ia), (cb, ib)
            k = kappa(a, b, params)
            lands &= GXY.contains_component(k[0])
            ea, eb = epsilon(a)[1], epsilon(b)[1]
            eps_ok &= epsilon(k)[1] == tuple(zip(ea, eb))
            da, db = delta(a), delta(b)
            delta_ok &= delta(k) == _kappa_second(da, db, params)
    nat = True
    for f, g, X2, Y2 in maps or []:
        for ca in GX.components:
            for cb in GY.components:
                if len(ca[0][0]) + len(cb[0][0]) > params.R:
                    continue
                a, b = GX.vertices_of(ca), GY.vertices_of(cb)
                fa = G_map(lambda s: ((), tuple(f[v] for v in s[1])))(a)
                gb = G_map(lambda s: ((), tuple(g[v] for v in s[1])))(b)
                lhs = kappa(fa, gb, params)
                k = kappa(a, b, params)
                rhs = G_map(lambda s: ((), tuple((f[x], g[y]) for x, y in s[1])))(k)
                nat &= lhs[0] == rhs[0]
    tag = f"{X.name},{Y.name}"
    return [_check(f"kappa-lands[{tag}]", lands, pairs=pairs),
            _check(f"kappa-eps[{tag}]", eps_ok, pairs=pairs),
            _check(f"kappa-delta[{tag}]", delta_ok, pairs=pairs),
            _check(f"kappa-natural[{tag}]", nat, maps=len(maps or []))]


def check_acyclic_models(params: TruncationParams, normalized: bool = False) -> dict:
    """Each model Δ[n̲] has the homology of a point through degree W."""
    ok = True
    for dims in multi_indices(params):
        M = model(dims)
        basis = {q: [((("m", dims),), c) for c in M.chains(q, normalized)] for q in range(params.W + 2)}
        C = complex_from_sparse(basis, simplex_boundary, exact_top=params.W)
        H = C.homology_all(params.W)
        ok &= H[0].betti == 1 and not H[0].torsion and all(H[q].is_zero for q in range(1, params.W + 1))
    return _check("models-acyclic" + ("-normalized" if normalized else ""), ok,
                  list(range(params.W + 1)), models=len(multi_indices(params)))


# ---------------------------------------------------------------------------
# bar construction


def bar_sizes(X: VertexComplex, params: TruncationParams, levels: int, degree_of_level,
              normalized: bool) -> dict:
    """Exact sizes of G^{k+1}X and of its chain groups, without enumerating G^{k+1}X."""
    mis = multi_indices(params)
    chain_count = {}

    def n_chains(dims, q):
        key = (dims, q)
        if key not in chain_count:
            if normalized:
                chain_count[key] = len(model(dims).chains(q, True))
            else:
                chain_count[key] = math.prod(math.comb(n + q + 1, q + 1) for n in dims)
        return chain_count[key]

    per = {m: len(X.maps_from(m)) for m in mis}
    out = {}
    for k in range(levels):
        if k:
            per = {m: sum(cnt * hom_count(m, n) for n, cnt in per.items()) for m in mis}
        top = degree_of_level(k)
        groups = [sum(cnt * n_chains(m, q) for m, cnt in per.items()) for q in range(top + 1)]
        out[k] = {"components": sum(per.values()), "chain_groups": groups}
    return out


def bar_construction(F: str, X, params: TruncationParams, degree: int | None = None,
                     budget: int = DEFAULT_BUDGET, verify: bool = True) -> SimplicialChainComplex:
    """Levels F(G^{p+1}X), p <= degree+1, each through chain degree degree+1-p.

    ``degree`` defaults to min(K-1, W): the result feeds an EM simple complex that is exact there.
    """
    normalized = _normalized(F)
    if not isinstance(X, VertexComplex):
        X = VertexComplex.from_simplicial_set(X)
    D = min(params.K - 1, params.W) if degree is None else degree
    if D < 0:
        raise TruncationTooSmall("need K >= 1 for a bar complex")
    P = D + 1
    if P > params.K:
        raise TruncationTooSmall(f"degree {D} needs bar level {P} but K = {params.K}")
    sizes = bar_sizes(X, params, P + 1, lambda p: D + 1 - p, normalized)
    total = sum(v["components"] + sum(v["chain_groups"]) for v in sizes.values())
    if total > budget:
        raise BudgetExceeded(f"bar construction needs {total} elements, budget {budget}", sizes)
    values, levels = [], []
    for p in range(P + 1):
        Y = ModelCotripleValue(X, params, p + 1, values[-1] if values else None)
        values.append(Y)
        levels.append(Y.chains(D + 1 - p, normalized, exact_top=D - p))
    faces, degens = {}, {}
    for p in range(1, P + 1):
        for i in range(p + 1):
            faces[(p, i)] = induced_chain_map(lambda s, i=i: bar_face(s, i), levels[p], levels[p - 1], normalized)
    for p in range(P):
        for j in range(p + 1):
            degens[(p, j)] = induced_chain_map(lambda s, j=j: bar_degeneracy(s, j), levels[p], levels[p + 1],
                                               normalized, check=False)
    S = SimplicialChainComplex(levels, faces, degens)
    S.values = values
    S.sizes = sizes
    S.degree = D
    if verify:
        bad = check_bar_identities(values)
        if bad:
            raise AssertionError(f"simplicial identities fail: {bad[:3]}")
    return S


def check_bar_identities(values: list) -> list[str]:
    """Element-level simplicial identities of the bar object on each stored level."""
    bad = []
    for p, Y in enumerate(values):
        for c in Y.components:
            s = Y.vertices_of(c)
            for i in range(p + 1):
                for j in range(i + 1, p + 1):
                    if p >= 1 and bar_face(bar_face(s, j), i) != bar_face(bar_face(s, i), j - 1):
                        bad.append(f"dd p={p} i={i} j={j}")
            for j in range(p + 1):
                t = bar_degeneracy(s, j)
                for i in range(p + 2):
                    lhs = bar_face(t, i)
                    if i in (j, j + 1):
                        ok = lhs == s
                    elif i < j:
                        ok = lhs == bar_degeneracy(bar_face(s, i), j - 1)
                    else:
                        ok = lhs == bar_degeneracy(bar_face(s, i - 1), j)
                    if not ok:
                        bad.append(f"ds p={p} i={i} j={j}")
                for i in range(j + 1, p + 1):
                    if bar_degeneracy(bar_degeneracy(s, i), j) != bar_degeneracy(bar_degeneracy(s, j), i + 1):
                        bad.append(f"ss p={p} i={i} j={j}")
            if bad:
                return bad
    return bad


def bar_augmentation(S: SimplicialChainComplex, X: VertexComplex, normalized: bool):
    """ε: em_simple(bar) -> F(X), nonzero only on the level-0 summand; returns (map, Tot, F(X))."""
    D = S.degree
    T = em_simple(S, D)
    FX = ModelCotripleValue(X, S.values[0].params, 0).chains(D + 2, normalized, exact_top=D + 1)
    eps0 = induced_chain_map(epsilon, S.levels[0], FX, normalized, check=False)
    comps = {}
    for n in T.degrees():
        entries = {}
        for col, (p, q, i) in enumerate(T.labels[n]):
            if p == 0:
                for r, v in enumerate(eps0[q].column(i)):
                    if v:
                        entries[(r, col)] = v
        comps[n] = Matrix.from_entries(FX.rank(n), T.rank(n), entries)
    return ChainMap(T, FX, comps), T, FX


def check_presentability(F: str, X, params: TruncationParams, budget: int = DEFAULT_BUDGET) -> dict:
    normalized = _normalized(F)
    if not isinstance(X, VertexComplex):
        X = VertexComplex.from_simplicial_set(X)
    checks = []
    # ε∘θ = id as matrices on F_n(X), n <= min(N, W)
    top = min(params.N, params.W)
    FX = ModelCotripleValue(X, params, 0).chains(top, normalized)
    GX = ModelCotripleValue(X, params, 1)
    FG = GX.chains(top, normalized)
    th = induced_chain_map(lambda s: theta(s, params), FX, FG, normalized, check=False)
    ep = induced_chain_map(epsilon, FG, FX, normalized, check=False)
    ok = all(ep[n] @ th[n] == Matrix.identity(FX.rank(n)) for n in range(top + 1))
    checks.append(_check(f"eps-theta[{F},{X.name}]", ok, list(range(top + 1))))
    D = min(params.K - 1, params.W)
    name = f"bar-quasi-iso[{F},{X.name}]"
    try:
        S = bar_construction(F, X, params, budget=budget)
    except BudgetExceeded as e:
        checks.append(_check(name, False, [], reason=str(e), sizes=e.sizes))
    else:
        f, _, _ = bar_augmentation(S, X, normalized)
        ok = is_weak_equivalence(f, WeakEquivalencePolicy.QUASI_ISOMORPHISM, window=D + 1)
        checks.append(_check(name, ok, list(range(D + 1)), sizes=S.sizes))
    return {"params": params.to_json(), "functor": F, "space": X.name, "checks": checks}


def check_gbg_contraction(X, params: TruncationParams) -> dict:
    """Extra degeneracy h = s_0 on the augmented object G∘B_•, levels -1..K-1, checked on components.

    Also checks the index shift G(∂_i^n) = ∂_{i+1}^{n+1}.
    """
    if not isinstance(X, VertexComplex):
        X = VertexComplex.from_simplicial_set(X)
    shift = extra = True
    inner = None
    counted = {}
    for n in range(-1, params.K):
        Y = ModelCotripleValue(X, params, n + 2, inner)  # G B_n = G^{n+2} X
        inner = Y
        counted[n] = len(Y)
        for c in Y.components:
            s = Y.vertices_of(c)
            h = bar_degeneracy(s, 0)
            extra &= bar_face(h, 1) == s  # d_0 h = id
            for i in range(1, n + 2):
                extra &= bar_face(h, i + 1) == bar_degeneracy(bar_face(s, i), 0)
            for i in range(n + 1):
                shift &= G_map(lambda t, i=i: bar_face(t, i))(s) == bar_face(s, i + 1)
            if not (shift and extra):
                break
    return {"params": params.to_json(), "space": X.name,
            "checks": [_check(f"gbg-extra-degeneracy[{X.name}]", extra, list(range(-1, params.K)), components=counted),
                       _check(f"gbg-index-shift[{X.name}]", shift, list(range(0, params.K)))]}

"""Finite simplicial sets, their chain complexes and the Eilenberg-Zilber maps.

A simplex of dimension n is a pair ``(cell, surj)`` where ``cell`` is a
nondegenerate cell of dimension k and ``surj`` is a monotone surjection
[n] -> [k] stored as a tuple of length n+1.  This is exactly the
Eilenberg-Zilber normal form; the degeneracy word is read off ``surj``.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .chains import ChainComplex, ChainMap, complex_from_sparse, lc_add
from .exactlin import Matrix, rank_rational


Simplex = tuple  # (cell, surj)


def identity_surj(k: int) -> tuple:
    return tuple(range(k + 1))


def delta(n: int, i: int) -> tuple:
    """Coface δ_i: [n-1] -> [n] skipping i."""
    return tuple(j if j < i else j + 1 for j in range(n))


def sigma(n: int, j: int) -> tuple:
    """Codegeneracy σ_j: [n+1] -> [n] hitting j twice."""
    return tuple(k if k <= j else k - 1 for k in range(n + 2))


def compose(f: Sequence[int], g: Sequence[int]) -> tuple:
    """f ∘ g for maps of finite ordinals given as tuples."""
    return tuple(f[x] for x in g)


def degeneracy_word(surj: Sequence[int]) -> list[int]:
    """Strictly decreasing word [j_r, ..., j_1] with surj = s_{j_r}...s_{j_1} applied to the cell."""
    return sorted((j for j in range(len(surj) - 1) if surj[j] == surj[j + 1]), reverse=True)


def word_to_surj(word: Sequence[int], k: int) -> tuple:
    """Surjection of s_{w[0]} ∘ ... ∘ s_{w[-1]} applied to a k-cell (rightmost acts first)."""
    surj = identity_surj(k)
    for i in reversed(word):
        surj = compose(surj, sigma(len(surj) - 1, i))
    return surj


def monotone_surjections(n: int, k: int) -> list[tuple]:
    """All monotone surjections [n] -> [k], lexicographic."""
    out = []
    for steps in itertools.combinations(range(n), k):
        s, v = [0], 0
        for j in range(n):
            if j in steps:
                v += 1
            s.append(v)
        out.append(tuple(s))
    return sorted(out)


def monotone_maps(m: int, n: int) -> list[tuple]:
    """All monotone maps [m] -> [n]."""
    return [tuple(c) for c in itertools.combinations_with_replacement(range(n + 1), m + 1)]


def _image_factor(c: Sequence[int]):
    """Split a monotone map c into (sorted image, surjection onto its image)."""
    image = sorted(set(c))
    pos = {v: i for i, v in enumerate(image)}
    return image, tuple(pos[v] for v in c)


class SimplicialSet:
    """Finite simplicial set presented by nondegenerate cells and their face tables.

    ``faces[cell][i]`` is the i-th face of the cell as a simplex (cell', surj).
    """

    def __init__(self, cells: Iterable[tuple], faces: dict, name: str = ""):
        self.name = name
        self.cells: list = []
        self.dim_of: dict = {}
        for cell, d in cells:
            if cell in self.dim_of:
                raise ValueError(f"duplicate cell {cell!r}")
            self.cells.append(cell)
            self.dim_of[cell] = d
        self.faces = {c: tuple(tuple(f) for f in faces.get(c, ())) for c in self.cells}
        self.dim = max(self.dim_of.values(), default=-1)
        self._cells_by_dim = {}
        for c in self.cells:
            self._cells_by_dim.setdefault(self.dim_of[c], []).append(c)
        self._apply = lru_cache(maxsize=None)(self._apply_uncached)
        self._simplices_cache: dict[int, list] = {}
        for c in self.cells:
            k = self.dim_of[c]
            fs = self.faces[c]
            if k > 0 and len(fs) != k + 1:
                raise ValueError(f"cell {c!r} of dim {k} needs {k + 1} faces")
            for f in fs:
                if f[0] not in self.dim_of or len(f[1]) != k or max(f[1]) != self.dim_of[f[0]] \
                        or list(f[1]) != sorted(f[1]) or set(f[1]) != set(range(self.dim_of[f[0]] + 1)):
                    raise ValueError(f"bad face {f!r} of {c!r}")

    def __repr__(self) -> str:
        return f"SimplicialSet({self.name or '?'}, cells={len(self.cells)}, dim={self.dim})"

    def cells_of_dim(self, k: int) -> list:
        return self._cells_by_dim.get(k, [])

    # -- simplicial operators
    def apply(self, x: Simplex, theta: Sequence[int]) -> Simplex:
        """θ^*(x) for a monotone θ: [m] -> [n], n = dim x."""
        cell, surj = x
        return self._apply(cell, compose(surj, theta))

    def _apply_uncached(self, cell, c: tuple) -> Simplex:
        k = self.dim_of[cell]
        missing = [v for v in range(k + 1) if v not in set(c)]
        if not missing:
            return (cell, c)
        k0 = missing[-1]
        face = self.faces[cell][k0]
        c2 = tuple(v if v < k0 else v - 1 for v in c)
        return self.apply(face, c2)

    def face(self, x: Simplex, i: int) -> Simplex:
        n = len(x[1]) - 1
        return self.apply(x, delta(n, i))

    def degeneracy(self, x: Simplex, j: int) -> Simplex:
        n = len(x[1]) - 1
        return (x[0], compose(x[1], sigma(n, j)))

    def degenerate(self, x: Simplex, word: Sequence[int]) -> Simplex:
        for i in reversed(word):
            x = self.degeneracy(x, i)
        return x

    @staticmethod
    def is_degenerate(x: Simplex) -> bool:
        s = x[1]
        return len(set(s)) != len(s)

    def nondeg(self, cell) -> Simplex:
        return (cell, identity_surj(self.dim_of[cell]))

    def simplices(self, n: int) -> list[Simplex]:
        """All n-simplices: cells in presentation order, surjections lexicographic."""
        if n not in self._simplices_cache:
            out = []
            for k in range(min(n, self.dim) + 1):
                surjs = monotone_surjections(n, k)
                for c in self.cells_of_dim(k):
                    out.extend((c, s) for s in surjs)
            self._simplices_cache[n] = out
        return self._simplices_cache[n]

    def nondegenerate(self, n: int) -> list[Simplex]:
        return [self.nondeg(c) for c in self.cells_of_dim(n)]

    def check_identities(self, upto: int | None = None) -> list[str]:
        """Simplicial identities on all simplices through dimension ``upto``."""
        upto = self.dim + 1 if upto is None else upto
        bad = []
        for n in range(2, upto + 1):
            for x in self.simplices(n):
                for j in range(n):
                    for i in range(j + 1, n + 1):
                        if self.face(self.face(x, j), i - 1) != self.face(self.face(x, i), j):
                            bad.append(f"d_{i - 1} d_{j} != d_{j} d_{i} on {x!r}")
        for n in range(0, upto):
            for x in self.simplices(n):
                for j in range(n + 1):
                    y = self.degeneracy(x, j)
                    if self.face(y, j) != x or self.face(y, j + 1) != x:
                        bad.append(f"d s_{j} != id on {x!r}")
        return bad

    # -- serialization
    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "dims": self.dim,
            "cells": [{"label": _lab(c), "dim": self.dim_of[c],
                       "faces": [[_lab(f[0]), degeneracy_word(f[1])] for f in self.faces[c]]}
                      for c in self.cells],
        }
        vs = getattr(self, "vertex_sets", None)
        if vs is not None:
            out["vertex_sets"] = {_lab(c): list(v) for c, v in vs.items()}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialSet":
        dims = {c["label"]: c["dim"] for c in data["cells"]}
        faces = {}
        for c in data["cells"]:
            faces[c["label"]] = [(f[0], word_to_surj(f[1], dims[f[0]])) for f in c["faces"]]
        X = cls([(c["label"], c["dim"]) for c in data["cells"]], faces, name=data.get("name", ""))
        if "vertex_sets" in data:
            X.vertex_sets = {c: tuple(v) for c, v in data["vertex_sets"].items()}
        return X

    @classmethod
    def load(cls, path) -> "SimplicialSet":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def relabeled(self) -> "SimplicialSet":
        """Copy whose cell labels are strings (for serialization of derived sets)."""
        return SimplicialSet.from_json(self.to_json())


def _lab(c) -> str:
    return c if isinstance(c, str) else str(c)


# ---------------------------------------------------------------------------
# constructors


def from_simplicial_complex(facets: Iterable[Iterable[int]], name: str = "") -> SimplicialSet:
    """Ordered simplicial complex (vertices ordered by value) as a simplicial set."""
    simplices = set()
    for f in facets:
        f = tuple(sorted(f))
        if len(set(f)) != len(f):
            raise ValueError(f"facet {f} repeats a vertex")
        for r in range(1, len(f) + 1):
            simplices.update(itertools.combinations(f, r))
    ordered = sorted(simplices, key=lambda s: (len(s), s))
    label = {s: ",".join(map(str, s)) for s in ordered}
    cells = [(label[s], len(s) - 1) for s in ordered]
    faces = {}
    for s in ordered:
        k = len(s) - 1
        if k:
            faces[label[s]] = [(label[s[:i] + s[i + 1:]], identity_surj(k - 1)) for i in range(k + 1)]
    X = SimplicialSet(cells, faces, name=name)
    X.vertex_sets = {label[s]: s for s in ordered}
    return X


def standard_simplex(n: int) -> SimplicialSet:
    return from_simplicial_complex([range(n + 1)], name=f"Delta[{n}]")


def boundary_simplex(n: int) -> SimplicialSet:
    facets = [tuple(j for j in range(n + 1) if j != i) for i in range(n + 1)]
    return from_simplicial_complex(facets, name=f"dDelta[{n}]")


def point() -> SimplicialSet:
    return SimplicialSet([("v", 0)], {}, name="point")


def interval() -> SimplicialSet:
    s = standard_simplex(1)
    s.name = "interval"
    return s


def circle() -> SimplicialSet:
    return from_simplicial_complex([(0, 1), (1, 2), (0, 2)], name="circle")


def torus() -> SimplicialSet:
    """9-vertex 3x3 grid triangulation."""
    def v(i, j):
        return 3 * (i % 3) + (j % 3)
    facets = []
    for i in range(3):
        for j in range(3):
            facets.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            facets.append((v(i, j), v(i, j + 1), v(i + 1, j + 1)))
    return from_simplicial_complex(facets, name="torus")


def klein_bottle() -> SimplicialSet:
    """4x4 grid with the j-wrap reversing i."""
    a = b = 4

    def v(i, j):
        if j >= b:
            i, j = -i, j - b
        return b * (i % a) + j
    facets = []
    for i in range(a):
        for j in range(b):
            facets.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            facets.append((v(i, j), v(i, j + 1), v(i + 1, j + 1)))
    return from_simplicial_complex(facets, name="klein")


def projective_plane() -> SimplicialSet:
    """6-vertex RP^2."""
    facets = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
              (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    return from_simplicial_complex(facets, name="rp2")


def sphere2() -> SimplicialSet:
    s = boundary_simplex(3)
    s.name = "sphere2"
    return s


# ---------------------------------------------------------------------------
# products


def ez_pair(a: Simplex, b: Simplex):
    """Decompose an n-simplex (a, b) of a product as s_J of a nondegenerate pair.

    Returns ((na, nb), joint) with na, nb simplices of dim r and ``joint`` the
    surjection [n] -> [r].
    """
    pts = list(zip(a[1], b[1]))
    image, joint = _image_factor(pts)
    na = (a[0], tuple(p[0] for p in image))
    nb = (b[0], tuple(p[1] for p in image))
    return (na, nb), joint


def pair_nondegenerate(a: Simplex, b: Simplex) -> bool:
    return len(set(zip(a[1], b[1]))) == len(a[1])


def product(X: SimplicialSet, Y: SimplicialSet, name: str = "") -> SimplicialSet:
    """X × Y with nondegenerate cells the pairs (a, b) whose degeneracy sets are disjoint."""
    cells, faces = [], {}
    for n in range(X.dim + Y.dim + 1):
        for a in X.simplices(n):
            for b in Y.simplices(n):
                if pair_nondegenerate(a, b):
                    cells.append(((a, b), n))
    for (a, b), n in cells:
        if n:
            fs = []
            for i in range(n + 1):
                pair, joint = ez_pair(X.face(a, i), Y.face(b, i))
                fs.append((pair, joint))
            faces[(a, b)] = fs
    P = SimplicialSet(cells, faces, name=name or f"{X.name}x{Y.name}")
    P.factors = (X, Y)
    return P


def pair_to_simplex(a: Simplex, b: Simplex) -> Simplex:
    """The product simplex (in the presentation of ``product``) of a pair."""
    return ez_pair(a, b)


def simplex_to_pair(P: SimplicialSet, x: Simplex):
    (a, b), surj = x
    X, Y = P.factors
    return X.apply(a, surj), Y.apply(b, surj)


class SimplicialMap:
    """Map determined by images of nondegenerate cells (simplices of the target)."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet, images: dict, check: bool = True):
        self.source = source
        self.target = target
        self.images = dict(images)
        if check:
            bad = self.verify()
            if bad:
                raise ValueError(f"not a simplicial map: {bad[:3]}")

    def __call__(self, x: Simplex) -> Simplex:
        cell, surj = x
        return self.target.apply(self.images[cell], surj)

    def verify(self) -> list[str]:
        bad = []
        for c in self.source.cells:
            k = self.source.dim_of[c]
            img = self.images.get(c)
            if img is None or len(img[1]) != k + 1:
                bad.append(f"missing or wrong-dimensional image for {c!r}")
                continue
            if k:
                for i in range(k + 1):
                    if self(self.source.faces[c][i]) != self.target.face(img, i):
                        bad.append(f"face {i} of {c!r}")
        return bad

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """self ∘ other."""
        return SimplicialMap(other.source, self.target,
                             {c: self(other.images[c]) for c in other.source.cells}, check=False)

    @classmethod
    def identity(cls, X: SimplicialSet) -> "SimplicialMap":
        return cls(X, X, {c: X.nondeg(c) for c in X.cells}, check=False)


def product_map(f: SimplicialMap, g: SimplicialMap, P: SimplicialSet, Q: SimplicialSet) -> SimplicialMap:
    """f × g : P = X×Y -> Q = X'×Y'."""
    images = {}
    for cell in P.cells:
        a, b = cell
        images[cell] = pair_to_simplex(f(a), g(b))
    return SimplicialMap(P, Q, images, check=False)


def swap_map(P: SimplicialSet, Q: SimplicialSet) -> SimplicialMap:
    """X×Y -> Y×X."""
    return SimplicialMap(P, Q, {(a, b): pair_to_simplex(b, a) for (a, b) in P.cells}, check=False)


# ---------------------------------------------------------------------------
# chains


def boundary(X: SimplicialSet, x: Simplex) -> dict:
    n = len(x[1]) - 1
    out: dict = {}
    if n == 0:
        return out
    for i in range(n + 1):
        lc_add(out, X.face(x, i), -1 if i % 2 else 1)
    return out


def normalized_boundary(X: SimplicialSet, x: Simplex) -> dict:
    return {y: c for y, c in boundary(X, x).items() if not X.is_degenerate(y)}


def chains(X: SimplicialSet, window: int, ring: str = "Z") -> ChainComplex:
    """Unnormalized chains on all simplices, degrees 0..window+1 (homology exact through window)."""
    basis = {n: X.simplices(n) for n in range(window + 2)}
    return complex_from_sparse(basis, lambda x: boundary(X, x), ring=ring, exact_top=window)


def normalized_chains(X: SimplicialSet, window: int | None = None, ring: str = "Z") -> ChainComplex:
    """Chains on nondegenerate simplices; finite, so exact in every degree it stores."""
    top = X.dim if window is None else min(window + 1, X.dim)
    basis = {n: X.nondegenerate(n) for n in range(max(top, 0) + 1)}
    exact = None if top == X.dim else window
    return complex_from_sparse(basis, lambda x: normalized_boundary(X, x), ring=ring, exact_top=exact)


def normalization_projection(X: SimplicialSet, window: int, ring: str = "Z") -> ChainMap:
    S = chains(X, window, ring)
    N = normalized_chains(X, window, ring)
    comps = {}
    for n in S.degrees():
        idx = {x: i for i, x in enumerate(N.labels.get(n, []))}
        entries = {(idx[x], j): 1 for j, x in enumerate(S.labels[n]) if x in idx}
        comps[n] = Matrix.from_entries(N.rank(n), S.rank(n), entries)
    return ChainMap(S, N, comps)


def chain_map_of(f: SimplicialMap, window: int, normalized: bool = False, ring: str = "Z") -> ChainMap:
    build = normalized_chains if normalized else chains
    S, T = build(f.source, window, ring), build(f.target, window, ring)
    comps = {}
    for n in S.degrees():
        idx = {x: i for i, x in enumerate(T.labels.get(n, []))}
        entries = {}
        for j, x in enumerate(S.labels[n]):
            y = f(x)
            if y in idx:
                entries[(idx[y], j)] = 1
        comps[n] = Matrix.from_entries(T.rank(n), S.rank(n), entries)
    return ChainMap(S, T, comps)


# ---------------------------------------------------------------------------
# Eilenberg-Zilber maps on pair representatives


def permutation_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def shuffles(p: int, q: int) -> tuple:
    """(μ, ν, sign) for all (p,q)-shuffles of {0..p+q-1}; sign of the permutation μ·ν."""
    out = []
    for mu in itertools.combinations(range(p + q), p):
        nu = tuple(j for j in range(p + q) if j not in mu)
        out.append((mu, nu, permutation_sign(mu + nu)))
    return tuple(out)


def _degenerate_by(x: Simplex, indices: Sequence[int]) -> Simplex:
    """s_{i_k} ... s_{i_1} x for increasing indices (i_1 applied first)."""
    cell, surj = x
    for i in indices:
        surj = compose(surj, sigma(len(surj) - 1, i))
    return (cell, surj)


def shuffle_pair(x: Simplex, y: Simplex) -> dict:
    """sh(x ⊗ y) = Σ ε(μ,ν) (s_ν x, s_μ y) as a dict on pairs."""
    p, q = len(x[1]) - 1, len(y[1]) - 1
    out: dict = {}
    for mu, nu, sgn in shuffles(p, q):
        lc_add(out, (_degenerate_by(x, nu), _degenerate_by(y, mu)), sgn)
    return out


def front_face(X: SimplicialSet, x: Simplex, i: int) -> Simplex:
    return X.apply(x, tuple(range(i + 1)))


def back_face(X: SimplicialSet, x: Simplex, i: int) -> Simplex:
    n = len(x[1]) - 1
    return X.apply(x, tuple(range(i, n + 1)))


def aw_pair(X: SimplicialSet, Y: SimplicialSet, a: Simplex, b: Simplex) -> dict:
    """AW(a, b) = Σ_i (front i-face of a) ⊗ (back (n-i)-face of b)."""
    n = len(a[1]) - 1
    out: dict = {}
    for i in range(n + 1):
        lc_add(out, (front_face(X, a, i), back_face(Y, b, i)), 1)
    return out


def pair_boundary(X: SimplicialSet, Y: SimplicialSet, a: Simplex, b: Simplex) -> dict:
    n = len(a[1]) - 1
    out: dict = {}
    if n == 0:
        return out
    for i in range(n + 1):
        lc_add(out, (X.face(a, i), Y.face(b, i)), -1 if i % 2 else 1)
    return out


def tensor_boundary(X: SimplicialSet, Y: SimplicialSet, x: Simplex, y: Simplex, normalized=False) -> dict:
    """d(x⊗y) = dx⊗y + (-1)^p x⊗dy on tensor keys (x, y)."""
    bd = normalized_boundary if normalized else boundary
    p = len(x[1]) - 1
    out: dict = {}
    for u, c in bd(X, x).items():
        lc_add(out, (u, y), c)
    sgn = -1 if p % 2 else 1
    for v, c in bd(Y, y).items():
        lc_add(out, (x, v), sgn * c)
    return out


def _lin(f, vec: dict) -> dict:
    out: dict = {}
    for k, c in vec.items():
        for k2, c2 in f(*k).items():
            lc_add(out, k2, c * c2)
    return out


def _drop_degenerate_pairs(vec: dict, product_level: bool) -> dict:
    if product_level:
        return {k: c for k, c in vec.items() if pair_nondegenerate(*k)}
    return {k: c for k, c in vec.items()
            if not SimplicialSet.is_degenerate(k[0]) and not SimplicialSet.is_degenerate(k[1])}


def normalized_shuffle_pair(x: Simplex, y: Simplex) -> dict:
    return _drop_degenerate_pairs(shuffle_pair(x, y), True)


def normalized_aw_pair(X, Y, a, b) -> dict:
    return _drop_degenerate_pairs(aw_pair(X, Y, a, b), False)


def check_shuffle_chain_map(X, Y, p: int, q: int, normalized=False) -> bool:
    """d∘sh = sh∘d on every basis pair in bidegree (p, q)."""
    bx = X.nondegenerate(p) if normalized else X.simplices(p)
    by = Y.nondegenerate(q) if normalized else Y.simplices(q)
    sh = normalized_shuffle_pair if normalized else shuffle_pair

    def d_prod(a, b):
        v = pair_boundary(X, Y, a, b)
        return _drop_degenerate_pairs(v, True) if normalized else v
    for x in bx:
        for y in by:
            lhs = _lin(d_prod, sh(x, y))
            rhs = _lin(sh, tensor_boundary(X, Y, x, y, normalized))
            if lhs != rhs:
                return False
    return True


def check_aw_chain_map(X, Y, n: int, pairs=None, normalized=False) -> bool:
    """d∘AW = AW∘d on n-simplices of X×Y."""
    if pairs is None:
        if normalized:
            pairs = [(a, b) for a in X.simplices(n) for b in Y.simplices(n) if pair_nondegenerate(a, b)]
        else:
            pairs = [(a, b) for a in X.simplices(n) for b in Y.simplices(n)]
    aw = (lambda a, b: normalized_aw_pair(X, Y, a, b)) if normalized else (lambda a, b: aw_pair(X, Y, a, b))

    def d_t(x, y):
        return tensor_boundary(X, Y, x, y, normalized)

    def d_prod(a, b):
        v = pair_boundary(X, Y, a, b)
        return _drop_degenerate_pairs(v, True) if normalized else v
    for a, b in pairs:
        if _lin(d_t, aw(a, b)) != _lin(aw, d_prod(a, b)):
            return False
    return True


def check_aw_sh_identity(X, Y, p: int, q: int) -> bool:
    """AW∘sh = id on normalized chains in bidegree (p, q)."""
    for x in X.nondegenerate(p):
        for y in Y.nondegenerate(q):
            v = _lin(lambda a, b: normalized_aw_pair(X, Y, a, b), normalized_shuffle_pair(x, y))
            if v != {(x, y): 1}:
                return False
    return True


def check_shuffle_symmetry(X, Y, p: int, q: int, normalized=False) -> bool:
    """swap_*(sh(x⊗y)) = (-1)^{pq} sh(y⊗x)."""
    bx = X.nondegenerate(p) if normalized else X.simplices(p)
    by = Y.nondegenerate(q) if normalized else Y.simplices(q)
    sgn = -1 if (p * q) % 2 else 1
    for x in bx:
        for y in by:
            lhs = {(b, a): c for (a, b), c in shuffle_pair(x, y).items()}
            rhs = {k: sgn * c for k, c in shuffle_pair(y, x).items()}
            if lhs != rhs:
                return False
    return True


def shuffle_term_count(p: int, q: int) -> int:
    return len(shuffles(p, q))


def check_shuffle_naturality(f: SimplicialMap, g: SimplicialMap, p: int, q: int) -> bool:
    """(f×g)_* sh = sh (f_*⊗g_*) on pairs."""
    for x in f.source.simplices(p):
        for y in g.source.simplices(q):
            lhs: dict = {}
            for (a, b), c in shuffle_pair(x, y).items():
                lc_add(lhs, (f(a), g(b)), c)
            if lhs != shuffle_pair(f(x), g(y)):
                return False
    return True


def shuffle_multi(u: tuple, v: tuple) -> dict:
    """Shuffle of tuples of equidimensional simplices (points of iterated products)."""
    p, q = len(u[0][1]) - 1, len(v[0][1]) - 1
    out: dict = {}
    for mu, nu, sgn in shuffles(p, q):
        key = tuple(_degenerate_by(x, nu) for x in u) + tuple(_degenerate_by(y, mu) for y in v)
        lc_add(out, key, sgn)
    return out


def check_shuffle_associativity(X, Y, Z, p: int, q: int, r: int) -> bool:
    """sh(sh(x⊗y)⊗z) = sh(x⊗sh(y⊗z)) on triples."""
    for x in X.simplices(p):
        for y in Y.simplices(q):
            for z in Z.simplices(r):
                left: dict = {}
                for ab, c in shuffle_multi((x,), (y,)).items():
                    for k, c2 in shuffle_multi(ab, (z,)).items():
                        lc_add(left, k, c * c2)
                right: dict = {}
                for bc, c in shuffle_multi((y,), (z,)).items():
                    for k, c2 in shuffle_multi((x,), bc).items():
                        lc_add(right, k, c * c2)
                if left != right:
                    return False
    return True


# ---------------------------------------------------------------------------
# matrices of the EZ maps between complexes


def shuffle_map(X: SimplicialSet, Y: SimplicialSet, window: int, normalized: bool = False) -> ChainMap:
    """sh: C(X)⊗C(Y) -> C(X×Y) as matrices through degree window+1."""
    from .chains import tensor, tensor_basis
    build = normalized_chains if normalized else chains
    CX, CY = build(X, window), build(Y, window)
    P = product(X, Y)
    CP = build(P, window)
    T = tensor(CX, CY)
    comps = {}
    for n in range(T.lower_bound, min(T.top, CP.top) + 1):
        idx = {x: i for i, x in enumerate(CP.labels.get(n, []))}
        entries = {}
        for col, (p, i, j) in enumerate(tensor_basis(CX, CY, n)):
            x, y = CX.labels[p][i], CY.labels[n - p][j]
            sh = normalized_shuffle_pair(x, y) if normalized else shuffle_pair(x, y)
            for (a, b), c in sh.items():
                entries[(idx[pair_to_simplex(a, b)], col)] = c
        comps[n] = Matrix.from_entries(CP.rank(n), T.rank(n), entries)
    return ChainMap(T, CP, comps)


def alexander_whitney_map(X: SimplicialSet, Y: SimplicialSet, window: int, normalized: bool = False) -> ChainMap:
    from .chains import tensor, tensor_basis
    build = normalized_chains if normalized else chains
    CX, CY = build(X, window), build(Y, window)
    P = product(X, Y)
    CP = build(P, window)
    T = tensor(CX, CY)
    comps = {}
    for n in range(CP.lower_bound, min(T.top, CP.top) + 1):
        idx = {(CX.labels[p][i], CY.labels[n - p][j]): k
               for k, (p, i, j) in enumerate(tensor_basis(CX, CY, n))}
        entries = {}
        for col, s in enumerate(CP.labels[n]):
            a, b = simplex_to_pair(P, s)
            aw = normalized_aw_pair(X, Y, a, b) if normalized else aw_pair(X, Y, a, b)
            for key, c in aw.items():
                entries[(idx[key], col)] = c
        comps[n] = Matrix.from_entries(T.rank(n), CP.rank(n), entries)
    return ChainMap(CP, T, comps)


# ---------------------------------------------------------------------------
# Künneth


def _homology_basis_q(C: ChainComplex, n: int) -> tuple[list, Matrix]:
    """Cycle representatives of a Q-basis of H_n, and the boundary matrix image columns."""
    from .exactlin import rational_kernel, hstack
    Z = rational_kernel(C.d(n))
    B = C.d(n + 1)
    reps = []
    cur = B
    base_rank = rank_rational(B)
    for col in Z.columns():
        trial = hstack([cur, Matrix.from_columns([col], C.rank(n))]) if cur.ncols else \
            Matrix.from_columns([col], C.rank(n))
        r = rank_rational(trial)
        if r > base_rank:
            reps.append(col)
            cur, base_rank = trial, r
    return reps, B


def kunneth_morphism(X: SimplicialSet, Y: SimplicialSet, n: int) -> dict:
    """Over Q: the shuffle images of H_p(X)⊗H_q(Y), p+q=n, form a basis of H_n(X×Y)."""
    from .exactlin import hstack
    NX, NY = normalized_chains(X, n + 1), normalized_chains(Y, n + 1)
    P = product(X, Y)
    NP = normalized_chains(P, n + 1)
    if any(C.exact_top < n and not C.bounded for C in (NX, NY, NP)):
        from .chains import WindowTooSmall
        raise WindowTooSmall("window below requested degree")
    idx = {s: i for i, s in enumerate(NP.labels.get(n, []))}
    images = []
    expected = 0
    for p in range(n + 1):
        q = n - p
        zx, _ = _homology_basis_q(NX, p)
        zy, _ = _homology_basis_q(NY, q)
        expected += len(zx) * len(zy)
        for u in zx:
            for v in zy:
                vec = [0] * NP.rank(n)
                for i, cu in enumerate(u):
                    if not cu:
                        continue
                    for j, cv in enumerate(v):
                        if not cv:
                            continue
                        for (a, b), c in normalized_shuffle_pair(NX.labels[p][i], NY.labels[q][j]).items():
                            vec[idx[pair_to_simplex(a, b)]] += c * cu * cv
                images.append(vec)
    B = NP.d(n + 1)
    dim_h = NP.rank(n) - rank_rational(NP.d(n)) - rank_rational(B)
    stacked = hstack([B, Matrix.from_columns(images, NP.rank(n))]) if images else B
    r = rank_rational(stacked) - rank_rational(B)
    images_are_cycles = all(not any(NP.d(n).apply(v)) for v in images)
    return {"degree": n, "source_dim": expected, "target_dim": dim_h, "image_rank": r,
            "isomorphism": images_are_cycles and r == expected == dim_h}


def nondegenerate_counts(X: SimplicialSet) -> list[int]:
    return [len(X.cells_of_dim(k)) for k in range(X.dim + 1)]


def expected_simplex_counts(n: int) -> list[int]:
    return [comb(n + 1, k + 1) for k in range(n + 1)]

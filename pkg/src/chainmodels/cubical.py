"""Finite cubical sets, cubical chains, ordered chains, cross product and Serre diagonal.

A cube of dimension n is ``(cell, phi)``: ``phi`` has one entry per cube
coordinate, either a coordinate of the nondegenerate cell (0-based) or None for
a dummy coordinate.  Ordinary cubes list the cell coordinates in increasing
order; arbitrary orders are the coordinate-permuted cubes used for C^ord.
Face and degeneracy indices are 1-based as in δ_i^ε.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from typing import Iterable, Sequence

from .chains import ChainComplex, ChainMap, complex_from_sparse, lc_add, tensor, tensor_basis
from .exactlin import Matrix, invariant_factors
from .simplicial import permutation_sign

Cube = tuple  # (cell, phi)


def cube_dim(c: Cube) -> int:
    return len(c[1])


def is_degenerate(c: Cube) -> bool:
    return None in c[1]


def is_ordinary(c: Cube) -> bool:
    vals = [v for v in c[1] if v is not None]
    return vals == sorted(vals)


def degeneracy_positions(phi: Sequence) -> list[int]:
    """1-based positions of dummy coordinates."""
    return [i + 1 for i, v in enumerate(phi) if v is None]


def phi_from_positions(n: int, positions: Sequence[int]) -> tuple:
    out, k = [], 0
    for i in range(1, n + 1):
        if i in positions:
            out.append(None)
        else:
            out.append(k)
            k += 1
    return tuple(out)


class CubicalSet:
    """``faces[cell]`` lists δ_1^0, δ_1^1, δ_2^0, ... of the cell as ordinary cubes."""

    def __init__(self, cells: Iterable[tuple], faces: dict, name: str = ""):
        self.name = name
        self.cells: list = []
        self.dim_of: dict = {}
        for cell, d in cells:
            if cell in self.dim_of:
                raise ValueError(f"duplicate cell {cell!r}")
            self.cells.append(cell)
            self.dim_of[cell] = d
        self.faces = {c: tuple((f[0], tuple(f[1])) for f in faces.get(c, ())) for c in self.cells}
        self.dim = max(self.dim_of.values(), default=-1)
        self._by_dim: dict = {}
        for c in self.cells:
            self._by_dim.setdefault(self.dim_of[c], []).append(c)
            k = self.dim_of[c]
            if len(self.faces[c]) != 2 * k:
                raise ValueError(f"cell {c!r} of dim {k} needs {2 * k} faces")
            for f in self.faces[c]:
                if f[0] not in self.dim_of or len(f[1]) != k - 1 or not is_ordinary(f) or \
                        sorted(v for v in f[1] if v is not None) != list(range(self.dim_of[f[0]])):
                    raise ValueError(f"bad face {f!r} of {c!r}")
        self._face = lru_cache(maxsize=None)(self._face_uncached)
        self._cubes: dict = {}

    def __repr__(self) -> str:
        return f"CubicalSet({self.name or '?'}, cells={len(self.cells)}, dim={self.dim})"

    def cells_of_dim(self, k: int) -> list:
        return self._by_dim.get(k, [])

    def nondeg(self, cell) -> Cube:
        return (cell, tuple(range(self.dim_of[cell])))

    def face(self, c: Cube, i: int, eps: int) -> Cube:
        return self._face(c[0], c[1], i, eps)

    def _face_uncached(self, cell, phi: tuple, i: int, eps: int) -> Cube:
        k = phi[i - 1]
        rest = phi[:i - 1] + phi[i:]
        if k is None:
            return (cell, rest)
        fcell, psi = self.faces[cell][2 * k + eps]
        new = tuple(None if v is None else psi[v if v < k else v - 1] for v in rest)
        return (fcell, new)

    def degeneracy(self, c: Cube, i: int) -> Cube:
        """Insert a dummy coordinate at position i (1-based, 1 <= i <= n+1)."""
        phi = c[1]
        return (c[0], phi[:i - 1] + (None,) + phi[i - 1:])

    def restrict(self, c: Cube, coords: Iterable[int], eps: int) -> Cube:
        """Set every coordinate in ``coords`` (1-based) to eps."""
        for i in sorted(coords, reverse=True):
            c = self.face(c, i, eps)
        return c

    def cubes(self, n: int) -> list[Cube]:
        """All ordinary n-cubes (degenerate included)."""
        if n not in self._cubes:
            out = []
            for k in range(min(n, self.dim) + 1):
                for pos in itertools.combinations(range(1, n + 1), n - k):
                    phi = phi_from_positions(n, pos)
                    out.extend((c, phi) for c in self.cells_of_dim(k))
            self._cubes[n] = out
        return self._cubes[n]

    def nondegenerate(self, n: int) -> list[Cube]:
        return [self.nondeg(c) for c in self.cells_of_dim(n)]

    def check_identities(self, upto: int | None = None) -> list[str]:
        """δ_j^η δ_i^ε = δ_i^ε δ_{j+1}^η (i <= j) on all cubes through ``upto``."""
        upto = self.dim + 1 if upto is None else upto
        bad = []
        for n in range(2, upto + 1):
            for c in self.cubes(n):
                for i in range(1, n + 1):
                    for j in range(i, n):
                        for e1 in (0, 1):
                            for e2 in (0, 1):
                                lhs = self.face(self.face(c, i, e1), j, e2)
                                rhs = self.face(self.face(c, j + 1, e2), i, e1)
                                if lhs != rhs:
                                    bad.append(f"cubical identity i={i} j={j} on {c!r}")
        return bad

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dims": self.dim,
            "cells": [{"label": str(c), "dim": self.dim_of[c],
                       "faces": [[str(f[0]), degeneracy_positions(f[1])] for f in self.faces[c]]}
                      for c in self.cells],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CubicalSet":
        dims = {c["label"]: c["dim"] for c in data["cells"]}
        faces = {c["label"]: [(f[0], phi_from_positions(dims[c["label"]] - 1, f[1])) for f in c["faces"]]
                 for c in data["cells"]}
        return cls([(c["label"], c["dim"]) for c in data["cells"]], faces, name=data.get("name", ""))

    @classmethod
    def load(cls, path) -> "CubicalSet":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


# ---------------------------------------------------------------------------
# catalog constructors


def _deg(cell, n):
    """Fully degenerate n-cube on a vertex."""
    return (cell, (None,) * n)


def point() -> CubicalSet:
    return CubicalSet([("v", 0)], {}, name="point")


def interval() -> CubicalSet:
    return CubicalSet([("v0", 0), ("v1", 0), ("e", 1)], {"e": [("v0", ()), ("v1", ())]}, name="interval")


def circle() -> CubicalSet:
    return CubicalSet([("v", 0), ("e", 1)], {"e": [("v", ()), ("v", ())]}, name="circle")


def _one_vertex_square(name, f10, f11, f20, f21) -> CubicalSet:
    edges = sorted({f for f in (f10, f11, f20, f21) if f != "*"})
    cells = [("v", 0)] + [(e, 1) for e in edges] + [("s", 2)]
    faces = {e: [("v", ()), ("v", ())] for e in edges}
    faces["s"] = [("v", (None,)) if f == "*" else (f, (0,)) for f in (f10, f11, f20, f21)]
    return CubicalSet(cells, faces, name=name)


def torus() -> CubicalSet:
    return _one_vertex_square("torus", "b", "b", "a", "a")


def klein_bottle() -> CubicalSet:
    return _one_vertex_square("klein", "b", "a", "a", "b")


def projective_plane() -> CubicalSet:
    return _one_vertex_square("rp2", "*", "a", "a", "*")


def sphere2() -> CubicalSet:
    return _one_vertex_square("sphere2", "*", "*", "*", "*")


def standard_cube(n: int) -> CubicalSet:
    X = point()
    for _ in range(n):
        X = product(X, interval()) if X.dim >= 0 else interval()
    X.name = f"I^{n}"
    return X


# ---------------------------------------------------------------------------
# products and maps


def pair_cube(X: CubicalSet, u: Cube, v: Cube) -> Cube:
    """The cube u × v of the product cubical set (cells are pairs of cells)."""
    k = X.dim_of[u[0]]
    return ((u[0], v[0]), u[1] + tuple(None if w is None else w + k for w in v[1]))


def product(X: CubicalSet, Y: CubicalSet, name: str = "") -> CubicalSet:
    cells, faces = [], {}
    for n in range(X.dim + Y.dim + 1):
        for p in range(max(0, n - Y.dim), min(n, X.dim) + 1):
            for cx in X.cells_of_dim(p):
                for cy in Y.cells_of_dim(n - p):
                    cells.append(((cx, cy), n))
    for (cx, cy), n in cells:
        p = X.dim_of[cx]
        fs = []
        for i in range(1, n + 1):
            for eps in (0, 1):
                if i <= p:
                    fs.append(pair_cube(X, X.face(X.nondeg(cx), i, eps), Y.nondeg(cy)))
                else:
                    fs.append(pair_cube(X, X.nondeg(cx), Y.face(Y.nondeg(cy), i - p, eps)))
        faces[(cx, cy)] = fs
    P = CubicalSet(cells, faces, name=name or f"{X.name}x{Y.name}")
    P.factors = (X, Y)
    return P


def split_cube(P: CubicalSet, c: Cube) -> tuple[Cube, Cube]:
    """Inverse of pair_cube for ordinary cubes whose coordinates stay in factor blocks."""
    X, _ = P.factors
    (cx, cy), phi = c
    k = X.dim_of[cx]
    # coordinates of cx occupy cell coordinates < k
    xs = tuple(v if v is not None and v < k else None for v in phi)
    ys = tuple(v - k if v is not None and v >= k else None for v in phi)
    return (cx, xs), (cy, ys)


def permute_cube(c: Cube, perm: Sequence[int]) -> Cube:
    """c∘π for π a permutation of the n coordinates (0-based tuple), (c∘π)(t) = c(t_{π(1)}, ...)."""
    phi = c[1]
    inv = [0] * len(perm)
    for a, b in enumerate(perm):
        inv[b] = a
    return (c[0], tuple(phi[inv[m]] for m in range(len(perm))))


class CubicalMap:
    """Map given by images of nondegenerate cells (ordinary cubes of equal dimension)."""

    def __init__(self, source: CubicalSet, target: CubicalSet, images: dict, check: bool = True):
        self.source = source
        self.target = target
        self.images = dict(images)
        if check:
            bad = self.verify()
            if bad:
                raise ValueError(f"not a cubical map: {bad[:3]}")

    def __call__(self, c: Cube) -> Cube:
        cell, phi = c
        img_cell, psi = self.images[cell]
        # compose: coordinate m of c maps to cell coordinate phi[m], which maps via psi
        return (img_cell, tuple(None if v is None else psi[v] for v in phi))

    def verify(self) -> list[str]:
        bad = []
        for c in self.source.cells:
            k = self.source.dim_of[c]
            img = self.images.get(c)
            if img is None or len(img[1]) != k:
                bad.append(f"image of {c!r}")
                continue
            for i in range(1, k + 1):
                for eps in (0, 1):
                    if self(self.source.face(self.source.nondeg(c), i, eps)) != self.target.face(img, i, eps):
                        bad.append(f"face ({i},{eps}) of {c!r}")
        return bad

    @classmethod
    def identity(cls, X: CubicalSet) -> "CubicalMap":
        return cls(X, X, {c: X.nondeg(c) for c in X.cells}, check=False)


def product_map(f: CubicalMap, g: CubicalMap, P: CubicalSet, Q: CubicalSet) -> CubicalMap:
    X2 = Q.factors[0]
    images = {}
    for (cx, cy) in P.cells:
        images[(cx, cy)] = pair_cube(X2, f(f.source.nondeg(cx)), g(g.source.nondeg(cy)))
    return CubicalMap(P, Q, images, check=False)


# ---------------------------------------------------------------------------
# chains


def cube_boundary(X: CubicalSet, c: Cube, normalized: bool = False) -> dict:
    """d(c) = Σ (-1)^{i+ε} c∘δ_i^ε."""
    out: dict = {}
    for i in range(1, cube_dim(c) + 1):
        for eps in (0, 1):
            f = X.face(c, i, eps)
            if normalized and is_degenerate(f):
                continue
            lc_add(out, f, -1 if (i + eps) % 2 else 1)
    return out


def cubical_chains(X: CubicalSet, window: int, ring: str = "Z") -> ChainComplex:
    """Q_*: all cubes, degrees 0..window+1."""
    basis = {n: X.cubes(n) for n in range(window + 2)}
    return complex_from_sparse(basis, lambda c: cube_boundary(X, c), ring=ring, exact_top=window)


def normalized_cubical(X: CubicalSet, window: int | None = None, ring: str = "Z") -> ChainComplex:
    """C_*: Q_* modulo degenerate cubes, on nondegenerate cubes."""
    top = X.dim if window is None else min(window + 1, X.dim)
    basis = {n: X.nondegenerate(n) for n in range(max(top, 0) + 1)}
    exact = None if top == X.dim else window
    return complex_from_sparse(basis, lambda c: cube_boundary(X, c, True), ring=ring, exact_top=exact)


def cubical_projection(X: CubicalSet, window: int) -> ChainMap:
    Q, C = cubical_chains(X, window), normalized_cubical(X, window)
    comps = {}
    for n in Q.degrees():
        idx = {c: i for i, c in enumerate(C.labels.get(n, []))}
        comps[n] = Matrix.from_entries(C.rank(n), Q.rank(n),
                                       {(idx[c], j): 1 for j, c in enumerate(Q.labels[n]) if c in idx})
    return ChainMap(Q, C, comps)


def massey_section(X: CubicalSet, n: int, window: int | None = None) -> Matrix:
    """ν_n: C_n -> Q_n sending the class of a nondegenerate cube to that cube."""
    window = n if window is None else window
    Q = X.cubes(n)
    idx = {c: i for i, c in enumerate(Q)}
    nd = X.nondegenerate(n)
    return Matrix.from_entries(len(Q), len(nd), {(idx[c], j): 1 for j, c in enumerate(nd)})


def cubical_chain_map(f: CubicalMap, window: int, normalized: bool = True) -> ChainMap:
    build = normalized_cubical if normalized else cubical_chains
    S, T = build(f.source, window), build(f.target, window)
    comps = {}
    for n in S.degrees():
        idx = {c: i for i, c in enumerate(T.labels.get(n, []))}
        entries = {}
        for j, c in enumerate(S.labels[n]):
            y = f(c)
            if y in idx:
                entries[(idx[y], j)] = 1
        comps[n] = Matrix.from_entries(T.rank(n), S.rank(n), entries)
    return ChainMap(S, T, comps)


def cross_product(X: CubicalSet, Y: CubicalSet, window: int | None = None, P: CubicalSet | None = None) -> ChainMap:
    """C(X)⊗C(Y) -> C(X×Y), c⊗d ↦ c×d with sign +1."""
    P = P or product(X, Y)
    CX, CY, CP = normalized_cubical(X, window), normalized_cubical(Y, window), normalized_cubical(P, window)
    T = tensor(CX, CY)
    comps = {}
    for n in range(T.lower_bound, min(T.top, CP.top) + 1):
        idx = {c: i for i, c in enumerate(CP.labels.get(n, []))}
        entries = {}
        for col, (p, i, j) in enumerate(tensor_basis(CX, CY, n)):
            entries[(idx[pair_cube(X, CX.labels[p][i], CY.labels[n - p][j])], col)] = 1
        comps[n] = Matrix.from_entries(CP.rank(n), T.rank(n), entries)
    return ChainMap(T, CP, comps)


def check_leibniz(X: CubicalSet, Y: CubicalSet, upto: int) -> bool:
    """d(c×e) = dc×e + (-1)^p c×de on all ordinary cubes (degenerate included)."""
    P = product(X, Y)
    for n in range(upto + 1):
        for p in range(n + 1):
            for c in X.cubes(p):
                for e in Y.cubes(n - p):
                    lhs = cube_boundary(P, pair_cube(X, c, e))
                    rhs: dict = {}
                    for f, v in cube_boundary(X, c).items():
                        lc_add(rhs, pair_cube(X, f, e), v)
                    for f, v in cube_boundary(Y, e).items():
                        lc_add(rhs, pair_cube(X, c, f), v * (-1 if p % 2 else 1))
                    if lhs != rhs:
                        return False
    return True


# ---------------------------------------------------------------------------
# ordered chains


def ordered_class(c: Cube):
    """Class of a possibly permuted cube in C^ord: (ordinary representative, sign) or None if degenerate."""
    if is_degenerate(c):
        return None
    phi = c[1]
    return (c[0], tuple(sorted(phi))), permutation_sign(phi)


def ordered_presentation(X: CubicalSet, n: int) -> dict:
    """C^ord_n as the cokernel of the relations g - π g (adjacent transpositions) on permuted cubes."""
    gens = [(cell, perm) for cell in X.cells_of_dim(n) for perm in itertools.permutations(range(n))]
    idx = {g: i for i, g in enumerate(gens)}
    rels = []
    for g in gens:
        for j in range(n - 1):
            tau = list(range(n))
            tau[j], tau[j + 1] = tau[j + 1], tau[j]
            h = permute_cube(g, tau)
            col = [0] * len(gens)
            col[idx[g]] += 1
            col[idx[h]] += 1  # g - ε(τ)(g∘τ) with ε(τ) = -1
            rels.append(col)
    R = Matrix.from_columns(rels, len(gens)) if rels else Matrix.zeros(len(gens), 0)
    factors = invariant_factors(R)
    return {"generators": gens, "relations": R, "free_rank": len(gens) - len(factors),
            "torsion": [d for d in factors if d > 1]}


def cokernel_torsion(R: Matrix) -> tuple[int, list[int]]:
    """(free rank, torsion) of Z^m / im R."""
    factors = invariant_factors(R)
    return R.nrows - len(factors), [d for d in factors if d > 1]


def ordered_chains(X: CubicalSet, window: int | None = None) -> ChainComplex:
    """C^ord_*: basis the ordinary nondegenerate cubes; a permuted cube is sign(φ) times its representative."""
    top = X.dim if window is None else min(window + 1, X.dim)
    for n in range(top + 1):
        pres = ordered_presentation(X, n)
        if pres["torsion"] or pres["free_rank"] != len(X.cells_of_dim(n)):
            raise ValueError(f"C^ord_{n} is not free on orbit representatives: {pres['torsion']}")
    basis = {n: X.nondegenerate(n) for n in range(top + 1)}

    def bd(c):
        out: dict = {}
        for f, v in cube_boundary(X, c, True).items():
            rep, sgn = ordered_class(f)
            lc_add(out, rep, sgn * v)
        return out
    exact = None if top == X.dim else window
    return complex_from_sparse(basis, bd, exact_top=exact)


def ordered_projection(X: CubicalSet, window: int | None = None) -> ChainMap:
    C, O = normalized_cubical(X, window), ordered_chains(X, window)
    comps = {}
    for n in C.degrees():
        idx = {c: i for i, c in enumerate(O.labels.get(n, []))}
        entries = {}
        for j, c in enumerate(C.labels[n]):
            rep, sgn = ordered_class(c)
            entries[(idx[rep], j)] = sgn
        comps[n] = Matrix.from_entries(O.rank(n), C.rank(n), entries)
    return ChainMap(C, O, comps)


def ordered_cross_product(X: CubicalSet, Y: CubicalSet, window: int | None = None,
                          P: CubicalSet | None = None) -> ChainMap:
    P = P or product(X, Y)
    OX, OY, OP = ordered_chains(X, window), ordered_chains(Y, window), ordered_chains(P, window)
    T = tensor(OX, OY)
    comps = {}
    for n in range(T.lower_bound, min(T.top, OP.top) + 1):
        idx = {c: i for i, c in enumerate(OP.labels.get(n, []))}
        entries = {}
        for col, (p, i, j) in enumerate(tensor_basis(OX, OY, n)):
            rep, sgn = ordered_class(pair_cube(X, OX.labels[p][i], OY.labels[n - p][j]))
            entries[(idx[rep], col)] = sgn
        comps[n] = Matrix.from_entries(OP.rank(n), T.rank(n), entries)
    return ChainMap(T, OP, comps)


def swap_cube(X: CubicalSet, Y: CubicalSet, c: Cube) -> Cube:
    """Image of a cube of X×Y under the factor swap X×Y -> Y×X (a coordinate-permuted cube)."""
    (cx, cy), phi = c
    kx, ky = X.dim_of[cx], Y.dim_of[cy]
    new_phi = tuple(None if v is None else (v + ky if v < kx else v - kx) for v in phi)
    return ((cy, cx), new_phi)


def check_ordered_symmetry(X: CubicalSet, Y: CubicalSet, upto: int | None = None) -> bool:
    """swap_*(x×y) = (-1)^{pq} (y×x) in C^ord, i.e. the symmetry square commutes."""
    hi = X.dim + Y.dim if upto is None else upto
    for n in range(hi + 1):
        for p in range(n + 1):
            for x in X.nondegenerate(p):
                for y in Y.nondegenerate(n - p):
                    lhs = ordered_class(swap_cube(X, Y, pair_cube(X, x, y)))
                    rep, sgn = ordered_class(pair_cube(Y, y, x))
                    if lhs != (rep, sgn * (-1 if (p * (n - p)) % 2 else 1)):
                        return False
    return True


def check_plain_symmetry(X: CubicalSet, Y: CubicalSet, upto: int | None = None) -> bool:
    """The same square for C_* itself (expected to fail: swapped cubes are not ordinary)."""
    hi = X.dim + Y.dim if upto is None else upto
    for n in range(hi + 1):
        for p in range(n + 1):
            for x in X.nondegenerate(p):
                for y in Y.nondegenerate(n - p):
                    s = swap_cube(X, Y, pair_cube(X, x, y))
                    if not is_ordinary(s) and p and n - p:
                        return False
    return True


# ---------------------------------------------------------------------------
# Serre diagonal


def serre_diagonal_cube(X: CubicalSet, c: Cube) -> dict:
    """Δ(c) = Σ_{A⊔B} sign(A,B) c|_{B=0} ⊗ c|_{A=1}, sign = parity of #{(a,b): b < a}."""
    n = cube_dim(c)
    out: dict = {}
    coords = range(1, n + 1)
    for r in range(n + 1):
        for A in itertools.combinations(coords, r):
            B = [i for i in coords if i not in A]
            inv = sum(1 for a in A for b in B if b < a)
            front = X.restrict(c, B, 0)
            back = X.restrict(c, A, 1)
            lc_add(out, (front, back), -1 if inv % 2 else 1)
    return out


def serre_diagonal(X: CubicalSet, window: int | None = None) -> ChainMap:
    """Normalized C(X) -> C(X)⊗C(X)."""
    C = normalized_cubical(X, window)
    T = tensor(C, C)
    comps = {}
    for n in C.degrees():
        idx = {(C.labels[p][i], C.labels[n - p][j]): k for k, (p, i, j) in enumerate(tensor_basis(C, C, n))}
        entries = {}
        for col, c in enumerate(C.labels[n]):
            for (u, v), s in serre_diagonal_cube(X, c).items():
                if is_degenerate(u) or is_degenerate(v):
                    continue
                entries[(idx[(u, v)], col)] = s
        comps[n] = Matrix.from_entries(T.rank(n), C.rank(n), entries)
    return ChainMap(C, T, comps, check=False)


def check_serre_coassociative(X: CubicalSet) -> bool:
    """(Δ⊗1)Δ = (1⊗Δ)Δ on nondegenerate cubes, as triples (no Koszul signs: Δ has degree 0)."""
    def drop(d):
        return {k: v for k, v in d.items() if not any(is_degenerate(x) for x in k)}
    for n in range(X.dim + 1):
        for c in X.nondegenerate(n):
            left: dict = {}
            right: dict = {}
            for (u, v), s in drop(serre_diagonal_cube(X, c)).items():
                for (u1, u2), s2 in drop(serre_diagonal_cube(X, u)).items():
                    lc_add(left, (u1, u2, v), s * s2)
                for (v1, v2), s2 in drop(serre_diagonal_cube(X, v)).items():
                    lc_add(right, (u, v1, v2), s * s2)
            if left != right:
                return False
    return True


def check_serre_counit(X: CubicalSet) -> bool:
    """Augmenting either factor (vertices ↦ 1) recovers c."""
    for n in range(X.dim + 1):
        for c in X.nondegenerate(n):
            left: dict = {}
            right: dict = {}
            for (u, v), s in serre_diagonal_cube(X, c).items():
                if is_degenerate(u) or is_degenerate(v):
                    continue
                if cube_dim(u) == 0:
                    lc_add(left, v, s)
                if cube_dim(v) == 0:
                    lc_add(right, u, s)
            if left != {c: 1} or right != {c: 1}:
                return False
    return True


# ---------------------------------------------------------------------------
# symbolic verification of the path-space cone contraction

ZERO = None  # the constant 0 as a coordinate expression


def _subst(expr, var, value):
    """Substitute var := value (0, 1 or a frozenset monomial) into a monomial."""
    if expr is ZERO or var not in expr:
        return expr
    if value == 0:
        return ZERO
    if value == 1:
        return expr - {var}
    return (expr - {var}) | value


class FormalCube:
    """c̃∘φ where c̃: I^n × I -> X is the generic cube of the path space and φ is a monomial map.

    Key: (m, exprs) with exprs the n t-coordinates and the u-coordinate as monomials
    in the variables t1..tm, u.  Any term whose u-expression is 0 equals the
    constant cube at the base point and is collapsed to ('BASE', m).
    """

    @staticmethod
    def generic(n: int):
        return (n, tuple(frozenset({("t", i)}) for i in range(1, n + 1)) + (frozenset({"u"}),))

    @staticmethod
    def base(m: int):
        return ("BASE", m)

    @staticmethod
    def normalize(m: int, exprs: tuple):
        if exprs[-1] is ZERO:
            return ("BASE", m)
        return (m, exprs)

    @staticmethod
    def dim(key) -> int:
        return key[1] if key[0] == "BASE" else key[0]

    @staticmethod
    def face(key, i: int, eps: int):
        """Precompose with δ_i^ε: t_i := ε, t_j := t_{j-1} for j > i."""
        if key[0] == "BASE":
            return ("BASE", key[1] - 1)
        m, exprs = key
        out = []
        for e in exprs:
            e = _subst(e, ("t", i), eps)
            if e is not ZERO:
                e = frozenset(("t", v[1] - 1) if isinstance(v, tuple) and v[1] > i else v for v in e)
            out.append(e)
        return FormalCube.normalize(m - 1, tuple(out))

    @staticmethod
    def mu(key):
        """Precompose with μ(t_1..t_{m+1}; u) = (t_1..t_m; t_{m+1} u)."""
        if key[0] == "BASE":
            return ("BASE", key[1] + 1)
        m, exprs = key
        new_var = frozenset({("t", m + 1), "u"})
        out = tuple(_subst(e, "u", new_var) for e in exprs)
        return FormalCube.normalize(m + 1, out)

    @staticmethod
    def permute(key, perm: Sequence[int]):
        """Precompose with the coordinate permutation t ↦ (t_{π(1)}, ..., t_{π(m)}) (u fixed)."""
        if key[0] == "BASE":
            return key
        m, exprs = key
        ren = {("t", i + 1): ("t", perm[i] + 1) for i in range(m)}
        out = tuple(e if e is ZERO else frozenset(ren.get(v, v) for v in e) for e in exprs)
        return (m, out)

    @staticmethod
    def is_degenerate(key) -> bool:
        """Independent of some cube coordinate t_j."""
        if key[0] == "BASE":
            return key[1] >= 1
        m, exprs = key
        used = set()
        for e in exprs:
            if e is not ZERO:
                used |= {v for v in e if isinstance(v, tuple)}
        return len(used) < m


def _formal_d(vec: dict) -> dict:
    out: dict = {}
    for key, c in vec.items():
        m = FormalCube.dim(key)
        for i in range(1, m + 1):
            for eps in (0, 1):
                lc_add(out, FormalCube.face(key, i, eps), c * (-1 if (i + eps) % 2 else 1))
    return out


def _formal_s(vec: dict, sign_shift: int) -> dict:
    """s(c̃) = (-1)^{m + sign_shift} c̃∘μ on m-cubes; sign_shift = 1 is the literal displayed sign."""
    out: dict = {}
    for key, c in vec.items():
        m = FormalCube.dim(key)
        lc_add(out, FormalCube.mu(key), c * (-1 if (m + sign_shift) % 2 else 1))
    return out


def contraction_defect(n: int, sign_shift: int) -> dict:
    """(ds + sd)(c̃) - c̃ for the generic n-cube; equals -x when the identity holds."""
    c = {FormalCube.generic(n): 1}
    lhs = _formal_d(_formal_s(c, sign_shift))
    for k, v in _formal_s(_formal_d(c), sign_shift).items():
        lc_add(lhs, k, v)
    lc_add(lhs, FormalCube.generic(n), -1)
    return lhs


def verify_cone_contraction(n_max: int) -> dict:
    """Symbolic check of (ds+sd)(c̃) = c̃ - x and Σ_n-equivariance of s for n <= n_max."""
    checks = []
    all_ok = True
    for n in range(n_max + 1):
        target = {FormalCube.base(n): -1}
        corrected = contraction_defect(n, 0) == target
        literal = contraction_defect(n, 1)
        literal_negated = literal == {FormalCube.generic(n): -2, FormalCube.base(n): 1}
        equivariant = True
        c = FormalCube.generic(n)
        for perm in itertools.permutations(range(n)):
            sgn = permutation_sign(perm)
            lhs = _formal_s({FormalCube.permute(c, perm): sgn}, 0)
            perm2 = tuple(perm) + (n,)
            rhs = {FormalCube.permute(k, perm2): v * sgn for k, v in _formal_s({c: 1}, 0).items()}
            if lhs != rhs:
                equivariant = False
                break
        preserves_degenerate = True
        for j in range(1, n + 2):
            # c̃ precomposed with the projection forgetting coordinate j
            ts = [frozenset({("t", i if i < j else i + 1)}) for i in range(1, n + 1)]
            degen = (n + 1, tuple(ts) + (frozenset({"u"}),))
            if not (FormalCube.is_degenerate(degen) and FormalCube.is_degenerate(FormalCube.mu(degen))):
                preserves_degenerate = False
        ok = corrected and equivariant
        all_ok &= ok
        checks.append({"n": n, "identity": corrected, "equivariant": equivariant,
                       "literal_sign_gives_negative": literal_negated,
                       "base_term_degenerate": n >= 1,
                       "s_preserves_degenerate": preserves_degenerate})
    return {"n_max": n_max, "passed": all_ok, "checks": checks}

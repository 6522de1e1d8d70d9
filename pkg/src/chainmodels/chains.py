"""Chain and cochain complexes over Z or Q with the Koszul-signed monoidal structure.

A complex stores degrees ``lower_bound .. top``.  Complexes built from infinite
objects are brutal truncations; ``exact_top`` records the highest degree in which
homology is honest (``exact_top == top`` means the complex really stops there).
"""

from __future__ import annotations

import enum
import json
from fractions import Fraction
from typing import Callable, Sequence

from .exactlin import HomologyGroup, Matrix, homology_at, rank_rational


class RingMismatch(ValueError):
    pass


class NotChainMap(ValueError):
    pass


class UnboundedInput(ValueError):
    pass


class WindowTooSmall(ValueError):
    pass


class TruncationTooSmall(ValueError):
    pass


class InfiniteAntidiagonal(ValueError):
    pass


class InfiniteRank(ValueError):
    pass


def lc_add(acc: dict, key, coeff) -> None:
    """acc += coeff * key, dropping zeros."""
    if not coeff:
        return
    v = acc.get(key, 0) + coeff
    if v:
        acc[key] = v
    else:
        del acc[key]


def lc_extend(acc: dict, other: dict, coeff=1) -> None:
    for k, v in other.items():
        lc_add(acc, k, coeff * v)


class ChainComplex:
    """Graded free module with differential.

    ``differentials[n]`` is the matrix leaving degree n: C_n -> C_{n-1} for a
    chain complex, C^n -> C^{n+1} for a cochain complex.
    """

    def __init__(self, ranks: Sequence[int], differentials: dict | None = None, *, ring: str = "Z",
                 lower_bound: int = 0, labels: dict | None = None, orientation: str = "chain",
                 exact_top: int | None = None, check: bool = True):
        if ring not in ("Z", "Q"):
            raise ValueError(f"unknown ring {ring!r}")
        if orientation not in ("chain", "cochain"):
            raise ValueError(f"unknown orientation {orientation!r}")
        self.ring = ring
        self.lower_bound = lower_bound
        self.ranks = list(ranks)
        self.orientation = orientation
        self.top = lower_bound + len(self.ranks) - 1
        self.exact_top = self.top if exact_top is None else min(exact_top, self.top)
        self.labels = {n: list(v) for n, v in (labels or {}).items()}
        step = -1 if orientation == "chain" else 1
        self._step = step
        self.differentials: dict[int, Matrix] = {}
        for n in self.degrees():
            m = (differentials or {}).get(n)
            shape = (self.rank(n + step), self.rank(n))
            if m is None:
                m = Matrix.zeros(*shape)
            if m.shape != shape:
                raise ValueError(f"differential in degree {n} has shape {m.shape}, expected {shape}")
            self.differentials[n] = m
        if check:
            self.check_d_squared()

    # -- basic access
    def degrees(self) -> range:
        return range(self.lower_bound, self.top + 1)

    def rank(self, n: int) -> int:
        if self.lower_bound <= n <= self.top:
            return self.ranks[n - self.lower_bound]
        return 0

    def d(self, n: int) -> Matrix:
        if n in self.differentials:
            return self.differentials[n]
        return Matrix.zeros(self.rank(n + self._step), self.rank(n))

    def label(self, n: int, i: int):
        lab = self.labels.get(n)
        return lab[i] if lab else i

    @property
    def bounded(self) -> bool:
        return self.exact_top >= self.top

    @property
    def total_rank(self) -> int:
        return sum(self.ranks)

    def check_d_squared(self) -> None:
        for n in self.degrees():
            if not (self.d(n + self._step) @ self.d(n)).is_zero():
                raise ValueError(f"d^2 != 0 at degree {n}")

    def homology(self, n: int) -> HomologyGroup:
        if self.bounded and (n > self.top or n < self.lower_bound):
            return HomologyGroup(0)
        if n > self.exact_top:
            raise WindowTooSmall(f"degree {n} beyond verified window {self.exact_top}")
        d_in = self.d(n - self._step)
        d_out = self.d(n)
        return homology_at(d_in, d_out, self.ring)

    def homology_all(self, upto: int | None = None) -> dict[int, HomologyGroup]:
        hi = self.exact_top if upto is None else upto
        return {n: self.homology(n) for n in range(self.lower_bound, hi + 1)}

    def betti(self, upto: int | None = None) -> list[int]:
        return [h.betti for h in self.homology_all(upto).values()]

    def is_acyclic(self, upto: int | None = None) -> bool:
        return all(h.is_zero for h in self.homology_all(upto).values())

    def with_ring(self, ring: str) -> "ChainComplex":
        return ChainComplex(self.ranks, self.differentials, ring=ring, lower_bound=self.lower_bound,
                            labels=self.labels, orientation=self.orientation, exact_top=self.exact_top,
                            check=False)

    def truncate(self, top: int) -> "ChainComplex":
        """Keep degrees <= top (brutal truncation)."""
        top = min(top, self.top)
        keep = top - self.lower_bound + 1
        diffs = {n: m for n, m in self.differentials.items() if n <= top}
        if self.orientation == "cochain" and top in diffs:
            del diffs[top]
        exact = min(self.exact_top, top - (0 if self.orientation == "chain" else 1)) \
            if top < self.top else self.exact_top
        return ChainComplex(self.ranks[:keep], diffs, ring=self.ring, lower_bound=self.lower_bound,
                            labels={n: v for n, v in self.labels.items() if n <= top},
                            orientation=self.orientation, exact_top=exact, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return (self.ring, self.lower_bound, self.ranks, self.orientation, self.differentials) == \
            (other.ring, other.lower_bound, other.ranks, other.orientation, other.differentials)

    def __repr__(self) -> str:
        return f"ChainComplex(ring={self.ring}, lb={self.lower_bound}, ranks={self.ranks}, {self.orientation})"

    # -- serialization
    def to_json(self) -> dict:
        def enc(v):
            return v if self.ring == "Z" and isinstance(v, int) else str(Fraction(v))
        out = {
            "ring": self.ring,
            "lower_bound": self.lower_bound,
            "ranks": list(self.ranks),
            "orientation": self.orientation,
            "exact_top": self.exact_top,
            "differentials": [[[enc(v) for v in row] for row in self.d(n).rows] for n in self.degrees()],
        }
        if self.labels:
            out["labels"] = {str(n): [_label_json(x) for x in v] for n, v in sorted(self.labels.items())}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ChainComplex":
        ring = data["ring"]
        lb = data["lower_bound"]
        ranks = data["ranks"]
        orientation = data.get("orientation", "chain")
        step = -1 if orientation == "chain" else 1

        def dec(v):
            if ring == "Z" and isinstance(v, int):
                return v
            f = Fraction(v)
            return f
        diffs = {}
        for k, rows in enumerate(data["differentials"]):
            n = lb + k
            nr = ranks[n + step - lb] if 0 <= n + step - lb < len(ranks) else 0
            diffs[n] = Matrix([[dec(v) for v in row] for row in rows], nr, ranks[k])
        labels = {int(n): v for n, v in data.get("labels", {}).items()}
        return cls(ranks, diffs, ring=ring, lower_bound=lb, labels=labels, orientation=orientation,
                   exact_top=data.get("exact_top"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def loads(cls, text: str) -> "ChainComplex":
        return cls.from_json(json.loads(text))


def _label_json(x):
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return x
    return str(x)


def unit_complex(ring: str = "Z") -> ChainComplex:
    return ChainComplex([1], ring=ring, labels={0: ["1"]})


def zero_complex(ring: str = "Z", lower_bound: int = 0) -> ChainComplex:
    return ChainComplex([0], ring=ring, lower_bound=lower_bound)


def complex_from_sparse(basis: dict[int, list], boundary: Callable[[object], dict], *, ring: str = "Z",
                        exact_top: int | None = None, orientation: str = "chain") -> ChainComplex:
    """Build a complex from per-degree bases and a function giving the boundary of a basis element.

    ``boundary(x)`` returns a dict {basis element of the adjacent degree: coefficient};
    keys outside the stored bases must have zero total coefficient.
    """
    degs = sorted(basis)
    lb, top = degs[0], degs[-1]
    step = -1 if orientation == "chain" else 1
    index = {n: {x: i for i, x in enumerate(basis.get(n, []))} for n in range(lb, top + 1)}
    diffs = {}
    for n in range(lb, top + 1):
        tgt = n + step
        entries = {}
        for j, x in enumerate(basis.get(n, [])):
            for y, c in boundary(x).items():
                if not c:
                    continue
                if tgt not in index or y not in index[tgt]:
                    if lb <= tgt <= top:
                        raise KeyError(f"boundary term {y!r} not in basis of degree {tgt}")
                    continue
                entries[(index[tgt][y], j)] = entries.get((index[tgt][y], j), 0) + c
        diffs[n] = Matrix.from_entries(len(basis.get(tgt, [])) if lb <= tgt <= top else 0,
                                       len(basis.get(n, [])), entries)
    ranks = [len(basis.get(n, [])) for n in range(lb, top + 1)]
    return ChainComplex(ranks, diffs, ring=ring, lower_bound=lb,
                        labels={n: list(basis.get(n, [])) for n in range(lb, top + 1)},
                        orientation=orientation, exact_top=exact_top)


# ---------------------------------------------------------------------------
# chain maps


class ChainMap:
    """Degree-0 map; ``components[n]`` has shape (target.rank(n), source.rank(n))."""

    def __init__(self, source: ChainComplex, target: ChainComplex, components: dict | None = None,
                 check: bool = True):
        if source.ring != target.ring:
            raise RingMismatch(f"{source.ring} vs {target.ring}")
        self.source = source
        self.target = target
        self.components: dict[int, Matrix] = {}
        for n in set(source.degrees()) | set(target.degrees()):
            m = (components or {}).get(n)
            shape = (target.rank(n), source.rank(n))
            if m is None:
                m = Matrix.zeros(*shape)
            if m.shape != shape:
                raise ValueError(f"component {n} has shape {m.shape}, expected {shape}")
            self.components[n] = m
        if check and not self.is_chain_map():
            raise NotChainMap("map does not commute with differentials")

    def __getitem__(self, n: int) -> Matrix:
        if n in self.components:
            return self.components[n]
        return Matrix.zeros(self.target.rank(n), self.source.rank(n))

    def degrees(self) -> list[int]:
        return sorted(self.components)

    def is_chain_map(self, upto: int | None = None) -> bool:
        s, t = self.source, self.target
        step = s._step
        hi = min(s.top, t.top) if upto is None else upto
        for n in range(min(s.lower_bound, t.lower_bound), hi + 1):
            m = n + step
            if m > hi:
                continue
            if not (t.d(n) @ self[n] == self[m] @ s.d(n)):
                return False
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other."""
        if other.target.ranks != self.source.ranks or other.target.lower_bound != self.source.lower_bound:
            raise ValueError("maps are not composable")
        degs = set(other.components) | set(self.components)
        return ChainMap(other.source, self.target, {n: self[n] @ other[n] for n in degs}, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        degs = set(self.components) | set(other.components)
        return all(self[n] == other[n] for n in degs)

    @classmethod
    def identity(cls, C: ChainComplex) -> "ChainMap":
        return cls(C, C, {n: Matrix.identity(C.rank(n)) for n in C.degrees()}, check=False)

    @classmethod
    def zero(cls, C: ChainComplex, D: ChainComplex) -> "ChainMap":
        return cls(C, D, {}, check=False)


# ---------------------------------------------------------------------------
# monoidal structure


def _check_ring(*cs: ChainComplex) -> str:
    rings = {c.ring for c in cs}
    if len(rings) != 1:
        raise RingMismatch(f"rings differ: {sorted(rings)}")
    return rings.pop()


def tensor_basis(C: ChainComplex, D: ChainComplex, n: int) -> list[tuple[int, int, int]]:
    """Basis of (C⊗D)_n as (p, i, j): ascending p, then (i, j) lexicographic."""
    out = []
    for p in C.degrees():
        q = n - p
        for i in range(C.rank(p)):
            for j in range(D.rank(q)):
                out.append((p, i, j))
    return out


def tensor(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    """d(x⊗y) = dx⊗y + (-1)^p x⊗dy."""
    ring = _check_ring(C, D)
    if C.orientation != D.orientation:
        raise ValueError("cannot tensor chain with cochain complex")
    step = C._step
    lb = C.lower_bound + D.lower_bound
    top = C.top + D.top
    limits = [top]
    if not C.bounded:
        limits.append(C.exact_top + D.lower_bound)
    if not D.bounded:
        limits.append(D.exact_top + C.lower_bound)
    bases = {n: tensor_basis(C, D, n) for n in range(lb, top + 1)}
    index = {n: {b: k for k, b in enumerate(bs)} for n, bs in bases.items()}
    diffs = {}
    colsC = {p: C.d(p).T.nonzero_rows() for p in C.degrees()}
    colsD = {q: D.d(q).T.nonzero_rows() for q in D.degrees()}
    for n in range(lb, top + 1):
        tgt = n + step
        entries = {}
        for col, (p, i, j) in enumerate(bases[n]):
            q = n - p
            for k, v in colsC[p][i].items():
                entries[(index[tgt][(p + step, k, j)], col)] = v
            sign = -1 if p % 2 else 1
            for l, v in colsD[q][j].items():
                key = (index[tgt][(p, i, l)], col)
                entries[key] = entries.get(key, 0) + sign * v
        diffs[n] = Matrix.from_entries(len(bases.get(tgt, [])), len(bases[n]), entries)
    labels = {n: [(C.label(p, i), D.label(n - p, j)) for p, i, j in bases[n]] for n in bases}
    return ChainComplex([len(bases[n]) for n in range(lb, top + 1)], diffs, ring=ring, lower_bound=lb,
                        labels=labels, orientation=C.orientation, exact_top=min(limits))


def tensor_many(complexes: Sequence[ChainComplex]) -> ChainComplex:
    """Left-nested tensor; basis agrees with (((C1⊗C2)⊗C3)...)."""
    out = complexes[0]
    for c in complexes[1:]:
        out = tensor(out, c)
    return out


def tensor_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """(f⊗g)(x⊗y) = f(x)⊗g(y) (degree-0 maps, so no sign)."""
    S = tensor(f.source, g.source)
    T = tensor(f.target, g.target)
    comps = {}
    for n in S.degrees():
        tindex = {b: k for k, b in enumerate(tensor_basis(f.target, g.target, n))}
        entries = {}
        for col, (p, i, j) in enumerate(tensor_basis(f.source, g.source, n)):
            fi = f[p].column(i)
            gj = g[n - p].column(j)
            for a, va in enumerate(fi):
                if va:
                    for b, vb in enumerate(gj):
                        if vb:
                            entries[(tindex[(p, a, b)], col)] = va * vb
        comps[n] = Matrix.from_entries(T.rank(n), S.rank(n), entries)
    return ChainMap(S, T, comps, check=False)


def symmetry(C: ChainComplex, D: ChainComplex) -> ChainMap:
    """τ(x⊗y) = (-1)^{pq} y⊗x."""
    CD, DC = tensor(C, D), tensor(D, C)
    comps = {}
    for n in CD.degrees():
        tindex = {b: k for k, b in enumerate(tensor_basis(D, C, n))}
        entries = {}
        for col, (p, i, j) in enumerate(tensor_basis(C, D, n)):
            q = n - p
            entries[(tindex[(q, j, i)], col)] = -1 if (p * q) % 2 else 1
        comps[n] = Matrix.from_entries(DC.rank(n), CD.rank(n), entries)
    return ChainMap(CD, DC, comps, check=False)


def shift(C: ChainComplex) -> ChainComplex:
    """(C[-1])_n = C_{n-1} with differential -d."""
    return ChainComplex(C.ranks, {n + 1: -m for n, m in C.differentials.items()}, ring=C.ring,
                        lower_bound=C.lower_bound + 1,
                        labels={n + 1: v for n, v in C.labels.items()}, orientation=C.orientation,
                        exact_top=C.exact_top + 1)


def mapping_cone(f: ChainMap) -> ChainComplex:
    """cone_n = C_{n-1} ⊕ D_n, d(c, y) = (-dc, f c + dy); chain orientation."""
    C, D = f.source, f.target
    if C.orientation != "chain":
        raise ValueError("mapping_cone expects chain complexes")
    if not f.is_chain_map():
        raise NotChainMap("mapping_cone of a non-chain map")
    lb = min(C.lower_bound + 1, D.lower_bound)
    top = max(C.top + 1, D.top)
    diffs = {}
    ranks = []
    for n in range(lb, top + 1):
        ranks.append(C.rank(n - 1) + D.rank(n))
        a, b = C.rank(n - 1), D.rank(n)
        a2, b2 = C.rank(n - 2), D.rank(n - 1)
        entries = {}
        for (r, c), v in _entries(-C.d(n - 1)):
            entries[(r, c)] = v
        for (r, c), v in _entries(f[n - 1]):
            entries[(a2 + r, c)] = v
        for (r, c), v in _entries(D.d(n)):
            entries[(a2 + r, a + c)] = v
        diffs[n] = Matrix.from_entries(a2 + b2, a + b, entries)
    exact = min(C.exact_top + 1, D.exact_top)
    labels = {n: [("s", C.label(n - 1, i)) for i in range(C.rank(n - 1))] +
              [("t", D.label(n, j)) for j in range(D.rank(n))] for n in range(lb, top + 1)}
    return ChainComplex(ranks, diffs, ring=C.ring, lower_bound=lb, labels=labels, exact_top=exact)


def _entries(m: Matrix):
    for i, row in enumerate(m.rows):
        for j, v in enumerate(row):
            if v:
                yield (i, j), v


class WeakEquivalencePolicy(enum.Enum):
    QUASI_ISOMORPHISM = "quasi-isomorphism"
    HOMOTOPY_EQUIVALENCE = "homotopy-equivalence"


def is_weak_equivalence(f: ChainMap, policy: WeakEquivalencePolicy = WeakEquivalencePolicy.QUASI_ISOMORPHISM,
                        window: int | None = None) -> bool:
    """True iff the mapping cone has no homology in degrees <= window.

    For bounded complexes of finite free modules an acyclic cone is contractible,
    so both policies are decided by the same computation.  A cone acyclic through
    degree W certifies H_k(f) iso for k < W and onto for k = W.
    """
    if not isinstance(policy, WeakEquivalencePolicy):
        raise TypeError(f"unknown policy {policy!r}")
    cone = mapping_cone(f)
    hi = cone.exact_top if window is None else window
    if hi > cone.exact_top:
        raise UnboundedInput(f"window {hi} exceeds the verified degrees ({cone.exact_top})")
    return cone.is_acyclic(hi)


# ---------------------------------------------------------------------------
# double complexes


class DoubleComplex:
    """C_{pq} with d_h: (p,q) -> (p-1,q) and d_v: (p,q) -> (p,q-1), commuting."""

    def __init__(self, ranks: dict, d_h: dict, d_v: dict, ring: str = "Z", exact_top: int | None = None):
        self.ranks = {k: v for k, v in ranks.items() if v}
        self.ring = ring
        self.exact_top = exact_top
        if any(v is None for v in ranks.values()):
            raise InfiniteAntidiagonal("every bidegree must have finite rank")
        self.d_h = {}
        self.d_v = {}
        for (p, q) in self.ranks:
            self.d_h[(p, q)] = d_h.get((p, q)) or Matrix.zeros(self.rank(p - 1, q), self.rank(p, q))
            self.d_v[(p, q)] = d_v.get((p, q)) or Matrix.zeros(self.rank(p, q - 1), self.rank(p, q))
        self.check()

    def rank(self, p: int, q: int) -> int:
        return self.ranks.get((p, q), 0)

    def h(self, p, q) -> Matrix:
        return self.d_h.get((p, q)) or Matrix.zeros(self.rank(p - 1, q), self.rank(p, q))

    def v(self, p, q) -> Matrix:
        return self.d_v.get((p, q)) or Matrix.zeros(self.rank(p, q - 1), self.rank(p, q))

    def check(self) -> None:
        for (p, q) in self.ranks:
            if not (self.h(p - 1, q) @ self.h(p, q)).is_zero():
                raise ValueError(f"d'^2 != 0 at {(p, q)}")
            if not (self.v(p, q - 1) @ self.v(p, q)).is_zero():
                raise ValueError(f"d''^2 != 0 at {(p, q)}")
            if not (self.h(p, q - 1) @ self.v(p, q) == self.v(p - 1, q) @ self.h(p, q)):
                raise ValueError(f"d' and d'' do not commute at {(p, q)}")


def tot(D: DoubleComplex) -> ChainComplex:
    """Tot_n = ⊕_{p+q=n} C_{pq} (ascending p), d = d' + (-1)^p d''."""
    if not D.ranks:
        return zero_complex(D.ring)
    ns = [p + q for p, q in D.ranks]
    lb, top = min(ns), max(ns)
    bases = {n: sorted((p, q, i) for (p, q), r in D.ranks.items() if p + q == n for i in range(r))
             for n in range(lb, top + 1)}
    index = {n: {b: k for k, b in enumerate(bs)} for n, bs in bases.items()}
    diffs = {}
    for n in range(lb, top + 1):
        entries = {}
        for col, (p, q, i) in enumerate(bases[n]):
            for r, v in enumerate(D.h(p, q).column(i)):
                if v:
                    entries[(index[n - 1][(p - 1, q, r)], col)] = v
            sign = -1 if p % 2 else 1
            for r, v in enumerate(D.v(p, q).column(i)):
                if v:
                    key = (index[n - 1][(p, q - 1, r)], col)
                    entries[key] = entries.get(key, 0) + sign * v
        diffs[n] = Matrix.from_entries(len(bases.get(n - 1, [])), len(bases[n]), entries)
    return ChainComplex([len(bases[n]) for n in range(lb, top + 1)], diffs, ring=D.ring, lower_bound=lb,
                        labels={n: [(p, q, i) for p, q, i in bases[n]] for n in bases},
                        exact_top=D.exact_top)


class SimplicialChainComplex:
    """Levels X_p (chain complexes) with faces ∂_i: X_p -> X_{p-1} and degeneracies s_j: X_p -> X_{p+1}.

    ``complete`` means every level above the stored ones is zero.
    """

    def __init__(self, levels: list[ChainComplex], faces: dict | None = None, degeneracies: dict | None = None,
                 complete: bool = False):
        self.levels = levels
        self.faces = faces or {}  # (p, i) -> ChainMap
        self.degeneracies = degeneracies or {}  # (p, j) -> ChainMap
        self.complete = complete

    @property
    def top_level(self) -> int:
        return len(self.levels) - 1

    def face(self, p: int, i: int) -> ChainMap:
        return self.faces[(p, i)]

    def check_identities(self) -> list[str]:
        """Matrix-level simplicial identities among the stored operators; returns failures."""
        bad = []
        F, S = self.faces, self.degeneracies
        P = self.top_level
        for p in range(2, P + 1):
            for i in range(p + 1):
                for j in range(i + 1, p + 1):
                    # ∂_i ∂_j = ∂_{j-1} ∂_i
                    if (p, j) in F and (p - 1, i) in F and (p, i) in F and (p - 1, j - 1) in F:
                        if F[(p - 1, i)].compose(F[(p, j)]) != F[(p - 1, j - 1)].compose(F[(p, i)]):
                            bad.append(f"face-face p={p} i={i} j={j}")
        for p in range(0, P):
            for j in range(p + 1):
                if (p, j) not in S:
                    continue
                for i in range(p + 2):
                    if (p + 1, i) not in F:
                        continue
                    lhs = F[(p + 1, i)].compose(S[(p, j)])
                    if i == j or i == j + 1:
                        ok = lhs == ChainMap.identity(self.levels[p])
                    elif i < j:
                        ok = (p, i) in F and (p - 1, j - 1) in S and \
                            lhs == S[(p - 1, j - 1)].compose(F[(p, i)])
                    else:
                        ok = (p, i - 1) in F and (p - 1, j) in S and \
                            lhs == S[(p - 1, j)].compose(F[(p, i - 1)])
                    if not ok:
                        bad.append(f"face-degeneracy p={p} i={i} j={j}")
        return bad


def alternating_face_sum(S: SimplicialChainComplex, p: int) -> ChainMap:
    src, tgt = S.levels[p], S.levels[p - 1]
    comps = {}
    for n in src.degrees():
        acc = Matrix.zeros(tgt.rank(n), src.rank(n))
        for i in range(p + 1):
            m = S.face(p, i)[n]
            acc = acc + (m if i % 2 == 0 else -m)
        comps[n] = acc
    return ChainMap(src, tgt, comps, check=False)


def em_simple(S: SimplicialChainComplex, truncation: int) -> ChainComplex:
    """Eilenberg-MacLane simple complex through total degree ``truncation``.

    Tot of the double complex whose p-direction is the alternating face sum
    Σ(-1)^i ∂_i and whose q-direction is the level differential (signed (-1)^p).
    """
    levels = S.levels
    if not levels:
        return zero_complex()
    ring = _check_ring(*levels)
    lb = min(c.lower_bound for c in levels)
    n_max = truncation + 1
    need_p = n_max - lb
    if S.top_level < need_p and not S.complete:
        raise TruncationTooSmall(f"need simplicial levels through {need_p}, have {S.top_level}")
    ranks, d_h, d_v = {}, {}, {}
    exact = truncation
    for p, c in enumerate(levels[:need_p + 1]):
        if c.top < n_max - p and not c.bounded:
            raise TruncationTooSmall(f"level {p} stored only through degree {c.top}")
        exact = min(exact, c.exact_top + p) if not c.bounded else exact
        face_sum = alternating_face_sum(S, p) if p >= 1 else None
        for q in c.degrees():
            if p + q > n_max or not c.rank(q):
                continue
            ranks[(p, q)] = c.rank(q)
            d_v[(p, q)] = c.d(q)
            if face_sum is not None:
                d_h[(p, q)] = face_sum[q]
    DC = DoubleComplex(ranks, d_h, d_v, ring=ring, exact_top=exact)
    return tot(DC)


def dualize(C: ChainComplex) -> ChainComplex:
    """Hom(C, R): transposed differentials, orientation flipped."""
    if any(r is None for r in C.ranks):
        raise InfiniteRank("dual needs finite ranks")
    flipped = "cochain" if C.orientation == "chain" else "chain"
    step = C._step
    diffs = {}
    for n in C.degrees():
        # new differential leaving n is the transpose of the old one arriving at n
        diffs[n] = C.d(n - step).T
    return ChainComplex(C.ranks, diffs, ring=C.ring, lower_bound=C.lower_bound, labels=C.labels,
                        orientation=flipped, exact_top=C.exact_top)


def dual_map(f: ChainMap) -> ChainMap:
    return ChainMap(dualize(f.target), dualize(f.source), {n: m.T for n, m in f.components.items()},
                    check=False)


def rational_betti(C: ChainComplex, n: int) -> int:
    step = C._step
    return C.rank(n) - rank_rational(C.d(n)) - rank_rational(C.d(n - step))

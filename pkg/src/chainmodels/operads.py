"""Dg operads, operads induced by symmetric monoidal chain functors, and endomorphism operads.

Conventions (arity l >= 1, permutations are 0-based tuples, p[i] = image of i):
  - an element σ of Ass(l) = Σ_l puts input i at position σ[i] of a word;
  - the right action is x·ρ, with x·ρ·ρ' = x·(ρ∘ρ');
  - γ(x; y_1..y_l) substitutes y_i into input i; composite inputs are numbered
    block by block (input j of y_i becomes start_i + j).
The catalog "gap operad" P_K(l) = Σ_l x K^(l-1) records an ordering of the inputs on a
line together with one K-coordinate for each gap between neighbours.  Composition
interleaves the gap coordinates, so it only permutes coordinates; K = point gives Ass.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .chains import (ChainComplex, ChainMap, WeakEquivalencePolicy, complex_from_sparse,
                     is_weak_equivalence)
from .cotriple import VertexComplex
from .exactlin import Matrix

FUNCTORS = ("S", "S_normalized", "C_ord")


class AxiomViolation(AssertionError):
    def __init__(self, diagram: str, arity, detail: str = ""):
        super().__init__(f"{diagram} fails at arity {arity}{': ' + detail if detail else ''}")
        self.diagram = diagram
        self.arity = arity


class NotOperadMorphism(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutations and signs


def perm_compose(p, q) -> tuple:
    """(p∘q)[i] = p[q[i]]."""
    return tuple(p[i] for i in q)


def perm_inverse(p) -> tuple:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def koszul_sign(order, degrees) -> int:
    """Sign of listing graded items in ``order`` (a list of old indices)."""
    s = 0
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                s += degrees[order[a]] * degrees[order[b]]
    return -1 if s % 2 else 1


def block_starts(ms) -> list[int]:
    out, acc = [], 0
    for m in ms:
        out.append(acc)
        acc += m
    return out


def block_permutation(rho, ms) -> tuple:
    """ρ⟨m⟩: input j of block i goes to input j of block ρ[i] in the blocks reordered by ρ."""
    ms2 = [ms[k] for k in perm_inverse(rho)]
    s1, s2 = block_starts(ms), block_starts(ms2)
    out = [0] * sum(ms)
    for i, m in enumerate(ms):
        for j in range(m):
            out[s1[i] + j] = s2[rho[i]] + j
    return tuple(out)


def block_sum(taus) -> tuple:
    out, acc = [], 0
    for t in taus:
        out.extend(acc + v for v in t)
        acc += len(t)
    return tuple(out)


@lru_cache(maxsize=None)
def multishuffles(dims: tuple) -> tuple:
    """Words with dims[k] copies of letter k, each with the sign of its shuffle."""
    letters = [k for k, d in enumerate(dims) for _ in range(d)]
    out = []
    for word in sorted(set(itertools.permutations(letters))):
        inv = sum(1 for a in range(len(word)) for b in range(a + 1, len(word)) if word[a] > word[b])
        out.append((word, -1 if inv % 2 else 1))
    return tuple(out)


def _add(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def compositions(total: int, parts: int):
    """Tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# set-level catalog operads


class GapOperad:
    """P_K(l) = Σ_l x K^(l-1) with K an ordered simplicial complex (None = point).

    ``ordered=False`` drops the Σ_l factor; only allowed for K = point (the trivial operad),
    and the order slot then just holds the arity.
    A vertex of P(l) is (σ, k) with k a tuple of l-1 vertices of K (empty when K is a point).
    """

    def __init__(self, K: VertexComplex | None = None, ordered: bool = True, name: str = ""):
        if not ordered and K is not None:
            raise ValueError("unordered gap coordinates are not Σ-equivariant")
        self.K = K
        self.ordered = ordered
        self.name = name or ("Ass" if K is None and ordered else "Com" if K is None else f"Gap[{K.name}]")

    def orders(self, l: int) -> list:
        return [tuple(p) for p in itertools.permutations(range(l))] if self.ordered else [l]

    def arity(self, order) -> int:
        return len(order) if self.ordered else order

    def simplices(self, l: int, q: int, normalized: bool) -> list:
        """(σ, seq): seq is a weakly increasing sequence of q+1 points of K^(l-1)."""
        if self.K is None:
            coord = [()] if not normalized or q == 0 else []
            seqs = [tuple(() for _ in range(q + 1))] if coord else []
        else:
            per = self.K.simplices(q)
            seqs = []
            for combo in itertools.product(per, repeat=l - 1):
                seq = tuple(zip(*combo)) if combo else tuple(() for _ in range(q + 1))
                if normalized and any(a == b for a, b in zip(seq, seq[1:])):
                    continue
                seqs.append(seq)
        return [(s, seq) for s in self.orders(l) for seq in seqs]

    def unit(self):
        return ((0,) if self.ordered else 1), ()

    def compose_order(self, sigma, taus, ms):
        if not self.ordered:
            return sum(ms)
        inv = perm_inverse(sigma)
        pos_off, acc = [0] * len(sigma), 0
        for p in range(len(sigma)):
            pos_off[p] = acc
            acc += ms[inv[p]]
        start = block_starts(ms)
        out = [0] * sum(ms)
        for i, t in enumerate(taus):
            for j in range(ms[i]):
                out[start[i] + j] = pos_off[sigma[i]] + t[j]
        return tuple(out)

    def gap_order(self, sigma, ms) -> list:
        """Composite gaps as (source, index): source 0 is the outer operation, i+1 is block i."""
        if self.K is None:
            return []
        l = len(ms)
        inv = perm_inverse(sigma) if self.ordered else tuple(range(l))
        out = []
        for p in range(l):
            i = inv[p]
            out.extend((i + 1, g) for g in range(ms[i] - 1))
            if p < l - 1:
                out.append((0, p))
        return out

    def compose_point(self, x, ys):
        """Set-level γ on vertices."""
        sigma, g = x
        ms = [self.arity(t) for t, _ in ys]
        order = self.compose_order(sigma, [t for t, _ in ys], ms)
        src = [g] + [k for _, k in ys]
        return order, tuple(src[s][i] for s, i in self.gap_order(sigma, ms))

    def act_point(self, x, rho):
        sigma, g = x
        return (perm_compose(sigma, rho) if self.ordered else sigma), g

    def collapse_to_ass(self, x):
        """The operad map P_K -> Ass forgetting the gap coordinates."""
        return x[0], ()

    def check_set_axioms(self, max_arity: int = 3, max_total: int = 4) -> list[str]:
        """Equivariance, associativity and unit on vertices."""
        bad = []
        verts = {l: [(s, k) for s in self.orders(l) for k in
                     (itertools.product(self.K.vertices, repeat=l - 1) if self.K else [()])]
                 for l in range(1, max_total + 1)}
        e = self.unit()
        for l in range(1, max_arity + 1):
            for x in verts[l]:
                if self.compose_point(e, [x]) != x or self.compose_point(x, [e] * l) != x:
                    bad.append(f"unit l={l}")
                for total in range(l, max_total + 1):
                    for ms in compositions(total, l):
                        for ys in itertools.product(*[verts[m] for m in ms]):
                            c = self.compose_point(x, list(ys))
                            for rho in (self.orders(l) if self.ordered else []):
                                lhs = self.compose_point(self.act_point(x, rho), list(ys))
                                perm_ys = [ys[k] for k in perm_inverse(rho)]
                                rhs = self.act_point(self.compose_point(x, perm_ys), block_permutation(rho, ms))
                                if lhs != rhs:
                                    bad.append(f"equivariance-a l={l} ms={ms}")
                            for ks in itertools.product(*[verts[1] for _ in range(total)]):
                                lhs = self.compose_point(c, list(ks))
                                st = block_starts(ms)
                                inner = [self.compose_point(ys[i], list(ks[st[i]:st[i] + ms[i]])) for i in range(l)]
                                if lhs != self.compose_point(x, inner):
                                    bad.append(f"associativity l={l} ms={ms}")
        return bad


def ass() -> GapOperad:
    return GapOperad(None, True)


def trivial_operad() -> GapOperad:
    return GapOperad(None, False)


def interval_operad() -> GapOperad:
    return GapOperad(VertexComplex.from_facets([[0, 1]], name="interval"), True, name="Gap[interval]")


def circle_operad() -> GapOperad:
    return GapOperad(VertexComplex.from_facets([[0, 1], [1, 2], [0, 2]], name="circle"), True, name="Gap[circle]")


class CubicalGapOperad:
    """Cubical presentation: P(l) = Σ_l x I^(l-1) (or Σ_l alone when ``interval`` is False).

    A cube is (σ, c) with c a tuple over {0, 1, '*'}; '*' marks a free coordinate.
    """

    def __init__(self, interval: bool = True):
        self.interval = interval
        self.ordered = True
        self.name = "CubicalGap[interval]" if interval else "CubicalAss"
        # the set-level structure is the gap operad with K = {0, 1} (or a point)
        self._gap = GapOperad(VertexComplex.from_facets([[0, 1]]) if interval else None, True)

    def cubes(self, l: int, n: int) -> list:
        coords = [0, 1, "*"] if self.interval else []
        if self.interval:
            cs = [c for c in itertools.product(coords, repeat=l - 1) if sum(v == "*" for v in c) == n]
        else:
            cs = [()] if n == 0 else []
        return [(tuple(s), c) for s in itertools.permutations(range(l)) for c in cs]

    def unit(self):
        return (0,), ()


# ---------------------------------------------------------------------------
# dg operads


class DgOperad:
    """Aritywise chain complexes with γ, the right Σ-action and a unit, on basis labels.

    ``compose(x, ys)`` and ``act(x, rho)`` return dicts {label: coeff}; ``degree(x)`` grades labels;
    ``unit`` is a linear combination in P(1)_0.
    """

    def __init__(self, complexes: dict, compose, act, unit, degree, name: str = "", symmetric: bool = True,
                 window: int | None = None):
        self.complexes = complexes
        self.compose = compose
        self.act = act
        self.unit = unit
        self.degree = degree
        self.name = name
        self.symmetric = symmetric
        self.window = window
        self._index = {l: {n: {x: i for i, x in enumerate(C.labels.get(n, []))} for n in C.degrees()}
                       for l, C in complexes.items()}

    @property
    def max_arity(self) -> int:
        return max(self.complexes)

    def basis(self, l: int, upto: int | None = None) -> list:
        C = self.complexes[l]
        top = C.exact_top if upto is None else min(upto, C.exact_top)
        return [x for n in C.degrees() if n <= top for x in C.labels.get(n, [])]

    def d(self, l: int, x) -> dict:
        C = self.complexes[l]
        n = self.degree(x)
        col = C.d(n).column(self._index[l][n][x])
        step = -1 if C.orientation == "chain" else 1
        return {C.labels[n + step][r]: v for r, v in enumerate(col) if v}

    def compose_lin(self, xs: dict, yss: list) -> dict:
        out = {}
        for x, a in xs.items():
            for combo in itertools.product(*[list(ys.items()) for ys in yss]):
                coeff = a
                for _, c in combo:
                    coeff *= c
                for z, c in self.compose(x, [y for y, _ in combo]).items():
                    _add(out, z, coeff * c)
        return out

    def act_lin(self, xs: dict, rho) -> dict:
        out = {}
        for x, a in xs.items():
            for z, c in self.act(x, rho).items():
                _add(out, z, a * c)
        return out

    def homology(self, l: int, upto: int | None = None) -> dict:
        C = self.complexes[l]
        top = upto if upto is not None else self.window if self.window is not None else C.exact_top
        return {n: C.homology(n).to_json() for n in C.degrees() if n <= min(top, C.exact_top)}

    def summary(self) -> dict:
        return {"name": self.name, "arities": {str(l): {"ranks": C.ranks, "lower_bound": C.lower_bound}
                                               for l, C in sorted(self.complexes.items())}}


def _shapes(max_arity: int, max_total: int):
    for l in range(1, max_arity + 1):
        for total in range(l, max_total + 1):
            for ms in compositions(total, l):
                yield l, ms


def check_operad_axioms(O: DgOperad, max_arity: int = 3, max_total: int = 4, window: int | None = None,
                        raise_on_failure: bool = False) -> list[dict]:
    """Exhaustive equivariance, associativity, unit, chain-map and action checks on basis elements.

    Only inputs whose total degree is in the window (and inside every stored complex) are used.
    """
    w = O.window if window is None else window
    deg = O.degree
    results = {k: True for k in ("unit", "associativity", "equivariance", "compose-chain-map",
                                 "action", "differential")}
    failures = []

    def fail(name, arity, detail=""):
        results[name] = False
        failures.append(AxiomViolation(name, arity, detail))

    def ok_deg(items):
        return w is None or sum(deg(t) for t in items) <= w

    basis = {l: O.basis(l, w) for l in O.complexes}
    e = O.unit
    for l in range(1, max_total + 1):
        C = O.complexes[l]
        if any(not (C.d(n - 1) @ C.d(n)).is_zero() for n in C.degrees() if n - 1 in C.degrees()):
            fail("differential", l)
    # unit
    for l in range(1, max_arity + 1):
        for x in basis[l]:
            if O.compose_lin(e, [{x: 1}]) != {x: 1}:
                fail("unit", l, f"γ(η; {x!r})")
            if O.compose_lin({x: 1}, [e] * l) != {x: 1}:
                fail("unit", l, f"γ({x!r}; η...)")
    # group action
    if O.symmetric:
        for l in range(1, max_total + 1):
            perms = list(itertools.permutations(range(l)))
            for x in basis[l]:
                dx = O.d(l, x)
                for rho in perms:
                    xr = O.act(x, rho)
                    for rho2 in perms[:3]:
                        if O.act_lin(xr, rho2) != O.act(x, perm_compose(rho, rho2)):
                            fail("action", l, "not a right action")
                    lhs = {}
                    for z, c in xr.items():
                        for t, v in O.d(l, z).items():
                            _add(lhs, t, c * v)
                    if lhs != O.act_lin(dx, rho):
                        fail("action", l, "not a chain map")
    for l, ms in _shapes(max_arity, max_total):
        M = sum(ms)
        st = block_starts(ms)
        perms = list(itertools.permutations(range(l))) if O.symmetric else []
        for x in basis[l]:
            for ys in itertools.product(*[basis[m] for m in ms]):
                if not ok_deg((x,) + ys):
                    continue
                ys = list(ys)
                c = O.compose(x, ys)
                degs = [deg(y) for y in ys]
                # Leibniz: d γ(x; y) = γ(dx; y) + Σ ± γ(x; .., dy_i, ..)
                lhs = {}
                for z, a in c.items():
                    for t, v in O.d(M, z).items():
                        _add(lhs, t, a * v)
                rhs = O.compose_lin(O.d(l, x), [{y: 1} for y in ys])
                sgn = deg(x)
                for i, y in enumerate(ys):
                    s = -1 if sgn % 2 else 1
                    for t, v in O.compose_lin({x: 1}, [{u: 1} for u in ys[:i]] + [O.d(ms[i], y)] +
                                              [{u: 1} for u in ys[i + 1:]]).items():
                        _add(rhs, t, s * v)
                    sgn += degs[i]
                if lhs != rhs:
                    fail("compose-chain-map", (l, ms))
                # equivariance
                for rho in perms:
                    lhs = O.compose_lin(O.act(x, rho), [{y: 1} for y in ys])
                    order = list(perm_inverse(rho))
                    eps = koszul_sign(order, degs)
                    inner = O.compose(x, [ys[k] for k in order])
                    rhs = {z: eps * v for z, v in O.act_lin(inner, block_permutation(rho, ms)).items()}
                    if lhs != rhs:
                        fail("equivariance", (l, ms), f"ρ={rho}")
                if O.symmetric:
                    for taus in itertools.product(*[list(itertools.permutations(range(m))) for m in ms]):
                        lhs = O.compose_lin({x: 1}, [O.act(y, t) for y, t in zip(ys, taus)])
                        if lhs != O.act_lin(c, block_sum(taus)):
                            fail("equivariance", (l, ms), f"τ={taus}")
                # associativity
                for total in range(M, max_total + 1):
                    for ks in compositions(total, M):
                        for zs in itertools.product(*[basis[k] for k in ks]):
                            if not ok_deg((x,) + tuple(ys) + zs):
                                continue
                            lhs = O.compose_lin(c, [{z: 1} for z in zs])
                            zdeg = [deg(z) for z in zs]
                            eps = 0
                            for i in range(l):
                                for t in range(st[i]):
                                    eps += degs[i] * zdeg[t]
                            inner = [O.compose(ys[i], list(zs[st[i]:st[i] + ms[i]])) for i in range(l)]
                            rhs = O.compose_lin({x: 1}, inner)
                            if eps % 2:
                                rhs = {k: -v for k, v in rhs.items()}
                            if lhs != rhs:
                                fail("associativity", (l, ms, ks))
    if raise_on_failure and failures:
        raise failures[0]
    return [{"name": f"{k}[{O.name}]", "status": "PASS" if v else "FAIL",
             "degrees_verified": list(range(0, (w if w is not None else 0) + 1))} for k, v in results.items()]


# ---------------------------------------------------------------------------
# induced operads


def _simplicial_complex(P: GapOperad, l: int, normalized: bool, window: int) -> ChainComplex:
    top = window + 1
    basis = {q: P.simplices(l, q, normalized) for q in range(top + 1)}

    def bd(x):
        s, seq = x
        out = {}
        for i in range(len(seq)):
            face = seq[:i] + seq[i + 1:]
            if normalized and any(a == b for a, b in zip(face, face[1:])):
                continue
            _add(out, (s, face), (-1) ** i)
        return out

    exact = None if normalized and all(not basis[q] for q in (top,)) else window
    return complex_from_sparse(basis, bd, exact_top=exact)


def _cube_boundary(x) -> dict:
    s, c = x
    out = {}
    k = 0
    for pos, v in enumerate(c):
        if v == "*":
            k += 1
            for eps in (0, 1):
                _add(out, (s, c[:pos] + (eps,) + c[pos + 1:]), (-1) ** (k + eps))
    return out


def induce_operad(F: str, P, window: int = 4, max_arity: int = 4) -> DgOperad:
    """F(P) with γ = F(γ)∘κ; κ is the iterated shuffle (simplicial) or the ordered cross product (cubical)."""
    if F not in FUNCTORS:
        raise ValueError(f"unknown functor {F!r}")
    if F == "C_ord":
        if not isinstance(P, CubicalGapOperad):
            raise ValueError("C_ord needs a cubical operad")
        return _induce_cubical(P, window, max_arity)
    if not isinstance(P, GapOperad):
        raise ValueError(f"{F} needs a simplicial operad")
    normalized = F == "S_normalized"
    complexes = {l: _simplicial_complex(P, l, normalized, window) for l in range(1, max_arity + 1)}

    def compose(x, ys):
        seqs = [x[1]] + [y[1] for y in ys]
        dims = tuple(len(s) - 1 for s in seqs)
        ms = [P.arity(y[0]) for y in ys]
        order = P.compose_order(x[0], [y[0] for y in ys], ms)
        gaps = P.gap_order(x[0], ms)
        out = {}
        for word, sign in multishuffles(dims):
            idx = [0] * len(seqs)
            pts = [tuple(s[0] for s in seqs)]
            for letter in word:
                idx[letter] += 1
                pts.append(tuple(seqs[k][idx[k]] for k in range(len(seqs))))
            new = tuple(tuple(pt[s][i] for s, i in gaps) for pt in pts)
            if normalized and any(a == b for a, b in zip(new, new[1:])):
                continue
            _add(out, (order, new), sign)
        return out

    def act(x, rho):
        return {(perm_compose(x[0], rho) if P.ordered else x[0], x[1]): 1}

    return DgOperad(complexes, compose, act, {(P.unit()[0], ((),)): 1}, lambda x: len(x[1]) - 1,
                    name=f"{F}({P.name})", window=window)


def _induce_cubical(P: CubicalGapOperad, window: int, max_arity: int) -> DgOperad:
    gap = P._gap
    complexes = {}
    for l in range(1, max_arity + 1):
        basis = {n: P.cubes(l, n) for n in range(0, window + 2)}
        complexes[l] = complex_from_sparse(basis, _cube_boundary, exact_top=window)

    def compose(x, ys):
        ms = [len(y[0]) for y in ys]
        order = gap.compose_order(x[0], [y[0] for y in ys], ms)
        src = [x[1]] + [y[1] for y in ys]
        gaps = gap.gap_order(x[0], ms)
        flat_pos = {}
        k = 0
        for s, c in enumerate(src):  # κ: concatenated coordinates in source order
            for i in range(len(c)):
                flat_pos[(s, i)] = k
                k += 1
        cube = tuple(src[s][i] for s, i in gaps)
        free_src = [flat_pos[g] for g in gaps if src[g[0]][g[1]] == "*"]
        # sign of listing free coordinates in their new order (C^ord identification)
        inv = sum(1 for a in range(len(free_src)) for b in range(a + 1, len(free_src)) if free_src[a] > free_src[b])
        return {(order, cube): -1 if inv % 2 else 1}

    def act(x, rho):
        return {(perm_compose(x[0], rho), x[1]): 1}

    return DgOperad(complexes, compose, act, {((0,), ()): 1}, lambda x: sum(v == "*" for v in x[1]),
                    name=f"C_ord({P.name})", window=window)


# ---------------------------------------------------------------------------
# morphisms


class OperadMorphism:
    """Aritywise chain maps; ``label_map(x)`` gives the image of a basis label as a dict."""

    def __init__(self, source: DgOperad, target: DgOperad, label_map, max_arity: int | None = None):
        self.source, self.target, self.label_map = source, target, label_map
        top = max_arity or min(source.max_arity, target.max_arity)
        self.maps = {}
        for l in range(1, top + 1):
            S, T = source.complexes[l], target.complexes[l]
            comps = {}
            for n in S.degrees():
                index = {x: i for i, x in enumerate(T.labels.get(n, []))}
                entries = {}
                for j, x in enumerate(S.labels.get(n, [])):
                    for y, c in label_map(x).items():
                        if y not in index:
                            raise NotOperadMorphism(f"image {y!r} of {x!r} not in arity {l}, degree {n}")
                        entries[(index[y], j)] = entries.get((index[y], j), 0) + c
                comps[n] = Matrix.from_entries(T.rank(n), S.rank(n), entries)
            self.maps[l] = ChainMap(S, T, comps, check=False)

    def apply(self, xs: dict) -> dict:
        out = {}
        for x, a in xs.items():
            for y, c in self.label_map(x).items():
                _add(out, y, a * c)
        return out

    @classmethod
    def identity(cls, O: DgOperad) -> "OperadMorphism":
        return cls(O, O, lambda x: {x: 1})


def check_operad_morphism(f: OperadMorphism, max_arity: int = 3, max_total: int = 4,
                          window: int | None = None) -> None:
    """Chain maps commuting with γ, the Σ-action and η; raises NotOperadMorphism."""
    S, T = f.source, f.target
    w = S.window if window is None else window
    for l, m in f.maps.items():
        if not m.is_chain_map(w):
            raise NotOperadMorphism(f"arity {l} component is not a chain map")
    if f.apply(S.unit) != T.unit:
        raise NotOperadMorphism("unit not preserved")
    basis = {l: S.basis(l, w) for l in S.complexes}
    for l in range(1, max_total + 1):
        for x in basis[l]:
            for rho in itertools.permutations(range(l)):
                if f.apply(S.act(x, rho)) != T.act_lin(f.apply({x: 1}), rho):
                    raise NotOperadMorphism(f"action not preserved in arity {l}")
    for l, ms in _shapes(max_arity, max_total):
        for x in basis[l]:
            for ys in itertools.product(*[basis[m] for m in ms]):
                if w is not None and S.degree(x) + sum(S.degree(y) for y in ys) > w:
                    continue
                lhs = f.apply(S.compose(x, list(ys)))
                rhs = T.compose_lin(f.apply({x: 1}), [f.apply({y: 1}) for y in ys])
                if lhs != rhs:
                    raise NotOperadMorphism(f"γ not preserved at arity {l}, m={ms}")


def check_operad_quasi_iso(f: OperadMorphism, window: int | None = None, verify: bool = True) -> bool:
    """True iff every arity component is a quasi-isomorphism through the window."""
    w = f.source.window if window is None else window
    if verify:
        check_operad_morphism(f, window=w)
    for m in f.maps.values():
        hi = min(w, m.source.exact_top, m.target.exact_top)
        if not is_weak_equivalence(m, WeakEquivalencePolicy.QUASI_ISOMORPHISM, window=hi):
            return False
    return True


def normalization_morphism(P: GapOperad, window: int = 3) -> OperadMorphism:
    """S(P) -> S_normalized(P): degenerate simplices go to zero."""
    S, N = induce_operad("S", P, window), induce_operad("S_normalized", P, window)
    fn = lambda x: {} if any(a == b for a, b in zip(x[1], x[1][1:])) else {x: 1}
    return OperadMorphism(S, N, fn)


def collapse_morphism(P: GapOperad, window: int = 3) -> OperadMorphism:
    """S_normalized(P_K) -> S_normalized(Ass) induced by K -> point."""
    S, A = induce_operad("S_normalized", P, window), induce_operad("S_normalized", ass(), window)
    fn = lambda x: {(x[0], ((),)): 1} if len(x[1]) == 1 else {}
    return OperadMorphism(S, A, fn)


# ---------------------------------------------------------------------------
# endomorphism operad


def endomorphism_operad(V: ChainComplex, max_arity: int = 4, window: int | None = None) -> DgOperad:
    """E[V](l) = Hom(V^{⊗l}, V); basis e_{b,t} sends the basis tensor t to b."""
    if not V.bounded:
        raise ValueError("E[V] needs a bounded complex")
    vb = [(n, i) for n in V.degrees() for i in range(V.rank(n))]
    dv = lambda v: v[0]
    complexes = {}

    def hom_degree(x):
        b, t = x
        return dv(b) - sum(dv(u) for u in t)

    def apply_d(v) -> dict:
        n, i = v
        if n - 1 < V.lower_bound:
            return {}
        col = V.d(n).column(i)
        return {(n - 1, r): c for r, c in enumerate(col) if c}

    def tensor_d(t) -> dict:
        out, sgn = {}, 0
        for k, u in enumerate(t):
            for w, c in apply_d(u).items():
                _add(out, t[:k] + (w,) + t[k + 1:], (-1 if sgn % 2 else 1) * c)
            sgn += dv(u)
        return out

    def hom_d(x) -> dict:
        # D f = d∘f - (-1)^{|f|} f∘d
        b, t = x
        out = {}
        for w, c in apply_d(b).items():
            _add(out, (w, t), c)
        s = -1 if hom_degree(x) % 2 else 1
        for t2 in itertools.product(vb, repeat=len(t)):
            c = tensor_d(t2).get(t, 0)
            if c:
                _add(out, (b, t2), -s * c)
        return out

    for l in range(1, max_arity + 1):
        labels = [(b, t) for t in itertools.product(vb, repeat=l) for b in vb]
        degs = sorted({hom_degree(x) for x in labels})
        basis = {n: sorted((x for x in labels if hom_degree(x) == n), key=repr) for n in range(degs[0], degs[-1] + 1)}
        complexes[l] = complex_from_sparse(basis, hom_d)

    def compose(x, ys):
        b, t = x
        if tuple(y[0] for y in ys) != t:
            return {}
        sgn = 0
        for i, y in enumerate(ys):
            for j in range(i):
                sgn += hom_degree(y) * sum(dv(u) for u in ys[j][1])
        return {(b, tuple(u for y in ys for u in y[1])): -1 if sgn % 2 else 1}

    def act(x, rho):
        b, t = x
        s = tuple(t[r] for r in rho)  # x_i = t_{ρ(i)}
        order = list(perm_inverse(rho))
        return {(b, s): koszul_sign(order, [dv(u) for u in s])}

    unit = {(v, (v,)): 1 for v in vb}
    return DgOperad(complexes, compose, act, unit, hom_degree, name="E[V]", window=window)

"""Independent reference computations used only by the tests."""

from fractions import Fraction
from itertools import combinations
from math import gcd


def snf_elementary(rows):
    """Textbook Smith form by row/column operations; returns the nonzero diagonal, normalized positive.

    Each round moves a smallest nonzero entry of the remaining block to the corner and
    divides with remainder along its row and column, until the corner divides everything.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), j, i) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, j, i = min(entries)
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        p = a[t][t]
        for i in range(t + 1, m):
            q = a[i][t] // p
            a[i] = [x - q * y for x, y in zip(a[i], a[t])]
        for j in range(t + 1, n):
            q = a[t][j] // p
            for r in a:
                r[j] -= q * r[t]
        if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
            continue  # a smaller remainder appeared: new round at the same corner
        bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
        if bad is not None:
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            continue
        t += 1
    return [abs(a[i][i]) for i in range(min(m, n)) if a[i][i]]


def det(rows):
    """Bareiss fraction-free determinant."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k]), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinantal_factors(rows):
    """Invariant factors from gcds of k x k minors."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    ds = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for R in combinations(range(m), k):
            for C in combinations(range(n), k):
                g = gcd(g, det([[rows[i][j] for j in C] for i in R]))
        if g == 0:
            break
        ds.append(g)
    return [ds[k] // ds[k - 1] for k in range(1, len(ds))]


def rank_q(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def homology_oracle(ranks, diffs):
    """Betti numbers and torsion of a chain complex given dense matrices d_n: C_n -> C_{n-1}."""
    out = {}
    for n, r in enumerate(ranks):
        dn = diffs.get(n)
        dn1 = diffs.get(n + 1)
        rk_out = rank_q(dn) if dn and r else 0
        fac = snf_elementary(dn1) if dn1 and r and ranks[n + 1] else []
        out[n] = (r - rk_out - len(fac), tuple(d for d in fac if d > 1))
    return out


def _unimodular_pair(rng, n, steps=6):
    """Random U and U^{-1} as products of elementary integer operations."""
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    Ui = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        # U <- E U with E = I + c e_ij; U^{-1} <- U^{-1} E^{-1}
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]
        for r in Ui:
            r[j] -= c * r[i]
    return U, Ui


def _mul(A, B, inner):
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(len(B[0]) if B else 0)]
            for i in range(len(A))]


def random_complex(rng, length=4, max_rank=3, torsion=(1, 2, 3)):
    """Chain complex with prescribed homology, in scrambled bases.

    Returns (ranks, {n: dense d_n}, {n: (betti, torsion)}).  Degree n holds
    a_n targets of d_{n+1}, h_n free homology and a_{n-1} sources of d_n.
    """
    a = [rng.randint(0, max_rank) for _ in range(length)] + [0]
    h = [rng.randint(0, 2) for _ in range(length + 1)]
    a[length - 1] = 0
    ranks = [a[n] + h[n] + (a[n - 1] if n else 0) for n in range(length + 1)]
    while ranks and ranks[-1] == 0 and len(ranks) > 1:
        ranks.pop()
    mult = {n: [rng.choice(torsion) for _ in range(a[n])] for n in range(length)}
    diffs = {}
    for n in range(1, len(ranks)):
        d = [[0] * ranks[n] for _ in range(ranks[n - 1])]
        for k in range(a[n - 1]):
            d[k][a[n] + h[n] + k] = mult[n - 1][k]
        diffs[n] = d
    Us = [_unimodular_pair(rng, r) for r in ranks]
    for n, d in diffs.items():
        if ranks[n] and ranks[n - 1]:
            U, _ = Us[n - 1]
            _, Vi = Us[n]
            diffs[n] = _mul(_mul(U, d, ranks[n - 1]), Vi, ranks[n])
    expected = {}
    for n in range(len(ranks)):
        ms = mult.get(n, [])
        diag = [[ms[i] if i == j else 0 for j in range(len(ms))] for i in range(len(ms))]
        tor = tuple(d for d in snf_elementary(diag) if d > 1) if ms else ()
        expected[n] = (h[n], tor)
    return ranks, diffs, expected

"""Exact rational and integer linear algebra.

Everything here works over Fraction or int; there is no floating point.
Matrices are tuples of row tuples unless a function says otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

Vec = tuple
Mat = tuple


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def frac_matrix(rows) -> Mat:
    return tuple(tuple(frac(x) for x in row) for row in rows)


def identity_matrix(d: int) -> Mat:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(d)) for i in range(d))


def zero_vector(d: int) -> Vec:
    return tuple(Fraction(0) for _ in range(d))


def mat_vec(a: Mat, v: Sequence) -> Vec:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_pow(a: Mat, n: int) -> Mat:
    d = len(a)
    out = identity_matrix(d)
    base = a
    while n > 0:
        if n & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        n >>= 1
    return out


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def rref(rows) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns).

    The output is the canonical basis of the row space: leading ones, zeros
    above and below each pivot, pivot columns strictly increasing.
    """
    m = [list(map(frac, row)) for row in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    out = tuple(tuple(row) for row in m[:r])
    return out, tuple(pivots)


def rational_kernel(a) -> Mat:
    """Canonical basis rows of {x : a @ x = 0}, via the rref free-variable split."""
    a = frac_matrix(a)
    if not a:
        return ()
    ncols = len(a[0])
    red, pivots = rref(a)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(tuple(v))
    return tuple(basis)


def solve_right(a, b) -> Optional[Vec]:
    """One exact solution x of a @ x = b, or None if inconsistent."""
    a = frac_matrix(a)
    b = tuple(map(frac, b))
    if not a:
        return None if any(b) else ()
    ncols = len(a[0])
    aug = tuple(row + (bv,) for row, bv in zip(a, b))
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = red[r][ncols]
    return tuple(x)


def det(a) -> Fraction:
    a = [list(row) for row in frac_matrix(a)]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        piv = None
        for r in range(c, n):
            if a[r][c] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d


def charpoly(a) -> tuple[Fraction, ...]:
    """Coefficients (c_0, ..., c_d) of det(x*I - A), monic, by Faddeev-LeVerrier."""
    a = frac_matrix(a)
    d = len(a)
    coeffs = [Fraction(0)] * (d + 1)
    coeffs[d] = Fraction(1)
    m = identity_matrix(d)
    c = Fraction(1)
    for k in range(1, d + 1):
        am = mat_mul(a, m)
        tr = sum(am[i][i] for i in range(d))
        c = -tr / k
        coeffs[d - k] = c
        m = tuple(
            tuple(am[i][j] + (c if i == j else 0) for j in range(d)) for i in range(d)
        )
    return tuple(coeffs)


def integer_kernel(a) -> list[tuple[int, ...]]:
    """Basis of the integer kernel {x in Z^n : a @ x = 0} of a rational matrix.

    Rows are scaled to integers first (kernel unchanged); the returned basis
    spans the full saturated kernel lattice, so it is also a basis of the
    kernel over any localization of Z.
    """
    a = frac_matrix(a)
    if not a:
        return []
    n = len(a[0])
    m = len(a)
    int_rows = []
    for row in a:
        den = lcm(*[x.denominator for x in row]) if row else 1
        int_rows.append([int(x * den) for x in row])
    # Work on [A^T | I]; rows whose A^T block is zeroed give kernel vectors.
    work = []
    for c in range(n):
        left = [int_rows[r][c] for r in range(m)]
        right = [1 if j == c else 0 for j in range(n)]
        work.append(left + right)
    row_at = 0
    for col in range(m):
        # Euclidean elimination on this column among rows row_at..end.
        while True:
            nz = [i for i in range(row_at, len(work)) if work[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(work[i][col]), i))
            work[row_at], work[piv] = work[piv], work[row_at]
            done = True
            pval = work[row_at][col]
            for i in range(row_at + 1, len(work)):
                if work[i][col] != 0:
                    q = work[i][col] // pval
                    work[i] = [x - q * y for x, y in zip(work[i], work[row_at])]
                    if work[i][col] != 0:
                        done = False
            if done:
                row_at += 1
                break
    return [tuple(r[m:]) for r in work[row_at:]]


def pval(x, p: int) -> Optional[int]:
    """p-adic valuation of a rational; None means +infinity (x == 0)."""
    x = frac(x)
    if x == 0:
        return None
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def pval_min(values, p: int) -> Optional[int]:
    best = None
    for x in values:
        v = pval(x, p)
        if v is not None and (best is None or v < best):
            best = v
    return best


def _reduce_mod_p_power(x: Fraction, a: int, p: int) -> tuple[Fraction, Fraction]:
    """Split x = r + q * p**a with q in Z_(p) and r a canonical residue.

    For v_p(x) >= a the residue is 0.  Otherwise r = p**v * (unit mod p**(a-v))
    with v = v_p(x), which is the canonical transversal of p**a Z_(p).
    """
    v = pval(x, p)
    if v is None:
        return Fraction(0), Fraction(0)
    pa = Fraction(p) ** a
    if v >= a:
        return Fraction(0), x / pa
    unit = x / Fraction(p) ** v
    mod = p ** (a - v)
    num = unit.numerator % mod
    deninv = pow(unit.denominator % mod, -1, mod)
    r = Fraction((num * deninv) % mod) * Fraction(p) ** v
    q = (x - r) / pa
    return r, q


def zp_column_hnf(cols, d: int, p: int) -> tuple[Mat, tuple[tuple[int, int], ...]]:
    """Canonical column Hermite form of a Z_(p)-module spanned by ``cols``.

    Returns (columns, pivots) where pivots is a tuple of (row, exponent):
    column t has entry p**a_t at row i_t, zeros above, zeros at pivot rows of
    later columns, and canonical residues mod p**a_t at pivot rows of earlier
    columns.  Two generating sets of the same module yield identical output.
    """
    work = [list(map(frac, c)) for c in cols if any(x != 0 for x in c)]
    pivots = []
    k = 0
    for i in range(d):
        cand = [j for j in range(k, len(work)) if work[j][i] != 0]
        if not cand:
            continue
        j0 = min(cand, key=lambda j: (pval(work[j][i], p), j))
        work[k], work[j0] = work[j0], work[k]
        a = pval(work[k][i], p)
        unit = work[k][i] / Fraction(p) ** a
        work[k] = [x / unit for x in work[k]]
        for j in range(k + 1, len(work)):
            if work[j][i] != 0:
                q = work[j][i] / (Fraction(p) ** a)
                work[j] = [x - q * y for x, y in zip(work[j], work[k])]
        pivots.append((i, a))
        k += 1
    work = work[:k]
    for t in range(len(pivots)):
        it, at = pivots[t]
        for s in range(t):
            x = work[s][it]
            if x != 0:
                r, q = _reduce_mod_p_power(x, at, p)
                if q != 0:
                    work[s] = [u - q * v for u, v in zip(work[s], work[t])]
    return tuple(tuple(c) for c in work), tuple(pivots)

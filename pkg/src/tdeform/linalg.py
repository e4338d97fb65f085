"""Exact linear algebra over Q and Z.

Small dense routines only.  The polyhedral kernel works at desk scale
(ambient rank at most five after homogenization), so clarity and exactness
win over asymptotics everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def dot(a, b):
    if len(a) != len(b):
        raise ValueError("vector length mismatch")
    return sum(x * y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(c, a):
    return tuple(c * x for x in a)


def vzero(n):
    return (0,) * n


def unit(i, n):
    return tuple(1 if j == i else 0 for j in range(n))


def as_fractions(v):
    return tuple(Fraction(x) for x in v)


def is_integral(v):
    return all(Fraction(x).denominator == 1 for x in v)


def as_ints(v):
    fr = as_fractions(v)
    if not all(x.denominator == 1 for x in fr):
        raise ValueError(f"vector {v} is not integral")
    return tuple(int(x) for x in fr)


def primitive(v):
    """Primitive integer vector with the same direction as the rational vector v."""
    if all(type(x) is int for x in v):
        ints = v
        if not any(ints):
            return tuple(ints)
    else:
        fr = as_fractions(v)
        if all(x == 0 for x in fr):
            return (0,) * len(fr)
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 1:
        return tuple(ints)
    return tuple(x // g for x in ints)


def is_primitive(v):
    try:
        iv = as_ints(v)
    except ValueError:
        return False
    return any(iv) and primitive(iv) == iv


def rref(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns).

    The result depends only on the row space, which makes every basis
    derived from it canonical.
    """
    m = [list(as_fractions(r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows):
    return len(rref(rows)[0]) if rows else 0


def row_basis(rows):
    """Canonical primitive integer basis of the rational row space."""
    rr, _ = rref(rows)
    return [primitive(r) for r in rr]


def kernel_basis(rows, n):
    """Canonical primitive integer basis of {x in Q^n : rows . x = 0}."""
    if not rows:
        return [unit(i, n) for i in range(n)]
    rr, pivots = rref(rows)
    basis = []
    for f in range(n):
        if f in pivots:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rr[i][f]
        basis.append(primitive(v))
    return basis


def solve_left(basis_rows, v):
    """Coordinates x with sum_k x_k * basis_rows[k] = v, or None if unsolvable."""
    k = len(basis_rows)
    n = len(v)
    if k == 0:
        return () if all(Fraction(x) == 0 for x in v) else None
    aug = [[Fraction(basis_rows[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    rr, pivots = rref(aug)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for i, p in enumerate(pivots):
        x[p] = rr[i][k]
    check = tuple(sum(x[j] * Fraction(basis_rows[j][i]) for j in range(k)) for i in range(n))
    if check != as_fractions(v):
        return None
    return tuple(x)


def det_int(rows):
    """Determinant of a small square integer matrix (Laplace expansion)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for i in range(n):
        if rows[i][0] == 0:
            continue
        minor = [r[1:] for j, r in enumerate(rows) if j != i]
        total += (-1) ** i * rows[i][0] * det_int(minor)
    return total


def cross_kernel(rows, d):
    """Kernel vector of a (d-1) x d integer matrix via cofactors.

    Returns the zero vector exactly when the rows have rank below d-1.
    """
    v = []
    for k in range(d):
        minor = [[r[j] for j in range(d) if j != k] for r in rows]
        v.append((-1) ** k * det_int(minor))
    return tuple(v)


def max_minor_gcd(rows):
    """gcd of all maximal minors of an integer matrix with #rows <= #cols."""
    from itertools import combinations

    k = len(rows)
    if k == 0:
        return 1
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), k):
        sub = [[r[c] for c in cols] for r in rows]
        g = gcd(g, abs(det_int(sub)))
    return g


def xgcd(a, b):
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def solve_pairing_one(R):
    """Deterministic integer z with <z, R> = 1 for primitive R.

    Candidates are the signed unit vectors hitting a +-1 coordinate plus the
    accumulated extended-gcd solution; the candidate with the smallest max
    norm (ties broken lexicographically) wins.
    """
    R = as_ints(R)
    n = len(R)
    cands = []
    for i, c in enumerate(R):
        if c == 1:
            cands.append(unit(i, n))
        elif c == -1:
            cands.append(vneg(unit(i, n)))
    g = 0
    coeff = [0] * n
    for i, c in enumerate(R):
        if c == 0:
            continue
        if g == 0:
            g = abs(c)
            coeff = [0] * n
            coeff[i] = 1 if c > 0 else -1
            continue
        g2, x, y = xgcd(g, c)
        coeff = [x * t for t in coeff]
        coeff[i] += y
        g = g2
    if g == 1:
        cands.append(tuple(coeff))
    if not cands:
        raise ValueError(f"{R} is not primitive")
    return min(cands, key=lambda z: (max(abs(t) for t in z), z))


def hnf_rows(rows):
    """Canonical basis of the integer row lattice (row-style Hermite form).

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    The output depends only on the lattice spanned by the input rows.
    """
    m = [list(as_ints(r)) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    row = 0
    for col in range(ncols):
        # eliminate column entries below the working row via gcd steps
        while True:
            nz = [i for i in range(row, len(m)) if m[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][col]))
            m[row], m[piv] = m[piv], m[row]
            done = True
            for i in range(row + 1, len(m)):
                if m[i][col] != 0:
                    q = m[i][col] // m[row][col]
                    m[i] = [a - q * b for a, b in zip(m[i], m[row])]
                    if m[i][col] != 0:
                        done = False
            if done:
                break
        if row < len(m) and m[row][col] != 0:
            if m[row][col] < 0:
                m[row] = [-a for a in m[row]]
            for i in range(row):
                q = m[i][col] // m[row][col]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[row])]
            row += 1
            if row == len(m):
                break
    return [tuple(r) for r in m[:row] if any(r)]


def kernel_lattice_basis(R, z=None):
    """Canonical lattice basis of {v in Z^n : <v, R> = 0} for primitive R."""
    R = as_ints(R)
    n = len(R)
    if z is None:
        z = solve_pairing_one(R)
    rows = []
    for i in range(n):
        e = unit(i, n)
        rows.append(vsub(e, vscale(R[i], z)))
    return hnf_rows(rows)


def matrix_rank_fraction(rows):
    """Rank of a list of Fraction tuples (used for cocycle span computations)."""
    work = [list(r) for r in rows if any(x != 0 for x in r)]
    r = 0
    if not work:
        return 0
    ncols = len(work[0])
    for c in range(ncols):
        pr = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r

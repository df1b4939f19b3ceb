"""Exact dense linear algebra over Z and Q.

Matrices are plain lists of rows.  Rational input is cleared row by row to
integers and then handled with fraction-free (Bareiss / content-reduced)
elimination, so intermediate entries stay integral.
"""
from fractions import Fraction
from math import gcd, lcm


def as_fraction(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def integer_row(row):
    """Scale a rational row by the lcm of its denominators."""
    row = [as_fraction(x) for x in row]
    den = 1
    for x in row:
        den = lcm(den, x.denominator)
    return [int(x * den) for x in row]


def primitive(vec):
    """Divide an integer vector by its content; first nonzero entry made positive."""
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g == 0:
        return list(vec)
    out = [x // g for x in vec]
    for x in out:
        if x:
            if x < 0:
                out = [-y for y in out]
            break
    return out


def det(matrix):
    """Determinant by Bareiss elimination; exact for integer or rational entries."""
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(r) != n for r in matrix):
        raise ValueError("det needs a square matrix")
    scale = Fraction(1)
    a = []
    for r in matrix:
        fr = [as_fraction(x) for x in r]
        den = 1
        for x in fr:
            den = lcm(den, x.denominator)
        scale /= den
        a.append([int(x * den) for x in fr])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    result = sign * a[n - 1][n - 1] * scale
    return result if result.denominator != 1 else Fraction(result.numerator)


def echelon(matrix):
    """Fraction-free reduced echelon form.

    Returns ``(rows, pivots)`` where ``rows`` are integer rows (one per pivot)
    and every pivot column is zero outside its own row.
    """
    rows = [integer_row(r) for r in matrix]
    rows = [r for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f, g = piv[c], rows[i][c]
                new = [f * x - g * y for x, y in zip(rows[i], piv)]
                rows[i] = primitive_keep_sign(new)
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def primitive_keep_sign(vec):
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g <= 1:
        return vec
    return [x // g for x in vec]


def rank(matrix):
    return len(echelon(matrix)[1])


def nullspace(matrix, ncols=None):
    """Basis of the rational kernel {x : matrix @ x = 0} as primitive integer vectors.

    ``ncols`` is required when ``matrix`` has no rows.
    """
    if ncols is None:
        ncols = len(matrix[0])
    rows, pivots = echelon(matrix) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            vec[pc] = Fraction(-row[f], row[pc])
        basis.append(primitive(integer_row(vec)))
    return basis


def inverse(matrix):
    """Rational inverse by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(matrix)
    a = [[as_fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(matrix)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def integer_kernel(matrix, ncols=None):
    """Z-basis of {x in Z^n : matrix @ x = 0} for an integer matrix.

    Unimodular column operations reduce each row to a single nonzero pivot
    column; the transformation columns whose image vanishes span the kernel.
    """
    if ncols is None:
        ncols = len(matrix[0])
    a = [list(r) for r in matrix]
    # columns of u track the unimodular transform
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    cols = list(range(ncols))  # still-unreduced columns

    def colop(j, k, p, q, r, s):
        # (col_j, col_k) <- (p*col_j + q*col_k, r*col_j + s*col_k)
        for m in (a, u):
            for row in m:
                x, y = row[j], row[k]
                row[j], row[k] = p * x + q * y, r * x + s * y

    for row_idx in range(len(a)):
        live = [c for c in cols if a[row_idx][c] != 0]
        if not live:
            continue
        piv = live[0]
        for c in live[1:]:
            x, y = a[row_idx][piv], a[row_idx][c]
            if y == 0:
                continue
            g, s, t = xgcd(x, y)
            # [s t; -y/g x/g] has determinant 1
            colop(piv, c, s, t, -y // g, x // g)
        cols.remove(piv)
    return [[u[i][c] for i in range(ncols)] for c in cols]

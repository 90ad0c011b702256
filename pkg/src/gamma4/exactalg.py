"""Exact integer and rational linear algebra on small dense matrices.

Everything here is exact: matrices are plain nested lists of Python ints
(arbitrary precision) or ``fractions.Fraction``.  No floating point is used
anywhere; the downstream obstructions are number-theoretic and a single
rounding error would silently flip a verdict.

The sizes that actually occur (Goeritz matrices of 11-crossing diagrams)
are at most about 13x13, so the classical cubic algorithms below are more
than fast enough and were chosen for auditability rather than speed.
"""

from dataclasses import dataclass
from fractions import Fraction

IntMatrix = list  # list[list[int]], rectangular
RationalMatrix = list  # list[list[Fraction]], rectangular


def xgcd(a, b):
    """Extended gcd: returns (g, x, y) with g = gcd(a,b) = x*a + y*b, g >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def copy_matrix(m):
    return [list(row) for row in m]


def dimensions(m):
    """(rows, cols) of a rectangular matrix; raises on ragged input."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(row) != cols for row in m):
        raise ValueError("ragged matrix")
    return rows, cols


def require_square(m):
    rows, cols = dimensions(m)
    if rows != cols:
        raise ValueError(f"square matrix required, got {rows}x{cols}")
    return rows


def is_symmetric(m):
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def mat_mul(a, b):
    ra, ca = dimensions(a)
    rb, cb = dimensions(b)
    if ca != rb:
        raise ValueError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    return [[sum(a[i][k] * b[k][j] for k in range(ca)) for j in range(cb)]
            for i in range(ra)]


def mat_transpose(m):
    rows, cols = dimensions(m)
    return [[m[i][j] for i in range(rows)] for j in range(cols)]


def det(m):
    """Exact determinant by fraction-free (Bareiss) elimination.

    The determinant of the empty 0x0 matrix is 1 (empty product), which is
    what the unknot's empty Goeritz matrix needs.
    """
    n = require_square(m)
    if n == 0:
        return 1
    a = copy_matrix(m)
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
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss: every division here is exact over the integers.
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(m):
    """Exact rational inverse via Gauss-Jordan over Fraction.

    Raises ValueError on a singular matrix.
    """
    n = require_square(m)
    a = [[Fraction(x) for x in row] for row in m]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            raise ValueError("singular matrix has no inverse")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        inv[col], inv[pivot_row] = inv[pivot_row], inv[col]
        pivot = a[col][col]
        a[col] = [x / pivot for x in a[col]]
        inv[col] = [x / pivot for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


@dataclass
class SNFResult:
    """U * A * V = D with U, V unimodular and D = diag(d1 | d2 | ...) >= 0."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self):
        n = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(n)]

    @property
    def invariant_factors(self):
        """Diagonal entries > 1, i.e. the torsion invariant factors."""
        return [d for d in self.diagonal if d > 1]


def smith_normal_form(m):
    """Smith normal form with unimodular transforms.

    Row and column operations are mirrored into U and V so that
    U*m*V = D exactly.  Pivots are chosen by smallest nonzero absolute
    value, which keeps coefficient growth tame at the sizes we meet.
    """
    rows, cols = dimensions(m)
    d = copy_matrix(m)
    u = identity(rows)
    v = identity(cols)

    def row_op(i1, i2, q):
        # row i2 -= q * row i1
        d[i2] = [x - q * y for x, y in zip(d[i2], d[i1])]
        u[i2] = [x - q * y for x, y in zip(u[i2], u[i1])]

    def col_op(j1, j2, q):
        for row in d:
            row[j2] -= q * row[j1]
        for row in v:
            row[j2] -= q * row[j1]

    def row_swap(i1, i2):
        d[i1], d[i2] = d[i2], d[i1]
        u[i1], u[i2] = u[i2], u[i1]

    def col_swap(j1, j2):
        for row in d:
            row[j1], row[j2] = row[j2], row[j1]
        for row in v:
            row[j1], row[j2] = row[j2], row[j1]

    def row_negate(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    def generalized_row_op(i1, i2, x, y, z, w):
        # (row i1, row i2) <- (x*row i1 + y*row i2, z*row i1 + w*row i2);
        # unimodular as long as x*w - y*z = +-1.
        d[i1], d[i2] = ([x * p + y * q for p, q in zip(d[i1], d[i2])],
                        [z * p + w * q for p, q in zip(d[i1], d[i2])])
        u[i1], u[i2] = ([x * p + y * q for p, q in zip(u[i1], u[i2])],
                        [z * p + w * q for p, q in zip(u[i1], u[i2])])

    def smallest_pivot(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(rows, cols):
        if smallest_pivot(t) is None:
            break
        # Re-selecting the globally smallest entry as pivot on every pass
        # keeps coefficient growth tame; leftover division remainders feed
        # the next pass instead of being chased with swaps, which is what
        # makes the naive algorithm blow up.
        while True:
            i0, j0 = smallest_pivot(t)
            row_swap(t, i0)
            col_swap(t, j0)
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t] != 0:
                    row_op(t, i, d[i][t] // d[t][t])
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, cols):
                if d[t][j] != 0:
                    col_op(t, j, d[t][j] // d[t][t])
                    dirty = dirty or d[t][j] != 0
            if not dirty:
                break
        t += 1

    rank = t
    for i in range(rank):
        if d[i][i] < 0:
            row_negate(i)

    # Enforce the divisibility chain d1 | d2 | ... by replacing an offending
    # adjacent pair (a, b) with (gcd, lcm); re-scan until stable.
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            a, b = d[i][i], d[i + 1][i + 1]
            if b % a != 0:
                changed = True
                col_op(i + 1, i, -1)  # col i += col i+1: block [[a,0],[b,b]]
                g, x, y = xgcd(a, b)
                generalized_row_op(i, i + 1, x, y, -(b // g), a // g)
                # block is now [[g, y*b], [0, a*b/g]]; y*b is divisible by g
                col_op(i, i + 1, d[i][i + 1] // g)
                if d[i + 1][i + 1] < 0:
                    row_negate(i + 1)
    return SNFResult(U=u, D=d, V=v)


def is_unimodular(m):
    try:
        n = require_square(m)
    except ValueError:
        return False
    _ = n
    return abs(det(m)) == 1


def signature(m):
    """Signature (#positive - #negative eigenvalues) of a symmetric integer
    matrix, computed exactly by rational congruence diagonalization.

    Simultaneous row/column operations preserve the congruence class, so
    after diagonalization the diagonal sign count is the signature
    (Sylvester's law of inertia).  When every remaining diagonal pivot is
    zero, an off-diagonal entry is folded onto the diagonal (row/col
    addition), which is the 2x2 hyperbolic-block step in disguise.

    Requires a nonsingular symmetric matrix; 0x0 input has signature 0.
    """
    n = require_square(m)
    if not is_symmetric(m):
        raise ValueError("signature requires a symmetric matrix")
    if n == 0:
        return 0
    a = [[Fraction(x) for x in row] for row in m]

    def add_row_col(src, dst, f=1):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        for row in a:
            row[dst] += f * row[src]

    pos = neg = 0
    for i in range(n):
        if a[i][i] == 0:
            swap = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if swap is not None:
                a[i], a[swap] = a[swap], a[i]
                for row in a:
                    row[i], row[swap] = row[swap], row[i]
            else:
                j = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if j is None:
                    raise ValueError("signature requires a nonsingular matrix")
                add_row_col(j, i)  # a[i][i] becomes 2*a[i][j] != 0
        pivot = a[i][i]
        for r in range(i + 1, n):
            if a[r][i] != 0:
                add_row_col(i, r, -a[r][i] / pivot)
        if pivot > 0:
            pos += 1
        else:
            neg += 1
    sig = pos - neg
    # Parity cross-check: pos + neg = n for a nonsingular form.
    if (sig - n) % 2 != 0:
        raise AssertionError("signature parity violated; elimination bug")
    return sig

"""Integer lattice helpers: vectors and matrices as nested tuples of ints."""
from fractions import Fraction
from math import gcd

Vec = tuple
Mat = tuple


def identity(r: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def pair(x: Vec, y: Vec) -> int:
    return sum(a * b for a, b in zip(x, y))


def mat_vec(m: Mat, x: Vec) -> Vec:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


def vadd(x: Vec, y: Vec) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Vec, y: Vec) -> Vec:
    return tuple(a - b for a, b in zip(x, y))


def vscale(k, x: Vec) -> Vec:
    return tuple(k * a for a in x)


def det(m: Mat) -> int:
    """Exact determinant by fraction elimination."""
    n = len(m)
    a = [[Fraction(v) for v in row] for row in m]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        result *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return int(sign * result)


def rational_inverse(m: Mat) -> list:
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [v / piv for v in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def int_inverse(m: Mat) -> Mat:
    inv = rational_inverse(m)
    if any(v.denominator != 1 for row in inv for v in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(v) for v in row) for row in inv)


def content(x: Vec) -> int:
    g = 0
    for a in x:
        g = gcd(g, a)
    return g


def lex_positive(x: Vec) -> bool:
    for a in x:
        if a:
            return a > 0
    return False


def solve_rational(rows: list, rhs: list):
    """Solve rows * z = rhs over Q; free variables set to 0. None if inconsistent."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    a = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [v / pv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    if any(a[i][n] != 0 for i in range(r, m)):
        return None
    z = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        z[c] = a[i][n]
    return z


def rational_rank(rows: list) -> int:
    if not rows:
        return 0
    return len([1 for _ in _pivots(rows)])


def _pivots(rows):
    a = [[Fraction(v) for v in row] for row in rows]
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, m):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        yield c
        r += 1

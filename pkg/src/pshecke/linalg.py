"""Exact dense linear algebra over the rational-function field Q(zeta)(v^(1/D)).

Matrices are lists of rows of ``VRational``.  Sizes here stay below 50, so plain
Gauss-Jordan elimination is adequate.
"""
from fractions import Fraction

from .exact_rings import VLaurent, VRational, Cyclo


def lift(x, one: VRational) -> VRational:
    if isinstance(x, VRational):
        return x
    if isinstance(x, VLaurent):
        return VRational(x, one.den)
    return VRational(one.num._coerce(x), one.den)


def one_of(n: int, d: int) -> VRational:
    c = VLaurent.const(1, n, d)
    return VRational(c, c)


def zero_of(one: VRational) -> VRational:
    return VRational(one.num.zero(), one.den)


def eye(k: int, one: VRational):
    z = zero_of(one)
    return [[one if i == j else z for j in range(k)] for i in range(k)]


def zeros(r: int, c: int, one: VRational):
    z = zero_of(one)
    return [[z] * c for _ in range(r)]


def mmul(a, b):
    if not a:
        return []
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        nr = []
        for j in range(cols):
            s = None
            for k, x in enumerate(row):
                if x.num.t:
                    y = b[k][j]
                    if y.num.t:
                        p = x * y
                        s = p if s is None else s + p
            nr.append(s if s is not None else zero_of(row[0]))
        out.append(nr)
    return out


def madd(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def msub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mscale(a, c):
    return [[x * c for x in r] for r in a]


def meq(a, b) -> bool:
    return all(x == y for r, s in zip(a, b) for x, y in zip(r, s))


def is_zero(a) -> bool:
    return all(not x.num.t for r in a for x in r)


def transpose(a):
    return [list(r) for r in zip(*a)]


def rref(a):
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    piv = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c].num.t), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv if x.num.t else x for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c].num.t:
                f = m[i][c]
                m[i] = [x - f * y if y.num.t else x for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
        if r == rows:
            break
    return m, piv


def rank(a) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def nullspace(a, ncols: int = None, one: VRational = None):
    """Basis (list of column vectors) of {x : a x = 0}."""
    if not a:
        return [[one if i == j else zero_of(one) for i in range(ncols)] for j in range(ncols)]
    m, piv = rref(a)
    cols = len(a[0])
    one = _one_like(a[0][0])
    z = zero_of(one)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        vec = [z] * cols
        vec[f] = one
        for i, c in enumerate(piv):
            vec[c] = -m[i][f]
        basis.append(vec)
    return basis


def _one_like(x: VRational) -> VRational:
    c = x.num.one()
    return VRational(c, c)


def inverse(a):
    k = len(a)
    one = _one_like(a[0][0])
    aug = [list(r) + e for r, e in zip(a, eye(k, one))]
    m, piv = rref(aug)
    if piv[:k] != list(range(k)):
        raise ZeroDivisionError("singular matrix")
    return [r[k:] for r in m]


def mvec(a, x):
    out = []
    for row in a:
        s = zero_of(row[0])
        for y, z in zip(row, x):
            if y.num.t and z.num.t:
                s = s + y * z
        out.append(s)
    return out


def columns_to_matrix(cols):
    return [list(r) for r in zip(*cols)]


def restrict(a, basis_cols):
    """Matrix of a on the invariant subspace spanned by the columns."""
    b = columns_to_matrix(basis_cols)
    ab = mmul(a, b)
    # left inverse via pivot rows of b
    bt = transpose(b)
    _, piv_rows = rref(bt)
    sub_b = [b[i] for i in piv_rows]
    sub_ab = [ab[i] for i in piv_rows]
    return mmul(inverse(sub_b), sub_ab)


def quotient_action(a, sub_cols, n: int):
    """Matrix of a on V / span(sub_cols), using standard basis vectors as complement."""
    one = _one_like(a[0][0])
    z = zero_of(one)
    basis = list(sub_cols)
    comp = []
    for i in range(n):
        e = [one if j == i else z for j in range(n)]
        trial = basis + [e]
        if rank(transpose(columns_to_matrix(trial))) == len(trial):
            basis = trial
            comp.append(e)
    full = columns_to_matrix(basis)
    coords = mmul(inverse(full), mmul(a, columns_to_matrix(comp)))
    k = len(sub_cols)
    return [r for r in coords[k:]], comp


def charpoly(a):
    """Coefficients c_0..c_n (low to high) of det(X - a), by Faddeev-LeVerrier."""
    n = len(a)
    one = _one_like(a[0][0])
    coeffs = [None] * (n + 1)
    coeffs[n] = one
    m = zeros(n, n, one)
    ident = eye(n, one)
    for k in range(1, n + 1):
        m = madd(mmul(a, m), mscale(ident, coeffs[n - k + 1])) if k > 1 else ident
        am = mmul(a, m)
        tr = zero_of(one)
        for i in range(n):
            tr = tr + am[i][i]
        coeffs[n - k] = tr * VRational.lift(one.num._coerce(Fraction(-1, k)))
    return coeffs


def poly_eval(coeffs, x: VRational) -> VRational:
    out = zero_of(coeffs[-1])
    for c in reversed(coeffs):
        out = out * x + c
    return out


def monomial_roots(coeffs):
    """Roots of the form zeta^a v^(k/D), with multiplicity; raises if some root is not of that form."""
    n = len(coeffs) - 1
    if n == 0:
        return []
    one = coeffs[-1]
    nn, dd = one.num.n, one.num.d
    # clear denominators
    lcm = None
    for c in coeffs:
        lcm = c.den if lcm is None else _lcm(lcm, c.den)
    polys = [(c * VRational.lift(lcm)).as_laurent() for c in coeffs]
    vals = {i: p.low() for i, p in enumerate(polys) if p.t}
    cands = set()
    items = sorted(vals.items())
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            (i, oi), (j, oj) = items[a], items[b]
            k = Fraction(oi - oj, j - i)
            if k.denominator == 1:
                cands.add(int(k))
    roots = []
    found = 0
    work = list(coeffs)
    for k in sorted(cands):
        for a in range(nn):
            r = VRational.lift(VLaurent(nn, dd, {k: Cyclo.zeta(a, nn)}))
            while len(work) > 1 and poly_eval(work, r).is_zero():
                work = _deflate(work, r)
                roots.append(r.num)
                found += 1
    if found != n:
        raise ValueError(f"characteristic polynomial has roots outside the value group ({found}/{n} found)")
    return roots


def _deflate(coeffs, r):
    """Divide by (X - r)."""
    n = len(coeffs) - 1
    out = [None] * n
    acc = coeffs[n]
    for i in range(n - 1, -1, -1):
        out[i] = acc
        acc = coeffs[i] + acc * r
    return out


def _lcm(a: VLaurent, b: VLaurent) -> VLaurent:
    if len(b.t) == 1:
        return a
    if len(a.t) == 1:
        return b
    # a/b = a'/b' in lowest terms, so lcm(a, b) = a * b' up to a unit
    return a * VRational.make(a, b).den


# ---------------------------------------------------------------- modular certificates
#
# Reduction Q(zeta_N)[v^(+-1/D)] -> F_p with p = 1 mod N, zeta -> a primitive N-th root of
# unity mod p and v^(1/D) -> w0.  Ranks can only drop under reduction, so a rank found mod p
# is a lower bound for the rank over Q(zeta)(v).

def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % q == 0:
            return m == q
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


class ModularMap:
    """Ring map to F_p; raises ZeroDivisionError when a denominator reduces to zero."""

    def __init__(self, n: int, d: int, w0: int, start: int = 10 ** 9):
        p = start - start % n + 1
        while not _is_prime(p):
            p += n
        self.p, self.n, self.d = p, n, d
        g = 2
        while True:
            z = pow(g, (p - 1) // n, p)
            if all(pow(z, n // q, p) != 1 for q in _prime_factors(n)):
                break
            g += 1
        self.z = z
        self.w0 = w0 % p
        self._zpow = [pow(z, k, p) for k in range(n)]

    def _q(self, x) -> int:
        num, den = int(x.numerator), int(x.denominator)
        if den % self.p == 0:
            raise ZeroDivisionError("denominator vanishes mod p")
        return num * pow(den, -1, self.p) % self.p

    def cyclo(self, c: Cyclo) -> int:
        return sum(self._q(a) * self._zpow[k] for k, a in enumerate(c.c)) % self.p

    def laurent(self, f: VLaurent) -> int:
        p = self.p
        return sum(self.cyclo(c) * pow(self.w0, k, p) for k, c in f.t.items()) % p

    def scalar(self, x: VRational) -> int:
        den = self.laurent(x.den)
        if den == 0:
            raise ZeroDivisionError("specialization hits a pole")
        return self.laurent(x.num) * pow(den, -1, self.p) % self.p

    def matrix(self, a):
        return [[self.scalar(x) for x in r] for r in a]


def _prime_factors(n: int):
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def mod_mmul(a, b, p: int):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) % p for c in cols] for r in a]


def mod_rank(rows, p: int) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    r = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return r


def algebra_span_dim(gens, k: int, p: int) -> int:
    """Dimension over F_p of the unital algebra generated by k x k matrices."""
    ident = [[int(i == j) for j in range(k)] for i in range(k)]
    rows, pivots = [], []

    def insert(mat):
        vec = [x for r in mat for x in r]
        for row, pc in zip(rows, pivots):
            if vec[pc]:
                f = vec[pc]
                vec = [(x - f * y) % p for x, y in zip(vec, row)]
        pc = next((i for i, x in enumerate(vec) if x), None)
        if pc is None:
            return False
        inv = pow(vec[pc], -1, p)
        rows.append([x * inv % p for x in vec])
        pivots.append(pc)
        return True

    insert(ident)
    frontier = [ident]
    while frontier and len(rows) < k * k:
        nxt = []
        for e in frontier:
            for g in gens:
                prod = mod_mmul(e, g, p)
                if insert(prod):
                    nxt.append(prod)
                    if len(rows) == k * k:
                        return k * k
        frontier = nxt
    return len(rows)

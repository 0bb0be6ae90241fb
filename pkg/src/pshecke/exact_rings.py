"""Exact coefficient arithmetic.

Scalars live in F = Q(zeta_N)(v^(1/D)) where v stands for q^(1/2).  The layers are

* ``Cyclo``         elements of Q(zeta_N) in the power basis mod the N-th cyclotomic polynomial,
* ``VLaurent``      Laurent polynomials in v with exponents in (1/D)Z,
* ``VRational``     the fraction field of ``VLaurent`` (lowest terms, monic denominator),
* ``TorusFunction`` Laurent polynomials in theta_x, x in Z^r, with ``VLaurent`` coefficients,
* ``TorusRational`` fractions of torus functions with a factored denominator,
* ``TorusPoint``    characters of Z^r with values zeta^a * v^b.

Everything is immutable.  Torus-rational denominators are kept as a sorted multiset of
normalized factors; binomials theta_{k y} - c are split into primitive binomials whenever
the roots of c exist in F, so denominators produced by the Hecke algebra are products of
irreducible factors and the stored form is in lowest terms.
"""
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

from . import lattice as lat

DEFAULT_N = 12
DEFAULT_D = 2


class ConfigError(ValueError):
    """Operands built with different N, D or rank."""


class PoleError(ZeroDivisionError):
    """Specialization hit a vanishing denominator."""


# ---------------------------------------------------------------- cyclotomic field

def _int_poly_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // den[-1]
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert not any(num), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _int_poly_div(p, cyclotomic_poly(d))
    return tuple(p)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple:
    """zeta^k in the power basis, k = 0..n-1."""
    phi = len(cyclotomic_poly(n)) - 1
    low = cyclotomic_poly(n)[:-1]
    vec = [mpq(int(i == 0)) for i in range(phi)]
    table = []
    for _ in range(n):
        table.append(tuple(vec))
        top = vec[-1]
        vec = [mpq(0)] + vec[:-1]
        if top:
            vec = [a - top * c for a, c in zip(vec, low)]
    return tuple(table)


@lru_cache(maxsize=None)
def _root_lookup(n: int) -> dict:
    return {v: k for k, v in enumerate(_power_table(n))}


class Cyclo:
    """Element of Q(zeta_n); ``c`` is the coefficient tuple in the power basis."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, c: tuple):
        self.n = n
        self.c = c

    @staticmethod
    def rational(q, n: int = DEFAULT_N) -> "Cyclo":
        phi = len(cyclotomic_poly(n)) - 1
        if isinstance(q, Fraction):
            q = mpq(q.numerator, q.denominator)
        return Cyclo(n, (mpq(q),) + (mpq(0),) * (phi - 1))

    @staticmethod
    def zeta(a: int, n: int = DEFAULT_N) -> "Cyclo":
        return Cyclo(n, _power_table(n)[a % n])

    def _coerce(self, o) -> "Cyclo":
        if isinstance(o, Cyclo):
            if o.n != self.n:
                raise ConfigError(f"cyclotomic orders differ: {self.n} vs {o.n}")
            return o
        return Cyclo.rational(o, self.n)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __add__(self, o):
        o = self._coerce(o)
        return Cyclo(self.n, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, tuple(-a for a in self.c))

    def __sub__(self, o):
        o = self._coerce(o)
        return Cyclo(self.n, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        a, b = self.c, o.c
        if not any(b[1:]):
            s = b[0]
            return Cyclo(self.n, tuple(x * s for x in a))
        if not any(a[1:]):
            s = a[0]
            return Cyclo(self.n, tuple(x * s for x in b))
        table = _power_table(self.n)
        out = [mpq(0)] * len(a)
        n = self.n
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, t in enumerate(table[(i + j) % n]):
                    if t:
                        out[k] += xy * t
        return Cyclo(self.n, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        if self.is_rational():
            return Cyclo(self.n, (1 / self.c[0],) + self.c[1:])
        # columns: self * zeta^j; solve M x = e_0
        phi = len(self.c)
        cols = [(self * Cyclo.zeta(j, self.n)).c for j in range(phi)]
        a = [[cols[j][i] for j in range(phi)] + [mpq(int(i == 0))] for i in range(phi)]
        for c in range(phi):
            p = next(i for i in range(c, phi) if a[i][c])
            a[c], a[p] = a[p], a[c]
            pv = a[c][c]
            a[c] = [x / pv for x in a[c]]
            for i in range(phi):
                if i != c and a[i][c]:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return Cyclo(self.n, tuple(row[-1] for row in a))

    def __truediv__(self, o):
        return self * self._coerce(o).inverse()

    def __rtruediv__(self, o):
        return self._coerce(o) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = Cyclo.rational(1, self.n), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        if isinstance(o, Cyclo):
            return self.n == o.n and self.c == o.c
        if isinstance(o, (int, Fraction)) or type(o) is type(mpq(0)):
            return self.is_rational() and self.c[0] == o
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.n, self.c))

    def root_exponent(self):
        """a with self == zeta^a, or None."""
        return _root_lookup(self.n).get(self.c)

    def key(self):
        return tuple((x.numerator, x.denominator) for x in self.c)

    def __str__(self):
        a = self.root_exponent()
        if a is not None:
            return f"ζ^{a}"
        if self.is_rational():
            return str(self.c[0])
        parts = [f"{x}*ζ^{i}" if i else str(x) for i, x in enumerate(self.c) if x]
        return "(" + " + ".join(parts) + ")"

    __repr__ = __str__


# ---------------------------------------------------------------- univariate polynomials over Q(zeta)

def _ptrim(p):
    while p and p[-1].is_zero():
        p.pop()
    return p


def _pdivmod(a, b):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = b[-1].inverse()
    q = [None] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] = a[i + j] - c * y
    zero = b[0] - b[0]
    q = [zero if x is None else x for x in q]
    return _ptrim(q), _ptrim(a[: len(b) - 1])


def _pgcd(a, b):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    inv = a[-1].inverse()
    return [x * inv for x in a]


# ---------------------------------------------------------------- Laurent polynomials in v

def _exp_units(e, d: int) -> int:
    e = Fraction(e)
    k = e * d
    if k.denominator != 1:
        raise ConfigError(f"exponent {e} not in (1/{d})Z")
    return int(k)


class VLaurent:
    """Sum of c_k v^(k/d) with c_k in Q(zeta_n); ``t`` maps k to c_k (no zeros stored)."""

    __slots__ = ("n", "d", "t")

    def __init__(self, n: int, d: int, t: dict):
        self.n = n
        self.d = d
        self.t = t

    @staticmethod
    def const(c, n: int = DEFAULT_N, d: int = DEFAULT_D) -> "VLaurent":
        if not isinstance(c, Cyclo):
            c = Cyclo.rational(c, n)
        return VLaurent(n, d, {0: c} if c else {})

    @staticmethod
    def mono(c, e, n: int = DEFAULT_N, d: int = DEFAULT_D) -> "VLaurent":
        """c * v^e with e rational."""
        if not isinstance(c, Cyclo):
            c = Cyclo.rational(c, n)
        return VLaurent(n, d, {_exp_units(e, d): c} if c else {})

    @staticmethod
    def unit(angle, e, n: int = DEFAULT_N, d: int = DEFAULT_D) -> "VLaurent":
        """zeta^(angle*n) * v^e for angle in (1/n)Z."""
        a = Fraction(angle) * n
        if a.denominator != 1:
            raise ConfigError(f"angle {angle} not in (1/{n})Z")
        return VLaurent(n, d, {_exp_units(e, d): Cyclo.zeta(int(a), n)})

    def zero(self) -> "VLaurent":
        return VLaurent(self.n, self.d, {})

    def one(self) -> "VLaurent":
        return VLaurent.const(1, self.n, self.d)

    def _coerce(self, o):
        if isinstance(o, VLaurent):
            if o.n != self.n or o.d != self.d:
                raise ConfigError(f"coefficient settings differ: {(self.n, self.d)} vs {(o.n, o.d)}")
            return o
        if isinstance(o, (int, Fraction, Cyclo)) or type(o) is type(mpq(0)):
            return VLaurent.const(o, self.n, self.d)
        return None

    def is_zero(self) -> bool:
        return not self.t

    def __bool__(self):
        return bool(self.t)

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        if not o.t:
            return self
        if not self.t:
            return o
        t = dict(self.t)
        for k, c in o.t.items():
            s = t.get(k)
            if s is None:
                t[k] = c
            else:
                s = s + c
                if s:
                    t[k] = s
                else:
                    del t[k]
        return VLaurent(self.n, self.d, t)

    __radd__ = __add__

    def __neg__(self):
        return VLaurent(self.n, self.d, {k: -c for k, c in self.t.items()})

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        if not self.t or not o.t:
            return self.zero()
        t = {}
        for k1, c1 in self.t.items():
            for k2, c2 in o.t.items():
                k = k1 + k2
                p = c1 * c2
                s = t.get(k)
                t[k] = p if s is None else s + p
        return VLaurent(self.n, self.d, {k: c for k, c in t.items() if c})

    __rmul__ = __mul__

    def shift(self, k: int) -> "VLaurent":
        """Multiply by v^(k/d)."""
        return VLaurent(self.n, self.d, {e + k: c for e, c in self.t.items()})

    def is_unit(self) -> bool:
        return len(self.t) == 1

    def inverse(self) -> "VLaurent":
        if len(self.t) != 1:
            raise ValueError(f"{self} is not a unit of the Laurent ring")
        (k, c), = self.t.items()
        return VLaurent(self.n, self.d, {-k: c.inverse()})

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def low(self) -> int:
        return min(self.t)

    def high(self) -> int:
        return max(self.t)

    def lead(self) -> Cyclo:
        return self.t[max(self.t)]

    def _poly(self):
        lo = self.low()
        zero = Cyclo.rational(0, self.n)
        p = [zero] * (self.high() - lo + 1)
        for k, c in self.t.items():
            p[k - lo] = c
        return lo, p

    @staticmethod
    def _from_poly(p, lo, n, d):
        return VLaurent(n, d, {lo + i: c for i, c in enumerate(p) if c})

    def exact_div(self, o: "VLaurent"):
        """Quotient in the Laurent ring, or None when o does not divide self."""
        o = self._coerce(o)
        if not o.t:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self.t:
            return self
        if len(o.t) == 1:
            return self * o.inverse()
        la, pa = self._poly()
        lb, pb = o._poly()
        q, r = _pdivmod(pa, pb)
        if r:
            return None
        return VLaurent._from_poly(q, la - lb, self.n, self.d)

    def __truediv__(self, o):
        if isinstance(o, VRational):
            return VRational.make(self, self.one()) / o
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        q = self.exact_div(o)
        if q is not None:
            return q
        return VRational.make(self, o)

    def __rtruediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, o):
        if isinstance(o, VRational):
            return o == self
        oc = self._coerce(o) if not isinstance(o, VLaurent) else o
        if oc is None:
            return NotImplemented
        return self.t == oc.t

    def __hash__(self):
        if not self.t:
            return 0
        if len(self.t) == 1 and 0 in self.t:
            return hash(self.t[0])
        return hash(frozenset(self.t.items()))

    def key(self):
        return tuple(sorted((k, c.key()) for k, c in self.t.items()))

    def exponents(self):
        return sorted(Fraction(k, self.d) for k in self.t)

    def coeff(self, e) -> Cyclo:
        return self.t.get(_exp_units(e, self.d), Cyclo.rational(0, self.n))

    def substitute_v(self, value: Fraction):
        """Numeric cross-check at a rational v (only when exponents are integral and c rational)."""
        total = Fraction(0)
        for k, c in self.t.items():
            if k % self.d or not c.is_rational():
                raise ValueError("substitution needs integral exponents and rational coefficients")
            x = c.c[0]
            total += Fraction(int(x.numerator), int(x.denominator)) * Fraction(value) ** (k // self.d)
        return total

    def __str__(self):
        if not self.t:
            return "0"
        parts = []
        for k in sorted(self.t, reverse=True):
            parts.append(f"{self.t[k]}*v^({Fraction(k, self.d)})")
        return " + ".join(parts)

    __repr__ = __str__


class VRational:
    """num/den with den monic, lowest exponent of den zero, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: VLaurent, den: VLaurent):
        self.num = num
        self.den = den

    @staticmethod
    def make(num: VLaurent, den: VLaurent) -> "VRational":
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        n, d = den.n, den.d
        if num.is_zero():
            return VRational(num, den.one())
        lo = den.low()
        num, den = num.shift(-lo), den.shift(-lo)
        if len(den.t) > 1:
            ln, pn = num._poly()
            _, pd = den._poly()
            g = _pgcd(pn, pd)
            if len(g) > 1:
                pn, _ = _pdivmod(pn, g)
                pd, _ = _pdivmod(pd, g)
                num = VLaurent._from_poly(pn, ln, n, d)
                den = VLaurent._from_poly(pd, 0, n, d)
        inv = den.lead().inverse()
        return VRational(num * inv, den * inv)

    @staticmethod
    def lift(x) -> "VRational":
        if isinstance(x, VRational):
            return x
        return VRational(x, x.one())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return len(self.den.t) == 1

    def as_laurent(self) -> VLaurent:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def _co(self, o):
        if isinstance(o, VRational):
            return o
        if isinstance(o, VLaurent):
            return VRational(o, o.one())
        return VRational(self.num._coerce(o), self.den.one())

    def __add__(self, o):
        o = self._co(o)
        if self.den == o.den:
            return VRational.make(self.num + o.num, self.den)
        return VRational.make(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return VRational(-self.num, self.den)

    def __sub__(self, o):
        return self + (-self._co(o))

    def __rsub__(self, o):
        return self._co(o) + (-self)

    def __mul__(self, o):
        o = self._co(o)
        if len(self.den.t) == 1 and len(o.den.t) == 1:
            return VRational(self.num * o.num, self.den)
        return VRational.make(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "VRational":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return VRational.make(self.den, self.num)

    def __truediv__(self, o):
        return self * self._co(o).inverse()

    def __rtruediv__(self, o):
        return self._co(o) * self.inverse()

    def __eq__(self, o):
        if isinstance(o, (VRational, VLaurent)) or isinstance(o, (int, Fraction, Cyclo)):
            o = self._co(o)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


# ---------------------------------------------------------------- torus functions

class TorusFunction:
    """Sum of c_x theta_x over x in Z^r; ``t`` maps x to a nonzero VLaurent."""

    __slots__ = ("r", "n", "d", "t")

    def __init__(self, r: int, n: int, d: int, t: dict):
        self.r = r
        self.n = n
        self.d = d
        self.t = t

    @staticmethod
    def theta(x, n: int = DEFAULT_N, d: int = DEFAULT_D, coeff=None) -> "TorusFunction":
        x = tuple(int(a) for a in x)
        c = VLaurent.const(1, n, d) if coeff is None else coeff
        if not isinstance(c, VLaurent):
            c = VLaurent.const(c, n, d)
        return TorusFunction(len(x), n, d, {x: c} if c else {})

    @staticmethod
    def const(c, r: int, n: int = DEFAULT_N, d: int = DEFAULT_D) -> "TorusFunction":
        return TorusFunction.theta((0,) * r, n, d, c)

    def zero(self) -> "TorusFunction":
        return TorusFunction(self.r, self.n, self.d, {})

    def one(self) -> "TorusFunction":
        return TorusFunction.const(1, self.r, self.n, self.d)

    def _coerce(self, o):
        if isinstance(o, TorusFunction):
            if (o.r, o.n, o.d) != (self.r, self.n, self.d):
                raise ConfigError("torus functions over different rings")
            return o
        if isinstance(o, (VLaurent, int, Fraction, Cyclo)):
            return TorusFunction.const(o, self.r, self.n, self.d)
        return None

    def is_zero(self) -> bool:
        return not self.t

    def __bool__(self):
        return bool(self.t)

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        t = dict(self.t)
        for x, c in o.t.items():
            s = t.get(x)
            if s is None:
                t[x] = c
            else:
                s = s + c
                if s.t:
                    t[x] = s
                else:
                    del t[x]
        return TorusFunction(self.r, self.n, self.d, t)

    __radd__ = __add__

    def __neg__(self):
        return TorusFunction(self.r, self.n, self.d, {x: -c for x, c in self.t.items()})

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, o):
        if isinstance(o, TorusRational):
            return NotImplemented
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        t = {}
        for x, a in self.t.items():
            for y, b in o.t.items():
                z = tuple(i + j for i, j in zip(x, y))
                p = a * b
                s = t.get(z)
                t[z] = p if s is None else s + p
        return TorusFunction(self.r, self.n, self.d, {z: c for z, c in t.items() if c.t})

    __rmul__ = __mul__

    def scale(self, c: VLaurent) -> "TorusFunction":
        if not c.t:
            return self.zero()
        return TorusFunction(self.r, self.n, self.d, {x: a * c for x, a in self.t.items()})

    def shift(self, y) -> "TorusFunction":
        """Multiply by theta_y."""
        return TorusFunction(self.r, self.n, self.d,
                             {tuple(i + j for i, j in zip(x, y)): c for x, c in self.t.items()})

    def act(self, m) -> "TorusFunction":
        """theta_x -> theta_{m x}."""
        return TorusFunction(self.r, self.n, self.d, {lat.mat_vec(m, x): c for x, c in self.t.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a torus function")
        out = self.one()
        for _ in range(k):
            out = out * self
        return out

    def is_monomial(self) -> bool:
        return len(self.t) == 1

    def lead_exp(self):
        return max(self.t)

    def evaluate(self, point: "TorusPoint") -> VLaurent:
        total = VLaurent(self.n, self.d, {})
        for x, c in self.t.items():
            total = total + c * point.scalar(x)
        return total

    def exact_div(self, g: "TorusFunction"):
        """Quotient in the Laurent ring Q(zeta)[v^(+-1/D)][theta^(+-1)], or None."""
        if not g.t:
            raise ZeroDivisionError("division by zero torus function")
        if not self.t:
            return self
        if len(g.t) == 1:
            (y, c), = g.t.items()
            if not c.is_unit():
                q = {}
                for x, a in self.t.items():
                    b = a.exact_div(c)
                    if b is None:
                        return None
                    q[lat.vsub(x, y)] = b
                return TorusFunction(self.r, self.n, self.d, q)
            ci = c.inverse()
            return TorusFunction(self.r, self.n, self.d,
                                 {lat.vsub(x, y): a * ci for x, a in self.t.items()})
        r = self.r
        lo = [min(x[i] for x in self.t) - min(y[i] for y in g.t) for i in range(r)]
        hi = [max(x[i] for x in self.t) - max(y[i] for y in g.t) for i in range(r)]
        if any(a > b for a, b in zip(lo, hi)):
            return None
        gl = max(g.t)
        gc = g.t[gl]
        gci = gc.inverse() if gc.is_unit() else None
        rem = dict(self.t)
        q = {}
        while rem:
            x = max(rem)
            z = tuple(a - b for a, b in zip(x, gl))
            if any(z[i] < lo[i] or z[i] > hi[i] for i in range(r)):
                return None
            c = rem[x] * gci if gci is not None else rem[x].exact_div(gc)
            if c is None:
                return None
            q[z] = c
            for y, b in g.t.items():
                w = tuple(a + e for a, e in zip(z, y))
                s = rem.get(w)
                p = c * b
                s = -p if s is None else s - p
                if s.t:
                    rem[w] = s
                else:
                    rem.pop(w, None)
        return TorusFunction(self.r, self.n, self.d, q)

    def __eq__(self, o):
        if isinstance(o, TorusRational):
            return o == self
        oc = self._coerce(o) if not isinstance(o, TorusFunction) else o
        if oc is None:
            return NotImplemented
        return self.t == oc.t

    def __hash__(self):
        return hash(frozenset(self.t.items()))

    def key(self):
        return tuple(sorted((x, c.key()) for x, c in self.t.items()))

    def __str__(self):
        if not self.t:
            return "0"
        parts = []
        for x in sorted(self.t, reverse=True):
            parts.append(f"[{self.t[x]}]θ{list(x)}")
        return " + ".join(parts)

    __repr__ = __str__


def _normalize_factor(f: TorusFunction):
    """f = u * g with u a monomial and g having leading term 1*theta_0 (when the lead is a unit)."""
    x = max(f.t)
    c = f.t[x]
    if c.is_unit():
        u = TorusFunction.theta(x, f.n, f.d, c)
        ci = c.inverse()
        g = TorusFunction(f.r, f.n, f.d, {lat.vsub(y, x): a * ci for y, a in f.t.items()})
    else:
        u = TorusFunction.theta(x, f.n, f.d)
        g = TorusFunction(f.r, f.n, f.d, {lat.vsub(y, x): a for y, a in f.t.items()})
    return u, g


def _split_binomial(g: TorusFunction):
    """Split normalized 1 + b theta_z into primitive binomials when the roots of -b lie in F."""
    if len(g.t) != 2:
        return [g]
    z = min(g.t)
    b = g.t[z]
    k = lat.content(z)
    if k == 1 or not b.is_unit():
        return [g]
    (e, c), = b.t.items()
    a = (-c).root_exponent()
    n = g.n
    if a is None or n % k or a % k or e % k:
        return [g]
    z0 = tuple(i // k for i in z)
    out = []
    for j in range(k):
        rho = VLaurent(n, g.d, {e // k: Cyclo.zeta(a // k + j * (n // k), n)})
        out.append(TorusFunction(g.r, n, g.d, {(0,) * g.r: VLaurent.const(1, n, g.d), z0: -rho}))
    return out


def factorize(f: TorusFunction):
    """f = u * prod(factors) with u a monomial; binomials split into primitive ones."""
    if not f.t:
        raise ZeroDivisionError("cannot factor zero")
    u, g = _normalize_factor(f)
    if len(g.t) == 1:
        return u, []
    return u, _split_binomial(g)


def _prod(fs, one):
    out = one
    for f in fs:
        out = out * f
    return out


class TorusRational:
    """num / prod(f^m for f, m in den); factors normalized and sorted."""

    __slots__ = ("num", "den")

    def __init__(self, num: TorusFunction, den: tuple = ()):
        self.num = num
        self.den = den

    @staticmethod
    def lift(f) -> "TorusRational":
        if isinstance(f, TorusRational):
            return f
        return TorusRational(f, ())

    @staticmethod
    def _build(num: TorusFunction, den: dict) -> "TorusRational":
        """Cancel what divides and sort.  ``den`` maps factor to multiplicity."""
        if not num.t:
            return TorusRational(num, ())
        out = {}
        for f, m in den.items():
            while m:
                q = num.exact_div(f)
                if q is None:
                    break
                num = q
                m -= 1
            if m:
                out[f] = m
        items = tuple(sorted(out.items(), key=lambda fm: fm[0].key()))
        return TorusRational(num, items)

    @staticmethod
    def fraction(num: TorusFunction, den: TorusFunction) -> "TorusRational":
        u, fs = factorize(den)
        ui = _monomial_inverse(u)
        dd = {}
        for f in fs:
            dd[f] = dd.get(f, 0) + 1
        return TorusRational._build(num * ui, dd)

    def zero(self):
        return TorusRational(self.num.zero(), ())

    def is_zero(self) -> bool:
        return not self.num.t

    def __bool__(self):
        return bool(self.num.t)

    def is_polynomial(self) -> bool:
        return not self.den

    def denominator(self) -> TorusFunction:
        return _prod((f ** m for f, m in self.den), self.num.one())

    def _co(self, o):
        if isinstance(o, TorusRational):
            return o
        if isinstance(o, TorusFunction):
            return TorusRational(o, ())
        return TorusRational(self.num._coerce(o), ())

    def __add__(self, o):
        o = self._co(o)
        if not o.num.t:
            return self
        if not self.num.t:
            return o
        if self.den == o.den:
            return TorusRational._build(self.num + o.num, dict(self.den))
        da, db = dict(self.den), dict(o.den)
        lcm = dict(da)
        for f, m in db.items():
            lcm[f] = max(m, lcm.get(f, 0))
        one = self.num.one()
        na = self.num * _prod((f ** (m - da.get(f, 0)) for f, m in lcm.items()), one)
        nb = o.num * _prod((f ** (m - db.get(f, 0)) for f, m in lcm.items()), one)
        return TorusRational._build(na + nb, lcm)

    __radd__ = __add__

    def __neg__(self):
        return TorusRational(-self.num, self.den)

    def __sub__(self, o):
        return self + (-self._co(o))

    def __rsub__(self, o):
        return self._co(o) + (-self)

    def __mul__(self, o):
        o = self._co(o)
        if not self.num.t or not o.num.t:
            return self.zero()
        a, b = self.num, o.num
        da, db = dict(self.den), dict(o.den)
        # cross-cancel before multiplying
        for f in list(da):
            while da[f]:
                q = b.exact_div(f)
                if q is None:
                    break
                b = q
                da[f] -= 1
        for f in list(db):
            while db[f]:
                q = a.exact_div(f)
                if q is None:
                    break
                a = q
                db[f] -= 1
        den = {f: m for f, m in da.items() if m}
        for f, m in db.items():
            if m:
                den[f] = den.get(f, 0) + m
        items = tuple(sorted(den.items(), key=lambda fm: fm[0].key()))
        return TorusRational(a * b, items)

    __rmul__ = __mul__

    def inverse(self) -> "TorusRational":
        if not self.num.t:
            raise ZeroDivisionError("inverse of zero rational function")
        return TorusRational.fraction(self.denominator(), self.num)

    def __truediv__(self, o):
        return self * self._co(o).inverse()

    def __rtruediv__(self, o):
        return self._co(o) * self.inverse()

    def scale(self, c: VLaurent) -> "TorusRational":
        return TorusRational(self.num.scale(c), self.den)

    def shift(self, y) -> "TorusRational":
        return TorusRational(self.num.shift(y), self.den)

    def act(self, m) -> "TorusRational":
        """theta_x -> theta_{m x}."""
        num = self.num.act(m)
        den = {}
        for f, k in self.den:
            u, g = _normalize_factor(f.act(m))
            ui = _monomial_inverse(u)
            for _ in range(k):
                num = num * ui
            den[g] = den.get(g, 0) + k
        items = tuple(sorted(den.items(), key=lambda fm: fm[0].key()))
        return TorusRational(num, items)

    def __eq__(self, o):
        if isinstance(o, (TorusRational, TorusFunction)):
            o = self._co(o)
            if self.den == o.den:
                return self.num == o.num
            return self.num * o.denominator() == o.num * self.denominator()
        return NotImplemented

    __hash__ = None

    def specialize(self, point: "TorusPoint") -> VRational:
        return specialize(self, point)

    def __str__(self):
        if not self.den:
            return str(self.num)
        d = " * ".join(f"({f})^{m}" if m > 1 else f"({f})" for f, m in self.den)
        return f"({self.num}) / {d}"

    __repr__ = __str__


def _monomial_inverse(u: TorusFunction) -> TorusFunction:
    (x, c), = u.t.items()
    return TorusFunction(u.r, u.n, u.d, {tuple(-a for a in x): c.inverse()})


def specialize(f, point: "TorusPoint") -> VRational:
    """Substitute theta_x -> t(x).  Raises PoleError naming a vanishing denominator factor."""
    if isinstance(f, TorusFunction):
        return VRational.lift(f.evaluate(point))
    value = VRational.lift(f.num.evaluate(point))
    for g, m in f.den:
        gv = g.evaluate(point)
        if gv.is_zero():
            raise PoleError(f"denominator factor {g} vanishes at {point}")
        for _ in range(m):
            value = value / gv
    return value


# ---------------------------------------------------------------- torus points

def _frac_mod1(a) -> Fraction:
    a = Fraction(a)
    return a - (a.numerator // a.denominator)


class TorusPoint:
    """Character of Z^r: e_j -> zeta^(angles[j]) * v^(vexps[j]) with zeta = exp(2 pi i)."""

    __slots__ = ("angles", "vexps", "n", "d")

    def __init__(self, angles, vexps, n: int = DEFAULT_N, d: int = DEFAULT_D):
        self.angles = tuple(_frac_mod1(a) for a in angles)
        self.vexps = tuple(Fraction(b) for b in vexps)
        self.n = n
        self.d = d
        if len(self.angles) != len(self.vexps):
            raise ConfigError("angle and v-exponent vectors differ in length")

    @staticmethod
    def one(r: int, n: int = DEFAULT_N, d: int = DEFAULT_D) -> "TorusPoint":
        return TorusPoint((0,) * r, (0,) * r, n, d)

    @property
    def rank(self) -> int:
        return len(self.angles)

    def value(self, x):
        """(angle mod 1, v-exponent) of t(x)."""
        a = sum((Fraction(k) * s for k, s in zip(x, self.angles)), Fraction(0))
        b = sum((Fraction(k) * s for k, s in zip(x, self.vexps)), Fraction(0))
        return _frac_mod1(a), b

    def scalar(self, x) -> VLaurent:
        a, b = self.value(x)
        return VLaurent.unit(a, b, self.n, self.d)

    def act(self, m, m_inv=None) -> "TorusPoint":
        """(w t)(x) = t(w^-1 x) where w acts on Z^r by the matrix m."""
        mi = m_inv if m_inv is not None else lat.int_inverse(m)
        cols = list(zip(*mi))
        vals = [self.value(c) for c in cols]
        return TorusPoint([a for a, _ in vals], [b for _, b in vals], self.n, self.d)

    def __mul__(self, o: "TorusPoint") -> "TorusPoint":
        if (o.n, o.d, o.rank) != (self.n, self.d, self.rank):
            raise ConfigError("torus points over different settings")
        return TorusPoint([a + b for a, b in zip(self.angles, o.angles)],
                          [a + b for a, b in zip(self.vexps, o.vexps)], self.n, self.d)

    def inverse(self) -> "TorusPoint":
        return TorusPoint([-a for a in self.angles], [-b for b in self.vexps], self.n, self.d)

    def is_unitary(self) -> bool:
        return not any(self.vexps)

    def unitary_part(self) -> "TorusPoint":
        return TorusPoint(self.angles, (0,) * self.rank, self.n, self.d)

    def real_part(self) -> "TorusPoint":
        return TorusPoint((0,) * self.rank, self.vexps, self.n, self.d)

    def check_representable(self):
        for a in self.angles:
            if (a * self.n).denominator != 1:
                raise ConfigError(f"angle {a} is not a multiple of 1/{self.n}")
        for b in self.vexps:
            if (b * self.d).denominator != 1:
                raise ConfigError(f"v-exponent {b} is not a multiple of 1/{self.d}")
        return self

    def key(self):
        return (self.angles, self.vexps)

    def __eq__(self, o):
        return isinstance(o, TorusPoint) and self.key() == o.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, o):
        return self.key() < o.key()

    def to_json(self):
        return [[str(a), str(b)] for a, b in zip(self.angles, self.vexps)]

    @staticmethod
    def from_json(data, n: int = DEFAULT_N, d: int = DEFAULT_D) -> "TorusPoint":
        return TorusPoint([Fraction(str(a)) for a, _ in data], [Fraction(str(b)) for _, b in data], n, d)

    def __str__(self):
        return "(" + ", ".join(f"ζ^{a * self.n}*v^({b})" if (a * self.n).denominator == 1
                               else f"e(2πi·{a})*v^({b})" for a, b in zip(self.angles, self.vexps)) + ")"

    __repr__ = __str__


def unit_string(angle, vexp, n: int = DEFAULT_N) -> str:
    """Serialize zeta^a * v^e as 'ζ^a*v^(e)'."""
    a = Fraction(angle) * n
    return f"ζ^{a}*v^({Fraction(vexp)})"

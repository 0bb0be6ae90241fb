"""Extended affine Hecke algebras in the Bernstein presentation.

An element is a finite sum of c * theta_x N_w J_g with c in Q(zeta)[v^(+-1/D)], stored in the
basis order (x, w, g): thetas on the left, then N_w, then J_g.  Multiplication pushes thetas
to the left through N_s with the cross relation

    N_s theta_x - theta_{s x} N_s = G_s (theta_x - theta_{s x}),

    G_s = (v^lam - v^-lam) / (1 - theta_{-a})                                   (a^vee not in 2Y)
    G_s = ((v^lam - v^-lam) + theta_{-a} (v^lam* - v^-lam*)) / (1 - theta_{-2a})   (a^vee in 2Y)

and multiplies N's with the quadratic relation (N_s - v^lam)(N_s + v^-lam) = 0.

The localized model writes v^lam N_s + 1 = (T_s theta_{-eps a} + 1) c_s with

    c_s = (theta_a q_a - 1)(theta_a q_* + 1) / (theta_{2a} - 1),  q_a = v^(lam+lam*), q_* = v^(lam-lam*)

in the two-divisible case and c_s = (theta_a v^(2 lam) - 1)/(theta_a - 1) otherwise.  It is used
as an independent oracle for the Bernstein multiplication and to compute the Whittaker action.
"""
from fractions import Fraction

from . import lattice as lat
from .exact_rings import (VLaurent, TorusFunction, TorusRational, TorusPoint,
                          DEFAULT_N, DEFAULT_D)
from .root_datum import BasedRootDatum, is_coroot_two_divisible


class AlgebraError(ValueError):
    pass


class HeckeAlgebra:
    """H(R, lam, lam*, v) x| Gamma with trivial cocycle.

    ``labels`` maps a simple-root index to (lam, lam*); ``epsilon`` maps two-divisible
    simple-root indices to 0/1 (used only by the localized embedding).
    """

    def __init__(self, datum: BasedRootDatum, labels: dict, basepoint: TorusPoint = None,
                 epsilon: dict = None, n: int = DEFAULT_N, d: int = DEFAULT_D, name: str = ""):
        self.datum = datum
        self.n = n
        self.d = d
        self.name = name or datum.name
        self.r = datum.rank
        self.labels = {int(i): (int(l[0]), int(l[1])) for i, l in labels.items()}
        self.epsilon = {int(i): int(e) for i, e in (epsilon or {}).items()}
        self.basepoint = basepoint if basepoint is not None else TorusPoint.one(self.r, n, d)
        self._validate()
        self._nw_theta_cache = {}
        self._nn_cache = {}
        self._loc_cache = {}
        self._cross_cache = {}

    # ------------------------------------------------------------ validation
    def _validate(self):
        dt = self.datum
        for i in range(dt.n_simple):
            if i not in self.labels:
                raise AlgebraError(f"missing labels for simple root {i}")
            lam, lam_s = self.labels[i]
            if not lam >= lam_s >= 0:
                raise AlgebraError(f"labels {self.labels[i]} violate lam >= lam* >= 0")
            if lam_s != lam and not is_coroot_two_divisible(dt, i):
                raise AlgebraError(f"lam* != lam on root {i} whose coroot is not two-divisible")
            e = self.epsilon.get(i, 0)
            if e not in (0, 1):
                raise AlgebraError("epsilon takes values in {0, 1}")
            if e and not is_coroot_two_divisible(dt, i):
                raise AlgebraError(f"epsilon set on root {i} whose coroot is not two-divisible")
        for i in range(dt.n_simple):
            for j in range(dt.n_simple):
                if dt.simple_orbit_of(i) == dt.simple_orbit_of(j):
                    if self.labels[i] != self.labels[j]:
                        raise AlgebraError(f"labels not invariant: roots {i}, {j} are conjugate")
        for perm in dt.gamma_perm:
            for i, j in enumerate(perm):
                if self.epsilon.get(i, 0) != self.epsilon.get(j, 0):
                    raise AlgebraError("epsilon is not Gamma-invariant")
        for s in dt.reflections:
            if self.basepoint.act(s) != self.basepoint:
                raise AlgebraError(f"basepoint {self.basepoint} is not fixed by the reflections")
        if self.basepoint.rank != self.r:
            raise AlgebraError("basepoint rank differs from datum rank")

    def root_labels(self, i: int) -> tuple:
        """Labels of an arbitrary root (index into datum.roots)."""
        dt = self.datum
        orb = dt.root_orbit[i]
        for j in range(dt.n_simple):
            if dt.simple_orbit_of(j) == orb:
                return self.labels[j]
        raise AlgebraError(f"root {i} has no simple representative")

    def same_structure(self, other: "HeckeAlgebra") -> bool:
        return (self.datum is other.datum and self.labels == other.labels
                and (self.n, self.d) == (other.n, other.d))

    # ------------------------------------------------------------ scalars
    def v(self, e=1) -> VLaurent:
        return VLaurent.mono(1, e, self.n, self.d)

    def one_scalar(self) -> VLaurent:
        return VLaurent.const(1, self.n, self.d)

    def q_alpha(self, i: int) -> VLaurent:
        lam, lam_s = self.labels[i]
        return self.v(lam + lam_s)

    def q_star(self, i: int) -> VLaurent:
        lam, lam_s = self.labels[i]
        return self.v(lam - lam_s)

    def _tf(self, x, c=None) -> TorusFunction:
        return TorusFunction.theta(x, self.n, self.d, c)

    # ------------------------------------------------------------ generators
    def element(self, terms: dict) -> "HeckeElement":
        return HeckeElement(self, {k: c for k, c in terms.items() if c})

    def zero(self) -> "HeckeElement":
        return HeckeElement(self, {})

    def scalar(self, c) -> "HeckeElement":
        if not isinstance(c, VLaurent):
            c = VLaurent.const(c, self.n, self.d)
        return self.element({((0,) * self.r, self.datum.identity_w, 0): c})

    def one(self) -> "HeckeElement":
        return self.scalar(1)

    def theta(self, x) -> "HeckeElement":
        return self.element({(tuple(int(a) for a in x), self.datum.identity_w, 0): self.one_scalar()})

    def N(self, w) -> "HeckeElement":
        """N_w for a Weyl index or a word of simple indices."""
        if isinstance(w, (tuple, list)):
            out = self.one()
            for i in w:
                out = out * self.N(self.datum.simple_w[i])
            return out
        return self.element({((0,) * self.r, w, 0): self.one_scalar()})

    def Ns(self, i: int) -> "HeckeElement":
        return self.N(self.datum.simple_w[i])

    def J(self, g: int) -> "HeckeElement":
        return self.element({((0,) * self.r, self.datum.identity_w, g): self.one_scalar()})

    def generators(self):
        """theta_{+-e_i}, N_s for simple s, J_g for nontrivial g."""
        gens = []
        for i in range(self.r):
            e = tuple(int(i == j) for j in range(self.r))
            gens.append((f"θ{list(e)}", self.theta(e)))
            gens.append((f"θ{[-a for a in e]}", self.theta([-a for a in e])))
        for i in range(self.datum.n_simple):
            gens.append((f"N_s{i}", self.Ns(i)))
        for g in range(1, len(self.datum.gammas)):
            gens.append((f"J_{g}", self.J(g)))
        return gens

    # ------------------------------------------------------------ rewriting kernels
    def cross_term(self, i: int, z: tuple) -> TorusFunction:
        """G_s (theta_z - theta_{s z}) as a Laurent polynomial, s the i-th simple reflection."""
        key = (i, z)
        hit = self._cross_cache.get(key)
        if hit is not None:
            return hit
        dt = self.datum
        a = dt.simple_roots[i]
        nz = lat.pair(z, dt.simple_coroots[i])
        lam, lam_s = self.labels[i]
        out = TorusFunction(self.r, self.n, self.d, {})
        if nz:
            c1 = self.v(lam) - self.v(-lam)
            if is_coroot_two_divisible(dt, i):
                m = nz // 2
                step = lat.vscale(-2, a)
                geo = _geometric(z, step, m, self)
                c2 = self.v(lam_s) - self.v(-lam_s)
                out = geo.scale(c1)
                if c2:
                    out = out + geo.shift(lat.vscale(-1, a)).scale(c2)
            else:
                out = _geometric(z, lat.vscale(-1, a), nz, self).scale(c1)
        self._cross_cache[key] = out
        return out

    def _left_s_on_N(self, i: int, u: int) -> dict:
        """N_s N_u as {w: coeff}."""
        dt = self.datum
        s = dt.simple_w[i]
        su = dt.weyl_mul[s][u]
        if dt.length(su) > dt.length(u):
            return {su: self.one_scalar()}
        lam = self.labels[i][0]
        return {su: self.one_scalar(), u: self.v(lam) - self.v(-lam)}

    def _right_s_on_N(self, u: int, i: int) -> dict:
        """N_u N_s as {w: coeff}."""
        dt = self.datum
        s = dt.simple_w[i]
        us = dt.weyl_mul[u][s]
        if dt.length(us) > dt.length(u):
            return {us: self.one_scalar()}
        lam = self.labels[i][0]
        return {us: self.one_scalar(), u: self.v(lam) - self.v(-lam)}

    def nn(self, u: int, w: int) -> dict:
        """N_u N_w in the finite Hecke algebra."""
        key = (u, w)
        hit = self._nn_cache.get(key)
        if hit is not None:
            return hit
        cur = {u: self.one_scalar()}
        for i in self.datum.weyl_words[w]:
            nxt = {}
            for a, c in cur.items():
                for b, c2 in self._right_s_on_N(a, i).items():
                    _acc(nxt, b, c * c2)
            cur = nxt
        self._nn_cache[key] = cur
        return cur

    def nw_theta(self, w: int, y: tuple) -> dict:
        """N_w theta_y = sum c theta_z N_u, as {(z, u): c}."""
        key = (w, y)
        hit = self._nw_theta_cache.get(key)
        if hit is not None:
            return hit
        dt = self.datum
        word = dt.weyl_words[w]
        if not word:
            out = {(y, w): self.one_scalar()}
        else:
            i = word[0]
            rest = dt.weyl_index[lat.mat_mul(dt.reflections[i], dt.weyl[w])]
            inner = self.nw_theta(rest, y)
            s_mat = dt.reflections[i]
            out = {}
            for (z, u), c in inner.items():
                # N_s theta_z = theta_{sz} N_s + cross(z)
                sz = lat.mat_vec(s_mat, z)
                for b, c2 in self._left_s_on_N(i, u).items():
                    _acc(out, (sz, b), c * c2)
                ct = self.cross_term(i, z)
                for x, c3 in ct.t.items():
                    _acc(out, (x, u), c * c3)
        self._nw_theta_cache[key] = out
        return out

    # ------------------------------------------------------------ localized model
    def c_function(self, i: int) -> TorusRational:
        dt = self.datum
        a = dt.simple_roots[i]
        lam, lam_s = self.labels[i]
        one = self._tf((0,) * self.r)
        th = self._tf(a)
        if is_coroot_two_divisible(dt, i):
            num = (th.scale(self.q_alpha(i)) - one) * (th.scale(self.q_star(i)) + one)
            den = self._tf(lat.vscale(2, a)) - one
        else:
            num = th.scale(self.v(2 * lam)) - one
            den = th - one
        return TorusRational.fraction(num, den)

    def localized_Ns(self, i: int) -> "LocalizedElement":
        """Image of N_s: v^-lam [ theta_{eps a} s(c) T_s + (c - 1) ]."""
        key = ("s", i)
        hit = self._loc_cache.get(key)
        if hit is not None:
            return hit
        dt = self.datum
        a = dt.simple_roots[i]
        lam, _ = self.labels[i]
        eps = self.epsilon.get(i, 0)
        c = self.c_function(i)
        vm = self.v(-lam)
        top = c.act(dt.reflections[i]).shift(lat.vscale(eps, a)).scale(vm)
        low = (c - TorusRational.lift(self._tf((0,) * self.r))).scale(vm)
        out = LocalizedElement(self, {(dt.simple_w[i], 0): top, (dt.identity_w, 0): low})
        self._loc_cache[key] = out
        return out

    def localized_N(self, w: int) -> "LocalizedElement":
        key = ("w", w)
        hit = self._loc_cache.get(key)
        if hit is not None:
            return hit
        out = self.localized_one()
        for i in self.datum.weyl_words[w]:
            out = out * self.localized_Ns(i)
        self._loc_cache[key] = out
        return out

    def localized_one(self) -> "LocalizedElement":
        return LocalizedElement(self, {(self.datum.identity_w, 0): TorusRational.lift(self._tf((0,) * self.r))})

    def localized_theta(self, x) -> "LocalizedElement":
        return LocalizedElement(self, {(self.datum.identity_w, 0): TorusRational.lift(self._tf(tuple(x)))})

    def localized_T(self, w: int, g: int = 0) -> "LocalizedElement":
        return LocalizedElement(self, {(w, g): TorusRational.lift(self._tf((0,) * self.r))})

    def top_coefficient(self, w: int) -> TorusRational:
        return self.localized_N(w).terms[(w, 0)]

    def steinberg_point(self) -> TorusPoint:
        """Point with t(a_i) = q_a^-1 on every simple root."""
        dt = self.datum
        vals = [(Fraction(0), -Fraction(sum(self.labels[i]))) for i in range(dt.n_simple)]
        return point_with_root_values(dt, vals, self.n, self.d)


def _acc(d: dict, k, c):
    s = d.get(k)
    if s is None:
        d[k] = c
    else:
        s = s + c
        if s.t:
            d[k] = s
        else:
            del d[k]


def _geometric(z, step, m, alg) -> TorusFunction:
    """theta_z (1 - X^m)/(1 - X) with X = theta_step, as a Laurent polynomial."""
    t = {}
    one = alg.one_scalar()
    if m > 0:
        for j in range(m):
            t[tuple(a + j * b for a, b in zip(z, step))] = one
    elif m < 0:
        for j in range(m, 0):
            t[tuple(a + j * b for a, b in zip(z, step))] = -one
    return TorusFunction(alg.r, alg.n, alg.d, t)


def point_with_root_values(datum: BasedRootDatum, values, n=DEFAULT_N, d=DEFAULT_D) -> TorusPoint:
    """A torus point with t(a_i) = zeta^(angle_i) v^(vexp_i) on simple roots; free coordinates 0."""
    rows = [list(a) for a in datum.simple_roots]
    if not rows:
        return TorusPoint.one(datum.rank, n, d)
    angs = lat.solve_rational(rows, [a for a, _ in values])
    vex = lat.solve_rational(rows, [b for _, b in values])
    if angs is None or vex is None:
        raise AlgebraError(f"no torus point with simple-root values {values}")
    return TorusPoint(angs, vex, n, d).check_representable()


# ---------------------------------------------------------------- elements

class HeckeElement:
    """sum c * theta_x N_w J_g, terms keyed by (x, w, g)."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: HeckeAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def _check(self, o):
        if not isinstance(o, HeckeElement):
            return None
        if o.alg is not self.alg:
            raise AlgebraError("elements of different algebras")
        return o

    def _lift(self, o):
        if isinstance(o, HeckeElement):
            return self._check(o)
        return self.alg.scalar(o)

    def __add__(self, o):
        o = self._lift(o)
        t = dict(self.terms)
        for k, c in o.terms.items():
            _acc(t, k, c)
        return HeckeElement(self.alg, t)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def scale(self, c) -> "HeckeElement":
        if not isinstance(c, VLaurent):
            c = VLaurent.const(c, self.alg.n, self.alg.d)
        if not c:
            return self.alg.zero()
        return HeckeElement(self.alg, {k: a * c for k, a in self.terms.items()})

    def __mul__(self, o):
        if not isinstance(o, HeckeElement):
            return self.scale(o)
        self._check(o)
        alg = self.alg
        dt = alg.datum
        out = {}
        for (x, w, g), ca in self.terms.items():
            gm = dt.gammas[g]
            for (y, w2, g2), cb in o.terms.items():
                gy = lat.mat_vec(gm, y) if g else y
                w2c = dt.gamma_conj[g][w2] if g else w2
                gg = dt.gamma_mul[g][g2]
                cab = ca * cb
                for (z, u), c1 in alg.nw_theta(w, gy).items():
                    xz = tuple(i + j for i, j in zip(x, z))
                    c1 = cab * c1
                    for u2, c2 in alg.nn(u, w2c).items():
                        _acc(out, (xz, u2, gg), c1 * c2)
        return HeckeElement(alg, out)

    def __rmul__(self, o):
        return self.scale(o)

    def __pow__(self, k: int):
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        if isinstance(o, HeckeElement):
            return self.alg is o.alg and self.terms == o.terms
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        dt = self.alg.datum
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], dt.weyl_words[kv[0][1]], kv[0][2]))

    def to_json(self):
        dt = self.alg.datum
        return [[list(x), list(dt.weyl_words[w]), g, str(c)] for (x, w, g), c in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return "0"
        dt = self.alg.datum
        parts = []
        for (x, w, g), c in self.sorted_terms():
            parts.append(f"[{c}]θ{list(x)}N{list(dt.weyl_words[w])}J{g}")
        return " + ".join(parts)

    __repr__ = __str__


class LocalizedElement:
    """sum f_{w,g} T_w J_g with f in C(T); (f T_w J_g)(h T_w' J_g') = f (w g)(h) T_{w g w' g^-1} J_{g g'}."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: HeckeAlgebra, terms: dict):
        self.alg = alg
        self.terms = {k: f for k, f in terms.items() if not f.is_zero()}

    def __add__(self, o):
        t = dict(self.terms)
        for k, f in o.terms.items():
            t[k] = t[k] + f if k in t else f
        return LocalizedElement(self.alg, t)

    def __neg__(self):
        return LocalizedElement(self.alg, {k: -f for k, f in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c: VLaurent) -> "LocalizedElement":
        return LocalizedElement(self.alg, {k: f.scale(c) for k, f in self.terms.items()})

    def left_mul_function(self, f) -> "LocalizedElement":
        return LocalizedElement(self.alg, {k: TorusRational.lift(f) * h for k, h in self.terms.items()})

    def __mul__(self, o: "LocalizedElement"):
        dt = self.alg.datum
        out = {}
        for (w, g), f in self.terms.items():
            m = dt.ext_matrix((w, g))
            for (w2, g2), h in o.terms.items():
                k = dt.ext_mul((w, g), (w2, g2))
                p = f * h.act(m)
                out[k] = out[k] + p if k in out else p
        return LocalizedElement(self.alg, out)

    def __eq__(self, o):
        if not isinstance(o, LocalizedElement):
            return NotImplemented
        keys = set(self.terms) | set(o.terms)
        for k in keys:
            a, b = self.terms.get(k), o.terms.get(k)
            if a is None or b is None:
                return False
            if not a == b:
                return False
        return True

    __hash__ = None

    def __str__(self):
        dt = self.alg.datum
        return " + ".join(f"({f})T{list(dt.weyl_words[w])}J{g}" for (w, g), f in sorted(self.terms.items()))


# ---------------------------------------------------------------- maps

def to_localized(h: HeckeElement) -> LocalizedElement:
    alg = h.alg
    groups = {}
    for (x, w, g), c in h.terms.items():
        p = groups.setdefault((w, g), {})
        p[x] = c
    out = {}
    for (w, g), t in groups.items():
        p = TorusFunction(alg.r, alg.n, alg.d, t)
        for (u, _), f in alg.localized_N(w).terms.items():
            term = f * p
            k = (u, g)
            out[k] = out[k] + term if k in out else term
    return LocalizedElement(alg, out)


class IntegralityError(AlgebraError):
    pass


def from_localized(e: LocalizedElement) -> HeckeElement:
    """Inverse of to_localized on its image; raises IntegralityError otherwise."""
    alg = e.alg
    dt = alg.datum
    rest = LocalizedElement(alg, dict(e.terms))
    out = {}
    guard = 0
    while rest.terms:
        guard += 1
        if guard > 10 * dt.order() + 10:
            raise IntegralityError("elimination did not terminate")
        w, g = max(rest.terms, key=lambda k: (dt.length(k[0]), k))
        f = rest.terms[(w, g)]
        p = f / alg.top_coefficient(w)
        if not p.is_polynomial():
            bad = ", ".join(str(fac) for fac, _ in p.den)
            raise IntegralityError(f"coefficient of T{list(dt.weyl_words[w])}J{g} has denominators {bad}")
        for x, c in p.num.t.items():
            out[(x, w, g)] = c
        sub = {}
        for (u, _), h in alg.localized_N(w).terms.items():
            sub[(u, g)] = h * p.num
        rest = rest - LocalizedElement(alg, sub)
    return HeckeElement(alg, out)


# ---------------------------------------------------------------- Whittaker action

def whittaker_T(alg: HeckeAlgebra, w: int, g: int = 0) -> TorusRational:
    """1 . T_w J_g, from 1 . T_s = -theta_{eps a}, 1 . J_g = det(g) and
    1 . T_{s w} = ((1 . T_s) o w)(1 . T_w)."""
    key = ("whit", w, g)
    hit = alg._loc_cache.get(key)
    if hit is not None:
        return hit
    dt = alg.datum
    if g:
        base = whittaker_T(alg, w, 0)
        val = base.act(lat.int_inverse(dt.gammas[g])).scale(VLaurent.const(lat.det(dt.gammas[g]), alg.n, alg.d))
    else:
        word = dt.weyl_words[w]
        if not word:
            val = TorusRational.lift(alg._tf((0,) * alg.r))
        else:
            i = word[0]
            rest = dt.weyl_index[lat.mat_mul(dt.reflections[i], dt.weyl[w])]
            eps = alg.epsilon.get(i, 0)
            ts = alg._tf(lat.vscale(eps, dt.simple_roots[i]), VLaurent.const(-1, alg.n, alg.d))
            # (1.T_s) o rest : theta_x -> theta_{rest^-1 x}
            val = TorusRational.lift(ts.act(lat.int_inverse(dt.weyl[rest]))) * whittaker_T(alg, rest, 0)
    alg._loc_cache[key] = val
    return val


def whittaker_act(f, h) -> TorusRational:
    """f . h for f in C(T) in the rank-one right module; h a Hecke or localized element."""
    loc = to_localized(h) if isinstance(h, HeckeElement) else h
    alg = loc.alg
    dt = alg.datum
    f = TorusRational.lift(f)
    total = None
    for (w, g), a in loc.terms.items():
        m = dt.ext_matrix((w, g))
        term = (f * a).act(lat.int_inverse(m)) * whittaker_T(alg, w, g)
        total = term if total is None else total + term
    if total is None:
        return TorusRational.lift(alg._tf((0,) * alg.r)).scale(VLaurent(alg.n, alg.d, {}))
    return total


def whittaker_action(h: HeckeElement) -> TorusRational:
    """Image of the canonical vector 1 under h."""
    return whittaker_act(h.alg._tf((0,) * h.alg.r), h)


def det_scalar(alg: HeckeAlgebra, w: int, g: int = 0) -> VLaurent:
    """det(N_w J_g) = prod over a reduced word of (-v^-lam) times det(g)."""
    out = VLaurent.const(lat.det(alg.datum.gammas[g]), alg.n, alg.d)
    for i in alg.datum.weyl_words[w]:
        out = out * (-alg.v(-alg.labels[i][0]))
    return out


# ---------------------------------------------------------------- comparison and twists

def comparison_iso(h: HeckeElement, source: HeckeAlgebra, target: HeckeAlgebra) -> HeckeElement:
    """psi: theta_x -> theta_x, N_w -> N_{w^-1}, J_g -> J_{g^-1}; an anti-isomorphism."""
    if h.alg is not source:
        raise AlgebraError("element does not belong to the source algebra")
    if source.datum is not target.datum:
        raise AlgebraError("source and target must share the identified datum")
    if source.labels != target.labels:
        bad = [i for i in source.labels if source.labels[i] != target.labels.get(i)]
        raise AlgebraError(f"label mismatch on simple roots {bad}")
    dt = source.datum
    out = target.zero()
    for (x, w, g), c in h.terms.items():
        piece = target.J(dt.gamma_inv[g]) * target.N(dt.weyl_inv[w]) * target.theta(x)
        out = out + piece.scale(c)
    return out


def twist_algebra(alg: HeckeAlgebra, z: TorusPoint) -> HeckeAlgebra:
    _check_twist(alg, z)
    return HeckeAlgebra(alg.datum, alg.labels, z * alg.basepoint, alg.epsilon, alg.n, alg.d,
                        name=f"{alg.name}*z")


def _check_twist(alg: HeckeAlgebra, z: TorusPoint):
    dt = alg.datum
    for (w, g) in dt.ext_elements():
        if z.act(dt.ext_matrix((w, g))) != z:
            raise AlgebraError(f"twist {z} is not W x| Gamma-invariant")
    for i, a in enumerate(dt.simple_roots):
        ang, b = z.value(a)
        if b != 0 or (ang != 0 and not (ang == Fraction(1, 2) and alg.labels[i][1] == 0)):
            raise AlgebraError(f"twist {z} moves the cross-relation kernel of root {i}")


def twist_by_character(z: TorusPoint, h: HeckeElement, target: HeckeAlgebra = None) -> HeckeElement:
    """theta_x -> z(x)^-1 theta_x, N_w J_g fixed."""
    alg = h.alg
    _check_twist(alg, z)
    if target is None:
        target = twist_algebra(alg, z)
    elif not target.same_structure(alg):
        raise AlgebraError("target algebra differs in structure")
    out = {}
    for (x, w, g), c in h.terms.items():
        out[(x, w, g)] = c * z.scalar(x).inverse()
    return HeckeElement(target, out)


def transport(h: HeckeElement, target: HeckeAlgebra) -> HeckeElement:
    """Same coefficients read in a structurally identical algebra."""
    if not target.same_structure(h.alg):
        raise AlgebraError("target algebra differs in structure")
    return HeckeElement(target, dict(h.terms))


def central_symmetrizer(alg: HeckeAlgebra, x) -> HeckeElement:
    """sum over W x| Gamma of theta_{w x}."""
    dt = alg.datum
    out = alg.zero()
    for k in dt.ext_elements():
        out = out + alg.theta(lat.mat_vec(dt.ext_matrix(k), tuple(x)))
    return out


def cross_kernel(alg: HeckeAlgebra, i: int) -> TorusRational:
    """G_s as a rational function (for display and tests)."""
    dt = alg.datum
    a = dt.simple_roots[i]
    lam, lam_s = alg.labels[i]
    one = alg._tf((0,) * alg.r)
    c1 = alg.v(lam) - alg.v(-lam)
    if is_coroot_two_divisible(dt, i):
        num = one.scale(c1) + alg._tf(lat.vscale(-1, a)).scale(alg.v(lam_s) - alg.v(-lam_s))
        den = one - alg._tf(lat.vscale(-2, a))
    else:
        num = one.scale(c1)
        den = one - alg._tf(lat.vscale(-1, a))
    return TorusRational.fraction(num, den)

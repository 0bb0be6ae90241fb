"""Based root data with a group of diagram automorphisms, and their extended Weyl groups."""
from dataclasses import dataclass, field
from fractions import Fraction

from . import lattice as lat
from .exact_rings import TorusPoint

GROUP_BOUND = 10 ** 6


class DatumError(ValueError):
    pass


@dataclass(frozen=True)
class WeylElement:
    matrix: tuple
    reduced_word: tuple
    gamma_part: int          # index into datum.gammas
    w_index: int             # index into datum.weyl (reflection part)

    @property
    def length(self) -> int:
        return len(self.reduced_word)


def _reflection(root, coroot):
    r = len(root)
    return tuple(tuple(int(j == k) - root[j] * coroot[k] for k in range(r)) for j in range(r))


class BasedRootDatum:
    """Lattice X = Z^r, simple roots in X, simple coroots in Y = Hom(X, Z), and a group Gamma.

    ``simple_roots[i]`` and ``simple_coroots[i]`` pair to 2.  The full root system is the
    W-orbit of the simple roots.  Gamma is given by generator matrices acting on X.
    """

    def __init__(self, simple_roots, simple_coroots, gamma_generators=(), name: str = ""):
        self.name = name
        self.simple_roots = [tuple(int(a) for a in x) for x in simple_roots]
        self.simple_coroots = [tuple(int(a) for a in y) for y in simple_coroots]
        if len(self.simple_roots) != len(self.simple_coroots):
            raise DatumError("roots and coroots differ in number")
        if not self.simple_roots and not gamma_generators:
            raise DatumError("empty datum needs an explicit rank")
        ranks = {len(x) for x in self.simple_roots + self.simple_coroots}
        ranks |= {len(m) for m in gamma_generators}
        if len(ranks) != 1:
            raise DatumError(f"inconsistent vector lengths {sorted(ranks)}")
        self.rank = ranks.pop()
        self.n_simple = len(self.simple_roots)
        for i, (a, c) in enumerate(zip(self.simple_roots, self.simple_coroots)):
            if lat.pair(a, c) != 2:
                raise DatumError(f"<root_{i}, coroot_{i}> = {lat.pair(a, c)}, expected 2")
        for i in range(self.n_simple):
            for j in range(self.n_simple):
                if i != j and lat.pair(self.simple_roots[j], self.simple_coroots[i]) > 0:
                    raise DatumError(f"simple roots {i},{j} have positive Cartan integer")
        self.reflections = [_reflection(a, c) for a, c in zip(self.simple_roots, self.simple_coroots)]
        self._close_roots()
        self._close_weyl()
        self._close_gamma([tuple(tuple(int(v) for v in row) for row in m) for m in gamma_generators])

    # ------------------------------------------------------------ roots
    def _close_roots(self):
        roots = {}
        frontier = []
        for i, (a, c) in enumerate(zip(self.simple_roots, self.simple_coroots)):
            if a not in roots:
                roots[a] = (c, i)
                frontier.append(a)
        while frontier:
            nxt = []
            for a in frontier:
                c, origin = roots[a]
                for i, (sa, sc) in enumerate(zip(self.simple_roots, self.simple_coroots)):
                    k = lat.pair(a, sc)
                    b = lat.vsub(a, lat.vscale(k, sa))
                    d = lat.vsub(c, lat.vscale(lat.pair(sa, c), sc))
                    if b in roots:
                        if roots[b][0] != d:
                            raise DatumError(f"root {b} has two coroots {roots[b][0]} and {d}")
                        continue
                    roots[b] = (d, origin)
                    nxt.append(b)
                    if len(roots) > GROUP_BOUND:
                        raise DatumError("root system is infinite")
            frontier = nxt
        rows = [list(col) for col in zip(*self.simple_roots)] if self.simple_roots else []
        self.roots = []
        self.coroots = []
        self.root_origin = []
        self.positive = []
        for a in sorted(roots):
            coeffs = lat.solve_rational(rows, list(a)) if rows else None
            if coeffs is None or any(q.denominator != 1 for q in coeffs):
                raise DatumError(f"root {a} is not an integral combination of simple roots")
            if not (all(q >= 0 for q in coeffs) or all(q <= 0 for q in coeffs)):
                raise DatumError(f"root {a} is neither positive nor negative")
            self.roots.append(a)
            self.coroots.append(roots[a][0])
            self.root_origin.append(roots[a][1])
            self.positive.append(all(q >= 0 for q in coeffs))
        self.root_index = {a: i for i, a in enumerate(self.roots)}
        self.simple_index = [self.root_index[a] for a in self.simple_roots]
        # orbit representative (smallest simple index) under W; refined under Gamma later
        self.root_orbit = list(self.root_origin)

    def positive_roots(self):
        return [i for i, p in enumerate(self.positive) if p]

    def neg_root(self, i: int) -> int:
        return self.root_index[lat.vscale(-1, self.roots[i])]

    def reflection_of(self, i: int):
        return _reflection(self.roots[i], self.coroots[i])

    # ------------------------------------------------------------ Weyl group
    def _close_weyl(self):
        ident = lat.identity(self.rank)
        words = {ident: ()}
        level = [ident]
        while level:
            cand = {}
            for m in level:
                w = words[m]
                for i, s in enumerate(self.reflections):
                    p = lat.mat_mul(m, s)
                    if p in words:
                        continue
                    nw = w + (i,)
                    if p not in cand or nw < cand[p]:
                        cand[p] = nw
            words.update(cand)
            level = sorted(cand, key=lambda m: cand[m])
            if len(words) > GROUP_BOUND:
                raise DatumError("Weyl group closure exceeds bound; group is infinite")
        order = sorted(words, key=lambda m: (len(words[m]), words[m]))
        self.weyl = order
        self.weyl_words = [words[m] for m in order]
        self.weyl_index = {m: i for i, m in enumerate(order)}
        n = len(order)
        self.weyl_mul = [[self.weyl_index[lat.mat_mul(a, b)] for b in order] for a in order]
        self.weyl_inv = [self.weyl_index[lat.int_inverse(m)] for m in order]
        self.simple_w = [self.weyl_index[s] for s in self.reflections]
        self.identity_w = self.weyl_index[ident]
        # root permutation by Weyl elements
        self.root_perm = [[self.root_index[lat.mat_vec(m, a)] for a in self.roots] for m in order]
        self._refine_orbits_by_weyl()
        assert n == len(self.weyl_words)

    def _refine_orbits_by_weyl(self):
        for perm in self.root_perm:
            for i, j in enumerate(perm):
                a, b = self.root_orbit[i], self.root_orbit[j]
                if a != b:
                    lo = min(a, b)
                    self.root_orbit = [lo if o in (a, b) else o for o in self.root_orbit]

    def length(self, w: int) -> int:
        return len(self.weyl_words[w])

    # ------------------------------------------------------------ Gamma
    def _close_gamma(self, gens):
        ident = lat.identity(self.rank)
        elems = [ident]
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    p = lat.mat_mul(g, m)
                    if p not in seen:
                        seen.add(p)
                        elems.append(p)
                        nxt.append(p)
                        if len(seen) > GROUP_BOUND:
                            raise DatumError("Gamma closure exceeds bound")
            frontier = nxt
        elems = [ident] + sorted(e for e in elems if e != ident)
        simple = {a: i for i, a in enumerate(self.simple_roots)}
        self.gammas = elems
        self.gamma_index = {m: i for i, m in enumerate(elems)}
        self.gamma_perm = []
        for m in elems:
            if lat.det(m) not in (1, -1):
                raise DatumError(f"Gamma element {m} is not invertible over Z")
            mi_t = lat.transpose(lat.int_inverse(m))
            perm = []
            for a, c in zip(self.simple_roots, self.simple_coroots):
                b = lat.mat_vec(m, a)
                if b not in simple:
                    raise DatumError(f"Gamma element {m} does not preserve the simple roots")
                j = simple[b]
                if lat.mat_vec(mi_t, c) != self.simple_coroots[j]:
                    raise DatumError(f"Gamma element {m} does not preserve the simple coroots")
                perm.append(j)
            self.gamma_perm.append(tuple(perm))
        self.gamma_mul = [[self.gamma_index[lat.mat_mul(a, b)] for b in elems] for a in elems]
        self.gamma_inv = [self.gamma_index[lat.int_inverse(m)] for m in elems]
        # conjugation gamma w gamma^-1 on the Weyl group
        self.gamma_conj = []
        for g, m in enumerate(elems):
            mi = lat.int_inverse(m)
            self.gamma_conj.append([self.weyl_index[lat.mat_mul(lat.mat_mul(m, w), mi)] for w in self.weyl])
        self.gamma_root_perm = [[self.root_index[lat.mat_vec(m, a)] for a in self.roots] for m in elems]
        for perm in self.gamma_root_perm:
            for i, j in enumerate(perm):
                a, b = self.root_orbit[i], self.root_orbit[j]
                if a != b:
                    lo = min(a, b)
                    self.root_orbit = [lo if o in (a, b) else o for o in self.root_orbit]

    # ------------------------------------------------------------ extended group
    def element(self, w: int, g: int = 0) -> WeylElement:
        m = lat.mat_mul(self.weyl[w], self.gammas[g])
        return WeylElement(m, self.weyl_words[w], g, w)

    def ext_mul(self, a: tuple, b: tuple) -> tuple:
        """(w, g)(w', g') = (w * g w' g^-1, g g')."""
        w, g = a
        w2, g2 = b
        return self.weyl_mul[w][self.gamma_conj[g][w2]], self.gamma_mul[g][g2]

    def ext_inv(self, a: tuple) -> tuple:
        w, g = a
        gi = self.gamma_inv[g]
        return self.gamma_conj[gi][self.weyl_inv[w]], gi

    def ext_matrix(self, a: tuple):
        return lat.mat_mul(self.weyl[a[0]], self.gammas[a[1]])

    def ext_elements(self):
        return [(w, g) for g in range(len(self.gammas)) for w in range(len(self.weyl))]

    def order(self) -> int:
        return len(self.weyl) * len(self.gammas)

    def simple_orbit_of(self, i: int) -> int:
        """Orbit label (smallest simple index) of the simple root i under W x| Gamma."""
        return self.root_orbit[self.simple_index[i]]

    def __repr__(self):
        return f"BasedRootDatum({self.name or 'unnamed'}, rank={self.rank}, |W|={len(self.weyl)}, |Γ|={len(self.gammas)})"


def generate_weyl(datum: BasedRootDatum) -> list:
    """All elements of W(R) x| Gamma with lexicographically minimal reduced words, by (length, word, gamma)."""
    out = [datum.element(w, g) for g in range(len(datum.gammas)) for w in range(len(datum.weyl))]
    out.sort(key=lambda e: (e.length, e.reduced_word, e.gamma_part))
    return out


def det_character(w) -> int:
    m = w.matrix if isinstance(w, WeylElement) else w
    return lat.det(m)


def is_coroot_two_divisible(datum: BasedRootDatum, root_index: int) -> bool:
    """True iff the coroot lies in 2Y.  ``root_index`` indexes the simple roots."""
    return all(c % 2 == 0 for c in datum.simple_coroots[root_index])


def root_two_divisible(datum: BasedRootDatum, i: int) -> bool:
    """Same test for an arbitrary root (index into datum.roots)."""
    return all(c % 2 == 0 for c in datum.coroots[i])


def subgroup_order(datum: BasedRootDatum, root_ids) -> int:
    """Order of the reflection group generated by the given roots (brute-force closure)."""
    gens = [datum.weyl_index[datum.reflection_of(i)] for i in root_ids]
    seen = {datum.identity_w}
    frontier = [datum.identity_w]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                p = datum.weyl_mul[w][s]
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return len(seen)


@dataclass
class IsotropyData:
    roots: list                  # R_u: indices into datum.roots
    group: list                  # W_u as (w, g) pairs
    positive_system: list        # R_{u>0}
    gamma_pos: list              # Gamma_{u>0} as (w, g) pairs
    k_values: dict = field(default_factory=dict)
    weyl_pos_order: int = 1
    factorization_holds: bool = True


def root_value(u: TorusPoint, root) -> tuple:
    return u.value(root)


def isotropy_data(datum: BasedRootDatum, u: TorusPoint, labels=None) -> IsotropyData:
    """Isotropy system of a unitary point u.

    ``labels`` maps a root index to (lam, lam_star); default (1, 1).  k_alpha is
    (lam + u(alpha) lam_star)/2 in units of log q, and R_{u>0} collects the roots with k > 0.
    """
    if not u.is_unitary():
        raise DatumError(f"isotropy data needs a unitary point, got {u}")
    if u.rank != datum.rank:
        raise DatumError("point rank differs from datum rank")
    iso = []
    for i, (a, c) in enumerate(zip(datum.roots, datum.coroots)):
        ang, _ = u.value(a)
        # s_a(u) = u iff u(a)^<x, a^vee> = 1 for all x
        if all((ang * cj).denominator == 1 for cj in c):
            iso.append(i)
    group = []
    for w, g in datum.ext_elements():
        if u.act(datum.ext_matrix((w, g))) == u:
            group.append((w, g))
    kv = {}
    pos = []
    for i in iso:
        lam, lam_s = (1, 1) if labels is None else labels(i) if callable(labels) else labels[i]
        ang, _ = u.value(datum.roots[i])
        if ang == 0:
            sign = 1
        elif ang == Fraction(1, 2):
            sign = -1
        else:
            raise DatumError(f"isotropy root {datum.roots[i]} has u-value of angle {ang}")
        k = Fraction(lam + sign * lam_s, 2)
        kv[i] = k
        if k > 0:
            pos.append(i)
    pos_plus = {i for i in pos if datum.positive[i]}
    gamma_pos = []
    for w, g in group:
        m = datum.ext_matrix((w, g))
        if all(datum.root_index[lat.mat_vec(m, datum.roots[i])] in pos_plus for i in pos_plus):
            gamma_pos.append((w, g))
    wpos = subgroup_order(datum, pos)
    holds = len(group) == wpos * len(gamma_pos)
    if not holds:
        raise DatumError(f"|W_u| = {len(group)} but |W(R_u>0)| * |Γ_u>0| = {wpos} * {len(gamma_pos)}")
    return IsotropyData(iso, group, pos, gamma_pos, kv, wpos, holds)

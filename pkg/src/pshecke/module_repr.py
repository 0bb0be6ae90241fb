"""Finite-dimensional modules: principal series, one-dimensional characters, weights,
central characters, det multiplicities and the rank-one classification.

Matrices act on column vectors; entries are ``VRational``.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from . import lattice as lat
from . import linalg as la
from .exact_rings import VLaurent, VRational, TorusPoint
from .root_datum import is_coroot_two_divisible
from .bernstein_hecke import (HeckeAlgebra, HeckeElement,
                              point_with_root_values, det_scalar)


class ModuleError(ValueError):
    pass


# values of v^(1/D) mod p used for irreducibility certificates
_CERT_POINTS = (7, 1234567)


def _r(x: VLaurent) -> VRational:
    return VRational.lift(x)


class FiniteModule:
    """Left module given by matrices for theta_{e_i}, theta_{-e_i}, simple N_s and every J_g."""

    def __init__(self, alg: HeckeAlgebra, theta, theta_inv, N: dict, J: dict, name: str = "",
                 validate: bool = True):
        self.alg = alg
        self.theta = theta
        self.theta_inv = theta_inv
        self.N = N
        self.J = J
        self.name = name
        self.dim = len(theta[0]) if theta else len(N[0]) if N else len(J[0])
        self.one = la.one_of(alg.n, alg.d)
        self._theta_cache = {}
        if validate:
            self.validate()

    # ------------------------------------------------------------ action
    def eye(self):
        return la.eye(self.dim, self.one)

    def theta_matrix(self, x):
        x = tuple(int(a) for a in x)
        hit = self._theta_cache.get(x)
        if hit is not None:
            return hit
        m = self.eye()
        for j, a in enumerate(x):
            base = self.theta[j] if a > 0 else self.theta_inv[j]
            for _ in range(abs(a)):
                m = la.mmul(m, base)
        self._theta_cache[x] = m
        return m

    def N_matrix(self, w: int):
        m = self.eye()
        for i in self.alg.datum.weyl_words[w]:
            m = la.mmul(m, self.N[i])
        return m

    def act(self, h: HeckeElement):
        """Matrix of a Hecke element."""
        if h.alg is not self.alg and not h.alg.same_structure(self.alg):
            raise ModuleError("element from a different algebra")
        out = la.zeros(self.dim, self.dim, self.one)
        for (x, w, g), c in h.terms.items():
            m = la.mmul(la.mmul(self.theta_matrix(x), self.N_matrix(w)), self.J[g])
            out = la.madd(out, la.mscale(m, _r(c)))
        return out

    def function_matrix(self, f):
        out = la.zeros(self.dim, self.dim, self.one)
        for x, c in f.t.items():
            out = la.madd(out, la.mscale(self.theta_matrix(x), _r(c)))
        return out

    def generator_matrices(self):
        """Named matrices of theta_{e_i}, N_s and the nontrivial J_g."""
        out = [(f"θ{j}", m) for j, m in enumerate(self.theta)]
        out += [(f"N_s{i}", self.N[i]) for i in sorted(self.N)]
        out += [(f"J_{g}", self.J[g]) for g in sorted(self.J) if g]
        return out

    # ------------------------------------------------------------ relations
    def relation_failures(self):
        alg, dt = self.alg, self.alg.datum
        bad = []
        ident = self.eye()
        r = alg.r
        for j in range(r):
            if not la.meq(la.mmul(self.theta[j], self.theta_inv[j]), ident):
                bad.append(f"theta_e{j} not inverted by theta_-e{j}")
            for k in range(j + 1, r):
                if not la.meq(la.mmul(self.theta[j], self.theta[k]), la.mmul(self.theta[k], self.theta[j])):
                    bad.append(f"theta_e{j}, theta_e{k} do not commute")
        for i in range(dt.n_simple):
            lam = alg.labels[i][0]
            ns = self.N[i]
            quad = la.mmul(la.msub(ns, la.mscale(ident, _r(alg.v(lam)))),
                           la.madd(ns, la.mscale(ident, _r(alg.v(-lam)))))
            if not la.is_zero(quad):
                bad.append(f"quadratic relation fails for N_s{i}")
            s = dt.reflections[i]
            for j in range(r):
                e = tuple(int(j == k) for k in range(r))
                se = tuple(lat.mat_vec(s, e))
                lhs = la.msub(la.mmul(ns, self.theta_matrix(e)), la.mmul(self.theta_matrix(se), ns))
                rhs = self.function_matrix(alg.cross_term(i, e))
                if not la.meq(lhs, rhs):
                    bad.append(f"cross relation fails for N_s{i}, e{j}")
        for i in range(dt.n_simple):
            for j in range(i + 1, dt.n_simple):
                m = _braid_order(dt, i, j)
                a, b = self.eye(), self.eye()
                for k in range(m):
                    a = la.mmul(a, self.N[(i, j)[k % 2]])
                    b = la.mmul(b, self.N[(j, i)[k % 2]])
                if not la.meq(a, b):
                    bad.append(f"braid relation fails for s{i}, s{j}")
        if not la.meq(self.J[0], ident):
            bad.append("J_1 is not the identity")
        for g in range(len(dt.gammas)):
            for h in range(len(dt.gammas)):
                if not la.meq(la.mmul(self.J[g], self.J[h]), self.J[dt.gamma_mul[g][h]]):
                    bad.append(f"J_{g} J_{h} != J_{dt.gamma_mul[g][h]}")
            if not g:
                continue
            gm = dt.gammas[g]
            for j in range(r):
                e = tuple(int(j == k) for k in range(r))
                if not la.meq(la.mmul(self.J[g], self.theta_matrix(e)),
                              la.mmul(self.theta_matrix(lat.mat_vec(gm, e)), self.J[g])):
                    bad.append(f"J_{g} theta_e{j} relation fails")
            for i, pi in enumerate(dt.gamma_perm[g]):
                if not la.meq(la.mmul(self.J[g], self.N[i]), la.mmul(self.N[pi], self.J[g])):
                    bad.append(f"J_{g} N_s{i} relation fails")
        return bad

    def validate(self):
        bad = self.relation_failures()
        if bad:
            raise ModuleError(f"module {self.name or '?'} violates relations: " + "; ".join(bad))
        return self

    # ------------------------------------------------------------ sub and quotient
    def _map_all(self, fn):
        return ([fn(m) for m in self.theta], [fn(m) for m in self.theta_inv],
                {i: fn(m) for i, m in self.N.items()}, {g: fn(m) for g, m in self.J.items()})

    def submodule(self, cols, name=""):
        th, thi, n, j = self._map_all(lambda m: la.restrict(m, cols))
        return FiniteModule(self.alg, th, thi, n, j, name, validate=False)

    def quotient(self, cols, name=""):
        th, thi, n, j = self._map_all(lambda m: la.quotient_action(m, cols, self.dim)[0])
        return FiniteModule(self.alg, th, thi, n, j, name, validate=False)

    def transposed(self):
        """Matrices transposed: a module for the opposite algebra, used to find 1-dim quotients."""
        th, thi, n, j = self._map_all(la.transpose)
        return FiniteModule(self.alg, th, thi, n, j, self.name + "^T", validate=False)

    def scalars(self):
        """For a 1-dim module: (theta values, N values, J values)."""
        if self.dim != 1:
            raise ModuleError("scalars() needs a one-dimensional module")
        return ([m[0][0] for m in self.theta], {i: m[0][0] for i, m in self.N.items()},
                {g: m[0][0] for g, m in self.J.items()})

    def same_character(self, other: "FiniteModule") -> bool:
        return self.dim == other.dim == 1 and self.scalars() == other.scalars()


def _braid_order(dt, i, j) -> int:
    """Order m of s_i s_j; the braid relation has m factors on each side."""
    st = dt.weyl_mul[dt.simple_w[i]][dt.simple_w[j]]
    w, m = st, 1
    while w != dt.identity_w:
        w = dt.weyl_mul[w][st]
        m += 1
    return m


# ---------------------------------------------------------------- constructors

def principal_series_module(H: HeckeAlgebra, t: TorusPoint, validate: bool = True) -> FiniteModule:
    """H tensor_O C_t with basis N_w J_g (x) 1 indexed by the extended Weyl group.

    h . N_w J_g (x) 1 is rewritten with thetas on the right through the anti-involution
    psi: the left canonical form of psi(h N_w J_g) = J_{g^-1} N_{w^-1} psi(h) is mapped back
    term by term, so each theta lands next to the tensor sign and evaluates at t.
    """
    dt = H.datum
    if t.rank != H.r or (t.n, t.d) != (H.n, H.d):
        raise ModuleError("torus point does not match the algebra")
    basis = dt.ext_elements()
    index = {b: k for k, b in enumerate(basis)}
    size = len(basis)
    one = la.one_of(H.n, H.d)

    def matrix_of(psi_h):
        m = la.zeros(size, size, one)
        for k, (w, g) in enumerate(basis):
            e = H.J(dt.gamma_inv[g]) * H.N(dt.weyl_inv[w]) * psi_h
            for (x, u, gam), c in e.terms.items():
                gi = dt.gamma_inv[gam]
                target = (dt.gamma_conj[gi][dt.weyl_inv[u]], gi)
                row = index[target]
                m[row][k] = m[row][k] + _r(c * t.scalar(x))
        return m

    r = H.r
    theta = [matrix_of(H.theta(tuple(int(i == j) for j in range(r)))) for i in range(r)]
    theta_inv = [matrix_of(H.theta(tuple(-int(i == j) for j in range(r)))) for i in range(r)]
    N = {i: matrix_of(H.Ns(i)) for i in range(dt.n_simple)}
    J = {g: matrix_of(H.J(dt.gamma_inv[g])) for g in range(len(dt.gammas))}
    return FiniteModule(H, theta, theta_inv, N, J, name=f"M({t})", validate=validate)


def character_module(H: HeckeAlgebra, t: TorusPoint, n_values: dict, j_values: dict = None,
                     name: str = "") -> FiniteModule:
    """One-dimensional module: theta_x -> t(x), N_s -> n_values[s], J_g -> j_values[g] (default 1)."""
    r = H.r
    one = la.one_of(H.n, H.d)
    theta = [[[_r(t.scalar(tuple(int(i == j) for j in range(r))))]] for i in range(r)]
    theta_inv = [[[_r(t.scalar(tuple(-int(i == j) for j in range(r))))]] for i in range(r)]
    N = {i: [[_r(n_values[i])]] for i in range(H.datum.n_simple)}
    jv = j_values or {}
    J = {g: [[la.lift(jv.get(g, 1), one)]] for g in range(len(H.datum.gammas))}
    return FiniteModule(H, theta, theta_inv, N, J, name=name)


def one_dim_characters(H: HeckeAlgebra, include_st_minus: bool = None) -> dict:
    """triv, St, det (St on the finite part, det on Gamma) and, in rank one with lam != lam*, St-.

    Returned as an ordered dict name -> module.  Asking for St- when lam = lam* raises.
    """
    dt = H.datum
    ns = dt.n_simple
    triv_pt = point_with_root_values(dt, [(0, Fraction(sum(H.labels[i]))) for i in range(ns)], H.n, H.d)
    st_pt = H.steinberg_point()
    up = {i: H.v(H.labels[i][0]) for i in range(ns)}
    down = {i: -H.v(-H.labels[i][0]) for i in range(ns)}
    dets = {g: lat.det(dt.gammas[g]) for g in range(len(dt.gammas))}
    out = {
        "triv": character_module(H, triv_pt, up, name="triv"),
        "St": character_module(H, st_pt, down, name="St"),
        "det": character_module(H, st_pt, down, dets, name="det"),
    }
    if include_st_minus is None:
        include_st_minus = ns == 1 and H.labels[0][0] != H.labels[0][1]
    if include_st_minus:
        out["St-"] = st_minus(H)
    return out


def st_minus(H: HeckeAlgebra) -> FiniteModule:
    dt = H.datum
    if dt.n_simple != 1:
        raise ModuleError("St- is defined for rank-one data")
    lam, lam_s = H.labels[0]
    if lam == lam_s:
        raise ModuleError("St- needs lam != lam*")
    pt = point_with_root_values(dt, [(Fraction(1, 2), -Fraction(lam - lam_s))], H.n, H.d)
    return character_module(H, pt, {0: -H.v(-lam)}, name="St-")


# ---------------------------------------------------------------- invariants

def det_multiplicity(M: FiniteModule) -> int:
    alg, dt = M.alg, M.alg.datum
    ident = M.eye()
    rows = []
    for i in range(dt.n_simple):
        rows += la.madd(M.N[i], la.mscale(ident, _r(alg.v(-alg.labels[i][0]))))
    for g in range(1, len(dt.gammas)):
        rows += la.msub(M.J[g], la.mscale(ident, la.lift(lat.det(dt.gammas[g]), M.one)))
    if not rows:
        return M.dim
    return M.dim - la.rank(rows)


def _eigen_to_point_coord(mu: VLaurent):
    (k, c), = mu.t.items()
    a = c.root_exponent()
    if a is None:
        raise ModuleError(f"eigenvalue {mu} is not a root of unity times a power of v")
    return Fraction(a, mu.n), Fraction(k, mu.d)


def weights(M: FiniteModule):
    """Generalized joint eigenvalues of the theta-action: list of (TorusPoint, multiplicity)."""
    alg = M.alg
    ident_cols = [list(c) for c in zip(*M.eye())]
    spaces = [(ident_cols, ())]
    for a in M.theta:
        nxt = []
        for cols, vals in spaces:
            c = la.restrict(a, cols)
            k = len(cols)
            roots = la.monomial_roots(la.charpoly(c))
            for mu in _distinct(roots):
                mult = sum(1 for x in roots if x == mu)
                shifted = la.msub(c, la.mscale(la.eye(k, M.one), _r(mu)))
                p = la.eye(k, M.one)
                for _ in range(mult):
                    p = la.mmul(p, shifted)
                kern = la.nullspace(p)
                big = [la.mvec(la.columns_to_matrix(cols), v) for v in kern]
                nxt.append((big, vals + (mu,)))
        spaces = nxt
    out = []
    for cols, vals in spaces:
        coords = [_eigen_to_point_coord(mu) for mu in vals]
        pt = TorusPoint([a for a, _ in coords], [b for _, b in coords], alg.n, alg.d)
        out.append((pt, len(cols)))
    return sorted(out, key=lambda pm: pm[0].key())


def _distinct(xs):
    out = []
    for x in xs:
        if not any(x == y for y in out):
            out.append(x)
    return out


def orbit(H: HeckeAlgebra, t: TorusPoint):
    dt = H.datum
    return sorted({t.act(dt.ext_matrix(k)) for k in dt.ext_elements()}, key=lambda p: p.key())


def central_character(M: FiniteModule):
    """The W x| Gamma-orbit carrying every weight of M (sorted list of points)."""
    ws = weights(M)
    blocks = []
    for pt, mult in ws:
        for b in blocks:
            if pt in b["orbit"]:
                b["dim"] += mult
                break
        else:
            blocks.append({"orbit": set(orbit(M.alg, pt)), "dim": mult, "rep": pt})
    if len(blocks) != 1:
        desc = "; ".join(f"orbit of {b['rep']} (dim {b['dim']})" for b in blocks)
        raise ModuleError(f"module has {len(blocks)} central characters: {desc}")
    return sorted(blocks[0]["orbit"], key=lambda p: p.key())


def same_orbit(H: HeckeAlgebra, a: TorusPoint, b: TorusPoint) -> bool:
    return b in set(orbit(H, a))


# ---------------------------------------------------------------- decomposition

def certify_irreducible(M: FiniteModule) -> bool:
    """Burnside test: the image of the algebra is the full matrix algebra.

    The span is computed after reduction mod p; ranks can only drop under reduction, so a
    full span certifies absolute irreducibility over Q(zeta)(v).  False means "not certified".
    """
    if M.dim == 1:
        return True
    mats = [m for _, m in M.generator_matrices()] + list(M.theta_inv)
    for w0 in _CERT_POINTS:
        red = la.ModularMap(M.alg.n, M.alg.d, w0)
        try:
            reduced = [red.matrix(m) for m in mats]
        except ZeroDivisionError:
            continue
        if la.algebra_span_dim(reduced, M.dim, red.p) == M.dim * M.dim:
            return True
    return False


def common_eigenvectors(M: FiniteModule):
    """All one-dimensional submodules, grouped by character: list of (character module, basis)."""
    alg, dt = M.alg, M.alg.datum
    ident = M.eye()
    found = []
    j_choices = {}
    for g in range(1, len(dt.gammas)):
        j_choices[g] = _distinct(la.monomial_roots(la.charpoly(M.J[g])))
    for pt, _ in weights(M):
        rows_t = []
        for j, a in enumerate(M.theta):
            rows_t += la.msub(a, la.mscale(ident, _r(pt.scalar(tuple(int(i == j) for i in range(alg.r))))))
        if len(la.nullspace(rows_t)) == 0:
            continue
        for nvals in _product([[alg.v(alg.labels[i][0]), -alg.v(-alg.labels[i][0])] for i in range(dt.n_simple)]):
            rows_n = list(rows_t)
            for i, c in enumerate(nvals):
                rows_n += la.msub(M.N[i], la.mscale(ident, _r(c)))
            if len(la.nullspace(rows_n)) == 0:
                continue
            gs = sorted(j_choices)
            for jvals in _product([j_choices[g] for g in gs]):
                rows = list(rows_n)
                for g, c in zip(gs, jvals):
                    rows += la.msub(M.J[g], la.mscale(ident, _r(c)))
                kern = la.nullspace(rows)
                if kern:
                    jv = {0: 1}
                    jv.update(dict(zip(gs, jvals)))
                    found.append((pt, dict(enumerate(nvals)), jv, kern))
    out = []
    for pt, nv, jv, kern in found:
        jfull = {g: jv.get(g, 1) for g in range(len(dt.gammas))}
        out.append((character_module(alg, pt, nv, jfull), kern))
    return out


def _product(lists):
    out = [()]
    for l in lists:
        out = [p + (x,) for p in out for x in l]
    return out


@dataclass
class Constituent:
    module: FiniteModule
    name: str
    irreducible: bool
    det_mult: int


@dataclass
class Decomposition:
    constituents: list
    semisimple: bool
    complete: bool
    notes: list = field(default_factory=list)


def name_character(M: FiniteModule, named: dict) -> str:
    for nm, ch in named.items():
        if M.same_character(ch):
            return nm
    if M.dim == 1:
        alg = M.alg
        nv = M.scalars()[1]
        if all(nv[i] == -alg.v(-alg.labels[i][0]) for i in nv):
            return "St-type"
        if all(nv[i] == alg.v(alg.labels[i][0]) for i in nv):
            return "triv-type"
        return "chi[" + ",".join(str(x) for x in nv.values()) + "]"
    return f"dim{M.dim}"


def decompose(M: FiniteModule, named: dict = None) -> Decomposition:
    """Composition factors by peeling off one-dimensional submodules.

    Blocks of dimension > 1 are kept when the irreducibility certificate succeeds and
    reported as "not decomposed" otherwise.
    """
    named = named or {}
    if certify_irreducible(M):
        return Decomposition([Constituent(M, name_character(M, named), True, det_multiplicity(M))], True, True)
    subs = common_eigenvectors(M)
    span = [v for _, kern in subs for v in kern]
    semisimple = bool(span) and la.rank(la.transpose(la.columns_to_matrix(span))) == M.dim \
        and sum(len(k) for _, k in subs) == M.dim
    if semisimple:
        cons = [Constituent(ch, name_character(ch, named), True, det_multiplicity(ch))
                for ch, kern in subs for _ in kern]
        return Decomposition(cons, True, True)
    if subs:
        ch, kern = subs[0]
        head = Constituent(ch, name_character(ch, named), True, det_multiplicity(ch))
        rest = decompose(M.quotient([kern[0]]), named)
        return Decomposition([head] + rest.constituents, False, rest.complete, rest.notes)
    quots = common_eigenvectors(M.transposed())
    if quots:
        ch, kern = quots[0]
        # the functional kern[0] (a row vector) is a module map onto ch; its kernel is a submodule
        sub = la.nullspace([kern[0]])
        tail = Constituent(ch, name_character(ch, named), True, det_multiplicity(ch))
        rest = decompose(M.submodule(sub), named)
        return Decomposition(rest.constituents + [tail], False, rest.complete, rest.notes)
    return Decomposition([Constituent(M, name_character(M, named), False, det_multiplicity(M))],
                         False, False, ["not decomposed"])


# ---------------------------------------------------------------- rank one

@dataclass
class Rank1Row:
    case: str
    point: TorusPoint
    constituents: list            # (name, dim, det multiplicity)
    semisimple: bool
    central_character: list


def rank1_classify(H: HeckeAlgebra):
    """Cases at the Steinberg point, the St- point (lam != lam*) and the order-two point t-
    (two-divisible coroot, lam = lam*)."""
    dt = H.datum
    if dt.n_simple != 1:
        raise ModuleError("rank1_classify needs a rank-one root system")
    lam, lam_s = H.labels[0]
    named = one_dim_characters(H)
    rows = []

    def row(case, pt):
        m = principal_series_module(H, pt)
        dec = decompose(m, named)
        cons = [(c.name, c.module.dim, c.det_mult) for c in dec.constituents]
        rows.append(Rank1Row(case, pt, cons, dec.semisimple, central_character(m)))

    row("a", H.steinberg_point())
    if lam != lam_s:
        row("b", _point_of(named["St-"]))
    if is_coroot_two_divisible(dt, 0) and lam == lam_s:
        row("c", point_with_root_values(dt, [(Fraction(1, 2), 0)], H.n, H.d))
    return rows


def _point_of(ch: FiniteModule) -> TorusPoint:
    vals = [_eigen_to_point_coord(x.as_laurent()) for x in ch.scalars()[0]]
    return TorusPoint([a for a, _ in vals], [b for _, b in vals], ch.alg.n, ch.alg.d)


def det_is_whittaker_consistent(H: HeckeAlgebra) -> bool:
    """det character values agree with det_scalar on every group element."""
    ch = one_dim_characters(H)["det"]
    dt = H.datum
    for (w, g) in dt.ext_elements():
        m = la.mmul(ch.N_matrix(w), ch.J[g])
        if m[0][0] != _r(det_scalar(H, w, g)):
            return False
    return True

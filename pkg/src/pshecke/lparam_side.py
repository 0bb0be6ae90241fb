"""Principal-series L-parameters in matrix dual groups (GL_n, SL_n, products of GL).

A parameter is (s_I, f_F, y): the image of tame inertia and of Frobenius as diagonal torus
points, and a nilpotent y commuting with both.  With h the Jacobson-Morozov coweight of y,
normalized so that [h, y] = -2y, the infinitesimal point is t~ = f_F v^h and then
Ad(t~) y = q^-1 y.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from . import lattice as lat
from . import linalg as la
from .exact_rings import Cyclo, VRational, VLaurent, TorusPoint, DEFAULT_N, DEFAULT_D
from .root_datum import BasedRootDatum
from .bernstein_hecke import HeckeAlgebra
from . import module_repr as mr


class LParamError(ValueError):
    pass


UNSUPPORTED = "unsupported"
Q_INV = (Fraction(0), Fraction(-2))      # q^-1 = v^-2 as (angle, v-exponent)
ONE = (Fraction(0), Fraction(0))


@dataclass
class MatrixDualGroup:
    """Diagonal torus of GL_n, SL_n or a block-diagonal product of GL's."""
    kind: str
    blocks: tuple                       # block sizes; a single block for GL and SL
    n: int = DEFAULT_N
    d: int = DEFAULT_D

    def __post_init__(self):
        if self.kind not in ("GL", "SL", "product-of-GL"):
            raise LParamError(f"unknown dual group kind {self.kind!r}")
        self.blocks = tuple(int(b) for b in self.blocks)
        if self.kind != "product-of-GL" and len(self.blocks) != 1:
            raise LParamError(f"{self.kind} takes a single block")

    @property
    def size(self) -> int:
        return sum(self.blocks)

    def block_of(self, i: int) -> int:
        acc = 0
        for k, b in enumerate(self.blocks):
            acc += b
            if i < acc:
                return k
        raise LParamError(f"index {i} outside the matrix")

    def root_positions(self):
        """Off-diagonal (i, j) inside a block."""
        m = self.size
        return [(i, j) for i in range(m) for j in range(m)
                if i != j and self.block_of(i) == self.block_of(j)]

    def datum(self) -> BasedRootDatum:
        """Root datum of the torus with roots e_i - e_{i+1} inside each block."""
        m = self.size
        if self.kind == "SL":
            raise LParamError("the SL kind has no Hecke-side datum here; use GL")
        simple = []
        for i in range(m - 1):
            if self.block_of(i) == self.block_of(i + 1):
                simple.append(tuple(int(k == i) - int(k == i + 1) for k in range(m)))
        return BasedRootDatum(simple, simple, name=f"{self.kind}{list(self.blocks)}")

    def check_point(self, t: TorusPoint, what: str):
        if t.rank != self.size:
            raise LParamError(f"{what} has rank {t.rank}, expected {self.size}")
        if self.kind == "SL":
            a, b = t.value((1,) * self.size)
            if a or b:
                raise LParamError(f"{what} does not have determinant 1")

    def is_central(self, z: TorusPoint) -> bool:
        for k, b in enumerate(self.blocks):
            start = sum(self.blocks[:k])
            vals = {(z.angles[i], z.vexps[i]) for i in range(start, start + b)}
            if len(vals) > 1:
                return False
        return True


def _cyclo(x, n: int) -> Cyclo:
    return x if isinstance(x, Cyclo) else Cyclo.rational(Fraction(str(x)) if isinstance(x, str) else x, n)


@dataclass
class PSParameter:
    group: MatrixDualGroup
    s_I: TorusPoint
    f_F: TorusPoint
    y: dict = field(default_factory=dict)       # (i, j) -> Cyclo
    enhancement: str = "trivial"
    name: str = ""

    def __post_init__(self):
        g = self.group
        g.check_point(self.s_I, "s_I")
        g.check_point(self.f_F, "f_F")
        if not self.s_I.is_unitary():
            raise LParamError("s_I must have finite order (zero v-part)")
        self.y = {(int(i), int(j)): _cyclo(c, g.n) for (i, j), c in self.y.items() if c}
        roots = set(g.root_positions())
        for (i, j) in self.y:
            if (i, j) not in roots:
                raise LParamError(f"y has an entry at {(i, j)} outside the root spaces")
            e = _root(g.size, i, j)
            if self.s_I.value(e) != ONE:
                raise LParamError(f"Ad(s_I) does not fix y at {(i, j)}")
            if self.f_F.value(e) != ONE:
                raise LParamError(f"Ad(f_F) does not fix y at {(i, j)}")
        if self.enhancement != "trivial" and not self.enhancement.startswith("labeled:"):
            raise LParamError(f"unsupported enhancement {self.enhancement!r}")

    def to_json(self):
        return {"name": self.name, "s_I": self.s_I.to_json(), "f_F": self.f_F.to_json(),
                "y": [[i, j, str(c)] for (i, j), c in sorted(self.y.items())],
                "enhancement": self.enhancement}

    @staticmethod
    def from_json(group: MatrixDualGroup, d: dict) -> "PSParameter":
        m = group.size
        s_I = TorusPoint.from_json(d["s_I"], group.n, group.d) if "s_I" in d else TorusPoint.one(m, group.n, group.d)
        f_F = TorusPoint.from_json(d["f_F"], group.n, group.d)
        y = {(int(i), int(j)): Fraction(str(c)) for i, j, c in d.get("y", [])}
        return PSParameter(group, s_I, f_F, y, d.get("enhancement", "trivial"), d.get("name", ""))


def _root(m: int, i: int, j: int):
    return tuple(int(k == i) - int(k == j) for k in range(m))


# ---------------------------------------------------------------- Jacobson-Morozov

def jordan_chains(p: PSParameter):
    """Chains b_1 <- b_2 <- ... <- b_k (y e_{b_{j+1}} is a multiple of e_{b_j}).

    Requires y in chain form: at most one nonzero entry per row and per column.
    """
    m = p.group.size
    rows, cols = {}, {}
    for (i, j) in p.y:
        if i in rows or j in cols:
            raise LParamError("y is not in chain form (two entries in a row or column)")
        rows[i] = j
        cols[j] = i
    chains = []
    seen = set()
    # b_1 is killed by y (not a column index); y e_{rows[b]} is a multiple of e_b
    for b1 in range(m):
        if b1 in cols:
            continue
        chain = [b1]
        cur = b1
        while cur in rows:
            cur = rows[cur]
            chain.append(cur)
            if cur in seen or len(chain) > m:
                raise LParamError("y is not nilpotent")
        seen.update(chain)
        chains.append(chain)
    if len(seen) != m:
        raise LParamError("y is not nilpotent")
    return chains


def jm_coweight(p: PSParameter) -> tuple:
    """h with [h, y] = -2y: on a chain of length k, b_1 gets -(k-1), ..., b_k gets k-1."""
    h = [0] * p.group.size
    for chain in jordan_chains(p):
        k = len(chain)
        for pos, b in enumerate(chain):
            h[b] = -(k - 1) + 2 * pos
    return tuple(h)


def partition(p: PSParameter) -> tuple:
    return tuple(sorted((len(c) for c in jordan_chains(p)), reverse=True))


def infinitesimal_point(p: PSParameter) -> TorusPoint:
    h = jm_coweight(p)
    f = p.f_F
    return TorusPoint(f.angles, [b + c for b, c in zip(f.vexps, h)], f.n, f.d)


# ---------------------------------------------------------------- eigenspaces and orbits

def q_eigenspace(p: PSParameter):
    """Root positions (i, j) spanning {Y in Lie Z(s_I) : Ad(t~) Y = q^-1 Y}."""
    t = infinitesimal_point(p)
    m = p.group.size
    out = []
    for (i, j) in p.group.root_positions():
        e = _root(m, i, j)
        if p.s_I.value(e) == ONE and t.value(e) == Q_INV:
            out.append((i, j))
    return out


def centralizer_basis(p: PSParameter, points):
    """Basis of {Z : Ad(t) Z = Z for t in points}: diagonal units and root positions."""
    m = p.group.size
    basis = [("diag", i) for i in range(m)]
    for (i, j) in p.group.root_positions():
        e = _root(m, i, j)
        if all(t.value(e) == ONE for t in points):
            basis.append((i, j))
    return basis


def _bracket(z, y: dict, m: int, n: int) -> dict:
    """[Z, y] for a basis element Z (a diagonal unit or an elementary matrix)."""
    out = {}

    def add(k, c):
        s = out.get(k)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    if z[0] == "diag":
        i = z[1]
        for (a, b), c in y.items():
            if a == i:
                add((a, b), c)
            if b == i:
                add((a, b), -c)
        return out
    i, j = z
    for (a, b), c in y.items():
        if j == a:
            add((i, b), c)          # E_ij y
        if b == i:
            add((a, j), -c)         # - y E_ij
    return out


def orbit_dimension(p: PSParameter) -> int:
    """Rank of Z -> [Z, y] on Lie Z(s_I, t~)."""
    t = infinitesimal_point(p)
    m = p.group.size
    basis = centralizer_basis(p, [p.s_I, t])
    targets = sorted({k for z in basis for k in _bracket(z, p.y, m, p.group.n)})
    if not targets:
        return 0
    one = la.one_of(p.group.n, p.group.d)
    rows = []
    for z in basis:
        br = _bracket(z, p.y, m, p.group.n)
        rows.append([la.lift(VLaurent.const(br[k], p.group.n, p.group.d), one) if k in br
                     else la.zero_of(one) for k in targets])
    return la.rank(rows)


def is_dense_orbit(p: PSParameter) -> bool:
    space = set(q_eigenspace(p))
    outside = [k for k in p.y if k not in space]
    if outside:
        raise LParamError(f"y has entries {outside} outside the q^-1 eigenspace")
    return orbit_dimension(p) == len(space)


# ---------------------------------------------------------------- predicates and twists

def predicates(p: PSParameter) -> dict:
    bounded = not any(p.f_F.vexps)
    if p.group.kind == "SL":
        return {"bounded": bounded, "discrete": UNSUPPORTED}
    t = infinitesimal_point(p)
    m = p.group.size
    basis = centralizer_basis(p, [p.s_I, p.f_F, t])
    dim_c = _kernel_dim(p, basis)
    center_dim = len(p.group.blocks)
    r_s = [_root(m, i, j) for (i, j) in p.group.root_positions() if p.s_I.value(_root(m, i, j)) == ONE]
    rank_ok = lat.rational_rank(r_s) == m - len(p.group.blocks) if r_s else m == len(p.group.blocks)
    return {"bounded": bounded, "discrete": dim_c == center_dim and rank_ok}


def _kernel_dim(p: PSParameter, basis) -> int:
    m = p.group.size
    targets = sorted({k for z in basis for k in _bracket(z, p.y, m, p.group.n)})
    if not targets:
        return len(basis)
    one = la.one_of(p.group.n, p.group.d)
    rows = []
    for z in basis:
        br = _bracket(z, p.y, m, p.group.n)
        rows.append([la.lift(VLaurent.const(br[k], p.group.n, p.group.d), one) if k in br
                     else la.zero_of(one) for k in targets])
    return len(basis) - la.rank(rows)


def twist_parameter(z: TorusPoint, p: PSParameter) -> PSParameter:
    if not p.group.is_central(z):
        raise LParamError(f"twist {z} is not central")
    return PSParameter(p.group, p.s_I, z * p.f_F, dict(p.y), p.enhancement,
                       name=f"{p.name}*z" if p.name else "")


# ---------------------------------------------------------------- Hecke side helpers

def is_tempered(H: HeckeAlgebra, M) -> bool:
    """Casselman criterion: every weight's v-exponent vector is -sum c_i a_i^vee with c_i >= 0."""
    return all(_casselman_point(H, pt) for pt, _ in mr.weights(M))


def _casselman_point(H: HeckeAlgebra, pt: TorusPoint) -> bool:
    dt = H.datum
    b = list(pt.vexps)
    if not dt.simple_coroots:
        return not any(b)
    cols = [list(c) for c in dt.simple_coroots]
    rows = [list(r) for r in zip(*cols)]          # b = sum c_i a_i^vee
    sol = lat.solve_rational(rows, b)
    if sol is None:
        return False
    return all(c <= 0 for c in sol)


def unitary_weights(M) -> bool:
    return all(pt.is_unitary() for pt, _ in mr.weights(M))


def twist_module(M, z: TorusPoint):
    """Module with theta_x acting by z(x) M(theta_x); weights are multiplied by z."""
    H = M.alg
    r = H.r
    th = [la.mscale(m, VRational.lift(z.scalar(tuple(int(i == j) for j in range(r)))))
          for i, m in enumerate(M.theta)]
    thi = [la.mscale(m, VRational.lift(z.scalar(tuple(-int(i == j) for j in range(r)))))
           for i, m in enumerate(M.theta_inv)]
    return mr.FiniteModule(H, th, thi, dict(M.N), dict(M.J), name=f"{M.name}*z")


def module_signature(M):
    """Isomorphism invariant used for twist comparisons: sorted weights, dim, det multiplicity,
    and the N-eigenvalues for one-dimensional modules."""
    ws = tuple((pt.key(), m) for pt, m in mr.weights(M))
    extra = tuple(str(x) for x in M.scalars()[1].values()) if M.dim == 1 else ()
    return (M.dim, ws, mr.det_multiplicity(M), extra)


# ---------------------------------------------------------------- matching

@dataclass
class MatchRow:
    parameter: str
    t_tilde: TorusPoint
    partition: tuple
    dense: bool
    bounded: bool
    discrete: object
    module: str
    module_dim: int
    det_mult: int
    central_ok: bool
    generic_ok: bool
    tempered: bool
    unitary_weights: bool
    bounded_ok: bool
    twist_ok: object
    status: str                        # "ok", "fail", "unsupported"
    note: str = ""

    def verdict(self) -> bool:
        return self.status != "fail"


@dataclass
class GLBlock:
    group: MatrixDualGroup
    alg: HeckeAlgebra
    parameters: list
    twists: list


def gl_block(kind: str, blocks, parameters, twists=(), n=DEFAULT_N, d=DEFAULT_D) -> GLBlock:
    g = MatrixDualGroup(kind, tuple(blocks), n, d)
    dt = g.datum()
    H = HeckeAlgebra(dt, {i: (1, 1) for i in range(dt.n_simple)}, n=n, d=d, name=dt.name)
    params = [p if isinstance(p, PSParameter) else PSParameter.from_json(g, p) for p in parameters]
    tw = [z if isinstance(z, TorusPoint) else TorusPoint.from_json(z, n, d) for z in twists]
    return GLBlock(g, H, params, tw)


def _candidate(H: HeckeAlgebra, t: TorusPoint, want_generic: bool):
    """(module, note) for the constituent of M(t) with the wanted genericity, or (None, reason)."""
    M = mr.principal_series_module(H, t)
    dec = mr.decompose(M, mr.one_dim_characters(H))
    known = [c for c in dec.constituents if c.irreducible]
    hits = [c for c in known if (c.det_mult == 1) == want_generic]
    if len(dec.constituents) == 1 and known:
        c = known[0]
        return (c, "irreducible principal series") if (c.det_mult == 1) == want_generic else (None, "genericity mismatch")
    if len(hits) == 1 and (want_generic or dec.complete):
        return hits[0], "" if dec.complete else "located by genericity"
    if not dec.complete:
        return None, "principal series not decomposed"
    return None, f"{len(hits)} candidate constituents"


def match_parameter(blk: GLBlock, p: PSParameter) -> MatchRow:
    H = blk.alg
    t = infinitesimal_point(p)
    dense = is_dense_orbit(p)
    pred = predicates(p)
    part = partition(p)
    if p.enhancement != "trivial":
        return MatchRow(p.name, t, part, dense, pred["bounded"], pred["discrete"], "", 0, 0,
                        False, False, False, False, False, None, UNSUPPORTED, "enhancement unsupported")
    want = dense
    c, note = _candidate(H, t, want)
    if c is None:
        return MatchRow(p.name, t, part, dense, pred["bounded"], pred["discrete"], "", 0, 0,
                        False, False, False, False, False, None, UNSUPPORTED, note)
    M = c.module
    orb = set(mr.orbit(H, t))
    central_ok = all(pt in orb for pt, _ in mr.weights(M))
    generic_ok = (c.det_mult == 1) == (dense and p.enhancement == "trivial")
    temp = is_tempered(H, M)
    unit = unitary_weights(M)
    bounded_ok = temp == pred["bounded"]
    twist_ok = True
    for z in blk.twists:
        pz = twist_parameter(z, p)
        cz, _ = _candidate(H, infinitesimal_point(pz), is_dense_orbit(pz))
        twist_ok = twist_ok and cz is not None and \
            module_signature(cz.module) == module_signature(twist_module(M, z))
    ok = central_ok and generic_ok and bounded_ok and twist_ok
    return MatchRow(p.name, t, part, dense, pred["bounded"], pred["discrete"], c.name, M.dim,
                    c.det_mult, central_ok, generic_ok, temp, unit, bounded_ok, twist_ok,
                    "ok" if ok else "fail", note)


def match_bijection(blk: GLBlock):
    rows = [match_parameter(blk, p) for p in blk.parameters]
    seen = {}
    for r in rows:
        if r.status == "ok":
            key = (tuple(sorted(pt.key() for pt in mr.orbit(blk.alg, r.t_tilde))), r.module, r.det_mult)
            if key in seen:
                r.status = "fail"
                r.note = f"module already paired with {seen[key]}"
            else:
                seen[key] = r.parameter
    return rows

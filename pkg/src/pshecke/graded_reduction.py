"""Reduction data at a unitary point u: k-parameters, the subsystem R_{u>0}, equal-parameter
rescaling and the exponential map on weights.

k-values are exact rationals in units of log q.  Graded weights sigma are vectors in the
rational cocharacter space, measured in units of log v, so exp_u(sigma)(x) = u(x) v^<sigma, x>.
"""
from dataclasses import dataclass
from fractions import Fraction

from . import lattice as lat
from .exact_rings import TorusPoint
from .root_datum import isotropy_data, BasedRootDatum
from .bernstein_hecke import HeckeAlgebra


class GradedError(ValueError):
    pass


@dataclass
class GradedParams:
    u: TorusPoint
    roots: list               # isotropy system R_u (indices into datum.roots)
    k_values: dict            # root index -> Fraction
    positive_system: list     # R_{u>0}
    simple_system: list       # simple roots of R_{u>0} for the positive roots of the datum
    gamma_pos: list
    group_order: int          # |W_u|
    weyl_pos_order: int       # |W(R_{u>0})|
    factorization_holds: bool
    datum: BasedRootDatum = None

    def k_table(self):
        dt = self.datum
        return [(dt.roots[i], self.k_values[i]) for i in sorted(self.k_values, key=lambda i: dt.roots[i])]

    def to_json(self):
        dt = self.datum
        return {
            "u": self.u.to_json(),
            "isotropy_roots": [list(dt.roots[i]) for i in sorted(self.roots, key=lambda i: dt.roots[i])],
            "k": [[list(a), str(k)] for a, k in self.k_table()],
            "positive_subsystem": sorted(list(dt.roots[i]) for i in self.positive_system),
            "order_W_u": self.group_order,
            "order_W_pos": self.weyl_pos_order,
            "order_Gamma_pos": len(self.gamma_pos),
            "factorization_holds": self.factorization_holds,
        }


def k_parameters(H: HeckeAlgebra, u: TorusPoint) -> GradedParams:
    if not u.is_unitary():
        raise GradedError(f"k_parameters needs a unitary point, got {u}")
    dt = H.datum
    iso = isotropy_data(dt, u, labels=H.root_labels)
    return GradedParams(u, iso.roots, iso.k_values, iso.positive_system,
                        simple_subsystem(dt, iso.positive_system), iso.gamma_pos, len(iso.group),
                        iso.weyl_pos_order, iso.factorization_holds, dt)


def simple_subsystem(dt: BasedRootDatum, root_ids) -> list:
    """Positive roots of the subsystem that are not sums of two positive subsystem roots."""
    pos = [i for i in root_ids if dt.positive[i]]
    vecs = {tuple(dt.roots[i]) for i in pos}
    out = []
    for i in pos:
        a = tuple(dt.roots[i])
        if not any(tuple(lat.vsub(a, dt.roots[j])) in vecs for j in pos if j != i):
            out.append(i)
    return sorted(out, key=lambda i: dt.roots[i])


@dataclass
class RescaledRoot:
    index: int
    scale: Fraction
    root: tuple
    coroot: tuple


def equal_parameter_form(gp: GradedParams):
    """Rescale each root of R_{u>0} by its k-value so every rescaled root carries parameter 1 * log q.

    The rescaled set must be stable under its own reflections and give the same reflections;
    otherwise the labels are inconsistent and a GradedError is raised.
    """
    dt = gp.datum
    out = []
    for i in sorted(gp.positive_system, key=lambda i: dt.roots[i]):
        k = gp.k_values[i]
        if k <= 0:
            raise GradedError(f"root {dt.roots[i]} in R_u>0 has k = {k}")
        root = tuple(Fraction(a) * k for a in dt.roots[i])
        coroot = tuple(Fraction(c) / k for c in dt.coroots[i])
        out.append(RescaledRoot(i, k, root, coroot))
    vecs = {r.root for r in out}
    for r in out:
        if lat.pair(r.root, r.coroot) != 2:
            raise GradedError(f"rescaled pairing for {dt.roots[r.index]} is not 2")
        for o in out:
            image = tuple(a - lat.pair(o.root, r.coroot) * b for a, b in zip(o.root, r.root))
            if image not in vecs:
                raise GradedError(f"rescaled system not stable: s_{dt.roots[r.index]} moves "
                                  f"{dt.roots[o.index]} outside (inconsistent k-values)")
    return out


def exp_weights(u: TorusPoint, sigma: list) -> list:
    """exp_u(sigma) = u * v^sigma for each rational cocharacter-space vector sigma."""
    out = []
    for s in sigma:
        if len(s) != u.rank:
            raise GradedError("sigma has the wrong length")
        out.append(TorusPoint(u.angles, [Fraction(b) + c for b, c in zip(s, u.vexps)], u.n, u.d))
    return out


def graded_steinberg_weight(gp: GradedParams) -> tuple:
    """Weight sigma of the graded Steinberg character: <sigma, a> = -2 k_a on simple roots of R_{u>0}
    (k in log q, sigma in log v); free coordinates 0."""
    dt = gp.datum
    if not gp.simple_system:
        return tuple(Fraction(0) for _ in range(dt.rank))
    rows = [list(dt.roots[i]) for i in gp.simple_system]
    rhs = [-2 * gp.k_values[i] for i in gp.simple_system]
    sol = lat.solve_rational(rows, rhs)
    if sol is None:
        raise GradedError("no graded Steinberg weight")
    return tuple(sol)


def k_multiset(gp: GradedParams):
    return sorted(gp.k_values.values())

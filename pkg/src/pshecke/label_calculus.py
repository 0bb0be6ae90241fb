"""q-parameter labels (lam, lam*) on both sides of the correspondence.

The p-adic side reads labels off residue degrees and the unitary-group case list; the
Galois side goes through the rescaling integers m_alpha = k * m'_alpha.  The two agree on
every valid input; ``check_label_match`` is the comparison.
"""
from dataclasses import dataclass, asdict
from itertools import product

NONEXCEPTIONAL = "nonexceptional"
EXC_UNRAM_TRIVIAL = "exceptional_unramified_trivial_chi"
EXC_UNRAM_NONTRIVIAL = "exceptional_unramified_nontrivial_chi"
EXC_RAMIFIED = "exceptional_ramified"
CASE_TAGS = (NONEXCEPTIONAL, EXC_UNRAM_TRIVIAL, EXC_UNRAM_NONTRIVIAL, EXC_RAMIFIED)
EXCEPTIONAL = CASE_TAGS[1:]


class LabelDataError(ValueError):
    pass


@dataclass(frozen=True)
class ArithmeticRootData:
    """Per-orbit arithmetic input.

    residue_degree_f  f(F_a/F)
    residue_degree_e  f(E_a/F) for the restriction-of-scalars factor (exceptional cases;
                      defaults to component_count_k otherwise)
    halved            the lattice generator is the square root of a^vee(uniformizer^-1)
    component_count_k number of Frobenius-permuted components
    membership        whether the root survives (unramified / conjugate-symplectic condition)
    """
    residue_degree_f: int = 1
    case_tag: str = NONEXCEPTIONAL
    residue_degree_e: int | None = None
    halved: bool = False
    component_count_k: int = 1
    membership: bool = True

    def validate(self) -> "ArithmeticRootData":
        if self.case_tag not in CASE_TAGS:
            raise LabelDataError(f"unknown case tag {self.case_tag!r}")
        for name in ("residue_degree_f", "component_count_k"):
            if int(getattr(self, name)) < 1:
                raise LabelDataError(f"{name} must be positive")
        f, k = self.residue_degree_f, self.component_count_k
        if self.case_tag == NONEXCEPTIONAL:
            e = self.residue_degree_e if self.residue_degree_e is not None else k
            if e != k:
                raise LabelDataError("f(E/F) must equal the component count")
            if f % k:
                raise LabelDataError(f"component count {k} does not divide f = {f}")
        else:
            e = self.residue_degree_e
            if e is None or e < 1:
                raise LabelDataError(f"{self.case_tag} needs residue_degree_e")
            if e != k:
                raise LabelDataError("f(E/F) must equal the component count")
            expect = e if self.case_tag == EXC_RAMIFIED else 2 * e
            if f != expect:
                raise LabelDataError(f"{self.case_tag}: f(F_a/F) must be {expect}, got {f}")
        return self

    def to_json(self):
        return asdict(self)

    @staticmethod
    def from_json(d: dict) -> "ArithmeticRootData":
        known = {"residue_degree_f", "case_tag", "residue_degree_e", "halved",
                 "component_count_k", "membership"}
        extra = set(d) - known
        if extra:
            raise LabelDataError(f"unknown arithmetic fields {sorted(extra)}")
        return ArithmeticRootData(**d).validate()


@dataclass(frozen=True)
class Labels:
    lam: int
    lam_star: int

    def as_tuple(self):
        return (self.lam, self.lam_star)


def labels_padic(data: ArithmeticRootData):
    """(lam, lam*) on h_a, or None when the root is excluded."""
    data.validate()
    if not data.membership:
        return None
    f = data.residue_degree_f
    tag = data.case_tag
    if tag == NONEXCEPTIONAL:
        return Labels(f, 0) if data.halved else Labels(f, f)
    e = data.residue_degree_e
    # unitary group in three variables, scaled by f(E/F)
    if tag == EXC_UNRAM_TRIVIAL:
        return Labels(3 * e, e)
    if tag == EXC_UNRAM_NONTRIVIAL:
        return Labels(e, e)
    return Labels(e, 0)


def m_prime(data: ArithmeticRootData) -> int:
    data.validate()
    if data.case_tag == NONEXCEPTIONAL:
        # mutually orthogonal orbit: f(F_a/E_a)
        return data.residue_degree_f // data.component_count_k
    if data.case_tag == EXC_RAMIFIED:
        return 1
    return 2


def m_alpha(data: ArithmeticRootData):
    """(m_alpha, m~_alpha as a multiple of a^vee: a Fraction-valued halving flag folded in).

    Returns (m, m_tilde_num, m_tilde_den) with m~ = m_tilde_num / m_tilde_den.
    """
    m = data.component_count_k * m_prime(data)
    halve = data.halved if data.case_tag == NONEXCEPTIONAL else data.case_tag == EXC_RAMIFIED
    if halve:
        return m, m, 2
    return m, m, 1


def labels_galois(data: ArithmeticRootData):
    """(lam, lam*) on m~_a a^vee, or None when excluded."""
    data.validate()
    if not data.membership:
        return None
    m, _, den = m_alpha(data)
    tag = data.case_tag
    if tag == NONEXCEPTIONAL:
        # on m a^vee: (m, m); on m a^vee / 2: (m, 0)
        return Labels(m, 0) if den == 2 else Labels(m, m)
    base = m // m_prime(data)      # f(E/F)
    if tag == EXC_UNRAM_TRIVIAL:
        return Labels(3 * base, base)
    if tag == EXC_UNRAM_NONTRIVIAL:
        return Labels(base, base)
    # conjugate-symplectic ramified case on a^vee / 2
    return Labels(base, 0)


@dataclass
class MatchRow:
    orbit: str
    padic: Labels | None
    galois: Labels | None
    m: int
    match: bool


def check_label_match(data, orbit: str = "0", galois=labels_galois):
    """True iff both sides agree; ``data`` may be one record or a dict orbit -> record.

    Returns (verdict, rows); rows form the diagnostic table.  ``galois`` can be swapped
    for a corrupted variant in negative controls.
    """
    items = data.items() if isinstance(data, dict) else [(orbit, data)]
    rows = []
    for name, d in items:
        p, g = labels_padic(d), galois(d)
        rows.append(MatchRow(str(name), p, g, m_alpha(d)[0], p == g))
    return all(r.match for r in rows), rows


def corrupt(data: ArithmeticRootData) -> Labels | None:
    """Galois labels with lam* flipped (negative control)."""
    g = labels_galois(data)
    if g is None:
        return None
    return Labels(g.lam, 0 if g.lam_star else g.lam)


def case_space(values=(1, 2, 3)):
    """Every combination of tags, f, e, k, halved, membership; yields (data, valid)."""
    for tag, f, e, k, halved, member in product(CASE_TAGS, values, values, values, (False, True), (False, True)):
        d = ArithmeticRootData(f, tag, e, halved, k, member)
        try:
            d.validate()
            yield d, True
        except LabelDataError:
            yield d, False


def label_invariants(lab: Labels, two_divisible: bool) -> bool:
    """lam >= lam* >= 0, and lam* = lam unless the coroot is two-divisible."""
    if not (lab.lam >= lab.lam_star >= 0):
        return False
    return two_divisible or lab.lam == lab.lam_star

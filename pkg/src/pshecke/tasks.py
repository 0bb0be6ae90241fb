"""Task runners: each returns a TaskResult with a verdict and a TSV-ready table."""
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import lattice as lat
from .exact_rings import VLaurent, TorusPoint, TorusFunction, TorusRational, specialize
from .root_datum import is_coroot_two_divisible
from .label_calculus import check_label_match, case_space, labels_padic, labels_galois, corrupt, \
    ArithmeticRootData, EXC_UNRAM_TRIVIAL, EXC_UNRAM_NONTRIVIAL, EXC_RAMIFIED
from .bernstein_hecke import (HeckeAlgebra, HeckeElement, to_localized, comparison_iso,
                              whittaker_action, det_scalar, point_with_root_values)
from . import module_repr as mr
from . import graded_reduction as gr
from . import lparam_side as lp
from .catalog import Case, random_points, random_unitary_points


@dataclass
class TaskResult:
    task: str
    case: str
    verdict: bool
    header: list
    rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def tsv(self) -> str:
        lines = ["\t".join(self.header)]
        lines += ["\t".join(str(c) for c in r) for r in self.rows]
        lines += [f"# {n}" for n in self.notes]
        lines.append(f"# verdict\t{'PASS' if self.verdict else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _flag(b) -> str:
    return "yes" if b is True else "no" if b is False else str(b)


# ---------------------------------------------------------------- verify-presentation

def relation_checks(H: HeckeAlgebra):
    """(relation, generators, holds) for every quadratic, braid, cross and Gamma relation."""
    dt = H.datum
    out = []
    r = H.r
    for i in range(dt.n_simple):
        lam = H.labels[i][0]
        ns = H.Ns(i)
        quad = (ns - H.scalar(H.v(lam))) * (ns + H.scalar(H.v(-lam)))
        out.append(("quadratic", f"s{i}", quad.is_zero()))
    for i in range(dt.n_simple):
        for j in range(i + 1, dt.n_simple):
            m = mr._braid_order(dt, i, j)
            a = H.N([(i, j)[k % 2] for k in range(m)])
            b = H.N([(j, i)[k % 2] for k in range(m)])
            out.append(("braid", f"s{i},s{j}", a == b))
    for i in range(dt.n_simple):
        s = dt.reflections[i]
        for j in range(r):
            for sign in (1, -1):
                x = tuple(sign * int(k == j) for k in range(r))
                sx = tuple(lat.mat_vec(s, x))
                lhs = H.Ns(i) * H.theta(x) - H.theta(sx) * H.Ns(i)
                rhs = H.zero()
                for z, c in H.cross_term(i, x).t.items():
                    rhs = rhs + H.theta(z).scale(c)
                out.append(("cross", f"s{i},θ{list(x)}", lhs == rhs))
    for g in range(1, len(dt.gammas)):
        gi = dt.gamma_inv[g]
        for j in range(r):
            e = tuple(int(k == j) for k in range(r))
            lhs = H.J(g) * H.theta(e) * H.J(gi)
            out.append(("gamma-theta", f"J{g},θ{list(e)}", lhs == H.theta(lat.mat_vec(dt.gammas[g], e))))
        for i, pi in enumerate(dt.gamma_perm[g]):
            out.append(("gamma-N", f"J{g},s{i}", H.J(g) * H.Ns(i) * H.J(gi) == H.Ns(pi)))
        for h in range(len(dt.gammas)):
            out.append(("gamma-group", f"J{g},J{h}", H.J(g) * H.J(h) == H.J(dt.gamma_mul[g][h])))
    return out


def oracle_sweep(H: HeckeAlgebra, depth: int = 4):
    """Compare Bernstein products with the localized model on all generator words up to depth."""
    gens = [(nm, g, to_localized(g)) for nm, g in H.generators()]
    count = bad = 0
    first_bad = ""
    stack = [(H.one(), H.localized_one(), 0, "")]
    while stack:
        b, l, k, word = stack.pop()
        if k == depth:
            continue
        for nm, g, gl in gens:
            b2, l2 = b * g, l * gl
            count += 1
            if not to_localized(b2) == l2:
                bad += 1
                first_bad = first_bad or (word + " " + nm).strip()
            stack.append((b2, l2, k + 1, word + " " + nm))
    return count, bad, first_bad


def whittaker_checks(H: HeckeAlgebra):
    dt = H.datum
    out = []
    for (w, g) in dt.ext_elements():
        val = whittaker_action(H.N(w) * H.J(g))
        expect = det_scalar(H, w, g)
        ok = val == _const_rational(H, expect)
        out.append(("whittaker", f"N{list(dt.weyl_words[w])}J{g}", ok))
    if dt.n_simple == 1:
        lam = H.labels[0][0]
        h = H.Ns(0).scale(H.v(lam)) + H.one()
        val = specialize(whittaker_action(h), H.steinberg_point())
        out.append(("whittaker-St", "v^lam N_s + 1", val.is_zero()))
    return out


def _const_rational(H, c: VLaurent):
    return TorusRational.lift(TorusFunction.theta((0,) * H.r, H.n, H.d, c))


def run_verify_presentation(case: Case, depth: int = 4) -> TaskResult:
    H = case.algebra()
    rows = [[kind, gens, _flag(ok)] for kind, gens, ok in relation_checks(H)]
    count, bad, first = oracle_sweep(H, depth)
    rows.append(["oracle", f"products of <= {depth} generators: {count}", _flag(bad == 0)])
    rows += [[kind, gens, _flag(ok)] for kind, gens, ok in whittaker_checks(H)]
    notes = [f"first oracle mismatch: {first}"] if bad else []
    return TaskResult("verify-presentation", case.name, all(r[2] == "yes" for r in rows),
                      ["relation", "generators", "holds"], rows, notes)


# ---------------------------------------------------------------- labels

def label_sweep(values=(1, 2, 3)):
    total = valid = agree = 0
    for data, ok in case_space(values):
        total += 1
        if ok:
            valid += 1
            agree += labels_padic(data) == labels_galois(data)
    return total, valid, agree


U3_BULLETS = {
    EXC_UNRAM_TRIVIAL: (3, 1),
    EXC_UNRAM_NONTRIVIAL: (1, 1),
    EXC_RAMIFIED: (1, 0),
}


def u3_bullets():
    out = []
    for tag, expect in U3_BULLETS.items():
        f = 1 if tag == EXC_RAMIFIED else 2
        d = ArithmeticRootData(f, tag, 1, False, 1, True)
        p, g = labels_padic(d), labels_galois(d)
        out.append((tag, expect, p.as_tuple(), g.as_tuple()))
    return out


def _galois_fn(case: Case):
    return corrupt if case.negative_control == "corrupt-galois" else labels_galois


def run_labels(case: Case) -> TaskResult:
    header = ["orbit", "case_tag", "f", "e", "k", "halved", "padic", "galois", "m", "match"]
    rows = []
    ok = True
    for i, data in sorted(case.arithmetic.items()):
        verdict, mrows = check_label_match(data, orbit=f"s{i}", galois=_galois_fn(case))
        ok = ok and verdict
        for r in mrows:
            rows.append([r.orbit, data.case_tag, data.residue_degree_f, data.residue_degree_e or "",
                         data.component_count_k, _flag(data.halved),
                         r.padic.as_tuple() if r.padic else "excluded",
                         r.galois.as_tuple() if r.galois else "excluded", r.m, _flag(r.match)])
    total, valid, agree = label_sweep()
    rows.append(["case-space", "all", "1..3", "1..3", "1..3", "both", f"{valid} valid of {total}",
                 f"{agree} agree", "", _flag(agree == valid)])
    for tag, expect, p, g in u3_bullets():
        good = p == g == expect
        rows.append(["U3", tag, "", 1, 1, "no", p, g, "", _flag(good)])
        ok = ok and good
    ok = ok and agree == valid
    return TaskResult("labels", case.name, ok, header, rows)


# ---------------------------------------------------------------- compare-sides

def random_element(H: HeckeAlgebra, rng: random.Random, terms: int = 3) -> HeckeElement:
    dt = H.datum
    out = H.zero()
    for _ in range(rng.randint(1, terms)):
        x = tuple(rng.randint(-2, 2) for _ in range(H.r))
        w = rng.randrange(len(dt.weyl))
        g = rng.randrange(len(dt.gammas))
        c = VLaurent.mono(rng.choice((1, -1, 2, 3)), Fraction(rng.randint(-2 * H.d, 2 * H.d), H.d), H.n, H.d)
        out = out + H.element({(x, w, g): c})
    return out


def run_compare_sides(case: Case, pairs: int = 50) -> TaskResult:
    Hp = case.algebra("padic")
    galois_side = "corrupt" if case.negative_control == "corrupt-galois" else "galois"
    lab_g = case.labels(galois_side)
    header = ["check", "detail", "holds"]
    rows = []
    bad = [i for i in range(case.datum.n_simple) if Hp.labels[i] != lab_g[i]]
    for i in range(case.datum.n_simple):
        rows.append(["labels", f"orbit s{i}: padic {Hp.labels[i]} galois {lab_g[i]}", _flag(i not in bad)])
    if bad:
        return TaskResult("compare-sides", case.name, False, header, rows,
                          [f"label mismatch on orbits {['s%d' % i for i in bad]}; comparison not constructed"])
    Hg = HeckeAlgebra(case.datum, lab_g, case.basepoint, case.epsilon, case.n, case.d, name=case.name + "-galois")
    rng = random.Random(case.seed)
    anti = invol = 0
    for _ in range(pairs):
        a, b = random_element(Hp, rng), random_element(Hp, rng)
        lhs = comparison_iso(a * b, Hp, Hg)
        rhs = comparison_iso(b, Hp, Hg) * comparison_iso(a, Hp, Hg)
        anti += lhs == rhs
        invol += comparison_iso(comparison_iso(a, Hp, Hg), Hg, Hp) == a
    rows.append(["anti-multiplicative", f"{anti}/{pairs} random pairs", _flag(anti == pairs)])
    rows.append(["involutive", f"{invol}/{pairs} random elements", _flag(invol == pairs)])
    return TaskResult("compare-sides", case.name, all(r[2] == "yes" for r in rows), header, rows)


# ---------------------------------------------------------------- generic-test

def _orbit_rep(H, t):
    return mr.orbit(H, t)[0]


def special_points(H: HeckeAlgebra):
    dt = H.datum
    pts = [("steinberg", H.steinberg_point())]
    pts.append(("trivial", point_with_root_values(
        dt, [(0, Fraction(sum(H.labels[i]))) for i in range(dt.n_simple)], H.n, H.d)))
    if dt.n_simple == 1:
        lam, lam_s = H.labels[0]
        if is_coroot_two_divisible(dt, 0):
            pts.append(("t-minus", point_with_root_values(dt, [(Fraction(1, 2), 0)], H.n, H.d)))
        if lam != lam_s:
            pts.append(("st-minus", point_with_root_values(dt, [(Fraction(1, 2), -Fraction(lam - lam_s))], H.n, H.d)))
    return pts


def run_generic_test(case: Case, samples: int = 30) -> TaskResult:
    H = case.algebra()
    header = ["point", "kind", "constituent_dims", "central_character", "det_multiplicity", "generic", "status"]
    rows = []
    ok = True
    for t in random_points(case, samples):
        M = mr.principal_series_module(H, t)
        dm = mr.det_multiplicity(M)
        irr = mr.certify_irreducible(M)
        good = dm == 1
        ok = ok and good
        rows.append([t, "random", M.dim if irr else f"{M.dim} (not certified irreducible)",
                     _orbit_rep(H, t), dm, _flag(dm >= 1), "ok" if good else "FAIL"])
    named = mr.one_dim_characters(H)
    for label, t in special_points(H):
        M = mr.principal_series_module(H, t)
        dec = mr.decompose(M, named)
        dms = [c.det_mult for c in dec.constituents]
        good = mr.det_multiplicity(M) == 1 and all(c.det_mult <= 1 for c in dec.constituents if c.irreducible)
        if dec.complete:
            good = good and sum(dms) == 1
        ok = ok and good
        cc = mr.central_character(M)[0]
        for c in dec.constituents:
            rows.append([t, f"{label}:{c.name}", c.module.dim if c.irreducible else f"{c.module.dim} (not decomposed)",
                         cc, c.det_mult, _flag(c.det_mult >= 1), "ok" if good else "FAIL"])
    for nm, ch in named.items():
        rows.append([mr._point_of(ch), f"character:{nm}", 1, _orbit_rep(H, mr._point_of(ch)),
                     mr.det_multiplicity(ch), _flag(mr.det_multiplicity(ch) >= 1), "ok"])
    return TaskResult("generic-test", case.name, ok, header, rows)


# ---------------------------------------------------------------- rank1-classify

def rank1_verdicts(H: HeckeAlgebra, rows):
    """Expected pattern: (a) {St, triv} with det {1, 0}; (b) St- generic; (c) semisimple, det {0, 1}."""
    out = []
    for r in rows:
        names = {n: dm for n, _, dm in r.constituents}
        if r.case == "a":
            good = names.get("St") == 1 and names.get("triv") == 0 and len(r.constituents) == 2
        elif r.case == "b":
            good = names.get("St-") == 1 and sum(names.values()) == 1
        else:
            good = r.semisimple and sorted(dm for _, _, dm in r.constituents) == [0, 1]
        out.append(good)
    return out


def run_rank1_classify(case: Case) -> TaskResult:
    header = ["case", "point", "constituents", "semisimple", "central_character", "holds"]
    H = case.algebra()
    if H.datum.n_simple != 1:
        return TaskResult("rank1-classify", case.name, True, header, [], ["not applicable: rank != 1"])
    rows = mr.rank1_classify(H)
    verdicts = rank1_verdicts(H, rows)
    out = []
    for r, good in zip(rows, verdicts):
        cons = ", ".join(f"{n}(dim {d}, det {dm})" for n, d, dm in r.constituents)
        out.append([r.case, r.point, cons, _flag(r.semisimple), r.central_character[0], _flag(good)])
    notes = []
    lam, lam_s = H.labels[0]
    if lam == lam_s:
        try:
            mr.st_minus(H)
            notes.append("St- constructed although lam = lam*")
            verdicts.append(False)
        except mr.ModuleError:
            notes.append("St- correctly refused (lam = lam*)")
    return TaskResult("rank1-classify", case.name, all(verdicts), header, out, notes)


# ---------------------------------------------------------------- graded

def run_graded(case: Case, samples: int = 10) -> TaskResult:
    H = case.algebra()
    dt = H.datum
    header = ["u", "isotropy_roots", "k_table", "W_u", "W_pos", "Gamma_pos", "factorization",
              "equal_parameters", "orbit_invariant", "steinberg_exp"]
    rows = []
    ok = True
    st_orbit = set(mr.orbit(H, H.steinberg_point()))
    for u in random_unitary_points(case, samples):
        gp = gr.k_parameters(H, u)
        try:
            eq = gr.equal_parameter_form(gp)
            eq_ok = all(r.scale == gp.k_values[r.index] for r in eq)
        except gr.GradedError:
            eq_ok = False
        inv = all(gr.k_multiset(gr.k_parameters(H, u.act(dt.ext_matrix(k)))) == gr.k_multiset(gp)
                  for k in dt.ext_elements())
        nonneg = all(k >= 0 for k in gp.k_values.values()) and \
            all((gp.k_values[i] == 0) == (i not in gp.positive_system) for i in gp.roots)
        exp_st = ""
        if u == TorusPoint.one(H.r, H.n, H.d):
            w = gr.exp_weights(u, [gr.graded_steinberg_weight(gp)])[0]
            exp_st = _flag(w in st_orbit)
            ok = ok and w in st_orbit
        good = gp.factorization_holds and eq_ok and inv and nonneg
        ok = ok and good
        ktab = " ".join(f"{list(a)}:{k}" for a, k in gp.k_table())
        rows.append([u, len(gp.roots), ktab, gp.group_order, gp.weyl_pos_order, len(gp.gamma_pos),
                     _flag(gp.factorization_holds), _flag(eq_ok), _flag(inv), exp_st])
    return TaskResult("graded", case.name, ok, header, rows)


# ---------------------------------------------------------------- lparam and match

def run_lparam(case: Case) -> TaskResult:
    header = ["parameter", "t_tilde", "partition", "q_eigenspace", "orbit_dim", "dense", "bounded", "discrete",
              "twist_ok"]
    if case.block is None:
        return TaskResult("lparam", case.name, True, header, [], ["not applicable: no dual-group block"])
    blk = case.block
    rows = []
    ok = True
    for p in blk.parameters:
        t = lp.infinitesimal_point(p)
        space = lp.q_eigenspace(p)
        od = lp.orbit_dimension(p)
        dense = lp.is_dense_orbit(p)
        pred = lp.predicates(p)
        tw = True
        for z in blk.twists:
            pz = lp.twist_parameter(z, p)
            tw = tw and lp.infinitesimal_point(pz) == z * t and lp.q_eigenspace(pz) == space \
                and (lp.predicates(pz)["bounded"] == pred["bounded"] if z.is_unitary() else True)
        good = od <= len(space) and (od == len(space)) == dense and tw
        ok = ok and good
        rows.append([p.name, t, lp.partition(p), " ".join(f"E{i + 1}{j + 1}" for i, j in space) or "0",
                     od, _flag(dense), _flag(pred["bounded"]), _flag(pred["discrete"]), _flag(tw)])
    return TaskResult("lparam", case.name, ok, header, rows)


def run_match(case: Case) -> TaskResult:
    header = ["parameter", "t_tilde", "partition", "dense", "bounded", "module", "dim", "det_multiplicity",
              "central_ok", "generic_ok", "tempered", "unitary_weights", "bounded_ok", "twist_ok", "status", "note"]
    if case.block is None:
        return TaskResult("match", case.name, True, header, [], ["not applicable: no dual-group block"])
    rows = lp.match_bijection(case.block)
    out = [[r.parameter, r.t_tilde, r.partition, _flag(r.dense), _flag(r.bounded), r.module or "-", r.module_dim,
            r.det_mult, _flag(r.central_ok), _flag(r.generic_ok), _flag(r.tempered), _flag(r.unitary_weights),
            _flag(r.bounded_ok), _flag(r.twist_ok), r.status, r.note] for r in rows]
    notes = ["bounded_ok compares boundedness with Casselman temperedness of the module weights;",
             "unitary_weights is the weaker proxy and is reported for reference only"]
    return TaskResult("match", case.name, all(r.verdict() for r in rows), header, out, notes)


RUNNERS = {
    "verify-presentation": run_verify_presentation,
    "labels": run_labels,
    "compare-sides": run_compare_sides,
    "generic-test": run_generic_test,
    "rank1-classify": run_rank1_classify,
    "graded": run_graded,
    "lparam": run_lparam,
    "match": run_match,
}

"""JSON catalog of cases: root datum, arithmetic data, epsilon, basepoint, optional dual-group block."""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .exact_rings import TorusPoint, ConfigError, DEFAULT_N, DEFAULT_D
from .root_datum import BasedRootDatum, DatumError
from .label_calculus import ArithmeticRootData, LabelDataError, labels_padic, labels_galois, corrupt
from .bernstein_hecke import HeckeAlgebra, AlgebraError
from . import lparam_side as lp

TASKS = ("verify-presentation", "labels", "compare-sides", "generic-test", "rank1-classify",
         "graded", "lparam", "match")

_CASE_KEYS = {"name", "root_datum", "arithmetic", "epsilon", "basepoint", "dual_group", "tasks",
              "negative_control", "seed"}


@dataclass
class Case:
    name: str
    datum: BasedRootDatum
    arithmetic: dict                 # simple-root index -> ArithmeticRootData
    epsilon: dict
    basepoint: TorusPoint
    n: int
    d: int
    tasks: tuple
    negative_control: str = ""
    seed: int = 0
    block: object = None             # lparam_side.GLBlock or None
    raw: dict = field(default_factory=dict)

    def labels(self, side: str = "padic") -> dict:
        fn = {"padic": labels_padic, "galois": labels_galois, "corrupt": corrupt}[side]
        out = {}
        for i, data in self.arithmetic.items():
            lab = fn(data)
            if lab is None:
                raise ConfigError(f"case {self.name}: simple root {i} is excluded by its arithmetic data")
            out[i] = lab.as_tuple()
        return out

    def algebra(self, side: str = "padic") -> HeckeAlgebra:
        return HeckeAlgebra(self.datum, self.labels(side), self.basepoint, self.epsilon,
                            self.n, self.d, name=self.name)


@dataclass
class Catalog:
    n: int
    d: int
    cases: list


def _int_matrix(rows, what):
    try:
        return [tuple(int(x) for x in r) for r in rows]
    except (TypeError, ValueError):
        raise ConfigError(f"{what} must be a list of integer vectors")


def parse_case(raw: dict, n: int, d: int) -> Case:
    extra = set(raw) - _CASE_KEYS
    if extra:
        raise ConfigError(f"unknown case fields {sorted(extra)}")
    name = raw.get("name")
    if not name:
        raise ConfigError("every case needs a name")
    rd = raw.get("root_datum")
    if not isinstance(rd, dict):
        raise ConfigError(f"case {name}: missing root_datum block")
    simple = _int_matrix(rd.get("simple_roots", []), "simple_roots")
    cosimple = _int_matrix(rd.get("simple_coroots", []), "simple_coroots")
    gammas = [_int_matrix(g, "gamma generator") for g in rd.get("gamma_generators", [])]
    datum = BasedRootDatum(simple, cosimple, gammas, name=name)
    arith = {}
    for k, v in raw.get("arithmetic", {}).items():
        arith[int(k)] = ArithmeticRootData.from_json(v)
    for i in range(datum.n_simple):
        if i not in arith:
            raise ConfigError(f"case {name}: no arithmetic data for simple root {i}")
    eps = {int(k): int(v) for k, v in raw.get("epsilon", {}).items()}
    bp = raw.get("basepoint")
    basepoint = TorusPoint.from_json(bp, n, d).check_representable() if bp else TorusPoint.one(datum.rank, n, d)
    tasks = tuple(raw.get("tasks", TASKS))
    unknown = [t for t in tasks if t not in TASKS]
    if unknown:
        raise ConfigError(f"case {name}: unknown tasks {unknown}")
    block = None
    if raw.get("dual_group"):
        dg = raw["dual_group"]
        block = lp.gl_block(dg["kind"], dg["blocks"], dg.get("parameters", []), dg.get("twists", []), n, d)
    case = Case(name, datum, arith, eps, basepoint, n, d, tasks, raw.get("negative_control", ""),
                int(raw.get("seed", 0)), block, raw)
    case.algebra("padic")          # validates labels, epsilon and basepoint
    return case


def load_catalog(data) -> Catalog:
    """Parse and validate a catalog given as a dict, a JSON string or a path."""
    if isinstance(data, str):
        try:
            if data.lstrip().startswith("{"):
                data = json.loads(data)
            else:
                with open(data, encoding="utf-8") as fh:
                    data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read catalog: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("catalog must be a JSON object")
    coeff = data.get("coefficients", {})
    n, d = int(coeff.get("N", DEFAULT_N)), int(coeff.get("D", DEFAULT_D))
    cases = []
    names = set()
    for raw in data.get("cases", []):
        try:
            case = parse_case(raw, n, d)
        except ConfigError:
            raise
        except (DatumError, LabelDataError, AlgebraError, lp.LParamError, KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"case {raw.get('name', '?')}: {exc}") from exc
        if case.name in names:
            raise ConfigError(f"duplicate case name {case.name}")
        names.add(case.name)
        cases.append(case)
    return Catalog(n, d, cases)


def default_catalog_json() -> dict:
    text = resources.files("pshecke").joinpath("default_catalog.json").read_text(encoding="utf-8")
    return json.loads(text)


def default_catalog() -> Catalog:
    return load_catalog(default_catalog_json())


def random_points(case: Case, count: int, seed: int = None):
    """Deterministic sample of torus points with angles in (1/N)Z and v-exponents in (1/D)Z."""
    import random
    rng = random.Random(case.seed if seed is None else seed)
    out = []
    for _ in range(count):
        angs = [Fraction(rng.randrange(case.n), case.n) for _ in range(case.datum.rank)]
        vex = [Fraction(rng.randrange(-3 * case.d, 3 * case.d + 1), case.d) for _ in range(case.datum.rank)]
        out.append(TorusPoint(angs, vex, case.n, case.d))
    return out


def random_unitary_points(case: Case, count: int, seed: int = None):
    import random
    rng = random.Random((case.seed if seed is None else seed) + 1)
    pts = [TorusPoint.one(case.datum.rank, case.n, case.d)]
    while len(pts) < count:
        pts.append(TorusPoint([Fraction(rng.choice((0, case.n // 2, rng.randrange(case.n))), case.n)
                               for _ in range(case.datum.rank)], [0] * case.datum.rank, case.n, case.d))
    return pts

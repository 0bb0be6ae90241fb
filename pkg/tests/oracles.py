"""Independent numeric oracles: evaluate exact objects as complex numbers."""
import cmath

from pshecke.exact_rings import Cyclo, VLaurent, VRational, TorusFunction, TorusPoint


def cyclo_c(c: Cyclo) -> complex:
    z = cmath.exp(2j * cmath.pi / c.n)
    return sum(complex(float(a)) * z ** k for k, a in enumerate(c.c))


def laurent_c(f: VLaurent, v: float) -> complex:
    return sum(cyclo_c(c) * v ** (k / f.d) for k, c in f.t.items())


def vrational_c(f: VRational, v: float) -> complex:
    return laurent_c(f.num, v) / laurent_c(f.den, v)


def point_c(t: TorusPoint, x, v: float) -> complex:
    a, b = t.value(x)
    return cmath.exp(2j * cmath.pi * float(a)) * v ** float(b)


def torus_c(f: TorusFunction, t: TorusPoint, v: float) -> complex:
    return sum(laurent_c(c, v) * point_c(t, x, v) for x, c in f.t.items())


def close(a: complex, b: complex, tol=1e-8) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))

"""The catalogue of chart transition maps C0..C15 with their group identities.

Each transform records: the chart map on coordinate tuples (subtraction-free,
exact over rationals), the two factor patterns whose equality in the group is
the underlying identity, whether that identity is exact or holds up to a
lower-unipotent factor, and the sign it contributes to the logarithmic volume
form.  Identities are verified by exact evaluation in the matrix
representations at rational points rather than symbolically; the polynomial
tables below are transcribed once and re-checked against the identity itself,
so any typo fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .ad import variables
from .chevalley import MatrixRep
from .matrices import Mat
from .scalars import ConfigurationError, SingularInputError, is_exact

# Transforms contributing a minus sign to the volume-form transition; these
# are exactly the ones with an even number of coordinates involved.
MINUS_SIGNS = {"C0", "C2", "C3", "C5", "C7", "C8", "C11", "C12", "C15"}


def _div(num, den, name: str):
    if is_exact(den) and den == 0:
        raise SingularInputError(f"denominator {name} vanished", name)
    return num / den


@dataclass(frozen=True)
class CoordTransform:
    """One chart transition: factor patterns, chart map, and bookkeeping.

    ``lhs``/``rhs`` are factor sequences; a factor is (kind, role, argfn) with
    kind in {"x", "y", "s"}, role in {"i", "j"}, and argfn mapping the input
    coordinate tuple to the factor's argument (None for s-dot factors).
    """

    name: str
    family: str  # "A2", "A3" (commuting pair), "B2", "G2"
    arity: int
    up_to_lower: bool
    lhs: tuple
    rhs: tuple
    chart_map: Callable
    parts: Callable  # coords -> dict of named intermediate subexpressions

    @property
    def sign(self) -> int:
        return -1 if self.name in MINUS_SIGNS else 1

    @property
    def bond(self) -> int:
        return {"A3": 2, "A2": 3, "B2": 4, "G2": 6}[self.family]

    def __repr__(self):
        return f"CoordTransform({self.name})"


def apply(tr: CoordTransform, coords) -> tuple:
    """The chart map on a coordinate tuple; exact when inputs are exact."""
    coords = tuple(coords)
    if len(coords) != tr.arity:
        raise ConfigurationError(f"{tr.name} expects {tr.arity} coordinates")
    return tr.chart_map(coords)


def intermediates(tr: CoordTransform, coords) -> dict:
    """Named intermediate subexpressions (x, y, pi_k, z_k, ...) at a point."""
    return tr.parts(tuple(coords))


# -- formula tables ----------------------------------------------------------
#
# Variable names track the printed formulas; "cc" stands in for the letter c
# where c would shadow the coordinate tuple.


def _c1_map(t):
    a, b, c = t
    s = a + c
    return (_div(b * c, s, "a+c"), s, _div(a * b, s, "a+c"))


def _c3_parts(t):
    a, b, c, d = t
    x = a**2 * b + d * (a + c) ** 2
    y = a * b + d * (a + c)
    return {"x": x, "y": y}


def _c3_map(t):
    a, b, c, d = t
    p = _c3_parts(t)
    x, y = p["x"], p["y"]
    a2 = _div(a * b * c, y, "y")
    b2 = _div(y**2, x, "x")
    c2 = _div(x, y, "y")
    d2 = _div(b * c**2 * d, x, "x")
    return (d2, c2, b2, a2)


def _c4_map(t):
    a, b, c = t
    s = a + c
    return (_div(b * c, s, "a+c"), s, _div(a * b**2 * c, s, "a+c"))


def _c6_map(t):
    a, b, c = t
    s = a + c
    return (_div(c**2 * b, s**2, "(a+c)^2"), s, _div(a * b * c, s, "a+c"))


def _c8_parts(t):
    a, b, c, d, e, f = t
    pi1 = a * b * c**2 * d + a * b * (c + e) ** 2 * f + (a + c) * d * e**2 * f
    pi2 = (a**2 * b**2 * c**3 * d + a**2 * b**2 * (c + e) ** 3 * f
           + (a + c) ** 2 * d**2 * e**3 * f
           + a * b * d * e**2 * f * (3 * a * c + 2 * c**2 + 2 * c * e + 2 * a * e))
    pi3 = (a**3 * b**2 * c**3 * d + a**3 * b**2 * (c + e) ** 3 * f
           + (a + c) ** 3 * d**2 * e**3 * f
           + a**2 * b * d * e**2 * f * (3 * a * c + 3 * c**2 + 3 * c * e + 2 * a * e))
    pi4 = (a**2 * b**2 * c**3 * d
           * (a * b * c**3 * d + 2 * a * b * (c + e) ** 3 * f
              + (3 * a * c + 3 * c**2 + 3 * c * e + 2 * a * e) * d * e**2 * f)
           + f**2 * (a * b * (c + e) ** 2 + (a + c) * d * e**2) ** 3)
    return {"pi1": pi1, "pi2": pi2, "pi3": pi3, "pi4": pi4}


def _c8_map(t):
    a, b, c, d, e, f = t
    p = _c8_parts(t)
    pi1, pi2, pi3, pi4 = p["pi1"], p["pi2"], p["pi3"], p["pi4"]
    a2 = _div(a * b * c**2 * d * e, pi1, "pi1")
    b2 = _div(pi1**3, pi4, "pi4")
    c2 = _div(pi4, pi1 * pi2, "pi1*pi2")
    d2 = _div(pi2**3, pi3 * pi4, "pi3*pi4")
    e2 = _div(pi3, pi2, "pi2")
    f2 = _div(b * c**3 * d**2 * e**3 * f, pi3, "pi3")
    return (f2, e2, d2, c2, b2, a2)


def _c9_parts(t):
    a, b, c, d, e = t
    x = (3 * a * c * d * e * (c * d + a * b + a * d) + c**3 * d**2 * e
         + a**3 * (2 * b * d * e + d**2 * e + b**2 * (c**3 * d + e)))
    y = (c * d * e * (c * d + a * b + a * d) + a * c * d * (b + d) * e
         + a**2 * (2 * b * d * e + d**2 + b**2 * (c**3 * d + e)))
    z = (e * (c * d + a * b + a * d) * (y + a**2 * b**2 * c**3 * d)
         + a**2 * b**2 * c**4 * d**2 * (e + a * b * c**2))
    v = a**2 * b**2 * c**3 * d + e * (c * d + a * b + a * d) ** 2
    return {"x": x, "y": y, "z": z, "v": v}


def _c9_map(t):
    a, b, c, d, e = t
    p = _c9_parts(t)
    x, y, z, v = p["x"], p["y"], p["z"], p["v"]
    return (
        _div(b * c**3 * d**2 * e, x, "x"),
        _div(x, y, "y"),
        _div(y**3, x * z, "x*z"),
        _div(z, a * b * c**2 * d * v, "a*b*c^2*d*v"),
        _div(a**3 * b**3 * c**6 * d**3, z, "z"),
    )


def _c10_parts(t):
    a, b, c, d, e = t
    xp = c * d**2 * e + a * (2 * b * d * e + d**2 * e + b**2 * (c * d + e))
    yp = (c**2 * d**6 * e**3
          + a**2 * (2 * b * d * e + d**2 * e + b**2 * (c * d + e)) ** 3
          + a * c * d**3 * (b + d) * e**2
          * (4 * b * d * e + 2 * d**2 * e + b**2 * (3 * c * d + 2 * e)))
    zp = (c * d**3 * e**2
          + a * (3 * b * d**2 * e**2 + d**3 * e**2 + b**3 * (c * d + e) ** 2
                 + b**2 * d * e * (2 * c * d + 3 * e)))
    return {"x'": xp, "y'": yp, "z'": zp}


def _c10_map(t):
    a, b, c, d, e = t
    p = _c10_parts(t)
    xp, yp, zp = p["x'"], p["y'"], p["z'"]
    return (
        _div(b * c * d**2 * e, xp, "x'"),
        _div(xp**3, yp, "y'"),
        _div(yp, xp * zp, "x'*z'"),
        _div(zp**3, a * b**3 * c**3 * d**3 * yp, "a*b^3*c^3*d^3*y'"),
        _div(a * b**3 * c**2 * d**3, zp, "z'"),
    )


def _c11_parts(t):
    a, b, c, d = t
    z1 = c * d + a * (b + d)
    z2 = a**2 * b + (a + c) ** 2 * d
    return {"z1": z1, "z2": z2, "den": a * z1**2 + c * d * z2}


def _c11_map(t):
    a, b, c, d = t
    p = _c11_parts(t)
    z1, den = p["z1"], p["den"]
    return (
        _div(b * c**3 * d**2, den, "a*z1^2+c*d*z2"),
        _div(den, z1**2, "z1^2"),
        _div(z1**3, den, "a*z1^2+c*d*z2"),
        _div(a * b * c**2 * d, z1, "z1"),
    )


def _c12_parts(t):
    a, b, c, d = t
    z3 = a**2 * b**2 * c**3 + (a + c) ** 2 * d
    z4 = a**3 * b**2 * c**3 + (a + c) ** 3 * d
    return {"z3": z3, "z4": z4}


def _c12_map(t):
    a, b, c, d = t
    p = _c12_parts(t)
    z3, z4 = p["z3"], p["z4"]
    return (
        _div(b * c**3 * d, z4, "z4"),
        _div(z4, z3, "z3"),
        _div(z3**3, a**3 * b**3 * c**6 * z4, "a^3*b^3*c^6*z4"),
        _div(a**2 * b**2 * c**4, z3, "z3"),
    )


def _c13_map(t):
    a, b, c = t
    s = a + c
    return (_div(b * c**3, s**3, "(a+c)^3"), s, _div(a * b * c**2, s, "a+c"))


def _c14_map(t):
    a, b, c = t
    den = a**3 * b**2 + c
    return (
        _div(b * c, den, "a^3*b^2+c"),
        _div(den, a**2 * b**2, "a^2*b^2"),
        _div(a**3 * b**3, den, "a^3*b^2+c"),
    )


def _no_parts(_):
    return {}


# -- pattern construction ------------------------------------------------


def _x(role, argfn):
    return ("x", role, argfn)


def _y(role, argfn):
    return ("y", role, argfn)


def _s(role):
    return ("s", role, None)


class _OutRef:
    """Reference to the k-th output of the transform's own chart map."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k


def _build_table():
    T = {}

    def add(name, family, arity, up_to_lower, lhs, rhs, chart_map, parts=_no_parts):
        T[name] = CoordTransform(name, family, arity, up_to_lower,
                                 tuple(lhs), tuple(rhs), chart_map, parts)

    A = lambda t: t[0]
    B = lambda t: t[1]
    C = lambda t: t[2]
    D = lambda t: t[3]
    E = lambda t: t[4]
    F_ = lambda t: t[5]
    O = _OutRef

    # commuting pair
    add("C0", "A3", 2, False,
        [_x("i", A), _x("j", B)],
        [_x("j", B), _x("i", A)],
        lambda t: (t[1], t[0]))

    # bond 3
    add("C1", "A2", 3, False,
        [_x("i", A), _x("j", B), _x("i", C)],
        [_x("j", O(0)), _x("i", O(1)), _x("j", O(2))],
        _c1_map)
    add("C2", "A2", 2, False,
        [_x("i", A), _x("j", B), _s("i")],
        [_x("j", O(0)), _s("i"), _x("j", O(1)), _y("i", lambda t: -t[0])],
        lambda t: (t[1], t[0] * t[1]))

    # bond 4, role i is the long root
    add("C3", "B2", 4, False,
        [_x("j", A), _x("i", B), _x("j", C), _x("i", D)],
        [_x("i", O(0)), _x("j", O(1)), _x("i", O(2)), _x("j", O(3))],
        _c3_map, _c3_parts)
    add("C4", "B2", 3, False,
        [_x("i", A), _x("j", B), _x("i", C), _s("j")],
        [_x("j", O(0)), _x("i", O(1)), _s("j"), _x("i", O(2)),
         _y("j", lambda t: _div(-t[0] * t[1], t[0] + t[2], "a+c"))],
        _c4_map)
    add("C5", "B2", 2, True,
        [_x("j", A), _x("i", B), _s("j"), _s("i")],
        [_x("i", O(0)), _s("j"), _s("i"), _x("j", O(1))],
        lambda t: (t[1], t[0] * t[1]))
    add("C6", "B2", 3, False,
        [_x("j", A), _x("i", B), _x("j", C), _s("i")],
        [_x("i", O(0)), _x("j", O(1)), _s("i"), _x("j", O(2)),
         _y("i", lambda t: _div(-t[0] ** 2 * t[1] - 2 * t[0] * t[1] * t[2],
                                (t[0] + t[2]) ** 2, "(a+c)^2"))],
        _c6_map)
    add("C7", "B2", 2, True,
        [_x("i", A), _x("j", B), _s("i"), _s("j")],
        [_x("j", O(0)), _s("i"), _s("j"), _x("i", O(1))],
        lambda t: (t[1], t[0] * t[1] ** 2))

    # bond 6, role i is the long root
    add("C8", "G2", 6, False,
        [_x("i", A), _x("j", B), _x("i", C), _x("j", D), _x("i", E), _x("j", F_)],
        [_x("j", O(0)), _x("i", O(1)), _x("j", O(2)), _x("i", O(3)),
         _x("j", O(4)), _x("i", O(5))],
        _c8_map, _c8_parts)
    add("C9", "G2", 5, True,
        [_x("i", A), _x("j", B), _x("i", C), _x("j", D), _s("i"), _x("j", E)],
        [_x("j", O(0)), _x("i", O(1)), _x("j", O(2)), _x("i", O(3)),
         _x("j", O(4)), _s("i")],
        _c9_map, _c9_parts)
    add("C10", "G2", 5, True,
        [_x("j", A), _x("i", B), _x("j", C), _x("i", D), _s("j"), _x("i", E)],
        [_x("i", O(0)), _x("j", O(1)), _x("i", O(2)), _x("j", O(3)),
         _x("i", O(4)), _s("j")],
        _c10_map, _c10_parts)
    add("C11", "G2", 4, True,
        [_x("j", A), _x("i", B), _x("j", C), _x("i", D), _s("j"), _s("i")],
        [_x("i", O(0)), _x("j", O(1)), _x("i", O(2)), _s("j"), _s("i"),
         _x("j", O(3))],
        _c11_map, _c11_parts)
    add("C12", "G2", 4, True,
        [_x("j", A), _x("i", B), _x("j", C), _s("i"), _s("j"), _x("i", D)],
        [_x("i", O(0)), _x("j", O(1)), _s("i"), _s("j"), _x("i", O(2)),
         _x("j", O(3))],
        _c12_map, _c12_parts)
    add("C13", "G2", 3, True,
        [_x("j", A), _x("i", B), _x("j", C), _s("i"), _s("j"), _s("i")],
        [_x("i", O(0)), _x("j", O(1)), _s("i"), _s("j"), _s("i"), _x("j", O(2))],
        _c13_map)
    add("C14", "G2", 3, True,
        [_x("j", A), _x("i", B), _s("j"), _s("i"), _s("j"), _x("i", C)],
        [_x("i", O(0)), _x("j", O(1)), _x("i", O(2)), _s("j"), _s("i"), _s("j")],
        _c14_map)
    add("C15", "G2", 2, True,
        [_x("i", A), _x("j", B), _s("i"), _s("j"), _s("i"), _s("j")],
        [_x("j", O(0)), _s("i"), _s("j"), _s("i"), _s("j"), _x("i", O(1))],
        lambda t: (t[1], t[0] * t[1] ** 3))

    return T


_TABLE = _build_table()
ALL_NAMES = tuple(sorted(_TABLE, key=lambda s: int(s[1:])))


def transform(name: str) -> CoordTransform:
    try:
        return _TABLE[name]
    except KeyError:
        raise ConfigurationError(f"unknown transform {name!r}") from None


def _roles_for(tr: CoordTransform, rep: MatrixRep, roles) -> dict:
    if roles is None:
        roles = {"i": 1, "j": 3} if tr.family == "A3" else {"i": 1, "j": 2}
    if roles["i"] == roles["j"]:
        raise ConfigurationError("pattern requires distinct indices i != j")
    spec = rep.spec
    if max(roles.values()) > spec.rank:
        raise ConfigurationError(f"role indices {roles} exceed rank of {spec.label}")
    if spec.bond(roles["i"], roles["j"]) != tr.bond:
        raise ConfigurationError(
            f"{tr.name} needs bond {tr.bond}, rep {spec.label} has "
            f"{spec.bond(roles['i'], roles['j'])}")
    if tr.family in ("B2", "G2") and roles["i"] != spec.long_index:
        raise ConfigurationError(f"{tr.name} requires role i = long root")
    return roles


def _product(rep: MatrixRep, factors, coords, outputs, roles) -> Mat:
    m = Mat.identity(rep.dim)
    for kind, role, argfn in factors:
        idx = roles[role]
        if kind == "s":
            m = m @ rep.s_dot(idx)
            continue
        arg = argfn(coords) if not isinstance(argfn, _OutRef) else outputs[argfn.k]
        m = m @ (rep.x(idx, arg) if kind == "x" else rep.y(idx, arg))
    return m


def verify_identity(tr: CoordTransform, rep: MatrixRep, sample, roles=None) -> bool:
    """Exact check of the transform's group identity at one sample point.

    For exact identities: LHS equals RHS.  For identities stated up to a
    factor u in U_-: RHS^{-1} LHS must be unit lower-triangular, which inside
    these groups characterizes membership in the lower unipotent subgroup.
    """
    roles = _roles_for(tr, rep, roles)
    coords = tuple(sample)
    outputs = apply(tr, coords)
    lhs = _product(rep, tr.lhs, coords, outputs, roles)
    rhs = _product(rep, tr.rhs, coords, outputs, roles)
    if tr.up_to_lower:
        quotient = rhs.inverse() @ lhs
        return quotient.is_unit_lower_triangular()
    return lhs == rhs


def jacobian_check(tr: CoordTransform, sample):
    """Exact Jacobian ratio of the chart map at a positive sample.

    Computes all partials with dual numbers over the rationals and returns
    (|ratio|, sign) for ratio = Jac * prod(inputs) / prod(outputs); the
    magnitude must be exactly 1.
    """
    coords = tuple(Fraction(x) for x in sample)
    xs = variables(coords, zero=Fraction(0))
    ys = apply(tr, xs)
    jac = Mat([list(y.grad) for y in ys]).det()
    num = jac
    for x in coords:
        num *= x
    den = Fraction(1)
    for y in ys:
        den *= y.val
    ratio = num / den
    sign = 1 if ratio > 0 else -1
    return abs(ratio), sign


@dataclass(frozen=True)
class ChartStep:
    """One braid move between charts, with the transforms realizing it."""

    source: tuple[int, ...]
    target: tuple[int, ...]
    transforms: tuple[str, ...]


def transport_sign(path, require_closed: bool = False) -> int:
    """Product of the volume-form signs along a path of chart transitions."""
    steps = list(path)
    for prev, nxt in zip(steps, steps[1:]):
        if prev.target != nxt.source:
            raise ConfigurationError(
                f"chart mismatch: step ends at {prev.target}, next starts at {nxt.source}")
    if require_closed and steps and steps[-1].target != steps[0].source:
        raise ConfigurationError("path is not closed")
    sign = 1
    for step in steps:
        for name in step.transforms:
            sign *= transform(name).sign
    return sign

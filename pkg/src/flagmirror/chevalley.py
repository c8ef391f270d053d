"""Exact matrix realizations of the groups behind the verification suites.

Type A_n lives in (n+1)x(n+1) matrices with e_i = E_{i,i+1}; B2 in the
symplectic 4-dimensional representation; G2 in its 7-dimensional
representation.  For B2/G2 the basis is weight-ordered so that U_- maps to
unit lower-triangular matrices, and index 1 is the long simple root.  There is
no authoritative table to copy the B2/G2 matrices from; ``validate_rep`` is
the acceptance oracle (Serre relations plus the rank-2 braid identities, which
pin down the long/short convention).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .matrices import Mat, projectively_equal
from .scalars import DomainError, ValidationError
from .weyl import CartanSpec


@dataclass(frozen=True)
class MatrixRep:
    spec: CartanSpec
    dim: int
    e: tuple[Mat, ...]  # e[i-1] is the raising generator for simple index i
    f: tuple[Mat, ...]
    coweight_rho: Mat  # diagonal, alpha_i(rho) = 1 for all i

    def x(self, i: int, t) -> Mat:
        """x_i(t) = exp(t e_i); polynomial since e_i is nilpotent."""
        return _exp_nilpotent(self.e[i - 1], t)

    def y(self, i: int, t) -> Mat:
        return _exp_nilpotent(self.f[i - 1], t)

    def s_dot(self, i: int) -> Mat:
        """The Weyl representative x_i(1) y_i(-1) x_i(1) of s_i."""
        return self.x(i, Fraction(1)) @ self.y(i, Fraction(-1)) @ self.x(i, Fraction(1))

    def s_dot_inv(self, i: int) -> Mat:
        return self.x(i, Fraction(-1)) @ self.y(i, Fraction(1)) @ self.x(i, Fraction(-1))

    def cartan_h(self, i: int) -> Mat:
        return self.e[i - 1].commutator(self.f[i - 1])


def _exp_nilpotent(nilp: Mat, t) -> Mat:
    n = nilp.n
    acc = Mat.identity(n)
    term = Mat.identity(n)
    for k in range(1, n):
        term = term @ nilp
        if all(x == 0 for x in term.entries()):
            break
        coeff = t**k * Fraction(1, factorial(k)) if isinstance(t, (int, Fraction)) \
            else t**k / factorial(k)
        acc = acc + term.scale(coeff)
    return acc


@dataclass(frozen=True)
class GroupElement:
    rep: MatrixRep
    mat: Mat
    projective: bool = False

    def __post_init__(self):
        if self.mat.n != self.rep.dim:
            raise DomainError("matrix size does not match the representation")

    def inverse(self) -> "GroupElement":
        return GroupElement(self.rep, self.mat.inverse(), self.projective)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.rep, self.mat @ other.mat,
                            self.projective or other.projective)

    def equals(self, other: "GroupElement", tol=0.0) -> bool:
        if self.projective or other.projective:
            return projectively_equal(self.mat, other.mat, tol)
        if tol == 0.0:
            return self.mat == other.mat
        return (self.mat - other.mat).max_abs() <= tol


@dataclass(frozen=True)
class CoadjointElement:
    """A functional eta(X) = trace(M X) on the Lie algebra, carried by M."""

    rep: MatrixRep
    mat: Mat

    def pair(self, x: Mat):
        return (self.mat @ x).trace()


def one_param(rep: MatrixRep, kind: str, i: int, s) -> GroupElement:
    if kind not in ("x", "y"):
        raise DomainError("kind must be 'x' or 'y'")
    m = rep.x(i, s) if kind == "x" else rep.y(i, s)
    return GroupElement(rep, m)


def weyl_rep(rep: MatrixRep, letters, projective: bool = False) -> GroupElement:
    """Product of the s_i-dot factors along the word.

    Word-independence across reduced words of one element is a representation
    invariant, exercised by the test suite, not assumed here.
    """
    m = Mat.identity(rep.dim)
    for i in letters:
        m = m @ rep.s_dot(i)
    return GroupElement(rep, m, projective)


def coadjoint_act(g: GroupElement, eta: CoadjointElement) -> CoadjointElement:
    """g . eta carried by  g M g^{-1}  (trace-pairing transport)."""
    if g.rep is not eta.rep:
        raise DomainError("group element and functional live in different reps")
    return CoadjointElement(eta.rep, g.mat @ eta.mat @ g.mat.inverse())


# -- the three representation families -------------------------------------


@lru_cache(maxsize=None)
def rep_type_a(n: int) -> MatrixRep:
    """gl model of type A_n: e_i = E_{i,i+1}, f_i = E_{i+1,i}, rho = diag(n..0)."""
    if n < 1:
        raise DomainError("rank must be >= 1")
    dim = n + 1
    e = tuple(Mat.unit(dim, i, i + 1, Fraction(1), zero=Fraction(0)) for i in range(n))
    f = tuple(Mat.unit(dim, i + 1, i, Fraction(1), zero=Fraction(0)) for i in range(n))
    rho = Mat.diagonal([Fraction(n - k) for k in range(dim)], zero=Fraction(0))
    return MatrixRep(CartanSpec.type_a(n), dim, e, f, rho)


@lru_cache(maxsize=None)
def rep_b2() -> MatrixRep:
    """B2 in the 4-dimensional symplectic representation, index 1 = long root.

    The basis is conjugated so that all structure constants are positive
    (e_short = E_12 + E_34 rather than E_12 - E_34); this is the convention
    under which the subtraction-free braid formulas hold verbatim, and it is
    certified by the C3 check in validate_rep.
    """
    F = Fraction
    z = F(0)
    e_long = Mat.unit(4, 1, 2, F(1), zero=z)                       # E_{2,3}
    f_long = Mat.unit(4, 2, 1, F(1), zero=z)
    e_short = Mat.unit(4, 0, 1, F(1), zero=z) + Mat.unit(4, 2, 3, F(1), zero=z)
    f_short = Mat.unit(4, 1, 0, F(1), zero=z) + Mat.unit(4, 3, 2, F(1), zero=z)
    rho = Mat.diagonal([F(3, 2), F(1, 2), F(-1, 2), F(-3, 2)], zero=z)
    return MatrixRep(CartanSpec.b2(), 4, (e_long, e_short), (f_long, f_short), rho)


@lru_cache(maxsize=None)
def rep_g2() -> MatrixRep:
    """G2 in its 7-dimensional representation, index 1 = long root.

    The basis is ordered by weight (highest first); the short-root generator
    walks the two-step string through the zero weight, which forces the 2/1
    coefficient split below.  The sign and scale choices are certified by
    validate_rep (Serre + the C8 braid identity), not copied from a table.
    """
    F = Fraction
    z = F(0)
    e_short = (Mat.unit(7, 0, 1, F(1), zero=z) + Mat.unit(7, 2, 3, F(2), zero=z)
               + Mat.unit(7, 3, 4, F(1), zero=z) + Mat.unit(7, 5, 6, F(1), zero=z))
    f_short = (Mat.unit(7, 1, 0, F(1), zero=z) + Mat.unit(7, 3, 2, F(1), zero=z)
               + Mat.unit(7, 4, 3, F(2), zero=z) + Mat.unit(7, 6, 5, F(1), zero=z))
    e_long = Mat.unit(7, 1, 2, F(1), zero=z) + Mat.unit(7, 4, 5, F(1), zero=z)
    f_long = Mat.unit(7, 2, 1, F(1), zero=z) + Mat.unit(7, 5, 4, F(1), zero=z)
    rho = Mat.diagonal([F(3), F(2), F(1), F(0), F(-1), F(-2), F(-3)], zero=z)
    return MatrixRep(CartanSpec.g2(), 7, (e_long, e_short), (f_long, f_short), rho)


def rep_for(spec: CartanSpec) -> MatrixRep:
    if spec.label.startswith("A"):
        return rep_type_a(spec.rank)
    if spec.label == "B2":
        return rep_b2()
    if spec.label == "G2":
        return rep_g2()
    raise DomainError(f"no representation for {spec.label}")


# -- validation --------------------------------------------------------------


def validate_rep(rep: MatrixRep, samples: int = 10, seed: int = 7) -> list[str]:
    """Run every defining check; returns the list of check names that ran.

    Raises ValidationError naming the first failed relation.  For B2/G2 the
    braid identities C3/C8 are checked at random positive rational points,
    which certifies the long-root convention.
    """
    spec = rep.spec
    n = spec.rank
    checks = []

    def require(ok: bool, relation: str):
        checks.append(relation)
        if not ok:
            raise ValidationError(f"representation check failed: {relation}", relation)

    for i in range(1, n + 1):
        require(rep.cartan_h(i).is_diagonal(), f"[e_{i}, f_{i}] diagonal")
        for j in range(1, n + 1):
            if i != j:
                comm = rep.e[i - 1].commutator(rep.f[j - 1])
                require(all(x == 0 for x in comm.entries()), f"[e_{i}, f_{j}] = 0")

    # Cartan pairing through commutators: [h_i, e_j] = a(i, j) e_j
    for i in range(1, n + 1):
        h = rep.cartan_h(i)
        for j in range(1, n + 1):
            lhs = h.commutator(rep.e[j - 1])
            rhs = rep.e[j - 1].scale(Fraction(spec.a(i, j)))
            require(lhs == rhs, f"[h_{i}, e_{j}] = a({i},{j}) e_{j}")

    # Serre relations with the exponent 1 - a(i, j)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            k = 1 - spec.a(i, j)
            for gens, name in ((rep.e, "e"), (rep.f, "f")):
                acc = gens[j - 1]
                for _ in range(k):
                    acc = gens[i - 1].commutator(acc)
                require(all(x == 0 for x in acc.entries()),
                        f"Serre (ad {name}_{i})^{k} {name}_{j} = 0")

    # rho: alpha_i(rho) = 1, read off from [rho, e_i] = e_i
    for i in range(1, n + 1):
        require(rep.coweight_rho.commutator(rep.e[i - 1]) == rep.e[i - 1],
                f"[rho, e_{i}] = e_{i}")

    if spec.label in ("B2", "G2"):
        from .braid import transform, verify_identity  # local: braid imports this module

        name = "C3" if spec.label == "B2" else "C8"
        tr = transform(name)
        rng = random.Random(seed)
        for _ in range(samples):
            sample = tuple(Fraction(rng.randint(1, 40), rng.randint(1, 40))
                           for _ in range(tr.arity))
            require(verify_identity(tr, rep, sample),
                    f"braid identity {name} at {sample}")
    return checks

"""Forward-mode automatic differentiation via truncated dual numbers.

A ``Dual`` carries a value plus a gradient vector.  Coefficients may be exact
rationals (giving exact derivatives of rational maps, used by the Jacobian
checks), complex floats, numpy arrays (vectorizing one evaluation over a batch
of points), or nested ``Dual``s (giving second-order jets for Hessians).
Arithmetic is pure operator overloading, so any matrix/elimination code written
generically over its scalars differentiates for free.
"""

from __future__ import annotations

from fractions import Fraction


class Dual:
    """value + sum_k grad[k] * eps_k with eps_j * eps_k = 0."""

    __slots__ = ("val", "grad")

    def __init__(self, val, grad):
        self.val = val
        self.grad = tuple(grad)

    # -- helpers -------------------------------------------------------

    @staticmethod
    def constant(x, nvars, zero=0):
        return Dual(x, (zero,) * nvars)

    def _coerce(self, other):
        if isinstance(other, Dual):
            return other
        zero = self.grad[0] * 0 if self.grad else 0
        return Dual(other, (zero,) * len(self.grad))

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        return Dual(self.val + o.val, tuple(a + b for a, b in zip(self.grad, o.grad)))

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.val, tuple(-g for g in self.grad))

    def __sub__(self, other):
        o = self._coerce(other)
        return Dual(self.val - o.val, tuple(a - b for a, b in zip(self.grad, o.grad)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        v = self.val * o.val
        return Dual(v, tuple(self.val * gb + ga * o.val
                             for ga, gb in zip(self.grad, o.grad)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        inv = _reciprocal(o.val)
        v = self.val * inv
        return Dual(v, tuple((ga - v * gb) * inv for ga, gb in zip(self.grad, o.grad)))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise TypeError("Dual.__pow__ supports nonnegative integer exponents")
        out = self._coerce(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Dual):
            return self.val == other.val and self.grad == other.grad
        return self.val == other and all(g == 0 for g in self.grad)

    def __hash__(self):
        return hash((self.val, self.grad))

    def __repr__(self):
        return f"Dual({self.val!r}, grad={self.grad!r})"


def _reciprocal(x):
    if isinstance(x, (int, Fraction)):
        # ints show up as identity-matrix entries; keep their inverses exact
        return Fraction(1) / x
    return 1 / x  # float, complex, numpy array, or nested Dual


def value_of(x):
    """Strip all dual layers off ``x``."""
    while isinstance(x, Dual):
        x = x.val
    return x


def variables(values, zero=None):
    """Seed a tuple of first-order variables from plain values."""
    n = len(values)
    if zero is None:
        zero = values[0] * 0
    one = zero + 1
    out = []
    for k, v in enumerate(values):
        grad = [zero] * n
        grad[k] = one
        out.append(Dual(v, grad))
    return tuple(out)


def jacobian(f, point):
    """Exact Jacobian matrix of ``f`` (tuple-valued) at ``point``.

    Returns (values, rows) where rows[i][k] = d f_i / d x_k.
    """
    ys = f(variables(tuple(point)))
    vals = tuple(y.val if isinstance(y, Dual) else y for y in ys)
    rows = tuple(y.grad if isinstance(y, Dual) else (0,) * len(point) for y in ys)
    return vals, rows


def gradient(f, point):
    """Gradient of a scalar-valued ``f`` at ``point``."""
    y = f(variables(tuple(point)))
    return y.val, y.grad


def second_order_variables(values):
    """Seed variables as nested duals; f(vars) carries value/gradient/Hessian."""
    n = len(values)
    zero = values[0] * 0
    inner = variables(values, zero=zero)
    out = []
    for k in range(n):
        grad = [Dual.constant(zero, n, zero=zero) for _ in range(n)]
        grad[k] = Dual.constant(zero + 1, n, zero=zero)
        out.append(Dual(inner[k], grad))
    return tuple(out)


def hessian(f, point):
    """(value, gradient, hessian rows) of a scalar ``f`` at ``point``."""
    y = f(second_order_variables(tuple(point)))
    val = y.val.val
    grad = y.val.grad
    hess = tuple(g.grad for g in y.grad)
    return val, grad, hess

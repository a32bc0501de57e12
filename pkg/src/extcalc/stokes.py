"""Stokes's theorem on axis-aligned hypercubes, checked by quadrature.

The boundary integral of an (n-1)-form over the 2n oriented faces of
[0, a]^n is compared against the volume integral of its exterior
derivative and, for the built-in example pair, a closed-form value.
Tensor-product Gauss-Legendre quadrature is exact here because every
integrand is polynomial per axis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .sparse import DimensionError
from .forms import KForm, evaluate_form
from .derivatives import hat

__all__ = [
    "CubeDomain",
    "QuadratureRule",
    "phi_example",
    "dphi_example",
    "closed_form_value",
    "integrate_volume",
    "integrate_boundary",
    "verify_stokes",
    "verify_det_proportionality",
]


@dataclass(frozen=True)
class CubeDomain:
    """The cube [0, a]^n."""

    n: int
    a: float = 1.0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if not self.a > 0:
            raise ValueError("need edge length a > 0")


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on [0, a], m points per axis."""

    m: int
    a: float
    points: np.ndarray
    weights: np.ndarray

    @classmethod
    def gauss_legendre(cls, m: int, a: float) -> "QuadratureRule":
        m = int(m)
        if m < 2:
            raise ValueError("need at least 2 points per axis")
        if not a > 0:
            raise ValueError("need a > 0")
        t, w = np.polynomial.legendre.leggauss(m)
        return cls(m=m, a=float(a), points=(t + 1.0) * (a / 2.0), weights=w * (a / 2.0))


def phi_example(x) -> KForm:
    """The example (n-1)-form: (sum_i (-1)^(i-1) x_i^i) * hat(n)."""
    x = np.asarray(x, dtype=float)
    n = x.size
    if n < 2:
        raise ValueError("need a point in dimension >= 2")
    i = np.arange(1, n + 1)
    s = float(np.sum(np.where(i % 2 == 1, 1.0, -1.0) * x**i))
    return hat(n).scale(s)


def dphi_example(x) -> KForm:
    """Exterior derivative of phi_example: (sum_j j x_j^(j-1)) dx_1^...^dx_n."""
    x = np.asarray(x, dtype=float)
    n = x.size
    if n < 2:
        raise ValueError("need a point in dimension >= 2")
    j = np.arange(1, n + 1)
    c = float(np.sum(j * x ** (j - 1)))
    return KForm(n, {tuple(range(1, n + 1)): c}) if c != 0.0 else KForm(n)


def closed_form_value(n: int, a: float) -> float:
    """a^(n-1) * (a + a^2 + ... + a^n), the exact integral for the pair."""
    a = float(a)
    return a ** (n - 1) * sum(a**j for j in range(1, n + 1))


def _check_rule(cube: CubeDomain, rule: QuadratureRule):
    if rule.a != cube.a:
        raise ValueError("quadrature rule was built for a different edge length")


def integrate_volume(field, cube: CubeDomain, rule: QuadratureRule) -> float:
    """Integrate a degree-n form field over the cube.

    Nodes are visited in lexicographic order and accumulated left to
    right, so results are bitwise deterministic.
    """
    _check_rule(cube, rule)
    n = cube.n
    top = tuple(range(1, n + 1))
    point = np.empty(n)
    total = 0.0
    for combo in itertools.product(range(rule.m), repeat=n):
        w = 1.0
        for axis, c in enumerate(combo):
            point[axis] = rule.points[c]
            w *= rule.weights[c]
        form = field(point)
        if form.arity != n:
            raise DimensionError(
                f"volume integrand must have degree {n}, got {form.arity}"
            )
        total += w * form.terms.get(top, 0.0)
    return total


def integrate_boundary(field, cube: CubeDomain, rule: QuadratureRule) -> float:
    """Integrate a degree-(n-1) form field over the oriented boundary.

    Face x_i = a carries orientation (-1)^(i-1) and face x_i = 0
    carries (-1)^i; the tangent frame on both is the standard basis
    vectors e_j, j != i, in increasing order.  This sign convention is
    pinned by the Green's-theorem case x1 dx2 - x2 dx1 on [0,1]^2
    integrating to +2.
    """
    _check_rule(cube, rule)
    n = cube.n
    point = np.empty(n)
    total = 0.0
    for i in range(1, n + 1):
        frame = np.delete(np.eye(n), i - 1, axis=1)
        free = [axis for axis in range(n) if axis != i - 1]
        for side, orient in ((cube.a, -1.0 if (i - 1) % 2 else 1.0), (0.0, 1.0 if i % 2 == 0 else -1.0)):
            point[i - 1] = side
            for combo in itertools.product(range(rule.m), repeat=n - 1):
                w = 1.0
                for axis, c in zip(free, combo):
                    point[axis] = rule.points[c]
                    w *= rule.weights[c]
                form = field(point)
                if form.arity != n - 1:
                    raise DimensionError(
                        f"boundary integrand must have degree {n - 1}, got {form.arity}"
                    )
                total += orient * w * evaluate_form(form, frame)
    return total


def verify_stokes(n: int, a: float = 1.0, m: int = 8) -> dict:
    """Boundary, volume, and closed-form values for the example pair.

    Returns {"n", "a", "m", "boundary", "volume", "closed_form",
    "err_bv", "err_vc"} with absolute differences.  n is capped at 6:
    the volume rule visits m^n nodes.
    """
    n = int(n)
    if not 2 <= n <= 6:
        raise ValueError("n must be between 2 and 6 (m^n volume nodes)")
    cube = CubeDomain(n=n, a=float(a))
    rule = QuadratureRule.gauss_legendre(m, cube.a)
    boundary = float(integrate_boundary(phi_example, cube, rule))
    volume = float(integrate_volume(dphi_example, cube, rule))
    closed = closed_form_value(n, cube.a)
    return {
        "n": n,
        "a": cube.a,
        "m": rule.m,
        "boundary": boundary,
        "volume": volume,
        "closed_form": closed,
        "err_bv": abs(boundary - volume),
        "err_vc": abs(volume - closed),
    }


def verify_det_proportionality(w: KForm, E) -> dict:
    """Check evaluate_form(w, E) = det(E) * evaluate_form(w, I) for top forms."""
    E = np.asarray(E, dtype=float)
    if E.ndim != 2 or E.shape[0] != E.shape[1]:
        raise ValueError(f"need a square frame, got shape {E.shape}")
    n = E.shape[0]
    if w.arity != n:
        raise DimensionError(
            f"need a top form: degree {w.arity} on an {n}x{n} frame"
        )
    lhs = evaluate_form(w, E)
    rhs = float(np.linalg.det(E)) * evaluate_form(w, np.eye(n))
    return {"n": n, "lhs": lhs, "rhs": rhs, "diff": abs(lhs - rhs)}

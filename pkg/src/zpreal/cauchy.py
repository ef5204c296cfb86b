"""Scalar rational functions pinned by their poles and zeros.

A scalar rational function with n simple poles, n simple zeros, and a
finite nonzero value c at infinity is determined by those ingredients.
This module evaluates such functions, builds the Cauchy matrix

    s[p, q] = 1 / (mu_p - lambda_q)

that couples the zero set to the pole set, inverts it in closed form
through the derivative values of the function at its critical points,
and solves for the partial-fraction representations of the function and
its reciprocal. The k-by-k matrix machinery in the rest of the package
reduces to this module when k = 1, which the tests exploit as an
independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CollisionError,
    DegenerateDerivativeError,
    PoleHitError,
    ValidationError,
)
from .linalg import solve

EVAL_EPS = 1e-12     # distance below which an evaluation point "hits" a pole
SEP_EPS = 1e-10      # minimum separation between the defining points
DERIV_EPS = 1e-12    # derivative magnitude below which inversion degenerates

__all__ = [
    "EVAL_EPS",
    "SEP_EPS",
    "DERIV_EPS",
    "ScalarZeroPole",
    "scalar_eval",
    "cauchy_matrix",
    "cauchy_inverse_formula",
    "cauchy_det_squared",
    "scalar_system_representation",
    "scalar_joint_eval",
]


def _as_points(values, what: str) -> np.ndarray:
    pts = np.asarray(values, dtype=np.complex128)
    if pts.ndim != 1 or pts.size == 0:
        raise ValidationError(f"{what} must be a non-empty 1-d list of points")
    if not np.isfinite(pts).all():
        raise ValidationError(f"{what} contains non-finite points")
    return pts


def _min_pairwise_distance(pts: np.ndarray) -> float:
    if pts.size < 2:
        return float("inf")
    diff = pts[:, None] - pts[None, :]
    off = np.abs(diff)[~np.eye(pts.size, dtype=bool)]
    return float(off.min())


def _check_separation(poles: np.ndarray, zeros: np.ndarray, sep_eps: float):
    allpts = np.concatenate([poles, zeros])
    d = _min_pairwise_distance(allpts)
    if d < sep_eps:
        raise CollisionError(
            f"defining points are only {d:.3e} apart (need {sep_eps:.1e})",
            separation=d,
        )


def _check_clear_of(z: complex, points: np.ndarray, eps: float):
    if points.size == 0:
        return
    idx = int(np.argmin(np.abs(points - z)))
    dist = abs(points[idx] - z)
    if dist < eps:
        raise PoleHitError(z, complex(points[idx]), dist)


@dataclass(frozen=True)
class ScalarZeroPole:
    """A scalar rational function in general position.

    Parameters
    ----------
    poles : sequence of complex
        The n simple poles.
    zeros : sequence of complex
        The n simple zeros, disjoint from the poles.
    c : complex, optional
        Value at infinity, nonzero. Defaults to 1.

    All 2n points must be pairwise distinct (separation at least
    SEP_EPS); pole and zero counts must agree.
    """

    poles: tuple = field()
    zeros: tuple = field()
    c: complex = 1.0 + 0j

    def __post_init__(self):
        poles = _as_points(self.poles, "poles")
        zeros = _as_points(self.zeros, "zeros")
        if poles.size != zeros.size:
            raise ValidationError(
                f"{poles.size} poles vs {zeros.size} zeros; counts must match"
            )
        c = complex(self.c)
        if c == 0:
            raise ValidationError("value at infinity must be nonzero")
        _check_separation(poles, zeros, SEP_EPS)
        object.__setattr__(self, "poles", tuple(map(complex, poles)))
        object.__setattr__(self, "zeros", tuple(map(complex, zeros)))
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        return len(self.poles)


def scalar_eval(d: ScalarZeroPole, z: complex) -> complex:
    """Evaluate r(z) = c * prod(z - mu) / prod(z - lambda)."""
    poles = np.asarray(d.poles)
    zeros = np.asarray(d.zeros)
    _check_clear_of(z, poles, EVAL_EPS)
    return complex(d.c * np.prod(z - zeros) / np.prod(z - poles))


def cauchy_matrix(poles, zeros, sep_eps: float = SEP_EPS) -> np.ndarray:
    """The n x n matrix with entries 1 / (mu_p - lambda_q).

    Rows follow the zeros, columns the poles. Raises Collision when any
    zero comes within sep_eps of any pole.
    """
    lam = _as_points(poles, "poles")
    mu = _as_points(zeros, "zeros")
    if lam.size != mu.size:
        raise ValidationError(f"{lam.size} poles vs {mu.size} zeros")
    gaps = mu[:, None] - lam[None, :]
    worst = float(np.abs(gaps).min())
    if worst < sep_eps:
        raise CollisionError(
            f"a zero and a pole are only {worst:.3e} apart", separation=worst
        )
    return 1.0 / gaps


def _derivative_at_zeros(lam: np.ndarray, mu: np.ndarray, c: complex) -> np.ndarray:
    """r'(mu_q) for each zero, from the product form.

    Differentiating c * prod(z - mu_l) / prod(z - lambda_j) at z = mu_q
    kills every term except the one where the (z - mu_q) factor is
    differentiated, leaving c * prod_{l != q}(mu_q - mu_l) /
    prod_j(mu_q - lambda_j).
    """
    n = mu.size
    out = np.empty(n, dtype=np.complex128)
    for q in range(n):
        gaps = np.delete(mu - mu[q], q)
        out[q] = c * np.prod(-gaps) / np.prod(mu[q] - lam)
    return out


def _reciprocal_derivative_at_poles(lam: np.ndarray, mu: np.ndarray,
                                    c: complex) -> np.ndarray:
    """(1/r)'(lambda_p) for each pole; 1/r swaps the roles of the sets."""
    n = lam.size
    out = np.empty(n, dtype=np.complex128)
    for p in range(n):
        gaps = np.delete(lam - lam[p], p)
        out[p] = np.prod(-gaps) / (c * np.prod(lam[p] - mu))
    return out


def cauchy_inverse_formula(poles, zeros, c: complex = 1.0,
                           deriv_eps: float = DERIV_EPS) -> np.ndarray:
    """Closed-form inverse of cauchy_matrix(poles, zeros).

    Entry (p, q) is 1 / [ (1/r)'(lambda_p) * (lambda_p - mu_q) * r'(mu_q) ],
    with both derivatives taken analytically from the product form of the
    rational function the points define. The value of c cancels, so any
    nonzero c gives the same matrix. Rows follow the poles, columns the
    zeros, making the result a left and right inverse of the Cauchy
    matrix.
    """
    lam = _as_points(poles, "poles")
    mu = _as_points(zeros, "zeros")
    if lam.size != mu.size:
        raise ValidationError(f"{lam.size} poles vs {mu.size} zeros")
    _check_separation(lam, mu, SEP_EPS)
    c = complex(c)
    if c == 0:
        raise ValidationError("c must be nonzero")
    dz = _derivative_at_zeros(lam, mu, c)
    dp = _reciprocal_derivative_at_poles(lam, mu, c)
    small = min(np.abs(dz).min(), np.abs(dp).min())
    if small < deriv_eps:
        raise DegenerateDerivativeError(
            f"a critical derivative has magnitude {small:.3e} < {deriv_eps:.1e};"
            f" the closed-form inverse is meaningless here"
        )
    middle = 1.0 / (lam[:, None] - mu[None, :])
    return (1.0 / dp)[:, None] * middle * (1.0 / dz)[None, :]


def cauchy_det_squared(poles, zeros) -> complex:
    """Squared determinant of the Cauchy matrix, in closed form.

    Equals (-1)^n times the product of (1/r)'(lambda_p) over the poles
    and r'(mu_q) over the zeros, with c = 1. The sign factor arises
    because the inverse is a rescaling of the *transpose* of the matrix
    with every entry negated; on n = 1 sets like ([0], [1]) the signed
    form gives det([[1]])^2 = 1 where the bare product gives -1.
    """
    lam = _as_points(poles, "poles")
    mu = _as_points(zeros, "zeros")
    if lam.size != mu.size:
        raise ValidationError(f"{lam.size} poles vs {mu.size} zeros")
    _check_separation(lam, mu, SEP_EPS)
    dz = _derivative_at_zeros(lam, mu, 1.0 + 0j)
    dp = _reciprocal_derivative_at_poles(lam, mu, 1.0 + 0j)
    return complex((-1.0) ** lam.size * np.prod(dp) * np.prod(dz))


def scalar_system_representation(d: ScalarZeroPole):
    """Partial-fraction coefficients of r and 1/r, by linear solve.

    For c = 1 the function and its reciprocal admit

        r(z)   = 1 + sum_q xi_q  / (z - lambda_q)
        1/r(z) = 1 + sum_p eta_p / (z - mu_p)

    and requiring r to vanish on the zeros (resp. 1/r on the poles)
    turns the coefficients into solutions of linear systems against the
    Cauchy matrix: S xi = -ones and eta S = ones. Returns (xi, eta) as
    1-d arrays ordered like d.poles and d.zeros.
    """
    if d.c != 1:
        raise ValidationError(
            f"partial-fraction normal form needs c = 1, got c = {d.c}"
        )
    s = cauchy_matrix(d.poles, d.zeros)
    ones = np.ones(d.n, dtype=np.complex128)
    xi = solve(s, -ones)
    eta = solve(s.T, ones)
    return xi, eta


def scalar_joint_eval(d: ScalarZeroPole, x: complex, y: complex) -> complex:
    """Evaluate r(x) / r(y) through the coupling form, without products.

    Computes 1 + (x - y) * e (xI - A_P)^-1 S^-1 (yI - A_N)^-1 e*, where
    A_P, A_N are the diagonal matrices of poles and zeros, e is the
    all-ones row, and S the Cauchy matrix. Requires x clear of the poles
    and y clear of the zeros. At x = y the value is exactly 1.
    """
    if d.c != 1:
        raise ValidationError(f"joint form needs c = 1, got c = {d.c}")
    lam = np.asarray(d.poles)
    mu = np.asarray(d.zeros)
    _check_clear_of(x, lam, EVAL_EPS)
    _check_clear_of(y, mu, EVAL_EPS)
    s = cauchy_matrix(d.poles, d.zeros)
    u = 1.0 / (x - lam)          # e (xI - A_P)^-1
    v = 1.0 / (y - mu)           # (yI - A_N)^-1 e*
    w = solve(s, v)
    return complex(1.0 + (x - y) * (u @ w))

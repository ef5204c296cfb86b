"""Zero-pole data for rational k-by-k matrix functions.

A function R in general position (simple poles, simple zeros, rank-one
residues, R(infinity) = I, pole set disjoint from zero set, and the
same number n of each) is pinned down by four semiresidual matrices:
columns f over the poles and zeros on the left, rows g on the right,
with the residue of R at pole lambda_j equal to the rank-one product
F_P[:, j] * G_P[j, :] and the residue of R^-1 at zero mu_j equal to
F_N[:, j] * G_N[j, :]. This module stores and validates that data,
applies diagonal gauge rescalings, evaluates R and R^-1 from their
partial-fraction (additive) forms, and runs the consistency checks that
expose data whose pole side and zero side do not describe mutually
inverse functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cauchy import EVAL_EPS
from .errors import (
    CollisionError,
    NotRankOneError,
    PoleHitError,
    ValidationError,
    ZeroGaugeEntryError,
)
from .linalg import RANK_EPS, as_complex_matrix, frobenius, identity, rank
from .report import Report

SEP_MIN = 1e-6       # minimum separation among all poles and zeros
FAIL_TOL = 1e-6      # fail-closed threshold for consistency diagnostics
REPORT_TOL = 1e-8    # default reporting tolerance

__all__ = [
    "SEP_MIN",
    "FAIL_TOL",
    "REPORT_TOL",
    "ZeroPoleData",
    "GaugePair",
    "factor_rank_one",
    "gauge_transform",
    "additive_eval_R",
    "additive_eval_Rinv",
    "additive_deriv_R",
    "additive_deriv_Rinv",
    "pole_residue",
    "zero_residue",
    "sample_points",
    "check_consistency",
    "log_derivative_residues",
]


def _as_point_vector(values, what: str) -> np.ndarray:
    pts = np.atleast_1d(np.asarray(values, dtype=np.complex128))
    if pts.ndim != 1:
        raise ValidationError(f"{what} must be a flat list of points")
    if pts.size and not np.isfinite(pts).all():
        raise ValidationError(f"{what} contains non-finite points")
    return pts


@dataclass(frozen=True, eq=False)
class ZeroPoleData:
    """Validated zero-pole data. Treat instances as immutable.

    poles, zeros : (n,) complex arrays, pairwise separated by SEP_MIN
    F_P, F_N     : (k, n) left semiresiduals (columns, no zero column)
    G_P, G_N     : (n, k) right semiresiduals (rows, no zero row)

    n = 0 is legal and describes the identity function; it shows up as
    the trivial factor of one-sided factorizations.
    """

    poles: np.ndarray
    zeros: np.ndarray
    F_P: np.ndarray
    G_P: np.ndarray
    F_N: np.ndarray
    G_N: np.ndarray

    def __post_init__(self):
        poles = _as_point_vector(self.poles, "poles")
        zeros = _as_point_vector(self.zeros, "zeros")
        F_P = as_complex_matrix(self.F_P)
        G_P = as_complex_matrix(self.G_P)
        F_N = as_complex_matrix(self.F_N)
        G_N = as_complex_matrix(self.G_N)
        n = poles.size
        if zeros.size != n:
            raise ValidationError(f"{n} poles vs {zeros.size} zeros")
        k = F_P.shape[0]
        if k < 1:
            raise ValidationError("matrix dimension k must be at least 1")
        for name, m, shape in (
            ("F_P", F_P, (k, n)),
            ("G_P", G_P, (n, k)),
            ("F_N", F_N, (k, n)),
            ("G_N", G_N, (n, k)),
        ):
            if m.shape != shape:
                raise ValidationError(
                    f"{name} has shape {m.shape}, expected {shape}"
                )
        for name, m in (("F_P", F_P), ("F_N", F_N)):
            norms = np.abs(m).max(axis=0) if n else np.empty(0)
            if n and (norms == 0.0).any():
                j = int(np.argmin(norms))
                raise ValidationError(f"column {j} of {name} is zero")
        for name, m in (("G_P", G_P), ("G_N", G_N)):
            norms = np.abs(m).max(axis=1) if n else np.empty(0)
            if n and (norms == 0.0).any():
                j = int(np.argmin(norms))
                raise ValidationError(f"row {j} of {name} is zero")
        allpts = np.concatenate([poles, zeros])
        if allpts.size >= 2:
            diff = np.abs(allpts[:, None] - allpts[None, :])
            off = diff[~np.eye(allpts.size, dtype=bool)]
            worst = float(off.min())
            if worst < SEP_MIN:
                raise CollisionError(
                    f"poles/zeros are only {worst:.3e} apart "
                    f"(need {SEP_MIN:.1e})",
                    separation=worst,
                )
        for field_name, value in (
            ("poles", poles), ("zeros", zeros), ("F_P", F_P),
            ("G_P", G_P), ("F_N", F_N), ("G_N", G_N),
        ):
            object.__setattr__(self, field_name, value)

    @property
    def k(self) -> int:
        return self.F_P.shape[0]

    @property
    def n(self) -> int:
        return self.poles.size


@dataclass(frozen=True)
class GaugePair:
    """Diagonal rescalings applied to the pole and zero semiresiduals."""

    D_P: np.ndarray
    D_N: np.ndarray

    def __post_init__(self):
        dp = _as_point_vector(self.D_P, "D_P")
        dn = _as_point_vector(self.D_N, "D_N")
        if (np.abs(dp) == 0.0).any() or (np.abs(dn) == 0.0).any():
            raise ZeroGaugeEntryError("gauge entries must all be nonzero")
        object.__setattr__(self, "D_P", dp)
        object.__setattr__(self, "D_N", dn)


def factor_rank_one(m, rank_eps: float = RANK_EPS):
    """Split a rank-one matrix into a column f and a row g with f g = m.

    The gauge freedom (f d, d^-1 g) is fixed deterministically: f is the
    largest-norm column of m rescaled so its largest-magnitude entry is
    exactly 1, and g is then the corresponding row of m, which makes the
    reconstruction exact for exactly-rank-one input.
    """
    m = as_complex_matrix(m)
    r = rank(m, rank_eps)
    if r != 1:
        raise NotRankOneError(
            f"matrix has numerical rank {r}, expected 1", detected_rank=r
        )
    col_norms = np.sqrt((np.abs(m) ** 2).sum(axis=0))
    j = int(np.argmax(col_norms))
    col = m[:, j]
    i = int(np.argmax(np.abs(col)))
    f = col / col[i]
    g = m[i, :].copy()
    residual = frobenius(np.outer(f, g) - m)
    if residual > 1e-10 * frobenius(m):
        raise NotRankOneError(
            f"rank-one reconstruction off by {residual:.3e} "
            f"(> 1e-10 * norm); input is not cleanly rank one",
            detected_rank=r,
        )
    return f, g


def gauge_transform(d: ZeroPoleData, g: GaugePair) -> ZeroPoleData:
    """Rescale semiresiduals columnwise/rowwise; all residues invariant."""
    if g.D_P.size != d.n or g.D_N.size != d.n:
        raise ValidationError(
            f"gauge length {g.D_P.size}/{g.D_N.size} does not match n={d.n}"
        )
    return ZeroPoleData(
        poles=d.poles,
        zeros=d.zeros,
        F_P=d.F_P * g.D_P[None, :],
        G_P=d.G_P / g.D_P[:, None],
        F_N=d.F_N * g.D_N[None, :],
        G_N=d.G_N / g.D_N[:, None],
    )


def _check_clear(z: complex, points: np.ndarray, eps: float = EVAL_EPS):
    if points.size == 0:
        return
    i = int(np.argmin(np.abs(points - z)))
    dist = abs(points[i] - z)
    if dist < eps:
        raise PoleHitError(z, complex(points[i]), dist)


def additive_eval_R(d: ZeroPoleData, z: complex) -> np.ndarray:
    """R(z) = I + sum_j F_P[:, j] G_P[j, :] / (z - lambda_j)."""
    _check_clear(z, d.poles)
    if d.n == 0:
        return identity(d.k)
    w = 1.0 / (z - d.poles)
    return identity(d.k) + (d.F_P * w[None, :]) @ d.G_P


def additive_eval_Rinv(d: ZeroPoleData, z: complex) -> np.ndarray:
    """R^-1(z) = I + sum_j F_N[:, j] G_N[j, :] / (z - mu_j)."""
    _check_clear(z, d.zeros)
    if d.n == 0:
        return identity(d.k)
    w = 1.0 / (z - d.zeros)
    return identity(d.k) + (d.F_N * w[None, :]) @ d.G_N


def additive_deriv_R(d: ZeroPoleData, z: complex) -> np.ndarray:
    """Exact derivative of the additive form of R; no finite differences."""
    _check_clear(z, d.poles)
    if d.n == 0:
        return np.zeros((d.k, d.k), dtype=np.complex128)
    w2 = 1.0 / (z - d.poles) ** 2
    return -(d.F_P * w2[None, :]) @ d.G_P


def additive_deriv_Rinv(d: ZeroPoleData, z: complex) -> np.ndarray:
    _check_clear(z, d.zeros)
    if d.n == 0:
        return np.zeros((d.k, d.k), dtype=np.complex128)
    w2 = 1.0 / (z - d.zeros) ** 2
    return -(d.F_N * w2[None, :]) @ d.G_N


def pole_residue(d: ZeroPoleData, j: int) -> np.ndarray:
    """Residue of R at pole j: the rank-one matrix F_P[:, j] G_P[j, :]."""
    return np.outer(d.F_P[:, j], d.G_P[j, :])


def zero_residue(d: ZeroPoleData, j: int) -> np.ndarray:
    """Residue of R^-1 at zero j."""
    return np.outer(d.F_N[:, j], d.G_N[j, :])


def sample_points(d: ZeroPoleData, count: int = 8) -> list:
    """Deterministic evaluation points clear of every pole and zero.

    A ring around the centroid of the singular points, at 1.5 times
    (1 + max spread), keeps at least distance 1.5 from all of them, so
    no rejection is normally needed; a small rotation loop guards the
    degenerate cases anyway.
    """
    allpts = np.concatenate([d.poles, d.zeros])
    center = complex(allpts.mean()) if allpts.size else 0j
    spread = float(np.abs(allpts - center).max()) if allpts.size else 0.0
    rho = 1.5 * (1.0 + spread)
    for attempt in range(32):
        shift = 2.0 * np.pi * attempt / (count * 37.0)
        pts = [
            center + rho * np.exp(1j * (2.0 * np.pi * j / count + shift))
            for j in range(count)
        ]
        if allpts.size == 0:
            return pts
        clear = min(
            abs(p - q) for p in pts for q in allpts
        )
        if clear > 1e-6:
            return pts
    raise RuntimeError("could not place sample points clear of singularities")


def check_consistency(d: ZeroPoleData, tol: float = REPORT_TOL) -> Report:
    """Do the pole side and the zero side describe inverse functions?

    Four families of residuals, all of which vanish exactly for
    consistent data:

      (a) R(z) R^-1(z) - I and R^-1(z) R(z) - I at sample points;
      (b) R^-1(lambda) annihilates the residue of R at lambda from both
          sides, and symmetrically at the zeros;
      (c) R_lambda (R^-1)'(lambda) R_lambda = R_lambda at every pole;
      (d) R_mu R'(mu) R_mu = R_mu at every zero.

    Diagnostic only: always returns a report, never raises.
    """
    rep = Report()
    eye = identity(d.k)

    worst = 0.0
    for z in sample_points(d):
        r = additive_eval_R(d, z)
        ri = additive_eval_Rinv(d, z)
        worst = max(worst, frobenius(r @ ri - eye), frobenius(ri @ r - eye))
    rep.add("mutual_inverse_at_samples", worst, tol)

    worst_ann_p = 0.0
    worst_rel_p = 0.0
    for j in range(d.n):
        lam = d.poles[j]
        res = pole_residue(d, j)
        b0 = additive_eval_Rinv(d, lam)
        b1 = additive_deriv_Rinv(d, lam)
        worst_ann_p = max(
            worst_ann_p, frobenius(b0 @ res), frobenius(res @ b0)
        )
        worst_rel_p = max(worst_rel_p, frobenius(res @ b1 @ res - res))
    rep.add("annihilation_at_poles", worst_ann_p, tol)
    rep.add("pole_residue_identity", worst_rel_p, tol)

    worst_ann_z = 0.0
    worst_rel_z = 0.0
    for j in range(d.n):
        mu = d.zeros[j]
        res = zero_residue(d, j)
        a0 = additive_eval_R(d, mu)
        a1 = additive_deriv_R(d, mu)
        worst_ann_z = max(
            worst_ann_z, frobenius(a0 @ res), frobenius(res @ a0)
        )
        worst_rel_z = max(worst_rel_z, frobenius(res @ a1 @ res - res))
    rep.add("annihilation_at_zeros", worst_ann_z, tol)
    rep.add("zero_residue_identity", worst_rel_z, tol)
    return rep


def log_derivative_residues(d: ZeroPoleData):
    """Residues of the logarithmic derivative R'(z) R^-1(z).

    At a pole the residue is P_lambda = -R_lambda * (R^-1)'(lambda); at
    a zero it is P_mu = R'(mu) * R_mu. For consistent data P_lambda is
    a negated idempotent with trace -1, P_mu an idempotent with trace
    +1, and all of them sum to zero, which is the numerical witness of
    the pole/zero count balance.
    """
    p_poles = []
    for j in range(d.n):
        res = pole_residue(d, j)
        p_poles.append(-res @ additive_deriv_Rinv(d, d.poles[j]))
    p_zeros = []
    for j in range(d.n):
        res = zero_residue(d, j)
        p_zeros.append(additive_deriv_R(d, d.zeros[j]) @ res)
    return p_poles, p_zeros

"""Schwarz-Pick-type derivative bounds and kernel positivity checks.

Each ``bound_*`` function evaluates the right-hand side of one inequality
exactly as stated, computes the left-hand side (a derivative norm) from the
realization or a polynomial, and returns a :class:`BoundReport` carrying
lhs, rhs, slack, and sharpness ratio.

Writing n = n_1 + ... + n_d and D(z) = 1 - |phi(z)|^2 (for matrix-valued
phi the product of the two defect norms ||I - phi* phi||^(1/2)
||I - phi phi*||^(1/2) takes its place), the checked families are:

polydisk (sup norm s = ||z||_inf):
  first      |d phi/d z_j|  <=  D / (sqrt(1-|z_j|^2) sqrt(1-s^2))
  mixed      (n-2)! D / (1-s)^(n-1) * sum_{p != q} (1-|z_kp|^2)^(-1/2)(1-|z_kq|^2)^(-1/2)
  two_var    d = 2 form of ``mixed`` with similar terms collected
  factorial  n_1! ... n_d! D / ((1-s^2)(1-s)^(n-1))
  weak       n! D / ((1-s^2)(1-s)^(n-1))

ball (Euclidean norm t = ||z||_2, hat norms ||z-hat_j|| with coordinate j
zeroed):
  hat        (n-1)! D / ((1-t^2)(1-t)^(n-1)) * sum_j n_j sqrt(1-||z-hat_j||^2)
  factorial  d^((n-1)/2) n_1! ... n_d! D / ((1-t^2)(1-t)^(n-1))

plus the structure-free resolvent bound (``bound_general``), the weighted
first-order sum rule on the polydisk (``knese_residual``), the coefficient
bound |c_alpha| <= 1 - |c_0|^2 (``wiener_check``), and positivity of the
multiplier kernel Gram matrix on the ball (``multiplier_gram_psd``).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .colligation import Ball, Colligation, Polydisk
from .derivative import MultiIndex, Polynomial, partial_at, poly_partial
from .errors import DegenerateGramWarning, DomainViolationError
from .matrixcore import spectral_norm
from .reports import BoundReport
from .transfer import evaluate, resolvent_gram_factors

__all__ = [
    "PointGeometry",
    "BoundReport",
    "bound_general",
    "bound_polydisk",
    "bound_ball",
    "ball_kernel_subchecks",
    "wiener_check",
    "knese_residual",
    "multiplier_gram_psd",
    "POLYDISK_VARIANTS",
    "BALL_VARIANTS",
]

POLYDISK_VARIANTS = ("first", "mixed", "two_var", "factorial", "weak")
BALL_VARIANTS = ("hat", "factorial")

Subject = Union[Colligation, Polynomial]


@dataclass(frozen=True)
class PointGeometry:
    """Norm data of an evaluation point used on right-hand sides."""

    z: tuple[complex, ...]
    sup_norm: float
    eucl_norm: float
    hat_norms: tuple[float, ...]

    @classmethod
    def from_point(cls, z: Sequence[complex]) -> "PointGeometry":
        zt = tuple(complex(v) for v in z)
        moduli = [abs(v) for v in zt]
        hats = tuple(
            math.sqrt(sum(m * m for k, m in enumerate(moduli) if k != j))
            for j in range(len(zt))
        )
        return cls(
            z=zt,
            sup_norm=max(moduli) if moduli else 0.0,
            eucl_norm=math.sqrt(sum(m * m for m in moduli)),
            hat_norms=hats,
        )


def _defect_product(phi: np.ndarray) -> float:
    """1 - |phi|^2 for scalars; the two-sided defect norm product in general."""
    left = spectral_norm(np.eye(phi.shape[1]) - phi.conj().T @ phi)
    right = spectral_norm(np.eye(phi.shape[0]) - phi @ phi.conj().T)
    return math.sqrt(left) * math.sqrt(right)


def _lhs_and_defect(subject: Subject, z, mi: MultiIndex) -> tuple[float, float, tuple[str, ...]]:
    if isinstance(subject, Colligation):
        ctx = evaluate(subject, z)
        return spectral_norm(partial_at(ctx, mi)), _defect_product(ctx.phi), ctx.flags
    value = poly_partial(subject, z, mi)
    defect = 1.0 - abs(subject(z)) ** 2
    return abs(value), defect, ()


def bound_general(
    col: Colligation,
    z: Sequence[complex],
    *,
    alpha: Union[MultiIndex, Sequence[int], None] = None,
    klist: Sequence[int] | None = None,
) -> BoundReport:
    """Structure-free resolvent bound on a mixed partial.

    Exactly one of ``alpha``/``klist`` must be given.  First order compares
    against defect / sqrt(1 - ||Z||^2) times the smaller projected Gram
    factor; order n >= 2 against

        (n-2)! defect / (1 - ||Z||)^(n-1)
            * sum_{p != q} a(k_p) b(k_q)

    with a, b the projected resolvent Gram factors per coordinate.
    """
    if (alpha is None) == (klist is None):
        raise ValueError("give exactly one of alpha or klist")
    if alpha is not None:
        mi = MultiIndex.of(alpha)
        ks = mi.canonical_klist()
    else:
        ks = tuple(int(k) for k in klist)
        mi = MultiIndex.from_klist(ks, col.d)
    if mi.order < 1:
        raise ValueError("bound_general needs order >= 1")
    ctx = evaluate(col, z)
    defect = _defect_product(ctx.phi)
    a, b = resolvent_gram_factors(ctx)
    lhs = spectral_norm(partial_at(ctx, mi))
    znorm = ctx.znorm
    if mi.order == 1:
        j = ks[0]
        rhs = defect / math.sqrt(1.0 - znorm**2) * min(a[j - 1], b[j - 1])
        tag = "general.first_order"
    else:
        sum_a = sum(a[k - 1] for k in ks)
        sum_b = sum(b[k - 1] for k in ks)
        diag = sum(a[k - 1] * b[k - 1] for k in ks)
        pair_sum = sum_a * sum_b - diag
        rhs = (
            math.factorial(mi.order - 2)
            * defect
            / (1.0 - znorm) ** (mi.order - 1)
            * pair_sum
        )
        tag = "general.higher_order"
    return BoundReport(theorem_tag=tag, z=ctx.z, alpha=mi.counts, lhs=lhs, rhs=rhs, flags=ctx.flags)


def polydisk_rhs(defect: float, geom: PointGeometry, mi: MultiIndex, variant: str) -> float:
    """Right-hand side of the named polydisk inequality (no evaluation)."""
    n = mi.order
    s = geom.sup_norm
    if variant == "first":
        if n != 1:
            raise ValueError(f"variant 'first' needs order 1, got {n}")
        j = mi.counts.index(1)
        return defect / (math.sqrt(1.0 - abs(geom.z[j]) ** 2) * math.sqrt(1.0 - s**2))
    if variant == "mixed":
        if n < 2:
            raise ValueError(f"variant 'mixed' needs order >= 2, got {n}")
        w = [1.0 / math.sqrt(1.0 - abs(geom.z[k - 1]) ** 2) for k in mi.canonical_klist()]
        pair_sum = sum(w) ** 2 - sum(v * v for v in w)
        return math.factorial(n - 2) * defect / (1.0 - s) ** (n - 1) * pair_sum
    if variant == "two_var":
        if mi.d != 2:
            raise ValueError(f"variant 'two_var' needs d = 2, got d = {mi.d}")
        if n < 2:
            raise ValueError(f"variant 'two_var' needs order >= 2, got {n}")
        n1, n2 = mi.counts
        d1 = 1.0 - abs(geom.z[0]) ** 2
        d2 = 1.0 - abs(geom.z[1]) ** 2
        bracket = (
            (n1 * n1 - n1) / d1
            + 2.0 * n1 * n2 / math.sqrt(d1 * d2)
            + (n2 * n2 - n2) / d2
        )
        return math.factorial(n - 2) * defect / (1.0 - s) ** (n - 1) * bracket
    if variant == "factorial":
        if n < 1:
            raise ValueError("variant 'factorial' needs order >= 1")
        return mi.factorial_product * defect / ((1.0 - s**2) * (1.0 - s) ** (n - 1))
    if variant == "weak":
        if n < 1:
            raise ValueError("variant 'weak' needs order >= 1")
        return math.factorial(n) * defect / ((1.0 - s**2) * (1.0 - s) ** (n - 1))
    raise ValueError(f"unknown polydisk variant {variant!r}; known: {POLYDISK_VARIANTS}")


def bound_polydisk(
    subject: Subject,
    z: Sequence[complex],
    alpha: Union[MultiIndex, Sequence[int]],
    variant: str,
) -> BoundReport:
    """Polydisk derivative bound for a colligation or polynomial subject."""
    mi = MultiIndex.of(alpha)
    geom = PointGeometry.from_point(z)
    if geom.sup_norm >= 1.0:
        raise DomainViolationError(f"||z||_inf = {geom.sup_norm} is not < 1")
    if isinstance(subject, Colligation) and not isinstance(subject.structure, Polydisk):
        raise ValueError("polydisk bounds need a polydisk colligation")
    lhs, defect, flags = _lhs_and_defect(subject, z, mi)
    rhs = polydisk_rhs(defect, geom, mi, variant)
    return BoundReport(
        theorem_tag=f"polydisk.{variant}", z=geom.z, alpha=mi.counts,
        lhs=lhs, rhs=rhs, flags=flags,
    )


def ball_rhs(defect: float, geom: PointGeometry, mi: MultiIndex, variant: str, d: int) -> float:
    """Right-hand side of the named ball inequality (no evaluation)."""
    n = mi.order
    if n < 1:
        raise ValueError("ball bounds need order >= 1")
    t = geom.eucl_norm
    base = defect / ((1.0 - t**2) * (1.0 - t) ** (n - 1))
    if variant == "hat":
        hat_sum = sum(
            nj * math.sqrt(max(1.0 - geom.hat_norms[j] ** 2, 0.0))
            for j, nj in enumerate(mi.counts)
        )
        return math.factorial(n - 1) * base * hat_sum
    if variant == "factorial":
        return d ** ((n - 1) / 2.0) * mi.factorial_product * base
    raise ValueError(f"unknown ball variant {variant!r}; known: {BALL_VARIANTS}")


def bound_ball(
    subject: Subject,
    z: Sequence[complex],
    alpha: Union[MultiIndex, Sequence[int]],
    variant: str,
) -> BoundReport:
    """Ball derivative bound for a colligation or polynomial subject."""
    mi = MultiIndex.of(alpha)
    geom = PointGeometry.from_point(z)
    if geom.eucl_norm >= 1.0:
        raise DomainViolationError(f"||z||_2 = {geom.eucl_norm} is not < 1")
    if isinstance(subject, Colligation) and not isinstance(subject.structure, Ball):
        raise ValueError("ball bounds need a ball colligation")
    lhs, defect, flags = _lhs_and_defect(subject, z, mi)
    rhs = ball_rhs(defect, geom, mi, variant, mi.d)
    return BoundReport(
        theorem_tag=f"ball.{variant}", z=geom.z, alpha=mi.counts,
        lhs=lhs, rhs=rhs, flags=flags,
    )


def ball_kernel_subchecks(col: Colligation, z: Sequence[complex]) -> list[BoundReport]:
    """Closed forms of the projected resolvent Gram norms on the ball.

    For the stacked structure, ||E_j* (I - ZZ*)^{-1} E_j|| equals
    1 / (1 - ||z||^2) and ||E_j (I - Z*Z)^{-1} E_j*|| equals
    (1 - ||z-hat_j||^2) / (1 - ||z||^2); both are equalities, so the
    reports should sit at ratio one.
    """
    if not isinstance(col.structure, Ball):
        raise ValueError("kernel subchecks need a ball colligation")
    ctx = evaluate(col, z)
    geom = PointGeometry.from_point(z)
    a, b = resolvent_gram_factors(ctx)
    t2 = geom.eucl_norm**2
    out = []
    for j in range(col.d):
        out.append(BoundReport(
            theorem_tag="ball.gram_left",
            z=ctx.z, alpha=(j + 1,),
            lhs=b[j] ** 2,
            rhs=1.0 / (1.0 - t2),
            flags=ctx.flags,
        ))
        out.append(BoundReport(
            theorem_tag="ball.gram_right",
            z=ctx.z, alpha=(j + 1,),
            lhs=a[j] ** 2,
            rhs=(1.0 - geom.hat_norms[j] ** 2) / (1.0 - t2),
            flags=ctx.flags,
        ))
    return out


def wiener_check(subject: Subject, orders: Sequence[Union[MultiIndex, Sequence[int]]]) -> list[BoundReport]:
    """Taylor coefficient bound ||c_alpha|| <= defect(c_0) for alpha != 0.

    Coefficients come from the realization (partial at the origin divided
    by alpha!) or straight from a polynomial's table.  For scalar subjects
    the right-hand side is the classical 1 - |c_0|^2.
    """
    if isinstance(subject, Colligation):
        ctx0 = evaluate(subject, (0.0,) * subject.d)
        c0 = ctx0.phi
        rhs = _defect_product(c0)

        def coeff_norm(mi: MultiIndex) -> float:
            return spectral_norm(partial_at(ctx0, mi)) / mi.factorial_product
    else:
        c0val = subject((0.0,) * subject.dimension)
        rhs = 1.0 - abs(c0val) ** 2

        def coeff_norm(mi: MultiIndex) -> float:
            return abs(subject.coeffs.get(mi.counts, 0.0))

    origin = (0.0 + 0.0j,) * (subject.d if isinstance(subject, Colligation) else subject.dimension)
    out = []
    for alpha in orders:
        mi = MultiIndex.of(alpha)
        if mi.order == 0:
            continue
        out.append(BoundReport(
            theorem_tag="wiener.coefficient",
            z=origin, alpha=mi.counts,
            lhs=coeff_norm(mi), rhs=rhs,
        ))
    return out


def knese_residual(col: Colligation, z: Sequence[complex]) -> float:
    """Signed residual of the weighted first-order sum rule on the polydisk:

        sum_j (1 - |z_j|^2) |d phi / d z_j|  -  (1 - |phi(z)|^2).

    Nonpositive (up to rounding) for every scalar polydisk transfer
    function; zero at every point exactly for the symmetric extremal
    realizations with one-dimensional blocks.
    """
    if not isinstance(col.structure, Polydisk):
        raise ValueError("the sum rule applies to polydisk colligations")
    if col.dim_f != 1 or col.dim_g != 1:
        raise ValueError(
            f"the sum rule needs scalar phi, got dim_g x dim_f = {col.dim_g} x {col.dim_f}"
        )
    ctx = evaluate(col, z)
    total = 0.0
    for j in range(col.d):
        e_j = tuple(int(k == j) for k in range(col.d))
        total += (1.0 - abs(ctx.z[j]) ** 2) * abs(partial_at(ctx, e_j)[0, 0])
    return total - (1.0 - abs(ctx.phi[0, 0]) ** 2)


def knese_report(col: Colligation, z: Sequence[complex]) -> BoundReport:
    """Sum-rule inequality as a report: lhs the weighted derivative sum,
    rhs the defect 1 - |phi|^2."""
    residual = knese_residual(col, z)
    ctx = evaluate(col, z)
    rhs = 1.0 - abs(ctx.phi[0, 0]) ** 2
    return BoundReport(
        theorem_tag="knese.sum_rule", z=ctx.z, alpha=None,
        lhs=rhs + residual, rhs=rhs, flags=ctx.flags,
    )


def multiplier_gram_psd(f, points: Sequence[Sequence[complex]], dedup_tol: float = 1e-12) -> float:
    """Minimum eigenvalue of the multiplier kernel Gram matrix on the ball.

    Entry (k, j) is (1 - f(z_k) conj(f(z_j))) / (1 - <z_k, z_j>) with the
    Euclidean inner product.  Nonnegative spectra characterize contractive
    multipliers of the kernel 1 / (1 - <z, w>); a negative eigenvalue
    certifies non-membership.  Near-duplicate points trigger a warning
    since they force the matrix toward degeneracy.
    """
    pts = [tuple(complex(v) for v in p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    for p in pts:
        if math.sqrt(sum(abs(v) ** 2 for v in p)) >= 1.0:
            raise DomainViolationError(f"point {p} is not inside the unit ball")
    for i in range(len(pts)):
        for k in range(i + 1, len(pts)):
            if max(abs(a - b) for a, b in zip(pts[i], pts[k])) < dedup_tol:
                warnings.warn(
                    f"points {i} and {k} coincide to {dedup_tol:g}; Gram matrix is degenerate",
                    DegenerateGramWarning,
                    stacklevel=2,
                )
    values = [complex(f(p)) for p in pts]
    n = len(pts)
    gram = np.empty((n, n), dtype=np.complex128)
    for k in range(n):
        for j in range(n):
            inner = sum(zk * np.conj(zj) for zk, zj in zip(pts[k], pts[j]))
            gram[k, j] = (1.0 - values[k] * np.conj(values[j])) / (1.0 - inner)
    gram = (gram + gram.conj().T) / 2.0
    return float(np.linalg.eigvalsh(gram)[0])

"""Exact higher-order partial derivatives from the realization.

For a unitary colligation with linear pencil Z(z), first-order partials of
the transfer function are

    d phi / d z_j = C (I - ZA)^{-1} E_j (I - AZ)^{-1} B,

and an order-n mixed partial with per-coordinate multiplicities
(n_1, ..., n_d) equals

    n_1! ... n_d! * C (I - ZA)^{-1} K (I - AZ)^{-1} B,

where K sums the alternating products E_{j_1} L E_{j_2} L ... L E_{j_n}
over all distinct arrangements (j_1, ..., j_n) of the multiset holding
each coordinate symbol j with multiplicity n_j, and L = A (I - ZA)^{-1}.
The equivalent raw sum over all n! permutations of an index list is kept
as a cross-check (it is exponentially more expensive).

Two independent differentiation oracles close the loop: iterated Cauchy
coefficient extraction by trapezoid quadrature on circles (exponentially
accurate for analytic functions), and exact symbolic differentiation of
polynomials.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .colligation import Colligation, DomainStructure, Polydisk, projections
from .errors import ComplexityError
from .transfer import EvalContext, evaluate, phi_grid

__all__ = [
    "MultiIndex",
    "Polynomial",
    "arrangements",
    "koperator",
    "partial",
    "partial_at",
    "partial_permsum",
    "cauchy_partial",
    "cauchy_coefficient_table",
    "default_radii",
    "poly_partial",
    "kaijser_varopoulos",
    "alpay_kaptanoglu",
]

PERMSUM_TERM_LIMIT = 10**7


@dataclass(frozen=True)
class MultiIndex:
    """Per-coordinate derivative multiplicities (n_1, ..., n_d)."""

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if any(c < 0 for c in counts):
            raise ValueError(f"multi-index entries must be >= 0, got {counts}")

    @classmethod
    def of(cls, alpha: Union["MultiIndex", Sequence[int]]) -> "MultiIndex":
        return alpha if isinstance(alpha, MultiIndex) else cls(tuple(alpha))

    @classmethod
    def from_klist(cls, klist: Sequence[int], d: int) -> "MultiIndex":
        """Multiplicities of the 1-based coordinate symbols in ``klist``."""
        ks = tuple(int(k) for k in klist)
        if any(not 1 <= k <= d for k in ks):
            raise ValueError(f"index list {ks} has symbols outside 1..{d}")
        return cls(tuple(ks.count(j) for j in range(1, d + 1)))

    @property
    def d(self) -> int:
        return len(self.counts)

    @property
    def order(self) -> int:
        return sum(self.counts)

    @property
    def factorial_product(self) -> int:
        out = 1
        for c in self.counts:
            out *= math.factorial(c)
        return out

    @property
    def multinomial(self) -> int:
        return math.factorial(self.order) // self.factorial_product

    def canonical_klist(self) -> tuple[int, ...]:
        """(1, ..., 1, 2, ..., 2, ...) with symbol j repeated counts[j-1] times."""
        out: list[int] = []
        for j, c in enumerate(self.counts, start=1):
            out.extend([j] * c)
        return tuple(out)


def arrangements(alpha: Union[MultiIndex, Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """All distinct arrangements of the multiset behind ``alpha``.

    Symbol j (1-based) appears exactly alpha[j-1] times in each tuple; the
    tuples come out in lexicographic order and there are exactly
    multinomial(n; n_1, ..., n_d) of them.  The zero multi-index yields an
    empty sequence.
    """
    mi = MultiIndex.of(alpha)
    remaining = list(mi.counts)
    prefix: list[int] = []
    out: list[tuple[int, ...]] = []

    def descend():
        if len(prefix) == mi.order:
            out.append(tuple(prefix))
            return
        for j in range(mi.d):
            if remaining[j]:
                remaining[j] -= 1
                prefix.append(j + 1)
                descend()
                prefix.pop()
                remaining[j] += 1

    if mi.order:
        descend()
    return tuple(out)


def _chain_product(es: Sequence[np.ndarray], lmat: np.ndarray, arrangement: Sequence[int]) -> np.ndarray:
    """E_{j_1} L E_{j_2} L ... L E_{j_n} for one arrangement."""
    prod = es[arrangement[-1] - 1]
    for j in reversed(arrangement[:-1]):
        prod = es[j - 1] @ (lmat @ prod)
    return prod


def koperator(
    ctx: EvalContext,
    structure: DomainStructure,
    alpha: Union[MultiIndex, Sequence[int]],
    method: str = "enumerate",
) -> np.ndarray:
    """Arrangement sum K = sum E_{j_1} L E_{j_2} L ... L E_{j_n} at ``ctx``.

    Needs order n >= 2; the output maps K -> H (shape dim_h x dim_k).
    ``method="enumerate"`` sums the distinct arrangements directly (the
    reference path); ``method="dp"`` accumulates over sub-multisets, which
    costs O(prod(n_j + 1) * d) matrix products instead.
    """
    mi = MultiIndex.of(alpha)
    if mi.order < 2:
        raise ValueError(f"koperator needs order >= 2, got {mi.order}")
    if mi.d != structure.d:
        raise ValueError(f"multi-index has d={mi.d}, structure has d={structure.d}")
    es = projections(structure)
    lmat = ctx.lmat
    if method == "enumerate":
        total = np.zeros((structure.dim_h, structure.dim_k), dtype=np.complex128)
        for arrangement in arrangements(mi):
            total += _chain_product(es, lmat, arrangement)
        return total
    if method == "dp":
        # g[c] = sum over arrangements of sub-multiset c; recursion strips
        # the leading symbol: g[c] = sum_j E_j L g[c - e_j].
        states: dict[tuple[int, ...], np.ndarray] = {}
        axes = [range(c + 1) for c in mi.counts]
        for state in sorted(itertools.product(*axes), key=sum):
            n = sum(state)
            if n == 0:
                continue
            if n == 1:
                j = state.index(1)
                states[state] = es[j]
                continue
            acc = np.zeros((structure.dim_h, structure.dim_k), dtype=np.complex128)
            for j in range(mi.d):
                if state[j]:
                    prev = list(state)
                    prev[j] -= 1
                    acc += es[j] @ (lmat @ states[tuple(prev)])
            states[state] = acc
        return states[mi.counts]
    raise ValueError(f"unknown koperator method {method!r}")


def partial_at(ctx: EvalContext, alpha: Union[MultiIndex, Sequence[int]], method: str = "enumerate") -> np.ndarray:
    """Mixed partial of phi at an already evaluated context."""
    col = ctx.col
    mi = MultiIndex.of(alpha)
    if mi.d != col.d:
        raise ValueError(f"multi-index has d={mi.d}, colligation has d={col.d}")
    if mi.order == 0:
        return ctx.phi
    es = projections(col.structure)
    if mi.order == 1:
        j = mi.counts.index(1)
        return col.C @ ctx.r_ha @ es[j] @ ctx.r_ka @ col.B
    k = koperator(ctx, col.structure, mi, method=method)
    return mi.factorial_product * (col.C @ ctx.r_ha @ k @ ctx.r_ka @ col.B)


def partial(
    col: Colligation,
    z: Sequence[complex],
    alpha: Union[MultiIndex, Sequence[int]],
    method: str = "enumerate",
) -> np.ndarray:
    """Exact mixed partial d^n phi / dz^alpha at ``z`` from the realization.

    Order 0 returns phi(z) itself; the output always has shape
    (dim_g x dim_f).
    """
    return partial_at(evaluate(col, z), alpha, method=method)


def partial_permsum(col: Colligation, z: Sequence[complex], klist: Sequence[int]) -> np.ndarray:
    """Mixed partial via the full n!-term permutation sum (cross-check path).

    ``klist`` holds 1-based coordinate symbols; it is canonicalized to
    sorted order first (the sum is order-invariant).  Index lists whose
    factorial exceeds the term budget are refused.
    """
    ks = tuple(sorted(int(k) for k in klist))
    n = len(ks)
    if n < 2:
        raise ValueError(f"permutation sum needs order >= 2, got {n}")
    if math.factorial(n) > PERMSUM_TERM_LIMIT:
        raise ComplexityError(
            f"{n}! = {math.factorial(n)} terms exceeds the budget of {PERMSUM_TERM_LIMIT}"
        )
    MultiIndex.from_klist(ks, col.d)  # validates the symbols
    ctx = evaluate(col, z)
    es = projections(col.structure)
    total = np.zeros((col.dim_h, col.dim_k), dtype=np.complex128)
    for sigma in itertools.permutations(range(n)):
        total += _chain_product(es, ctx.lmat, [ks[i] for i in sigma])
    return col.C @ ctx.r_ha @ total @ ctx.r_ka @ col.B


# --- polynomials and the symbolic oracle -------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Polynomial in d complex variables, stored as multi-index -> coefficient."""

    dimension: int
    coeffs: Mapping[tuple[int, ...], complex]

    def __post_init__(self):
        clean = {}
        for key, val in self.coeffs.items():
            k = tuple(int(e) for e in key)
            if len(k) != self.dimension or any(e < 0 for e in k):
                raise ValueError(f"bad exponent tuple {key} for dimension {self.dimension}")
            if val != 0:
                clean[k] = complex(val)
        object.__setattr__(self, "coeffs", clean)

    def __call__(self, z: Sequence[complex]) -> complex:
        if len(z) != self.dimension:
            raise ValueError(f"point has {len(z)} coordinates, polynomial has {self.dimension}")
        zv = [complex(v) for v in z]
        total = 0j
        for exps, coeff in self.coeffs.items():
            term = coeff
            for zj, e in zip(zv, exps):
                term *= zj**e
            total += term
        return total

    def eval_points(self, points: np.ndarray) -> np.ndarray:
        """Vectorized evaluation over points of shape (m, d)."""
        pts = np.asarray(points, dtype=np.complex128)
        out = np.zeros(pts.shape[0], dtype=np.complex128)
        for exps, coeff in self.coeffs.items():
            term = np.full(pts.shape[0], coeff, dtype=np.complex128)
            for j, e in enumerate(exps):
                if e:
                    term = term * pts[:, j] ** e
            out += term
        return out


def poly_partial(p: Polynomial, z: Sequence[complex], alpha: Union[MultiIndex, Sequence[int]]) -> complex:
    """Exact symbolic mixed partial of a polynomial, evaluated at ``z``."""
    mi = MultiIndex.of(alpha)
    if mi.d != p.dimension:
        raise ValueError(f"multi-index has d={mi.d}, polynomial has d={p.dimension}")
    zv = [complex(v) for v in z]
    total = 0j
    for exps, coeff in p.coeffs.items():
        if any(e < a for e, a in zip(exps, mi.counts)):
            continue
        term = coeff
        for zj, e, a in zip(zv, exps, mi.counts):
            term *= math.factorial(e) // math.factorial(e - a)
            term *= zj ** (e - a)
        total += term
    return total


def kaijser_varopoulos() -> Polynomial:
    """Degree-2 polynomial in 3 variables, bounded by one on the tridisk
    but outside the Schur-Agler class there:
    (z1^2 + z2^2 + z3^2 - 2 z1 z2 - 2 z1 z3 - 2 z2 z3) / 5.
    """
    c = 1.0 / 5.0
    return Polynomial(3, {
        (2, 0, 0): c, (0, 2, 0): c, (0, 0, 2): c,
        (1, 1, 0): -2 * c, (1, 0, 1): -2 * c, (0, 1, 1): -2 * c,
    })


def alpay_kaptanoglu(m: int) -> Polynomial:
    """z1 + c_1 z2^2 + ... + c_m z2^(2m) on the two-variable ball, with the
    c_k taken from the series 1 - sqrt(1 - t) = sum c_k t^k.

    Schur class on the ball for every m >= 1, but not a contractive
    multiplier of the Arveson space.
    """
    if m < 1:
        raise ValueError(f"truncation order must be >= 1, got {m}")
    coeffs: dict[tuple[int, ...], complex] = {(1, 0): 1.0}
    c = 0.5
    for k in range(1, m + 1):
        coeffs[(0, 2 * k)] = c
        c *= (2 * k - 1) / (2 * k + 2)
    return Polynomial(2, coeffs)


# --- Cauchy quadrature oracle -------------------------------------------------


def default_radii(structure: DomainStructure, z: Sequence[complex], cap: float = 0.1) -> tuple[float, ...]:
    """Per-axis circle radii: min(cap, half the slack to the domain boundary).

    On the polydisk the axis-j slack is 1 - |z_j|; on the ball it is how far
    |z_j| may grow before the Euclidean norm reaches one.
    """
    zv = [complex(v) for v in z]
    if isinstance(structure, Polydisk):
        slacks = [1.0 - abs(v) for v in zv]
    else:
        total = sum(abs(v) ** 2 for v in zv)
        slacks = [np.sqrt(max(1.0 - (total - abs(v) ** 2), 0.0)) - abs(v) for v in zv]
    if any(s <= 0 for s in slacks):
        raise ValueError("point has no positive slack to the boundary")
    return tuple(min(cap, s / 2.0) for s in slacks)


def _normalize_radii(radius, d: int) -> tuple[float, ...]:
    if np.isscalar(radius):
        radii = (float(radius),) * d
    else:
        radii = tuple(float(r) for r in radius)
    if len(radii) != d or any(r <= 0 for r in radii):
        raise ValueError(f"need {d} positive radii, got {radius!r}")
    return radii


def _check_samples(samples: int, max_axis_order: int) -> None:
    if samples < 4 * (max_axis_order + 1) or samples & (samples - 1):
        raise ValueError(
            f"samples must be a power of 2 and >= {4 * (max_axis_order + 1)}, got {samples}"
        )


def _sample_torus(f, z: Sequence[complex], radii: tuple[float, ...], samples: int) -> np.ndarray:
    """Values of f on the product of circles z_j + r_j e^(i theta); shape
    (samples,)*d (+ output shape for matrix-valued f)."""
    d = len(radii)
    theta = 2.0 * np.pi * np.arange(samples) / samples
    rings = [complex(z[j]) + radii[j] * np.exp(1j * theta) for j in range(d)]
    grids = np.meshgrid(*rings, indexing="ij")
    pts = np.stack([g.reshape(-1) for g in grids], axis=1)  # (samples^d, d)
    if isinstance(f, Colligation):
        vals = phi_grid(f, pts)
    elif isinstance(f, Polynomial):
        vals = f.eval_points(pts)
    else:
        vals = np.array([f(tuple(p)) for p in pts])
    return vals.reshape((samples,) * d + vals.shape[1:])


def _as_output(value: np.ndarray, scalar: bool):
    return complex(value) if scalar else np.asarray(value)


def cauchy_partial(
    f,
    z: Sequence[complex],
    alpha: Union[MultiIndex, Sequence[int]],
    radius=None,
    samples: int = 64,
):
    """Mixed partial of an analytic function by Cauchy coefficient extraction.

    ``f`` may be a Colligation (its transfer function is differentiated; the
    evaluation grid is vectorized), a Polynomial, or any callable taking a
    point.  Iterated trapezoid quadrature on the circles |zeta_j - z_j| =
    radius_j extracts the Taylor coefficient, and the alpha! rescaling turns
    it into the derivative.  The quadrature error decays exponentially in
    ``samples`` as long as the closed polydisc of the radii stays inside the
    domain of analyticity; the closed polydisc must lie in the admissible
    set (grid evaluation rejects it otherwise).

    Returns a complex scalar for scalar-valued f, else a complex matrix.
    """
    mi = MultiIndex.of(alpha)
    if radius is None:
        if isinstance(f, Colligation):
            radii = default_radii(f.structure, z)
        elif isinstance(f, Polynomial):
            radii = (0.5,) * mi.d
        else:
            raise ValueError("a bare callable needs an explicit radius")
    else:
        radii = _normalize_radii(radius, mi.d)
    _check_samples(samples, max(mi.counts))
    grid = _sample_torus(f, z, radii, samples)
    scalar = grid.ndim == mi.d
    theta = 2.0 * np.pi * np.arange(samples) / samples
    out = grid
    # One axis at a time: multiply by e^(-i n_j theta) and average.
    for axis, n_j in enumerate(mi.counts):
        weight = np.exp(-1j * n_j * theta)
        shape = [1] * out.ndim
        shape[axis] = samples
        out = out * weight.reshape(shape)
    for _ in range(mi.d):
        out = out.mean(axis=0)
    scale = mi.factorial_product
    for r, n_j in zip(radii, mi.counts):
        scale /= r**n_j
    return _as_output(scale * out, scalar)


def cauchy_coefficient_table(
    f,
    z: Sequence[complex],
    max_axis_order: int,
    radius=None,
    samples: int = 64,
) -> dict[tuple[int, ...], np.ndarray]:
    """All mixed partials with every axis order <= ``max_axis_order``, from a
    single sampled grid via the FFT (the same trapezoid sums, batched).

    Returns {multi-index: derivative}, with values shaped like
    :func:`cauchy_partial` output.
    """
    if isinstance(f, Colligation):
        d = f.d
        radii = default_radii(f.structure, z) if radius is None else _normalize_radii(radius, f.d)
    elif isinstance(f, Polynomial):
        d = f.dimension
        radii = (0.5,) * d if radius is None else _normalize_radii(radius, d)
    else:
        if radius is None:
            raise ValueError("a bare callable needs an explicit radius")
        radii = _normalize_radii(radius, len(tuple(z)))
        d = len(radii)
    _check_samples(samples, max_axis_order)
    grid = _sample_torus(f, z, radii, samples)
    scalar = grid.ndim == d
    coeffs = np.fft.fftn(grid, axes=tuple(range(d))) / samples**d
    table: dict[tuple[int, ...], np.ndarray] = {}
    for alpha in itertools.product(range(max_axis_order + 1), repeat=d):
        mi = MultiIndex(alpha)
        scale = mi.factorial_product
        for r, n_j in zip(radii, alpha):
            scale /= r**n_j
        table[alpha] = _as_output(scale * coeffs[alpha], scalar)
    return table

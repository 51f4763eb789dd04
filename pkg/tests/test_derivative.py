"""Derivative machinery: arrangements, the K operator, and both oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aglerlab import (
    Ball,
    ComplexityError,
    MultiIndex,
    Polydisk,
    Polynomial,
    alpay_kaptanoglu,
    arrangements,
    blaschke,
    kaijser_varopoulos,
    koperator,
    monomial,
    partial,
    partial_permsum,
    poly_partial,
    random_colligation,
    spectral_norm,
)
from aglerlab.colligation import projections
from aglerlab.derivative import (
    cauchy_coefficient_table,
    cauchy_partial,
    default_radii,
    partial_at,
)
from aglerlab.transfer import evaluate
from conftest import interior_point

# ten distinct arrangements of the multiset {1,1,1,2,2}, lexicographic
ARRANGEMENTS_32 = [
    (1, 1, 1, 2, 2), (1, 1, 2, 1, 2), (1, 1, 2, 2, 1), (1, 2, 1, 1, 2),
    (1, 2, 1, 2, 1), (1, 2, 2, 1, 1), (2, 1, 1, 1, 2), (2, 1, 1, 2, 1),
    (2, 1, 2, 1, 1), (2, 2, 1, 1, 1),
]


class TestMultiIndex:
    def test_bookkeeping(self):
        mi = MultiIndex((3, 2))
        assert mi.order == 5
        assert mi.multinomial == 10
        assert mi.factorial_product == 12
        assert mi.canonical_klist() == (1, 1, 1, 2, 2)

    def test_from_klist(self):
        assert MultiIndex.from_klist((2, 1, 2), 3).counts == (1, 2, 0)
        with pytest.raises(ValueError):
            MultiIndex.from_klist((0,), 2)
        with pytest.raises(ValueError):
            MultiIndex.from_klist((3,), 2)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            MultiIndex((1, -1))


class TestArrangements:
    def test_single_symbol(self):
        assert arrangements((2, 0)) == ((1, 1),)

    def test_two_symbols(self):
        assert arrangements((1, 1)) == ((1, 2), (2, 1))

    def test_three_two_case(self):
        assert list(arrangements((3, 2))) == ARRANGEMENTS_32

    def test_zero_index_is_empty(self):
        assert arrangements((0, 0)) == ()

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(0, 4), min_size=1, max_size=4))
    def test_count_and_content(self, alpha):
        mi = MultiIndex(tuple(alpha))
        if mi.order > 8:
            alpha = [min(a, 2) for a in alpha]
            mi = MultiIndex(tuple(alpha))
        arrs = arrangements(mi)
        if mi.order == 0:
            assert arrs == ()
            return
        assert len(arrs) == mi.multinomial
        assert len(set(arrs)) == len(arrs)
        assert list(arrs) == sorted(arrs)
        for arr in arrs:
            assert all(arr.count(j + 1) == nj for j, nj in enumerate(mi.counts))


class TestKOperator:
    def test_two_term_sum_by_hand(self):
        col = random_colligation(Polydisk((1, 1)), dim_g=1, seed=21)
        ctx = evaluate(col, (0.3, -0.4j))
        e1, e2 = projections(col.structure)
        expected = e1 @ ctx.lmat @ e2 + e2 @ ctx.lmat @ e1
        np.testing.assert_allclose(koperator(ctx, col.structure, (1, 1)), expected, atol=1e-14)

    def test_rejects_low_order(self):
        col = blaschke(0.2)
        ctx = evaluate(col, (0.1,))
        with pytest.raises(ValueError, match="order"):
            koperator(ctx, col.structure, (1,))

    def test_dp_matches_enumeration(self):
        rng = np.random.default_rng(9)
        col = random_colligation(Polydisk((2, 1, 2)), dim_g=1, seed=22)
        for alpha in [(2, 0, 0), (1, 1, 1), (2, 2, 1), (3, 0, 2)]:
            ctx = evaluate(col, interior_point(col.structure, rng, scale=0.8))
            a = koperator(ctx, col.structure, alpha, method="enumerate")
            b = koperator(ctx, col.structure, alpha, method="dp")
            assert spectral_norm(a - b) <= 1e-12

    def test_polydisk_norm_bound(self):
        rng = np.random.default_rng(10)
        col = random_colligation(Polydisk((2, 2)), dim_g=1, seed=23)
        for _ in range(20):
            ctx = evaluate(col, interior_point(col.structure, rng, scale=0.9))
            lnorm = spectral_norm(ctx.lmat)
            for alpha in [(2, 0), (1, 1), (2, 3), (4, 1)]:
                k = koperator(ctx, col.structure, alpha)
                n = sum(alpha)
                assert spectral_norm(k) <= lnorm ** (n - 1) + 1e-10

    def test_ball_norm_bound(self):
        rng = np.random.default_rng(11)
        col = random_colligation(Ball(2, 3), dim_g=1, seed=24)
        d = 3
        for _ in range(20):
            ctx = evaluate(col, interior_point(col.structure, rng, scale=0.9))
            lnorm = spectral_norm(ctx.lmat)
            for alpha in [(2, 0, 0), (1, 1, 1), (2, 1, 2)]:
                k = koperator(ctx, col.structure, alpha)
                n = sum(alpha)
                assert spectral_norm(k) <= d ** ((n - 1) / 2) * lnorm ** (n - 1) + 1e-10


class TestPartial:
    def test_monomial_mixed_second(self):
        col = monomial((1, 1))
        for z in [(0.0, 0.0), (0.3, 0.4), (-0.2j, 0.6)]:
            np.testing.assert_allclose(partial(col, z, (1, 1)), [[1.0]], atol=1e-12)

    def test_blaschke_first_derivative(self):
        for a in (0.0, 0.5, 0.3 - 0.6j):
            col = blaschke(a)
            got = partial(col, (0.0,), (1,))[0, 0]
            np.testing.assert_allclose(got, 1 - abs(a) ** 2, atol=1e-14)

    def test_derivative_past_degree_vanishes(self):
        col = monomial((2, 1))
        assert spectral_norm(partial(col, (0.2, 0.1), (3, 1))) <= 1e-12
        assert spectral_norm(partial(col, (0.2, 0.1), (0, 2))) <= 1e-12

    def test_order_zero_returns_phi(self):
        col = blaschke(0.4)
        np.testing.assert_array_equal(partial(col, (0.2,), (0,)), evaluate(col, (0.2,)).phi)

    def test_monomial_exact_formula(self):
        # d^alpha z^alpha has the closed form alpha! at every point of the domain
        col = monomial((2, 3))
        got = partial(col, (0.1, -0.3j), (2, 3))
        np.testing.assert_allclose(got, [[12.0]], atol=1e-10)


class TestPermutationSum:
    def test_mixed_pair(self):
        np.testing.assert_allclose(
            partial_permsum(monomial((1, 1)), (0.2, 0.5), (1, 2)), [[1.0]], atol=1e-12
        )

    def test_repeated_symbol_doubles_single_arrangement(self):
        col = random_colligation(Polydisk((2, 1)), dim_g=1, seed=25)
        z = (0.3, 0.1 - 0.2j)
        ctx = evaluate(col, z)
        e1 = projections(col.structure)[0]
        single = col.C @ ctx.r_ha @ (e1 @ ctx.lmat @ e1) @ ctx.r_ka @ col.B
        np.testing.assert_allclose(partial_permsum(col, z, (1, 1)), 2 * single, atol=1e-13)

    def test_agrees_with_arrangement_form(self):
        rng = np.random.default_rng(12)
        col = random_colligation(Polydisk((1, 2)), dim_g=1, seed=26)
        for klist in [(1, 2), (2, 2), (1, 1, 2), (1, 2, 2, 1), (2, 1, 2, 1, 1)]:
            z = interior_point(col.structure, rng, scale=0.6)
            mi = MultiIndex.from_klist(klist, col.d)
            diff = partial_permsum(col, z, klist) - partial(col, z, mi)
            assert spectral_norm(diff) <= 1e-12

    def test_order_invariance(self):
        col = random_colligation(Polydisk((1, 1)), dim_g=1, seed=27)
        z = (0.4, -0.3)
        a = partial_permsum(col, z, (1, 2, 1))
        b = partial_permsum(col, z, (2, 1, 1))
        np.testing.assert_array_equal(a, b)  # canonicalized before dispatch

    def test_refuses_excessive_order(self):
        col = blaschke(0.1)
        with pytest.raises(ComplexityError):
            partial_permsum(col, (0.0,), (1,) * 11)

    def test_rejects_first_order(self):
        with pytest.raises(ValueError):
            partial_permsum(blaschke(0.1), (0.0,), (1,))

    def test_term_count_bookkeeping(self):
        for alpha in [(2, 1), (3, 2), (1, 1, 2)]:
            mi = MultiIndex(alpha)
            assert math.factorial(mi.order) == mi.multinomial * mi.factorial_product


class TestPolynomials:
    def test_eval_and_vectorized_agree(self):
        p = Polynomial(2, {(1, 0): 1.0, (0, 2): -2.0j, (2, 1): 0.5})
        rng = np.random.default_rng(13)
        pts = rng.standard_normal((6, 2)) + 1j * rng.standard_normal((6, 2))
        batch = p.eval_points(pts)
        for k in range(6):
            np.testing.assert_allclose(batch[k], p(tuple(pts[k])), atol=1e-14)

    def test_poly_partial_examples(self):
        kv = kaijser_varopoulos()
        assert poly_partial(kv, (0, 0, 0), (2, 0, 0)) == pytest.approx(2 / 5)
        assert poly_partial(kv, (0, 0, 0), (1, 1, 0)) == pytest.approx(-2 / 5)
        p = Polynomial(3, {(1, 0, 0): 1.0})
        assert poly_partial(p, (0.3, 0.1, 0.9), (0, 1, 0)) == 0
        assert poly_partial(Polynomial(1, {(0,): 0.7}), (0.2,), (0,)) == pytest.approx(0.7)

    def test_kaijser_varopoulos_values(self):
        kv = kaijser_varopoulos()
        assert kv((0, 0, 0)) == 0
        assert kv((1, 1, 1)) == pytest.approx((3 - 6) / 5)

    def test_alpay_kaptanoglu_series(self):
        p = alpay_kaptanoglu(4)
        assert p.coeffs[(1, 0)] == 1.0
        assert p.coeffs[(0, 2)] == pytest.approx(1 / 2)
        assert p.coeffs[(0, 4)] == pytest.approx(1 / 8)
        assert p.coeffs[(0, 6)] == pytest.approx(1 / 16)
        assert p.coeffs[(0, 8)] == pytest.approx(5 / 128)
        # series sums to 1 - sqrt(1 - t) up to the truncation error
        t = 0.2
        tail = sum(p.coeffs[(0, 2 * k)] * t**k for k in range(1, 5))
        assert abs(tail - (1 - math.sqrt(1 - t))) <= 2e-5

    def test_alpay_kaptanoglu_rejects_zero(self):
        with pytest.raises(ValueError):
            alpay_kaptanoglu(0)


class TestCauchyOracle:
    def test_exact_on_monomial_polynomial(self):
        p = Polynomial(2, {(1, 1): 1.0})
        got = cauchy_partial(p, (0.0, 0.0), (1, 1), radius=0.5, samples=16)
        assert abs(got - 1.0) <= 1e-12

    def test_constant_has_zero_derivative(self):
        p = Polynomial(2, {(0, 0): 0.3 + 0.1j})
        assert abs(cauchy_partial(p, (0.1, 0.2), (1, 0), radius=0.3, samples=16)) <= 1e-12

    def test_blaschke_third_derivative(self):
        col = blaschke(0.5)
        got = cauchy_partial(col, (0.2,), (3,))
        exact = partial(col, (0.2,), (3,))
        assert spectral_norm(np.atleast_2d(got) - exact) <= 1e-8

    def test_default_radii(self):
        got = default_radii(Polydisk((1, 1)), (0.9, 0.0))
        assert got == pytest.approx((0.05, 0.1))
        r = default_radii(Ball(1, 2), (0.6, 0.0))
        assert r[0] == pytest.approx(min(0.1, (1 - 0.6) / 2))
        assert r[1] == pytest.approx(0.1)
        with pytest.raises(ValueError):
            default_radii(Polydisk((1,)), (1.0,))

    def test_bare_callable_needs_radius(self):
        with pytest.raises(ValueError, match="radius"):
            cauchy_partial(lambda z: z[0], (0.0,), (1,))

    def test_bare_callable_path(self):
        got = cauchy_partial(lambda z: z[0] ** 2, (0.1,), (2,), radius=0.2, samples=16)
        assert abs(got - 2.0) <= 1e-12

    def test_sample_count_validation(self):
        p = Polynomial(1, {(1,): 1.0})
        with pytest.raises(ValueError, match="samples"):
            cauchy_partial(p, (0.0,), (1,), radius=0.1, samples=24)  # not a power of 2
        with pytest.raises(ValueError, match="samples"):
            cauchy_partial(p, (0.0,), (3,), radius=0.1, samples=8)  # too few

    def test_table_matches_single_extractions(self):
        col = random_colligation(Polydisk((1, 1)), dim_g=1, seed=28)
        z = (0.2, -0.1j)
        table = cauchy_coefficient_table(col, z, max_axis_order=2, samples=32)
        for alpha in [(0, 0), (1, 0), (2, 1), (2, 2)]:
            single = cauchy_partial(col, z, alpha, samples=32)
            np.testing.assert_allclose(table[alpha], np.atleast_2d(single), atol=1e-12)

    def test_oracle_vs_realization_across_orders(self):
        rng = np.random.default_rng(14)
        col = random_colligation(Ball(1, 2), dim_g=1, seed=29)
        z = interior_point(col.structure, rng, scale=0.4)
        ctx = evaluate(col, z)
        table = cauchy_coefficient_table(col, z, max_axis_order=5, samples=32)
        for alpha, oracle in table.items():
            if sum(alpha) > 5:
                continue
            exact = partial_at(ctx, alpha)
            err = spectral_norm(exact - np.atleast_2d(oracle))
            assert err <= 1e-6 * max(1.0, spectral_norm(exact))

    def test_mixed_partial_symmetry(self):
        # analyticity: any differentiation order gives the same mixed partial
        col = random_colligation(Polydisk((2, 1)), dim_g=1, seed=30)
        z = (0.25, 0.4j)
        a = partial_permsum(col, z, (1, 1, 2))
        b = partial_permsum(col, z, (2, 1, 1))
        c = partial(col, z, (2, 1))
        assert spectral_norm(a - b) <= 1e-12
        assert spectral_norm(a - c) <= 1e-12

"""Weight functions against the closed low-rank forms and their symmetries."""

import numpy as np
import pytest

from ellweights import (ChernPoint, P, ParameterPoint, Permutation, PoleError,
                        ThetaContext, U, W, W_sigma, all_permutations,
                        compose, compose_values, is_generic, psi,
                        random_chern_point, random_parameter_point, theta,
                        weight_terms)


def rel(a, b):
    return abs(a - b) / (abs(a) + abs(b) + 1e-300)


def w2_closed(I, t, p, ctx):
    """Closed n=2 forms of the weight functions."""
    lz, lmu, lh = p.log_z, p.log_mu, p.log_h
    if I.word == (1, 2):
        return theta(ctx, lh + lz[0] + lmu[1] - t - lmu[0]) * theta(ctx, lz[1] - t)
    return theta(ctx, lh + lz[0] - t) * theta(ctx, lz[1] + lmu[1] - t - lmu[0])


def w321_closed(t, p, ctx):
    """Two-term n=3 closed form of the longest weight function."""
    lz, lmu, lh = p.log_z, p.log_mu, p.log_h
    th = lambda w: theta(ctx, w)

    def term(t1, t2, t11):
        num = (th(lh + t1 - t11) * th(t2 + lmu[1] - t11 - lmu[0])
               * th(lh + lz[0] - t1) * th(lz[1] + lmu[2] - t1 - lmu[1])
               * th(lz[2] - t1) * th(lh + lz[0] - t2) * th(lh + lz[1] - t2)
               * th(lz[2] + lmu[2] - t2 - lmu[0]))
        return num / (th(lh + t1 - t2) * th(t2 - t1))

    t11 = t.levels[0][0]
    t1, t2 = t.levels[1]
    return term(t1, t2, t11) + term(t2, t1, t11)


class TestPsi:
    def test_equal_branch_identity(self, ctx, rng):
        p = random_parameter_point(2, rng, ctx)
        lx = 0.21 - 0.4j
        got = psi(Permutation((1, 2)), 1, 1, 1, lx, p, ctx)
        want = theta(ctx, lx + p.log_h + p.log_mu[1] - p.log_mu[0])
        assert got == want

    def test_greater_branch(self, ctx, rng):
        p = random_parameter_point(2, rng, ctx)
        lx = -0.4 + 0.9j
        assert psi(Permutation((1, 2)), 1, 1, 2, lx, p, ctx) == theta(ctx, lx)

    def test_less_branch(self, ctx, rng):
        p = random_parameter_point(2, rng, ctx)
        lx = 0.15 + 0.2j
        got = psi(Permutation((2, 1)), 1, 1, 1, lx, p, ctx)
        assert got == theta(ctx, p.log_h + lx)

    def test_equal_branch_drops_hbar(self, ctx, rng):
        # value 2 already passed: exponent collapses to zero
        p = random_parameter_point(2, rng, ctx)
        lx = 0.15 + 0.2j
        got = psi(Permutation((2, 1)), 1, 1, 2, lx, p, ctx)
        assert got == theta(ctx, lx + p.log_mu[1] - p.log_mu[0])

    def test_exactly_one_equal_branch_per_level_pair(self, ctx, rng):
        p = random_parameter_point(3, rng, ctx)
        from ellweights import fixed_point_tables
        for I in all_permutations(3):
            tab = fixed_point_tables(I)
            for k in (1, 2):
                for a in range(1, k + 1):
                    hits = sum(1 for c in range(1, k + 2)
                               if tab.ordered[k][c - 1] == tab.ordered[k - 1][a - 1])
                    assert hits == 1

    def test_index_range(self, ctx, rng):
        p = random_parameter_point(2, rng, ctx)
        with pytest.raises(ValueError):
            psi(Permutation((1, 2)), 1, 1, 3, 0.1, p, ctx)


class TestU:
    def test_n1_empty_product(self, ctx):
        p = ParameterPoint(log_z=(0.3,), log_mu=(0.1,), log_h=0.2)
        t = ChernPoint(())
        assert U(Permutation((1,)), t, p, ctx) == 1.0

    def test_n2_is_two_theta_product(self, ctx, rng):
        p = random_parameter_point(2, rng, ctx)
        t = random_chern_point(2, rng)
        for I in all_permutations(2):
            assert rel(U(I, t, p, ctx), w2_closed(I, t.levels[0][0], p, ctx)) < 1e-14

    def test_n3_longest_first_summand(self, ctx, rng):
        p = random_parameter_point(3, rng, ctx)
        t = random_chern_point(3, rng)
        lz, lmu, lh = p.log_z, p.log_mu, p.log_h
        th = lambda w: theta(ctx, w)
        t11 = t.levels[0][0]
        t1, t2 = t.levels[1]
        want = (th(lh + t1 - t11) * th(t2 + lmu[1] - t11 - lmu[0])
                * th(lh + lz[0] - t1) * th(lz[1] + lmu[2] - t1 - lmu[1])
                * th(lz[2] - t1) * th(lh + lz[0] - t2) * th(lh + lz[1] - t2)
                * th(lz[2] + lmu[2] - t2 - lmu[0])) \
            / (th(lh + t1 - t2) * th(t2 - t1))
        assert rel(U(Permutation((3, 2, 1)), t, p, ctx), want) < 1e-13

    def test_pole_error_on_colliding_level(self, ctx, rng):
        p = random_parameter_point(3, rng, ctx)
        v = 0.25 + 0.5j
        t = ChernPoint(((0.1 + 0.2j,), (v, v)))   # theta(t2/t1) = theta(1) = 0
        with pytest.raises(PoleError):
            U(Permutation((3, 2, 1)), t, p, ctx)
        with pytest.raises(PoleError):
            W(Permutation((3, 2, 1)), t, p, ctx)   # propagates through the sum


class TestW:
    def test_n2_closed_forms(self, ctx, rng):
        p = random_parameter_point(2, rng, ctx)
        t = random_chern_point(2, rng)
        for I in all_permutations(2):
            assert rel(W(I, t, p, ctx), w2_closed(I, t.levels[0][0], p, ctx)) < 1e-14

    def test_n3_longest_two_term_display(self, ctx, rng):
        p = random_parameter_point(3, rng, ctx)
        t = random_chern_point(3, rng)
        assert rel(W(Permutation((3, 2, 1)), t, p, ctx), w321_closed(t, p, ctx)) < 1e-13

    def test_level_symmetry(self, ctx, rng):
        p = random_parameter_point(3, rng, ctx)
        t = random_chern_point(3, rng)
        swapped = t.permute_level(2, (1, 0))
        for I in all_permutations(3):
            a, b = W(I, t, p, ctx), W(I, swapped, p, ctx)
            assert rel(a, b) < ctx.tol

    def test_term_count(self, ctx, rng):
        p = random_parameter_point(4, rng, ctx)
        t = random_chern_point(4, rng)
        terms = weight_terms(Permutation((1, 2, 3, 4)), t, p, ctx)
        assert len(terms) == 12   # 1! * 2! * 3!

    def test_finite_at_q_to_zero(self, rng):
        tiny = ThetaContext.create(q=1e-30)
        p = random_parameter_point(3, rng, tiny)
        t = random_chern_point(3, rng)
        for I in all_permutations(3):
            assert np.isfinite(W(I, t, p, tiny)).all()


class TestWSigma:
    def test_identity_sigma(self, ctx, rng):
        p = random_parameter_point(3, rng, ctx)
        t = random_chern_point(3, rng)
        e = Permutation.identity(3)
        for I in all_permutations(3):
            assert W_sigma(e, I, t, p, ctx) == W(I, t, p, ctx)

    def test_longest_sigma_n2_substitution(self, ctx, rng):
        # W_{sigma0,(1,2)} equals W_{(2,1)} with the z slots exchanged
        p = random_parameter_point(2, rng, ctx)
        t = random_chern_point(2, rng)
        s0 = Permutation.longest(2)
        got = W_sigma(s0, Permutation((1, 2)), t, p, ctx)
        want = W(Permutation((2, 1)), t, p.permute_z(s0), ctx)
        assert got == want

    def test_double_longest_round_trip(self, ctx, rng):
        # with z already reversed, the twist by sigma0 at the twisted index
        # recovers the plain weight function
        p = random_parameter_point(3, rng, ctx)
        t = random_chern_point(3, rng)
        s0 = Permutation.longest(3)
        for I in all_permutations(3):
            got = W_sigma(s0, compose_values(s0, I), t, p.permute_z(s0), ctx)
            assert rel(got, W(I, t, p, ctx)) < 1e-14


class TestP:
    def test_n1_empty(self, ctx):
        p = ParameterPoint(log_z=(0.1,), log_mu=(0.2,), log_h=0.3)
        assert P(Permutation((1,)), p.log_z, p, ctx) == 1.0

    def test_n2_identity(self, ctx, rng):
        p = random_parameter_point(2, rng, ctx)
        got = P(Permutation((1, 2)), p.log_z, p, ctx)
        assert got == theta(ctx, p.log_z[1] - p.log_z[0])

    def test_n2_flip(self, ctx, rng):
        p = random_parameter_point(2, rng, ctx)
        got = P(Permutation((2, 1)), p.log_z, p, ctx)
        assert got == theta(ctx, p.log_h + p.log_z[0] - p.log_z[1])

    @pytest.mark.parametrize("n", [3, 4])
    def test_inversion_reflection_symmetry(self, n, ctx, rng):
        s0 = Permutation.longest(n)
        for _ in range(10 if n == 4 else 5):
            p = random_parameter_point(n, rng, ctx)
            args = tuple(-v for v in p.log_z[::-1])
            for I in all_permutations(n):
                K = compose(compose(s0, I), s0)
                assert rel(P(K, args, p, ctx), P(I, p.log_z, p, ctx)) < ctx.tol


class TestParameterPoint:
    def test_json_round_trip(self, ctx, rng):
        p = random_parameter_point(3, rng, ctx)
        assert ParameterPoint.from_json(p.to_json()) == p

    def test_swap_helpers(self, rng, ctx):
        p = random_parameter_point(3, rng, ctx)
        assert p.swap_z(1).log_z == (p.log_z[1], p.log_z[0], p.log_z[2])
        assert p.swap_mu(2).log_mu == (p.log_mu[0], p.log_mu[2], p.log_mu[1])
        assert p.swap_z(1).swap_z(1) == p

    def test_permute_z(self, rng, ctx):
        p = random_parameter_point(3, rng, ctx)
        s0 = Permutation.longest(3)
        assert p.permute_z(s0).log_z == p.log_z[::-1]

    def test_genericity(self, ctx, rng):
        p = random_parameter_point(3, rng, ctx)
        assert is_generic(p, ctx)
        bad = ParameterPoint(log_z=(0.1, 0.1, 0.4), log_mu=p.log_mu, log_h=p.log_h)
        assert not is_generic(bad, ctx)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            ParameterPoint(log_z=(0.1,), log_mu=(0.1, 0.2), log_h=0.0)

    def test_chern_level_shape(self):
        with pytest.raises(ValueError):
            ChernPoint(((0.1,), (0.2,)))

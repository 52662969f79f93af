"""Parameter-swap identity and the duality interface."""

import pytest

from ellweights import (A_direct, DualityInterface, IllConditionedError,
                        ParameterPoint, Permutation, ThetaContext,
                        all_permutations, global_sign, interface_value,
                        interpolation_residuals, kappa_substitute,
                        mirror_index, mirror_residual, random_chern_point,
                        random_parameter_point)


class TestKappa:
    def test_n1(self, ctx):
        p = ParameterPoint(log_z=(0.4,), log_mu=(0.9,), log_h=0.2)
        k = kappa_substitute(p)
        assert k.log_z == (0.9,)
        assert k.log_mu == (-0.4,)
        assert k.log_h == p.log_h

    def test_n2_explicit(self, ctx, rng):
        p = random_parameter_point(2, rng, ctx)
        k = kappa_substitute(p)
        assert k.log_z == (p.log_mu[1], p.log_mu[0])
        assert k.log_mu == (-p.log_z[0], -p.log_z[1])

    def test_double_application_bookkeeping(self, ctx, rng):
        # exponent-vector oracle: twice kappa = reverse slots and invert
        p = random_parameter_point(3, rng, ctx)
        kk = kappa_substitute(kappa_substitute(p))
        assert kk.log_z == tuple(-v for v in p.log_z[::-1])
        assert kk.log_mu == tuple(-v for v in p.log_mu[::-1])
        assert kk.log_h == p.log_h


class TestMirrorIdentity:
    def test_global_sign_n2(self):
        assert global_sign(2) == -1
        assert global_sign(3) == -1
        assert global_sign(4) == 1

    def test_n2_all_four(self, ctx, rng):
        p = random_parameter_point(2, rng, ctx)
        for I in all_permutations(2):
            for J in all_permutations(2):
                assert mirror_residual(I, J, p, ctx) < ctx.tol

    def test_n2_reduces_to_theta_parity(self, ctx, rng):
        # the diagonal identity pairs the two diagonal entries with the
        # swapped arguments and a single minus sign
        p = random_parameter_point(2, rng, ctx)
        ident = Permutation.identity(2)
        flip = Permutation((2, 1))
        lhs = A_direct(ident, ident, ident, p, ctx)
        rhs = -A_direct(ident, flip, flip, kappa_substitute(p), ctx)
        assert abs(lhs - rhs) < ctx.tol * abs(lhs)

    def test_n3_all_36(self, ctx, rng):
        p = random_parameter_point(3, rng, ctx)
        for I in all_permutations(3):
            for J in all_permutations(3):
                assert mirror_residual(I, J, p, ctx) < ctx.tol

    def test_n3_nontrivial_pairings(self, ctx, rng):
        # the three index pairs whose identities are genuinely two-term
        p = random_parameter_point(3, rng, ctx)
        pk = kappa_substitute(p)
        ident = Permutation.identity(3)
        cases = [
            ((3, 1, 2), (1, 2, 3), (3, 2, 1), (2, 1, 3)),
            ((3, 2, 1), (2, 1, 3), (2, 3, 1), (1, 2, 3)),
            ((3, 2, 1), (1, 2, 3), (3, 2, 1), (1, 2, 3)),
        ]
        for iw, jw, riw, rjw in cases:
            I, J = Permutation(iw), Permutation(jw)
            assert mirror_index(J).word == riw
            assert mirror_index(I).word == rjw
            lhs = A_direct(ident, I, J, p, ctx)
            rhs = -A_direct(ident, Permutation(riw), Permutation(rjw), pk, ctx)
            assert abs(lhs) > 1e-6          # genuinely nonzero content
            assert abs(lhs - rhs) < ctx.tol * (abs(lhs) + abs(rhs))


class TestInterface:
    def test_n1_trivial(self, ctx):
        from ellweights import ChernPoint
        p = ParameterPoint(log_z=(0.4,), log_mu=(0.8,), log_h=0.15)
        t = ChernPoint(())
        v = interface_value(t, t, p, None, ctx)
        # n = 1: single term A^{-1} W W with every factor equal to 1
        assert abs(v - 1.0) < 1e-14

    @pytest.mark.parametrize("n", [2, 3])
    def test_interpolation_both_slots(self, n, ctx, rng):
        p = random_parameter_point(n, rng, ctx)
        iface = DualityInterface.create(p, ctx)
        t = random_chern_point(n, rng)
        tp = random_chern_point(n, rng)
        for I in all_permutations(n):
            r1, r2 = interpolation_residuals(iface, I, t, tp)
            assert r1 < ctx.tol
            assert r2 < ctx.tol

    def test_interface_value_matches_evaluator(self, ctx, rng):
        p = random_parameter_point(2, rng, ctx)
        t = random_chern_point(2, rng)
        tp = random_chern_point(2, rng)
        iface = DualityInterface.create(p, ctx)
        assert interface_value(t, tp, p, None, ctx) == iface.value(t, tp)

    def test_condition_guard(self, rng):
        # with tol = 1 the guard 1/tol is below any realistic condition number
        strict = ThetaContext.create(q=0.3, tol=1.0)
        p = random_parameter_point(2, rng, strict)
        iface = DualityInterface.create(p, strict)
        t = random_chern_point(2, rng)
        with pytest.raises(IllConditionedError):
            iface.value(t, t)

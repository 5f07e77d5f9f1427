import math

import pytest

from companion_bv import (
    ConsistencyError,
    DomainError,
    HolderExponent,
    Interval,
    PreconditionError,
    PwmFunction,
    chain_report,
    coarse_bound,
    coarse_holder_bound,
    companion_rule,
    constant,
    holder_remainder,
    kernel_K,
    ostrowski_bv_bound,
    outer_bound,
    polynomial,
    q_bound,
    q_holder_bound,
    r_p_kernel,
    special_case_bounds,
    step,
    weighted_variation_integral,
)
from companion_bv.harness import PiecewiseWeight

UNIT = Interval(0.0, 1.0)
EPS = 1e-12


class TestHolderExponent:
    def test_conjugate(self):
        h = HolderExponent(3.0)
        assert 1 / h.p + 1 / h.q == pytest.approx(1.0)

    @pytest.mark.parametrize("p", [1.0, 0.5, -2.0, math.inf])
    def test_rejects(self, p):
        with pytest.raises(DomainError):
            HolderExponent(p)


class TestKernel:
    @pytest.mark.parametrize("t,expected", [(0.1, 0.1), (0.5, 0.0), (0.9, -0.1)])
    def test_branches(self, t, expected):
        assert kernel_K(0.25, t, UNIT) == pytest.approx(expected, abs=EPS)

    def test_branches_closed_on_right(self):
        assert kernel_K(0.25, 0.25, UNIT) == 0.25
        assert kernel_K(0.25, 0.75, UNIT) == 0.25

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            kernel_K(0.75, 0.1, UNIT)
        with pytest.raises(DomainError):
            kernel_K(0.25, 1.5, UNIT)


class TestRpKernel:
    def test_first_branch(self):
        assert r_p_kernel(0.25, 0.1, 2, UNIT) == pytest.approx(0.1)

    def test_second_branch_uses_t(self):
        assert r_p_kernel(0.25, 0.4, 2, UNIT) == pytest.approx(0.1)
        assert r_p_kernel(0.25, 0.4, 2, UNIT, printed=True) == pytest.approx(0.25)

    def test_at_midpoint(self):
        assert r_p_kernel(0.5, 0.3, 3, UNIT) == pytest.approx(0.09)


class TestCompanionRule:
    def test_identity(self, ident):
        assert companion_rule(ident, 0.25) == 0.5

    def test_step(self, step_quarter):
        assert companion_rule(step_quarter, 0.0) == 0.5

    def test_square(self, square):
        # (f(1/8) + f(7/8)) / 2 = (1/64 + 49/64) / 2
        assert companion_rule(square, 0.125) == pytest.approx(25 / 64)

    def test_domain(self, ident):
        with pytest.raises(DomainError):
            companion_rule(ident, 0.6)


class TestQBound:
    def test_identity(self, ident):
        assert q_bound(ident, 0.25) == pytest.approx(1 / 8, abs=EPS)

    @pytest.mark.parametrize("x", [0.0, 0.1, 0.25, 0.4999])
    def test_midpoint_step_is_zero(self, step_half, x):
        assert q_bound(step_half, x) == pytest.approx(0.0, abs=EPS)

    def test_midpoint_step_at_midpoint(self, step_half):
        # K(1/2, 1/2) = 1/2 on the closed first branch, and the rule reads the
        # right-continuous value f(1/2) = 1, so the bound is attained
        rep = chain_report(step_half, 0.5)
        assert rep.q_bound == pytest.approx(0.5) == pytest.approx(rep.lhs)

    def test_quarter_step(self, step_quarter):
        assert q_bound(step_quarter, 0.0) == pytest.approx(0.25, abs=EPS)

    @pytest.mark.parametrize("x", [0.0, 0.05, 0.25, 0.3, 0.45, 0.5])
    def test_equals_stieltjes_oracle(self, zigzag, x):
        oracle = weighted_variation_integral(PiecewiseWeight.kernel(x, UNIT), zigzag, power=1.0)
        assert q_bound(zigzag, x) == pytest.approx(oracle, abs=1e-12)

    def test_jump_at_reflected_point(self):
        # jump at a+b-x is inside (x, a+b-x], where K vanishes only at the midpoint
        f = step(0.75, UNIT)
        oracle = weighted_variation_integral(PiecewiseWeight.kernel(0.25, UNIT), f, power=1.0)
        assert q_bound(f, 0.25) == pytest.approx(oracle, abs=EPS) == pytest.approx(0.25)


class TestQHolder:
    def test_identity_quarter(self, ident):
        assert q_holder_bound(ident, 0.25, 2) == pytest.approx(math.sqrt(1 / 48), abs=1e-12)

    def test_identity_midpoint(self, ident):
        assert q_holder_bound(ident, 0.5, 2) == pytest.approx(math.sqrt(1 / 12), abs=1e-12)

    def test_constant(self, flat):
        assert q_holder_bound(flat, 0.3, 2) == 0.0

    def test_printed_kernel_is_smaller(self, ident):
        assert holder_remainder(ident, 0.25, 2, "corrected") == pytest.approx(1 / 48)
        assert holder_remainder(ident, 0.25, 2, "printed") == pytest.approx(1 / 96)

    @pytest.mark.parametrize("p", [1.5, 2.0, 2.5, 3.0, 4.0, 7.0])
    @pytest.mark.parametrize("x", [0.0, 0.1, 0.25, 0.4, 0.5])
    def test_remainder_equals_oracle(self, zigzag, p, x):
        oracle, err = weighted_variation_integral(
            PiecewiseWeight.kernel(x, UNIT), zigzag, power=p, return_error=True
        )
        assert holder_remainder(zigzag, x, p) == pytest.approx(oracle, rel=1e-10, abs=1e-14 + err)

    def test_unknown_kernel(self, ident):
        with pytest.raises(ValueError):
            holder_remainder(ident, 0.25, 2, "other")


class TestCoarse:
    def test_identity_quarter(self, ident):
        assert coarse_bound(ident, 0.25) == pytest.approx(0.25)

    def test_identity_endpoint(self, ident):
        assert coarse_bound(ident, 0.0) == pytest.approx(0.5)

    def test_constant(self, flat):
        assert coarse_bound(flat, 0.2) == 0.0

    def test_holder_quarter(self, ident):
        assert coarse_holder_bound(ident, 0.25, 2) == pytest.approx(0.25)

    def test_holder_endpoint(self, ident):
        assert coarse_holder_bound(ident, 0.0, 2) == pytest.approx(0.5)

    def test_holder_constant(self, flat):
        assert coarse_holder_bound(flat, 0.1, 3) == 0.0

    def test_domain(self, ident):
        with pytest.raises(DomainError):
            coarse_bound(ident, -0.1)


class TestOuterAndClassical:
    def test_outer_quarter_constant(self):
        assert outer_bound(0.25, 1.0, UNIT) == 0.25

    def test_outer_endpoint(self):
        assert outer_bound(0.0, 1.0, UNIT) == 0.5

    def test_outer_midpoint(self):
        assert outer_bound(0.5, 2.0, UNIT) == 1.0

    def test_classical_midpoint(self, ident):
        assert ostrowski_bv_bound(ident, 0.5) == 0.5

    def test_classical_endpoint(self, ident):
        assert ostrowski_bv_bound(ident, 0.0) == 1.0

    def test_classical_constant(self, flat):
        assert ostrowski_bv_bound(flat, 0.7) == 0.0

    def test_classical_domain(self, ident):
        with pytest.raises(DomainError):
            ostrowski_bv_bound(ident, 1.2)


class TestSpecialCases:
    def test_midpoint(self, ident):
        rep = special_case_bounds(ident, "midpoint")
        assert rep.q_bound == pytest.approx(0.25) and rep.lhs == pytest.approx(0.0, abs=EPS)
        assert rep.q_bound == q_bound(ident, 0.5)

    def test_trapezoid(self, ident):
        rep = special_case_bounds(ident, "trapezoid")
        assert rep.q_bound == pytest.approx(0.25)
        assert rep.lhs == pytest.approx(0.0, abs=EPS)

    def test_trapezoid_step_is_sharp(self, step_quarter):
        rep = special_case_bounds(step_quarter, "trapezoid")
        assert rep.q_bound == pytest.approx(0.25) and rep.lhs == pytest.approx(0.25)

    def test_trapezoid_type_dispatches_to_quarter(self, zigzag):
        rep = special_case_bounds(zigzag, "trapezoid_type", 3)
        assert rep.x == 0.25 and rep.q_bound == q_bound(zigzag, 0.25)
        assert rep.q_holder == q_holder_bound(zigzag, 0.25, 3)

    def test_symmetric_endpoint(self):
        f = PwmFunction.from_pieces(UNIT, [(0.5, (0.0, 1.0, -1.0)), (1.0, (0.0, 1.0, -1.0))])
        rep = special_case_bounds(f, "symmetric_endpoint", 2)
        assert rep.lhs == pytest.approx(abs(f(0.0) - f.mean()))
        assert rep.lhs <= rep.q_bound + 1e-12

    def test_symmetric_endpoint_needs_symmetry(self, ident):
        with pytest.raises(PreconditionError):
            special_case_bounds(ident, "symmetric_endpoint")

    def test_unknown(self, ident):
        with pytest.raises(ValueError):
            special_case_bounds(ident, "simpson")


class TestChainReport:
    def test_identity_worked_case(self, ident):
        rep = chain_report(ident, 0.25, 2)
        assert rep.lhs == pytest.approx(0.0, abs=1e-9)
        assert rep.q_bound == pytest.approx(0.125, abs=1e-9)
        assert rep.q_holder == pytest.approx(0.1443376, abs=1e-7)
        assert (rep.coarse, rep.coarse_holder, rep.outer) == pytest.approx((0.25, 0.25, 0.25), abs=1e-9)
        assert rep.ok

    def test_constant(self, flat):
        rep = chain_report(flat, 0.1, 2)
        assert [rep.lhs, rep.q_bound, rep.q_holder, rep.coarse, rep.coarse_holder, rep.outer] == [0.0] * 6

    def test_step(self, step_quarter):
        rep = chain_report(step_quarter, 0.0)
        assert (rep.lhs, rep.q_bound, rep.coarse, rep.outer) == pytest.approx((0.25, 0.25, 0.5, 0.5))

    def test_violation_detection(self, ident):
        rep = chain_report(ident, 0.25)
        rep.q_bound = 0.3
        assert ("q_bound", "coarse", 0.3, 0.25) in rep.violations()

    def test_negative_remainder_is_flagged(self, ident, monkeypatch):
        import companion_bv.bounds as b

        monkeypatch.setattr(b, "holder_remainder", lambda *a, **k: -1.0)
        with pytest.raises(ConsistencyError):
            b.q_holder_bound(ident, 0.25, 2)


class TestEquivariance:
    def test_scale(self, zigzag):
        g = zigzag.scaled(2.5)
        for x in (0.0, 0.2, 0.5):
            r, s = chain_report(zigzag, x, 3), chain_report(g, x, 3)
            for name in ("lhs", "q_bound", "q_holder", "coarse", "coarse_holder", "outer"):
                assert getattr(s, name) == pytest.approx(2.5 * getattr(r, name), rel=1e-12, abs=1e-14)

    def test_translation(self, zigzag):
        g = zigzag.shifted(3.0)
        for x in (0.0, 0.2, 0.5):
            r, s = chain_report(zigzag, x, 2), chain_report(g, x + 3.0, 2)
            for name in ("lhs", "q_bound", "q_holder", "coarse", "coarse_holder", "outer"):
                assert getattr(s, name) == pytest.approx(getattr(r, name), rel=1e-9, abs=1e-12)


def test_zero_q_means_zero_lhs(step_half):
    for x in (0.0, 0.2, 0.49):
        rep = chain_report(step_half, x)
        assert rep.q_bound == pytest.approx(0.0, abs=EPS)
        assert rep.lhs == pytest.approx(0.0, abs=EPS)


def test_constant_function_has_no_variation():
    assert q_bound(constant(-2.0, Interval(-1.0, 4.0)), 0.0) == 0.0


def test_non_unit_interval_identity():
    iv = Interval(2.0, 6.0)
    f = polynomial([-2.0, 1.0], iv)
    # Q scales with length: ((b-a)/8) * (V/(b-a)) * ... => same 1/8 of total variation 4
    assert q_bound(f, iv.quarter) == pytest.approx(4 / 8)

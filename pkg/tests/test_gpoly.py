from fractions import Fraction as F

import pytest

from froberg.errors import IndexOutOfRange, InvalidDegrees
from froberg.gpoly import (
    build_g,
    certify_bound,
    check_d_minus_1_signs,
    coeff_via_symmetric,
    equiv_triple,
    scan_dprime,
    sign_change_profile,
)
from froberg.ring import dim_graded


def harmonic(a: int, b: int) -> F:
    # sum of 1/i for a <= i <= b
    return sum((F(1, i) for i in range(a, b + 1)), F(0))


def esym_oracle(values, j):
    # direct subset-sum elementary symmetric function; exponential but
    # only used at desk scale
    from itertools import combinations

    total = F(0)
    for combo in combinations(values, j):
        prod = F(1)
        for v in combo:
            prod *= v
        total += prod
    return total


def test_build_g_examples():
    g = build_g(3, 2)
    assert g.poly.coeffs == (F(0), F(-43, 60), F(-3, 10), F(1, 60))
    assert build_g(5, 2).poly.eval(2) == 0
    assert build_g(4, 2).poly.eval(5) == 1
    for d, dprime in ((2, 1), (4, 3), (7, 2), (9, 5)):
        assert build_g(d, dprime).poly.eval(0) == 0


def test_build_g_rejects_bad_degrees():
    with pytest.raises(InvalidDegrees):
        build_g(2, 2)
    with pytest.raises(InvalidDegrees):
        build_g(2, 3)
    with pytest.raises(InvalidDegrees):
        build_g(3, 0)


def test_coeff_via_symmetric_examples():
    # direct-sum oracles
    assert coeff_via_symmetric(3, 2, 1) == harmonic(3, 5) - harmonic(1, 2) == F(-43, 60)
    vals_a = [F(1, i) for i in range(3, 6)]
    vals_b = [F(1, 1), F(1, 2)]
    assert coeff_via_symmetric(3, 2, 2) == esym_oracle(vals_a, 2) - esym_oracle(vals_b, 2)
    assert coeff_via_symmetric(3, 2, 2) == F(-3, 10)
    assert coeff_via_symmetric(7, 3, 0) == 0
    with pytest.raises(IndexOutOfRange):
        coeff_via_symmetric(3, 2, 4)


def test_coefficient_agreement_small_sweep():
    # both computation routes agree exactly for every coefficient
    for d in range(2, 13):
        for dprime in range(1, d):
            poly = build_g(d, dprime).poly
            for j in range(d + 1):
                assert coeff_via_symmetric(d, dprime, j) == poly[j], (d, dprime, j)


def test_value_dimension_identity():
    # g(n-1) * dim R_{d'} = dim R_{d+d'} - (dim R_{d'})^2, exactly
    for d in range(2, 11):
        for dprime in range(1, d):
            poly = build_g(d, dprime).poly
            for n in range(1, 21):
                dp = dim_graded(n, dprime)
                top = dim_graded(n, d + dprime)
                assert poly.eval(n - 1) * dp == top - dp * dp


def test_coefficient_monotone_in_d_and_dprime():
    for d in range(2, 12):
        for dprime in range(1, d):
            cur = build_g(d, dprime).poly
            up_d = build_g(d + 1, dprime).poly
            for j in range(1, d + 1):
                assert up_d[j] >= cur[j]
            if dprime + 1 < d:
                up_dp = build_g(d, dprime + 1).poly
                for j in range(1, d + 1):
                    assert up_dp[j] <= cur[j]


def test_sign_change_profile_examples():
    prof = sign_change_profile(3, 2)
    assert prof.changes == 1
    assert prof.signs == (-1, -1, 1)
    prof = sign_change_profile(2, 1)
    assert prof.changes == 1
    assert prof.signs == (-1, 1)
    prof = sign_change_profile(4, 3)
    assert prof.changes == 1
    assert prof.signs == (-1, -1, -1, 1)


def test_certify_bound_examples():
    cert = certify_bound(5, 2, 3)
    assert cert.holds and cert.method == "one-sign-change"
    assert cert.g_at_nminus1 == 0
    assert certify_bound(3, 2, 22).holds
    cert = certify_bound(3, 2, 21)
    assert not cert.holds
    assert cert.method == "hypothesis-fails"
    assert cert.g_at_nminus1 == -1
    assert not cert.propagates_in_d


def test_certificate_internal_invariants():
    for d, dprime, n in ((3, 2, 22), (5, 2, 3), (4, 2, 6), (6, 3, 10), (3, 2, 21)):
        cert = certify_bound(d, dprime, n)
        if cert.holds:
            assert cert.g_at_nminus1 >= 0
        if cert.method == "one-sign-change":
            assert cert.sign_changes <= 1
        if cert.propagates_in_d:
            assert cert.holds


def test_degree_increase_propagation():
    # a certified instance stays certified after bumping d
    for d in range(2, 11):
        for dprime in range(1, d):
            for n in (2, 5, 12, 25):
                if certify_bound(d, dprime, n).holds:
                    assert certify_bound(d + 1, dprime, n).holds, (d, dprime, n)


def test_value_increase_above_threshold():
    # when n(d - d') >= d'^2, the value satisfies
    # g(n) >= ((n+d+d')/(n+d')) * g(n-1) unconditionally; the plain
    # monotonicity g(n) >= g(n-1) additionally needs g(n-1) >= 0 (the
    # scaling factor exceeds 1, which only helps for nonnegative values)
    for d in range(2, 11):
        for dprime in range(1, d):
            poly = build_g(d, dprime).poly
            for n in range(1, 26):
                if n * (d - dprime) >= dprime * dprime:
                    prev = poly.eval(n - 1)
                    cur = poly.eval(n)
                    assert cur >= F(n + d + dprime, n + dprime) * prev, (d, dprime, n)
                    if prev >= 0:
                        assert cur >= prev, (d, dprime, n)


def test_linear_coeff_nonneg_forces_quadratic():
    for d in range(2, 26):
        for dprime in range(1, d):
            poly = build_g(d, dprime).poly
            if poly[1] >= 0:
                assert poly[2] >= 0, (d, dprime)


def test_equiv_triple_examples():
    assert equiv_triple(3, 5, 2) == (True, True, True)
    assert equiv_triple(3, 4, 2) == (False, False, False)
    assert equiv_triple(6, 4, 2) == (True, True, True)


def test_equiv_triple_all_agree_sampled():
    for d in range(2, 9):
        for dprime in range(1, d):
            for n in range(1, 16):
                t = equiv_triple(n, d, dprime)
                assert t.g_nonneg == t.dim_sq == t.r_cond, (n, d, dprime)


def test_check_d_minus_1_signs():
    assert check_d_minus_1_signs(2)
    assert check_d_minus_1_signs(3)
    assert check_d_minus_1_signs(10)
    # oracle: full expansion route
    for d in (2, 3, 5, 8):
        poly = build_g(d, d - 1).poly
        assert poly[d] > 0
        assert all(poly[j] < 0 for j in range(1, d))


def test_scan_dprime_1_terminates_quickly():
    res = scan_dprime(1)
    assert res.all_at_most_one and res.terminated
    # termination point via harmonic-sum oracle: the linear coefficient
    # H(d+1) - 1 - H(1) first turns nonnegative at d = 3
    assert harmonic(2, 3) - 1 < 0
    assert harmonic(2, 4) - 1 >= 0
    assert res.max_d_checked == 3


def test_scan_dprime_2():
    res = scan_dprime(2)
    assert res.all_at_most_one and res.terminated
    # every stopping-point coefficient is indeed nonnegative
    poly = build_g(res.max_d_checked, 2).poly
    assert all(poly[j] >= 0 for j in range(1, res.max_d_checked + 1))
    # and the previous d still had a negative coefficient
    prev = build_g(res.max_d_checked - 1, 2).poly
    assert any(prev[j] < 0 for j in range(1, res.max_d_checked))


@pytest.mark.parametrize("dprime", [1, 2, 3, 5, 8, 13])
def test_scan_interval_fast_agrees_with_exact(dprime):
    exact = scan_dprime(dprime, "exact")
    fast = scan_dprime(dprime, "interval-fast")
    assert exact.max_d_checked == fast.max_d_checked
    assert exact.all_at_most_one == fast.all_at_most_one
    assert exact.failures == fast.failures
    assert exact.terminated == fast.terminated


def test_scan_d_max_extends_past_termination():
    res = scan_dprime(2, "exact", d_max=60)
    assert res.max_d_checked == 60
    assert res.all_at_most_one
    assert res.terminated


def test_scan_rejects_bad_input():
    with pytest.raises(ValueError):
        scan_dprime(0)
    with pytest.raises(ValueError):
        scan_dprime(3, mode="float")
    with pytest.raises(ValueError):
        scan_dprime(3, d_max=2)

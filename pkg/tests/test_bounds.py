from fractions import Fraction as F
from itertools import product

import pytest

from froberg.bounds import (
    audit_chain,
    dim_partition,
    macaulay_iterated_upper,
    macaulay_next_upper,
)
from froberg.errors import HypothesisViolation, InvalidDegrees
from froberg.exactpoly import point
from froberg.gflinalg import PrimeField
from froberg.gpoly import certify_bound, equiv_triple
from froberg.ring import dim_graded, rs_params
from froberg.verify import hilbert_function


def quadratic_root(t: int) -> F:
    # oracle for C(x, 2) = t with integer answer: x(x-1)/2 = t
    import math

    disc = 1 + 8 * t
    root = math.isqrt(disc)
    assert root * root == disc, "oracle only handles exact quadratic cases"
    return F(1 + root, 2)


def test_macaulay_next_upper_examples():
    # x = 3 by the quadratic oracle, then C(4, 3) = 4
    assert quadratic_root(3) == 3
    assert macaulay_next_upper(3, 2) == point(4)
    assert macaulay_next_upper(1, 1) == point(1)


@pytest.mark.parametrize("n", range(1, 11))
@pytest.mark.parametrize("j", range(1, 9))
def test_macaulay_attained_by_full_ring(n, j):
    # the polynomial ring itself meets the growth bound with equality
    assert macaulay_next_upper(dim_graded(n, j), j) == point(dim_graded(n, j + 1))


def test_macaulay_iterated_examples():
    assert macaulay_iterated_upper(0, 2, 3) == point(0)
    assert macaulay_iterated_upper(1, 2, 3) == point(1)
    # x = 5 from the quadratic oracle, C(8, 5) = 56
    assert quadratic_root(10) == 5
    assert macaulay_iterated_upper(10, 2, 3) == point(56)


def test_macaulay_irrational_case_encloses():
    # t = 2: x = (1+sqrt(17))/2 is irrational; the enclosure must be
    # tight and sit inside the coarse bracket given by the
    # quadratic-formula oracle in floating point
    import math

    iv = macaulay_next_upper(2, 2)
    assert iv.hi - iv.lo < F(1, 2**30)
    x = (1 + math.sqrt(17)) / 2
    approx = (x + 1) * x * (x - 1) / 6  # C(x+1, 3) = 2.37436...
    assert approx - 1e-9 < iv.lo <= iv.hi < approx + 1e-9


def test_dim_partition_t0_reproduces_full_space():
    for n, d, dprime in ((6, 4, 2), (3, 5, 2), (22, 3, 2), (30, 5, 3)):
        params = rs_params(n, d, dprime)
        pd = dim_partition(n, d, dprime, params.r, params.s, 0, 0)
        assert pd.dim_Pt == params.dim_ddprime - 1
        assert pd.dim_Yt == (params.r - 1) * params.dim_dprime - 1


def test_dim_partition_synthetic_formula_unit():
    # r = 3, dim R_{d'} = 2 realized by n = 2, d' = 1; t = 1 gives
    # (r + t - 1)(dim - t) - 1 = 2
    pd = dim_partition(2, 2, 1, 3, 2, 1, 0)
    assert pd.dim_Yt == 2


def test_dim_partition_yt_exhaustive_count_oracle():
    # affine cone over Y_t has dimension dim_Yt + 1; point counts over
    # F_q grow like q^(dim+1): count rank-1 3x2 matrices with last row 0
    import itertools
    import math

    def count(q):
        total = 0
        for entries in itertools.product(range(q), repeat=4):
            m = [entries[:2], entries[2:]]
            # rank of a 2x2 over F_q
            a, b = m[0]
            c, d = m[1]
            det = (a * d - b * c) % q
            nonzero = any(v % q for v in entries)
            if nonzero and det == 0:
                total += 1
        return total

    pd = dim_partition(2, 2, 1, 3, 2, 1, 0)
    c2, c3 = count(2), count(3)
    fitted = math.log(c3 / c2) / math.log(3 / 2)
    assert round(fitted) == pd.dim_Yt + 1


def test_dim_partition_matches_closed_formula():
    # max(Y, X_best) agrees with the closed expression
    # dim R_{d+d'} + t(dim - t - r) + max(t - s, 0) - 1 on real instances
    for n, d, dprime in ((6, 4, 2), (22, 3, 2), (4, 3, 1), (3, 5, 2)):
        params = rs_params(n, d, dprime)
        if not (
            params.r > params.dim_dprime
            or params.r == params.s == params.dim_dprime
        ):
            continue
        for t in range(params.dim_dprime):
            pd = dim_partition(n, d, dprime, params.r, params.s, t, 0)
            closed = (
                params.dim_ddprime
                + t * (params.dim_dprime - t - params.r)
                + max(t - params.s, 0)
                - 1
            )
            assert pd.dim_Pt == closed, (n, d, dprime, t)


def test_dim_partition_hypothesis_violation():
    # n = 21, d = 3, d' = 2 has r = 230 < dim R_2 = 231
    params = rs_params(21, 3, 2)
    assert params.r < params.dim_dprime
    with pytest.raises(HypothesisViolation):
        dim_partition(21, 3, 2, params.r, params.s, 1, 0)


def test_dim_partition_range_validation():
    with pytest.raises(ValueError):
        dim_partition(2, 2, 1, 3, 2, 5, 0)  # t out of range
    with pytest.raises(ValueError):
        dim_partition(2, 2, 1, 3, 1, 0, 9)  # h above h_max


def test_audit_chain_examples():
    assert audit_chain(3, 5, 2).concludes
    assert audit_chain(22, 3, 2).concludes
    res = audit_chain(21, 3, 2)
    assert not res.concludes
    assert not res.rows[1].satisfied  # t = 1 row is positive
    assert audit_chain(6, 4, 2).concludes


def test_audit_chain_boundary_rows_exact():
    # the critical boundary case: t = 1 row is exactly zero
    res = audit_chain(3, 5, 2)
    row = res.rows[1]
    assert row.lhs.lo == row.lhs.hi == 0
    assert row.satisfied
    assert res.rows[0].lhs == res.rows[0].lhs.__class__(F(0), F(0))


def test_audit_chain_rejects_bad_degrees():
    with pytest.raises(InvalidDegrees):
        audit_chain(5, 2, 2)


def test_audit_agrees_with_certificate_on_samples():
    # the audit is the finer instrument but the two should agree here;
    # concludes also forces the g(n-1) >= 0 hypothesis
    for n, d, dprime in (
        (3, 5, 2),
        (22, 3, 2),
        (21, 3, 2),
        (6, 4, 2),
        (5, 4, 2),
        (2, 3, 2),
        (4, 4, 3),
    ):
        res = audit_chain(n, d, dprime)
        cert = certify_bound(d, dprime, n)
        assert res.concludes == cert.holds, (n, d, dprime)
        if res.concludes:
            assert equiv_triple(n, d, dprime).g_nonneg


def test_macaulay_soundness_on_random_ideals():
    # rank-computed Hilbert functions never beat the growth bound
    field = PrimeField(101)
    for seed in range(30):
        n = 2 + seed % 3
        k = 1 + seed % 4
        degrees = [1 + (seed + i) % 3 for i in range(k)]
        hf = hilbert_function(n, degrees, field, seed, 6)
        for j in range(1, 6):
            bound = macaulay_next_upper(hf[j], j)
            assert hf[j + 1] <= bound.hi, (seed, j, hf)

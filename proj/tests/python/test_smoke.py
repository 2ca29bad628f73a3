import cmath
import math

import mpmath
import pytest

import cml

W = complex(-0.5, math.sqrt(3) / 2)


def to_c(x):
    return x[0] + x[1] * W


def test_norm_and_multiplication():
    assert cml.norm((2, 3)) == 7
    a, b = (3, -4), (5, 2)
    assert abs(to_c(cml.mul(a, b)) - to_c(a) * to_c(b)) < 1e-9


def test_factor_round_trip():
    fs = cml.factor((7, 0))
    assert sorted(cml.norm(p) for p, _ in fs) == [7, 7]


def divides(d, x):
    z = to_c(x) / to_c(d)
    # coordinates in the basis 1, omega
    b = z.imag / W.imag
    a = z.real - b * W.real
    return abs(a - round(a)) < 1e-9 and abs(b - round(b)) < 1e-9


def test_symbol_against_euler_criterion():
    # Z[omega]/pi = F_p; omega maps to the root r of r^2 + r + 1 with pi | omega - r
    for pi in [(-2, -3), (1, 3), (-5, -6), (4, 9)]:
        p = cml.norm(pi)
        r = next(r for r in range(p) if (r * r + r + 1) % p == 0 and divides(pi, (-r, 1)))
        for a in range(1, 40):
            k = cml.symbol((a, 0), pi)
            if a % p == 0:
                assert k is None
                continue
            assert pow(a, (p - 1) // 3, p) == pow(r, k, p)


def test_gauss_sum_magnitude():
    for c in [(-2, -3), (1, 3), (10, 0), (-5, 0)]:
        assert abs(abs(cml.g3((1, 0), c)) ** 2 - cml.norm(c)) < 1e-8 * cml.norm(c)
        assert abs(cml.g3((1, 0), c) - cml.g3_direct((1, 0), c)) < 1e-8


def test_c0_closed_form():
    zk2 = mpmath.zeta(2) * (mpmath.zeta(2, mpmath.mpf(1) / 3) - mpmath.zeta(2, mpmath.mpf(2) / 3)) / 9
    expect = (2 * mpmath.pi) ** (mpmath.mpf(5) / 3) / (8 * mpmath.mpf(3) ** 4.5 * mpmath.gamma(mpmath.mpf(2) / 3) * zk2)
    assert cml.c0() == pytest.approx(float(expect), rel=1e-12)


def test_l_value_truncation_invariance():
    q = (10, 0)
    assert cml.in_family(q)
    assert abs(cml.l_half(q, 4.0) - cml.l_half(q, 10.0)) < 1e-10


def test_poisson_trivial_character():
    r = cml.poisson_check((1, 0), (1, 0), 400.0)
    assert r["residual"] < 1e-9


def test_errors_raise():
    with pytest.raises(cml.CmlError):
        cml.l_half((4, 0))


def test_cli_round_trip():
    rc, out, _ = cml.cli(["poisson", "--q", "1,0", "--m", "400"])
    assert rc == 0
    assert out.startswith("# cml")
    rc, _, _ = cml.cli(["moments", "--mode", "bogus"])
    assert rc == 2

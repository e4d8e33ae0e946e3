import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.linalg import expm
from sympy.physics.wigner import wigner_3j as sympy_3j

from casex.angular import HalfInt, half, small_d_matrix, wigner_3j, wigner_small_d

J_VALUES = [HalfInt(t) for t in range(0, 9)]  # 0 .. 4


def projections(j):
    return list(j.projections())


def closed_form_j1j(j, m):
    """(j 1 j; -m 0 m) = (-1)^(j-m) m / sqrt(j(j+1)(2j+1))."""
    jf, mf = float(j), float(m)
    return (-1) ** int(j - m) * mf / math.sqrt(jf * (jf + 1) * (2 * jf + 1))


def d_by_exponential(j, theta):
    """exp(-i theta J_y) in the |j m> basis, m = -j .. j."""
    jf = float(j)
    ms = [float(m) for m in projections(j)]
    n = len(ms)
    jplus = np.zeros((n, n))
    for k in range(n - 1):
        m = ms[k]
        jplus[k + 1, k] = math.sqrt(jf * (jf + 1) - m * (m + 1))
    jy = (jplus - jplus.T) / 2j
    return expm(-1j * theta * jy).real


# --- HalfInt ---------------------------------------------------------------


def test_halfint_parse_forms():
    assert half("3/2").twice == 3
    assert half(" -1/2 ").twice == -1
    assert half(2).twice == 4
    assert half(Fraction(5, 2)).twice == 5
    assert half(1.5).twice == 3
    assert str(half("3/2")) == "3/2"
    assert str(half("-4/2")) == "-2"


@pytest.mark.parametrize("bad", ["1/3", "abc", 0.25, float("nan")])
def test_halfint_rejects_non_half_integers(bad):
    with pytest.raises(ValueError):
        half(bad)


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_halfint_arithmetic_is_exact(a, b):
    x, y = HalfInt(a), HalfInt(b)
    assert (x + y).twice == a + b
    assert (x - y).twice == a - b
    assert (-x).twice == -a
    assert (x < y) == (a < b)
    assert float(x) == a / 2
    assert x + y - y == x


def test_halfint_mixed_with_int():
    assert half("1/2") + 1 == half("3/2")
    assert 1 + half("1/2") == half("3/2")
    assert half(3) == 3
    assert hash(half(3)) == hash(HalfInt(6))


# --- 3-j symbols -------------------------------------------------------------


def test_3j_odd_sum_all_m_zero_vanishes():
    assert wigner_3j(1, 1, 1, 0, 0, 0) == 0.0


@pytest.mark.parametrize(
    "j, m, expected",
    [("1/2", "1/2", 1 / math.sqrt(6)), ("3/2", "3/2", 1.5 / math.sqrt(15))],
)
def test_3j_closed_form_examples(j, m, expected):
    j, m = half(j), half(m)
    value = wigner_3j(j, 1, j, -m, 0, m)
    assert value == pytest.approx(closed_form_j1j(j, m), abs=1e-15)
    assert value == pytest.approx(expected, abs=1e-7)


def test_3j_matches_closed_form_family():
    for t in range(1, 21):
        j = HalfInt(t)
        for m in projections(j):
            assert wigner_3j(j, 1, j, -m, 0, m) == pytest.approx(closed_form_j1j(j, m), abs=1e-13)


def test_3j_against_sympy_exact():
    rng = np.random.default_rng(7)
    checked = 0
    while checked < 300:
        a, b = rng.integers(0, 9, size=2)
        c = rng.integers(abs(a - b), a + b + 1)
        if (a + b + c) % 2:
            continue
        j1, j2, j3 = HalfInt(a), HalfInt(b), HalfInt(c)
        m1 = HalfInt(int(rng.choice(range(-a, a + 1, 2))))
        m2 = HalfInt(int(rng.choice(range(-b, b + 1, 2))))
        m3 = -(m1 + m2)
        if abs(m3) > j3:
            continue
        args = [Fraction(x.twice, 2) for x in (j1, j2, j3, m1, m2, m3)]
        assert wigner_3j(j1, j2, j3, m1, m2, m3) == pytest.approx(float(sympy_3j(*args)), abs=1e-13)
        checked += 1


def test_3j_selection_rules_give_exact_zero():
    assert wigner_3j(1, 1, 1, 1, 0, 0) == 0.0  # m sum
    assert wigner_3j(1, 1, 3, 0, 0, 0) == 0.0  # triangle
    assert wigner_3j("1/2", "1/2", 1, "1/2", "1/2", 1) == 0.0  # m sum
    assert wigner_3j("1/2", "1/2", 1, "1/2", "1/2", -1) == pytest.approx(-1 / math.sqrt(3), abs=1e-15)


def test_3j_inconsistent_half_integers_raise():
    with pytest.raises(ValueError):
        wigner_3j(1, 1, 1, "1/2", "-1/2", 0)
    with pytest.raises(ValueError):
        wigner_3j(-1, 1, 1, 0, 0, 0)


def test_3j_factorial_cap_is_a_range_error():
    with pytest.raises(OverflowError):
        wigner_3j(20, 20, 20, 0, 0, 0)


def _all_3j_args(jmax_twice):
    for a, b, c in itertools.product(range(jmax_twice + 1), repeat=3):
        if (a + b + c) % 2 or c > a + b or c < abs(a - b):
            continue
        for x in range(-a, a + 1, 2):
            for y in range(-b, b + 1, 2):
                z = -x - y
                if abs(z) <= c:
                    yield [HalfInt(v) for v in (a, b, c, x, y, z)]


def test_3j_column_swap_symmetry():
    for j1, j2, j3, m1, m2, m3 in _all_3j_args(6):
        base = wigner_3j(j1, j2, j3, m1, m2, m3)
        phase = -1.0 if (j1 + j2 + j3).twice // 2 % 2 else 1.0
        assert wigner_3j(j2, j1, j3, m2, m1, m3) == pytest.approx(phase * base, abs=1e-12)
        assert wigner_3j(j1, j3, j2, m1, m3, m2) == pytest.approx(phase * base, abs=1e-12)
        assert wigner_3j(j3, j2, j1, m3, m2, m1) == pytest.approx(phase * base, abs=1e-12)


def test_3j_orthogonality():
    for a, b in itertools.product(range(9), repeat=2):
        for c in range(abs(a - b), a + b + 1, 2):
            j1, j2, j3 = HalfInt(a), HalfInt(b), HalfInt(c)
            for m3 in projections(j3):
                total = 0.0
                for m1 in projections(j1):
                    m2 = -(m1 + m3)
                    if abs(m2) <= j2:
                        total += (c + 1) * wigner_3j(j1, j2, j3, m1, m2, m3) ** 2
                assert total == pytest.approx(1.0, abs=1e-12)


# --- small d -----------------------------------------------------------------


def test_small_d_identity_at_zero():
    for j in J_VALUES:
        assert np.array_equal(small_d_matrix(j, 0.0), np.eye(j.twice + 1))


def test_small_d_simple_values():
    assert wigner_small_d(1, 0, 0, math.pi / 3) == pytest.approx(0.5, abs=1e-15)
    assert wigner_small_d("1/2", "1/2", "1/2", math.pi / 2) == pytest.approx(math.cos(math.pi / 4), abs=1e-15)
    assert wigner_small_d(1, 1, 0, 0.3) == pytest.approx(-math.sin(0.3) / math.sqrt(2), abs=1e-15)


def test_small_d_spin_half_closed_form():
    for theta in np.linspace(-3, 3, 13):
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        expected = np.array([[c, s], [-s, c]])  # rows/cols m = -1/2, +1/2
        assert np.allclose(small_d_matrix("1/2", theta), expected, atol=1e-15)


@pytest.mark.parametrize("j", J_VALUES)
def test_small_d_matches_matrix_exponential(j):
    for theta in (0.3, 1.1, 2.0, math.pi, -0.7):
        assert np.allclose(small_d_matrix(j, theta), d_by_exponential(j, theta), atol=1e-12)


THETAS = np.linspace(-math.pi, math.pi, 17)


@pytest.mark.parametrize("j", J_VALUES)
def test_small_d_orthogonality(j):
    for theta in THETAS:
        d = small_d_matrix(j, theta)
        assert np.abs(d.T @ d - np.eye(len(d))).max() <= 1e-12


@pytest.mark.parametrize("j", J_VALUES)
def test_small_d_transpose_symmetry(j):
    for theta in THETAS:
        assert np.abs(small_d_matrix(j, -theta) - small_d_matrix(j, theta).T).max() <= 1e-12


@pytest.mark.parametrize("j", J_VALUES)
def test_small_d_pi_rotation(j):
    ms = projections(j)
    d = small_d_matrix(j, math.pi)
    for a, m1 in enumerate(ms):
        for b, m2 in enumerate(ms):
            expected = (-1.0) ** int(j - m2) if m1 == -m2 else 0.0
            assert abs(d[a, b] - expected) <= 1e-12


def test_small_d_rejects_bad_projection():
    with pytest.raises(ValueError):
        wigner_small_d(1, 2, 0, 0.1)
    with pytest.raises(ValueError):
        wigner_small_d(1, "1/2", 0, 0.1)

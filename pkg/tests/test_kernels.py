"""Kernel backends against an exact summation oracle, and against each other."""

import math

import pytest
from hypothesis import given, strategies as st

from ubbplan import _kernels_py

BACKENDS = [pytest.param(_kernels_py, id="python")]
try:
    from ubbplan import _kernels

    BACKENDS.append(pytest.param(_kernels, id="cython"))
except ImportError:
    pass


def fsum_powers(n, exponent):
    return math.fsum(float(j) ** exponent for j in range(1, n + 1))


@pytest.mark.parametrize("kernels", BACKENDS)
@pytest.mark.parametrize("n,exponent", [
    (0, -0.8), (1, -0.8), (17, -0.99), (1000, -0.6), (10**5, -0.8), (250, 0.0),
])
def test_power_sum_matches_fsum(kernels, n, exponent):
    expected = fsum_powers(n, exponent)
    got = kernels.power_sum(n, exponent)
    assert got == pytest.approx(expected, rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("kernels", BACKENDS)
def test_prefix_sums_match_fsum(kernels):
    n = 5000
    prefix = kernels.power_prefix_sums(n, -0.8)
    assert len(prefix) == n
    for k in (1, 2, 3, 10, 499, 5000):
        assert prefix[k - 1] == pytest.approx(fsum_powers(k, -0.8), rel=1e-14)


@pytest.mark.parametrize("kernels", BACKENDS)
def test_prefix_sums_empty_and_negative(kernels):
    assert len(kernels.power_prefix_sums(0, -1.0)) == 0
    assert kernels.power_sum(0, -1.0) == 0.0
    with pytest.raises(ValueError):
        kernels.power_sum(-1, -1.0)
    with pytest.raises(ValueError):
        kernels.power_prefix_sums(-1, -1.0)


@pytest.mark.parametrize("kernels", BACKENDS)
@given(n=st.integers(min_value=1, max_value=2000),
       exponent=st.floats(min_value=-3.0, max_value=0.0))
def test_prefix_last_equals_power_sum(kernels, n, exponent):
    prefix = kernels.power_prefix_sums(n, exponent)
    assert prefix[-1] == kernels.power_sum(n, exponent)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
@given(n=st.integers(min_value=0, max_value=3000),
       exponent=st.floats(min_value=-3.0, max_value=0.0))
def test_backends_agree(n, exponent):
    from ubbplan import _kernels

    assert _kernels.power_sum(n, exponent) == pytest.approx(
        _kernels_py.power_sum(n, exponent), rel=1e-15, abs=1e-300)
    a = _kernels.power_prefix_sums(n, exponent)
    b = _kernels_py.power_prefix_sums(n, exponent)
    assert list(a) == pytest.approx(list(b), rel=1e-15)

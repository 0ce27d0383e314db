"""Pure-Python fallback for the power-law summation kernels.

Mirrors ``ubbplan._kernels`` (the Cython extension) term for term: Neumaier
compensated summation over j**exponent in ascending j. Slower by roughly two
orders of magnitude on large catalogs, identical results.
"""

from array import array
from math import pow as _pow


def power_sum(n, exponent):
    """Sum of j**exponent for j = 1..n (0.0 for n = 0)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    s = 0.0
    comp = 0.0
    for j in range(1, n + 1):
        term = _pow(j, exponent)
        t = s + term
        if abs(s) >= abs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
    return s + comp


def power_prefix_sums(n, exponent):
    """array('d') of length n with prefix sums of j**exponent, j = 1..n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = array("d", bytes(8 * n))
    s = 0.0
    comp = 0.0
    for j in range(1, n + 1):
        term = _pow(j, exponent)
        t = s + term
        if abs(s) >= abs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        out[j - 1] = s + comp
    return out

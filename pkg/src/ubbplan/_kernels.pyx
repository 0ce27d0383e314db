# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for power-law partial sums.

Same contract as ``ubbplan._kernels_py``; ``ubbplan._backend`` picks this
module when the extension was built. Both implementations use Neumaier
compensated summation in ascending index order, so they agree with an exact
(fsum) oracle to the last ulp and with each other bit-for-bit in practice.
"""

from cpython cimport array
from libc.math cimport fabs, pow

import array

_DOUBLE_TEMPLATE = array.array("d", [])


def power_sum(n, exponent):
    """Sum of j**exponent for j = 1..n (0.0 for n = 0)."""
    cdef Py_ssize_t m = n
    if m < 0:
        raise ValueError("n must be >= 0")
    cdef double p = exponent
    cdef double s = 0.0, comp = 0.0, term, t
    cdef Py_ssize_t j
    for j in range(1, m + 1):
        term = pow(<double> j, p)
        t = s + term
        if fabs(s) >= fabs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
    return s + comp


def power_prefix_sums(n, exponent):
    """array('d') of length n with prefix sums of j**exponent, j = 1..n."""
    cdef Py_ssize_t m = n
    if m < 0:
        raise ValueError("n must be >= 0")
    cdef array.array out = array.clone(_DOUBLE_TEMPLATE, m, zero=False)
    if m == 0:
        return out
    cdef double[::1] view = out
    cdef double p = exponent
    cdef double s = 0.0, comp = 0.0, term, t
    cdef Py_ssize_t j
    for j in range(1, m + 1):
        term = pow(<double> j, p)
        t = s + term
        if fabs(s) >= fabs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        view[j - 1] = s + comp
    return out

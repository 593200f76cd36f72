"""Shared brute-force references for the test suite.

These stay deliberately independent of the library's evaluation paths:
the series oracle below uses exact rational arithmetic, not Miller's
recurrence, so agreement is a real two-route check.
"""

import math
from fractions import Fraction


def bessel_series_oracle(n: int, z: float, stop: float = 1e-18) -> float:
    """J_n(z) from the ascending power series in exact rational arithmetic.

    sum_k (-1)^k (z/2)^(n+2k) / (k! (n+k)!); terms are added until they
    drop below `stop` past the series peak, and every partial sum is an
    exact Fraction, so the only error is the truncated tail.
    """
    n = abs(int(n))
    half = Fraction(z) / 2
    term = half**n / math.factorial(n)
    total = term
    k = 0
    while True:
        k += 1
        term *= -(half * half) / (k * (n + k))
        total += term
        if k > float(z) / 2 + 2 and abs(term) < Fraction(stop):
            return float(total)

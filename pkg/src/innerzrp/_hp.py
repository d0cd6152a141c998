"""128-bit arithmetic for the rational (fraction) form of the model.

The fraction form of F(k) cancels N Laurent orders of D(lambda); the relative
error of a double evaluation grows like the Lebesgue function of the inner
spectrum (1e8 and more for clustered levels), so weights and boundary
parameters are carried at 128 bits.
"""

from __future__ import annotations

from collections.abc import Iterable

import gmpy2
from gmpy2 import mpc, mpfr

PRECISION = 128


def context():
    return gmpy2.context(precision=PRECISION)


def real(x) -> mpfr:
    # mpfr(float) is exact; keep already-precise values untouched
    if isinstance(x, mpfr):
        return x
    return mpfr(float(x)) if not isinstance(x, int) else mpfr(x)


def cplx(z) -> mpc:
    if isinstance(z, mpc):
        return z
    if isinstance(z, mpfr):
        return mpc(z)
    return mpc(complex(z))


def fsum(values: Iterable) -> mpfr:
    total = mpfr(0)
    for v in values:
        total += v
    return total


def pi() -> mpfr:
    return gmpy2.const_pi(PRECISION)

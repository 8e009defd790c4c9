"""Error-free transformations and K-fold compensated summation.

Every function here returns floating point results together with the exact
rounding errors of the operations that produced them, as floating point
numbers.  "Exact" is meant literally: for two_sum, ``result + error`` equals
``a + b`` as a real number (checkable in rational arithmetic), and likewise
for the product transforms.  These identities hold in IEEE-754 binary64
round-to-nearest provided no overflow occurs, and for the product transforms
provided no underflow occurs in the partial products.

The kernels are branch free and use only ``+``, ``-`` and ``*`` on the
operands, in a fixed order.  Nothing here may be re-associated or contracted
into fused operations; the intermediate roundings are the point.  Arithmetic
is done through the operands' own operators, so a float subclass (used by the
flop-count instrumentation) passes through untouched.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence


class EftPair(NamedTuple):
    """Result of an error-free transformation.

    ``result`` is the correctly rounded value of the exact operation and
    ``error`` the remainder, so ``result + error`` reproduces the exact
    value.  Absent overflow/underflow, ``abs(error) <= u * abs(result)``
    with u = 2**-53.
    """

    result: float
    error: float


class SplitPair(NamedTuple):
    """A float written as ``high + low`` with each part 26/27-bit wide."""

    high: float
    low: float


# 2**27 + 1, the Dekker splitter for a 53-bit significand.
_SPLITTER = 134217729.0


def two_sum(a: float, b: float) -> EftPair:
    """EFT of addition: fl(a+b) and its exact rounding error, 6 flops.

    Works for any ordering of magnitudes (no branch on ``abs(a) >= abs(b)``).
    If a+b overflows the contract is void; no check is made.
    """
    result = a + b
    z = result - a
    error = (a - (result - z)) + (b - z)
    return EftPair(result, error)


def split(a: float) -> SplitPair:
    """Split ``a`` into high and low parts of at most 27 and 26 bits.

    ``high + low == a`` exactly.  4 flops.  Requires ``abs(a) < 2**996`` so
    that ``a * (2**27 + 1)`` does not overflow; not checked.
    """
    z = a * _SPLITTER
    high = z - (z - a)
    return SplitPair(high, a - high)


def two_prod(a: float, b: float) -> EftPair:
    """EFT of multiplication via Dekker splitting, 17 flops.

    ``result + error == a * b`` exactly when no overflow occurs and no
    partial product underflows.  With underflow the error term is only
    approximate; this is documented, not trapped.
    """
    result = a * b
    ah, al = split(a)
    bh, bl = split(b)
    error = al * bl - (((result - ah * bh) - al * bh) - ah * bl)
    return EftPair(result, error)


try:
    from math import fma as _fma  # Python >= 3.13
except ImportError:

    def _fma(x: float, y: float, z: float) -> float:
        # Exact product plus addend in rationals, then one correct rounding.
        # float(Fraction) rounds to nearest, ties to even, which is exactly
        # the single rounding a hardware fma performs.
        exact = Fraction(x) * Fraction(y) + Fraction(z)
        try:
            return float(exact)
        except OverflowError:
            return float("inf") if exact > 0 else float("-inf")


def two_prod_fma(a: float, b: float) -> EftPair:
    """EFT of multiplication via a fused multiply-add, 2 flops.

    Bitwise identical to :func:`two_prod` wherever neither over- nor
    underflows.  ``math.fma`` only exists on Python >= 3.13, so on older
    interpreters the fused operation is emulated by rounding the exact
    rational ``a*b - result`` to nearest; the emulation returns the same
    bits a hardware FMA would and costs far more than 2 flops.  Callers that
    care about the flop count (not just the values) should use
    :func:`two_prod`, which is the default everywhere in this package.
    """
    result = a * b
    error = _fma(a, b, -result)
    return EftPair(result, error)


def vec_sum(p: Sequence[float]) -> list[float]:
    """One error-free vector transformation pass for summation.

    Returns a vector with the same length and the same exact sum; the last
    entry becomes fl of the running cascaded sum and earlier entries hold
    the rounding errors.  6(n-1) flops.  Input is not modified.
    """
    if not p:
        raise ValueError("vec_sum requires a nonempty vector")
    q = list(p)
    for j in range(1, len(q)):
        q[j], q[j - 1] = two_sum(q[j], q[j - 1])
    return q


def sum_k(p: Sequence[float], k: int) -> float:
    """Sum a vector as if carried out in ``k`` times the working precision.

    Applies ``k - 1`` :func:`vec_sum` passes, then a plain left-to-right
    reduction: (6k-5)(n-1) flops for an n-vector.  ``k=1`` is the ordinary
    recursive sum.  The result s satisfies

        abs(s - e) <= (u + 3*g(n-1)**2) * abs(e) + g(2n-2)**k * sum(abs(p))

    where e is the exact sum and g(m) = m*u/(1 - m*u).
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if not p:
        raise ValueError("sum_k requires a nonempty vector")
    q = list(p)
    for _ in range(k - 1):
        q = vec_sum(q)
    total = q[0]
    for x in q[1:]:
        total = total + x
    return total

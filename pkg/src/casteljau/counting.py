"""Flop counting by running the evaluators on an instrumenting float type.

The release kernels carry no counting hooks.  Instead, ``CountingFloat``
subclasses float, ticks a shared counter on every arithmetic operation, and
returns wrapped results, so feeding wrapped inputs through an evaluator
counts exactly the operations the plain-float run would perform.  Values are
bit-identical to the uninstrumented run.

Sign flips (unary minus) are not floating point operations and are not
counted; they do wrap their result so the instrumentation never drops out
mid-expression.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .evaluate import BernsteinPoly, comp_de_casteljau_k


@dataclass
class FlopCounter:
    """Tally of arithmetic operations, by kind."""

    adds: int = 0
    subs: int = 0
    muls: int = 0
    divs: int = 0

    @property
    def total(self) -> int:
        return self.adds + self.subs + self.muls + self.divs

    def ledger(self) -> str:
        return (
            f"adds={self.adds} subs={self.subs} muls={self.muls} "
            f"divs={self.divs} total={self.total}"
        )


def _counted(base_op, kind: str):
    def method(self: "CountingFloat", other):
        result = base_op(self, other)
        if result is NotImplemented:
            return NotImplemented
        counter = self.counter
        setattr(counter, kind, getattr(counter, kind) + 1)
        return CountingFloat(result, counter)

    return method


class CountingFloat(float):
    """A float whose arithmetic ticks a :class:`FlopCounter`."""

    __slots__ = ("counter",)

    def __new__(cls, value: float, counter: FlopCounter) -> "CountingFloat":
        self = super().__new__(cls, value)
        self.counter = counter
        return self

    def zero_like(self) -> "CountingFloat":
        # Hook used by the evaluators when materializing fresh zeros, so
        # that error-triangle entries stay instrumented.
        return CountingFloat(0.0, self.counter)

    __add__ = _counted(float.__add__, "adds")
    __radd__ = _counted(float.__radd__, "adds")
    __sub__ = _counted(float.__sub__, "subs")
    __rsub__ = _counted(float.__rsub__, "subs")
    __mul__ = _counted(float.__mul__, "muls")
    __rmul__ = _counted(float.__rmul__, "muls")
    __truediv__ = _counted(float.__truediv__, "divs")
    __rtruediv__ = _counted(float.__rtruediv__, "divs")

    def __neg__(self) -> "CountingFloat":
        return CountingFloat(float.__neg__(self), self.counter)

    def __pos__(self) -> "CountingFloat":
        return self

    def __abs__(self) -> "CountingFloat":
        return CountingFloat(float.__abs__(self), self.counter)


def count_evaluation_flops(
    p: Union[BernsteinPoly, Sequence[float]], s: float, k: int
) -> tuple[float, FlopCounter]:
    """Run ``comp_de_casteljau_k`` on instrumented scalars.

    Returns the (plain float) result and the operation tally.  The value is
    bitwise identical to the uninstrumented evaluation.
    """
    coeffs = p.coeffs if isinstance(p, BernsteinPoly) else p
    counter = FlopCounter()
    wrapped = BernsteinPoly([CountingFloat(c, counter) for c in coeffs])
    value = comp_de_casteljau_k(wrapped, CountingFloat(s, counter), k)
    return float(value), counter

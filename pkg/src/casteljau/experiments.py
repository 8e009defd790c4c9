"""Deterministic accuracy experiments, emitted as CSV or text reports.

Each runner sweeps a fixed family of evaluation points on a fixed
polynomial, compares every computed value against the exact rational oracle,
and emits one record per (point, method).  Points are constructed by plain
float arithmetic, left to right, exactly as written, and every float lands
in the output as a hexadecimal literal, so runs are byte-for-byte
reproducible across machines.

The test polynomials:

* octic: (s - 1)(s - 3/4)^7, evaluated near its multiple root 3/4,
* quartic: (2s - 1)^3 (s - 1), evaluated near its triple root 1/2,
* cubic: (2s - 1)^3, for the Horner versus de Casteljau comparison.

All have exactly representable Bernstein coefficients.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Union

from .counting import count_evaluation_flops
from .evaluate import (
    BernsteinPoly,
    MonomialPoly,
    comp_de_casteljau,
    comp_de_casteljau_k,
    de_casteljau,
    flop_count,
    horner,
)
from .oracle import (
    ConditionReport,
    bernstein_from_root_form,
    condition_number,
    nearest_float,
)

U = 2.0**-53

OCTIC = bernstein_from_root_form([(1, 1), (Fraction(3, 4), 7)])
QUARTIC = bernstein_from_root_form([(Fraction(1, 2), 3), (1, 1)], scale=8)
CUBIC_BERNSTEIN = bernstein_from_root_form([(Fraction(1, 2), 3)], scale=8)
CUBIC_MONOMIAL = MonomialPoly([-1.0, 6.0, -12.0, 8.0])

# The point where the once-compensated evaluator loses every digit of the
# quartic: its two leading terms cancel exactly while the true value is
# of order u**3.
SPOTLIGHT_S = 0.5 + 1001 * U

CSV_HEADER = ("s_hex", "s_dec", "method", "k", "value_hex", "exact_dec", "rel_err", "cond")


class CheckFailed(RuntimeError):
    """A built-in regression assertion of an experiment did not hold."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Run parameters shared by all experiment runners."""

    experiment: str
    k_list: tuple[int, ...] = ()
    out: Optional[Path] = None
    points: Optional[int] = None
    fmt: str = "csv"

    def __post_init__(self):
        if any(not 1 <= k <= 8 for k in self.k_list):
            raise ValueError(f"k values must lie in 1..8, got {self.k_list}")
        if self.points is not None and self.points < 2:
            raise ValueError(f"point count must be >= 2, got {self.points}")
        if self.fmt != "csv":
            raise ValueError(f"unsupported output format {self.fmt!r}")


@dataclass(frozen=True)
class SweepRecord:
    """One CSV row: an evaluation point, a method, and its accuracy.

    ``rel_err`` is the once-rounded exact relative error, except at a root
    of the polynomial (``cond`` infinite), where it carries the absolute
    error instead.
    """

    s_hex: str
    s_dec: str
    method: str
    k: int
    value_hex: str
    exact_dec: str
    rel_err: float
    cond: float

    def csv_row(self) -> str:
        return ",".join(
            (
                self.s_hex,
                self.s_dec,
                self.method,
                str(self.k),
                self.value_hex,
                self.exact_dec,
                repr(self.rel_err),
                repr(self.cond),
            )
        )


def _decimal_string(x: Fraction, digits: int = 40) -> str:
    if x == 0:
        return "0"
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        d = decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)
    return str(d)


def _record(s: float, method: str, k: int, value: float, report: ConditionReport) -> SweepRecord:
    exact = report.exact_value
    if exact == 0:
        rel_err = abs(value)
    else:
        rel_err = nearest_float(abs(Fraction(value) - exact) / abs(exact))
    return SweepRecord(
        s_hex=s.hex(),
        s_dec=repr(s),
        method=method,
        k=k,
        value_hex=value.hex(),
        exact_dec=_decimal_string(exact),
        rel_err=rel_err,
        cond=report.rounded_cond,
    )


def _method_for(k: int) -> str:
    if k == 1:
        return "decasteljau"
    if k == 2:
        return "comp"
    return "compK"


def _sorted(records: list[SweepRecord]) -> list[SweepRecord]:
    records.sort(key=lambda r: (float.fromhex(r.s_hex), r.method, r.k))
    return records


def render_csv(records: Sequence[SweepRecord]) -> str:
    lines = [",".join(CSV_HEADER)]
    lines.extend(r.csv_row() for r in records)
    return "\n".join(lines) + "\n"


def _write_text(text: str, out: Optional[Path]) -> None:
    if out is not None:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit(records: list[SweepRecord], config: ExperimentConfig) -> list[SweepRecord]:
    _sorted(records)
    _write_text(render_csv(records), config.out)
    return records


def _centered_offsets(count: int) -> range:
    half = count // 2
    return range(-half, count - half)


def run_root_neighborhood(config: ExperimentConfig) -> list[SweepRecord]:
    """Sweep the octic across its multiple root at 3/4.

    Points are fl(3/4 + fl(j * 5e-8)) for j centered on zero (401 by
    default, spacing 5e-8).  Methods: plain triangle, once-compensated, and
    K=3.  Near the root the condition number blows up, so the records carry
    absolute errors in the rel_err column only at s == 3/4 itself (the lone
    exact root among the points).
    """
    methods = (("decasteljau", 1), ("comp", 2), ("compK", 3))
    records = []
    for j in _centered_offsets(config.points or 401):
        s = 0.75 + (j * 5e-8)
        report = condition_number(OCTIC, s)
        for method, k in methods:
            if k == 1:
                value = de_casteljau(OCTIC, s)
            elif k == 2:
                value = comp_de_casteljau(OCTIC, s)
            else:
                value = comp_de_casteljau_k(OCTIC, s, k)
            records.append(_record(s, method, k, value, report))
    return _emit(records, config)


def _geometric_point(j: int) -> float:
    # 3/4 - 1.3**j for negative j, built without libm pow: accumulate the
    # power by repeated multiplication, then a single divide.  Fixed
    # operation order keeps the points bit-identical everywhere.
    power = 1.0
    for _ in range(-j):
        power = power * 1.3
    return 0.75 - (1.0 / power)


def run_condition_sweep(config: ExperimentConfig) -> list[SweepRecord]:
    """Walk the octic's condition number up geometrically.

    Points are fl(3/4 - 1.3**j) for j = -5 down to -90 by default; as j
    decreases the point approaches the root and the condition number grows
    by about 1.3**7 per step.  Methods are K = 1..4 by default.  The sweep
    asserts strict monotone growth of the condition number, which the
    accuracy-versus-conditioning analysis keys on.
    """
    k_list = config.k_list or (1, 2, 3, 4)
    count = config.points or 86
    records = []
    last_cond = None
    for j in range(-5, -5 - count, -1):
        s = _geometric_point(j)
        report = condition_number(OCTIC, s)
        if last_cond is not None and not report.cond > last_cond:
            raise CheckFailed(
                f"condition number is not strictly increasing at j={j}: "
                f"{float(report.cond)} <= {float(last_cond)}"
            )
        last_cond = report.cond
        for k in k_list:
            if k == 1:
                value = de_casteljau(OCTIC, s)
            elif k == 2:
                value = comp_de_casteljau(OCTIC, s)
            else:
                value = comp_de_casteljau_k(OCTIC, s, k)
            records.append(_record(s, _method_for(k), k, value, report))
    return _emit(records, config)


def run_cubic_comparison(config: ExperimentConfig) -> list[SweepRecord]:
    """Two windows around 1/2: Horner vs plain, and compensated variants.

    Window one spans |s - 1/2| <= 2e-5 and pits Horner on the cubic's
    monomial form against the plain triangle on its Bernstein form.  Window
    two spans |s - 1/2| <= 1.5e-11 on the quartic and compares the once
    compensated evaluator with K=3.  The spotlight point 1/2 + 1001u joins
    window two with K = 2, 3 and 4 rows: the K=2 value collapses to zero
    there (relative error exactly 1) while K >= 3 stays faithful.
    """
    count = config.points or 401
    records = []
    for j in _centered_offsets(count):
        s = 0.5 + (j * 1e-7)
        report = condition_number(CUBIC_BERNSTEIN, s)
        records.append(_record(s, "horner", 1, horner(CUBIC_MONOMIAL, s), report))
        records.append(_record(s, "decasteljau", 1, de_casteljau(CUBIC_BERNSTEIN, s), report))
    for j in _centered_offsets(count):
        s = 0.5 + (j * 7.5e-14)
        report = condition_number(QUARTIC, s)
        records.append(_record(s, "comp", 2, comp_de_casteljau(QUARTIC, s), report))
        records.append(_record(s, "compK", 3, comp_de_casteljau_k(QUARTIC, s, 3), report))
    s = SPOTLIGHT_S
    report = condition_number(QUARTIC, s)
    records.append(_record(s, "comp", 2, comp_de_casteljau(QUARTIC, s), report))
    for k in (3, 4):
        records.append(_record(s, "compK", k, comp_de_casteljau_k(QUARTIC, s, k), report))
    return _emit(records, config)


def _exact_levels(p: BernsteinPoly, s: float) -> list[list[Fraction]]:
    """Exact de Casteljau triangle, indexed [level][j], level n down to 0."""
    sf = Fraction(s)
    r = 1 - sf
    levels = {p.degree: [Fraction(c) for c in p.coeffs]}
    for level in range(p.degree - 1, -1, -1):
        prev = levels[level + 1]
        levels[level] = [r * prev[j] + sf * prev[j + 1] for j in range(level + 1)]
    return [levels[k] for k in range(p.degree + 1)]


# Closed forms for the once-compensated run on the quartic at the spotlight
# point, as exact rationals in u = 2**-53 and t = 1001 u.  Keyed (level, j);
# columns: base value, first error triangle, remaining exact residual.
def _spotlight_reference() -> dict[tuple[int, int], tuple[Fraction, Fraction, Fraction]]:
    u = Fraction(1, 2**53)
    t = 1001 * u
    return {
        (3, 0): (Fraction(1, 8) - Fraction(7, 4) * t - u / 4, u / 4, Fraction(0)),
        (3, 1): (-Fraction(1, 8) + Fraction(5, 4) * t + u / 4, -u / 4, Fraction(0)),
        (3, 2): (Fraction(1, 8) - Fraction(3, 4) * t, Fraction(0), Fraction(0)),
        (3, 3): (-Fraction(1, 8) + t / 4, Fraction(0), Fraction(0)),
        (2, 0): (-t / 2, 3 * t**2, Fraction(0)),
        (2, 1): (t / 2 + u / 8, -u / 8 - 2 * t**2, Fraction(0)),
        (2, 2): (-t / 2, t**2, Fraction(0)),
        (1, 0): (u / 16 + t**2 + 239 * u**2, -u / 16 + t**2 / 2 - 239 * u**2, -5 * t**3),
        (1, 1): (u / 16 - t**2 - 239 * u**2, -u / 16 - t**2 / 2 + 239 * u**2, 3 * t**3),
        (0, 0): (u / 16, -u / 16, -4 * t**3 + 8 * t**4),
    }


def run_table_reproduction(config: ExperimentConfig) -> list[str]:
    """Audit every triangle entry of the once-compensated quartic run.

    Captures the full trace at the spotlight point, checks each computed
    base and error-triangle value bitwise against its closed form, and
    checks the exact leftover residual (what the first compensation still
    misses) against its closed form.  The headline facts asserted: the
    final base value is 2**-57, its correction is -2**-57, their sum (the
    K=2 result) is exactly 0, and the true value is -4t**3 + 8t**4 with
    t = 1001u.
    """
    s = SPOTLIGHT_S
    result, trace = comp_de_casteljau_k(QUARTIC, s, 2, capture=True)
    exact_levels = _exact_levels(QUARTIC, s)
    reference = _spotlight_reference()

    lines = [
        "once-compensated triangle audit: quartic (2s-1)^3 (s-1) at s = 1/2 + 1001u",
        f"s = {s.hex()} ({s!r})",
        "level j  base_hex               err1_hex               base_ok err1_ok resid_ok",
    ]
    failures = []
    for level in range(QUARTIC.degree - 1, -1, -1):
        for j in range(level + 1):
            base = trace.base_triangle[level][j]
            err1 = trace.error_triangles[0][level][j]
            want_base, want_err1, want_resid = reference[(level, j)]
            resid = exact_levels[level][j] - Fraction(base) - Fraction(err1)
            ok_b = Fraction(base) == want_base
            ok_e = Fraction(err1) == want_err1
            ok_r = resid == want_resid
            lines.append(
                f"{level:5d} {j}  {base.hex():22s} {err1.hex():22s} "
                f"{str(ok_b):7s} {str(ok_e):7s} {str(ok_r)}"
            )
            if not (ok_b and ok_e and ok_r):
                failures.append((level, j))

    u = Fraction(1, 2**53)
    t = 1001 * u
    checks = [
        ("final base value is 2**-57", Fraction(trace.base_triangle[0][0]) == u / 16),
        ("final correction is -2**-57", Fraction(trace.error_triangles[0][0][0]) == -u / 16),
        ("K=2 result is exactly 0", result == 0.0),
        (
            "exact value is -4t^3 + 8t^4",
            exact_levels[0][0] == -4 * t**3 + 8 * t**4,
        ),
    ]
    for label, ok in checks:
        lines.append(f"check: {label}: {ok}")
        if not ok:
            failures.append(label)
    lines.append(f"entries audited: {len(reference)}; mismatches: {len(failures)}")
    text = "\n".join(lines) + "\n"
    _write_text(text, config.out)
    if failures:
        raise CheckFailed(f"triangle audit mismatches: {failures}")
    return lines


def run_flop_report(config: ExperimentConfig) -> list[str]:
    """Compare closed-form flop counts with instrumented runs.

    Covers degrees 2..8 and K in the configured list (1..5 by default).
    Every mismatch fails with the full per-operation ledger.  Also reports
    the cost of the final K-term compensated sum and the savings a fused
    multiply-add variant of the product transform would bring.
    """
    k_list = config.k_list or (1, 2, 3, 4, 5)
    lines = ["   n   k    formula  instrumented  match"]
    mismatches = []
    for n in range(2, 9):
        coeffs = [(-1.0) ** j for j in range(n + 1)]
        for k in k_list:
            expected = flop_count(n, k)
            _, counter = count_evaluation_flops(coeffs, 0.75, k)
            ok = counter.total == expected
            lines.append(f"{n:4d} {k:3d} {expected:10d} {counter.total:13d}  {ok}")
            if not ok:
                mismatches.append((n, k, expected, counter.ledger()))
    lines.append("")
    lines.append("final-sum cost (6k-5)(k-1) and fma savings 15(3k-4)T_n per degree:")
    for k in k_list:
        if k < 2:
            continue
        sumk_cost = (6 * k - 5) * (k - 1)
        savings = ", ".join(
            f"n={n}: {15 * (3 * k - 4) * (n * (n + 1) // 2)}" for n in range(2, 9)
        )
        lines.append(f"  k={k}: final sum {sumk_cost} flops; fma would save {savings}")
    text = "\n".join(lines) + "\n"
    _write_text(text, config.out)
    if mismatches:
        detail = "; ".join(
            f"n={n} k={k} expected {exp} got [{ledger}]" for n, k, exp, ledger in mismatches
        )
        raise CheckFailed(f"instrumented flop counts deviate: {detail}")
    return lines

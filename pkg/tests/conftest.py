"""Shared fixtures: exact error-bound arithmetic and hypothesis profiles."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from casteljau import (
    comp_de_casteljau,
    comp_de_casteljau_k,
    de_casteljau,
    exact_eval,
    p_tilde,
)

# Deterministic property testing: the suite doubles as a regression gate, so
# example generation must not vary between runs.
settings.register_profile(
    "deterministic",
    derandomize=True,
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")

U = Fraction(1, 2**53)
DATA_DIR = Path(__file__).parent / "data"


def gamma(n: int) -> Fraction:
    """The standard rounding-error growth factor n*u / (1 - n*u), exactly."""
    nu = n * U
    return nu / (1 - nu)


def cond_multiplier(n: int, k: int) -> Fraction:
    """Leading coefficient of cond(p, s) in the K-fold error bound, times u**k."""
    from math import comb

    if k == 1:
        q = Fraction(3 * n)
    elif k == 2:
        q = Fraction(3 * n * (3 * n + 7), 2)
    elif k == 3:
        q = Fraction(3 * n * (3 * n * n + 36 * n + 61), 2)
    elif k == 4:
        q = Fraction(
            81 * comb(n, 4) + 810 * comb(n, 3) + 2475 * comb(n, 2) + 2250 * comb(n, 1)
        )
    else:
        raise ValueError(f"no closed-form multiplier tabulated for k={k}")
    return q * U**k


def check_accuracy_bounds(coeffs, s) -> list[str]:
    """Exact per-instance error-bound checks for the three evaluators.

    Returns a list of violation descriptions (empty = all bounds hold).
    Checks, all in rational arithmetic:

    * plain triangle: absolute error <= gamma(3n) * ptilde(s);
    * once compensated: relative error <= u + 2*gamma(3n)**2 * cond;
    * K=3: relative error <= u + 3*gamma(2)**2
      + gamma(4)**3 * sum|leading terms| / |p(s)|
      + [3n(3n^2+36n+61)/2] u^3 * cond,
      where the middle terms bound the final three-term compensated sum
      using the actual captured leading terms.

    The relative checks are skipped at exact roots.
    """
    n = len(coeffs) - 1
    exact = exact_eval(coeffs, s)
    tilde = p_tilde(coeffs, s)
    out = []

    plain = de_casteljau(coeffs, s)
    if abs(Fraction(plain) - exact) > gamma(3 * n) * tilde:
        out.append(f"plain bound violated at n={n}, s={s!r}")

    if exact == 0:
        return out
    cond = tilde / abs(exact)

    comp = comp_de_casteljau(coeffs, s)
    rel2 = abs(Fraction(comp) - exact) / abs(exact)
    if rel2 > U + 2 * gamma(3 * n) ** 2 * cond:
        out.append(f"compensated bound violated at n={n}, s={s!r}")

    value3, trace = comp_de_casteljau_k(coeffs, s, 3, capture=True)
    leading = [trace.base_triangle[0][0]] + [
        tri[0][0] for tri in trace.error_triangles
    ]
    rel3 = abs(Fraction(value3) - exact) / abs(exact)
    sum_abs = sum(abs(Fraction(v)) for v in leading)
    bound3 = (
        U
        + 3 * gamma(2) ** 2
        + gamma(4) ** 3 * sum_abs / abs(exact)
        + cond_multiplier(n, 3) * cond
    )
    if rel3 > bound3:
        out.append(f"k=3 bound violated at n={n}, s={s!r}")
    return out


def signed_floats(min_mag: float, max_mag: float):
    """Strategy for finite floats with magnitude in [min_mag, max_mag]."""
    pos = st.floats(
        min_value=min_mag, max_value=max_mag, allow_nan=False, allow_infinity=False
    )
    return st.one_of(pos, pos.map(lambda x: -x))


def pytest_addoption(parser):
    parser.addoption(
        "--regen-goldens",
        action="store_true",
        default=False,
        help="rewrite the golden sweep CSV and frozen thresholds from this run",
    )


@pytest.fixture
def regen_goldens(request) -> bool:
    return request.config.getoption("--regen-goldens")

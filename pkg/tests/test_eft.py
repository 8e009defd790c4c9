"""Error-free transformation kernels: exactness is checked in rationals."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from casteljau import split, sum_k, two_prod, two_prod_fma, two_sum, vec_sum

from conftest import U, gamma, signed_floats

# Magnitude window in which no product underflows and nothing overflows, so
# the exactness contracts hold without caveats.
eft_floats = signed_floats(2.0**-300, 2.0**300)


class TestTwoSum:
    def test_exact_sum_has_zero_residual(self):
        assert two_sum(1.0, -0.5) == (0.5, 0.0)

    @pytest.mark.parametrize("x", [0.0, 1.0, -2.5, 3e300, 7e-200])
    def test_zero_addend_is_identity(self, x):
        assert two_sum(x, 0.0) == (x, 0.0)

    def test_round_to_even_drop_is_recovered(self):
        # 1 + 2**-53 rounds back to 1; the residual carries the lost bit.
        result, error = two_sum(1.0, 2.0**-53)
        assert result == 1.0
        assert error == 2.0**-53
        assert Fraction(result) + Fraction(error) == 1 + Fraction(2) ** -53

    @given(eft_floats, eft_floats)
    def test_exactness(self, a, b):
        result, error = two_sum(a, b)
        assert Fraction(result) + Fraction(error) == Fraction(a) + Fraction(b)

    @given(eft_floats, eft_floats)
    def test_error_smallness(self, a, b):
        result, error = two_sum(a, b)
        assert abs(Fraction(error)) <= U * abs(Fraction(result))
        assert abs(Fraction(error)) <= U * abs(Fraction(a) + Fraction(b))


class TestSplit:
    def test_trivial_values(self):
        assert split(1.0) == (1.0, 0.0)
        assert split(0.0) == (0.0, 0.0)

    def test_half_width_parts(self):
        # Round-to-nearest in the scaled sum pulls the 2**-27 bit into the
        # low part here; both parts still fit their bit budgets and
        # recombine exactly.
        a = 1.0 + 2.0**-27 + 2.0**-52
        high, low = split(a)
        assert high == 1.0
        assert low == 2.0**-27 + 2.0**-52
        assert Fraction(high) + Fraction(low) == Fraction(a)

    @given(signed_floats(2.0**-300, 2.0**900))
    def test_parts_recombine_exactly_and_fit(self, a):
        high, low = split(a)
        assert Fraction(high) + Fraction(low) == Fraction(a)
        for part in (high, low):
            if part != 0.0:
                num = abs(Fraction(part).numerator)
                # strip the power of two; the odd part is the significand
                num >>= (num & -num).bit_length() - 1
                assert num.bit_length() <= 27


class TestTwoProd:
    def test_exactly_representable_product(self):
        assert two_prod(1.5, 1.5) == (2.25, 0.0)

    @pytest.mark.parametrize("x", [1.0, -2.5, 3e150, 7e-120])
    def test_unit_factor_is_identity(self, x):
        assert two_prod(x, 1.0) == (x, 0.0)

    def test_square_just_above_one(self):
        # (1 + 2**-52)**2 = 1 + 2**-51 + 2**-104 exactly
        result, error = two_prod(1.0 + 2.0**-52, 1.0 + 2.0**-52)
        assert result == 1.0 + 2.0**-51
        assert error == 2.0**-104

    @given(eft_floats, eft_floats)
    def test_exactness(self, a, b):
        result, error = two_prod(a, b)
        assert Fraction(result) + Fraction(error) == Fraction(a) * Fraction(b)

    @given(eft_floats, eft_floats)
    def test_error_smallness(self, a, b):
        result, error = two_prod(a, b)
        assert abs(Fraction(error)) <= U * abs(Fraction(result))


class TestTwoProdFma:
    def test_trivial_values(self):
        assert two_prod_fma(1.5, 1.5) == (2.25, 0.0)
        assert two_prod_fma(0.0, 17.25) == (0.0, 0.0)

    @given(eft_floats, eft_floats)
    def test_bitwise_equal_to_split_form(self, a, b):
        assert two_prod_fma(a, b) == two_prod(a, b)


class TestVecSum:
    def test_single_element_passthrough(self):
        assert vec_sum([3.5]) == [3.5]

    def test_all_zeros(self):
        assert vec_sum([0.0, 0.0, 0.0]) == [0.0, 0.0, 0.0]

    def test_cancellation_preserves_exact_sum(self):
        out = vec_sum([1.0, 2.0**53, -(2.0**53)])
        assert sum(Fraction(x) for x in out) == 1

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            vec_sum([])

    @given(st.lists(eft_floats, min_size=1, max_size=12))
    def test_exact_sum_preserved(self, p):
        out = vec_sum(p)
        assert len(out) == len(p)
        assert sum(Fraction(x) for x in out) == sum(Fraction(x) for x in p)

    @given(st.lists(eft_floats, min_size=1, max_size=12))
    def test_last_entry_is_cascaded_float_sum(self, p):
        out = vec_sum(p)
        acc = p[0]
        for x in p[1:]:
            acc = acc + x
        assert out[-1] == acc


class TestSumK:
    @pytest.mark.parametrize("k", [1, 2, 3, 5])
    def test_single_element(self, k):
        assert sum_k([42.5], k) == 42.5

    def test_k2_rescues_cancellation(self):
        # a plain left-to-right sum returns 0.0 here
        assert sum_k([2.0**53, 1.0, -(2.0**53)], 1) == 0.0
        assert sum_k([2.0**53, 1.0, -(2.0**53)], 2) == 1.0

    def test_k2_exactly_representable_sum(self):
        assert sum_k([1.0, 2.0**-53, 2.0**-53], 2) == 1.0 + 2.0**-52

    def test_invalid_k_rejected(self):
        with pytest.raises(ValueError):
            sum_k([1.0], 0)
        with pytest.raises(ValueError):
            sum_k([], 2)

    @given(st.lists(eft_floats, min_size=2, max_size=10), st.integers(1, 5))
    def test_error_bound(self, p, k):
        result = sum_k(p, k)
        exact = sum(Fraction(x) for x in p)
        n = len(p)
        bound = (U + 3 * gamma(n - 1) ** 2) * abs(exact) + gamma(2 * n - 2) ** k * sum(
            abs(Fraction(x)) for x in p
        )
        assert abs(Fraction(result) - exact) <= bound

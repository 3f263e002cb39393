from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from shiftchaos import operators as ops
from shiftchaos.operators import OperatorSpec, SpecError, Variant, Verdict, WeightError
from shiftchaos.scalar import Scalar
from shiftchaos.sequences import (DecayCertificate, FinSeq, FormulaSeq, IndexBase, basis_vector,
                                  sup_norm)

from conftest import dense, finseqs, oracle_A, oracle_B, to_finseq, weights

ONE, ZERO = IndexBase.ONE, IndexBase.ZERO


def spec(bounded, base, w="2"):
    return OperatorSpec.shift(bounded, base, Scalar.parse(w))


@pytest.mark.parametrize("w", ["1", "-1", "1/2", "0", "3/5+4/5 i"])
def test_weight_must_exceed_one(w):
    with pytest.raises(WeightError):
        spec(True, ONE, w)


def test_worked_examples_unbounded_base_one():
    s = spec(False, ONE)
    x = FinSeq.from_list(ONE, [1, 1, 1])
    # (Ax)_1 = 2 x_2, (Ax)_2 = 4 x_3
    assert ops.apply(s, x) == FinSeq.from_list(ONE, [2, 4])
    # (Be1)_2 = e1_1 / w^1
    assert ops.right_inverse(s, basis_vector(ONE, 1)) == FinSeq(ONE, {2: Fraction(1, 2)})
    assert ops.apply(s, basis_vector(ONE, 1)).is_zero()


def test_worked_examples_bounded_base_zero():
    s = spec(True, ZERO, "3")
    x = FinSeq.from_list(ZERO, [5, 1, 2])
    assert ops.apply(s, x) == FinSeq.from_list(ZERO, [3, 6])
    assert ops.right_inverse(s, x) == FinSeq.from_list(ZERO, [0, Fraction(5, 3), Fraction(1, 3),
                                                             Fraction(2, 3)])


def test_unbounded_base_zero_first_weight_is_one():
    s = spec(False, ZERO, "5")
    # (Ax)_0 = w^0 x_1
    assert ops.apply(s, basis_vector(ZERO, 1)) == basis_vector(ZERO, 0)
    # (Be0)_1 = w^{-0} e0_0
    assert ops.right_inverse(s, basis_vector(ZERO, 0)) == basis_vector(ZERO, 1)


@pytest.mark.parametrize("bounded", [True, False])
@pytest.mark.parametrize("n", [1, 2, 3, 5])
@pytest.mark.parametrize("w", [Fraction(2), Fraction(-3, 2)])
def test_dense_oracle_agreement(base, bounded, n, w):
    s = spec(bounded, base, str(w))
    x = to_finseq([Fraction(k % 7 - 3, k % 4 + 1) for k in range(14)], base)
    vals = dense(x, 14)
    assert dense(ops.power(s, n, x), 14) == oracle_A(vals, w, int(base), bounded, n)
    assert dense(ops.right_inverse_power(s, n, x), 14 + n) == oracle_B(vals, w, int(base), bounded, n)


def test_exponents_closed_form():
    s = spec(False, ONE)
    for n in range(0, 8):
        for k in range(1, 8):
            assert ops.forward_exponent(s, n, k) == sum(range(k, k + n))
            assert ops.inverse_exponent(s, n, k) == -sum(range(k - n, k))


def test_norm_closed_forms():
    for n in range(1, 8):
        assert ops.opnorm_Bn(spec(False, ONE), n).squared_exact == Fraction(1, 2 ** (n * (n + 1)))
        assert ops.opnorm_Bn(spec(False, ZERO), n).squared_exact == Fraction(1, 2 ** (n * (n - 1)))
        assert ops.opnorm_Bn(spec(True, ONE, "3"), n).squared_exact == Fraction(1, 9 ** n)
        assert ops.opnorm_An_bounded(spec(True, ZERO, "3"), n).squared_exact == 9 ** n


def test_unboundedness_witness_matches_direct_evaluation():
    s = spec(False, ONE)
    for n in range(1, 6):
        for m in range(1, 6):
            wit = ops.unboundedness_witness(s, n, m)
            # A^n e_{n+m} = prod_{j=m}^{m+n-1} w^j e_m
            assert wit.exponent == sum(range(m, m + n))
            assert wit.squared_exact == ops.unboundedness_witness_direct(s, n, m)
    with pytest.raises(SpecError):
        ops.unboundedness_witness(spec(True, ONE), 1, 1)


def test_power_rejects_negative_n():
    with pytest.raises(ValueError):
        ops.power(spec(True, ONE), -1, basis_vector(ONE, 1))


def test_domain_membership():
    s = spec(False, ONE)
    assert ops.domain_membership_unbounded(s, 3, basis_vector(ONE, 4)).verdict is Verdict.IN
    # x_k = 2^{-k^2}: w^{nk} growth is beaten, certificate is inherited
    fast = FormulaSeq(ONE, lambda k: Scalar(2) ** (-k * k),
                      DecayCertificate(1, Fraction(1, 64), shrink=Fraction(1, 16)))
    assert fast.check_decay(100)
    assert ops.domain_membership_unbounded(s, 2, fast).verdict is Verdict.IN
    # x_k = 2^{-k}: w^k x_{k+1} = 1/2 for all k, not in c0
    slow = FormulaSeq(ONE, lambda k: Scalar(2) ** (-k), DecayCertificate(1, Fraction(1, 4)))
    assert ops.domain_membership_unbounded(s, 1, slow, 100).verdict is Verdict.OUT


@settings(max_examples=300, deadline=None)
@given(st.booleans(), st.sampled_from([ONE, ZERO]), weights, st.data())
def test_right_inverse_property(bounded, base, w, data):
    s = spec(bounded, base, w)
    x = data.draw(finseqs(base=base, complex_=not Scalar.parse(w).is_real))
    assert ops.apply(s, ops.right_inverse(s, x)) == x
    n = data.draw(st.integers(0, 8))
    assert ops.power(s, n, ops.right_inverse_power(s, n, x)) == x


@settings(max_examples=200, deadline=None)
@given(st.booleans(), st.sampled_from([ONE, ZERO]), weights, st.integers(0, 10), st.data())
def test_powers_compose(bounded, base, w, n, data):
    s = spec(bounded, base, w)
    x = data.draw(finseqs(base=base, complex_=True))
    m = data.draw(st.integers(0, 6))
    assert ops.power(s, n, x) == ops.iterate(ops.apply, s, n, x)
    assert ops.power(s, m, ops.power(s, n, x)) == ops.power(s, m + n, x)
    assert ops.right_inverse_power(s, n, x) == ops.iterate(ops.right_inverse, s, n, x)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([ONE, ZERO]), weights, st.integers(1, 6), st.data())
def test_B_norm_bound_holds_on_samples(base, w, n, data):
    s = spec(False, base, w)
    x = data.draw(finseqs(base=base, complex_=True))
    bound = ops.opnorm_Bn(s, n).squared_exact
    assert sup_norm(ops.right_inverse_power(s, n, x)).squared <= bound * sup_norm(x).squared

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from shiftchaos import negative as ng
from shiftchaos.negative import DomainVerdict, ExtensionVariant
from shiftchaos.operators import WeightError
from shiftchaos.scalar import Scalar
from shiftchaos.sequences import (ConvSeq, DecayCertificate, FinSeq, FormulaSeq, IndexBase,
                                  LimitFormulaSeq)

from conftest import finseqs, rationals, weights

ONE = IndexBase.ONE


def test_range_limit_worked_example():
    x = ConvSeq.from_values(1, [3, 2])
    image = ng.apply_on_c(ExtensionVariant.BOUNDED_ON_C, 2, x)
    assert image == ConvSeq.from_values(2, [4])
    assert (image - x.scale(2)).limit == 0


def test_unbounded_on_c_needs_zero_limit():
    with pytest.raises(ng.NotInDomain):
        ng.apply_on_c(ExtensionVariant.UNBOUNDED_ON_C, 2, ConvSeq.constant(1))


def test_constant_sequence_not_in_domain():
    check = ng.domain_forces_vanishing(2, ConvSeq.constant(1), K=20)
    assert check.verdict is DomainVerdict.NOT_IN_DOMAIN
    mags = [v for _, v in check.evidence]
    assert mags == sorted(mags) and mags[-1] == 4 ** 20


def test_formula_limits():
    # limit 1, deviation 2^{-k}: tail weighted image still grows
    dev = FormulaSeq(ONE, lambda k: Scalar(2) ** (-k), DecayCertificate(1, Fraction(1, 4)))
    check = ng.domain_forces_vanishing(2, LimitFormulaSeq(Scalar(1), dev), K=30)
    assert check.verdict is DomainVerdict.NOT_IN_DOMAIN
    # limit 0, deviation w^{-k}: weighted image is the constant 1/w, convergent
    check = ng.domain_forces_vanishing(2, LimitFormulaSeq(Scalar(0), dev), K=30)
    assert check.verdict is DomainVerdict.IN_DOMAIN


def test_weight_checked():
    with pytest.raises(WeightError):
        ng.range_limit_check(1, ConvSeq.constant(1))


@pytest.mark.parametrize("variant", list(ExtensionVariant))
def test_obstruction_report(variant):
    rep = ng.obstruction_report(variant, Scalar(3), 30, plant=True)
    assert rep.passed
    if variant is ExtensionVariant.UNBOUNDED_ON_C:
        assert len(rep.rejected) == 1
        assert rep.rejected[0][1].verdict is DomainVerdict.NOT_IN_DOMAIN


@settings(max_examples=500, deadline=None)
@given(weights, rationals, rationals, finseqs(complex_=True))
def test_range_in_c0(w, a, b, d):
    assert ng.range_limit_check(Scalar.parse(w), ConvSeq(Scalar(a, b), d)).is_zero()


@settings(max_examples=200, deadline=None)
@given(weights, rationals, finseqs())
def test_domain_classification(w, lim, d):
    check = ng.domain_forces_vanishing(Scalar.parse(w), ConvSeq(lim, d), K=40)
    if lim == 0:
        assert check.verdict is DomainVerdict.IN_DOMAIN
    else:
        assert check.verdict is DomainVerdict.NOT_IN_DOMAIN
        mags = [v for _, v in check.evidence]
        assert all(b > a for a, b in zip(mags, mags[1:]))

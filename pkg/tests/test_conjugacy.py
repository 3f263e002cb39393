import random

import pytest
from hypothesis import given, settings, strategies as st

from shiftchaos import conjugacy as cj
from shiftchaos.operators import OperatorSpec, SpecError, Variant
from shiftchaos.sampling import random_convseq
from shiftchaos.scalar import Scalar
from shiftchaos.spectral import eigenvector
from shiftchaos.sequences import ConvSeq, FinSeq, IndexBase, sup_norm, sup_norm_conv

from conftest import finseqs, rationals, weights


def literal_hat_step(bounded: bool, w: Scalar, x: ConvSeq) -> ConvSeq:
    """One step straight from the entrywise definition on c."""
    lim = x.limit
    horizon = x.deviation.max_support + 2
    vals = []
    for k in range(1, horizon + 1):
        if bounded:
            vals.append(w * (x[k + 1] + x[1] - lim - lim))
        else:
            vals.append(w ** k * (x[k + 1] - lim) + x[1] - lim)
    new_lim = w * (x[1] - lim) if bounded else x[1] - lim
    return ConvSeq.from_values(new_lim, vals)


def test_J_examples():
    x = ConvSeq.from_values(3, [5, 4])
    assert cj.J(x) == FinSeq.from_list(IndexBase.ZERO, [3, 2, 1])
    assert cj.J_inv(FinSeq.from_list(IndexBase.ZERO, [3, 2, 1])) == x
    # ‖x‖ = 1 but ‖Jx‖ = 2: the factor 4 in the squared bound is attained
    y = ConvSeq.from_values(1, [-1])
    assert sup_norm(cj.J(y)).squared == 4 * sup_norm_conv(y).squared


def test_bounded_hat_worked_example():
    s = OperatorSpec.hat(True, Scalar(2))
    x = ConvSeq.from_values(1, [3, 2])  # (3, 2, 1, 1, ...)
    # w (x_{k+1} + x_1 - 2) = 2 (x_{k+1} + 1): (6, 4, 4, ...)
    assert cj.hat_apply(s, x) == ConvSeq.from_values(4, [6])


def test_unbounded_hat_worked_example():
    s = OperatorSpec.hat(False, Scalar(2))
    x = ConvSeq.from_values(1, [3, 2, 5])
    # k=1: 2(2-1) + 2 = 4; k=2: 4(5-1) + 2 = 18; tail 2
    assert cj.hat_apply(s, x) == ConvSeq.from_values(2, [4, 18])


def test_hat_rejects_shift_spec():
    with pytest.raises(SpecError):
        cj.hat_power(OperatorSpec.shift(True, IndexBase.ONE, Scalar(2)), 1, ConvSeq.constant(1))


@pytest.mark.parametrize("bounded", [True, False])
@pytest.mark.parametrize("w", ["2", "-5/2", "1+1 i"])
def test_hat_matches_literal_definition(bounded, w):
    w = Scalar.parse(w)
    s = OperatorSpec.hat(bounded, w)
    rng = random.Random(7)
    for _ in range(30):
        x = random_convseq(rng, max_len=8, complex_=not w.is_real)
        lit = x
        for n in range(1, 6):
            lit = literal_hat_step(bounded, w, lit)
            assert cj.hat_power(s, n, x) == lit
            assert cj.hat_power_limit_formula(s, n, x) == lit.limit


@settings(max_examples=300, deadline=None)
@given(st.booleans(), weights, rationals, finseqs(max_len=10, complex_=True), st.integers(1, 8))
def test_conjugacy_diagram(bounded, w, lim, d, n):
    s = OperatorSpec.hat(bounded, Scalar.parse(w))
    x = ConvSeq(lim, d)
    assert cj.conjugation_oracle(s, n, x).equal
    assert cj.J_inv(cj.J(x)) == x
    assert cj.J_norm_ratio_ok(x)


@settings(max_examples=200, deadline=None)
@given(finseqs(base=IndexBase.ZERO, complex_=True))
def test_J_is_onto(y):
    assert cj.J(cj.J_inv(y)) == y


def test_hat_domain():
    unb = OperatorSpec.hat(False, Scalar(2))
    bnd = OperatorSpec.hat(True, Scalar(2))
    y = eigenvector(unb, Scalar(3))
    assert cj.hat_domain(unb, 3, y).verdict.value == "IN"
    assert cj.hat_domain(bnd, 3, eigenvector(bnd, Scalar(1))).verdict.value == "IN"

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from shiftchaos import operators as ops
from shiftchaos import spectral as sp
from shiftchaos.operators import OperatorSpec, SpecError
from shiftchaos.scalar import Scalar
from shiftchaos.sequences import IndexBase, LimitFormulaSeq, basis_vector

from conftest import rationals

ONE, ZERO = IndexBase.ONE, IndexBase.ZERO


def test_unbounded_eigenvector_worked_example():
    s = OperatorSpec.shift(False, ONE, Scalar(2))
    y = sp.eigenvector(s, Scalar(3))
    # y_k = 3^{k-1} / 2^{k(k-1)/2}
    assert [y[k] for k in (1, 2, 3, 4)] == [Scalar(1), Scalar("3/2"), Scalar("9/8"), Scalar("27/64")]
    assert y.check_decay(300)


def test_base_zero_normalisation():
    s = OperatorSpec.shift(False, ZERO, Scalar(2))
    y = sp.eigenvector(s, Scalar(3))
    assert [y[k] for k in (0, 1, 2)] == [Scalar(1), Scalar(3), Scalar("9/2")]
    assert sp.eigen_residual(s, Scalar(3), y, 100) == 0


def test_zero_eigenvalue_is_basis_vector():
    for base in (ONE, ZERO):
        s = OperatorSpec.shift(False, base, Scalar(2))
        y = sp.eigenvector(s, Scalar(0))
        assert [y[k] for k in range(int(base), int(base) + 4)] == [Scalar(1)] + [Scalar(0)] * 3


def test_bounded_classification():
    s = OperatorSpec.shift(True, ONE, Scalar(2))
    cls = [sp.classify_spectrum(s, Scalar(v)).cls for v in (0, 1, 2, 3)]
    assert cls == [sp.SpectrumClass.POINT, sp.SpectrumClass.POINT,
                   sp.SpectrumClass.CONTINUOUS, sp.SpectrumClass.RESOLVENT]
    # |1+i|^2 = 2 < 4
    assert sp.classify_spectrum(s, Scalar(1, 1)).eigenvalue
    with pytest.raises(sp.NotAnEigenvalue):
        sp.eigenvector(s, Scalar(-2))


def test_real_field_has_no_class():
    s = OperatorSpec.shift(False, ONE, Scalar(2))
    v = sp.classify_spectrum(s, Scalar(5), sp.Field.REAL)
    assert v.cls is None and v.eigenvalue
    with pytest.raises(ValueError):
        sp.classify_spectrum(s, Scalar(0, 1), sp.Field.REAL)


def test_hat_eigenvectors():
    for bounded in (True, False):
        s = OperatorSpec.hat(bounded, Scalar("3/2"))
        lam = Scalar("1/2")
        y = sp.eigenvector(s, lam)
        assert isinstance(y, LimitFormulaSeq)
        assert sp.eigen_residual(s, lam, y, 150) == 0


def test_recurrence_matches_closed_form():
    s = OperatorSpec.shift(False, ONE, Scalar("5/2"))
    lam = Scalar("7/3")
    y = sp.eigenvector(s, lam)
    trunc = sp.solve_eigen_recurrence(s, lam, 1, 40)
    assert all(trunc[k] == y[k] for k in range(1, 41))


def test_bruteforce_norm_definition():
    s = OperatorSpec.shift(False, ONE, Scalar(2))
    # ‖B e_m‖² = 2^{-2m}, maximised at m = 1
    assert sp.opnorm_bruteforce(s, "B", 1, 20) == Fraction(1, 4)
    with pytest.raises(ValueError):
        sp.opnorm_bruteforce(s, "C", 1, 5)
    with pytest.raises(SpecError):
        sp.opnorm_bruteforce(OperatorSpec.hat(True, Scalar(2)), "B", 1, 5)


def test_quasinilpotence_table():
    s = OperatorSpec.shift(False, ONE, Scalar(2))
    rows = sp.quasinilpotence_table(s, 6)
    assert [r.exponent for r in rows] == [-Fraction(n + 1, 2) for n in range(1, 7)]
    assert rows[-1].logmag < rows[0].logmag


@settings(max_examples=150, deadline=None)
@given(st.booleans(), st.sampled_from([ONE, ZERO]), rationals, rationals,
       st.sampled_from(["2", "3/2", "1+1 i", "-5/2"]))
def test_eigen_residual_zero(bounded, base, a, b, w):
    s = OperatorSpec.shift(bounded, base, Scalar.parse(w))
    lam = Scalar(a, b)
    v = sp.classify_spectrum(s, lam)
    if v.eigenvalue:
        assert sp.eigen_residual(s, lam, v.kernel_basis, 60) == 0
    else:
        assert bounded and lam.abs2() >= s.w.abs2()

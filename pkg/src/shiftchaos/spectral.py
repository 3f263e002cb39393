"""Eigenvectors, spectrum classification and brute-force norm oracles."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from gmpy2 import mpq

from . import operators as ops
from .conjugacy import J_inv_formula, hat_power_entry, hat_power_limit
from .operators import NormFormulaResult, OperatorSpec, SpecError, Variant
from .scalar import Scalar, as_scalar
from .sequences import (DEFAULT_K, ConvSeq, DecayCertificate, FinSeq, FormulaSeq,
                        LimitFormulaSeq, basis_vector, sup_norm)


class NotAnEigenvalue(ValueError):
    """λ lies outside the point spectrum of the operator."""


class SpectrumClass(enum.Enum):
    POINT = "POINT"
    CONTINUOUS = "CONTINUOUS"
    RESIDUAL = "RESIDUAL"
    RESOLVENT = "RESOLVENT"


class Field(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


@dataclass
class SpectrumVerdict:
    lam: Scalar
    cls: Optional[SpectrumClass]
    eigenvalue: bool
    field: Field = Field.COMPLEX
    kernel_basis: Union[FormulaSeq, LimitFormulaSeq, None] = None
    multiplicity: Optional[int] = None


def _triangular(k: int, base: int) -> int:
    # sum_{j=base}^{k-1} j
    return (k * (k - 1) - base * (base - 1)) // 2


def eigenvector_unbounded(spec: OperatorSpec, lam) -> FormulaSeq:
    """Solution of w^k y_{k+1} = λ y_k normalised by y_base = 1.

    y_k = λ^{k-base} / w^{k(k-1)/2}, the fractional power of w folded into an
    integer exponent.  For λ = 0 this is e_base (0^0 = 1).
    """
    if spec.variant is not Variant.UNBOUNDED_SHIFT:
        raise SpecError("needs the unbounded shift")
    lam = as_scalar(lam)
    w = spec.w
    b = int(spec.base)

    def evaluate(k: int) -> Scalar:
        return lam ** (k - b) * w ** (-_triangular(k, b))

    w2 = w.abs2()
    lam2 = lam.abs2()
    k0 = b
    # |y_{k+1}|²/|y_k|² = |λ|²/|w|^{2k}; start the certificate once it is <= 1/4
    while 4 * lam2 > w2 ** k0:
        k0 += 1
    cert = DecayCertificate(k0, lam2 / w2 ** k0, lag=1, shrink=1 / w2)
    return FormulaSeq(spec.base, evaluate, cert, label=f"eigvec(lambda={lam})")


def eigenvector_bounded(spec: OperatorSpec, lam) -> FormulaSeq:
    """x_k = (λ/w)^{k-base}, an eigenvector iff |λ| < |w|."""
    if spec.variant is not Variant.BOUNDED_SHIFT:
        raise SpecError("needs the bounded shift")
    lam = as_scalar(lam)
    w = spec.w
    if lam.abs2() >= w.abs2():
        raise NotAnEigenvalue(f"|λ| >= |w| for λ={lam}, w={w}")
    q = lam / w
    b = int(spec.base)
    return FormulaSeq(spec.base, lambda k: q ** (k - b), DecayCertificate(b, q.abs2()),
                      label=f"eigvec(lambda={lam})")


def eigenvector(spec: OperatorSpec, lam) -> Union[FormulaSeq, LimitFormulaSeq]:
    """Kernel basis vector of A - λI; hat operators get J^{-1} of the Z+ vector."""
    if spec.variant.is_hat:
        return J_inv_formula(eigenvector(spec.shift_counterpart, lam))
    if spec.variant.bounded:
        return eigenvector_bounded(spec, lam)
    return eigenvector_unbounded(spec, lam)


def eigen_residual(spec: OperatorSpec, lam, y, K: int = DEFAULT_K) -> mpq:
    """max over k <= K of |(Ay)_k - λ y_k|² (and the limit slot for hat operators)."""
    lam = as_scalar(lam)
    if spec.variant.is_hat:
        if not isinstance(y, (ConvSeq, LimitFormulaSeq)):
            raise TypeError("hat operators act on elements of c")
        worst = (hat_power_limit(spec, 1, y) - lam * y.limit).abs2()
        for k in range(1, K + 1):
            worst = max(worst, (hat_power_entry(spec, 1, y, k) - lam * y[k]).abs2())
        return worst
    if y.base != spec.base:
        raise ops.BaseMismatchError("sequence base does not match operator base")
    worst = mpq(0)
    for k in range(int(spec.base), K + 1):
        worst = max(worst, (ops.power_entry(spec, 1, y, k) - lam * y[k]).abs2())
    return worst


def solve_eigen_recurrence(spec: OperatorSpec, lam, first, K: int) -> FinSeq:
    """Forward solution of (Ay)_k = λ y_k from y_base = first, truncated at K."""
    lam = as_scalar(lam)
    w = spec.w
    b = int(spec.base)
    vals = {b: as_scalar(first)}
    for k in range(b, K):
        weight = w if spec.variant.bounded else w ** k
        vals[k + 1] = lam * vals[k] / weight
    return FinSeq(spec.base, vals)


def classify_spectrum(spec: OperatorSpec, lam, field: Field = Field.COMPLEX) -> SpectrumVerdict:
    lam = as_scalar(lam)
    if spec.variant.bounded:
        w2, l2 = spec.w.abs2(), lam.abs2()
        is_eig = l2 < w2
        if l2 < w2:
            cls = SpectrumClass.POINT
        elif l2 == w2:
            cls = SpectrumClass.CONTINUOUS
        else:
            cls = SpectrumClass.RESOLVENT
    else:
        is_eig = True
        cls = SpectrumClass.POINT
    if field is Field.REAL:
        if not (lam.is_real and spec.w.is_real):
            raise ValueError("real field needs real λ and w")
        cls = None
    verdict = SpectrumVerdict(lam, cls, is_eig, field)
    if is_eig:
        verdict.kernel_basis = eigenvector(spec, lam)
        verdict.multiplicity = 1
    return verdict


# -- norm oracles ---------------------------------------------------------------

def opnorm_bruteforce(spec: OperatorSpec, which: str, n: int, M: int) -> mpq:
    """max over base <= m <= M of ‖Op^n e_m‖², by n single-step applications."""
    if spec.variant.is_hat:
        raise SpecError("brute-force norms are for the c0 shifts")
    if which == "A":
        step = ops.apply
    elif which == "B":
        step = ops.right_inverse
    else:
        raise ValueError("operator path must be 'A' or 'B'")
    best = mpq(0)
    for m in range(int(spec.base), M + 1):
        best = max(best, sup_norm(ops.iterate(step, spec, n, basis_vector(spec.base, m))).squared)
    return best


@dataclass(frozen=True)
class QuasinilpotenceRow:
    n: int
    exponent: mpq  # log_{|w|} of ‖B^n‖^{1/n}
    logmag: float  # ln ‖B^n‖^{1/n}


def quasinilpotence_table(spec: OperatorSpec, n_max: int) -> list[QuasinilpotenceRow]:
    if spec.variant is not Variant.UNBOUNDED_SHIFT:
        raise SpecError("quasinilpotence table is for the unbounded shift")
    rows = []
    for n in range(1, n_max + 1):
        r: NormFormulaResult = ops.opnorm_Bn(spec, n)
        rows.append(QuasinilpotenceRow(n, mpq(r.exponent, n), r.logmag / n))
    return rows


__all__ = ["NotAnEigenvalue", "SpectrumClass", "Field", "SpectrumVerdict", "eigenvector_unbounded",
           "eigenvector_bounded", "eigenvector", "eigen_residual", "solve_eigen_recurrence",
           "classify_spectrum", "opnorm_bruteforce", "QuasinilpotenceRow", "quasinilpotence_table"]

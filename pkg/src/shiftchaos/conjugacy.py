"""The coordinate isomorphism J: c(N) -> c0(Z+) and the conjugated operators.

``J x = (l(x), x_1 - l(x), x_2 - l(x), ...)`` and ``J^{-1} y = (y_k + y_0)_{k>=1}``.
In the limit-plus-deviation model J just relabels ``(limit, d)`` as a
sequence over Z+, so both maps are exact and total.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import operators as ops
from .operators import OperatorSpec, SpecError, Variant
from .scalar import Scalar
from .sequences import (ConvSeq, DecayCertificate, FinSeq, FormulaSeq, IndexBase,
                        LimitFormulaSeq, check_base, schauder_coords_c, sup_norm,
                        sup_norm_conv)


def J(x: ConvSeq) -> FinSeq:
    return schauder_coords_c(x)


def J_inv(y: FinSeq) -> ConvSeq:
    check_base(IndexBase.ZERO, y)
    dev = {k: v for k, v in y.entries.items() if k >= 1}
    return ConvSeq(y[0], FinSeq(IndexBase.ONE, dev))


def J_inv_formula(y: FormulaSeq) -> LimitFormulaSeq:
    """J^{-1} for an infinite-support sequence over Z+."""
    check_base(IndexBase.ZERO, y)
    dev = FormulaSeq(IndexBase.ONE, y.__getitem__, _shift_cert(y), label=f"J^-1({y.label})")
    return LimitFormulaSeq(y[0], dev)


def _shift_cert(y: FormulaSeq):
    cert = y.decay
    if cert is None or cert.k0 >= 1:
        return cert
    # the deviation starts at index 1; re-anchor the certificate there
    return DecayCertificate(1, cert.bound_at(1), cert.lag, cert.shrink)


def _require_hat(spec: OperatorSpec, bounded: bool) -> None:
    want = Variant.BOUNDED_HAT if bounded else Variant.UNBOUNDED_HAT
    if spec.variant is not want:
        raise SpecError(f"operation needs the {want.value} operator")


def bounded_hat_apply(spec: OperatorSpec, x: ConvSeq) -> ConvSeq:
    """w (x_{k+1} + x_1 - 2 l(x)); in the model: limit w d_1, deviation w d_{k+1}."""
    _require_hat(spec, bounded=True)
    check_base(IndexBase.ONE, x.deviation)
    w = spec.w
    d = x.deviation
    # entry k: w (l + d_{k+1} + l + d_1 - 2l) = w d_1 + w d_{k+1}
    return ConvSeq(w * d[1], FinSeq(IndexBase.ONE, {j - 1: w * v for j, v in d.entries.items()
                                                    if j >= 2}))


def bounded_hat_power(spec: OperatorSpec, n: int, x: ConvSeq) -> ConvSeq:
    """w^n (x_{k+n} + x_n - 2 l(x)); limit w^n (x_n - l(x))."""
    _require_hat(spec, bounded=True)
    check_base(IndexBase.ONE, x.deviation)
    if n < 1:
        raise ValueError("n must be >= 1")
    wn = spec.w ** n
    d = x.deviation
    return ConvSeq(wn * (x[n] - x.limit),
                   FinSeq(IndexBase.ONE, {j - n: wn * v for j, v in d.entries.items() if j > n}))


def unbounded_hat_apply(spec: OperatorSpec, x: ConvSeq) -> ConvSeq:
    """w^k (x_{k+1} - l(x)) + x_1 - l(x); limit d_1, deviation w^k d_{k+1}."""
    _require_hat(spec, bounded=False)
    check_base(IndexBase.ONE, x.deviation)
    w = spec.w
    d = x.deviation
    return ConvSeq(d[1], FinSeq(IndexBase.ONE, {j - 1: w ** (j - 1) * v
                                                for j, v in d.entries.items() if j >= 2}))


def _prod_exponent(lo: int, n: int) -> int:
    # sum_{j=lo}^{lo+n-1} j
    return n * lo + n * (n - 1) // 2


def unbounded_hat_power(spec: OperatorSpec, n: int, x: ConvSeq) -> ConvSeq:
    """[prod_{j=k}^{k+n-1} w^j](x_{k+n} - l) + [prod_{j=0}^{n-1} w^j](x_n - l)."""
    _require_hat(spec, bounded=False)
    check_base(IndexBase.ONE, x.deviation)
    if n < 1:
        raise ValueError("n must be >= 1")
    w = spec.w
    d = x.deviation
    limit = w ** _prod_exponent(0, n) * (x[n] - x.limit)
    return ConvSeq(limit, FinSeq(IndexBase.ONE, {j - n: w ** _prod_exponent(j - n, n) * v
                                                 for j, v in d.entries.items() if j > n}))


def hat_apply(spec: OperatorSpec, x: ConvSeq) -> ConvSeq:
    if spec.variant is Variant.BOUNDED_HAT:
        return bounded_hat_apply(spec, x)
    return unbounded_hat_apply(spec, x)


def hat_power(spec: OperatorSpec, n: int, x: ConvSeq) -> ConvSeq:
    if spec.variant is Variant.BOUNDED_HAT:
        return bounded_hat_power(spec, n, x)
    return unbounded_hat_power(spec, n, x)


def hat_power_via_J(spec: OperatorSpec, n: int, x: ConvSeq) -> ConvSeq:
    """J^{-1} A^n J x, with A the base-zero shift the hat operator is built from."""
    if not spec.variant.is_hat:
        raise SpecError("conjugation is defined for hat operators")
    return J_inv(ops.power(spec.shift_counterpart, n, J(x)))


def hat_power_limit_formula(spec: OperatorSpec, n: int, x: ConvSeq) -> Scalar:
    """Limit of the n-th hat power as stated in closed form."""
    coeff = spec.w ** (n if spec.variant is Variant.BOUNDED_HAT else _prod_exponent(0, n))
    return coeff * (x[n] - x.limit)


def hat_power_entry(spec: OperatorSpec, n: int, x: Union[ConvSeq, LimitFormulaSeq], k: int) -> Scalar:
    """(Â^n x)_k for an element with a (possibly formula) deviation."""
    w = spec.w
    dk = x.deviation[k + n]
    dn = x.deviation[n]
    if spec.variant is Variant.BOUNDED_HAT:
        return w ** n * (dk + dn)
    if spec.variant is Variant.UNBOUNDED_HAT:
        return w ** _prod_exponent(k, n) * dk + w ** _prod_exponent(0, n) * dn
    raise SpecError("hat operator required")


def hat_power_limit(spec: OperatorSpec, n: int, x: Union[ConvSeq, LimitFormulaSeq]) -> Scalar:
    """l(Â^n x); the weighted deviation term vanishes in the limit on D(Â^n)."""
    coeff = spec.w ** (n if spec.variant is Variant.BOUNDED_HAT else _prod_exponent(0, n))
    return coeff * x.deviation[n]


def hat_domain(spec: OperatorSpec, n: int, x: LimitFormulaSeq, K: int = 500) -> ops.DomainCertificate:
    """Membership in D(Â^n) for a formula-backed element of c."""
    if spec.variant is Variant.BOUNDED_HAT:
        return ops.DomainCertificate(ops.Verdict.IN, "bounded operator: domain is all of c")
    _require_hat(spec, bounded=False)
    base_one = OperatorSpec.shift(False, IndexBase.ONE, spec.w)
    return ops.domain_membership_unbounded(base_one, n, x.deviation, K)


@dataclass(frozen=True)
class ConjugationWitness:
    input: ConvSeq
    n: int
    closed_form: ConvSeq
    via_J: ConvSeq

    @property
    def equal(self) -> bool:
        return self.closed_form == self.via_J


def conjugation_oracle(spec: OperatorSpec, n: int, x: ConvSeq) -> ConjugationWitness:
    return ConjugationWitness(x, n, hat_power(spec, n, x), hat_power_via_J(spec, n, x))


def J_norm_ratio_ok(x: ConvSeq) -> bool:
    """‖Jx‖^2 <= 4 ‖x‖^2, exactly."""
    return sup_norm(J(x)).squared <= 4 * sup_norm_conv(x).squared


__all__ = ["J", "J_inv", "J_inv_formula", "bounded_hat_apply", "bounded_hat_power",
           "unbounded_hat_apply", "unbounded_hat_power", "hat_apply", "hat_power",
           "hat_power_via_J", "hat_power_entry", "hat_power_limit", "hat_power_limit_formula",
           "hat_domain", "ConjugationWitness", "conjugation_oracle", "J_norm_ratio_ok"]

"""Weighted backward shifts on c0 and their right inverses.

Bounded (Rolewicz) shift ``(Ax)_k = w x_{k+1}`` and unbounded shift
``(Ax)_k = w^k x_{k+1}``, over N (base one) or Z+ (base zero).  Weight
products are tracked as integer exponents of ``w``:

    A^n  : (A^n x)_k = w^{nk + n(n-1)/2} x_{k+n}
    B^n  : (B^n x)_k = w^{-nk + n(n+1)/2} x_{k-n}

and ``w^n`` / ``w^{-n}`` for the bounded pair.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from gmpy2 import mpq

from .scalar import Scalar, as_scalar, log_rational
from .sequences import (AnySeq, BaseMismatchError, DecayCertificate, FinSeq,
                        FormulaSeq, IndexBase, basis_vector, sup_norm)


class WeightError(ValueError):
    """The weight violates |w| > 1."""


class SpecError(ValueError):
    """Inconsistent operator descriptor or an operation the variant lacks."""


class Variant(enum.Enum):
    BOUNDED_SHIFT = "bounded"
    UNBOUNDED_SHIFT = "unbounded"
    BOUNDED_HAT = "bounded-hat"
    UNBOUNDED_HAT = "unbounded-hat"

    @property
    def bounded(self) -> bool:
        return self in (Variant.BOUNDED_SHIFT, Variant.BOUNDED_HAT)

    @property
    def is_hat(self) -> bool:
        return self in (Variant.BOUNDED_HAT, Variant.UNBOUNDED_HAT)


class Space(enum.Enum):
    C0 = "c0"
    C = "c"


@dataclass(frozen=True)
class OperatorSpec:
    variant: Variant
    space: Space
    base: IndexBase
    w: Scalar

    def __post_init__(self):
        object.__setattr__(self, "w", as_scalar(self.w))
        object.__setattr__(self, "base", IndexBase(self.base))
        if self.w.abs2() <= 1:
            raise WeightError(f"weight must satisfy |w|>1, got w={self.w}")
        if self.variant.is_hat:
            if self.space is not Space.C or self.base is not IndexBase.ONE:
                raise SpecError("conjugated operators act on c over base one")
        elif self.space is not Space.C0:
            raise SpecError("shift variants act on c0")

    @classmethod
    def shift(cls, bounded: bool, base: IndexBase, w) -> "OperatorSpec":
        variant = Variant.BOUNDED_SHIFT if bounded else Variant.UNBOUNDED_SHIFT
        return cls(variant, Space.C0, base, w)

    @classmethod
    def hat(cls, bounded: bool, w) -> "OperatorSpec":
        variant = Variant.BOUNDED_HAT if bounded else Variant.UNBOUNDED_HAT
        return cls(variant, Space.C, IndexBase.ONE, w)

    @property
    def shift_counterpart(self) -> "OperatorSpec":
        """The c0(Z+) shift a hat operator is conjugate to."""
        if not self.variant.is_hat:
            return self
        return OperatorSpec.shift(self.variant.bounded, IndexBase.ZERO, self.w)

    def to_json(self) -> dict:
        return {"variant": self.variant.value, "space": self.space.value,
                "base": self.base.label, "w": str(self.w)}


def _require_shift(spec: OperatorSpec, bounded: Optional[bool] = None) -> None:
    if spec.variant.is_hat:
        raise SpecError("operation defined for shift variants on c0 only")
    if bounded is not None and spec.variant.bounded != bounded:
        raise SpecError(f"operation needs a {'bounded' if bounded else 'unbounded'} shift")


def _check(spec: OperatorSpec, x) -> None:
    if x.base != spec.base:
        raise BaseMismatchError(
            f"sequence base {x.base.label} does not match operator base {spec.base.label}")


# -- weight exponents ------------------------------------------------------

def forward_exponent(spec: OperatorSpec, n: int, k: int) -> int:
    """Exponent of w in (A^n x)_k = w^E x_{k+n}."""
    if spec.variant.bounded:
        return n
    return n * k + n * (n - 1) // 2


def inverse_exponent(spec: OperatorSpec, n: int, k: int) -> int:
    """Exponent of w in (B^n x)_k = w^E x_{k-n}."""
    if spec.variant.bounded:
        return -n
    return -n * k + n * (n + 1) // 2


# -- single steps (the n-fold oracle path) ---------------------------------

def apply_bounded(spec: OperatorSpec, x: FinSeq) -> FinSeq:
    _require_shift(spec, bounded=True)
    _check(spec, x)
    w = spec.w
    return FinSeq(x.base, {j - 1: w * v for j, v in x.entries.items() if j - 1 >= x.base})


def apply_unbounded(spec: OperatorSpec, x: FinSeq) -> FinSeq:
    _require_shift(spec, bounded=False)
    _check(spec, x)
    w = spec.w
    return FinSeq(x.base, {j - 1: w ** (j - 1) * v for j, v in x.entries.items()
                           if j - 1 >= x.base})


def right_inverse_bounded(spec: OperatorSpec, x: FinSeq) -> FinSeq:
    _require_shift(spec, bounded=True)
    _check(spec, x)
    winv = spec.w.inverse()
    return FinSeq(x.base, {j + 1: winv * v for j, v in x.entries.items()})


def right_inverse_unbounded(spec: OperatorSpec, x: FinSeq) -> FinSeq:
    _require_shift(spec, bounded=False)
    _check(spec, x)
    w = spec.w
    # output index k = j + 1 carries w^{-(k-1)} = w^{-j}
    return FinSeq(x.base, {j + 1: w ** (-j) * v for j, v in x.entries.items()})


def apply(spec: OperatorSpec, x: FinSeq) -> FinSeq:
    if spec.variant.bounded:
        return apply_bounded(spec, x)
    return apply_unbounded(spec, x)


def right_inverse(spec: OperatorSpec, x: FinSeq) -> FinSeq:
    if spec.variant.bounded:
        return right_inverse_bounded(spec, x)
    return right_inverse_unbounded(spec, x)


def iterate(step, spec: OperatorSpec, n: int, x: FinSeq) -> FinSeq:
    """n-fold application of a single-step map."""
    for _ in range(n):
        x = step(spec, x)
    return x


# -- closed-form powers ------------------------------------------------------

def _check_power(n: int) -> None:
    if n < 0:
        raise ValueError("power must be nonnegative")


def power_bounded(spec: OperatorSpec, n: int, x: FinSeq) -> FinSeq:
    _require_shift(spec, bounded=True)
    _check(spec, x)
    _check_power(n)
    wn = spec.w ** n
    return FinSeq(x.base, {j - n: wn * v for j, v in x.entries.items() if j - n >= x.base})


def power_unbounded(spec: OperatorSpec, n: int, x: FinSeq) -> FinSeq:
    _require_shift(spec, bounded=False)
    _check(spec, x)
    _check_power(n)
    w = spec.w
    return FinSeq(x.base, {j - n: w ** forward_exponent(spec, n, j - n) * v
                           for j, v in x.entries.items() if j - n >= x.base})


def right_inverse_power_bounded(spec: OperatorSpec, n: int, x: FinSeq) -> FinSeq:
    _require_shift(spec, bounded=True)
    _check(spec, x)
    _check_power(n)
    wn = spec.w ** (-n)
    return FinSeq(x.base, {j + n: wn * v for j, v in x.entries.items()})


def right_inverse_power_unbounded(spec: OperatorSpec, n: int, x: FinSeq) -> FinSeq:
    _require_shift(spec, bounded=False)
    _check(spec, x)
    _check_power(n)
    w = spec.w
    return FinSeq(x.base, {j + n: w ** inverse_exponent(spec, n, j + n) * v
                           for j, v in x.entries.items()})


def power(spec: OperatorSpec, n: int, x: FinSeq) -> FinSeq:
    if spec.variant.bounded:
        return power_bounded(spec, n, x)
    return power_unbounded(spec, n, x)


def right_inverse_power(spec: OperatorSpec, n: int, x: FinSeq) -> FinSeq:
    if spec.variant.bounded:
        return right_inverse_power_bounded(spec, n, x)
    return right_inverse_power_unbounded(spec, n, x)


def power_entry(spec: OperatorSpec, n: int, x: AnySeq, k: int) -> Scalar:
    """(A^n x)_k for a finite or formula sequence."""
    _require_shift(spec)
    return spec.w ** forward_exponent(spec, n, k) * x[k + n]


# -- norms --------------------------------------------------------------------

@dataclass(frozen=True)
class NormFormulaResult:
    """Closed-form operator-norm value ``|w|^exponent``."""

    n: int
    exponent: int
    squared_exact: mpq
    logmag: float

    @classmethod
    def from_exponent(cls, spec: OperatorSpec, n: int, exponent: int) -> "NormFormulaResult":
        w2 = spec.w.abs2()
        return cls(n, exponent, w2 ** exponent, 0.5 * exponent * log_rational(w2))


def opnorm_Bn(spec: OperatorSpec, n: int) -> NormFormulaResult:
    """‖B^n‖ for the right inverse of the shift (attained at e_base)."""
    _require_shift(spec)
    if n < 1:
        raise ValueError("n must be >= 1")
    if spec.variant.bounded:
        exponent = -n
    else:
        # largest weight sits at the first output slot k = base + n
        exponent = inverse_exponent(spec, n, int(spec.base) + n)
    return NormFormulaResult.from_exponent(spec, n, exponent)


def opnorm_An_bounded(spec: OperatorSpec, n: int) -> NormFormulaResult:
    _require_shift(spec, bounded=True)
    return NormFormulaResult.from_exponent(spec, n, n)


def unboundedness_witness(spec: OperatorSpec, n: int, m: int) -> NormFormulaResult:
    """‖A^n e_{n+m}‖ for the unbounded shift over N.

    A^n e_{n+m} = w^{nm + n(n-1)/2} e_m, so the norm grows without bound in m.
    """
    _require_shift(spec, bounded=False)
    if spec.base is not IndexBase.ONE:
        raise SpecError("unboundedness witness is stated over base one")
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    return NormFormulaResult.from_exponent(spec, n, forward_exponent(spec, n, m))


def unboundedness_witness_direct(spec: OperatorSpec, n: int, m: int) -> mpq:
    """Squared norm of A^n e_{n+m} by explicit application."""
    return sup_norm(power_unbounded(spec, n, basis_vector(spec.base, n + m))).squared


# -- domain membership -------------------------------------------------------

class Verdict(enum.Enum):
    IN = "IN"
    OUT = "OUT"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class DomainCertificate:
    verdict: Verdict
    reason: str
    decay: Optional[DecayCertificate] = None
    checked_upto: Optional[int] = None


def inherited_decay(spec: OperatorSpec, n: int, cert: DecayCertificate) -> Optional[DecayCertificate]:
    """Decay certificate for k -> w^{E(k)} x_{k+n}, if the weighting keeps ratios < 1.

    The weighted lag-L ratio at k is |w|^{2 n L} times the ratio of x at k+n
    (bounded: |w|^0 change, since the weight is constant).
    """
    w2 = spec.w.abs2()
    growth = mpq(1) if spec.variant.bounded else w2 ** (n * cert.lag)
    k_start = max(int(spec.base), cert.k0 - n)
    bound = growth * cert.bound_at(k_start + n)
    if cert.shrink == 1:
        if bound < 1:
            return DecayCertificate(k_start, bound, cert.lag, 1)
        return None
    # super-geometric: advance until the bound drops below 1/4
    target = mpq(1, 4)
    while bound > target:
        bound *= cert.shrink
        k_start += 1
    return DecayCertificate(k_start, bound, cert.lag, cert.shrink)


def domain_membership_unbounded(spec: OperatorSpec, n: int, x: Union[FinSeq, FormulaSeq],
                                K: int = 500) -> DomainCertificate:
    """Is x in D(A^n), i.e. does (w^{E(k)} x_{k+n})_k vanish at infinity?"""
    _require_shift(spec, bounded=False)
    _check(spec, x)
    if isinstance(x, FinSeq):
        return DomainCertificate(Verdict.IN, "finitely supported: weighted image is finitely supported",
                                 DecayCertificate(x.max_support + 1, 0))
    if x.decay is not None:
        inherited = inherited_decay(spec, n, x.decay)
        if inherited is not None:
            return DomainCertificate(Verdict.IN, "weighted image inherits a decay certificate",
                                     inherited, None)
    # fall back to sampled ratios of the weighted image over [k0, K]
    k0 = x.decay.k0 if x.decay is not None else int(x.base)
    prev = None
    persistent = True
    for k in range(k0, K + 1):
        cur = power_entry(spec, n, x, k).abs2()
        if prev is not None and (prev == 0 or cur < prev):
            persistent = False
            break
        prev = cur
    if persistent and prev:
        return DomainCertificate(Verdict.OUT,
                                 "weighted image magnitudes are nonzero and non-decreasing on the horizon",
                                 None, K)
    return DomainCertificate(Verdict.UNDECIDED, "no certificate and no persistent growth", None, K)

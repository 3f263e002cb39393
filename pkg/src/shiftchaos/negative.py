"""Certificates that the shifts extended to c are not hypercyclic.

Bounded case: R(A - wI) sits inside c0, a closed hyperplane of c.
Unbounded case: every x in D(A) already vanishes at infinity, so D(A) and
hence C^inf(A) sit inside c0.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Union

from .operators import OperatorSpec, WeightError, inherited_decay
from .sampling import DEFAULT_SEED, random_convseq, random_scalar
from .scalar import Scalar, as_scalar
from .sequences import ConvSeq, FinSeq, IndexBase, LimitFormulaSeq


class ExtensionVariant(enum.Enum):
    BOUNDED_ON_C = "bounded-on-c"
    UNBOUNDED_ON_C = "unbounded-on-c"


class Obstruction(enum.Enum):
    RANGE_IN_C0 = "RANGE_IN_C0"
    DOMAIN_IN_C0 = "DOMAIN_IN_C0"


class DomainVerdict(enum.Enum):
    IN_DOMAIN = "IN_DOMAIN"
    NOT_IN_DOMAIN = "NOT_IN_DOMAIN"
    UNDECIDED = "UNDECIDED"


class NotInDomain(ValueError):
    """The unbounded shift on c is applied outside its maximal domain."""


def _weight(w) -> Scalar:
    w = as_scalar(w)
    if w.abs2() <= 1:
        raise WeightError(f"weight must satisfy |w|>1, got w={w}")
    return w


def apply_on_c(variant: ExtensionVariant, w, x: ConvSeq) -> ConvSeq:
    """The shift acting on c, in the limit-plus-deviation model."""
    w = _weight(w)
    d = x.deviation
    if variant is ExtensionVariant.BOUNDED_ON_C:
        return ConvSeq(w * x.limit, FinSeq(IndexBase.ONE, {j - 1: w * v for j, v in d.entries.items()
                                                           if j >= 2}))
    if not x.limit.is_zero():
        raise NotInDomain("w^k x_{k+1} diverges when l(x) != 0")
    return ConvSeq(Scalar(0), FinSeq(IndexBase.ONE, {j - 1: w ** (j - 1) * v
                                                     for j, v in d.entries.items() if j >= 2}))


def range_limit_check(w, x: ConvSeq) -> Scalar:
    """l((A - wI)x) for the bounded shift on c; always 0."""
    w = _weight(w)
    image = apply_on_c(ExtensionVariant.BOUNDED_ON_C, w, x) - x.scale(w)
    return image.limit


@dataclass
class DomainCheck:
    verdict: DomainVerdict
    limit: Scalar
    reason: str
    evidence: list = field(default_factory=list)


def _growth_evidence(w: Scalar, x, k_start: int, K: int) -> list:
    """(k, |w^k x_{k+1}|²) on [k_start, K]; strictly increasing when l(x) != 0."""
    rows = []
    for k in range(k_start, K + 1):
        rows.append((k, (w ** k * x[k + 1]).abs2()))
    return rows


def domain_forces_vanishing(w, x: Union[ConvSeq, LimitFormulaSeq], K: int = 60) -> DomainCheck:
    """Decide membership of x in D(A) for the unbounded shift on c.

    Inside the domain the weighted image y_k = w^k x_{k+1} converges, so
    x_{k+1} = w^{-k} y_k -> 0 and l(x) = 0.  Outside it (l(x) != 0) the
    weighted image grows like |w|^k |l(x)|.
    """
    w = _weight(w)
    limit = x.limit
    if isinstance(x, ConvSeq):
        if limit.is_zero():
            return DomainCheck(DomainVerdict.IN_DOMAIN, limit,
                               "finite deviation: weighted image finitely supported, limit 0")
        start = max(1, x.deviation.max_support)
        ev = _growth_evidence(w, x, start, K)
        return DomainCheck(DomainVerdict.NOT_IN_DOMAIN, limit,
                           "tail of w^k x_{k+1} equals w^k l(x): modulus grows without bound", ev)

    dev = x.deviation
    if not limit.is_zero():
        # d_k -> 0 under its certificate, so eventually |w^k x_{k+1}| ~ |w|^k |l(x)|
        ev = _growth_evidence(w, x, 1, K)
        tail = ev[len(ev) // 2:]
        if all(b[1] > a[1] for a, b in zip(tail, tail[1:])):
            return DomainCheck(DomainVerdict.NOT_IN_DOMAIN, limit,
                               "weighted image strictly increasing on the horizon", ev)
        return DomainCheck(DomainVerdict.UNDECIDED, limit, "no growth pattern on the horizon", ev)

    base_one = OperatorSpec.shift(False, IndexBase.ONE, w)
    if dev.decay is not None:
        cert = inherited_decay(base_one, 1, dev.decay)
        if cert is not None:
            return DomainCheck(DomainVerdict.IN_DOMAIN, limit,
                               "weighted image carries a decay certificate", [cert])
    k0 = dev.decay.k0 if dev.decay is not None else 1
    values = [w ** k * dev[k + 1] for k in range(k0, K + 1)]
    if all(v == values[0] for v in values):
        return DomainCheck(DomainVerdict.IN_DOMAIN, limit,
                           "weighted image constant on the horizon (convergent)",
                           [(k0, str(values[0]))])
    return DomainCheck(DomainVerdict.UNDECIDED, limit, "weighted image neither decays nor settles")


@dataclass
class ObstructionReport:
    variant: ExtensionVariant
    w: Scalar
    obstruction: Obstruction
    evidence: list = field(default_factory=list)  # (input, checked value)
    rejected: list = field(default_factory=list)  # (input, DomainCheck)
    verdict: str = "NOT_HYPERCYCLIC"

    @property
    def passed(self) -> bool:
        return all(v.is_zero() for _, v in self.evidence)


def obstruction_report(variant: ExtensionVariant, w, sample_count: int = 100,
                       seed: int = DEFAULT_SEED, plant: bool = False, K: int = 60) -> ObstructionReport:
    w = _weight(w)
    rng = random.Random(seed)
    complex_ = not w.is_real
    if variant is ExtensionVariant.BOUNDED_ON_C:
        report = ObstructionReport(variant, w, Obstruction.RANGE_IN_C0)
        for _ in range(sample_count):
            x = random_convseq(rng, complex_=complex_)
            report.evidence.append((x, range_limit_check(w, x)))
        return report

    report = ObstructionReport(variant, w, Obstruction.DOMAIN_IN_C0)
    samples = [ConvSeq(Scalar(0), random_convseq(rng, complex_=complex_).deviation)
               for _ in range(sample_count)]
    if plant:
        lim = random_scalar(rng, complex_)
        while lim.is_zero():
            lim = random_scalar(rng, complex_)
        samples.append(ConvSeq(lim, random_convseq(rng, complex_=complex_).deviation))
    for x in samples:
        check = domain_forces_vanishing(w, x, K)
        if check.verdict is DomainVerdict.IN_DOMAIN:
            report.evidence.append((x, check.limit))
        else:
            report.rejected.append((x, check))
    return report


__all__ = ["ExtensionVariant", "Obstruction", "DomainVerdict", "NotInDomain", "apply_on_c",
           "range_limit_check", "DomainCheck", "domain_forces_vanishing", "ObstructionReport",
           "obstruction_report"]

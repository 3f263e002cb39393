"""Constructive certificates of chaoticity for the weighted backward shifts.

Everything here works on c00 (plus formula sequences for periodic points),
where ``A^m B^m z = z`` holds exactly, so residuals are exact rationals.
Functions take ``power=p`` to run the same construction against ``A^p``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from gmpy2 import mpq

from . import operators as ops
from .conjugacy import hat_power_entry, hat_power_limit
from .operators import OperatorSpec, SpecError
from .sampling import DEFAULT_SEED, random_finseq
from .scalar import Scalar
from .sequences import (DEFAULT_K, ConvSeq, DecayCertificate, FinSeq, FormulaSeq,
                        LimitFormulaSeq, sup_norm)

PowerFn = Callable[[int, FinSeq], FinSeq]


def _require_shift(spec: OperatorSpec) -> None:
    if spec.variant.is_hat:
        raise SpecError("chaos constructions run on the c0 shifts; transfer to c through J")


# -- Sufficient Condition for Linear Chaos ------------------------------------

@dataclass(frozen=True)
class DecayFit:
    alpha2: mpq
    c2: mpq


@dataclass
class SccSample:
    x: FinSeq
    right_inverse_ok: bool
    table: list  # (n, ‖A^n x‖², ‖B^n x‖²)
    fit: Optional[DecayFit]


@dataclass
class SccReport:
    spec: OperatorSpec
    power: int
    samples: list = field(default_factory=list)
    assumed: tuple = ("each power A^n is a closed operator",)

    @property
    def right_inverse_pass(self) -> bool:
        return all(s.right_inverse_ok for s in self.samples)

    @property
    def passed(self) -> bool:
        return self.right_inverse_pass and all(s.fit is not None for s in self.samples)


def fit_geometric_decay(table: Sequence[tuple], n0: int) -> Optional[DecayFit]:
    """Extract (α², c²) with max(‖A^n x‖², ‖B^n x‖²) <= c² α^{2n} on the table.

    α² is the largest one-step ratio of the row maxima for n >= n0; c² is
    the smallest constant covering every row.  Returns None if α² >= 1.
    """
    rows = {n: max(a, b) for n, a, b in table}
    ns = sorted(rows)
    ratios = []
    for n in ns:
        if n >= n0 and n + 1 in rows:
            cur, nxt = rows[n], rows[n + 1]
            if cur == 0:
                if nxt != 0:
                    return None
                continue
            ratios.append(nxt / cur)
    alpha2 = max(ratios, default=mpq(0))
    if alpha2 >= 1:
        return None
    if alpha2 == 0:
        alpha2 = mpq(1, 4)  # every α works once the table is identically zero
    c2 = max((rows[n] / alpha2 ** n for n in ns), default=mpq(0))
    c2 = max(c2, mpq(1))
    return DecayFit(alpha2, c2)


def check_fit(table, fit: DecayFit) -> bool:
    return all(max(a, b) <= fit.c2 * fit.alpha2 ** n for n, a, b in table)


def scc_with(spec: OperatorSpec, samples: Sequence[FinSeq], power_a: PowerFn,
             power_b: PowerFn, n_max: int, power: int = 1) -> SccReport:
    """Run the SCC checks for an arbitrary pair of power maps."""
    report = SccReport(spec, power)
    for x in samples:
        ok = power_a(1, power_b(1, x)) == x
        table = [(n, sup_norm(power_a(n, x)).squared, sup_norm(power_b(n, x)).squared)
                 for n in range(1, n_max + 1)]
        # skip the transient while A^n x is still nonzero
        n0 = max(1, -(-x.support_length // power))
        fit = fit_geometric_decay(table, n0)
        if fit is not None and not check_fit(table, fit):
            fit = None
        report.samples.append(SccSample(x, ok, table, fit))
    return report


def verify_scc(spec: OperatorSpec, sample_count: int = 100, n_max: int = 20,
               seed: int = DEFAULT_SEED, power: int = 1, max_len: int = 10) -> SccReport:
    _require_shift(spec)
    rng = random.Random(seed)
    complex_ = not spec.w.is_real
    samples = [random_finseq(rng, spec.base, max_len, complex_) for _ in range(sample_count)]
    return scc_with(spec, samples,
                    lambda n, x: ops.power(spec, power * n, x),
                    lambda n, x: ops.right_inverse_power(spec, power * n, x),
                    n_max, power)


def identity_control(spec: OperatorSpec, samples: Sequence[FinSeq], n_max: int = 20) -> SccReport:
    """Negative control: the identity is its own right inverse but never decays."""
    return scc_with(spec, samples, lambda n, x: x, lambda n, x: x, n_max)


# -- periodic points --------------------------------------------------------------

@dataclass
class PeriodicPoint:
    spec: OperatorSpec
    period: int
    prefix: FinSeq
    seq: FormulaSeq
    verified_up_to: int
    power: int = 1
    tail_norm2: Optional[mpq] = None

    @property
    def is_witness(self) -> bool:
        return not self.prefix.is_zero()


def _periodic_eval(spec: OperatorSpec, prefix: FinSeq, N: int):
    w = spec.w
    b = int(spec.base)
    bounded = spec.variant.bounded

    def evaluate(k: int) -> Scalar:
        q, r = divmod(k - b, N)
        head = prefix[b + r]
        if q == 0 or head.is_zero():
            return head
        if bounded:
            e = N * q
        else:
            # sum of consecutive indices b+r, ..., b+r+qN-1
            e = q * N * (b + r) + q * N * (q * N - 1) // 2
        return head * w ** (-e)

    return evaluate


def _periodic_certificate(spec: OperatorSpec, N: int) -> DecayCertificate:
    w2 = spec.w.abs2()
    b = int(spec.base)
    if spec.variant.bounded:
        return DecayCertificate(b, w2 ** (-N), lag=N)
    k0 = b
    if N * k0 + N * (N - 1) // 2 < 1:
        k0 += 1
    e0 = N * k0 + N * (N - 1) // 2
    return DecayCertificate(k0, w2 ** (-e0), lag=N, shrink=w2 ** (-N))


def periodic_formula(spec: OperatorSpec, prefix: FinSeq, N: int) -> FormulaSeq:
    """Sequence with the given first block satisfying A^N x = x."""
    return FormulaSeq(spec.base, _periodic_eval(spec, prefix, N),
                      _periodic_certificate(spec, N), label=f"periodic(N={N})")


def build_periodic_point(spec: OperatorSpec, prefix: FinSeq, N: int, K: int = DEFAULT_K,
                         power: int = 1) -> PeriodicPoint:
    """Periodic point of A^power with period N extending ``prefix``.

    The tail is fixed by the recurrence x_{k+L} = x_k / w^{E(k)} with
    L = power*N, which is exactly (A^L x)_k = x_k solved forward.
    """
    _require_shift(spec)
    if prefix.base != spec.base:
        raise ops.BaseMismatchError("prefix base does not match operator base")
    if N < 1:
        raise ValueError("period must be positive")
    L = power * N
    if prefix.support_length > L:
        raise ValueError(f"prefix support {prefix.support_length} exceeds period block {L}")
    seq = periodic_formula(spec, prefix, L)
    ok, res = per_N_membership(spec, seq, N, K, power=power)
    if not ok:
        raise RuntimeError(f"periodic point failed its own check (residual² {res})")
    return PeriodicPoint(spec, N, prefix, seq, K, power)


def tail_norm2(spec: OperatorSpec, prefix: FinSeq, L: int) -> mpq:
    """sup_{k >= base+L} |x_k|² for the periodic extension with block length L.

    The first tail block dominates: later blocks pick up further factors
    of |w|^{-2(...)} < 1.
    """
    w2 = spec.w.abs2()
    b = int(spec.base)
    best = mpq(0)
    for k, v in prefix.entries.items():
        r = k - b
        e = L if spec.variant.bounded else L * (b + r) + L * (L - 1) // 2
        best = max(best, v.abs2() * w2 ** (-e))
    return best


def periodic_density_demo(spec: OperatorSpec, target: FinSeq, tolerance2, K: int = DEFAULT_K,
                          power: int = 1) -> PeriodicPoint:
    """Periodic point within sqrt(tolerance2) of ``target`` in sup-norm."""
    _require_shift(spec)
    tolerance2 = mpq(tolerance2)
    if tolerance2 <= 0:
        raise ValueError("tolerance must be positive")
    N = max(1, -(-target.support_length // power))
    while tail_norm2(spec, target, power * N) > tolerance2:
        N += 1
    pp = build_periodic_point(spec, target, N, K, power)
    pp.tail_norm2 = tail_norm2(spec, target, power * N)
    return pp


def per_N_membership(spec: OperatorSpec, x, N: int, K: int = DEFAULT_K,
                     power: int = 1) -> tuple[bool, mpq]:
    """Check (A^{pN} x)_k = x_k for base <= k <= K; returns (ok, max residual²)."""
    L = power * N
    worst = mpq(0)
    if spec.variant.is_hat:
        if not isinstance(x, (ConvSeq, LimitFormulaSeq)):
            raise TypeError("hat operators act on elements of c")
        worst = (hat_power_limit(spec, L, x) - x.limit).abs2()
        for k in range(1, K + 1):
            worst = max(worst, (hat_power_entry(spec, L, x, k) - x[k]).abs2())
        return worst == 0, worst
    if x.base != spec.base:
        raise ops.BaseMismatchError("sequence base does not match operator base")
    for k in range(int(spec.base), K + 1):
        worst = max(worst, (ops.power_entry(spec, L, x, k) - x[k]).abs2())
    return worst == 0, worst


# -- orbit visits and hypercyclic schedules ----------------------------------------

@dataclass(frozen=True)
class VisitCertificate:
    spec: OperatorSpec
    seed: FinSeq
    target: FinSeq
    m: int
    vector: FinSeq
    residual2: mpq
    power: int = 1


def orbit_visit(spec: OperatorSpec, seed: FinSeq, target: FinSeq, m: int,
                power: int = 1) -> VisitCertificate:
    """x = seed + B^m z, so A^m x = A^m seed + z."""
    _require_shift(spec)
    if m < 1:
        raise ValueError("m must be >= 1")
    L = power * m
    x = seed + ops.right_inverse_power(spec, L, target)
    residual = sup_norm(ops.power(spec, L, x) - target).squared
    return VisitCertificate(spec, seed, target, m, x, residual, power)


@dataclass
class HypercyclicSchedule:
    spec: OperatorSpec
    targets: list
    times: list
    vector: FinSeq
    residuals2: list
    tolerance2: mpq
    power: int = 1

    @property
    def passed(self) -> bool:
        return all(r <= self.tolerance2 for r in self.residuals2)

    @property
    def is_witness(self) -> bool:
        return not self.vector.is_zero()


def _schedule_vector(spec: OperatorSpec, targets, times, power: int) -> FinSeq:
    x = FinSeq.zero(spec.base)
    for z, m in zip(targets, times):
        x = x + ops.right_inverse_power(spec, power * m, z)
    return x


def schedule_residuals(spec: OperatorSpec, targets, times, power: int = 1) -> tuple[FinSeq, list]:
    """Exact ‖A^{m_j} x - z_j‖² for x = Σ B^{m_j} z_j."""
    x = _schedule_vector(spec, targets, times, power)
    res = [sup_norm(ops.power(spec, power * m, x) - z).squared for z, m in zip(targets, times)]
    return x, res


def hypercyclic_schedule(spec: OperatorSpec, targets: Sequence[FinSeq], tolerance2,
                         power: int = 1, first_time: int = 1) -> HypercyclicSchedule:
    """Greedy times m_1 < m_2 < ... so that each target is hit within tolerance.

    Gaps of at least the previous target's support length make earlier terms
    vanish under later powers; later terms contribute B^{m_i - m_j} z_i with
    pairwise disjoint supports, so each is bounded separately.
    """
    _require_shift(spec)
    tolerance2 = mpq(tolerance2)
    times: list[int] = []
    for j, z in enumerate(targets):
        if not times:
            m = first_time
        else:
            prev = targets[j - 1]
            m = times[-1] + max(1, -(-prev.support_length // power))
            while any(sup_norm(ops.right_inverse_power(spec, power * (m - t), z)).squared > tolerance2
                      for t in times):
                m += 1
        times.append(m)
    x, res = schedule_residuals(spec, targets, times, power)
    return HypercyclicSchedule(spec, list(targets), times, x, res, tolerance2, power)


__all__ = ["DecayFit", "SccSample", "SccReport", "fit_geometric_decay", "check_fit", "scc_with",
           "verify_scc", "identity_control", "PeriodicPoint", "periodic_formula",
           "build_periodic_point", "tail_norm2", "periodic_density_demo", "per_N_membership",
           "VisitCertificate", "orbit_visit", "HypercyclicSchedule", "schedule_residuals",
           "hypercyclic_schedule"]

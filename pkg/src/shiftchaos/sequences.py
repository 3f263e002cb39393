"""Sequence models for c00, c0 and c.

* :class:`FinSeq` -- finitely supported sequence (an element of c00).
* :class:`ConvSeq` -- convergent sequence ``x_k = limit + d_k`` with ``d`` in c00.
* :class:`FormulaSeq` -- infinite-support sequence given by an index evaluator,
  optionally carrying a :class:`DecayCertificate`.
* :class:`LimitFormulaSeq` -- ``limit + FormulaSeq`` deviation, the image of a
  formula sequence under the inverse coordinate map.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Union

import gmpy2
from gmpy2 import mpq

from .scalar import ONE, ZERO, Scalar, as_scalar, format_rational, rational

DEFAULT_K = 500


class BaseMismatchError(ValueError):
    """Operands live over different index sets (N vs Z+)."""


class IndexBase(enum.IntEnum):
    ZERO = 0
    ONE = 1

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> "IndexBase":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown index base {text!r}; expected one|zero") from None


def check_base(expected: IndexBase, *seqs) -> None:
    for s in seqs:
        if s.base != expected:
            raise BaseMismatchError(
                f"sequence over base {s.base.label} used where base {expected.label} is required")


@dataclass(frozen=True, eq=False)
class FinSeq:
    base: IndexBase
    entries: Mapping[int, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in self.entries.items():
            k = int(k)
            if k < self.base:
                raise ValueError(f"index {k} below base {int(self.base)}")
            v = as_scalar(v)
            if not v.is_zero():
                clean[k] = v
        object.__setattr__(self, "base", IndexBase(self.base))
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @classmethod
    def from_list(cls, base: IndexBase, values) -> "FinSeq":
        """Dense constructor: ``values[0]`` sits at index ``base``."""
        return cls(base, {base + i: v for i, v in enumerate(values)})

    @classmethod
    def zero(cls, base: IndexBase) -> "FinSeq":
        return cls(base, {})

    @property
    def max_support(self) -> int:
        """Largest index carrying a nonzero entry; ``base - 1`` for zero."""
        return max(self.entries) if self.entries else int(self.base) - 1

    @property
    def support_length(self) -> int:
        """Number of slots from ``base`` through ``max_support``."""
        return self.max_support - int(self.base) + 1

    def __getitem__(self, k: int) -> Scalar:
        return self.entries.get(k, ZERO)

    def is_zero(self) -> bool:
        return not self.entries

    def to_list(self, upto: Optional[int] = None) -> list[Scalar]:
        upto = self.max_support if upto is None else upto
        return [self[k] for k in range(self.base, upto + 1)]

    def scale(self, a) -> "FinSeq":
        a = as_scalar(a)
        return FinSeq(self.base, {k: a * v for k, v in self.entries.items()})

    def __add__(self, other: "FinSeq") -> "FinSeq":
        check_base(self.base, other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) + v
        return FinSeq(self.base, out)

    def __neg__(self) -> "FinSeq":
        return self.scale(-1)

    def __sub__(self, other: "FinSeq") -> "FinSeq":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, FinSeq):
            return NotImplemented
        return self.base == other.base and self.entries == other.entries

    def __hash__(self):
        return hash((self.base, tuple(self.entries.items())))

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in self.entries.items())
        return f"FinSeq({self.base.label}, {{{body}}})"


@dataclass(frozen=True, eq=False)
class ConvSeq:
    """Convergent sequence over N stored as ``limit`` plus finite deviation."""

    limit: Scalar
    deviation: FinSeq

    def __post_init__(self):
        object.__setattr__(self, "limit", as_scalar(self.limit))
        check_base(IndexBase.ONE, self.deviation)

    base = IndexBase.ONE

    @classmethod
    def from_c0(cls, x: FinSeq) -> "ConvSeq":
        return cls(ZERO, x)

    @classmethod
    def constant(cls, value) -> "ConvSeq":
        return cls(as_scalar(value), FinSeq.zero(IndexBase.ONE))

    @classmethod
    def from_values(cls, limit, values) -> "ConvSeq":
        """Build from the leading entries ``x_1, x_2, ...`` and the limit."""
        limit = as_scalar(limit)
        return cls(limit, FinSeq.from_list(IndexBase.ONE, [as_scalar(v) - limit for v in values]))

    def __getitem__(self, k: int) -> Scalar:
        if k < 1:
            raise IndexError("convergent sequences are indexed from 1")
        return self.limit + self.deviation[k]

    def is_zero(self) -> bool:
        return self.limit.is_zero() and self.deviation.is_zero()

    def scale(self, a) -> "ConvSeq":
        a = as_scalar(a)
        return ConvSeq(a * self.limit, self.deviation.scale(a))

    def __add__(self, other: "ConvSeq") -> "ConvSeq":
        return ConvSeq(self.limit + other.limit, self.deviation + other.deviation)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, ConvSeq):
            return NotImplemented
        return self.limit == other.limit and self.deviation == other.deviation

    def __hash__(self):
        return hash((self.limit, self.deviation))

    def __repr__(self):
        return f"ConvSeq(limit={self.limit}, deviation={self.deviation!r})"


@dataclass(frozen=True)
class DecayCertificate:
    """Claim ``|x_{k+lag}|^2 <= ratio2 * shrink**(k - k0) * |x_k|^2`` for ``k >= k0``.

    ``ratio2 < 1`` and ``shrink <= 1``; ``shrink < 1`` encodes super-geometric
    decay (ratios that themselves tend to zero).
    """

    k0: int
    ratio2: mpq
    lag: int = 1
    shrink: mpq = mpq(1)

    def __post_init__(self):
        object.__setattr__(self, "ratio2", rational(self.ratio2))
        object.__setattr__(self, "shrink", rational(self.shrink))
        if not 0 <= self.ratio2 < 1:
            raise ValueError("certificate ratio bound must lie in [0, 1)")
        if not 0 < self.shrink <= 1:
            raise ValueError("certificate shrink factor must lie in (0, 1]")
        if self.lag < 1:
            raise ValueError("certificate lag must be positive")

    def bound_at(self, k: int) -> mpq:
        return self.ratio2 * self.shrink ** (k - self.k0)


class FormulaSeq:
    """Sequence defined by a pure index evaluator.

    Entries are memoised; the evaluator itself must be deterministic.
    """

    def __init__(self, base: IndexBase, evaluator: Callable[[int], Scalar],
                 decay: Optional[DecayCertificate] = None, label: str = ""):
        self.base = IndexBase(base)
        self._eval = evaluator
        self.decay = decay
        self.label = label
        self._memo: dict[int, Scalar] = {}

    def __getitem__(self, k: int) -> Scalar:
        if k < self.base:
            raise IndexError(f"index {k} below base {int(self.base)}")
        try:
            return self._memo[k]
        except KeyError:
            v = as_scalar(self._eval(k))
            self._memo[k] = v
            return v

    @classmethod
    def from_finseq(cls, x: FinSeq, label: str = "") -> "FormulaSeq":
        return cls(x.base, x.__getitem__, DecayCertificate(max(x.max_support, int(x.base)) + 1, 0),
                   label=label or "finite")

    def scale(self, a) -> "FormulaSeq":
        a = as_scalar(a)
        return FormulaSeq(self.base, lambda k: a * self[k], self.decay if a else None,
                          label=f"{a}*{self.label}")

    def check_decay(self, span: int = DEFAULT_K) -> bool:
        """Spot-check the decay certificate on ``[k0, k0 + span]``."""
        cert = self.decay
        if cert is None:
            return False
        bound = cert.ratio2
        for k in range(cert.k0, cert.k0 + span + 1):
            if self[k + cert.lag].abs2() > bound * self[k].abs2():
                return False
            bound *= cert.shrink
        return True

    def __repr__(self):
        return f"FormulaSeq({self.base.label}, {self.label or '<formula>'})"


@dataclass(frozen=True)
class LimitFormulaSeq:
    """Element of c written as ``limit + d_k`` with a formula deviation over N."""

    limit: Scalar
    deviation: FormulaSeq

    base = IndexBase.ONE

    def __post_init__(self):
        object.__setattr__(self, "limit", as_scalar(self.limit))
        check_base(IndexBase.ONE, self.deviation)

    def __getitem__(self, k: int) -> Scalar:
        return self.limit + self.deviation[k]


AnySeq = Union[FinSeq, FormulaSeq]


def basis_vector(base: IndexBase, n: int) -> FinSeq:
    """Kronecker sequence e_n over the given index base."""
    if n < base:
        raise ValueError(f"basis index {n} below base {int(base)}")
    return FinSeq(base, {n: ONE})


def e0() -> ConvSeq:
    """The constant sequence (1, 1, 1, ...) in c."""
    return ConvSeq.constant(1)


@dataclass(frozen=True)
class Norm:
    squared: mpq

    @property
    def value(self) -> float:
        if self.squared == 0:
            return 0.0
        num, den = self.squared.numerator, self.squared.denominator
        if gmpy2.is_square(num) and gmpy2.is_square(den):
            return float(mpq(gmpy2.isqrt(num), gmpy2.isqrt(den)))
        return math.exp(0.5 * (math.log(int(self.squared.numerator))
                               - math.log(int(self.squared.denominator))))


def sup_norm(x: FinSeq) -> Norm:
    """Sup-norm of a finitely supported sequence (exact square + float)."""
    return Norm(max((v.abs2() for v in x.entries.values()), default=mpq(0)))


def sup_norm_conv(x: ConvSeq) -> Norm:
    best = x.limit.abs2()
    for v in x.deviation.entries.values():
        best = max(best, (x.limit + v).abs2())
    return Norm(best)


def limit_functional(x: ConvSeq) -> Scalar:
    return x.limit


def schauder_coords_c(x: ConvSeq) -> FinSeq:
    """Coordinates of x in the basis {e_0 = (1,1,...), e_1, e_2, ...}."""
    check_base(IndexBase.ONE, x.deviation)
    out = dict(x.deviation.entries)
    out[0] = x.limit
    return FinSeq(IndexBase.ZERO, out)


def truncate_formula(x: Union[FormulaSeq, FinSeq], K: int) -> FinSeq:
    if K < x.base:
        raise ValueError("truncation index below base")
    return FinSeq(x.base, {k: x[k] for k in range(x.base, K + 1)})


# -- JSON wire format -----------------------------------------------------

def finseq_to_json(x: FinSeq) -> dict:
    return {"base": x.base.label,
            "entries": {str(k): str(v) for k, v in x.entries.items()}}


def finseq_from_json(obj: Mapping) -> FinSeq:
    if not isinstance(obj, Mapping) or "base" not in obj or "entries" not in obj:
        raise ValueError("sequence JSON needs 'base' and 'entries'")
    base = IndexBase.parse(obj["base"])
    entries = obj["entries"]
    if not isinstance(entries, Mapping):
        raise ValueError("'entries' must be an object")
    return FinSeq(base, {int(k): Scalar.parse(str(v)) for k, v in entries.items()})


def convseq_to_json(x: ConvSeq) -> dict:
    return {"limit": str(x.limit), "deviation": finseq_to_json(x.deviation)}


def convseq_from_json(obj: Mapping) -> ConvSeq:
    if not isinstance(obj, Mapping) or "limit" not in obj or "deviation" not in obj:
        raise ValueError("convergent-sequence JSON needs 'limit' and 'deviation'")
    return ConvSeq(Scalar.parse(str(obj["limit"])), finseq_from_json(obj["deviation"]))


def rational_str(q) -> str:
    return format_rational(q)

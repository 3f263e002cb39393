"""Shared fixtures and an independent dense-list oracle.

The oracle works on plain Python lists of ``fractions.Fraction`` and
applies the displayed formulas index by index, with weight products
multiplied out term by term.  It shares no code with the package.
"""

import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from shiftchaos.scalar import Scalar
from shiftchaos.sequences import FinSeq, IndexBase


def dense(x: FinSeq, length: int) -> list:
    """Entries x_base .. x_{base+length-1} as Fractions (real sequences only)."""
    out = []
    for k in range(int(x.base), int(x.base) + length):
        v = x[k]
        assert v.is_real
        out.append(Fraction(int(v.re.numerator), int(v.re.denominator)))
    return out


def oracle_A(values: list, w: Fraction, base: int, bounded: bool, n: int = 1) -> list:
    """(A^n x)_k = [prod_{j=k}^{k+n-1} weight_j] x_{k+n}; list slot i is index base+i."""
    out = []
    for i in range(len(values)):
        k = base + i
        if i + n >= len(values):
            out.append(Fraction(0))
            continue
        factor = Fraction(1)
        for j in range(k, k + n):
            factor *= w if bounded else w ** j
        out.append(factor * values[i + n])
    return out


def oracle_B(values: list, w: Fraction, base: int, bounded: bool, n: int = 1) -> list:
    """n single applications of (Bx)_k = w^{-1} x_{k-1} or w^{-(k-1)} x_{k-1}."""
    cur = list(values) + [Fraction(0)] * n
    for _ in range(n):
        nxt = [Fraction(0)] * len(cur)
        for i in range(1, len(cur)):
            k = base + i
            nxt[i] = (cur[i - 1] / w) if bounded else cur[i - 1] / w ** (k - 1)
        cur = nxt
    return cur


def to_finseq(values: list, base: IndexBase) -> FinSeq:
    return FinSeq.from_list(base, [Scalar(v) for v in values])


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def finseqs(draw, base=IndexBase.ONE, max_len=12, complex_=False):
    n = draw(st.integers(1, max_len))
    vals = draw(st.lists(rationals, min_size=n, max_size=n))
    if complex_:
        ims = draw(st.lists(rationals, min_size=n, max_size=n))
        return FinSeq.from_list(base, [Scalar(a, b) for a, b in zip(vals, ims)])
    return FinSeq.from_list(base, [Scalar(v) for v in vals])


weights = st.sampled_from(["2", "3/2", "5/2", "-3", "1+1 i", "1/2+3/2 i", "-7/4"])


@pytest.fixture(params=[IndexBase.ONE, IndexBase.ZERO], ids=["one", "zero"])
def base(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])

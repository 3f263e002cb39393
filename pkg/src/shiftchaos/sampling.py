"""Seeded generators for random rational test vectors."""

from __future__ import annotations

import random

from gmpy2 import mpq

from .scalar import Scalar
from .sequences import ConvSeq, FinSeq, IndexBase

DEFAULT_SEED = 20240601


def random_rational(rng: random.Random, num: int = 9, den: int = 9) -> mpq:
    return mpq(rng.randint(-num, num), rng.randint(1, den))


def random_scalar(rng: random.Random, complex_: bool = False) -> Scalar:
    if complex_:
        return Scalar(random_rational(rng), random_rational(rng))
    return Scalar(random_rational(rng))


def random_finseq(rng: random.Random, base: IndexBase, max_len: int = 50,
                  complex_: bool = False, nonzero: bool = True) -> FinSeq:
    """Random element of c00 whose support lies in [base, base + max_len - 1]."""
    while True:
        length = rng.randint(1, max_len)
        entries = {base + i: random_scalar(rng, complex_) for i in range(length)
                   if rng.random() < 0.7}
        x = FinSeq(base, entries)
        if not (nonzero and x.is_zero()):
            return x


def random_convseq(rng: random.Random, max_len: int = 20, complex_: bool = False) -> ConvSeq:
    limit = random_scalar(rng, complex_) if rng.random() < 0.8 else Scalar(0)
    dev = random_finseq(rng, IndexBase.ONE, max_len, complex_, nonzero=False)
    return ConvSeq(limit, dev)

"""Feedback shift register sequences and de Bruijn window checks.

The register recurrence is s[k+n] = s[k] + b(s[k+1] ... s[k+n-1]) mod m; the
window s[k] ... s[k+n-1] is the k-th state of the f_S orbit started at the
seed, so a Hamiltonian b yields an m-ary de Bruijn sequence of period m**n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence as Seq

import numpy as np

from .core import Certificate, FeedbackTable, Params, _same_params, encode
from .errors import WrongLength


@dataclass(frozen=True)
class Sequence:
    """One period of a cyclic sequence over m letters."""

    params: Params
    symbols: tuple

    def __post_init__(self):
        if not self.symbols:
            raise WrongLength("a sequence needs period >= 1")
        if any(not 0 <= s < self.params.m for s in self.symbols):
            raise ValueError(f"symbols must lie in [0, {self.params.m})")

    @property
    def period(self) -> int:
        return len(self.symbols)


def sequence_from_feedback(b: FeedbackTable, seed: Seq[int], length: int) -> Sequence:
    """The first ``length`` symbols of the register started at ``seed``."""
    p = b.params
    seed = _same_params(seed, b)
    if length < p.n:
        raise ValueError(f"length {length} is shorter than the seed (n={p.n})")
    s = list(seed)
    for k in range(length - p.n):
        s.append((s[k] + b(s[k + 1 : k + p.n])) % p.m)
    return Sequence(p, tuple(s))


def orbit_sequence(b: FeedbackTable, seed: Seq[int] | None = None) -> Sequence:
    """One period of the register sequence through ``seed`` (default all zeros)."""
    p = b.params
    seed = _same_params(seed if seed is not None else (0,) * p.n, b)
    window = list(seed)
    out = []
    while True:
        out.append(window[0])
        window = window[1:] + [(window[0] + b(window[1:])) % p.m]
        if tuple(window) == seed:
            return Sequence(p, tuple(out))


def is_debruijn(seq: Sequence) -> bool:
    """True iff the m**n cyclic windows of length n are pairwise distinct."""
    p = seq.params
    if seq.period != p.size:
        raise WrongLength(f"a de Bruijn sequence for ({p.m},{p.n}) has period {p.size}, got {seq.period}")
    s = seq.symbols
    doubled = s + s[: p.n - 1]
    present = np.zeros(p.size, dtype=bool)
    for k in range(p.size):
        i = encode(doubled[k : k + p.n], p.m)
        if present[i]:
            return False
        present[i] = True
    return True


def certificate_to_sequence(c: Certificate) -> Sequence:
    if len(c.digits) != c.params.size:
        raise WrongLength(f"certificate has {len(c.digits)} symbols, expected {c.params.size}")
    return Sequence(c.params, tuple(c.digits))


def sequence_to_certificate(seq: Sequence) -> Certificate:
    if seq.period != seq.params.size:
        raise WrongLength(f"sequence period {seq.period} is not m**n = {seq.params.size}")
    return Certificate(seq.params, tuple(seq.symbols))


"""Words, the SB(m, n) digraph and the successor permutation f_S = A_b o sigma.

Words are tuples of digits. A word x_1 ... x_n is encoded big-endian, x_1
most significant, so the (n-1)-suffix of a state index i is ``i % m**(n-1)``
and its first letter is ``i // m**(n-1)``. The same encoding indexes
feedback tables by their (n-1)-word prefix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import (
    BadDigit,
    CapacityExceeded,
    InconsistentSuffix,
    InvalidParams,
    InvalidPermutation,
    InvalidStep,
    InvalidWord,
    OutOfRange,
    ParamsMismatch,
    RepeatedWindow,
    WrongLength,
)

Word = tuple  # tuple[int, ...]

#: state indices are int64 inside the compiled kernels
MAX_STATES = 2**62

#: largest m**n for which a full permutation table is materialized
TABLE_CAP = 3**16

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Params:
    m: int
    n: int

    def __post_init__(self):
        if not isinstance(self.m, int) or not isinstance(self.n, int):
            raise InvalidParams(f"m and n must be integers, got {self.m!r}, {self.n!r}")
        if self.m < 2:
            raise InvalidParams(f"alphabet size m must be >= 2, got {self.m}")
        if self.n < 1:
            raise InvalidParams(f"word length n must be >= 1, got {self.n}")
        if self.m**self.n > MAX_STATES:
            raise InvalidParams(f"m**n = {self.m}**{self.n} does not fit a 64-bit state index")

    @property
    def size(self) -> int:
        """Number of states, m**n."""
        return self.m**self.n

    @property
    def prefix_size(self) -> int:
        """Number of (n-1)-words, i.e. the length of a feedback table."""
        return self.m ** (self.n - 1)


def _check_word(w: Sequence[int], p: Params, length: int | None = None) -> Word:
    length = p.n if length is None else length
    w = tuple(w)
    if len(w) != length:
        raise InvalidWord(f"expected a word of length {length}, got {len(w)}")
    for d in w:
        if not isinstance(d, (int, np.integer)) or not 0 <= d < p.m:
            raise InvalidWord(f"digit {d!r} is not in [0, {p.m})")
    return tuple(int(d) for d in w)


def word_str(w: Sequence[int]) -> str:
    """Text form of a word, one character per digit (m <= 36)."""
    return "".join(DIGITS[d] for d in w)


def encode(w: Sequence[int], m: int) -> int:
    i = 0
    for d in w:
        i = i * m + d
    return i


def decode(i: int, m: int, length: int) -> Word:
    digits = [0] * length
    for k in range(length - 1, -1, -1):
        i, digits[k] = divmod(i, m)
    return tuple(digits)


def word_to_index(w: Sequence[int], p: Params) -> int:
    return encode(_check_word(w, p), p.m)


def index_to_word(i: int, p: Params) -> Word:
    if not 0 <= i < p.size:
        raise OutOfRange(f"state index {i} not in [0, {p.size})")
    return decode(i, p.m, p.n)


def constant_prefixes(p: Params) -> list[int]:
    """Indices of the constant (n-1)-words aa...a, in increasing order."""
    if p.n == 1:
        return [0]
    rep = (p.prefix_size - 1) // (p.m - 1)  # 11...1 in base m
    return [a * rep for a in range(p.m)]


@dataclass(frozen=True, eq=False)
class FeedbackTable:
    """The binary feedback function b on (n-1)-words.

    ``bits[p]`` is b at the prefix with index p. The choice set S is the set of
    prefixes where b is 0 (the save arc is taken there).
    """

    params: Params
    bits: np.ndarray = field(repr=False)

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.uint8)
        if bits.shape != (self.params.prefix_size,):
            raise InvalidWord(
                f"feedback table needs {self.params.prefix_size} entries, got {bits.shape}"
            )
        if bits.size and bits.max() > 1:
            raise InvalidWord("feedback bits must be 0 or 1")
        bits = bits.copy()
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @classmethod
    def constant(cls, p: Params, bit: int) -> FeedbackTable:
        return cls(p, np.full(p.prefix_size, bit, dtype=np.uint8))

    @classmethod
    def from_choice_set(cls, p: Params, suffixes: Iterable[Sequence[int]]) -> FeedbackTable:
        bits = np.ones(p.prefix_size, dtype=np.uint8)
        for y in suffixes:
            bits[encode(_check_word(y, p, p.n - 1), p.m)] = 0
        return cls(p, bits)

    @classmethod
    def from_mask(cls, p: Params, mask: int) -> FeedbackTable:
        """Bit k of ``mask`` (least significant first) is b at prefix k."""
        if mask < 0 or mask >> p.prefix_size:
            raise InvalidWord(f"mask has bits beyond the {p.prefix_size} prefixes")
        bits = [(mask >> k) & 1 for k in range(p.prefix_size)]
        return cls(p, np.array(bits, dtype=np.uint8))

    def __call__(self, prefix: Sequence[int]) -> int:
        return int(self.bits[encode(_check_word(prefix, self.params, self.params.n - 1), self.params.m)])

    def __eq__(self, other):
        if not isinstance(other, FeedbackTable):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.params, self.bits.tobytes()))

    @property
    def weight(self) -> int:
        return int(self.bits.sum())

    @property
    def mask(self) -> int:
        return sum(1 << k for k, bit in enumerate(self.bits) if bit)

    def choice_set(self) -> list[Word]:
        """Prefixes with b = 0, in increasing index order."""
        p = self.params
        return [decode(k, p.m, p.n - 1) for k in np.flatnonzero(self.bits == 0)]


def _same_params(w: Sequence[int], b: FeedbackTable) -> Word:
    if len(w) != b.params.n:
        raise ParamsMismatch(f"word of length {len(w)} used with a table for n={b.params.n}")
    return _check_word(w, b.params)


def rotate(w: Sequence[int]) -> Word:
    """Left cyclic shift: x_1 x_2 ... x_n -> x_2 ... x_n x_1."""
    w = tuple(w)
    return w[1:] + w[:1]


def adjust(w: Sequence[int], b: FeedbackTable) -> Word:
    """Add b(y_1 ... y_{n-1}) to the last digit, mod m."""
    w = _same_params(w, b)
    m = b.params.m
    return w[:-1] + ((w[-1] + b(w[:-1])) % m,)


def successor(w: Sequence[int], b: FeedbackTable) -> Word:
    w = _same_params(w, b)
    m = b.params.m
    return w[1:] + ((w[0] + b(w[1:])) % m,)


def predecessor(w: Sequence[int], b: FeedbackTable) -> Word:
    w = _same_params(w, b)
    m = b.params.m
    return ((w[-1] - b(w[:-1])) % m,) + w[:-1]


def out_neighbors(w: Sequence[int], p: Params) -> tuple[Word, Word]:
    """The (save, bump) targets of w in SB(m, n)."""
    w = _check_word(w, p)
    save = rotate(w)
    bump = save[:-1] + ((save[-1] + 1) % p.m,)
    return save, bump


def in_neighbors(w: Sequence[int], p: Params) -> tuple[Word, Word]:
    """The (save, bump) sources of w: x_n x_1 ... x_{n-1} and (x_n - 1) x_1 ... x_{n-1}."""
    w = _check_word(w, p)
    return (w[-1],) + w[:-1], ((w[-1] - 1) % p.m,) + w[:-1]


# -- permutation tables ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class PermutationTable:
    params: Params
    image: np.ndarray = field(repr=False)

    def __post_init__(self):
        image = np.ascontiguousarray(self.image, dtype=np.int64)
        if image.shape != (self.params.size,):
            raise InvalidPermutation(f"table needs {self.params.size} entries, got {image.shape}")
        image.flags.writeable = False
        object.__setattr__(self, "image", image)

    def __eq__(self, other):
        if not isinstance(other, PermutationTable):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.image, other.image)

    def __hash__(self):
        return hash((self.params, self.image.tobytes()))

    def __call__(self, i: int) -> int:
        return int(self.image[i])

    def is_bijection(self) -> bool:
        return bool(np.array_equal(np.sort(self.image), np.arange(self.params.size)))

    def compose(self, inner: PermutationTable) -> PermutationTable:
        """``self o inner``: apply inner first."""
        if inner.params != self.params:
            raise ParamsMismatch("cannot compose tables over different parameters")
        return PermutationTable(self.params, self.image[inner.image])


def _check_capacity(p: Params, cap: int | None) -> None:
    cap = TABLE_CAP if cap is None else cap
    if p.size > cap:
        raise CapacityExceeded(f"m**n = {p.size} states exceeds the table cap {cap}")


def _states(p: Params) -> np.ndarray:
    return np.arange(p.size, dtype=np.int64)


def permutation_table(b: FeedbackTable, cap: int | None = None) -> PermutationTable:
    """The full table of f_S."""
    p = b.params
    _check_capacity(p, cap)
    return PermutationTable(p, _kernels.successor_image(b.bits, p.m, p.n))


def rotation_table(p: Params, cap: int | None = None) -> PermutationTable:
    _check_capacity(p, cap)
    x = _states(p)
    return PermutationTable(p, (x % p.prefix_size) * p.m + x // p.prefix_size)


def adjust_table(b: FeedbackTable, cap: int | None = None) -> PermutationTable:
    p = b.params
    _check_capacity(p, cap)
    x = _states(p)
    prefix, last = np.divmod(x, p.m)
    return PermutationTable(p, prefix * p.m + (last + b.bits[prefix]) % p.m)


def predecessor_table(b: FeedbackTable, cap: int | None = None) -> PermutationTable:
    """Table of the unique pre-image (y_n - b(y_1..y_{n-1}), y_1, ..., y_{n-1})."""
    p = b.params
    _check_capacity(p, cap)
    prefix, last = np.divmod(_states(p), p.m)
    return PermutationTable(p, ((last - b.bits[prefix]) % p.m) * p.prefix_size + prefix)


def reversal_table(p: Params, cap: int | None = None) -> PermutationTable:
    _check_capacity(p, cap)
    x = _states(p)
    digits = [(x // p.m**k) % p.m for k in range(p.n)]  # least significant first
    out = np.zeros(p.size, dtype=np.int64)
    for d in digits:
        out = out * p.m + d
    return PermutationTable(p, out)


@dataclass(frozen=True)
class CycleReport:
    cycle_count: int
    cycle_type: dict  # length -> multiplicity
    sign: int
    orbit_of_zero_length: int
    is_single_cycle: bool


def cycle_decomposition(t: PermutationTable) -> CycleReport:
    lengths = _kernels.cycle_lengths(t.image)
    if lengths.sum() != t.params.size:
        raise InvalidPermutation("table is not a bijection on the state indices")
    hist = np.bincount(lengths)
    cycle_type = {int(k): int(hist[k]) for k in np.flatnonzero(hist)}
    count = len(lengths)
    return CycleReport(
        cycle_count=count,
        cycle_type=cycle_type,
        sign=-1 if (t.params.size - count) % 2 else 1,
        orbit_of_zero_length=int(lengths[0]),
        is_single_cycle=count == 1,
    )


def cycles(t: PermutationTable) -> list[list[int]]:
    """Explicit cycles, each starting at its smallest element."""
    seen = np.zeros(t.params.size, dtype=bool)
    out = []
    for start in range(t.params.size):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = int(t.image[x])
        out.append(cyc)
    return out


def hamiltonian_orbit_length(b: FeedbackTable) -> int:
    """Length of the f_S orbit of the all-zero word; equals m**n iff b is Hamiltonian."""
    p = b.params
    return int(_kernels.orbit_length(b.bits, p.m, p.n, 0))


def is_hamiltonian(b: FeedbackTable) -> bool:
    return hamiltonian_orbit_length(b) == b.params.size


# -- certificates ---------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """A cyclic digit string whose length-n windows trace a Hamiltonian cycle.

    Window k is ``digits[k:k+n]`` read cyclically; vertex k+1 follows vertex k.
    """

    params: Params
    digits: Word

    def windows(self) -> list[Word]:
        n, d = self.params.n, self.digits
        doubled = d + d[: n - 1]
        return [doubled[k : k + n] for k in range(len(d))]


def verify_certificate(c: Certificate) -> FeedbackTable:
    """Check a Hamiltonian-cycle certificate and return its feedback table.

    Raises a :class:`~sbham.errors.CertificateError` subclass describing the
    first defect found.
    """
    p = c.params
    m, n, size = p.m, p.n, p.size
    digits = c.digits
    if len(digits) != size:
        raise WrongLength(f"a cycle of SB({m},{n}) has {size} symbols, got {len(digits)}")
    for k, d in enumerate(digits):
        if not 0 <= d < m:
            raise BadDigit(f"symbol {d!r} at position {k} is not in [0, {m})")

    windows = c.windows()
    steps = []
    for k, w in enumerate(windows):
        nxt = windows[(k + 1) % size]
        if nxt[-1] == w[0]:
            if nxt == w:
                raise InvalidStep(k, "save arc is a self-loop at a constant word")
            steps.append(0)
        elif nxt[-1] == (w[0] + 1) % m:
            steps.append(1)
        else:
            raise InvalidStep(k)

    seen: dict[int, int] = {}
    for k, w in enumerate(windows):
        i = encode(w, m)
        if i in seen:
            raise RepeatedWindow(k, seen[i])
        seen[i] = k

    # cannot fire once windows are distinct; kept as a guard on the extraction
    decisions: dict[Word, int] = {}
    for w, bit in zip(windows, steps):
        if decisions.setdefault(w[1:], bit) != bit:
            raise InconsistentSuffix(word_str(w[1:]))

    bits = np.zeros(p.prefix_size, dtype=np.uint8)
    for suffix, bit in decisions.items():
        bits[encode(suffix, m)] = bit
    b = FeedbackTable(p, bits)

    # the rebuilt register must walk the same cycle from window 0
    x = windows[0]
    for k in range(size):
        if x != windows[k]:
            raise InvalidStep(k, "rebuilt successor map leaves the certificate")
        x = successor(x, b)
    return b


def orbit_certificate(b: FeedbackTable, start: Sequence[int] | None = None) -> Certificate:
    """First letters of the f_S orbit from ``start`` (default all zeros)."""
    p = b.params
    x = tuple(start) if start is not None else (0,) * p.n
    x0 = _same_params(x, b)
    digits = []
    while True:
        digits.append(x[0])
        x = successor(x, b)
        if x == x0:
            break
    if len(digits) != p.size:
        raise WrongLength(f"orbit has length {len(digits)}, not {p.size}")
    return Certificate(p, tuple(digits))

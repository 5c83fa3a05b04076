"""Exhaustive and sampled search over feedback tables.

A candidate is a counter c in [0, 2**free_bits). Prefixes are visited in
increasing index order; constant prefixes aa...a are pinned to b = 1 (their
save arc is a self-loop) and bit j of c gives b at the j-th free prefix.
That order is part of the checkpoint format.
"""

from __future__ import annotations

import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from . import _kernels
from .core import FeedbackTable, Params, constant_prefixes
from .errors import CapacityExceeded, CheckpointRejected, EmptySample, InvalidArgument
from .necklace import sign_sigma

#: largest free-bit count an exhaustive scan accepts by default
EXHAUSTIVE_LIMIT = 26
#: limit with the extended flag, enough for SB(6, 3) (2**30 candidates)
EXTENDED_LIMIT = 32

CHECKPOINT_VERSION = 1
DEFAULT_CHUNK = 1 << 20


@dataclass(frozen=True)
class SearchSpace:
    params: Params
    lo: int
    hi: int

    @property
    def pinned(self) -> list[int]:
        return constant_prefixes(self.params)

    @property
    def free_positions(self) -> list[int]:
        pinned = set(self.pinned)
        return [k for k in range(self.params.prefix_size) if k not in pinned]

    @property
    def free_bits(self) -> int:
        return self.params.prefix_size - len(self.pinned)

    @property
    def full_size(self) -> int:
        return 1 << self.free_bits

    def __len__(self) -> int:
        return self.hi - self.lo

    def subrange(self, lo: int, hi: int) -> SearchSpace:
        return replace(self, lo=lo, hi=hi)

    def feedback(self, counter: int) -> FeedbackTable:
        if not 0 <= counter < self.full_size:
            raise InvalidArgument(f"counter {counter} outside [0, 2**{self.free_bits})")
        bits = np.ones(self.params.prefix_size, dtype=np.uint8)
        for j, pos in enumerate(self.free_positions):
            bits[pos] = (counter >> j) & 1
        return FeedbackTable(self.params, bits)


def build_search_space(p: Params, limit: int = EXHAUSTIVE_LIMIT) -> SearchSpace:
    space = SearchSpace(p, 0, 0)
    if space.free_bits > limit:
        raise CapacityExceeded(
            f"SB({p.m},{p.n}) has {space.free_bits} free bits; exhaustive limit is {limit}"
        )
    return replace(space, hi=space.full_size)


def partition(space: SearchSpace, workers: int) -> list[SearchSpace]:
    """Split into contiguous ranges whose sizes differ by at most one."""
    if workers < 1:
        raise InvalidArgument(f"workers must be >= 1, got {workers}")
    q, r = divmod(len(space), workers)
    parts = []
    lo = space.lo
    for k in range(workers):
        hi = lo + q + (1 if k < r else 0)
        parts.append(space.subrange(lo, hi))
        lo = hi
    return parts


@dataclass
class EnumerationReport:
    m: int
    n: int
    lo: int
    hi: int
    tested: int = 0
    hamiltonian_count: int = 0
    track_signs: bool = False
    sign_plus: int = 0
    sign_minus: int = 0
    complete: bool = False
    elapsed: float = 0.0
    hamiltonian_counters: list = field(default_factory=list)

    @property
    def sign_histogram(self) -> dict | None:
        if not self.track_signs:
            return None
        return {"+1": self.sign_plus, "-1": self.sign_minus}

    def merge(self, other: EnumerationReport) -> EnumerationReport:
        """Sum two reports over adjacent ranges (self first)."""
        return replace(
            self,
            lo=min(self.lo, other.lo),
            hi=max(self.hi, other.hi),
            tested=self.tested + other.tested,
            hamiltonian_count=self.hamiltonian_count + other.hamiltonian_count,
            sign_plus=self.sign_plus + other.sign_plus,
            sign_minus=self.sign_minus + other.sign_minus,
            elapsed=self.elapsed + other.elapsed,
            hamiltonian_counters=self.hamiltonian_counters + other.hamiltonian_counters,
        )

    def counts(self) -> dict:
        """Everything except timing; equal for any worker count or resume history."""
        d = asdict(self)
        d.pop("elapsed")
        return d


def _scan(args) -> EnumerationReport:
    m, n, free, lo, hi, track_signs, collect = args
    t0 = time.perf_counter()
    ham, plus, minus, found = _kernels.scan_range(
        m, n, np.asarray(free, dtype=np.int64), lo, hi, track_signs, collect
    )
    return EnumerationReport(
        m=m,
        n=n,
        lo=lo,
        hi=hi,
        tested=hi - lo,
        hamiltonian_count=int(ham),
        track_signs=track_signs,
        sign_plus=int(plus),
        sign_minus=int(minus),
        complete=True,
        elapsed=time.perf_counter() - t0,
        hamiltonian_counters=[int(c) for c in found],
    )


def scan(
    space: SearchSpace,
    track_signs: bool = False,
    workers: int = 1,
    collect: int = 0,
    pool: ProcessPoolExecutor | None = None,
) -> EnumerationReport:
    """Scan ``space`` completely; sub-ranges run on ``workers`` processes."""
    p = space.params
    free = space.free_positions
    parts = partition(space, workers)
    jobs = [(p.m, p.n, free, s.lo, s.hi, track_signs, collect) for s in parts if len(s)]
    if not jobs:
        return EnumerationReport(p.m, p.n, space.lo, space.hi, track_signs=track_signs, complete=True)
    if workers == 1 or len(jobs) == 1:
        results = [_scan(job) for job in jobs]
    elif pool is not None:
        results = list(pool.map(_scan, jobs))
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_scan, jobs))
    report = results[0]
    for r in results[1:]:
        report = report.merge(r)
    report.hamiltonian_counters = report.hamiltonian_counters[:collect]
    return report


def enumerate_space(
    space: SearchSpace,
    track_signs: bool = False,
    workers: int = 1,
    collect: int = 0,
    checkpoint: str | Path | None = None,
    resume: bool = False,
    chunk: int = DEFAULT_CHUNK,
    stop_after: int | None = None,
) -> EnumerationReport:
    """Scan ``space`` in chunks, optionally checkpointing after each chunk.

    With ``resume`` the scan continues from the checkpoint file. ``stop_after``
    bounds the number of candidates tested in this call; the report then has
    ``complete=False`` and the checkpoint records where to pick up.
    """
    t0 = time.perf_counter()
    report = EnumerationReport(
        space.params.m, space.params.n, space.lo, space.lo, track_signs=track_signs
    )
    cursor = space.lo
    if resume:
        if checkpoint is None:
            raise InvalidArgument("resume needs a checkpoint path")
        ck = checkpoint_load(checkpoint)
        if ck.space != space or ck.report.track_signs != track_signs:
            raise CheckpointRejected("checkpoint belongs to a different search")
        report = ck.report
        cursor = ck.cursor
    prior_elapsed = report.elapsed

    budget = len(space) if stop_after is None else stop_after
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while cursor < space.hi and budget > 0:
            step = min(chunk, space.hi - cursor, budget)
            part = scan(space.subrange(cursor, cursor + step), track_signs, workers, collect, pool)
            report = report.merge(part)
            report.hamiltonian_counters = report.hamiltonian_counters[:collect]
            cursor += step
            budget -= step
            report.elapsed = prior_elapsed + time.perf_counter() - t0
            if checkpoint is not None:
                checkpoint_save(Checkpoint(space, cursor, report), checkpoint)
    except KeyboardInterrupt:
        # the chunk in flight is lost; everything before cursor is already saved
        pass
    finally:
        if pool is not None:
            pool.shutdown()

    report.lo, report.hi = space.lo, cursor
    report.complete = cursor == space.hi
    report.elapsed = prior_elapsed + time.perf_counter() - t0
    if checkpoint is not None:
        checkpoint_save(Checkpoint(space, cursor, report), checkpoint)
    return report


# -- checkpoints -----------------------------------------------------------


@dataclass
class Checkpoint:
    space: SearchSpace
    cursor: int  # counters in [space.lo, cursor) are done
    report: EnumerationReport
    version: int = CHECKPOINT_VERSION


_CK_FIELDS = ["m", "n", "lo", "hi", "cursor", "track_signs", "tested", "hamiltonian_count",
              "sign_plus", "sign_minus", "elapsed", "hamiltonian_counters"]


def checkpoint_save(ck: Checkpoint, path: str | Path) -> None:
    r = ck.report
    values = {
        "m": ck.space.params.m,
        "n": ck.space.params.n,
        "lo": ck.space.lo,
        "hi": ck.space.hi,
        "cursor": ck.cursor,
        "track_signs": int(r.track_signs),
        "tested": r.tested,
        "hamiltonian_count": r.hamiltonian_count,
        "sign_plus": r.sign_plus,
        "sign_minus": r.sign_minus,
        "elapsed": repr(r.elapsed),
        "hamiltonian_counters": ",".join(map(str, r.hamiltonian_counters)),
    }
    body = f"sbham-checkpoint {ck.version}\n" + "".join(f"{k} {values[k]}\n" for k in _CK_FIELDS)
    body += f"crc32 {zlib.crc32(body.encode()):08x}\n"
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(body)
    tmp.replace(path)


def checkpoint_load(path: str | Path) -> Checkpoint:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise CheckpointRejected(f"cannot read checkpoint {path}: {e}") from e
    lines = text.splitlines(keepends=True)
    if not lines or not lines[-1].startswith("crc32 "):
        raise CheckpointRejected("checkpoint is truncated (no checksum line)")
    body = "".join(lines[:-1])
    if lines[-1].split()[1:] != [f"{zlib.crc32(body.encode()):08x}"]:
        raise CheckpointRejected("checkpoint checksum mismatch")
    header = lines[0].split()
    if header[:1] != ["sbham-checkpoint"] or header[1:] != [str(CHECKPOINT_VERSION)]:
        raise CheckpointRejected(f"unsupported checkpoint header {lines[0].strip()!r}")
    values = {}
    for line in lines[1:-1]:
        key, _, value = line.rstrip("\n").partition(" ")
        values[key] = value
    if sorted(values) != sorted(_CK_FIELDS):
        raise CheckpointRejected("checkpoint fields are incomplete")
    try:
        ints = {k: int(values[k]) for k in _CK_FIELDS if k not in ("elapsed", "hamiltonian_counters")}
        counters = [int(c) for c in values["hamiltonian_counters"].split(",") if c]
        elapsed = float(values["elapsed"])
        space = SearchSpace(Params(ints["m"], ints["n"]), ints["lo"], ints["hi"])
    except (ValueError, KeyError) as e:
        raise CheckpointRejected(f"malformed checkpoint: {e}") from e
    report = EnumerationReport(
        m=ints["m"],
        n=ints["n"],
        lo=ints["lo"],
        hi=ints["cursor"],
        tested=ints["tested"],
        hamiltonian_count=ints["hamiltonian_count"],
        track_signs=bool(ints["track_signs"]),
        sign_plus=ints["sign_plus"],
        sign_minus=ints["sign_minus"],
        complete=ints["cursor"] == ints["hi"],
        elapsed=elapsed,
        hamiltonian_counters=counters,
    )
    return Checkpoint(space, ints["cursor"], report)


# -- sign sampling --------------------------------------------------------


@dataclass
class SampleReport:
    m: int
    n: int
    trials: int
    seed: int
    pruned: bool
    mismatches: int
    sign_plus: int
    sign_minus: int
    sign_sigma: int

    @property
    def sign_histogram(self) -> dict:
        return {"+1": self.sign_plus, "-1": self.sign_minus}


def random_bit_rows(trials: int, width: int, seed: int) -> np.ndarray:
    """A (trials, width) matrix of uniform bits from Philox4x32-10.

    Row t takes ceil(width / 64) consecutive raw 64-bit outputs; bit j of the
    row is bit (j mod 64) of output j // 64, least significant first.
    """
    words = -(-width // 64) if width else 0
    gen = np.random.Philox(seed)
    raw = gen.random_raw(trials * words).astype("<u8").reshape(trials, words)
    bits = np.unpackbits(raw.view(np.uint8), axis=1, bitorder="little")
    return np.ascontiguousarray(bits[:, :width])


def sample_feedback_rows(p: Params, trials: int, seed: int, pruned: bool) -> np.ndarray:
    if not pruned:
        return random_bit_rows(trials, p.prefix_size, seed)
    space = SearchSpace(p, 0, 0)
    free = random_bit_rows(trials, space.free_bits, seed)
    rows = np.ones((trials, p.prefix_size), dtype=np.uint8)
    rows[:, space.free_positions] = free
    return rows


def _signs(args):
    rows, m, n = args
    return _kernels.signs_of_tables(rows, m, n)


def sample_signs(
    p: Params, trials: int, seed: int, pruned: bool = False, workers: int = 1
) -> SampleReport:
    """Compare sgn(f_S) with sgn(sigma) for ``trials`` seeded random tables.

    The tables depend only on ``seed``; ``workers`` only splits the sign work.
    """
    if trials <= 0:
        raise EmptySample("trials must be positive")
    if workers < 1:
        raise InvalidArgument(f"workers must be >= 1, got {workers}")
    rows = sample_feedback_rows(p, trials, seed, pruned)
    if workers == 1:
        signs = _kernels.signs_of_tables(rows, p.m, p.n)
    else:
        chunks = np.array_split(rows, workers)
        with ProcessPoolExecutor(max_workers=workers) as ex:
            signs = np.concatenate(list(ex.map(_signs, [(c, p.m, p.n) for c in chunks])))
    target = sign_sigma(p.m, p.n)
    plus = int((signs == 1).sum())
    return SampleReport(
        m=p.m,
        n=p.n,
        trials=trials,
        seed=seed,
        pruned=pruned,
        mismatches=int((signs != target).sum()),
        sign_plus=plus,
        sign_minus=trials - plus,
        sign_sigma=target,
    )

"""Compiled inner loops.

States are big-endian base-m integers, so for a state x with P = m**(n-1):
    first digit  = x // P
    suffix index = x % P
    successor    = (x % P) * m + (x // P + b[x % P]) % m
The kernels precompute those three per-state quantities once per (m, n) and
then run on table lookups only.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def step_tables(m, n):
    size = m**n
    psize = m ** (n - 1)
    first = np.empty(size, np.int64)
    suffix = np.empty(size, np.int64)
    base = np.empty(size, np.int64)
    for x in range(size):
        first[x] = x // psize
        suffix[x] = x % psize
        base[x] = (x % psize) * m
    # addmod[d + bit] == (d + bit) % m for d < m, bit in {0, 1}
    addmod = np.empty(m + 1, np.int64)
    for d in range(m + 1):
        addmod[d] = d % m
    return first, suffix, base, addmod


@njit(cache=True)
def cycle_lengths(image):
    """Lengths of the cycles of ``image``, in order of smallest element.

    Returns an empty array if ``image`` is not a bijection on 0..len-1.
    """
    size = image.shape[0]
    seen = np.zeros(size, np.uint8)
    out = np.empty(size, np.int64)
    k = 0
    for start in range(size):
        if seen[start]:
            continue
        length = 0
        x = start
        while True:
            if x < 0 or x >= size or seen[x]:
                return out[:0]
            seen[x] = 1
            length += 1
            x = image[x]
            if x == start:
                break
        out[k] = length
        k += 1
    return out[:k]


@njit(cache=True)
def cycle_count(image):
    size = image.shape[0]
    seen = np.zeros(size, np.uint8)
    cycles = 0
    for start in range(size):
        if seen[start]:
            continue
        cycles += 1
        x = start
        while not seen[x]:
            seen[x] = 1
            x = image[x]
    return cycles


@njit(cache=True)
def orbit_length(bits, m, n, start):
    """Length of the f_S orbit through ``start``, one state held at a time."""
    psize = m ** (n - 1)
    x = start
    length = 0
    while True:
        s = x % psize
        x = s * m + (x // psize + bits[s]) % m
        length += 1
        if x == start:
            return length


@njit(cache=True)
def successor_image(bits, m, n):
    size = m**n
    psize = m ** (n - 1)
    image = np.empty(size, np.int64)
    for x in range(size):
        s = x % psize
        image[x] = s * m + (x // psize + bits[s]) % m
    return image


@njit(cache=True)
def count_minimal_rotations(m, n):
    """Number of words that are lexicographically least among their rotations.

    In big-endian encoding lexicographic order on words is numeric order on
    state indices, so the test is ``x <= rotate^k(x)`` for every k.
    """
    size = m**n
    psize = m ** (n - 1)
    count = 0
    for x in range(size):
        # integer flag and loop-invariant bound let LLVM unswitch and vectorize n == 1
        minimal = 1
        y = x
        k = 1
        while k < n:
            y = (y % psize) * m + y // psize
            if y < x:
                minimal = 0
                break
            k += 1
        count += minimal
    return count


@njit(cache=True)
def _set_bit(image, m, psize, p, bit):
    for d in range(m):
        image[d * psize + p] = p * m + (d + bit) % m


@njit(cache=True)
def scan_range(m, n, free_pos, lo, hi, track_signs, collect):
    """Exhaustive scan of feedback tables for counters in [lo, hi).

    Bit j of the counter drives prefix ``free_pos[j]``; every other prefix
    is pinned to 1. Returns (hamiltonian, plus, minus, found) where ``found``
    holds up to ``collect`` Hamiltonian counters in increasing order.

    The successor table is kept materialized and patched per counter: moving
    from c - 1 to c flips about two bits on average, each touching m entries.
    """
    size = m**n
    psize = m ** (n - 1)
    nfree = free_pos.shape[0]

    image = np.empty(size, np.int64)
    for p in range(psize):
        _set_bit(image, m, psize, p, 1)
    for j in range(nfree):
        _set_bit(image, m, psize, free_pos[j], (lo >> j) & 1)

    stamp = np.zeros(size, np.int64)
    found = np.empty(collect, np.int64)
    nfound = 0
    ham = 0
    plus = 0
    minus = 0

    c = lo
    while c < hi:
        if c != lo:
            diff = c ^ (c - 1)
            j = 0
            while diff != 0:
                if diff & 1:
                    _set_bit(image, m, psize, free_pos[j], (c >> j) & 1)
                diff >>= 1
                j += 1

        mark = c - lo + 1
        length = 0
        if track_signs:
            x = 0
            while True:
                stamp[x] = mark
                x = image[x]
                length += 1
                if x == 0:
                    break
        else:
            x = image[0]
            length = 1
            while x != 0:
                x = image[x]
                length += 1

        if length == size:
            ham += 1
            if nfound < collect:
                found[nfound] = c
                nfound += 1

        if track_signs:
            cycles = 1
            if length != size:
                for start in range(1, size):
                    if stamp[start] == mark:
                        continue
                    cycles += 1
                    y = start
                    while stamp[y] != mark:
                        stamp[y] = mark
                        y = image[y]
            if (size - cycles) % 2 == 0:
                plus += 1
            else:
                minus += 1
        c += 1

    return ham, plus, minus, found[:nfound]


@njit(cache=True)
def signs_of_tables(bit_rows, m, n):
    """Sign of f_S for each row of a (trials, m**(n-1)) bit matrix."""
    size = m**n
    first, suffix, base, addmod = step_tables(m, n)
    trials = bit_rows.shape[0]
    out = np.empty(trials, np.int64)
    stamp = np.zeros(size, np.int64)
    for t in range(trials):
        bits = bit_rows[t]
        mark = t + 1
        cycles = 0
        for start in range(size):
            if stamp[start] == mark:
                continue
            cycles += 1
            y = start
            while stamp[y] != mark:
                stamp[y] = mark
                y = base[y] + addmod[first[y] + bits[suffix[y]]]
        out[t] = 1 if (size - cycles) % 2 == 0 else -1
    return out

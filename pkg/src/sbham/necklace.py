"""Necklace and bracelet counts, sign of the rotation, and the parity verdict.

All arithmetic is exact (Python ints and ``fractions.Fraction``): every
quantity here matters only through its parity or divisibility.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import _kernels
from .core import FeedbackTable, Params, cycle_decomposition, rotation_table
from .errors import CapacityExceeded, InvalidParams, UnsupportedParity

#: default cap on m**n for brute-force necklace counting
BRUTEFORCE_CAP = 3**12

#: sign_sigma cross-checks against an explicit rotation table up to this size
SIGN_TABLE_CAP = 3**10


def bruteforce_cap() -> int:
    value = os.environ.get("SBHAM_BRUTEFORCE_CAP")
    return int(value) if value else BRUTEFORCE_CAP


def _check(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise InvalidParams(f"need m >= 1 and n >= 1, got m={m}, n={n}")


def factorize(k: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= k:
        while k % d == 0:
            out[d] = out.get(d, 0) + 1
            k //= d
        d += 1
    if k > 1:
        out[k] = out.get(k, 0) + 1
    return out


def euler_phi(k: int) -> int:
    result = k
    for prime in factorize(k):
        result = result // prime * (prime - 1)
    return result


def divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def necklace_count(m: int, n: int) -> int:
    """N(n, m), the number of length-n necklaces over m letters.

    Computed both as (1/n) sum_k m**gcd(k, n) and as (1/n) sum_{d|n} phi(d) m**(n/d).
    """
    _check(m, n)
    gcd_sum = sum(m ** gcd(k, n) for k in range(n))
    phi_sum = sum(euler_phi(d) * m ** (n // d) for d in divisors(n))
    if gcd_sum != phi_sum or gcd_sum % n:
        raise ArithmeticError(f"necklace sums disagree at m={m}, n={n}: {gcd_sum} vs {phi_sum}")
    return gcd_sum // n


def necklace_count_bruteforce(m: int, n: int, cap: int | None = None) -> int:
    """Count words that are lexicographically least among their rotations."""
    _check(m, n)
    cap = bruteforce_cap() if cap is None else cap
    if m**n > cap:
        raise CapacityExceeded(f"m**n = {m**n} exceeds the brute-force cap {cap}")
    if m == 1:
        return 1
    return int(_kernels.count_minimal_rotations(m, n))


def rotation_fix_counts(m: int, n: int) -> list[int]:
    """|Fix(sigma**k)| = m**gcd(k, n) for k = 0 .. n-1."""
    _check(m, n)
    return [m ** gcd(k, n) for k in range(n)]


def reflection_orbits(n: int, k: int) -> int:
    """Number of orbits of the index involution i -> (n - 1 + k - i) mod n."""
    seen = [False] * n
    orbits = 0
    for i in range(n):
        if seen[i]:
            continue
        orbits += 1
        j = (n - 1 + k - i) % n
        seen[i] = seen[j] = True
    return orbits


def reflection_fix_counts(m: int, n: int) -> list[int]:
    """|Fix(R sigma**k)| for k = 0 .. n-1, where R reverses a word."""
    _check(m, n)
    fixes = [m ** reflection_orbits(n, k) for k in range(n)]
    if n % 2 == 0:
        closed = [m ** (n // 2 + 1) if k % 2 else m ** (n // 2) for k in range(n)]
    else:
        closed = [m ** ((n + 1) // 2)] * n
    if fixes != closed:
        raise ArithmeticError(f"reflection fixes disagree with the closed form at m={m}, n={n}")
    return fixes


def dihedral_orbit_count(m: int, n: int) -> int:
    """Number of bracelets: Burnside average over the 2n elements of D_n."""
    total = sum(rotation_fix_counts(m, n)) + sum(reflection_fix_counts(m, n))
    orbits = Fraction(total, 2 * n)
    if orbits.denominator != 1:
        raise ArithmeticError(f"Burnside average {orbits} is not an integer")
    if n % 2 == 0:
        closed = Fraction(necklace_count(m, n), 2) + Fraction(m + 1, 4) * m ** (n // 2)
        if closed != orbits:
            raise ArithmeticError(f"bracelet closed form {closed} != Burnside count {orbits}")
    return int(orbits)


def rfix_count(m: int, n: int) -> int:
    """Necklaces mapped to themselves by reversal, for even n: (m+1)/2 * m**(n/2)."""
    _check(m, n)
    if n % 2:
        raise UnsupportedParity(f"the reversal-fixed necklace closed form needs even n, got n={n}")
    value = Fraction(m + 1, 2) * m ** (n // 2)
    if value.denominator != 1 or 2 * dihedral_orbit_count(m, n) != necklace_count(m, n) + value:
        raise ArithmeticError(f"bracelet identity fails at m={m}, n={n}")
    return int(value)


@dataclass(frozen=True)
class CountingReport:
    m: int
    n: int
    necklaces: int
    rotation_fixes: list
    reflection_fixes: list
    dihedral_orbits: int
    rfix: int | None
    n_parity: str


def counting_report(m: int, n: int) -> CountingReport:
    return CountingReport(
        m=m,
        n=n,
        necklaces=necklace_count(m, n),
        rotation_fixes=rotation_fix_counts(m, n),
        reflection_fixes=reflection_fix_counts(m, n),
        dihedral_orbits=dihedral_orbit_count(m, n),
        rfix=rfix_count(m, n) if n % 2 == 0 else None,
        n_parity="even" if n % 2 == 0 else "odd",
    )


@dataclass(frozen=True)
class NecklaceParity:
    parity: str
    necklaces: int
    # N/2, read off as bracelets - ((m+1)/4) m**(n/2); only when m = 3 mod 4 and n even
    half_witness: int | None = None


def necklace_parity(m: int, n: int) -> NecklaceParity:
    count = necklace_count(m, n)
    witness = None
    if m % 4 == 3 and n % 2 == 0:
        w = dihedral_orbit_count(m, n) - Fraction(m + 1, 4) * m ** (n // 2)
        if w.denominator != 1 or 2 * w != count:
            raise ArithmeticError(f"parity witness {w} does not halve N={count}")
        witness = int(w)
    return NecklaceParity("even" if count % 2 == 0 else "odd", count, witness)


@lru_cache(maxsize=None)
def sign_sigma(m: int, n: int, cross_check: bool = True) -> int:
    """Sign of the rotation sigma on all m**n words: (-1)**(m**n - N(n, m))."""
    count = necklace_count(m, n)
    sign = -1 if (m**n - count) % 2 else 1
    if m % 2 == 1:
        odd_form = -1 if count % 2 == 0 else 1
        if odd_form != sign:
            raise ArithmeticError(f"odd-m sign formula disagrees at m={m}, n={n}")
    if cross_check and m >= 2 and m**n <= SIGN_TABLE_CAP:
        direct = cycle_decomposition(rotation_table(Params(m, n))).sign
        if direct != sign:
            raise ArithmeticError(f"sign formula {sign} != direct decomposition {direct}")
    return sign


def sign_adjust(b: FeedbackTable) -> int:
    """Sign of A_b: each prefix with b = 1 carries an m-cycle of sign (-1)**(m-1)."""
    return -1 if ((b.params.m - 1) * b.weight) % 2 else 1


class ResidueClass(str, Enum):
    THREE_MOD_FOUR = "m=3 mod 4"
    ONE_MOD_FOUR = "m=1 mod 4"
    EVEN = "m even"


class VerdictReason(str, Enum):
    SIGN_CLASH = "sign_clash"
    N_ODD_SIGNS_MATCH = "n_odd_signs_match"
    ADJUST_SIGN_VARIES = "adjust_sign_varies"


@dataclass(frozen=True)
class ObstructionReport:
    m: int
    n: int
    residue_class: ResidueClass
    sgn_sigma: int
    n_parity: str
    required_cycle_sign: int
    obstructed: bool
    reason_code: VerdictReason
    reason: str


def obstruction_verdict(m: int, n: int) -> ObstructionReport:
    """Whether the sign argument rules out every Hamiltonian cycle of SB(m, n)."""
    p = Params(m, n)
    if m % 2 == 0:
        residue = ResidueClass.EVEN
    elif m % 4 == 3:
        residue = ResidueClass.THREE_MOD_FOUR
    else:
        residue = ResidueClass.ONE_MOD_FOUR
    sgn = sign_sigma(m, n, cross_check=p.size <= SIGN_TABLE_CAP)
    required = -1 if (p.size - 1) % 2 else 1

    if residue is ResidueClass.EVEN:
        obstructed = False
        code = VerdictReason.ADJUST_SIGN_VARIES
        reason = (
            f"m={m} is even: every bumped prefix contributes an m-cycle of sign -1, "
            "so sgn(A_b) depends on b and sgn(f_S) is not fixed"
        )
    elif sgn == -1:
        obstructed = True
        code = VerdictReason.SIGN_CLASH
        reason = (
            f"m={m} is odd, so sgn(f_S) = sgn(sigma) = -1 for every b "
            f"(N({n},{m}) = {necklace_count(m, n)} is even), but a single "
            f"{p.size}-cycle has sign +1"
        )
    else:
        obstructed = False
        code = VerdictReason.N_ODD_SIGNS_MATCH
        why = "n is odd" if n % 2 else f"m={m} = 1 mod 4"
        reason = (
            f"{why}: N({n},{m}) = {necklace_count(m, n)} is odd, so sgn(sigma) = +1 "
            "matches the sign of a single cycle and no contradiction arises"
        )
    return ObstructionReport(
        m=m,
        n=n,
        residue_class=residue,
        sgn_sigma=sgn,
        n_parity="even" if n % 2 == 0 else "odd",
        required_cycle_sign=required,
        obstructed=obstructed,
        reason_code=code,
        reason=reason,
    )

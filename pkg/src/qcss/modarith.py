"""Exact integer arithmetic over Z_N for odd N.

Factorization, mixed-radix digit maps, power permutations on prime fields,
and the composite digit permutation built from them. Everything here is
pure-integer and deterministic; no value ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import (
    EvenModulusError,
    ModulusTooSmallError,
    NotCoprimeError,
    NotPrimeError,
    OutOfRangeError,
    ShapeMismatchError,
)


@dataclass(frozen=True)
class Factorization:
    """Canonical prime decomposition n = p_0^e_0 * ... * p_{n-1}^e_{n-1}.

    Primes are strictly ascending and odd; every exponent is at least 1.
    """

    n: int
    primes: tuple[int, ...]
    exponents: tuple[int, ...]

    @property
    def least_prime(self) -> int:
        return self.primes[0]

    @property
    def largest_prime(self) -> int:
        return self.primes[-1]

    def digit_bases(self) -> tuple[int, ...]:
        """Mixed-radix base sequence: e_0 copies of p_0, then e_1 of p_1, ..."""
        return tuple(p for p, e in zip(self.primes, self.exponents) for _ in range(e))


@dataclass(frozen=True)
class DigitVector:
    """Mixed-radix digits of an element of Z_N, as (value, base) pairs.

    Most-significant digit first within each prime block; prime blocks run
    in ascending-prime order. The weight of a digit is the product of all
    later bases.
    """

    digits: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for value, base in self.digits:
            if base < 2 or not 0 <= value < base:
                raise ShapeMismatchError(f"digit {value} out of range for base {base}")

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.digits)

    @property
    def bases(self) -> tuple[int, ...]:
        return tuple(b for _, b in self.digits)


@dataclass(frozen=True)
class Permutation:
    """A bijection on Z_modulus stored as an index -> image table."""

    modulus: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.modulus or sorted(self.table) != list(range(self.modulus)):
            raise ShapeMismatchError("table is not a bijection on Z_%d" % self.modulus)

    def __call__(self, x: int) -> int:
        return self.table[x]


@dataclass(frozen=True)
class UniqueSolutionReport:
    """Outcome of the exhaustive unique-solution scan."""

    ok: bool
    violations: tuple[tuple[int, int, int], ...]  # (tau, c, solution_count)


def is_odd_prime(p: int) -> bool:
    """Trial-division primality check, restricted to odd primes."""
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> Factorization:
    """Factor an odd modulus n >= 3 by trial division.

    Deterministic and canonical: primes come out ascending.
    """
    if n < 3:
        raise ModulusTooSmallError(f"modulus must be >= 3, got {n}")
    if n % 2 == 0:
        raise EvenModulusError(f"modulus must be odd, got {n}")
    primes: list[int] = []
    exponents: list[int] = []
    m, d = n, 3
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            primes.append(d)
            exponents.append(e)
        d += 2
    if m > 1:
        primes.append(m)
        exponents.append(1)
    return Factorization(n, tuple(primes), tuple(exponents))


def to_digits(i: int, f: Factorization) -> DigitVector:
    """Expand i in the mixed radix given by f's digit bases."""
    if not 0 <= i < f.n:
        raise OutOfRangeError(f"{i} is not in [0, {f.n})")
    digits: list[tuple[int, int]] = []
    rem, weight = i, f.n
    for base in f.digit_bases():
        weight //= base
        digits.append((rem // weight, base))
        rem %= weight
    return DigitVector(tuple(digits))


def from_digits(d: DigitVector, f: Factorization) -> int:
    """Collapse a digit vector back to its value in Z_N; inverse of to_digits."""
    if d.bases != f.digit_bases():
        raise ShapeMismatchError(
            f"digit bases {d.bases} do not match the factorization of {f.n}"
        )
    value, weight = 0, f.n
    for v, base in d.digits:
        weight //= base
        value += v * weight
    return value


def power_perm(p: int, e: int) -> Permutation:
    """The permutation x -> x**e mod p on Z_p.

    Requires gcd(p-1, e) = 1, which is exactly the condition for the power
    map to be a bijection on Z_p.
    """
    if not is_odd_prime(p):
        raise NotPrimeError(f"{p} is not an odd prime")
    if e < 1:
        raise NotCoprimeError(f"exponent must be a positive integer, got {e}")
    if gcd(p - 1, e) != 1:
        raise NotCoprimeError(f"gcd({p} - 1, {e}) = {gcd(p - 1, e)} != 1")
    return Permutation(p, tuple(pow(x, e, p) for x in range(p)))


def default_exponent(p: int) -> int:
    """Smallest exponent e >= 2 with gcd(p-1, e) = 1."""
    if not is_odd_prime(p):
        raise NotPrimeError(f"{p} is not an odd prime")
    e = 2
    while gcd(p - 1, e) != 1:
        e += 1
    return e


def pi_perm(f: Factorization, e: int | None = None) -> Permutation:
    """Digit permutation on Z_N: the last digit goes through x -> x**e.

    Each i is expanded in mixed radix, only the final digit (base = largest
    prime) is permuted by the power map, and the digits are recombined.
    When N is prime this degenerates to power_perm(N, e). If e is omitted,
    the smallest admissible exponent >= 2 is used.
    """
    p_last = f.largest_prime
    if e is None:
        e = default_exponent(p_last)
    xi = power_perm(p_last, e)
    table: list[int] = []
    for i in range(f.n):
        dv = to_digits(i, f)
        digits = list(dv.digits)
        last_value, last_base = digits[-1]
        digits[-1] = (xi(last_value), last_base)
        table.append(from_digits(DigitVector(tuple(digits)), f))
    return Permutation(f.n, tuple(table))


def verify_unique_solution(f: Factorization, perm: Permutation) -> UniqueSolutionReport:
    """Exhaustively check the unique-solution property of a permutation.

    For every shift tau in Z_N and every scalar c in {2, ..., p0-1}, counts
    the x in Z_N solving perm(x + tau) = c * perm(x) (mod N). The property
    holds iff every count is exactly 1; violations list each offending
    (tau, c, count) triple.
    """
    if perm.modulus != f.n:
        raise ShapeMismatchError(
            f"permutation modulus {perm.modulus} does not match n = {f.n}"
        )
    n, p0 = f.n, f.least_prime
    table = perm.table
    violations: list[tuple[int, int, int]] = []
    for tau in range(n):
        shifted = table[tau:] + table[:tau]
        for c in range(2, p0):
            count = 0
            for x in range(n):
                if shifted[x] == c * table[x] % n:
                    count += 1
            if count != 1:
                violations.append((tau, c, count))
    return UniqueSolutionReport(not violations, tuple(violations))

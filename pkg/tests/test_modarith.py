import math
import random

import pytest

from qcss import (
    DigitVector,
    EvenModulusError,
    ModulusTooSmallError,
    NotCoprimeError,
    NotPrimeError,
    OutOfRangeError,
    Permutation,
    ShapeMismatchError,
    default_exponent,
    factorize,
    from_digits,
    pi_perm,
    power_perm,
    to_digits,
    verify_unique_solution,
)

ODD_SWEEP = list(range(3, 226, 2))

# Example-1 ground truth: the digit permutation on Z_15 with exponent 3.
PI15 = (0, 1, 3, 2, 4, 5, 6, 8, 7, 9, 10, 11, 13, 12, 14)


class TestFactorize:
    @pytest.mark.parametrize(
        "n,primes,exponents",
        [
            (15, (3, 5), (1, 1)),
            (35, (5, 7), (1, 1)),
            (45, (3, 5), (2, 1)),
            (9, (3,), (2,)),
            (105, (3, 5, 7), (1, 1, 1)),
            (121, (11,), (2,)),
            (3, (3,), (1,)),
        ],
    )
    def test_known_values(self, n, primes, exponents):
        f = factorize(n)
        assert f.n == n
        assert f.primes == primes
        assert f.exponents == exponents

    @pytest.mark.parametrize("n", [4, 10, 100])
    def test_even_rejected(self, n):
        with pytest.raises(EvenModulusError):
            factorize(n)

    @pytest.mark.parametrize("n", [1, 0, -5, 2])
    def test_too_small_rejected(self, n):
        with pytest.raises(ModulusTooSmallError):
            factorize(n)

    @pytest.mark.parametrize("n", ODD_SWEEP)
    def test_canonical(self, n):
        f = factorize(n)
        assert math.prod(p**e for p, e in zip(f.primes, f.exponents)) == n
        assert list(f.primes) == sorted(set(f.primes))
        assert all(p % 2 == 1 for p in f.primes)
        assert all(e >= 1 for e in f.exponents)

    def test_digit_bases(self):
        assert factorize(45).digit_bases() == (3, 3, 5)
        assert factorize(35).digit_bases() == (5, 7)


class TestDigits:
    def test_example_n15(self):
        f = factorize(15)
        d = to_digits(7, f)
        assert d.values == (1, 2)
        assert d.bases == (3, 5)
        assert from_digits(d, f) == 7

    def test_zero_expansion(self):
        for n in (15, 35, 45):
            f = factorize(n)
            assert to_digits(0, f).values == (0,) * len(f.digit_bases())

    def test_n35(self):
        f = factorize(35)
        assert to_digits(9, f).values == (1, 2)  # 9 = 7*1 + 2
        d = DigitVector(((2, 5), (6, 7)))
        assert from_digits(d, f) == 20  # 7*2 + 6
        assert to_digits(20, f) == d

    @pytest.mark.parametrize("n", [15, 35, 45, 63, 105, 225])
    def test_round_trip(self, n):
        f = factorize(n)
        for i in range(n):
            assert from_digits(to_digits(i, f), f) == i

    def test_mixed_radix_weights(self):
        # Digit weights are the products of all later bases.
        f = factorize(45)  # bases (3, 3, 5), weights (15, 5, 1)
        d = to_digits(38, f)  # 38 = 2*15 + 1*5 + 3
        assert d.values == (2, 1, 3)

    @pytest.mark.parametrize("i", [-1, 15, 99])
    def test_out_of_range(self, i):
        with pytest.raises(OutOfRangeError):
            to_digits(i, factorize(15))

    def test_shape_mismatch(self):
        d15 = to_digits(7, factorize(15))
        with pytest.raises(ShapeMismatchError):
            from_digits(d15, factorize(35))

    def test_digit_out_of_range_rejected(self):
        with pytest.raises(ShapeMismatchError):
            DigitVector(((3, 3), (0, 5)))
        with pytest.raises(ShapeMismatchError):
            DigitVector(((-1, 3),))


class TestPowerPerm:
    def test_known_tables(self):
        assert power_perm(5, 3).table == (0, 1, 3, 2, 4)
        assert power_perm(7, 5).table == (0, 1, 4, 5, 2, 3, 6)
        assert power_perm(3, 3).table == (0, 1, 2)

    def test_not_coprime(self):
        with pytest.raises(NotCoprimeError):
            power_perm(5, 2)
        with pytest.raises(NotCoprimeError):
            power_perm(7, 3)
        with pytest.raises(NotCoprimeError):
            power_perm(5, 0)

    @pytest.mark.parametrize("p", [4, 9, 15, 2, 1])
    def test_not_prime(self, p):
        with pytest.raises(NotPrimeError):
            power_perm(p, 3)

    def test_unique_solution_at_prime_scale(self):
        # For every admissible exponent, x -> x**e has the one-solution
        # property: xi(x + a) = c*xi(x) mod p pins down x for each (a, c).
        for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
            exponents = [e for e in range(1, 13) if math.gcd(p - 1, e) == 1]
            for e in exponents:
                xi = power_perm(p, e).table
                for a in range(p):
                    for c in range(2, p):
                        count = sum(1 for x in range(p) if xi[(x + a) % p] == c * xi[x] % p)
                        assert count == 1, (p, e, a, c)


class TestDefaultExponent:
    @pytest.mark.parametrize("p,e", [(3, 3), (5, 3), (7, 5), (11, 3), (13, 5)])
    def test_known(self, p, e):
        assert default_exponent(p) == e

    def test_smallest_admissible(self):
        for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
            e = default_exponent(p)
            assert e >= 2 and math.gcd(p - 1, e) == 1
            assert all(math.gcd(p - 1, d) != 1 for d in range(2, e))

    def test_not_prime(self):
        with pytest.raises(NotPrimeError):
            default_exponent(9)


class TestPiPerm:
    def test_example_n15(self):
        assert pi_perm(factorize(15), 3).table == PI15

    def test_n35_values(self):
        perm = pi_perm(factorize(35), 5)
        assert perm(2) == 4
        assert perm(9) == 11
        assert perm.table[:10] == (0, 1, 4, 5, 2, 3, 6, 7, 8, 11)

    def test_prime_identity_exponent(self):
        perm = pi_perm(factorize(13), 1)
        assert perm.table == tuple(range(13))

    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23])
    def test_prime_degenerates_to_power_perm(self, p):
        e = default_exponent(p)
        assert pi_perm(factorize(p), e).table == power_perm(p, e).table

    @pytest.mark.parametrize("n", ODD_SWEEP)
    def test_bijective_sweep(self, n):
        perm = pi_perm(factorize(n))
        assert sorted(perm.table) == list(range(n))
        assert perm(0) == 0

    def test_default_exponent_used(self):
        assert pi_perm(factorize(15)).table == PI15

    def test_only_last_digit_permuted(self):
        # Images agree with the input on every digit except the final one.
        f = factorize(45)
        perm = pi_perm(f)
        for i in range(45):
            before = to_digits(i, f).values
            after = to_digits(perm(i), f).values
            assert before[:-1] == after[:-1]

    def test_not_coprime(self):
        with pytest.raises(NotCoprimeError):
            pi_perm(factorize(15), 2)  # gcd(5-1, 2) = 2


class TestUniqueSolution:
    def test_tau0_c2(self, perm15):
        # With tau = 0 the equation collapses to (c-1)*pi(x) = 0, so the
        # only solution is the preimage of 0.
        f = factorize(15)
        count = sum(1 for x in range(15) if perm15(x) == 2 * perm15(x) % 15)
        assert count == 1
        report = verify_unique_solution(f, perm15)
        assert report.ok
        assert not any(v[0] == 0 and v[1] == 2 for v in report.violations)

    @pytest.mark.parametrize("n", [9, 15, 21, 25, 27, 35, 45, 63, 105])
    def test_default_permutation_sweep(self, n):
        f = factorize(n)
        report = verify_unique_solution(f, pi_perm(f))
        assert report.ok
        assert report.violations == ()

    def test_counts_match_independent_recount(self):
        # The scan must agree with a from-scratch recount on arbitrary
        # bijections, including any violations it finds.
        f = factorize(15)
        rng = random.Random(20240917)
        for _ in range(5):
            table = list(range(15))
            rng.shuffle(table)
            perm = Permutation(15, tuple(table))
            report = verify_unique_solution(f, perm)
            expected = []
            for tau in range(15):
                for c in range(2, 3):
                    count = sum(
                        1 for x in range(15) if table[(x + tau) % 15] == c * table[x] % 15
                    )
                    if count != 1:
                        expected.append((tau, c, count))
            assert list(report.violations) == expected
            assert report.ok == (not expected)

    def test_modulus_mismatch(self, perm15):
        with pytest.raises(ShapeMismatchError):
            verify_unique_solution(factorize(35), perm15)


class TestPermutationType:
    def test_rejects_non_bijection(self):
        with pytest.raises(ShapeMismatchError):
            Permutation(3, (0, 0, 2))
        with pytest.raises(ShapeMismatchError):
            Permutation(3, (0, 1))

"""Exact integer primitives: primality, Kronecker symbols, discriminants
and real quadratic characters.

Everything here works on Python ints, so no value is ever rounded.
"""

from dataclasses import dataclass
from math import isqrt

__all__ = [
    "DomainError",
    "ConsistencyError",
    "QuadraticCharacter",
    "is_prime",
    "primes_between",
    "kronecker_symbol",
    "is_squarefree",
    "is_fundamental_discriminant",
    "fundamental_discriminant",
    "real_quadratic_character",
    "char_eval",
]

PRIME_BOUND = 1 << 63

# Deterministic Miller-Rabin witness set, valid for n < 3.3e24.
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ConsistencyError(ArithmeticError):
    """Two routes that must agree did not, or an exact quantity was not
    integral. Always a bug, never an input problem."""


def is_prime(n):
    """Deterministic primality test for ``0 <= n < 2**63``."""
    if n < 0 or n >= PRIME_BOUND:
        raise DomainError(f"is_prime supports 0 <= n < 2**63, got {n}")
    if n < 2:
        return False
    for q in _WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_between(lo, hi):
    """Primes p with lo <= p <= hi, in increasing order."""
    if hi < 2:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, isqrt(hi) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytes(len(range(q * q, hi + 1, q)))
    return [q for q in range(max(lo, 2), hi + 1) if sieve[q]]


def kronecker_symbol(a, n):
    """Kronecker symbol (a/n).

    Conventions: (a/0) is 1 for a = +-1 and 0 otherwise; (a/-1) is -1 for
    a < 0 and 1 for a >= 0; (a/2) is 0 for even a, 1 for a = +-1 mod 8 and
    -1 for a = +-3 mod 8. For odd prime n it is the Legendre symbol.
    """
    if a == 0 and n == 0:
        raise DomainError("kronecker_symbol(0, 0) is undefined")
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor out powers of two from n
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        t = (n & -n).bit_length() - 1
        n >>= t
        if t % 2 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_squarefree(m):
    if m == 0:
        return False
    m = abs(m)
    q = 2
    while q * q <= m:
        if m % (q * q) == 0:
            return False
        if m % q == 0:
            m //= q
        q += 1
    return True


def is_fundamental_discriminant(d):
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminant(m):
    """Discriminant of Q(sqrt(m)) for squarefree m not in {0, 1}."""
    if m in (0, 1) or not is_squarefree(m):
        raise DomainError(f"need squarefree m != 0, 1; got {m}")
    return m if m % 4 == 1 else 4 * m


@dataclass(frozen=True)
class QuadraticCharacter:
    """Primitive real character n -> (D/n) of a fundamental discriminant D.

    ``D = 1`` is accepted and stands for the trivial character.
    """

    discriminant: int

    def __post_init__(self):
        d = self.discriminant
        if d != 1 and not is_fundamental_discriminant(d):
            raise DomainError(f"{d} is not a fundamental discriminant")

    @property
    def conductor(self):
        return abs(self.discriminant)

    @property
    def is_trivial(self):
        return self.discriminant == 1

    @property
    def is_even(self):
        return self.discriminant > 0

    def __call__(self, a):
        return kronecker_symbol(self.discriminant, a)


def real_quadratic_character(p):
    """The character of Q(sqrt(p))/Q for a prime p."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    return QuadraticCharacter(fundamental_discriminant(p))


def char_eval(chi, a):
    return kronecker_symbol(chi.discriminant, a)

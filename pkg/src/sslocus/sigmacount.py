"""Ibukiyama's count of F_p-rational superspecial abelian surfaces with
ker(lambda) = A[F], and the existence statements built on it.

By Li-Oort the set being counted is in bijection with the irreducible
components of the genus-2 supersingular locus that are defined over F_p,
so ``sigma2_count(p).total`` is also that component count.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .arithmetic import (
    ConsistencyError,
    DomainError,
    is_prime,
    kronecker_symbol,
    real_quadratic_character,
)
from .specialvalues import bernoulli_b2_definitional, class_number_field

__all__ = [
    "Branch",
    "Ingredients",
    "SigmaCountBreakdown",
    "Existence",
    "ExistenceStatus",
    "sigma2_count",
    "component_existence",
    "sigma_prime_existence",
]

SPECIAL_PRIMES = {2: 1, 3: 1, 5: 1}


class Branch(str, Enum):
    SPECIAL = "special"
    P_1_MOD_4 = "eq_2_2"
    P_3_MOD_4 = "eq_2_3"


@dataclass(frozen=True)
class Ingredients:
    b2: Fraction
    h_p: int
    h_2p: int
    h_3p: int
    leg2p: int


@dataclass(frozen=True)
class SigmaCountBreakdown:
    p: int
    branch: Branch
    total: int
    bernoulli_term: Fraction = None
    h_p_term: Fraction = None
    h_2p_term: Fraction = None
    h_3p_term: Fraction = None
    ingredients: Ingredients = None

    @property
    def terms(self):
        return (self.bernoulli_term, self.h_p_term, self.h_2p_term, self.h_3p_term)


def _ingredients(p, cache=None):
    chi = real_quadratic_character(p)
    # 2p and 3p are squarefree only because p > 3
    assert p > 3
    return Ingredients(
        b2=bernoulli_b2_definitional(chi),
        h_p=class_number_field(p, cache),
        h_2p=class_number_field(2 * p, cache),
        h_3p=class_number_field(3 * p, cache),
        leg2p=kronecker_symbol(2, p),
    )


def sigma2_count(p, cache=None):
    """|Sigma_2(F_p)| with its four-term breakdown.

    p = 2, 3, 5 return the tabulated value 1; the closed formula is only
    evaluated for p >= 7. Raises ConsistencyError if the terms do not add up
    to a positive integer.
    """
    if p < 0 or not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p in SPECIAL_PRIMES:
        return SigmaCountBreakdown(p, Branch.SPECIAL, SPECIAL_PRIMES[p])

    ing = _ingredients(p, cache)
    e = ing.leg2p
    if p % 4 == 1:
        branch = Branch.P_1_MOD_4
        terms = (
            Fraction(9 - 2 * e, 96) * ing.b2,
            Fraction(ing.h_p, 16),
            Fraction(ing.h_2p, 8),
            Fraction((3 + e) * ing.h_3p, 12),
        )
    else:
        branch = Branch.P_3_MOD_4
        terms = (
            ing.b2 / 96,
            Fraction((1 - e) * ing.h_p, 16),
            Fraction(ing.h_2p, 8),
            Fraction(ing.h_3p, 12),
        )
    total = sum(terms, Fraction(0))
    if total.denominator != 1 or total < 1:
        raise ConsistencyError(f"p={p}: formula gives {total}, not a positive integer")
    return SigmaCountBreakdown(p, branch, int(total), *terms, ingredients=ing)


class Existence(str, Enum):
    NONEMPTY = "nonempty"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ExistenceStatus:
    value: Existence
    reason: str

    @property
    def nonempty(self):
        return self.value is Existence.NONEMPTY


# reason tags
LAMBDA_PRODUCT = "Lambda_n: E0^n with product principal polarization"
SIGMA2_COUNT = "Sigma_2: explicit count is positive"
SIGMA2_PRODUCT = "Sigma_n: product of copies of a Sigma_2(F_p) surface"
WEIL_RESTRICTION = "4 | n: Weil restriction of a Sigma_{n/2} member from F_{p^2}"
FERMAT_POINT = "(-1/p) = 1: F_p-point on a^(p+1) + b^(p+1) = 0, then products"
NECESSITY_OPEN = "neither 4 | n nor (-1/p) = 1; necessity is only conjectured"


def component_existence(n, p):
    """Whether some component of the dimension-n supersingular locus is
    defined over F_p. Always nonempty; the reason records the argument."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if p < 0 or not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if n % 2:
        return ExistenceStatus(Existence.NONEMPTY, LAMBDA_PRODUCT)
    if n == 2:
        if sigma2_count(p).total >= 1:
            return ExistenceStatus(Existence.NONEMPTY, SIGMA2_COUNT)
        raise ConsistencyError(f"Sigma_2(F_{p}) counted as empty")
    return ExistenceStatus(Existence.NONEMPTY, SIGMA2_PRODUCT)


def sigma_prime_existence(n, p):
    """Status of the set of (A, lambda) over F_p with pi_A^2 = -p and
    ker(lambda) = A[F], for even n.

    Only sufficient conditions are known, so the answer is either nonempty
    or unknown, never empty.
    """
    if n < 2 or n % 2:
        raise DomainError(f"n must be even and positive, got {n}")
    if p < 0 or not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if n % 4 == 0:
        return ExistenceStatus(Existence.NONEMPTY, WEIL_RESTRICTION)
    if kronecker_symbol(-1, p) == 1:
        return ExistenceStatus(Existence.NONEMPTY, FERMAT_POINT)
    return ExistenceStatus(Existence.UNKNOWN, NECESSITY_OPEN)

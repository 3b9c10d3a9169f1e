"""Exact computations around the F_p-rational components of the Siegel
supersingular locus in genus 2.

Submodules:

* ``arithmetic``: primality, Kronecker symbols, quadratic characters.
* ``specialvalues``: B_{2,chi} and imaginary quadratic class numbers, each
  by two independent methods.
* ``sigmacount``: Ibukiyama's formula for |Sigma_2(F_p)| and the existence
  statements for F_p-rational components.
* ``dieudonne``: truncated Dieudonne lattices, the Fermat locus on P^1 and
  the Weil restriction doubling.
* ``cli``: the ``sslocus`` command.
"""

from .arithmetic import (
    ConsistencyError,
    DomainError,
    QuadraticCharacter,
    char_eval,
    fundamental_discriminant,
    is_prime,
    kronecker_symbol,
    real_quadratic_character,
)
from .specialvalues import (
    bernoulli_b2_definitional,
    bernoulli_b2_even,
    class_number_analytic,
    class_number_field,
    class_number_forms,
    reduced_forms,
)
from .sigmacount import component_existence, sigma2_count, sigma_prime_existence
from .dieudonne import (
    fermat_locus,
    kernel_condition,
    lagrangian_basis,
    lines_in_reduction,
    make_step1_lattice,
    weil_double,
)

__version__ = "0.1.0"

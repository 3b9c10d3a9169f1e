# The generalized Bernoulli number B_{2,chi} for chi the character of Q(sqrt(p)).

from sslocus.arithmetic import QuadraticCharacter, primes_between, real_quadratic_character
from sslocus.specialvalues import bernoulli_b2_definitional, bernoulli_b2_even

for p in primes_between(2, 60):
    chi = real_quadratic_character(p)
    b_def = bernoulli_b2_definitional(chi)
    b_even = bernoulli_b2_even(chi)
    print(f"p = {p:3d}  D = {chi.discriminant:4d}  B_2,chi = {b_def}  (even-sum route: {b_even})")

# For odd characters B_2 vanishes; the definitional route shows it.
print("chi_-4:", bernoulli_b2_definitional(QuadraticCharacter(-4)))

# The Dieudonne module M0 of Res E, where F = V = sqrt(p), truncated at p^3.

import random

from sslocus.dieudonne import (
    lagrangian_relations,
    kernel_condition,
    lagrangian_basis,
    lines_in_reduction,
    make_step1_lattice,
    random_r_automorphism,
    reduced_pairing_matrix,
)

p, k = 7, 3
L = make_step1_lattice(p, k)
for row in L.gram:
    print(row)

# Scramble by a random R-linear change of basis, then recover a basis
# with <e1, e2> = <sqrt(p) e1, sqrt(p) e2> = 0 and <e1, sqrt(p) e2> = <sqrt(p) e1, e2> = 1.
scrambled = L.transform(random_r_automorphism(p, k, random.Random(1)))
for row in scrambled.gram:
    print(row)
e1, e2 = lagrangian_basis(scrambled)
print("e1 =", e1, " e2 =", e2, " relations:", lagrangian_relations(scrambled, e1, e2))

# The pairing (x, y) = <x, F y> is alternating on M0 / V M0 ...
print(reduced_pairing_matrix(L))

# ... so every one of the p + 1 index-p sublattices is isotropic, and each
# gives a surface with ker(lambda) = A[F].
for line in lines_in_reduction(L):
    print(line.point, kernel_condition(line, L))

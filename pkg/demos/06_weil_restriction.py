# Weil restriction from F_{p^2} to F_p, modelled on Dieudonne modules: a
# module with Frobenius phi (phi^2 = -p) doubles to one with Frobenius
# [[0, phi], [phi, 0]].

from sslocus.dieudonne import weil_double

p = 5
phi = ((0, -1), (p, 0))
J = ((0, 1), (-1, 0))
d = weil_double(phi, J, p, 3)
for row in d.frobenius:
    print(row)

# The radical of <x, F y> mod p splits into the two block radicals, each
# of dimension c; the doubled kernel has order p^(2c).
print("block radical dims:", d.block_kernel_dims)
print("kernel basis:", d.kernel_basis)
print("kernel order:", d.kernel_order)

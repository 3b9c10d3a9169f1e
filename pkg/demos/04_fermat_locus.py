# The curve a^(p+1) + b^(p+1) = 0 on P^1.  Its F_p-points give isogenies
# defined over F_p; there are some exactly when -1 is a square mod p.

from sslocus.arithmetic import kronecker_symbol, primes_between
from sslocus.dieudonne import fermat_locus
from sslocus.sigmacount import sigma_prime_existence

for p in primes_between(2, 30):
    pts = fermat_locus(p, 1)
    status = sigma_prime_existence(2, p)
    print(f"p = {p:2d}  (-1/p) = {kronecker_symbol(-1, p):2d}  F_p-points: "
          f"{', '.join(map(str, pts)) or '-':14s}  status: {status.value}")

# Over F_{p^2} the locus always has p + 1 points.
for p in (2, 3, 5, 7):
    pts = fermat_locus(p, 2)
    print(p, len(pts), [str(x) for x in pts])

# How many irreducible components of the genus-2 supersingular locus are
# defined over F_p?  By Li-Oort they match the F_p-rational points of Sigma_2,
# and Ibukiyama's closed formula counts those.

from sslocus.arithmetic import primes_between
from sslocus.sigmacount import sigma2_count

# The small primes are tabulated, not computed from the formula.
for p in (2, 3, 5):
    print(p, sigma2_count(p).total)

# From p = 7 on the count is a sum of four rational terms.  Each term is
# usually fractional; the sum always comes out integral.
b = sigma2_count(13)
print(b.branch.value, b.ingredients)
print(" + ".join(str(t) for t in b.terms), "=", b.total)

# For larger p the Bernoulli term carries most of the count.
for p in primes_between(7, 120):
    b = sigma2_count(p)
    print(f"{p:4d} {b.branch.value}  {b.total:3d}  " + "  ".join(f"{str(t):>7}" for t in b.terms))

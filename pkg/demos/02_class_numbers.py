# Class numbers of imaginary quadratic fields, two ways.

from sslocus.arithmetic import fundamental_discriminant
from sslocus.specialvalues import (
    ClassNumberCache,
    class_number_analytic,
    class_number_field,
    reduced_forms,
)

# Reduced forms are canonical class representatives.
for D in (-20, -23, -56, -104):
    print(D, [str(f) for f in reduced_forms(D)])

# Dirichlet's finite sum gives the same numbers without any forms.
for m in (5, 14, 21, 26, 39, 105):
    D = fundamental_discriminant(-m)
    print(f"Q(sqrt(-{m})): D = {D}, forms {class_number_field(m)}, analytic {class_number_analytic(D)}")

# A cache can be shared between calls and persisted as JSON.
cache = ClassNumberCache()
for m in range(1, 40):
    try:
        class_number_field(m, cache)
    except ValueError:
        pass  # m not squarefree
print(len(cache), "class numbers cached; first few:", cache.items()[:5])

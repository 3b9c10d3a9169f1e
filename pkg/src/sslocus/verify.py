"""Invariant suites run by ``sslocus verify``.

Each suite yields ``Check`` results; a check carries the number of cases
examined and, on failure, the first counterexample.
"""

import random
from dataclasses import dataclass

from .arithmetic import (
    ConsistencyError,
    DomainError,
    is_fundamental_discriminant,
    kronecker_symbol,
    primes_between,
    real_quadratic_character,
)
from .dieudonne import (
    lagrangian_relations,
    fermat_locus,
    kernel_condition,
    lagrangian_basis,
    lines_in_reduction,
    make_step1_lattice,
    random_r_automorphism,
    weil_double,
)
from .sigmacount import Branch, sigma2_count, sigma_prime_existence
from .specialvalues import (
    bernoulli_b2_definitional,
    bernoulli_b2_even,
    class_number_analytic,
    reduced_forms,
)

SCOPES = ("formula", "classnumbers", "bernoulli", "fermat", "lattice")

# exhaustive F_{p^2} scans grow like p^2
FERMAT_E2_CAP = 200


@dataclass
class Check:
    name: str
    checked: int = 0
    counterexample: str = None

    @property
    def ok(self):
        return self.counterexample is None

    def fail(self, msg):
        if self.counterexample is None:
            self.counterexample = msg


def check_formula(pmax, cache=None):
    integral = Check("formula: total is a positive integer equal to the sum of its terms")
    branch = Check("formula: branch matches p mod 4")
    for p in primes_between(2, pmax):
        integral.checked += 1
        try:
            b = sigma2_count(p, cache)
        except ConsistencyError as exc:
            integral.fail(str(exc))
            continue
        if b.total < 1:
            integral.fail(f"p={p}: total {b.total}")
        if b.branch is not Branch.SPECIAL and sum(b.terms) != b.total:
            integral.fail(f"p={p}: terms sum to {sum(b.terms)}, total {b.total}")
        branch.checked += 1
        want = Branch.SPECIAL if p < 7 else (Branch.P_1_MOD_4 if p % 4 == 1 else Branch.P_3_MOD_4)
        if b.branch is not want:
            branch.fail(f"p={p}: branch {b.branch.value}")
    return [integral, branch]


def check_classnumbers(dmax):
    """forms vs analytic for every fundamental D with -dmax < D < -4."""
    agree = Check(f"classnumbers: forms = analytic for fundamental -{dmax} < D < -4")
    shape = Check("classnumbers: reduced forms are primitive, reduced, distinct, of discriminant D")
    for D in range(-dmax + 1, -4):
        if not is_fundamental_discriminant(D):
            continue
        forms = reduced_forms_checked(D, shape)
        agree.checked += 1
        try:
            ha = class_number_analytic(D)
        except ConsistencyError as exc:
            agree.fail(str(exc))
            continue
        if len(forms) != ha:
            agree.fail(f"D={D}: forms {len(forms)}, analytic {ha}")
    return [agree, shape]


def reduced_forms_checked(D, check):
    forms = reduced_forms(D)
    check.checked += 1
    if len(set(forms)) != len(forms):
        check.fail(f"D={D}: duplicate forms")
    for f in forms:
        if f.discriminant != D or not f.is_primitive() or not f.is_reduced():
            check.fail(f"D={D}: bad form {f}")
    return forms


def check_bernoulli(pmax):
    agree = Check(f"bernoulli: definitional = even-character sum for primes < {pmax}")
    positive = Check("bernoulli: B_2,chi > 0")
    for p in primes_between(2, pmax - 1):
        chi = real_quadratic_character(p)
        b1, b2 = bernoulli_b2_definitional(chi), bernoulli_b2_even(chi)
        agree.checked += 1
        positive.checked += 1
        if b1 != b2:
            agree.fail(f"p={p}: {b1} vs {b2}")
        if b2 <= 0:
            positive.fail(f"p={p}: {b2}")
    return [agree, positive]


def check_fermat(pmax):
    e2cap = min(pmax, FERMAT_E2_CAP)
    over_fp2 = Check(f"fermat: |locus over F_p^2| = p + 1 for p < {e2cap}")
    over_fp = Check(f"fermat: |locus over F_p| is 1, 2 or 0 by p = 2, 1 mod 4, 3 mod 4 (p <= {pmax})")
    legendre = Check("fermat: F_p-locus nonempty iff (-1/p) = 1, matching sigma_prime_existence(2, p)")
    for p in primes_between(2, e2cap - 1):
        over_fp2.checked += 1
        n = len(fermat_locus(p, 2))
        if n != p + 1:
            over_fp2.fail(f"p={p}: {n} points")
    for p in primes_between(2, pmax):
        pts = fermat_locus(p, 1)
        want = 1 if p == 2 else (2 if p % 4 == 1 else 0)
        over_fp.checked += 1
        if len(pts) != want:
            over_fp.fail(f"p={p}: {len(pts)} points, expected {want}")
        if p > 2:
            legendre.checked += 1
            has = bool(pts)
            if has != (kronecker_symbol(-1, p) == 1) or has != sigma_prime_existence(2, p).nonempty:
                legendre.fail(f"p={p}: locus nonempty={has}")
    return [over_fp2, over_fp, legendre]


def _phi_blocks(p, c):
    """phi = diag of c copies of [[0, -1], [p, 0]], so phi^2 = -p."""
    n = 2 * c
    phi = [[0] * n for _ in range(n)]
    J = [[0] * n for _ in range(n)]
    for i in range(c):
        phi[2 * i][2 * i + 1] = -1
        phi[2 * i + 1][2 * i] = p
        J[2 * i][2 * i + 1] = 1
        J[2 * i + 1][2 * i] = -1
    return phi, J


def check_lattice(pmax, k=3, scrambles=20, seed=0):
    rng = random.Random(seed)
    lagrange = Check("lattice: Lagrangian basis of scrambled base lattices has the expected pairings")
    total = Check("lattice: every index-p sublattice of the base lattice is isotropic for <x, F y>")
    double = Check("lattice: Weil doubling squares to -p with block-sum kernel")
    for p in primes_between(3, pmax):
        L0 = make_step1_lattice(p, k)
        for _ in range(scrambles):
            L = L0.transform(random_r_automorphism(p, k, rng))
            lagrange.checked += 1
            try:
                e1, e2 = lagrangian_basis(L)
            except (ConsistencyError, DomainError) as exc:
                lagrange.fail(f"p={p}: {exc}")
                continue
            rel = lagrangian_relations(L, e1, e2)
            if rel != (0, 0, 1, 1):
                lagrange.fail(f"p={p}: relations {rel}")
        lines = lines_in_reduction(L0)
        total.checked += len(lines)
        if len(lines) != p + 1:
            total.fail(f"p={p}: {len(lines)} lines")
        for line in lines:
            if not kernel_condition(line, L0):
                total.fail(f"p={p}: line {line.point}")
        for c in (1, 2):
            phi, J = _phi_blocks(p, c)
            double.checked += 1
            try:
                d = weil_double(phi, J, p, k)
            except ConsistencyError as exc:
                double.fail(f"p={p}, c={c}: {exc}")
                continue
            if d.kernel_dim != 2 * c:
                double.fail(f"p={p}, c={c}: kernel dimension {d.kernel_dim}")
    return [lagrange, total, double]


def run(scope, pmax, cache=None):
    scopes = SCOPES if scope == "all" else (scope,)
    checks = []
    for s in scopes:
        if s == "formula":
            checks += check_formula(pmax, cache)
        elif s == "classnumbers":
            checks += check_classnumbers(pmax)
        elif s == "bernoulli":
            checks += check_bernoulli(pmax)
        elif s == "fermat":
            checks += check_fermat(pmax)
        elif s == "lattice":
            checks += check_lattice(pmax)
        else:
            raise ValueError(f"unknown scope {s!r}")
    return checks

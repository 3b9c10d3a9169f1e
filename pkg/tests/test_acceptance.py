"""Acceptance criteria, one test per criterion.

Every criterion is exact; runtime bounds are checked where one is stated.
Run ``python tests/test_acceptance.py`` for a plain PASS/FAIL listing, or
``pytest tests/test_acceptance.py`` (the listing is appended to the
terminal summary).
"""

import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from sslocus.arithmetic import (
    fundamental_discriminant,
    is_fundamental_discriminant,
    kronecker_symbol,
    primes_between,
    real_quadratic_character,
)
from sslocus.dieudonne import (
    lagrangian_relations,
    fermat_locus,
    kernel_condition,
    lagrangian_basis,
    lines_in_reduction,
    make_step1_lattice,
    random_r_automorphism,
    weil_double,
)
from sslocus.sigmacount import Branch, sigma2_count
from sslocus.specialvalues import (
    ClassNumberCache,
    bernoulli_b2_definitional,
    bernoulli_b2_even,
    class_number_analytic,
    class_number_forms,
)

RESULTS = []


def _timed(fn):
    t0 = time.perf_counter()
    detail = fn()
    return detail, time.perf_counter() - t0


def ac1():
    totals = {p: sigma2_count(p).total for p in (2, 3, 5)}
    assert totals == {2: 1, 3: 1, 5: 1}, totals
    return "sigma2(2), sigma2(3), sigma2(5) = 1, 1, 1"


def ac2():
    b7, b13 = sigma2_count(7), sigma2_count(13)
    i7, i13 = b7.ingredients, b13.ingredients
    assert b7.total == 1 and b13.total == 2
    assert i7.b2 == 16 and (i7.h_2p, i7.h_3p) == (4, 4)
    assert fundamental_discriminant(-14) == -56 and fundamental_discriminant(-21) == -84
    assert class_number_forms(-56) == 4 and class_number_forms(-84) == 4
    assert i13.b2 == 4 and (i13.h_p, i13.h_2p, i13.h_3p) == (2, 6, 4)
    assert [fundamental_discriminant(-m) for m in (13, 26, 39)] == [-52, -104, -39]
    return "sigma2(7) = 1, sigma2(13) = 2 with the stated ingredients"


def ac3():
    primes = primes_between(7, 4999)
    cache = ClassNumberCache()
    for p in primes:
        b = sigma2_count(p, cache)
        assert b.branch in (Branch.P_1_MOD_4, Branch.P_3_MOD_4)
        s = sum(b.terms, Fraction(0))
        assert s.denominator == 1 and s == b.total >= 1, p
    return f"{len(primes)} primes in [7, 5000) give positive integers"


def ac4():
    n = 0
    for D in range(-19999, -4):
        if is_fundamental_discriminant(D):
            n += 1
            assert class_number_forms(D) == class_number_analytic(D), D
    return f"{n} fundamental discriminants agree"


def ac5():
    primes = primes_between(2, 1999)
    for p in primes:
        chi = real_quadratic_character(p)
        a, b = bernoulli_b2_definitional(chi), bernoulli_b2_even(chi)
        assert a == b and a > 0, (p, a, b)
    return f"{len(primes)} characters agree, all positive"


def ac6():
    for p in primes_between(2, 199):
        assert len(fermat_locus(p, 2)) == p + 1, p
    assert len(fermat_locus(2, 1)) == 1
    odd = primes_between(3, 999)
    for p in odd:
        pts = fermat_locus(p, 1)
        assert len(pts) == (2 if p % 4 == 1 else 0), p
        assert bool(pts) == (kronecker_symbol(-1, p) == 1), p
    return f"F_p^2 counts for p < 200; F_p counts for {len(odd)} odd p < 1000"


def ac7():
    rng = random.Random(20161)
    k = 3
    for p in (3, 5, 7, 11, 13):
        L0 = make_step1_lattice(p, k)
        for _ in range(100):
            L = L0.transform(random_r_automorphism(p, k, rng))
            e1, e2 = lagrangian_basis(L)
            assert lagrangian_relations(L, e1, e2) == (0, 0, 1, 1), p
    return "500 scrambled lattices reconstructed"


def ac8():
    n = 0
    for p in primes_between(3, 49):
        L = make_step1_lattice(p)
        lines = lines_in_reduction(L)
        assert len(lines) == p + 1
        for line in lines:
            assert kernel_condition(line, L), (p, str(line.point))
            n += 1
    return f"{n} sublattices isotropic"


def _block_phi(p, c):
    n = 2 * c
    phi = [[0] * n for _ in range(n)]
    J = [[0] * n for _ in range(n)]
    for i in range(c):
        phi[2 * i][2 * i + 1] = -1
        phi[2 * i + 1][2 * i] = p
        J[2 * i][2 * i + 1] = 1
        J[2 * i + 1][2 * i] = -1
    return phi, J


def ac9():
    k = 3
    for c in (1, 2):
        for p in (5, 7, 13):
            N = p**k
            phi, J = _block_phi(p, c)
            d = weil_double(phi, J, p, k)
            F = d.frobenius
            n = len(F)
            sq = [[sum(F[i][m] * F[m][j] for m in range(n)) % N for j in range(n)] for i in range(n)]
            assert sq == [[(-p if i == j else 0) % N for j in range(n)] for i in range(n)]
            assert d.block_kernel_dims == (c, c) and d.kernel_dim == 2 * c
    return "c in {1, 2}, p in {5, 7, 13}"


def _table(jobs):
    cmd = [sys.executable, "-m", "sslocus", "table", "--from", "2", "--to", "500", "--jobs", str(jobs)]
    return subprocess.run(cmd, capture_output=True, check=True).stdout


def ac10():
    first, second, par = _table(1), _table(1), _table(8)
    assert first == second, "two serial runs differ"
    assert first == par, "jobs=1 and jobs=8 differ"
    assert first.count(b"\n") == 1 + len(primes_between(2, 500))
    return f"{len(first)} bytes identical across runs and jobs"


CRITERIA = [
    ("AC1", "special primes 2, 3, 5", ac1, None),
    ("AC2", "derived anchors p = 7, 13", ac2, 1.0),
    ("AC3", "integrality sweep 7 <= p < 5000", ac3, 120.0),
    ("AC4", "class number dual oracle -20000 < D < -4", ac4, 60.0),
    ("AC5", "Bernoulli dual oracle p < 2000", ac5, 60.0),
    ("AC6", "Fermat locus laws", ac6, 30.0),
    ("AC7", "Lagrangian basis reconstruction", ac7, 10.0),
    ("AC8", "every index-p sublattice isotropic, p < 50", ac8, 5.0),
    ("AC9", "Weil doubling harness", ac9, 5.0),
    ("AC10", "table determinism", ac10, None),
]


def run_criterion(name, title, fn, limit):
    try:
        detail, elapsed = _timed(fn)
        ok = limit is None or elapsed < limit
        if not ok:
            detail += f"; took {elapsed:.1f}s, limit {limit:.0f}s"
    except AssertionError as exc:
        ok, detail, elapsed = False, f"assertion failed: {exc}", 0.0
    line = f"{'PASS' if ok else 'FAIL'} {name} {title}: {detail} [{elapsed:.2f}s]"
    RESULTS.append(line)
    return ok, line


@pytest.mark.parametrize("name, title, fn, limit", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, title, fn, limit):
    ok, line = run_criterion(name, title, fn, limit)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failures = 0
    for crit in CRITERIA:
        ok, line = run_criterion(*crit)
        print(line, flush=True)
        failures += not ok
    sys.exit(1 if failures else 0)

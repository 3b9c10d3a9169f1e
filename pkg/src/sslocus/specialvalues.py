"""Generalized Bernoulli numbers B_{2,chi} and imaginary quadratic class
numbers, each computed by two unrelated routes.

Primary routes: the definitional Bernoulli sum and counting reduced binary
quadratic forms. Oracle routes: the collapsed sum for even characters and
Dirichlet's finite character sum.
"""

import json
import os
import tempfile
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .arithmetic import (
    ConsistencyError,
    DomainError,
    char_eval,
    fundamental_discriminant,
    is_fundamental_discriminant,
    is_squarefree,
    kronecker_symbol,
)

__all__ = [
    "BinaryQuadraticForm",
    "ClassNumberCache",
    "bernoulli_b2_definitional",
    "bernoulli_b2_even",
    "reduced_forms",
    "class_number_forms",
    "class_number_analytic",
    "class_number_field",
    "default_cache",
]

def bernoulli_b2_definitional(chi):
    """B_{2,chi} = f * sum_{a=1}^{f} chi(a) B_2(a/f), with B_2(x) = x^2 - x + 1/6.

    Expanding B_2 gives (1/f) S2 - S1 + (f/6) S0 with S_j = sum chi(a) a^j;
    no parity of chi is assumed.
    """
    if chi.is_trivial:
        raise DomainError("B_{2,chi} is only computed for nontrivial chi")
    f = chi.conductor
    s0 = s1 = s2 = 0
    for a in range(1, f + 1):
        c = char_eval(chi, a)
        if c:
            s0 += c
            s1 += c * a
            s2 += c * a * a
    return Fraction(s2, f) - s1 + Fraction(f * s0, 6)


def bernoulli_b2_even(chi):
    """B_{2,chi} for an even nontrivial chi via (1/f) sum chi(a) a^2.

    The linear and constant parts of B_2 drop out because chi sums to zero
    and, being even, is symmetric under a -> f - a.
    """
    if chi.is_trivial:
        raise DomainError("B_{2,chi} is only computed for nontrivial chi")
    if not chi.is_even:
        raise DomainError(f"character of discriminant {chi.discriminant} is odd")
    f = chi.conductor
    s = sum(char_eval(chi, a) * a * a for a in range(1, f))
    return Fraction(s, f)


@dataclass(frozen=True)
class BinaryQuadraticForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self):
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self):
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self):
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def _check_negative_fundamental(d):
    if d >= 0 or not is_fundamental_discriminant(d):
        raise DomainError(f"need a negative fundamental discriminant, got {d}")


def reduced_forms(D):
    """All reduced primitive forms of discriminant D < 0, one per class.

    Sorted by (a, |b|, -b) so that the sequence is canonical.
    """
    _check_negative_fundamental(D)
    forms = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        four_a = 4 * a
        # b must share the parity of D
        for b in range(-a + (a + D) % 2, a + 1, 2):
            num = b * b - D
            if num % four_a:
                continue
            c = num // four_a
            if c < a:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append(BinaryQuadraticForm(a, b, c))
    forms.sort(key=lambda f: (f.a, abs(f.b), -f.b))
    return forms


def class_number_forms(D):
    return len(reduced_forms(D))


_spf = [0, 1]


def _smallest_prime_factors(n):
    global _spf
    if len(_spf) > n:
        return _spf
    size = max(n + 1, 2 * len(_spf))
    spf = list(range(size))
    for q in range(2, isqrt(size - 1) + 1):
        if spf[q] == q:
            for j in range(q * q, size, q):
                if spf[j] == j:
                    spf[j] = q
    _spf = spf
    return spf


def _character_table(D, n):
    """[chi_D(1), ..., chi_D(n)], filled multiplicatively from prime values."""
    spf = _smallest_prime_factors(n)
    table = [0, 1] + [0] * (n - 1)
    for r in range(2, n + 1):
        q = spf[r]
        if q == r:
            table[r] = kronecker_symbol(D, r)
        else:
            table[r] = table[q] * table[r // q]
    return table[1:]


def class_number_analytic(D):
    """h(D) = (sum_{0<r<|D|/2} chi_D(r)) / (2 - chi_D(2)) for D < -4."""
    _check_negative_fundamental(D)
    if D >= -4:
        raise DomainError("analytic class number is only supported for D < -4")
    n = -D
    s = sum(_character_table(D, (n - 1) // 2))
    den = 2 - kronecker_symbol(D, 2)
    h, rem = divmod(s, den)
    if rem or h <= 0:
        raise ConsistencyError(f"character sum {s} / {den} is not a positive integer (D={D})")
    return h


class ClassNumberCache:
    """Thread-safe map from negative fundamental discriminant to h(D).

    Optionally backed by a JSON object file ``{"-20": 2, ...}``. Saving is
    load-merge-save and replaces the file atomically.
    """

    def __init__(self, path=None):
        self.path = path
        self._entries = {}
        self._lock = threading.Lock()
        self.dirty = False
        if path is not None:
            self._merge(self._read(path), mark_dirty=False)

    @staticmethod
    def _read(path):
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except FileNotFoundError:
            return {}
        if not isinstance(raw, dict):
            raise DomainError(f"cache file {path} does not hold a JSON object")
        out = {}
        for key, value in raw.items():
            d, h = int(key), int(value)
            if d >= 0 or not is_fundamental_discriminant(d) or h <= 0:
                raise DomainError(f"bad cache entry {key!r}: {value!r}")
            out[d] = h
        return out

    def _merge(self, entries, mark_dirty=True):
        with self._lock:
            for d, h in entries.items():
                old = self._entries.get(d)
                if old is None:
                    self._entries[d] = h
                    self.dirty = self.dirty or mark_dirty
                elif old != h:
                    raise ConsistencyError(f"cache conflict for D={d}: {old} vs {h}")

    def get(self, D):
        with self._lock:
            return self._entries.get(D)

    def put(self, D, h):
        self._merge({D: h})

    def update(self, entries):
        self._merge(dict(entries))

    def items(self):
        with self._lock:
            return sorted(self._entries.items(), reverse=True)

    def __len__(self):
        with self._lock:
            return len(self._entries)

    def __contains__(self, D):
        with self._lock:
            return D in self._entries

    def save(self, path=None):
        path = path or self.path
        if path is None:
            raise DomainError("no cache path given")
        self._merge(self._read(path), mark_dirty=False)
        data = {str(d): h for d, h in self.items()}
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sslocus-cache-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(data, fh, indent=0, sort_keys=False)
                fh.write("\n")
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise
        self.dirty = False


default_cache = ClassNumberCache()


def class_number_field(m, cache=None):
    """Class number of Q(sqrt(-m)) for squarefree m >= 1."""
    if m < 1 or not is_squarefree(m):
        raise DomainError(f"need squarefree m >= 1, got {m}")
    if cache is None:
        cache = default_cache
    D = fundamental_discriminant(-m)
    h = cache.get(D)
    if h is None:
        h = class_number_forms(D)
        cache.put(D, h)
    return h

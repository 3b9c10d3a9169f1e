"""Finite models of the Dieudonne-module arguments for superspecial surfaces.

Modules are truncated: the ring R = Z_p[sqrt(p)] is replaced by
R/(p^k) = {u + v sqrt(p) : u, v in Z/p^k}, and a rank-2 free R-module M0 is
stored through its Z_p-basis (e1, sqrt(p) e1, e2, sqrt(p) e2). Vectors are
4-tuples of integers in that basis; matrices act on column vectors.

Contents:

* ``PrimePowerField``, ``ProjectivePoint`` and ``fermat_locus``: the curve
  a^(p+1) + b^(p+1) = 0 on P^1 over F_p or F_{p^2}.
* ``RLattice`` with ``make_step1_lattice``, ``lagrangian_basis``,
  ``lines_in_reduction`` and ``kernel_condition``: the symplectic lattice of
  Res E with F = V = sqrt(p), and its index-p sublattices.
* ``weil_double``: doubling of a module with Frobenius phi (phi^2 = -p)
  into [[0, phi], [phi, 0]], the Weil restriction model.
"""

import random
from dataclasses import dataclass, field
from itertools import product

from .arithmetic import ConsistencyError, DomainError, is_prime, kronecker_symbol

__all__ = [
    "DegenerateFormError",
    "PrimePowerField",
    "ProjectivePoint",
    "projective_line",
    "fermat_locus",
    "TruncatedRingElement",
    "RLattice",
    "Line",
    "DoubledModule",
    "make_step1_lattice",
    "r_linear_matrix",
    "random_r_automorphism",
    "lagrangian_basis",
    "lagrangian_relations",
    "reduced_pairing_matrix",
    "lines_in_reduction",
    "kernel_condition",
    "weil_double",
]

DEFAULT_LEVEL = 3


class DegenerateFormError(DomainError):
    """The pairing is not perfect, so no symplectic basis exists."""


# ---------------------------------------------------------------------------
# matrices over Z/N, as tuples of row tuples


def _matmul(A, B, N):
    Bt = list(zip(*B))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % N for col in Bt) for row in A)


def _matvec(A, x, N):
    return tuple(sum(a * b for a, b in zip(row, x)) % N for row in A)


def _transpose(A):
    return tuple(zip(*A))


def _reduce(A, N):
    return tuple(tuple(x % N for x in row) for row in A)


def _identity(n, scale=1, N=None):
    out = tuple(tuple(scale if i == j else 0 for j in range(n)) for i in range(n))
    return out if N is None else _reduce(out, N)


def _bilinear(x, G, y, N):
    return sum(xi * gij * yj for xi, row in zip(x, G) for gij, yj in zip(row, y)) % N


def _nullspace_mod_p(A, p):
    """Basis of {x : A x = 0} over F_p, from the reduced row echelon form."""
    rows = [[x % p for x in row] for row in A]
    ncols = len(A[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[free] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free] % p
        basis.append(tuple(v))
    return basis


def _rank_mod_p(A, p):
    return len(A[0]) - len(_nullspace_mod_p(A, p))


def _is_alternating(G, N):
    n = len(G)
    return all(G[i][i] % N == 0 for i in range(n)) and all(
        (G[i][j] + G[j][i]) % N == 0 for i in range(n) for j in range(i + 1, n)
    )


# ---------------------------------------------------------------------------
# F_p, F_{p^2} and the projective line


@dataclass(frozen=True)
class PrimePowerField:
    """F_p (e = 1) or F_p[t]/(t^2 - c1 t - c0) (e = 2).

    Elements are e-tuples of residues (x0,) or (x0, x1) for x0 + x1 t. The
    default quadratic modulus is t^2 = r with r the least non-residue for odd
    p, and t^2 = t + 1 for p = 2.
    """

    p: int
    e: int = 1
    modulus: tuple = None

    def __post_init__(self):
        p, e = self.p, self.e
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if e not in (1, 2):
            raise DomainError(f"extension degree must be 1 or 2, got {e}")
        if e == 1:
            if self.modulus is not None:
                raise DomainError("F_p takes no modulus")
            return
        if self.modulus is None:
            if p == 2:
                mod = (1, 1)
            else:
                r = next(r for r in range(2, p) if kronecker_symbol(r, p) == -1)
                mod = (r, 0)
            object.__setattr__(self, "modulus", mod)
        c0, c1 = (x % p for x in self.modulus)
        object.__setattr__(self, "modulus", (c0, c1))
        if any((x * x - c1 * x - c0) % p == 0 for x in range(p)):
            raise DomainError(f"t^2 - {c1} t - {c0} is reducible mod {p}")

    @property
    def order(self):
        return self.p**self.e

    @property
    def zero(self):
        return (0,) * self.e

    @property
    def one(self):
        return (1,) + (0,) * (self.e - 1)

    def elements(self):
        return list(product(range(self.p), repeat=self.e))

    def __call__(self, *coeffs):
        coeffs = tuple(coeffs) + (0,) * (self.e - len(coeffs))
        return tuple(c % self.p for c in coeffs)

    def add(self, x, y):
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a % self.p for a in x)

    def mul(self, x, y):
        p = self.p
        if self.e == 1:
            return (x[0] * y[0] % p,)
        c0, c1 = self.modulus
        x0, x1 = x
        y0, y1 = y
        hi = x1 * y1
        return ((x0 * y0 + c0 * hi) % p, (x0 * y1 + x1 * y0 + c1 * hi) % p)

    def pow(self, x, n):
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            n >>= 1
        return result

    def inv(self, x):
        if x == self.zero:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(x, self.order - 2)

    def format(self, x):
        if self.e == 1:
            return str(x[0])
        x0, x1 = x
        if x1 == 0:
            return str(x0)
        t = "t" if x1 == 1 else f"{x1}t"
        return t if x0 == 0 else f"{x0}+{t}"


@dataclass(frozen=True)
class ProjectivePoint:
    """[a : b] on P^1, kept with its first nonzero coordinate equal to 1."""

    field: PrimePowerField
    a: tuple
    b: tuple

    @classmethod
    def of(cls, F, a, b):
        a = F(a) if isinstance(a, int) else tuple(a)
        b = F(b) if isinstance(b, int) else tuple(b)
        if a != F.zero:
            return cls(F, F.one, F.mul(b, F.inv(a)))
        if b != F.zero:
            return cls(F, F.zero, F.one)
        raise DomainError("[0:0] is not a projective point")

    def __str__(self):
        return f"[{self.field.format(self.a)}:{self.field.format(self.b)}]"


def projective_line(F):
    """All p^e + 1 points: [1:b] for b in F in element order, then [0:1]."""
    pts = [ProjectivePoint(F, F.one, b) for b in F.elements()]
    pts.append(ProjectivePoint(F, F.zero, F.one))
    return pts


def fermat_locus(p, e=1):
    """Points of P^1(F_{p^e}) with a^(p+1) + b^(p+1) = 0, by scanning the
    whole line."""
    F = PrimePowerField(p, e)
    out = []
    for pt in projective_line(F):
        s = F.add(F.pow(pt.a, p + 1), F.pow(pt.b, p + 1))
        if s == F.zero:
            out.append(pt)
    return out


# ---------------------------------------------------------------------------
# R/(p^k) and the lattice M0


@dataclass(frozen=True)
class TruncatedRingElement:
    """u + v sqrt(p) in Z[sqrt(p)]/(p^k)."""

    u: int
    v: int
    p: int
    k: int

    def __post_init__(self):
        N = self.p**self.k
        object.__setattr__(self, "u", self.u % N)
        object.__setattr__(self, "v", self.v % N)

    def _coerce(self, other):
        if isinstance(other, int):
            return TruncatedRingElement(other, 0, self.p, self.k)
        if (other.p, other.k) != (self.p, self.k):
            raise DomainError("ring elements from different truncations")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return TruncatedRingElement(self.u + other.u, self.v + other.v, self.p, self.k)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedRingElement(-self.u, -self.v, self.p, self.k)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        u = self.u * other.u + self.p * self.v * other.v
        v = self.u * other.v + self.v * other.u
        return TruncatedRingElement(u, v, self.p, self.k)

    __rmul__ = __mul__

    def is_unit(self):
        return self.u % self.p != 0

    def inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        N = self.p**self.k
        norm = (self.u * self.u - self.p * self.v * self.v) % N
        ninv = pow(norm, -1, N)
        return TruncatedRingElement(self.u * ninv, -self.v * ninv, self.p, self.k)

    def matrix(self):
        """Action on the Z_p-basis (1, sqrt(p)), as a 2x2 matrix."""
        return ((self.u, self.p * self.v), (self.v, self.u))

    def __str__(self):
        return f"{self.u}+{self.v}*sqrt({self.p})"


def _sqrt_p_matrix(p, k):
    N = p**k
    return _reduce(((0, p, 0, 0), (1, 0, 0, 0), (0, 0, 0, p), (0, 0, 1, 0)), N)


@dataclass(frozen=True)
class RLattice:
    """Free rank-2 module over R/(p^k) with an alternating Z_p-pairing.

    ``gram[i][j]`` is <b_i, b_j> for the basis (e1, sqrt(p) e1, e2,
    sqrt(p) e2); ``sqrt_p`` is the matrix of multiplication by sqrt(p), which
    is also how F and V act. Construction checks that the pairing is
    alternating and that sqrt(p) is self-adjoint. Perfection is reported by
    ``is_perfect`` and enforced by the operations that need it.
    """

    p: int
    k: int
    gram: tuple
    sqrt_p: tuple = None

    def __post_init__(self):
        p, k = self.p, self.k
        if p == 2 or not is_prime(p):
            raise DomainError(f"lattices need an odd prime, got {p}")
        if k < 2:
            raise DomainError(f"truncation level must be >= 2, got {k}")
        N = p**k
        object.__setattr__(self, "gram", _reduce(self.gram, N))
        S = _sqrt_p_matrix(p, k) if self.sqrt_p is None else _reduce(self.sqrt_p, N)
        object.__setattr__(self, "sqrt_p", S)
        if len(self.gram) != 4 or any(len(r) != 4 for r in self.gram):
            raise DomainError("gram must be 4x4")
        if not _is_alternating(self.gram, N):
            raise DomainError("gram is not alternating")
        if _matmul(_transpose(S), self.gram, N) != _matmul(self.gram, S, N):
            raise DomainError("<sqrt(p) x, y> != <x, sqrt(p) y>")
        if _matmul(S, S, N) != _identity(4, p, N):
            raise DomainError("sqrt_p matrix does not square to p")

    @property
    def modulus(self):
        return self.p**self.k

    def is_perfect(self):
        return _rank_mod_p(self.gram, self.p) == 4

    def pair(self, x, y):
        return _bilinear(x, self.gram, y, self.modulus)

    def times_sqrt_p(self, x):
        return _matvec(self.sqrt_p, x, self.modulus)

    def scale(self, a, x):
        """a . x for a in R/(p^k)."""
        N = self.modulus
        sx = self.times_sqrt_p(x)
        return tuple((a.u * xi + a.v * yi) % N for xi, yi in zip(x, sx))

    def psi(self, x, y):
        """The R-valued form with <x, y> = tr((2 sqrt(p))^-1 psi(x, y)).

        Writing psi = u + v sqrt(p), the trace formula gives u = <x, sqrt(p) y>
        and v = <x, y>.
        """
        return TruncatedRingElement(self.pair(x, self.times_sqrt_p(y)), self.pair(x, y), self.p, self.k)

    def transform(self, A):
        """The same module seen through the new basis given by the columns of A."""
        N = self.modulus
        return RLattice(self.p, self.k, _matmul(_matmul(_transpose(A), self.gram, N), A, N), self.sqrt_p)


def make_step1_lattice(p, k=DEFAULT_LEVEL):
    """M0 with <e1, sqrt(p) e2> = <sqrt(p) e1, e2> = 1 and <e1, e2> =
    <sqrt(p) e1, sqrt(p) e2> = 0."""
    if p == 2:
        raise DomainError("the lattice model needs 2 invertible; p = 2 is unsupported")
    G = (
        (0, 0, 0, 1),
        (0, 0, 1, 0),
        (0, -1, 0, 0),
        (-1, 0, 0, 0),
    )
    return RLattice(p, k, G)


def r_linear_matrix(alpha, beta, gamma, delta):
    """4x4 matrix of the R-linear map e1 -> alpha e1 + gamma e2,
    e2 -> beta e1 + delta e2."""
    ma, mb, mc, md = (x.matrix() for x in (alpha, beta, gamma, delta))
    top = tuple(ma[i] + mb[i] for i in range(2))
    bottom = tuple(mc[i] + md[i] for i in range(2))
    return top + bottom


def random_r_automorphism(p, k, rng=None):
    """A uniformly drawn invertible R-linear map, as a 4x4 matrix."""
    rng = rng or random.Random()
    N = p**k
    while True:
        a, b, c, d = (TruncatedRingElement(rng.randrange(N), rng.randrange(N), p, k) for _ in range(4))
        if (a * d - b * c).is_unit():
            return r_linear_matrix(a, b, c, d)


def lagrangian_relations(L, e1, e2):
    """(<e1,e2>, <sqrt(p)e1, sqrt(p)e2>, <e1, sqrt(p)e2>, <sqrt(p)e1, e2>) mod p^k."""
    se1, se2 = L.times_sqrt_p(e1), L.times_sqrt_p(e2)
    return (L.pair(e1, e2), L.pair(se1, se2), L.pair(e1, se2), L.pair(se1, e2))


def lagrangian_basis(L):
    """An R-basis (e1, e2) with psi(e1, e2) = 1.

    Then {e1, sqrt(p) e2, sqrt(p) e1, e2} is a Lagrangian Z_p-basis:
    <e1, e2> = <sqrt(p) e1, sqrt(p) e2> = 0 and <e1, sqrt(p) e2> =
    <sqrt(p) e1, e2> = 1. Raises DegenerateFormError for a pairing that is
    not perfect.
    """
    if not L.is_perfect():
        raise DegenerateFormError("pairing is not perfect mod p")
    b1, b2 = (1, 0, 0, 0), (0, 0, 1, 0)
    w = L.psi(b1, b2)
    if not w.is_unit():
        raise DegenerateFormError(f"psi(b1, b2) = {w} is not a unit")
    e1, e2 = b1, L.scale(w.inverse(), b2)
    if lagrangian_relations(L, e1, e2) != (0, 0, 1, 1):
        raise ConsistencyError(f"basis check failed: {lagrangian_relations(L, e1, e2)}")
    return e1, e2


def reduced_pairing_matrix(L):
    """(x, y) = <x, F y> on M0 / V M0, in the basis (e1 mod V, e2 mod V)."""
    idx = (0, 2)
    basis = [tuple(int(i == j) for j in range(4)) for i in idx]
    return tuple(
        tuple(L.pair(x, L.times_sqrt_p(y)) % L.p for y in basis) for x in basis
    )


@dataclass(frozen=True)
class Line:
    """A line of M0 / V M0 and its preimage M, with V M0 < M < M0 of index p."""

    point: ProjectivePoint
    generator: tuple
    basis: tuple = field(repr=False)


def _line_lift(point):
    a, b = point.a[0], point.b[0]
    return (a, 0, b, 0)


def _sublattice_basis(point, p):
    if point.a[0] == 1:
        return ((1, 0, point.b[0], 0), (0, 1, 0, 0), (0, 0, 0, 1), (0, 0, p, 0))
    return ((0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1), (p, 0, 0, 0))


def lines_in_reduction(L):
    """The p + 1 index-p sublattices between sqrt(p) M0 and M0, one per
    point [a:b] of P^1(F_p) via the line spanned by a e1 + b e2."""
    F = PrimePowerField(L.p, 1)
    return [
        Line(pt, _line_lift(pt), _sublattice_basis(pt, L.p)) for pt in projective_line(F)
    ]


def kernel_condition(line, L):
    """True iff the sublattice for ``line`` is isotropic for (x, y) = <x, F y>
    mod p, which is the Dieudonne form of ker(lambda) = A[F].

    Checks both (v, v) = 0 for the spanning vector and the vanishing of the
    pairing on a full Z_p-basis of M.
    """
    if isinstance(line, Line):
        line = line.point
    if line.field.e != 1 or line.field.p != L.p:
        raise DomainError("line must be a point of P^1(F_p) for the lattice's p")
    p = L.p
    v = _line_lift(line)
    if L.pair(v, L.times_sqrt_p(v)) % p:
        return False
    basis = _sublattice_basis(line, p)
    fb = [L.times_sqrt_p(y) for y in basis]
    return all(L.pair(x, fy) % p == 0 for x in basis for fy in fb)


# ---------------------------------------------------------------------------
# Weil restriction doubling


@dataclass(frozen=True)
class DoubledModule:
    c: int
    p: int
    k: int
    frobenius: tuple
    gram: tuple
    kernel_basis: tuple
    block_kernel_dims: tuple

    @property
    def kernel_dim(self):
        return len(self.kernel_basis)

    @property
    def kernel_order(self):
        return self.p**self.kernel_dim


def _block(A, B, C, D):
    return tuple(ra + rb for ra, rb in zip(A, B)) + tuple(rc + rd for rc, rd in zip(C, D))


def weil_double(phi, gram1, p, k=DEFAULT_LEVEL):
    """Double a rank-2c module with Frobenius ``phi`` and pairing ``gram1``.

    The result has Frobenius [[0, phi], [phi, 0]] and pairing
    diag(gram1, gram1). Checked on the way out: the new Frobenius squares to
    -p, and the radical mod p of (x, y) = <x, F y> is the direct sum of the
    two block radicals, each of dimension c and equal to ker(phi mod p).
    So the doubled polarization kernel is the product of the block kernels
    and has order p^(2c).
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    N = p**k
    phi, gram1 = _reduce(phi, N), _reduce(gram1, N)
    n = len(phi)
    if n % 2 or n == 0 or any(len(r) != n for r in phi):
        raise DomainError("phi must be a square matrix of even size")
    if len(gram1) != n or any(len(r) != n for r in gram1):
        raise DomainError("gram1 must match phi in size")
    c = n // 2
    if _matmul(phi, phi, N) != _identity(n, -p, N):
        raise DomainError("phi^2 != -p")
    if not _is_alternating(gram1, N):
        raise DomainError("gram1 is not alternating")

    zero = _identity(n, 0)
    frob = _block(zero, phi, phi, zero)
    gram = _block(gram1, zero, zero, gram1)
    if _matmul(frob, frob, N) != _identity(2 * n, -p, N):
        raise ConsistencyError("doubled Frobenius does not square to -p")

    block_ker = _nullspace_mod_p(_matmul(gram1, phi, N), p)
    frob_ker = _nullspace_mod_p(phi, p)
    kernel = _nullspace_mod_p(_matmul(gram, frob, N), p)
    pad = (0,) * n
    summed = [v + pad for v in block_ker] + [pad + v for v in block_ker]
    Q = _matmul(gram, frob, p)
    if len(kernel) != 2 * len(block_ker) or any(any(_matvec(Q, v, p)) for v in summed):
        raise ConsistencyError("radical of the doubled pairing is not the block sum")
    if len(block_ker) != c or len(frob_ker) != c:
        raise ConsistencyError(f"block radical has dimension {len(block_ker)}, expected {c}")
    if _rank_mod_p(tuple(zip(*(block_ker + frob_ker))), p) != c:
        raise ConsistencyError("block radical differs from ker(phi mod p)")
    return DoubledModule(c, p, k, frob, gram, tuple(kernel), (len(block_ker), len(block_ker)))

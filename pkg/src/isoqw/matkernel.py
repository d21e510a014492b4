"""Exact small-matrix arithmetic and complex 2x2 numerics.

Two layers live here:

* an exact scalar field Q(sqrt(3)) represented as pairs of ``Fraction``s,
  together with matrix/vector helpers over it.  All group theory in the
  package runs on this layer, so equality is decidable and results are
  bit-reproducible.  Rational matrices are the b == 0 subfield.
* floating-point complex 2x2 operations (polar decomposition, eigenphases,
  tolerance-aware predicates) used by the quantum-coin layer.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import NotPositiveDefinite, NotUnitary

DEFAULT_TOL = 1e-10

# ---------------------------------------------------------------------------
# exact scalars: a + b*sqrt(3) with a, b rational
# ---------------------------------------------------------------------------

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class QSqrt3:
    """Element a + b*sqrt(3) of the real quadratic field Q(sqrt(3))."""

    a: Fraction
    b: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "QSqrt3":
        if isinstance(x, QSqrt3):
            return x
        if isinstance(x, (int, Fraction)):
            return QSqrt3(Fraction(x))
        raise TypeError(f"cannot coerce {type(x)} into QSqrt3")

    def __add__(self, other):
        o = QSqrt3.of(other)
        return QSqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QSqrt3.of(other))

    def __rsub__(self, other):
        return QSqrt3.of(other) + (-self)

    def __mul__(self, other):
        o = QSqrt3.of(other)
        return QSqrt3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "QSqrt3":
        # (a + b√3)^(-1) = (a - b√3)/(a² - 3b²); the norm is nonzero for
        # nonzero elements because √3 is irrational.
        n = self.a * self.a - 3 * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(3))")
        return QSqrt3(self.a / n, -self.b / n)

    def __truediv__(self, other):
        return self * QSqrt3.of(other).inverse()

    def __rtruediv__(self, other):
        return QSqrt3.of(other) * self.inverse()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt(3)."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # mixed signs: compare a² with 3b²; sign follows the larger magnitude
        cmp = self.a * self.a - 3 * self.b * self.b
        big_is_a = cmp > 0
        if cmp == 0:  # impossible for nonzero rationals, kept for safety
            return 0
        return (1 if self.a > 0 else -1) if big_is_a else (1 if self.b > 0 else -1)

    def __lt__(self, other):
        return (self - QSqrt3.of(other)).sign() < 0

    def __le__(self, other):
        return (self - QSqrt3.of(other)).sign() <= 0

    def __gt__(self, other):
        return (self - QSqrt3.of(other)).sign() > 0

    def __ge__(self, other):
        return (self - QSqrt3.of(other)).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * _SQRT3

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt3"
        return f"{self.a}+{self.b}*sqrt3"

    @staticmethod
    def parse(s: str) -> "QSqrt3":
        s = s.strip()
        if "sqrt3" in s:
            head, _, _ = s.partition("*sqrt3")
            if "+" in head[1:]:
                cut = head.rindex("+")
                return QSqrt3(Fraction(head[:cut]), Fraction(head[cut + 1:]))
            return QSqrt3(Fraction(0), Fraction(head))
        return QSqrt3(Fraction(s))


ZERO = QSqrt3(Fraction(0))
ONE = QSqrt3(Fraction(1))
HALF = QSqrt3(Fraction(1, 2))
SQRT3_HALF = QSqrt3(Fraction(0), Fraction(1, 2))


def q(x) -> QSqrt3:
    return QSqrt3.of(x)


# ---------------------------------------------------------------------------
# exact matrices (tuples of tuples of QSqrt3), any small size
# ---------------------------------------------------------------------------

ExactMatrix = tuple  # tuple of row tuples of QSqrt3
ExactVector = tuple  # tuple of QSqrt3


def exact_matrix(rows: Iterable[Iterable]) -> ExactMatrix:
    return tuple(tuple(QSqrt3.of(x) for x in row) for row in rows)


def exact_vector(entries: Iterable) -> ExactVector:
    return tuple(QSqrt3.of(x) for x in entries)


def mat_identity(n: int) -> ExactMatrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def mat_zero(n: int) -> ExactMatrix:
    return tuple(tuple(ZERO for _ in range(n)) for _ in range(n))


def mat_mul(m1: ExactMatrix, m2: ExactMatrix) -> ExactMatrix:
    n, k, p = len(m1), len(m2), len(m2[0])
    return tuple(
        tuple(sum((m1[i][t] * m2[t][j] for t in range(k)), ZERO) for j in range(p))
        for i in range(n)
    )


def mat_vec(m: ExactMatrix, v: ExactVector) -> ExactVector:
    return tuple(sum((m[i][j] * v[j] for j in range(len(v))), ZERO) for i in range(len(m)))


def mat_add(m1: ExactMatrix, m2: ExactMatrix) -> ExactMatrix:
    return tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(m1, m2))


def mat_sub(m1: ExactMatrix, m2: ExactMatrix) -> ExactMatrix:
    return tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(m1, m2))


def mat_neg(m: ExactMatrix) -> ExactMatrix:
    return tuple(tuple(-a for a in row) for row in m)


def mat_scale(c, m: ExactMatrix) -> ExactMatrix:
    c = QSqrt3.of(c)
    return tuple(tuple(c * a for a in row) for row in m)


def mat_transpose(m: ExactMatrix) -> ExactMatrix:
    return tuple(tuple(m[i][j] for i in range(len(m))) for j in range(len(m[0])))


def is_orthogonal(m: ExactMatrix) -> bool:
    return mat_mul(mat_transpose(m), m) == mat_identity(len(m))


def element_order(m: ExactMatrix, cap: int = 64) -> int:
    """Smallest k >= 1 with m^k = I; raises if not found within cap."""
    ident = mat_identity(len(m))
    p = m
    for k in range(1, cap + 1):
        if p == ident:
            return k
        p = mat_mul(p, m)
    raise ValueError("matrix order exceeds cap (not finite order?)")


def mat_to_float(m: ExactMatrix) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in m], dtype=float)


def vec_to_float(v: ExactVector) -> np.ndarray:
    return np.array([float(x) for x in v], dtype=float)


def rref(rows: Sequence[Sequence[QSqrt3]]):
    """Reduced row echelon form over Q(sqrt3).

    Returns (rref_rows, pivot_columns). Input is not modified.
    """
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in m[:r]], pivots


def nullspace(m: ExactMatrix) -> list[ExactVector]:
    """Exact kernel basis of an n x k matrix over Q(sqrt3)."""
    if not m:
        return []
    red, pivots = rref(m)
    ncols = len(m[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# complex 2x2 layer
# ---------------------------------------------------------------------------

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class Complex2Matrix:
    """2x2 complex matrix with tolerance-aware predicates."""

    matrix: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("Complex2Matrix requires shape (2, 2)")
        object.__setattr__(self, "matrix", m)

    def is_unitary(self) -> bool:
        m = self.matrix
        return np.linalg.norm(m.conj().T @ m - ID2) <= self.tol

    def is_special_unitary(self) -> bool:
        return self.is_unitary() and abs(np.linalg.det(self.matrix) - 1.0) <= self.tol

    def is_rank_one(self) -> bool:
        s = np.linalg.svd(self.matrix, compute_uv=False)
        return s[0] > self.tol and s[1] <= self.tol

    def is_zero(self) -> bool:
        return bool(np.abs(self.matrix).max() <= self.tol)


def _canonical_sign(v: np.ndarray, tol: float) -> complex:
    """Sign s in {+1,-1} making the first nonzero entry of column 0 lie in the
    right half plane (ties toward +i)."""
    col = v[:, 0]
    for x in col:
        if abs(x) > tol:
            if abs(x.real) > tol:
                return 1.0 if x.real > 0 else -1.0
            return 1.0 if x.imag > 0 else -1.0
    return 1.0


def polar_decompose(m, tol: float = DEFAULT_TOL):
    """Polar factorization m = unitary @ modulus with modulus = sqrt(m† m) PSD.

    Works for singular input.  Full-rank matrices have a unique unitary
    factor; rank-deficient ones are completed deterministically with a
    det = +1 convention and a canonical overall sign.
    """
    if isinstance(m, Complex2Matrix):
        m = m.matrix
    m = np.asarray(m, dtype=complex)
    u, s, vh = np.linalg.svd(m)
    modulus = vh.conj().T @ np.diag(s) @ vh
    if s[-1] > tol * max(1.0, s[0]):
        return u @ vh, modulus
    if s[0] <= tol:  # zero matrix: identity by convention
        return ID2.copy(), modulus
    # rank one: map right singular vector to left one, complete on the
    # orthogonal complement with determinant 1, then fix the global sign.
    v1 = vh[0].conj()
    u1 = u[:, 0]
    v2 = np.array([-np.conj(v1[1]), np.conj(v1[0])])
    u2 = np.array([-np.conj(u1[1]), np.conj(u1[0])])
    unitary = np.outer(u1, v1.conj()) + np.outer(u2, v2.conj())
    det = np.linalg.det(unitary)
    # rotate the completed column only, so m = V|m| is untouched
    unitary = np.outer(u1, v1.conj()) + np.outer(u2 / det, v2.conj())
    unitary = _canonical_sign(unitary, tol) * unitary
    return unitary, modulus


def eigenphases(u, tol: float = DEFAULT_TOL):
    """Phases (w_plus, w_minus) in (-pi, pi], sorted decreasing, of a unitary."""
    if isinstance(u, Complex2Matrix):
        u = u.matrix
    u = np.asarray(u, dtype=complex)
    if np.linalg.norm(u.conj().T @ u - ID2) > tol:
        raise NotUnitary("eigenphases requires a unitary matrix")
    lam = np.linalg.eigvals(u)
    w = np.angle(lam)
    w_sorted = np.sort(w)[::-1]
    return float(w_sorted[0]), float(w_sorted[1])


def sqrt_positive(p, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Principal square root of a symmetric positive definite matrix (float)."""
    if isinstance(p, tuple):
        p = mat_to_float(p)
    p = np.asarray(p, dtype=float)
    if np.linalg.norm(p - p.T) > tol * max(1.0, np.abs(p).max()):
        raise NotPositiveDefinite("matrix is not symmetric")
    w, v = np.linalg.eigh(p)
    if w.min() <= tol:
        raise NotPositiveDefinite("matrix is not positive definite")
    return v @ np.diag(np.sqrt(w)) @ v.T


def su2_from_quaternion(x: np.ndarray) -> np.ndarray:
    """Unit quaternion (4 reals, any nonzero norm) -> SU(2) matrix."""
    x = np.asarray(x, dtype=float)
    n = np.linalg.norm(x)
    if n == 0:
        return ID2.copy()
    a, b, c, d = x / n
    return a * ID2 + 1j * (b * PAULI_X + c * PAULI_Y + d * PAULI_Z)


def haar_su2(rng: np.random.Generator) -> np.ndarray:
    return su2_from_quaternion(rng.normal(size=4))


def haar_u2(rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    qm, r = np.linalg.qr(z)
    return qm @ np.diag(np.diag(r) / np.abs(np.diag(r)))

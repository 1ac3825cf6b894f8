"""Exact linear algebra over the rationals, prime fields and residue rings.

Vectors are plain tuples of scalars.  Over ``Q`` a scalar is a
:class:`fractions.Fraction`; over ``F_p`` it is an ``int`` in ``[0, p)``.
Submodules of ``Z/m_1 + ... + Z/m_k`` are kept in Howell normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np
import sympy

Vector = tuple


class FieldMismatch(ValueError):
    pass


class Field:
    """Base class for the two supported coefficient fields."""

    char: int = 0

    def __call__(self, value) -> object:
        raise NotImplementedError

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def vector(self, values: Iterable) -> Vector:
        return tuple(self(v) for v in values)

    def zero_vector(self, n: int) -> Vector:
        z = self.zero()
        return (z,) * n


@dataclass(frozen=True)
class Rationals(Field):
    char: int = 0

    def __call__(self, value) -> Fraction:
        if type(value) is Fraction:
            return value
        if isinstance(value, str):
            return Fraction(value.strip().replace("−", "-"))
        if isinstance(value, float):
            raise TypeError("floats are not exact scalars")
        return Fraction(value)

    def inv(self, a: Fraction) -> Fraction:
        return 1 / a

    def format(self, a: Fraction) -> str:
        return str(a)

    def to_json(self) -> dict:
        return {"kind": "Q"}

    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int = 2

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def char(self) -> int:  # type: ignore[override]
        return self.p

    def __call__(self, value) -> int:
        if type(value) is int:
            return value % self.p
        if isinstance(value, str):
            value = Fraction(value.strip().replace("−", "-"))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in F_{self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, float):
            raise TypeError("floats are not exact scalars")
        return int(value) % self.p

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)

    def format(self, a: int) -> str:
        return str(a)

    def to_json(self) -> dict:
        return {"kind": "Fp", "p": self.p}

    def __str__(self) -> str:
        return f"F{self.p}"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(obj: dict) -> Field:
    kind = obj.get("kind")
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return PrimeField(int(obj["p"]))
    raise ValueError(f"unknown field kind {kind!r}")


def parse_field(text: str) -> Field:
    """Parse ``Q``, ``F5`` or ``Fp5`` style names."""
    t = text.strip().upper()
    if t in ("Q", "QQ"):
        return QQ
    if t.startswith("FP"):
        return PrimeField(int(t[2:]))
    if t.startswith("F") or t.startswith("GF"):
        return PrimeField(int(t.lstrip("GF")))
    raise ValueError(f"unknown field {text!r}")


# ---------------------------------------------------------------------------
# dense matrices over a field

def _reduce_rows(rows: list[list], field: Field) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form; returns (nonzero rows, pivots)."""
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    p = field.char
    for c in range(ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = field.inv(pr[c])
        if p:
            pr[:] = [x * inv % p for x in pr]
        else:
            pr[:] = [x * inv for x in pr]
        support = [(k, b) for k, b in enumerate(pr) if b]
        for i in range(len(rows)):
            if i == r:
                continue
            ri = rows[i]
            f = ri[c]
            if not f:
                continue
            if p:
                for k, b in support:
                    ri[k] = (ri[k] - f * b) % p
            else:
                for k, b in support:
                    ri[k] = ri[k] - f * b
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(matrix: Sequence[Sequence], field: Field) -> tuple[list[Vector], list[int]]:
    rows = [[field(x) for x in row] for row in matrix]
    out, pivots = _reduce_rows(rows, field)
    return [tuple(r) for r in out], pivots


def transpose(matrix: Sequence[Sequence], ncols: int | None = None) -> list[tuple]:
    if not matrix:
        return [()] * (ncols or 0)
    return [tuple(col) for col in zip(*matrix)]


def nullspace(matrix: Sequence[Sequence], ncols: int, field: Field) -> list[Vector]:
    """Basis of ``{x : matrix @ x = 0}`` for a matrix with ``ncols`` columns."""
    red, pivots = rref(matrix, field) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    zero, one = field.zero(), field.one()
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f] if not field.char else (-row[f]) % field.char
        basis.append(tuple(v))
    return basis


def left_kernel(images: Sequence[Sequence], target_dim: int, field: Field) -> list[Vector]:
    """Basis of ``{x : sum_i x_i * images[i] = 0}``."""
    n = len(images)
    if n == 0:
        return []
    return nullspace(transpose(images, n), n, field)


def mat_vec(matrix: Sequence[Sequence], x: Sequence, field: Field) -> Vector:
    p = field.char
    out = tuple(sum(a * b for a, b in zip(row, x)) for row in matrix)
    return tuple(v % p for v in out) if p else out


def vec_mat(x: Sequence, matrix: Sequence[Sequence], field: Field) -> Vector:
    """Row vector times matrix: ``sum_i x_i * matrix[i]``."""
    if not matrix:
        return ()
    return lin_comb(x, matrix, field, len(matrix[0]))


def lin_comb(coeffs: Sequence, vectors: Sequence[Sequence], field: Field, n: int) -> Vector:
    p = field.char
    acc = [field.zero()] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for k, x in enumerate(v):
            if x:
                acc[k] += c * x
    return tuple(a % p for a in acc) if p else tuple(acc)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence], field: Field) -> list[Vector]:
    n = len(b[0]) if b else 0
    return [vec_mat(row, b, field) for row in a]


def solve_linear(A: Sequence[Sequence], b: Sequence, field: Field) -> Vector | None:
    """One exact solution of ``A @ x = b``, or ``None`` when inconsistent."""
    m = len(A)
    if len(b) != m:
        raise ValueError(f"dimension mismatch: {m} rows but rhs of length {len(b)}")
    n = len(A[0]) if m else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    red, pivots = rref(aug, field) if aug else ([], [])
    if n in pivots:
        return None
    x = [field.zero()] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return tuple(x)


# ---------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True)
class Subspace:
    """Row space in canonical reduced row-echelon form."""

    field: Field
    ambient_dim: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` after clearing the pivot columns."""
        p = self.field.char
        w = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = w[pc]
            if f:
                if p:
                    w = [(a - f * b) % p for a, b in zip(w, row)]
                else:
                    w = [a - f * b for a, b in zip(w, row)]
        return tuple(w)

    def __contains__(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` in the echelon basis (``v`` must lie in the space)."""
        return tuple(v[pc] for pc in self.pivots)

    def complement_columns(self) -> tuple[int, ...]:
        ps = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in ps)

    def __str__(self) -> str:
        return f"<{self.dim}-dim subspace of {self.field}^{self.ambient_dim}>"


def echelonize(vectors: Iterable[Sequence], field: Field, ambient_dim: int | None = None) -> Subspace:
    rows = [list(v) for v in vectors]
    if ambient_dim is None:
        if not rows:
            raise ValueError("ambient_dim required for an empty generating set")
        ambient_dim = len(rows[0])
    for r in rows:
        if len(r) != ambient_dim:
            raise ValueError("vectors of unequal length")
        _check_scalars(r, field)
    red, pivots = rref(rows, field)
    return Subspace(field, ambient_dim, tuple(red), tuple(pivots))


def _check_scalars(row: Sequence, field: Field) -> None:
    if field.char:
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                raise FieldMismatch(f"rational entry {x} in an F_{field.char} matrix")
            if not isinstance(x, (int, Fraction)) or isinstance(x, bool):
                raise FieldMismatch(f"entry {x!r} is not an F_{field.char} scalar")
    else:
        for x in row:
            if not isinstance(x, (int, Fraction)) or isinstance(x, bool):
                raise FieldMismatch(f"entry {x!r} is not a rational scalar")


def zero_subspace(field: Field, n: int) -> Subspace:
    return Subspace(field, n, (), ())


def full_space(field: Field, n: int) -> Subspace:
    one, zero = field.one(), field.zero()
    basis = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
    return Subspace(field, n, basis, tuple(range(n)))


def _same_ambient(U: Subspace, V: Subspace) -> None:
    if U.ambient_dim != V.ambient_dim or U.field != V.field:
        raise ValueError(f"incompatible subspaces {U} and {V}")


def span_sum(U: Subspace, V: Subspace) -> Subspace:
    _same_ambient(U, V)
    return echelonize(U.basis + V.basis, U.field, U.ambient_dim)


def intersect(U, V):
    if isinstance(U, ResidueModule):
        return residue_intersect(U, V)
    _same_ambient(U, V)
    field, n = U.field, U.ambient_dim
    if U.is_zero() or V.is_zero():
        return zero_subspace(field, n)
    p = field.char
    neg_v = [tuple((-x) % p if p else -x for x in v) for v in V.basis]
    sols = left_kernel(list(U.basis) + neg_v, n, field)
    gens = [lin_comb(s[: U.dim], U.basis, field, n) for s in sols]
    return echelonize(gens, field, n)


def contains(U, V) -> bool:
    """True iff ``V`` lies inside ``U`` (subspaces or residue modules)."""
    if isinstance(U, ResidueModule):
        return residue_contains(U, V)
    _same_ambient(U, V)
    return all(v in U for v in V.basis)


def preimage(images: Sequence[Sequence], target: Subspace, source_dim: int) -> Subspace:
    """``{x : sum_i x_i * images[i] in target}`` for a linear map given by row images."""
    field = target.field
    n = target.ambient_dim
    cols = target.complement_columns()
    reduced = [target.reduce(img) for img in images]
    projected = [tuple(r[c] for c in cols) for r in reduced]
    return echelonize(left_kernel(projected, len(cols), field), field, source_dim) if source_dim else zero_subspace(field, 0)


def kernel(images: Sequence[Sequence], field: Field, source_dim: int) -> Subspace:
    """Kernel of the linear map sending basis vector ``i`` to ``images[i]``."""
    if source_dim == 0:
        return zero_subspace(field, 0)
    width = len(images[0]) if images else 0
    return echelonize(left_kernel(images, width, field), field, source_dim)


# ---------------------------------------------------------------------------
# Howell normal form over Z/N

def _unit_normalizer(a: int, N: int) -> int:
    """A unit ``u`` of ``Z/N`` with ``u * a = gcd(a, N) (mod N)``."""
    g = gcd(a, N)
    if g == N:
        return 1
    m = N // g
    u0 = pow(a // g, -1, m) if m > 1 else 0
    u = u0
    while gcd(u, N) != 1:
        u += m
    return u % N


def howell_form(rows: Sequence[Sequence[int]], N: int) -> np.ndarray:
    """Howell normal form of the ``Z/N``-row span of ``rows``.

    Pivots are divisors of ``N``; entries above a pivot are reduced into
    ``[0, pivot)``; the Howell property makes the form unique for the span.
    """
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    if N == 1 or not rows:
        return np.zeros((0, ncols), dtype=object)
    A = np.array(rows, dtype=object) % N
    r = 0
    for c in range(ncols):
        # gcd-combine everything below r into row r
        for i in range(r + 1, A.shape[0]):
            b = A[i, c]
            if b == 0:
                continue
            a = A[r, c]
            g, s, t = _xgcd(a, b)
            ri, rr = A[i].copy(), A[r].copy()
            A[r] = (s * rr + t * ri) % N
            A[i] = ((-(b // g)) * rr + (a // g) * ri) % N
        if r >= A.shape[0] or A[r, c] == 0:
            continue
        u = _unit_normalizer(int(A[r, c]), N)
        A[r] = (A[r] * u) % N
        piv = int(A[r, c])
        for i in range(r):
            q = int(A[i, c]) // piv
            if q:
                A[i] = (A[i] - q * A[r]) % N
        ann = (N // piv) * A[r] % N
        if ann.any():
            A = np.vstack([A, ann[None, :]])
        r += 1
        if r == A.shape[0]:
            A = np.vstack([A, np.zeros((1, ncols), dtype=object)])
    keep = [i for i in range(A.shape[0]) if A[i].any()]
    return A[keep]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    a, b = int(a), int(b)
    old_r, rr = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while rr:
        q = old_r // rr
        old_r, rr = rr, old_r - q * rr
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _howell_reduce(H: np.ndarray, v: np.ndarray, N: int) -> np.ndarray:
    w = v % N
    for row in H:
        c = int(np.flatnonzero(row)[0])
        piv = int(row[c])
        x = int(w[c])
        if x % piv:
            return w
        if x:
            w = (w - (x // piv) * row) % N
    return w


@dataclass(frozen=True, eq=False)
class ResidueModule:
    """Submodule of ``Z/m_1 + ... + Z/m_k`` in canonical Howell form.

    ``basis`` holds the Howell rows with column ``i`` expressed in ``Z/m_i``.
    Internally the module is embedded into ``(Z/N)^k`` with ``N = lcm(m_i)``
    by scaling column ``i`` by ``N / m_i``.
    """

    moduli: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]

    @property
    def modulus(self) -> int:
        return reduce(lcm, self.moduli, 1)

    @property
    def scale(self) -> tuple[int, ...]:
        N = self.modulus
        return tuple(N // m for m in self.moduli)

    @property
    def ambient_dim(self) -> int:
        return len(self.moduli)

    def _embedded(self) -> np.ndarray:
        sc = np.array(self.scale, dtype=object)
        if not self.basis:
            return np.zeros((0, len(self.moduli)), dtype=object)
        return np.array(self.basis, dtype=object) * sc

    def order(self) -> int:
        """Number of elements."""
        N = self.modulus
        H = self._embedded()
        out = 1
        for row in H:
            c = int(np.flatnonzero(row)[0])
            out *= N // int(row[c])
        return out

    def is_zero(self) -> bool:
        return not self.basis

    def __contains__(self, v: Sequence[int]) -> bool:
        N = self.modulus
        w = np.array([int(x) % m * s for x, m, s in zip(v, self.moduli, self.scale)], dtype=object)
        return not _howell_reduce(self._embedded(), w, N).any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResidueModule):
            return NotImplemented
        return self.moduli == other.moduli and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.moduli, self.basis))

    def __str__(self) -> str:
        return f"<submodule of order {self.order()} in {'+'.join(f'Z/{m}' for m in self.moduli)}>"


def howell(gens: Iterable[Sequence[int]], moduli: Sequence[int]) -> ResidueModule:
    """Canonical Howell basis of the submodule generated by ``gens``."""
    moduli = tuple(int(m) for m in moduli)
    if any(m <= 0 for m in moduli):
        raise ValueError("moduli must be positive")
    N = reduce(lcm, moduli, 1)
    scale = [N // m for m in moduli]
    rows = [[int(x) % m * s for x, m, s in zip(g, moduli, scale)] for g in gens]
    if not rows:
        return ResidueModule(moduli, ())
    H = howell_form(rows, N)
    basis = tuple(tuple(int(x) // s for x, s in zip(row, scale)) for row in H)
    return ResidueModule(moduli, basis)


def element_order(v: Sequence[int], moduli: Sequence[int]) -> int:
    return reduce(lcm, (m // gcd(int(x) % m, m) for x, m in zip(v, moduli)), 1)


def residue_kernel(
    images: Sequence[Sequence[int]],
    source_moduli: Sequence[int],
    target_moduli: Sequence[int],
) -> ResidueModule:
    """Kernel of the homomorphism ``+Z/source -> +Z/target`` sending generator ``i`` to ``images[i]``.

    Requires ``source_moduli[i] * images[i] = 0`` in the target.
    """
    source_moduli = tuple(int(m) for m in source_moduli)
    target_moduli = tuple(int(m) for m in target_moduli)
    k, t = len(source_moduli), len(target_moduli)
    if k == 0:
        return ResidueModule((), ())
    for img, m in zip(images, source_moduli):
        for y, n in zip(img, target_moduli):
            if (m * int(y)) % n:
                raise ValueError("homomorphism is not well defined on the given moduli")
    N = reduce(lcm, source_moduli + target_moduli, 1)
    rows = []
    for i, img in enumerate(images):
        row = [int(y) % n * (N // n) for y, n in zip(img, target_moduli)]
        tail = [0] * k
        tail[i] = N // source_moduli[i]
        rows.append(row + tail)
    H = howell_form(rows, N)
    gens = []
    for row in H:
        if not any(row[:t]):
            gens.append([int(x) // (N // m) for x, m in zip(row[t:], source_moduli)])
    return howell(gens, source_moduli)


def residue_preimage(
    images: Sequence[Sequence[int]],
    source_moduli: Sequence[int],
    target: ResidueModule,
) -> ResidueModule:
    """``{x : image(x) in target}`` for a homomorphism into ``target``'s ambient module."""
    gens = list(target.basis)
    ords = [element_order(g, target.moduli) for g in gens]
    n = len(source_moduli)
    # solve image(x) = sum c_j g_j  <=>  kernel of (x, c) -> image(x) - sum c_j g_j
    neg = [tuple((-int(y)) % m for y, m in zip(g, target.moduli)) for g in gens]
    K = residue_kernel(list(images) + neg, tuple(source_moduli) + tuple(ords), target.moduli)
    return howell([row[:n] for row in K.basis], source_moduli)


def residue_sum(U: ResidueModule, V: ResidueModule) -> ResidueModule:
    return howell(U.basis + V.basis, U.moduli)


def residue_intersect(U: ResidueModule, V: ResidueModule) -> ResidueModule:
    if U.moduli != V.moduli:
        raise ValueError("ambient mismatch")
    ords = [element_order(g, U.moduli) for g in U.basis]
    sols = residue_preimage(U.basis, ords, V)
    gens = []
    for s in sols.basis:
        gens.append(tuple(sum(c * g[k] for c, g in zip(s, U.basis)) % m for k, m in enumerate(U.moduli)))
    return howell(gens, U.moduli)


def residue_contains(U: ResidueModule, V: ResidueModule) -> bool:
    if U.moduli != V.moduli:
        raise ValueError("ambient mismatch")
    return all(v in U for v in V.basis)

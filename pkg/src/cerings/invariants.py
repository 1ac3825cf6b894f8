"""Center, Jacobson radical, socles and related invariants of a ring.

Algebras over a field return :class:`~cerings.exactlin.Subspace` values;
finite rings given over ``+ Z/m_i`` return
:class:`~cerings.exactlin.ResidueModule` values.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

import numpy as np
import sympy

from . import exactlin as el
from .algebra import (
    DEFAULT_BOUND,
    Algebra,
    EnumerationBoundExceeded,
    FiniteRing,
    Ring,
    is_commutative,
)
from .exactlin import PrimeField, ResidueModule, Subspace

log_ = logging.getLogger(__name__)

EXHAUSTIVE_RADICAL_BOUND = 2**12

Submodule = Subspace | ResidueModule


class RadicalUndecided(RuntimeError):
    pass


class RadicalCheckFailed(AssertionError):
    pass


def size(U: Submodule) -> dict:
    """Dimension (field case) or order (residue case) for reports."""
    if isinstance(U, ResidueModule):
        return {"order": U.order()}
    return {"dim": U.dim}


def is_zero(U: Submodule) -> bool:
    return U.is_zero()


def _kernel(R: Ring, images: list[tuple], blocks: int) -> Submodule:
    """Kernel of the map sending generator ``i`` to ``images[i]`` in ``R^blocks``."""
    if isinstance(R, FiniteRing):
        return el.residue_kernel(images, R.moduli, R.moduli * blocks)
    return el.kernel(images, R.field, R.dim)


def _span(R: Ring, vectors) -> Submodule:
    vectors = list(vectors)
    if isinstance(R, FiniteRing):
        return el.howell(vectors, R.moduli)
    return el.echelonize(vectors, R.field, R.dim)


def _diff(R: Ring, u, v) -> tuple:
    return R._normalize([a - b for a, b in zip(u, v)])


# ---------------------------------------------------------------------------
# center

def center(R: Ring) -> Submodule:
    """``{x : x b_i = b_i x for every basis element b_i}``."""
    P = R.products
    n = R.dim
    images = []
    for a in range(n):
        row: list = []
        for i in range(n):
            row.extend(_diff(R, P[a][i], P[i][a]))
        images.append(tuple(row))
    return _kernel(R, images, n)


# ---------------------------------------------------------------------------
# radical

def _trace_vector(A: Algebra) -> tuple:
    """``Tr(L_{b_k})`` for every basis element."""
    P = A.products
    return tuple(sum((P[k][i][i] for i in range(A.dim)), A.field.zero()) for k in range(A.dim))


def _radical_char0(A: Algebra) -> Subspace:
    t = _trace_vector(A)
    P = A.products
    images = []
    for a in range(A.dim):
        images.append(tuple(sum(P[a][j][k] * t[k] for k in range(A.dim)) for j in range(A.dim)))
    return el.kernel(images, A.field, A.dim)


def _power_traces(L: np.ndarray, e: int, mod: int) -> np.ndarray:
    """``Tr(L_j^e) mod mod`` for a stack of integer matrices ``L_j``."""
    n = L.shape[-1]
    # float64 products are exact below 2**53 and take the BLAS path
    dtype = np.float64 if n * mod * mod < 2**52 else np.int64
    result = np.broadcast_to(np.eye(n, dtype=dtype), L.shape).copy()
    base = (L % mod).astype(dtype)
    while e:
        if e & 1:
            result = (result @ base) % mod
        base = (base @ base) % mod
        e >>= 1
    return np.trace(result, axis1=1, axis2=2).astype(np.int64) % mod


def _radical_charp(A: Algebra) -> Subspace:
    """Radical of an ``F_p``-algebra via the iterated trace functionals.

    ``I_{-1} = A`` and ``I_i = {a in I_{i-1} : g_i(a b) = 0 for all b}`` where
    ``g_i(x) = Tr(X^(p^i)) / p^i mod p`` for an integer lift ``X`` of the left
    regular matrix of ``x``.  ``I_l`` with ``l = floor(log_p dim)`` is the radical.
    """
    p = A.field.char
    n = A.dim
    levels = 0
    while p ** (levels + 1) <= n:
        levels += 1
    # T[i, j, k]: coefficient of b_k in b_i b_j
    T = np.array(A.products, dtype=np.int64).reshape(n, n, n)
    current = el.full_space(A.field, n)
    for i in range(levels + 1):
        q = p**i
        mod = p ** (i + 1)
        if current.is_zero():
            break
        G = []
        for u in current.basis:
            ub = np.tensordot(np.array(u, dtype=np.int64), T, axes=(0, 0)) % p  # row j = u b_j
            L = np.tensordot(ub, T, axes=(1, 0))  # L[j] = left matrix of u b_j
            tr = _power_traces(L, q, mod)
            if (tr % q).any():
                raise RadicalCheckFailed(f"trace of a {q}-th power not divisible by {q}")
            G.append(tuple(int(t) for t in (tr // q) % p))
        coeffs = el.left_kernel(G, n, A.field)
        gens = [el.lin_comb(c, current.basis, A.field, n) for c in coeffs]
        current = el.echelonize(gens, A.field, n)
    return current


def quotient_algebra(A: Algebra, I: Subspace) -> Algebra:
    """``A / I`` on the basis of non-pivot columns of ``I``."""
    cols = I.complement_columns()
    P = A.products
    table = []
    for a, ca in enumerate(cols):
        for b, cb in enumerate(cols):
            v = I.reduce(P[ca][cb])
            for k, ck in enumerate(cols):
                if v[ck]:
                    table.append((a, b, k, v[ck]))
    one = I.reduce(A.one)
    return Algebra(
        A.field,
        [A.basis_names[c] for c in cols],
        table,
        [one[c] for c in cols],
        name=f"{A.name}/J" if A.name else "",
    )


def _nilpotency_bound(R: Ring) -> int:
    if isinstance(R, FiniteRing):
        return sum(sympy.primeomega(m) for m in R.moduli) + 1
    return R.dim + 1


def _is_nilpotent(R: Ring, x: tuple) -> bool:
    power = x
    for _ in range(_nilpotency_bound(R)):
        if not any(power):
            return True
        power = R.mul_coords(power, x)
    return not any(power)


def _algebra_radical(A: Algebra, check: bool = True) -> Subspace:
    J = _radical_char0(A) if A.field.char == 0 else _radical_charp(A)
    if check:
        for v in J.basis:
            if not _is_nilpotent(A, v):
                raise RadicalCheckFailed(f"radical basis vector {v} is not nilpotent")
        Q = quotient_algebra(A, J)
        JQ = _radical_char0(Q) if A.field.char == 0 else _radical_charp(Q)
        if not JQ.is_zero():
            raise RadicalCheckFailed("quotient by the computed radical is not semisimple")
    return J


def _primes_of(R: FiniteRing) -> list[int]:
    return sorted({int(q) for m in R.moduli for q in sympy.primefactors(m)})


def reduction_mod_p(R: FiniteRing, p: int) -> tuple[Algebra, list[int]]:
    """``R / pR`` as an ``F_p``-algebra together with the generator indices it keeps."""
    idx = [i for i, m in enumerate(R.moduli) if m % p == 0]
    pos = {g: a for a, g in enumerate(idx)}
    table = []
    for (i, j), row in R._table.items():
        if i in pos and j in pos:
            for k, c in row:
                if k in pos and c % p:
                    table.append((pos[i], pos[j], pos[k], c % p))
    one = [R.one[g] % p for g in idx]
    B = Algebra(PrimeField(p), [R.basis_names[g] for g in idx], table, one, name=f"{R.name} mod {p}")
    return B, idx


def _finite_ring_radical(R: FiniteRing, check: bool = True) -> ResidueModule:
    """``J(R)`` as the joint preimage of the radicals of ``R / pR`` (``pR`` is nilpotent)."""
    J = el.howell([R._unit(i) for i in range(R.dim)], R.moduli)
    for p in _primes_of(R):
        B, idx = reduction_mod_p(R, p)
        Jp = _algebra_radical(B, check=check)
        pos = {g: a for a, g in enumerate(idx)}
        images = []
        for i in range(R.dim):
            v = [0] * B.dim
            if i in pos:
                v[pos[i]] = 1
            images.append(tuple(v))
        target = el.howell([tuple(int(x) for x in b) for b in Jp.basis], [p] * B.dim)
        J = el.residue_intersect(J, el.residue_preimage(images, R.moduli, target))
    if check:
        for v in J.basis:
            if not _is_nilpotent(R, v):
                raise RadicalCheckFailed(f"radical generator {v} is not nilpotent")
    return J


def radical(R: Ring, check: bool = True) -> Submodule:
    """Jacobson radical.

    Characteristic 0 uses the kernel of the trace form; ``F_p`` uses the
    iterated power-trace functionals; finite rings reduce modulo each prime
    dividing the characteristic.  With ``check`` every generator is tested for
    nilpotency and the quotient is tested for a zero radical.
    """
    if isinstance(R, FiniteRing):
        return _finite_ring_radical(R, check)
    return _algebra_radical(R, check)


def radical_exhaustive(R: Ring, bound: int = EXHAUSTIVE_RADICAL_BOUND) -> ResidueModule:
    """Brute-force oracle: ``x in J`` iff ``1 - r x`` is a unit for every ``r``."""
    if isinstance(R, Algebra):
        R = R.as_finite_ring()
    if R.order > bound:
        raise EnumerationBoundExceeded(R.order, bound)
    E = R.elements_array()
    N = len(E)
    one_code = int(R.codes(np.array([R.one]))[0])
    units = np.zeros(N, dtype=bool)
    for v in E:
        prods = R.codes(R.reduce_np(E @ R.right_np(v)))
        units |= prods == one_code
    one = np.array(R.one, dtype=np.int64)
    in_j = np.ones(N, dtype=bool)
    for r in E:
        rx = E @ R.left_np(r)
        in_j &= units[R.codes(R.reduce_np(one[None, :] - rx))]
    members = E[in_j]
    return el.howell([tuple(int(x) for x in row) for row in members], R.moduli)


# ---------------------------------------------------------------------------
# socles and flags

def left_annihilator(R: Ring, gens) -> Submodule:
    """``{x : x g = 0 for every g in gens}``."""
    gens = [tuple(g) for g in gens]
    if not gens:
        return _span(R, [R._unit(i) for i in range(R.dim)])
    images = []
    for a in range(R.dim):
        row: list = []
        ua = R._unit(a)
        for g in gens:
            row.extend(R.mul_coords(ua, g))
        images.append(tuple(row))
    return _kernel(R, images, len(gens))


def socle_right(R: Ring, J: Submodule | None = None) -> Submodule:
    """``Soc(R_R)`` as the left annihilator of the radical."""
    J = radical(R) if J is None else J
    return left_annihilator(R, J.basis)


def center_radical(R: Ring, C: Submodule | None = None, J: Submodule | None = None) -> Submodule:
    C = center(R) if C is None else C
    J = radical(R) if J is None else J
    return el.intersect(C, J)


def socle_central(R: Ring, C: Submodule | None = None, J: Submodule | None = None) -> Submodule:
    """``Soc(R_C)``: elements of ``R`` killed by the radical of the center."""
    return left_annihilator(R, center_radical(R, C, J).basis)


def quotient_commutative(R: Ring, J: Submodule | None = None) -> bool:
    J = radical(R) if J is None else J
    P = R.products
    return all(
        _diff(R, P[i][j], P[j][i]) in J for i in range(R.dim) for j in range(i + 1, R.dim)
    )


def is_semiprime(R: Ring, J: Submodule | None = None) -> bool:
    J = radical(R) if J is None else J
    return J.is_zero()


# ---------------------------------------------------------------------------
# locality

def minimal_polynomial(A: Algebra, x: tuple) -> sympy.Poly:
    """Minimal polynomial of ``x`` over the base field."""
    t = sympy.Symbol("t")
    powers = [A.one]
    while True:
        nxt = A.mul_coords(powers[-1], x)
        sol = el.solve_linear(el.transpose(powers), nxt, A.field)
        if sol is not None:
            coeffs = [1] + [-c for c in reversed(sol)]
            break
        powers.append(nxt)
    if A.field.char:
        return sympy.Poly([int(c) % A.field.char for c in coeffs], t, modulus=A.field.char)
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in map(A.field, coeffs)], t, domain=sympy.QQ)


def _semisimple_is_division(Q: Algebra, tries: int = 48) -> str:
    n = Q.dim
    if n == 1:
        return "yes"
    commutative = is_commutative(Q)
    if Q.field.char and not commutative:
        return "no"  # finite division rings are commutative
    rng = random.Random(0x5EED)
    candidates = [Q._unit(i) for i in range(n)]
    candidates.append(Q._normalize([1] * n))
    for _ in range(tries):
        candidates.append(Q._normalize([rng.randint(-3, 3) for _ in range(n)]))
    for x in candidates:
        f = minimal_polynomial(Q, x)
        if not f.is_irreducible:
            return "no"
        if commutative and f.degree() == n:
            return "yes"
    return "unknown"


def is_local(R: Ring, J: Submodule | None = None) -> str:
    """``"yes"``, ``"no"`` or ``"unknown"``: whether ``R / J(R)`` is a division ring."""
    if isinstance(R, FiniteRing):
        primes = _primes_of(R)
        if len(primes) != 1:
            return "no" if len(primes) > 1 else "unknown"
        B, _ = reduction_mod_p(R, primes[0])
        return is_local(B)
    J = radical(R) if J is None else J
    return _semisimple_is_division(quotient_algebra(R, J))


# ---------------------------------------------------------------------------

@dataclass
class InvariantSet:
    center: Submodule
    radical: Submodule
    center_radical: Submodule
    socle_right: Submodule
    socle_central: Submodule
    quotient_commutative: bool
    semiprime: bool
    local: str
    commutative: bool = field(default=False)

    def summary(self) -> dict:
        return {
            "center": size(self.center),
            "radical": size(self.radical),
            "center_radical": size(self.center_radical),
            "socle_right": size(self.socle_right),
            "socle_central": size(self.socle_central),
            "quotient_commutative": self.quotient_commutative,
            "semiprime": self.semiprime,
            "local": self.local,
            "commutative": self.commutative,
        }


def compute_invariants(R: Ring, check: bool = True) -> InvariantSet:
    C = center(R)
    J = radical(R, check=check)
    CJ = el.intersect(C, J)
    return InvariantSet(
        center=C,
        radical=J,
        center_radical=CJ,
        socle_right=left_annihilator(R, J.basis),
        socle_central=left_annihilator(R, CJ.basis),
        quotient_commutative=quotient_commutative(R, J),
        semiprime=J.is_zero(),
        local=is_local(R, J),
        commutative=is_commutative(R),
    )

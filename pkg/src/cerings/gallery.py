"""Constructors for the concrete rings studied here.

Group algebras, Grassmann algebras, the four rank-3 quasi-endomorphism
algebras, endomorphism rings of finite abelian groups and the derivation
ring over ``Z[x, y]``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Callable, Sequence

import sympy

from . import exactlin as el
from .algebra import DEFAULT_BOUND, Algebra, EnumerationBoundExceeded, FiniteRing, validate
from .exactlin import QQ, Field, PrimeField


# ---------------------------------------------------------------------------
# finite groups

@dataclass(frozen=True)
class FiniteGroupTable:
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def problems(self) -> list[str]:
        n, T, e = self.order, self.table, self.identity
        out = []
        for a in range(n):
            if T[e][a] != a or T[a][e] != a:
                out.append(f"identity fails at {self.names[a]}")
            if e not in T[a]:
                out.append(f"{self.names[a]} has no inverse")
        for a, b, c in itertools.product(range(n), repeat=3):
            if T[T[a][b]][c] != T[a][T[b][c]]:
                out.append(f"associativity fails at ({self.names[a]},{self.names[b]},{self.names[c]})")
        return out

    def is_group(self) -> bool:
        return not self.problems()

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(a))


def quaternion_group() -> FiniteGroupTable:
    """``Q8 = {+-1, +-i, +-j, +-k}`` with ``i^2 = j^2 = k^2 = ijk = -1``."""
    units = "1ijk"
    # unit products: (sign, unit)
    rule = {
        ("1", u): (1, u) for u in units
    }
    rule.update({(u, "1"): (1, u) for u in units})
    rule.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })
    elems = [(s, u) for u in units for s in (1, -1)]
    names = tuple(("" if s == 1 else "-") + u for s, u in elems)
    pos = {e: n for n, e in enumerate(elems)}
    table = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            s, u = rule[(u1, u2)]
            row.append(pos[(s * s1 * s2, u)])
        table.append(tuple(row))
    return FiniteGroupTable(names, tuple(table), 0)


def cyclic_group(n: int) -> FiniteGroupTable:
    names = tuple("1" if a == 0 else f"g^{a}" for a in range(n))
    return FiniteGroupTable(names, tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0)


def symmetric_group(n: int) -> FiniteGroupTable:
    perms = list(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    # (s t)(x) = s(t(x))
    table = tuple(tuple(pos[tuple(s[t[x]] for x in range(n))] for t in perms) for s in perms)
    names = tuple("".join(map(str, p)) for p in perms)
    return FiniteGroupTable(names, table, pos[tuple(range(n))])


def group_algebra(G: FiniteGroupTable, field: Field = QQ, name: str = "") -> Algebra:
    """``F[G]``; over ``F_p`` use :meth:`Algebra.as_finite_ring` for the finite-ring view."""
    table = [(a, b, G.mul(a, b), 1) for a in range(G.order) for b in range(G.order)]
    one = [1 if a == G.identity else 0 for a in range(G.order)]
    return Algebra(field, G.names, table, one, name=name or f"{field}[G{G.order}]")


# ---------------------------------------------------------------------------
# Grassmann algebras

def grassmann_basis(n: int) -> list[tuple[int, ...]]:
    """Wedge monomials by degree, lexicographic inside a degree.

    For ``n = 3`` the degree-two block is ``e1^e2, e2^e3, e1^e3``.
    """
    mons: list[tuple[int, ...]] = []
    for d in range(n + 1):
        block = list(itertools.combinations(range(1, n + 1), d))
        if n == 3 and d == 2:
            block = [(1, 2), (2, 3), (1, 3)]
        mons.extend(block)
    return mons


def _wedge_name(m: tuple[int, ...]) -> str:
    return "^".join(f"e{i}" for i in m) if m else "1"


def wedge_sign(s: Sequence[int], t: Sequence[int]) -> int:
    """Sign of ``e_s ^ e_t`` after sorting, or 0 when an index repeats."""
    if set(s) & set(t):
        return 0
    inversions = sum(1 for a in s for b in t if a > b)
    return -1 if inversions % 2 else 1


def grassmann(n: int, field: Field = QQ) -> Algebra:
    mons = grassmann_basis(n)
    pos = {m: i for i, m in enumerate(mons)}
    table = []
    for i, s in enumerate(mons):
        for j, t in enumerate(mons):
            sign = wedge_sign(s, t)
            if sign:
                table.append((i, j, pos[tuple(sorted(s + t))], sign))
    one = [1] + [0] * (len(mons) - 1)
    return Algebra(field, [_wedge_name(m) for m in mons], table, one, name=f"Lambda({field}^{n})")


# ---------------------------------------------------------------------------
# matrix algebras

def _unit_matrix(n: int, i: int, j: int) -> list[list[int]]:
    return [[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)]


def _mat_mul(a, b, field: Field):
    n = len(a)
    return [[sum((field(a[r][k]) * field(b[k][c]) for k in range(n)), field.zero()) for c in range(n)] for r in range(n)]


def matrix_algebra(
    matrices: Sequence[Sequence[Sequence]], names: Sequence[str], field: Field = QQ, name: str = ""
) -> Algebra:
    """Subalgebra of ``Mat_n`` spanned by ``matrices`` (which must contain the identity).

    Raises ``ValueError`` if the span is not closed under multiplication.
    """
    n = len(matrices[0])
    flat = [field.vector(x for row in m for x in row) for m in matrices]
    cols = el.transpose(flat)
    table = []
    for i, a in enumerate(matrices):
        for j, b in enumerate(matrices):
            ab = _mat_mul(a, b, field)
            sol = el.solve_linear(cols, field.vector(x for row in ab for x in row), field)
            if sol is None:
                raise ValueError(f"product of {names[i]} and {names[j]} leaves the span")
            table.extend((i, j, k, c) for k, c in enumerate(sol) if c)
    ident = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    one = el.solve_linear(cols, field.vector(x for row in ident for x in row), field)
    if one is None:
        raise ValueError("identity matrix is not in the span")
    return Algebra(field, names, table, one, name=name)


def generated_matrix_algebra(gens: Sequence[Sequence[Sequence]], field: Field = QQ, name: str = "") -> Algebra:
    """The subalgebra of ``Mat_n`` generated by ``gens`` and the identity."""
    n = len(gens[0]) if gens else 1
    ident = [[1 if r == c else 0 for c in range(n)] for r in range(n)]

    def flat(m):
        return field.vector(x for row in m for x in row)

    def square(v):
        return [list(v[r * n:(r + 1) * n]) for r in range(n)]

    span = el.echelonize([flat(ident)] + [flat(m) for m in gens], field, n * n)
    while True:
        mats = [square(v) for v in span.basis]
        grown = el.echelonize(list(span.basis) + [flat(_mat_mul(a, b, field)) for a in mats for b in mats], field, n * n)
        if grown.dim == span.dim:
            break
        span = grown
    return matrix_algebra(mats, [f"m{i}" for i in range(len(mats))], field, name=name)


def full_matrix_algebra(n: int, field: Field = QQ) -> Algebra:
    mats = [_unit_matrix(n, i, j) for i in range(n) for j in range(n)]
    names = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return matrix_algebra(mats, names, field, name=f"Mat{n}({field})")


def rank3_algebra(kind: str, k: Fraction | int | str | None = None) -> Algebra:
    """One of the algebras ``K``, ``R``, ``S(k)``, ``T`` of upper-triangular 3x3 rational matrices."""
    I = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    e12, e13, e23 = _unit_matrix(3, 0, 1), _unit_matrix(3, 0, 2), _unit_matrix(3, 1, 2)
    kind = kind.upper()
    if kind == "K":
        return matrix_algebra([I, e13], ["1", "e13"], name="K")
    if kind == "R":
        return matrix_algebra([I, e12, e13], ["1", "e12", "e13"], name="R")
    if kind == "S":
        if k is None:
            raise ValueError("S requires a parameter k")
        kq = QQ(k)
        if kq == 0:
            raise ValueError("S requires k != 0")
        y = [[0, 1, 0], [0, 0, kq], [0, 0, 0]]
        return matrix_algebra([I, y, e13], ["1", f"e12+{kq}e23", "e13"], name=f"S({kq})")
    if kind == "T":
        return matrix_algebra([I, e12, e13, e23], ["1", "e12", "e13", "e23"], name="T")
    raise ValueError(f"unknown rank-3 algebra {kind!r}")


# ---------------------------------------------------------------------------
# finite abelian groups and their endomorphism rings

@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/p1^k1 + Z/p2^k2 + ...`` as a list of ``(p, k)`` summands."""

    summands: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for p, k in self.summands:
            if not sympy.isprime(p) or k < 1:
                raise ValueError(f"invalid summand Z/{p}^{k}")

    @classmethod
    def parse(cls, spec: str) -> "FiniteAbelianGroup":
        """Parse ``"p:k,p:k,..."``."""
        out = []
        for part in spec.split(","):
            part = part.strip()
            if not part:
                continue
            try:
                p, k = part.split(":")
                out.append((int(p), int(k)))
            except ValueError:
                raise ValueError(f"bad summand {part!r}; expected p:k") from None
        if not out:
            raise ValueError("empty group spec")
        return cls(tuple(out))

    @property
    def order(self) -> int:
        return prod(p**k for p, k in self.summands)

    def primes(self) -> list[int]:
        return sorted({p for p, _ in self.summands})

    def p_component(self, p: int) -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(tuple(s for s in self.summands if s[0] == p))

    def every_component_cyclic(self) -> bool:
        return all(len(self.p_component(p).summands) == 1 for p in self.primes())

    def __str__(self) -> str:
        return " + ".join(f"Z{p**k}" for p, k in self.summands)


def hom_order(a: FiniteAbelianGroup, b: FiniteAbelianGroup) -> int:
    """``|Hom(a, b)|``."""
    return prod(
        p ** min(k, l) for p, k in a.summands for q, l in b.summands if p == q
    )


def _partitions(e: int, largest: int | None = None):
    largest = e if largest is None else largest
    if e == 0:
        yield ()
        return
    for k in range(min(e, largest), 0, -1):
        for rest in _partitions(e - k, k):
            yield (k,) + rest


def abelian_groups_of_order(n: int) -> list[FiniteAbelianGroup]:
    """Every abelian group of order ``n`` up to isomorphism."""
    per_prime = [
        [tuple((p, k) for k in part) for part in _partitions(e)]
        for p, e in sorted(sympy.factorint(n).items())
    ]
    return [FiniteAbelianGroup(sum(combo, ())) for combo in itertools.product(*per_prime)]


def endomorphism_ring(A: FiniteAbelianGroup, bound: int = DEFAULT_BOUND) -> FiniteRing:
    """``End(A)`` on the canonical hom generators.

    Generator ``h_ij`` sends the generator of summand ``j`` to ``p^max(k_i - k_j, 0)``
    times the generator of summand ``i``; it has additive order
    ``p^min(k_i, k_j)``.  Multiplication is composition, ``(fg)(a) = f(g(a))``.
    """
    if A.order > bound:
        raise EnumerationBoundExceeded(A.order, bound)
    S = A.summands
    gens = [(i, j) for i in range(len(S)) for j in range(len(S)) if S[i][0] == S[j][0]]
    pos = {g: n for n, g in enumerate(gens)}
    moduli = [S[i][0] ** min(S[i][1], S[j][1]) for i, j in gens]

    def shift(i: int, j: int) -> int:
        return max(S[i][1] - S[j][1], 0)

    table = []
    for (i, j) in gens:
        for (j2, l) in gens:
            if j2 != j:
                continue
            p = S[i][0]
            e = shift(j, l) + shift(i, j) - shift(i, l)
            table.append((pos[(i, j)], pos[(j, l)], pos[(i, l)], p**e))
    one = [1 if i == j else 0 for i, j in gens]
    names = [f"h{i + 1}{j + 1}" for i, j in gens]
    return FiniteRing(moduli, names, table, one, name=f"End({A})")


# ---------------------------------------------------------------------------
# derivation ring over Z[x, y]

@dataclass(frozen=True)
class IntPoly2:
    """Integer polynomial in ``x, y``; ``coeffs`` maps ``(deg_x, deg_y)`` to a nonzero int."""

    coeffs: tuple[tuple[tuple[int, int], int], ...] = ()

    @classmethod
    def from_dict(cls, d: dict) -> "IntPoly2":
        return cls(tuple(sorted((k, int(v)) for k, v in d.items() if v)))

    @classmethod
    def const(cls, c: int) -> "IntPoly2":
        return cls.from_dict({(0, 0): c})

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __add__(self, other: "IntPoly2") -> "IntPoly2":
        d = self.as_dict()
        for k, v in other.coeffs:
            d[k] = d.get(k, 0) + v
        return IntPoly2.from_dict(d)

    def __neg__(self) -> "IntPoly2":
        return IntPoly2(tuple((k, -v) for k, v in self.coeffs))

    def __sub__(self, other: "IntPoly2") -> "IntPoly2":
        return self + (-other)

    def __mul__(self, other: "IntPoly2") -> "IntPoly2":
        d: dict = {}
        for (a, b), u in self.coeffs:
            for (c, e), v in other.coeffs:
                d[(a + c, b + e)] = d.get((a + c, b + e), 0) + u * v
        return IntPoly2.from_dict(d)

    def dx(self) -> "IntPoly2":
        return IntPoly2.from_dict({(a - 1, b): a * v for (a, b), v in self.coeffs if a})

    def dy(self) -> "IntPoly2":
        return IntPoly2.from_dict({(a, b - 1): b * v for (a, b), v in self.coeffs if b})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for (a, b), v in self.coeffs:
            mono = "*".join(t for t in (f"x^{a}" if a > 1 else "x" if a else "", f"y^{b}" if b > 1 else "y" if b else "") if t)
            terms.append(f"{v}*{mono}" if mono else str(v))
        return " + ".join(terms)


X = IntPoly2.from_dict({(1, 0): 1})
Y = IntPoly2.from_dict({(0, 1): 1})
ZERO = IntPoly2()
ONE = IntPoly2.const(1)


@dataclass(frozen=True)
class DerivationRingElement:
    """The matrix ``[[f, f_x, g], [0, f, f_y], [0, 0, f]]``."""

    f: IntPoly2
    g: IntPoly2 = ZERO

    def matrix(self) -> list[list[IntPoly2]]:
        f = self.f
        return [[f, f.dx(), self.g], [ZERO, f, f.dy()], [ZERO, ZERO, f]]

    def __mul__(self, other: "DerivationRingElement") -> "DerivationRingElement":
        return derivation_ring_mul(self, other)

    def __add__(self, other: "DerivationRingElement") -> "DerivationRingElement":
        return DerivationRingElement(self.f + other.f, self.g + other.g)

    def __sub__(self, other: "DerivationRingElement") -> "DerivationRingElement":
        return DerivationRingElement(self.f - other.f, self.g - other.g)

    def is_zero(self) -> bool:
        return self.f.is_zero() and self.g.is_zero()


E13 = DerivationRingElement(ZERO, ONE)


def derivation_ring_mul(a: DerivationRingElement, b: DerivationRingElement) -> DerivationRingElement:
    corner = a.f * b.g + a.f.dx() * b.f.dy() + a.g * b.f
    return DerivationRingElement(a.f * b.f, corner)


def random_poly(rng: random.Random, deg_bound: int = 3, coeff_bound: int = 9) -> IntPoly2:
    d = {}
    for a in range(deg_bound + 1):
        for b in range(deg_bound + 1 - a):
            if rng.random() < 0.5:
                d[(a, b)] = rng.randint(-coeff_bound, coeff_bound)
    return IntPoly2.from_dict(d)


def random_derivation_element(rng: random.Random, deg_bound: int = 3, coeff_bound: int = 9) -> DerivationRingElement:
    f = random_poly(rng, deg_bound, coeff_bound) if rng.random() < 0.8 else ZERO
    return DerivationRingElement(f, random_poly(rng, deg_bound, coeff_bound))


def commutes(a: DerivationRingElement, b: DerivationRingElement) -> bool:
    return a * b == b * a


def derivation_central(a: DerivationRingElement, probes: Sequence[DerivationRingElement] = ()) -> bool:
    """Centrality test.  Commuting with ``(x, 0)`` and ``(y, 0)`` forces both partial
    derivatives of the diagonal to vanish, which already makes ``a`` central;
    extra ``probes`` are checked as well."""
    base = (DerivationRingElement(X), DerivationRingElement(Y), E13)
    return all(commutes(a, b) for b in (*base, *probes))


@dataclass
class SampleVerdict:
    trials: int
    failures: list[str]
    noncentral: int
    zero_diagonal: int

    @property
    def passed(self) -> bool:
        return not self.failures


def derivation_ring_ce_sample(
    trials: int = 100, deg_bound: int = 3, coeff_bound: int = 9, seed: int = 0, probes: int = 8
) -> SampleVerdict:
    """Sampled check that every element with nonzero diagonal becomes central
    and nonzero after right multiplication by ``e13``, and that elements with
    zero diagonal are central."""
    rng = random.Random(seed)
    probe_set = [random_derivation_element(rng, deg_bound, coeff_bound) for _ in range(probes)]
    failures = []
    noncentral = zero_diag = 0
    for t in range(trials):
        a = random_derivation_element(rng, deg_bound, coeff_bound)
        central = derivation_central(a, probe_set)
        noncentral += not central
        if a.f.is_zero():
            zero_diag += 1
            if not central:
                failures.append(f"trial {t}: zero-diagonal element {a} is not central")
            continue
        y = a * E13
        if y.is_zero():
            failures.append(f"trial {t}: a*e13 = 0 for {a}")
        elif not derivation_central(y, probe_set):
            failures.append(f"trial {t}: a*e13 not central for {a}")
        if y.g != a.f:
            failures.append(f"trial {t}: corner of a*e13 differs from the diagonal")
    return SampleVerdict(trials, failures, noncentral, zero_diag)


# ---------------------------------------------------------------------------
# registry

def gallery_instances(include_large: bool = True) -> list[tuple[str, Algebra | FiniteRing]]:
    """Every named ring used by the consistency sweeps."""
    F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)
    out: list[tuple[str, Algebra | FiniteRing]] = []
    for n in range(1, 6 if include_large else 4):
        out.append((f"grassmann(n={n},Q)", grassmann(n, QQ)))
    for n in range(1, 5 if include_large else 4):
        out.append((f"grassmann(n={n},F3)", grassmann(n, F3)))
    out.append(("grassmann(n=2,F5)", grassmann(2, F5)))
    out.append(("grassmann(n=3,F2)", grassmann(3, F2)))
    for kind, k in (("K", None), ("R", None), ("S", 1), ("S", -2), ("S", Fraction(7, 3)), ("T", None)):
        label = f"rank3({kind}{'' if k is None else f',k={k}'})"
        out.append((label, rank3_algebra(kind, k)))
    Q8 = quaternion_group()
    out.append(("group_algebra(Q8,F2)", group_algebra(Q8, F2, name="F2[Q8]")))
    out.append(("group_algebra(Q8,F3)", group_algebra(Q8, F3, name="F3[Q8]")))
    out.append(("group_algebra(Q8,Q)", group_algebra(Q8, QQ, name="Q[Q8]")))
    out.append(("group_algebra(C2,Q)", group_algebra(cyclic_group(2), QQ, name="Q[C2]")))
    out.append(("group_algebra(C2,F2)", group_algebra(cyclic_group(2), F2, name="F2[C2]")))
    out.append(("group_algebra(C4,F2)", group_algebra(cyclic_group(4), F2, name="F2[C4]")))
    out.append(("group_algebra(S3,F2)", group_algebra(symmetric_group(3), F2, name="F2[S3]")))
    out.append(("group_algebra(S3,F3)", group_algebra(symmetric_group(3), F3, name="F3[S3]")))
    out.append(("group_algebra(S3,Q)", group_algebra(symmetric_group(3), QQ, name="Q[S3]")))
    out.append(("matrix(2,F2)", full_matrix_algebra(2, F2)))
    out.append(("matrix(2,Q)", full_matrix_algebra(2, QQ)))
    for spec in ("2:1", "2:2", "3:2", "2:1,2:1", "2:1,2:2", "2:2,3:2", "2:1,3:1", "2:1,2:1,2:1", "3:1,3:1"):
        A = FiniteAbelianGroup.parse(spec)
        out.append((f"endring({spec})", endomorphism_ring(A)))
    return out


GALLERY: dict[str, Callable[..., Algebra | FiniteRing]] = {
    "grassmann": lambda n=3, field="Q": grassmann(int(n), el.parse_field(field)),
    "rank3": lambda kind="T", k=None: rank3_algebra(kind, k),
    "group-algebra": lambda group="q8", field="F2": group_algebra(
        {"q8": quaternion_group, "s3": lambda: symmetric_group(3)}.get(group.lower(), None)()
        if group.lower() in ("q8", "s3") else cyclic_group(int(group.lower().lstrip("c"))),
        el.parse_field(field),
        name=f"{el.parse_field(field)}[{group.upper()}]",
    ),
    "matrix": lambda n=2, field="F2": full_matrix_algebra(int(n), el.parse_field(field)),
    "endring": lambda group="2:1,2:1": endomorphism_ring(FiniteAbelianGroup.parse(group)),
}


def check_gallery() -> dict[str, list]:
    """Validation violations for every gallery instance (empty lists expected)."""
    return {label: validate(R) for label, R in gallery_instances()}

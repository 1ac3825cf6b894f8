"""Rings given by structure constants.

Two kinds of parent are supported:

* :class:`Algebra` -- a finite-dimensional associative algebra over ``Q`` or
  ``F_p`` with basis ``b_0 .. b_{n-1}`` and ``b_i b_j = sum_k c_ijk b_k``.
* :class:`FiniteRing` -- a finite ring whose additive group is
  ``Z/m_0 + ... + Z/m_{k-1}`` on generators ``g_i`` with
  ``g_i g_j = sum_k t_ijk g_k`` and ``t_ijk`` read modulo ``m_k``.

Both share the same sparse table layout and :class:`Element` values.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import prod
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import exactlin as el
from .exactlin import Field, PrimeField, Subspace

DEFAULT_BOUND = 2**20


class ParentMismatch(ValueError):
    pass


class EnumerationBoundExceeded(RuntimeError):
    def __init__(self, order: int, bound: int):
        super().__init__(f"ring of order {order} exceeds the enumeration bound {bound}")
        self.order = order
        self.bound = bound


class AlgebraFormatError(ValueError):
    """Raised for malformed interchange documents; ``where`` names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass(frozen=True)
class Violation:
    kind: str  # "associativity", "left-identity", "right-identity", "well-defined"
    indices: tuple[int, ...]
    discrepancy: tuple

    def __str__(self) -> str:
        return f"{self.kind} at {self.indices}: difference {list(self.discrepancy)}"


class Element:
    """An element of an :class:`Algebra` or :class:`FiniteRing`."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent: "_StructureRing", coords: Sequence):
        self.parent = parent
        self.coords = parent._normalize(coords)

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element) or other.parent is not self.parent and other.parent != self.parent:
            raise ParentMismatch("elements belong to different rings")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.parent, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.parent, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "Element":
        return Element(self.parent, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        return Element(self.parent, [a * other for a in self.coords])

    def __rmul__(self, scalar):
        return Element(self.parent, [scalar * a for a in self.coords])

    def __pow__(self, n: int) -> "Element":
        out = self.parent.one_element()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.parent == other.parent and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __bool__(self) -> bool:
        return any(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self) -> str:
        return self.parent.format_element(self.coords)


class _StructureRing:
    """Shared machinery for sparse structure-constant tables."""

    basis_names: tuple[str, ...]
    one: tuple
    _table: dict[tuple[int, int], tuple[tuple[int, object], ...]]

    def _init_table(self, table: Iterable[Sequence]) -> None:
        acc: dict[tuple[int, int], dict[int, object]] = {}
        n = self.dim
        for entry in table:
            i, j, k, c = entry
            i, j, k = int(i), int(j), int(k)
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise IndexError(f"structure constant index ({i},{j},{k}) out of range for dimension {n}")
            c = self._scalar(c, k)
            slot = acc.setdefault((i, j), {})
            slot[k] = self._scalar(slot.get(k, 0) + c, k)
        self._table = {
            key: tuple(sorted((k, c) for k, c in row.items() if c))
            for key, row in acc.items()
            if any(row.values())
        }

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    # subclasses supply _scalar(c, k) and _normalize(coords)

    def table_entries(self) -> list[tuple[int, int, int, object]]:
        return [(i, j, k, c) for (i, j), row in sorted(self._table.items()) for k, c in row]

    def basis_product(self, i: int, j: int) -> tuple:
        out = [self._scalar(0, k) for k in range(self.dim)]
        for k, c in self._table.get((i, j), ()):
            out[k] = c
        return tuple(out)

    @cached_property
    def products(self) -> tuple[tuple[tuple, ...], ...]:
        """Dense table: ``products[i][j]`` = coordinates of ``b_i b_j``."""
        return tuple(tuple(self.basis_product(i, j) for j in range(self.dim)) for i in range(self.dim))

    def mul_coords(self, a: Sequence, b: Sequence) -> tuple:
        acc = [0] * self.dim
        nz_b = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in nz_b:
                row = self._table.get((i, j))
                if row:
                    xy = x * y
                    for k, c in row:
                        acc[k] += xy * c
        return self._normalize(acc)

    def element(self, coords: Sequence) -> Element:
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return Element(self, coords)

    def basis_element(self, i: int) -> Element:
        return Element(self, [1 if k == i else 0 for k in range(self.dim)])

    def basis_elements(self) -> list[Element]:
        return [self.basis_element(i) for i in range(self.dim)]

    def zero_element(self) -> Element:
        return Element(self, [0] * self.dim)

    def one_element(self) -> Element:
        return Element(self, self.one)

    def __getitem__(self, name: str) -> Element:
        return self.basis_element(self.basis_names.index(name))

    def left_matrix(self, x: Sequence) -> tuple[tuple, ...]:
        """Rows are the coordinates of ``x * b_i``."""
        return tuple(self.mul_coords(x, self._unit(i)) for i in range(self.dim))

    def right_matrix(self, x: Sequence) -> tuple[tuple, ...]:
        """Rows are the coordinates of ``b_i * x``."""
        return tuple(self.mul_coords(self._unit(i), x) for i in range(self.dim))

    def _unit(self, i: int) -> tuple:
        return self._normalize([1 if k == i else 0 for k in range(self.dim)])

    def format_element(self, coords: Sequence) -> str:
        terms = []
        for c, name in zip(coords, self.basis_names):
            if not c:
                continue
            if name.startswith("-"):
                name = f"({name})"
            terms.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(terms) if terms else "0"

    def __eq__(self, other) -> bool:
        return (
            type(self) is type(other)
            and self._key() == other._key()
        )

    def __hash__(self) -> int:
        return hash(self._key())


class Algebra(_StructureRing):
    """Finite-dimensional associative algebra over ``Q`` or ``F_p``."""

    def __init__(
        self,
        field: Field,
        basis_names: Sequence[str],
        table: Iterable[Sequence],
        one: Sequence,
        name: str = "",
    ):
        self.field = field
        self.basis_names = tuple(basis_names)
        self.name = name
        self._init_table(table)
        if len(one) != self.dim:
            raise ValueError("identity has the wrong length")
        self.one = self._normalize(one)

    def _scalar(self, c, k):
        return self.field(c)

    def _normalize(self, coords: Sequence) -> tuple:
        return self.field.vector(coords)

    def _key(self):
        return (self.field, self.basis_names, tuple(sorted(self._table.items())), self.one)

    @property
    def order(self) -> int | None:
        return self.field.char ** self.dim if self.field.char else None

    def __repr__(self) -> str:
        label = self.name or "Algebra"
        return f"<{label}: dim {self.dim} over {self.field}>"

    def as_finite_ring(self) -> "FiniteRing":
        if not self.field.char:
            raise ValueError("only algebras over a prime field are finite rings")
        p = self.field.char
        return FiniteRing([p] * self.dim, self.basis_names, self.table_entries(), self.one, name=self.name)

    def subspace(self, vectors: Iterable[Sequence]) -> Subspace:
        return el.echelonize([self.field.vector(v) for v in vectors], self.field, self.dim)


class FiniteRing(_StructureRing):
    """Finite ring with additive group ``+ Z/m_i``."""

    def __init__(
        self,
        moduli: Sequence[int],
        basis_names: Sequence[str],
        table: Iterable[Sequence],
        one: Sequence[int],
        name: str = "",
    ):
        self.moduli = tuple(int(m) for m in moduli)
        if any(m < 1 for m in self.moduli):
            raise ValueError("moduli must be positive")
        self.basis_names = tuple(basis_names)
        if len(self.basis_names) != len(self.moduli):
            raise ValueError("one name per generator required")
        self.name = name
        self._init_table(table)
        if len(one) != self.dim:
            raise ValueError("identity has the wrong length")
        self.one = self._normalize(one)

    def _scalar(self, c, k):
        if isinstance(c, str):
            c = Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"non-integral structure constant {c}")
            c = c.numerator
        return int(c) % self.moduli[k]

    def _normalize(self, coords: Sequence) -> tuple:
        return tuple(int(c) % m for c, m in zip(coords, self.moduli))

    def _key(self):
        return (self.moduli, self.basis_names, tuple(sorted(self._table.items())), self.one)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def characteristic(self) -> int:
        return reduce(el.lcm, self.moduli, 1)

    def __repr__(self) -> str:
        label = self.name or "FiniteRing"
        return f"<{label}: order {self.order}>"

    def as_algebra(self) -> Algebra:
        """View as an ``F_p``-algebra when every generator has prime order ``p``."""
        ps = set(self.moduli)
        if len(ps) != 1:
            raise ValueError("mixed additive orders")
        (p,) = ps
        return Algebra(PrimeField(p), self.basis_names, self.table_entries(), self.one, name=self.name)

    # numpy views used by the exhaustive scans

    @cached_property
    def tensor(self) -> np.ndarray:
        T = np.zeros((self.dim, self.dim, self.dim), dtype=np.int64)
        for (i, j), row in self._table.items():
            for k, c in row:
                T[i, j, k] = c
        return T

    @cached_property
    def _moduli_array(self) -> np.ndarray:
        return np.array(self.moduli, dtype=np.int64)

    @cached_property
    def _radix(self) -> np.ndarray:
        """Place values of the enumeration index (coordinate 0 least significant)."""
        out = [1]
        for m in self.moduli[:-1]:
            out.append(out[-1] * m)
        return np.array(out, dtype=np.int64)

    def elements_array(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        stop = self.order if stop is None else stop
        idx = np.arange(start, stop, dtype=np.int64)
        return (idx[:, None] // self._radix[None, :]) % self._moduli_array[None, :]

    def codes(self, coords: np.ndarray) -> np.ndarray:
        """Enumeration index of each row of ``coords``."""
        return (coords % self._moduli_array) @ self._radix

    def right_np(self, x: Sequence[int]) -> np.ndarray:
        """Matrix ``R`` with ``a @ R = a * x`` before reduction."""
        return np.einsum("j,ijk->ik", np.asarray(x, dtype=np.int64), self.tensor)

    def left_np(self, x: Sequence[int]) -> np.ndarray:
        """Matrix ``L`` with ``a @ L = x * a`` before reduction."""
        return np.einsum("i,ijk->jk", np.asarray(x, dtype=np.int64), self.tensor)

    def reduce_np(self, coords: np.ndarray) -> np.ndarray:
        return coords % self._moduli_array


Ring = Algebra | FiniteRing


# ---------------------------------------------------------------------------
# operations

def mul(a: Element, b: Element) -> Element:
    a._check(b)
    return Element(a.parent, a.parent.mul_coords(a.coords, b.coords))


def commutator(a: Element, b: Element) -> Element:
    return a * b - b * a


def is_commutative(R: Ring) -> bool:
    P = R.products
    return all(P[i][j] == P[j][i] for i in range(R.dim) for j in range(i + 1, R.dim))


def regular_representation(A: Ring, x: Element | Sequence) -> tuple[tuple, ...]:
    """Matrix whose row ``i`` lists the coordinates of ``x * b_i``.

    With this row convention ``M(x * y) = M(y) @ M(x)``.
    """
    coords = x.coords if isinstance(x, Element) else A._normalize(x)
    return A.left_matrix(coords)


def _difference(R: Ring, u: Sequence, v: Sequence) -> tuple:
    return R._normalize([a - b for a, b in zip(u, v)])


def validate(R: Ring) -> list[Violation]:
    """Every associativity, identity and well-definedness failure on basis elements."""
    out: list[Violation] = []
    n = R.dim
    if isinstance(R, FiniteRing):
        for (i, j), row in sorted(R._table.items()):
            for k, c in row:
                for src in (i, j):
                    if (R.moduli[src] * c) % R.moduli[k]:
                        out.append(Violation("well-defined", (i, j, k), (c,)))
    for i in range(n):
        left = R.mul_coords(R.one, R._unit(i))
        right = R.mul_coords(R._unit(i), R.one)
        if left != R._unit(i):
            out.append(Violation("left-identity", (i,), _difference(R, left, R._unit(i))))
        if right != R._unit(i):
            out.append(Violation("right-identity", (i,), _difference(R, right, R._unit(i))))
    for i, j, k in _associativity_suspects(R):
        lhs = R.mul_coords(R.products[i][j], R._unit(k))
        rhs = R.mul_coords(R._unit(i), R.products[j][k])
        if lhs != rhs:
            out.append(Violation("associativity", (i, j, k), _difference(R, lhs, rhs)))
    return out


def _associativity_suspects(R: Ring) -> Iterable[tuple[int, int, int]]:
    """Basis triples that may violate associativity.

    Integer tables small enough for int64 are screened with numpy; flagged
    triples are re-checked exactly by the caller.
    """
    n = R.dim
    entries = R.table_entries()
    if isinstance(R, Algebra) and R.field.char == 0:
        den = reduce(el.lcm, (Fraction(c).denominator for *_, c in entries), 1)
        ints = [(i, j, k, int(Fraction(c) * den)) for i, j, k, c in entries]
    else:
        ints = [(i, j, k, int(c)) for i, j, k, c in entries]
    big = max((abs(c) for *_, c in ints), default=0)
    if big == 0 or big * big * n >= 2**62:
        return itertools.product(range(n), repeat=3)
    T = np.zeros((n, n, n), dtype=np.int64)
    for i, j, k, c in ints:
        T[i, j, k] = c
    lhs = np.einsum("ijm,mkl->ijkl", T, T)
    rhs = np.einsum("jkm,iml->ijkl", T, T)
    diff = lhs - rhs
    if isinstance(R, FiniteRing):
        diff = diff % np.array(R.moduli, dtype=np.int64)
    elif R.field.char:
        diff = diff % R.field.char
    bad = np.argwhere(diff.any(axis=3))
    return [tuple(int(x) for x in t) for t in bad]


def change_basis(A: Algebra, P: Sequence[Sequence], names: Sequence[str] | None = None) -> Algebra:
    """The same algebra on the basis ``b'_i = sum_k P[i][k] b_k`` (``P`` invertible)."""
    F = A.field
    rows = [F.vector(r) for r in P]
    cols = el.transpose(rows, A.dim)
    if el.echelonize(rows, F, A.dim).dim != A.dim:
        raise ValueError("change of basis matrix is singular")

    def coords(v):
        return el.solve_linear(cols, v, F)

    table = []
    for i, u in enumerate(rows):
        for j, v in enumerate(rows):
            table.extend((i, j, k, c) for k, c in enumerate(coords(A.mul_coords(u, v))) if c)
    names = names or [f"b{i}" for i in range(A.dim)]
    return Algebra(F, names, table, coords(A.one), name=A.name)


def right_ideal_closure(A: Algebra, S: Subspace) -> Subspace:
    """Smallest subspace containing ``S`` and closed under right multiplication."""
    current = S
    while True:
        gens = list(current.basis)
        for v in current.basis:
            for j in range(A.dim):
                gens.append(A.mul_coords(v, A._unit(j)))
        nxt = el.echelonize(gens, A.field, A.dim)
        if nxt.dim == current.dim:
            return nxt
        current = nxt


def enumerate_ring(R: Ring, bound: int = DEFAULT_BOUND) -> Iterator[Element]:
    """Every element once; the index of an element is its mixed-radix value
    with coordinate 0 as the least significant digit."""
    if isinstance(R, Algebra):
        R = R.as_finite_ring()
    if R.order > bound:
        raise EnumerationBoundExceeded(R.order, bound)
    ranges = [range(m) for m in reversed(R.moduli)]
    for digits in itertools.product(*ranges):
        yield Element(R, digits[::-1])


# ---------------------------------------------------------------------------
# JSON interchange

def to_json(R: Ring) -> dict:
    if isinstance(R, FiniteRing):
        field = {"kind": "Zm", "moduli": list(R.moduli)}
        fmt = str
    else:
        field = R.field.to_json()
        fmt = R.field.format
    doc = {
        "field": field,
        "dim": R.dim,
        "basis": list(R.basis_names),
        "one": [fmt(c) for c in R.one],
        "mul": [[i, j, k, fmt(c)] for i, j, k, c in R.table_entries()],
    }
    if R.name:
        doc["name"] = R.name
    return doc


def dumps(R: Ring) -> str:
    return json.dumps(to_json(R), ensure_ascii=False, indent=1) + "\n"


def _scalar_text(value, where: str) -> str:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise AlgebraFormatError(where, f"scalar must be an integer or a decimal string, got {value!r}")
    if isinstance(value, str):
        try:
            Fraction(value.strip().replace("−", "-"))
        except (ValueError, ZeroDivisionError):
            raise AlgebraFormatError(where, f"unparseable scalar {value!r}") from None
    return value


def from_json(doc: dict) -> Ring:
    if not isinstance(doc, dict):
        raise AlgebraFormatError("$", "top level must be an object")
    for key in ("field", "dim", "basis", "one", "mul"):
        if key not in doc:
            raise AlgebraFormatError(key, "missing field")
    fdoc = doc["field"]
    if not isinstance(fdoc, dict) or "kind" not in fdoc:
        raise AlgebraFormatError("field", "expected an object with a 'kind'")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise AlgebraFormatError("dim", f"expected a nonnegative integer, got {dim!r}")
    basis = doc["basis"]
    if not isinstance(basis, list) or len(basis) != dim:
        raise AlgebraFormatError("basis", f"expected {dim} names")
    one = doc["one"]
    if not isinstance(one, list) or len(one) != dim:
        raise AlgebraFormatError("one", f"expected {dim} coordinates")
    one = [_scalar_text(c, f"one[{i}]") for i, c in enumerate(one)]
    entries = []
    if not isinstance(doc["mul"], list):
        raise AlgebraFormatError("mul", "expected a list of [i, j, k, c] entries")
    for n, e in enumerate(doc["mul"]):
        if not isinstance(e, list) or len(e) != 4:
            raise AlgebraFormatError(f"mul[{n}]", "expected [i, j, k, c]")
        for pos in range(3):
            if not isinstance(e[pos], int) or not 0 <= e[pos] < dim:
                raise AlgebraFormatError(f"mul[{n}][{pos}]", f"index {e[pos]!r} out of range")
        entries.append((e[0], e[1], e[2], _scalar_text(e[3], f"mul[{n}][3]")))
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise AlgebraFormatError("name", "expected a string")
    kind = fdoc["kind"]
    try:
        if kind == "Zm":
            moduli = fdoc.get("moduli")
            if not isinstance(moduli, list) or len(moduli) != dim:
                raise AlgebraFormatError("field.moduli", f"expected {dim} moduli")
            return FiniteRing(moduli, basis, entries, one, name=name)
        field = el.field_from_json(fdoc)
    except AlgebraFormatError:
        raise
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise AlgebraFormatError("field", str(exc)) from None
    try:
        return Algebra(field, basis, entries, one, name=name)
    except (ValueError, ZeroDivisionError) as exc:
        raise AlgebraFormatError("mul", str(exc)) from None


def loads(text: str) -> Ring:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return from_json(doc)

"""Deciding whether a ring is centrally essential.

A ring ``R`` with center ``C`` is centrally essential when every nonzero
``a`` admits central ``x`` with ``a x`` central and nonzero, i.e. ``aC`` meets
``C`` nontrivially.  Two independent procedures are provided:

* :func:`is_ce_subspace` -- for artinian ``R`` the center is essential in
  ``R_C`` exactly when the socle of ``R_C`` (the elements killed by
  ``J(C) = C & J(R)``) lies inside ``C``.  Pure linear algebra.
* :func:`is_ce_exhaustive` -- direct search over every element of a finite ring.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import exactlin as el
from . import invariants as inv
from .algebra import (
    DEFAULT_BOUND,
    Algebra,
    Element,
    EnumerationBoundExceeded,
    FiniteRing,
    Ring,
    is_commutative,
)
from .exactlin import ResidueModule
from .gallery import FiniteAbelianGroup, endomorphism_ring, hom_order
from .invariants import InvariantSet, RadicalCheckFailed, RadicalUndecided, Submodule

log = logging.getLogger(__name__)

CHUNK = 1 << 16


class NotLocal(ValueError):
    """Raised when the local-ring criteria are requested for a non-local ring."""


def _tri(x: bool | None) -> str:
    return "undecided" if x is None else ("true" if x else "false")


@dataclass
class Prop34Flags:
    quotient_commutative: bool | None = None
    socles_equal: bool | None = None
    socle_in_center: bool | None = None
    every_min_ideal_meets_center: str = "unknown"
    note: str = ""

    def to_json(self) -> dict:
        return {
            "quotient_commutative": _tri(self.quotient_commutative),
            "socles_equal": _tri(self.socles_equal),
            "socle_in_center": _tri(self.socle_in_center),
            "every_min_ideal_meets_center": self.every_min_ideal_meets_center,
            "note": self.note,
        }


@dataclass
class CEReport:
    ring: str
    decision: bool | None
    method: str
    witness_failure: tuple | None = None
    witness_text: str = ""
    prop34: Prop34Flags = field(default_factory=Prop34Flags)
    invariants: InvariantSet | None = None
    reason: str = ""
    order: int | None = None
    center_order: int | None = None
    consistent: bool | None = None

    def to_json(self) -> dict:
        out = {
            "ring": self.ring,
            "decision": _tri(self.decision),
            "method": self.method,
            "witness_failure": None if self.witness_failure is None else [str(c) for c in self.witness_failure],
            "witness_text": self.witness_text,
            "prop34": self.prop34.to_json(),
            "invariants": None if self.invariants is None else self.invariants.summary(),
            "reason": self.reason,
            "order": self.order,
            "center_order": self.center_order,
            "prop34_consistent": _tri(self.consistent),
        }
        return out


def _name(R: Ring) -> str:
    return getattr(R, "name", "") or repr(R)


# ---------------------------------------------------------------------------
# linear-algebra helpers shared by both ring kinds

def _images(R: Ring, a: Sequence, gens: Sequence[Sequence], side: str = "left") -> list[tuple]:
    if side == "left":
        return [R.mul_coords(a, g) for g in gens]
    return [R.mul_coords(g, a) for g in gens]


def _span(R: Ring, vectors) -> Submodule:
    return inv._span(R, vectors)


def cyclic_central_module(R: Ring, a: Sequence, C: Submodule | None = None) -> Submodule:
    """``aC`` as a submodule of ``R``."""
    C = inv.center(R) if C is None else C
    return _span(R, _images(R, a, C.basis))


def witness_is_failure(R: Ring, a: Sequence, C: Submodule | None = None) -> bool:
    """True iff ``aC & C = 0`` (so ``a`` certifies that ``R`` is not centrally essential)."""
    C = inv.center(R) if C is None else C
    if not any(a):
        return False
    return el.intersect(cyclic_central_module(R, a, C), C).is_zero()


def _combine(R: Ring, C: Submodule, lams) -> list[tuple]:
    """Elements ``sum lam_k c_k`` for coefficient vectors over the basis of ``C``."""
    if isinstance(C, ResidueModule):
        return [
            R._normalize([sum(int(l) * c[k] for l, c in zip(lam, C.basis)) for k in range(R.dim)]) for lam in lams
        ]
    return [el.lin_comb(lam, C.basis, R.field, R.dim) for lam in lams]


def _central_preimage(R: Ring, C: Submodule, images: list[tuple], target: Submodule) -> list[tuple]:
    """Spanning set of ``{c in C : phi(c) in target}`` where ``phi(c_k) = images[k]``."""
    if isinstance(C, ResidueModule):
        ords = [el.element_order(c, R.moduli) for c in C.basis]
        lams = el.residue_preimage(images, ords, target).basis
    else:
        lams = el.preimage(images, target, len(C.basis)).basis
    return _combine(R, C, lams)


def _central_kernel(R: Ring, C: Submodule, images: list[tuple], blocks: int) -> list[tuple]:
    """Spanning set of ``{c in C : phi(c) = 0}`` for ``phi`` into ``R^blocks``."""
    if not blocks:
        return list(C.basis)
    if isinstance(C, ResidueModule):
        ords = [el.element_order(c, R.moduli) for c in C.basis]
        lams = el.residue_kernel(images, ords, R.moduli * blocks).basis
    else:
        lams = el.kernel(images, R.field, len(C.basis)).basis
    return _combine(R, C, lams)


def ce_witness(R: Ring, a: Element | Sequence, C: Submodule | None = None) -> tuple[Element, Element] | None:
    """Central ``x`` with ``a x`` central and nonzero, or ``None`` if ``aC & C = 0``."""
    coords = a.coords if isinstance(a, Element) else R._normalize(a)
    if not any(coords):
        raise ValueError("the zero element has no witness")
    C = inv.center(R) if C is None else C
    if coords in C:
        return R.one_element(), R.element(coords)
    for x in _central_preimage(R, C, _images(R, coords, C.basis), C):
        y = R.mul_coords(coords, x)
        if any(y):
            return R.element(x), R.element(y)
    return None


def refine_failure(R: Ring, s: Sequence, C: Submodule) -> tuple | None:
    """Turn ``s`` in ``Soc(R_C)`` outside ``C`` into some ``a`` with ``aC & C = 0``.

    With ``A = {c : sc in C}`` and ``B = {c : s c A = 0}`` the ring
    ``C/ann(s)`` is semisimple, so ``A`` and ``B`` split it and ``s b`` is a
    witness for any ``b`` in ``B`` with ``s b != 0``.
    """
    s = R._normalize(s)
    A = _central_preimage(R, C, _images(R, s, C.basis), C)
    blocks = []
    for c in C.basis:
        sc = R.mul_coords(s, c)
        blocks.append(tuple(x for a in A for x in R.mul_coords(sc, a)))
    for b in _central_kernel(R, C, blocks, len(A)):
        w = R.mul_coords(s, b)
        if any(w) and witness_is_failure(R, w, C):
            return w
    return None


# ---------------------------------------------------------------------------
# subspace criterion

def _prop34_flags(R: Ring, I: InvariantSet) -> Prop34Flags:
    flags = Prop34Flags(
        quotient_commutative=I.quotient_commutative,
        socles_equal=I.socle_right == I.socle_central,
        socle_in_center=el.contains(I.center, I.socle_central),
    )
    if I.quotient_commutative:
        meets = el.contains(I.center, I.socle_right)
        flags.every_min_ideal_meets_center = "yes" if meets else "no"
        flags.note = "decided as Soc(R_R) inside C, valid because R/J(R) is commutative"
    else:
        flags.every_min_ideal_meets_center = "unknown"
        flags.note = "R/J(R) is not commutative; minimal right ideals are not enumerated"
    return flags


def _find_failure_witness(R: Ring, I: InvariantSet) -> tuple | None:
    candidates = list(I.socle_right.basis) + list(I.socle_central.basis)
    for s in candidates:
        s = R._normalize(s)
        if s in I.center:
            continue
        if witness_is_failure(R, s, I.center):
            return s
    for s in I.socle_central.basis:
        if R._normalize(s) not in I.center:
            w = refine_failure(R, s, I.center)
            if w is not None:
                return w
    return None


def is_ce_subspace(R: Ring, invariants: InvariantSet | None = None) -> CEReport:
    """Decide via ``Soc(R_C) <= C``; works for algebras and for finite rings."""
    try:
        I = inv.compute_invariants(R) if invariants is None else invariants
    except (RadicalUndecided, RadicalCheckFailed) as exc:
        return CEReport(_name(R), None, "subspace_criterion", reason=str(exc))
    decision = el.contains(I.center, I.socle_central)
    report = CEReport(_name(R), decision, "subspace_criterion", invariants=I)
    report.prop34 = _prop34_flags(R, I)
    if isinstance(I.center, ResidueModule):
        report.center_order = I.center.order()
        report.order = R.order
    elif R.field.char:
        report.center_order = R.field.char ** I.center.dim
        report.order = R.field.char ** R.dim
    if not decision:
        w = _find_failure_witness(R, I)
        if w is not None:
            report.witness_failure = tuple(w)
            report.witness_text = R.format_element(w)
    report.consistent = _prop34_consistent(report)
    return report


def _prop34_consistent(report: CEReport) -> bool | None:
    """Both directions of the local-ring criteria, when the ring is local."""
    I = report.invariants
    if I is None or I.local != "yes" or report.decision is None:
        return None
    f = report.prop34
    meets = f.every_min_ideal_meets_center == "yes"
    ok = True
    if report.decision:
        ok &= bool(f.quotient_commutative) and meets
    if f.quotient_commutative and f.socles_equal and meets:
        ok &= report.decision
    return ok


def prop34_check(R: Ring, invariants: InvariantSet | None = None) -> CEReport:
    """Evaluate the local-ring criteria; raises :class:`NotLocal` unless ``R`` is local."""
    I = inv.compute_invariants(R) if invariants is None else invariants
    if I.local != "yes":
        raise NotLocal(f"{_name(R)} is not known to be local (local = {I.local})")
    report = is_ce_subspace(R, I)
    if report.consistent is False:
        raise AssertionError(f"local-ring criteria contradict the decision for {_name(R)}")
    return report


# ---------------------------------------------------------------------------
# exhaustive search

def _as_finite(R: Ring) -> FiniteRing:
    return R.as_finite_ring() if isinstance(R, Algebra) else R


def _chunks(order: int, size: int = CHUNK) -> list[tuple[int, int]]:
    return [(s, min(s + size, order)) for s in range(0, order, size)]


def exhaustive_center(R: FiniteRing, jobs: int = 1) -> np.ndarray:
    """Sorted enumeration codes of every central element (checked against all generators)."""
    gens = [R._unit(i) for i in range(R.dim)]
    rights = [R.right_np(g) for g in gens]
    lefts = [R.left_np(g) for g in gens]

    def scan(bounds):
        E = R.elements_array(*bounds)
        mask = np.ones(len(E), dtype=bool)
        for Rg, Lg in zip(rights, lefts):
            mask &= (R.reduce_np(E @ Rg) == R.reduce_np(E @ Lg)).all(axis=1)
        return np.arange(*bounds, dtype=np.int64)[mask]

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        parts = list(pool.map(scan, _chunks(R.order)))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def is_ce_exhaustive(R: Ring, bound: int = DEFAULT_BOUND, jobs: int = 1) -> CEReport:
    """Check every nonzero element directly.

    The failure witness is the first failing element in enumeration order
    (mixed radix, coordinate 0 least significant).
    """
    F = _as_finite(R)
    name = _name(R)
    if F.order > bound:
        return CEReport(name, None, "exhaustive", order=F.order,
                        reason=f"ring order {F.order} exceeds enumeration bound {bound}")
    if F.dim == 0:
        return CEReport(name, True, "exhaustive", order=1, center_order=1, reason="zero ring")
    central = exhaustive_center(F, jobs)
    one_code = int(F.codes(np.array([F.one]))[0])
    xs = [one_code] + [int(c) for c in central if c != one_code]
    xs_rights = [F.right_np(tuple(int(c) for c in (code // F._radix) % F._moduli_array)) for code in xs]

    def scan(bounds):
        start, stop = bounds
        E = F.elements_array(start, stop)
        idx = np.arange(start, stop, dtype=np.int64)
        keep = idx != 0
        E, idx = E[keep], idx[keep]
        for Rx in xs_rights:
            if not len(idx):
                break
            codes = F.codes(F.reduce_np(E @ Rx))
            ok = (codes != 0) & np.isin(codes, central)
            E, idx = E[~ok], idx[~ok]
        return int(idx.min()) if len(idx) else None

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        fails = [w for w in pool.map(scan, _chunks(F.order)) if w is not None]
    report = CEReport(name, not fails, "exhaustive", order=F.order, center_order=len(central))
    if fails:
        code = min(fails)
        w = tuple(int(x) for x in (code // F._radix) % F._moduli_array)
        report.witness_failure = w
        report.witness_text = F.format_element(w)
    return report


def prop34_exhaustive(R: Ring, bound: int = inv.EXHAUSTIVE_RADICAL_BOUND) -> dict:
    """Brute-force evaluation of the local-ring flags and of ``Soc(R_R)``.

    Minimal right ideals are found among the principal right ideals ``aR``.
    """
    F = _as_finite(R)
    if F.order > bound:
        raise EnumerationBoundExceeded(F.order, bound)
    J = inv.radical_exhaustive(F, bound)
    E = F.elements_array()
    central = set(int(c) for c in exhaustive_center(F))
    P = F.products
    quotient_comm = all(
        F._normalize([a - b for a, b in zip(P[i][j], P[j][i])]) in J
        for i in range(F.dim) for j in range(i + 1, F.dim)
    )
    ideals = {}
    for code in range(1, F.order):
        a = E[code]
        ideals[code] = frozenset(int(c) for c in F.codes(F.reduce_np(E @ F.left_np(a))))
    distinct = set(ideals.values())
    minimal = [M for M in distinct if not any(N < M and len(N) > 1 for N in distinct)]
    meets = all(len(M & central) > 1 for M in minimal)
    socle = el.howell([tuple(int(x) for x in E[c]) for M in minimal for c in M], F.moduli)
    return {
        "radical": J,
        "quotient_commutative": quotient_comm,
        "minimal_right_ideals": len(minimal),
        "every_min_ideal_meets_center": meets,
        "socle_right": socle,
        "center_order": len(central),
    }


# ---------------------------------------------------------------------------
# decompositions of finite abelian groups

@dataclass
class Lemma21Verdict:
    components: list[str]
    fully_invariant: bool
    nonzero_homs: list[tuple[int, int]]
    component_ce: list[bool | None]
    verdict: bool | None
    direct: bool | None

    @property
    def agrees(self) -> bool:
        return self.verdict == self.direct


def lemma21_check(parts: Sequence[FiniteAbelianGroup], bound: int = DEFAULT_BOUND) -> Lemma21Verdict:
    """Decide CE of ``End(A_1 + ... + A_r)`` componentwise and compare with the direct decision."""
    nonzero = [
        (i, j) for i in range(len(parts)) for j in range(len(parts))
        if i != j and hom_order(parts[i], parts[j]) > 1
    ]
    comp = [is_ce_subspace(endomorphism_ring(P, bound)).decision for P in parts]
    verdict = None if None in comp else (not nonzero and all(comp))
    whole = FiniteAbelianGroup(tuple(s for P in parts for s in P.summands))
    direct = is_ce_subspace(endomorphism_ring(whole, bound)).decision
    return Lemma21Verdict([str(P) for P in parts], not nonzero, nonzero, comp, verdict, direct)


def decide(R: Ring, bound: int = DEFAULT_BOUND, jobs: int = 1, exhaustive: bool | None = None) -> CEReport:
    """Subspace criterion, cross-checked exhaustively when the ring is finite and small enough."""
    report = is_ce_subspace(R)
    finite = isinstance(R, FiniteRing) or (isinstance(R, Algebra) and R.field.char)
    if exhaustive is None:
        exhaustive = bool(finite) and _as_finite(R).order <= bound
    if exhaustive and finite:
        ex = is_ce_exhaustive(R, bound, jobs)
        if ex.decision is not None:
            if ex.decision != report.decision:
                raise AssertionError(
                    f"procedures disagree on {_name(R)}: subspace={report.decision} exhaustive={ex.decision}"
                )
            report.method = "both"
            if ex.witness_failure is not None:
                report.witness_failure = ex.witness_failure
                report.witness_text = ex.witness_text
    return report

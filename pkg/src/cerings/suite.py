"""The reproduction suite: one row per acceptance criterion, expected vs computed."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import exactlin as el
from . import gallery as g
from . import invariants as inv
from .algebra import DEFAULT_BOUND, Algebra, FiniteRing, is_commutative, regular_representation, right_ideal_closure
from .ce import is_ce_exhaustive, is_ce_subspace, prop34_exhaustive
from .exactlin import QQ, PrimeField


@dataclass
class Row:
    number: int
    title: str
    expected: str
    computed: str
    passed: bool

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d} {self.title}: expected {self.expected}; computed {self.computed}"


@dataclass
class SuiteConfig:
    bound: int = DEFAULT_BOUND
    seed: int = 0
    trials: int = 100
    cases: int = 1000
    jobs: int = 1


def _tri(x) -> str:
    return "undecided" if x is None else str(x).lower()


def criterion_1(cfg: SuiteConfig) -> Row:
    R = g.group_algebra(g.quaternion_group(), PrimeField(2))
    I = inv.compute_invariants(R)
    ex = is_ce_exhaustive(R, cfg.bound, cfg.jobs)
    sub = is_ce_subspace(R, I)
    order = 2**R.dim
    brute = prop34_exhaustive(R) if order <= inv.EXHAUSTIVE_RADICAL_BOUND else None
    flags = sub.prop34
    got = (
        f"order={order}, commutative={I.commutative}, local={I.local}, CE(exhaustive)={_tri(ex.decision)}, "
        f"(i)={flags.quotient_commutative}, (iii)={flags.every_min_ideal_meets_center}"
    )
    ok = (
        order == 256 and not I.commutative and I.local == "yes" and ex.decision is True
        and flags.quotient_commutative is True and flags.every_min_ideal_meets_center == "yes"
    )
    if brute is not None:
        got += f", brute (i)={brute['quotient_commutative']}, brute (iii)={brute['every_min_ideal_meets_center']}"
        ok = ok and brute["quotient_commutative"] and brute["every_min_ideal_meets_center"]
    exp = "order=256, commutative=False, local=yes, CE(exhaustive)=true, (i)=True, (iii)=yes"
    return Row(1, "F2[Q8] is a noncommutative CE local ring of order 256", exp, got, ok)


def criterion_2(cfg: SuiteConfig) -> Row:
    parity = {n: is_ce_subspace(g.grassmann(n, QQ)).decision for n in range(1, 6)}
    R = g.grassmann(3, PrimeField(3))
    sub = is_ce_subspace(R).decision
    ex = is_ce_exhaustive(R, cfg.bound, cfg.jobs).decision
    ok = all(parity[n] is (n % 2 == 1) for n in parity) and sub is True and ex is True
    got = ", ".join(f"n={n}:{_tri(d)}" for n, d in parity.items()) + f"; F3^3 subspace={_tri(sub)} exhaustive={_tri(ex)}"
    exp = "n=1:true, n=2:false, n=3:true, n=4:false, n=5:true; F3^3 subspace=true exhaustive=true"
    return Row(2, "Grassmann algebras are CE exactly in odd dimension", exp, got, ok)


def criterion_3(cfg: SuiteConfig) -> Row:
    R = g.grassmann(3, QQ)
    I = inv.compute_invariants(R)
    ce = is_ce_subspace(R, I).decision
    dims = (I.center.dim, I.radical.dim, I.socle_right.dim, I.socle_central.dim)
    differ = I.socle_right != I.socle_central
    ok = dims == (5, 7, 1, 4) and differ and ce is True
    got = f"dim C={dims[0]}, dim J={dims[1]}, dim Soc(R_R)={dims[2]}, dim Soc(R_C)={dims[3]}, socles differ={differ}, CE={_tri(ce)}"
    exp = "dim C=5, dim J=7, dim Soc(R_R)=1, dim Soc(R_C)=4, socles differ=True, CE=true"
    return Row(3, "invariants of the exterior algebra of Q^3", exp, got, ok)


def printed_matrix(q) -> list[list]:
    """The 8x8 left regular matrix of ``x = sum q_i b_i`` as printed for the exterior algebra of rank 3."""
    z = 0
    return [
        [q[0], q[1], q[2], q[3], q[4], q[5], q[6], q[7]],
        [z, q[0], z, z, -q[2], z, -q[3], q[5]],
        [z, z, q[0], z, q[1], -q[3], z, -q[6]],
        [z, z, z, q[0], z, q[2], q[1], q[4]],
        [z, z, z, z, q[0], z, z, q[3]],
        [z, z, z, z, z, q[0], z, q[1]],
        [z, z, z, z, z, z, q[0], -q[2]],
        [z, z, z, z, z, z, z, q[0]],
    ]


def criterion_4(cfg: SuiteConfig) -> Row:
    A = g.grassmann(3, QQ)
    rng = random.Random(cfg.seed)
    # the matrix is linear in q, so the unit vectors settle the symbolic identity
    samples = [[1 if k == i else 0 for k in range(8)] for i in range(8)]
    samples += [[Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(8)] for _ in range(cfg.trials)]
    mismatches = 0
    for q in samples:
        M = [list(r) for r in regular_representation(A, q)]
        mismatches += M != printed_matrix(q)
    q = samples[-1]
    M = regular_representation(A, q)
    rows_ok = (
        list(M[1]) == [0, q[0], 0, 0, -q[2], 0, -q[3], q[5]]
        and list(M[2]) == [0, 0, q[0], 0, q[1], -q[3], 0, -q[6]]
    )
    ok = mismatches == 0 and rows_ok
    got = f"{mismatches} mismatching matrices out of {len(samples)}, rows 2 and 3 match={rows_ok}"
    return Row(4, "regular representation matches the printed matrix", f"0 mismatching matrices, rows 2 and 3 match=True", got, ok)


def criterion_5(cfg: SuiteConfig) -> Row:
    parts = []
    ok = True
    for kind, k in [("K", None), ("R", None), ("S", 1), ("S", -2), ("S", Fraction(7, 3))]:
        A = g.rank3_algebra(kind, k)
        comm, ce = is_commutative(A), is_ce_subspace(A).decision
        ok &= comm and ce is True
        parts.append(f"{kind}{'' if k is None else f'({k})'}: comm={comm} CE={_tri(ce)}")
    T = g.rank3_algebra("T")
    I = inv.compute_invariants(T)
    M = el.echelonize([T["e23"].coords], QQ, T.dim)
    is_right_ideal = right_ideal_closure(T, M) == M
    meets = not el.intersect(M, I.center).is_zero()
    ce = is_ce_subspace(T, I).decision
    t_ok = (not I.commutative) and I.quotient_commutative and is_right_ideal and el.contains(I.socle_right, M) and not meets and ce is False
    ok &= t_ok
    parts.append(
        f"T: comm={I.commutative} T/J comm={I.quotient_commutative} M=span(e23) minimal right ideal={is_right_ideal} "
        f"C&M nonzero={meets} CE={_tri(ce)}"
    )
    exp = "K, R, S(1), S(-2), S(7/3) commutative and CE; T noncommutative, T/J commutative, C&M=0, CE=false"
    return Row(5, "the rank-three examples K, R, S(k), T", exp, "; ".join(parts), ok)


def criterion_6(cfg: SuiteConfig) -> Row:
    total = bad = checked = 0
    details = []
    for n in range(1, 65):
        for A in g.abelian_groups_of_order(n):
            total += 1
            R = g.endomorphism_ring(A, cfg.bound)
            d = is_ce_subspace(R).decision
            cyc, comm = A.every_component_cyclic(), is_commutative(R)
            if R.order <= min(cfg.bound, 2**16):
                checked += 1
                if is_ce_exhaustive(R, cfg.bound, cfg.jobs).decision != d:
                    bad += 1
                    details.append(f"{A}: procedures disagree")
            if not (d == cyc == comm):
                bad += 1
                details.append(f"{A}: CE={_tri(d)} cyclic={cyc} comm={comm}")
    m2 = is_ce_subspace(g.endomorphism_ring(g.FiniteAbelianGroup.parse("2:1,2:1"))).decision
    z4 = is_ce_subspace(g.endomorphism_ring(g.FiniteAbelianGroup.parse("2:2"))).decision
    ok = bad == 0 and m2 is False and z4 is True
    got = f"{total} groups, {bad} mismatches, {checked} cross-checked exhaustively; End(Z2+Z2) CE={_tri(m2)}, End(Z4) CE={_tri(z4)}"
    if details:
        got += " [" + "; ".join(details[:5]) + "]"
    return Row(6, "End(A) is CE iff cyclic p-components iff commutative, |A| <= 64",
               "0 mismatches; End(Z2+Z2) CE=false, End(Z4) CE=true", got, ok)


def _finite_order(R) -> int | None:
    if isinstance(R, FiniteRing):
        return R.order
    if isinstance(R, Algebra) and R.field.char:
        return R.field.char**R.dim
    return None


def criterion_7(cfg: SuiteConfig) -> Row:
    compared = bad = undecided = 0
    details = []
    for label, R in g.gallery_instances():
        order = _finite_order(R)
        if not isinstance(R, Algebra) or order is None or order > 2**16:
            continue
        compared += 1
        sub = is_ce_subspace(R).decision
        ex = is_ce_exhaustive(R, cfg.bound, cfg.jobs).decision
        if ex is None:
            undecided += 1
            details.append(f"{label}: exhaustive undecided")
        elif sub != ex:
            bad += 1
            details.append(f"{label}: subspace={_tri(sub)} exhaustive={_tri(ex)}")
    ok = bad == 0 and undecided == 0 and compared > 0
    got = f"{compared} algebras compared, {bad} disagreements, {undecided} undecided"
    if details:
        got += " [" + "; ".join(details[:5]) + "]"
    return Row(7, "subspace criterion agrees with exhaustive search", "0 disagreements, 0 undecided", got, ok)


def criterion_8(cfg: SuiteConfig) -> Row:
    rings = list(g.gallery_instances())
    semiprime_nc = violations = 0
    for label, R in rings:
        I = inv.compute_invariants(R)
        if I.semiprime and not I.commutative:
            semiprime_nc += 1
            violations += is_ce_subspace(R, I).decision is not False
    ok = violations == 0
    got = f"{len(rings)} rings swept, {semiprime_nc} semiprime noncommutative, {violations} of them CE"
    return Row(8, "semiprime noncommutative rings are never CE", "0 CE among semiprime noncommutative", got, ok)


def criterion_9(cfg: SuiteConfig) -> Row:
    v = g.derivation_ring_ce_sample(trials=cfg.trials, deg_bound=3, coeff_bound=9, seed=cfg.seed)
    got = f"{v.trials} samples, {len(v.failures)} failures, {v.zero_diagonal} with zero diagonal"
    return Row(9, "sampled derivation ring elements meet the center", "0 failures", got, v.passed)


# ---------------------------------------------------------------------------
# randomized linear-algebra properties

def _random_vectors(rng: random.Random, field, rows: int, cols: int) -> list[tuple]:
    if field.char:
        return [tuple(rng.randrange(field.char) for _ in range(cols)) for _ in range(rows)]
    return [tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) if rng.random() < 0.6 else Fraction(0)
                  for _ in range(cols)) for _ in range(rows)]


def _random_field(rng: random.Random):
    return rng.choice([QQ, PrimeField(2), PrimeField(3), PrimeField(7)])


def prop_echelon_canonical(rng: random.Random) -> bool:
    """Echelon form depends only on the span: recombined generators give the same form."""
    F = _random_field(rng)
    n = rng.randint(1, 7)
    vecs = _random_vectors(rng, F, rng.randint(0, 6), n)
    U = el.echelonize(vecs, F, n)
    coeffs = _random_vectors(rng, F, rng.randint(0, 8), len(vecs)) if vecs else []
    mixed = [el.lin_comb(c, vecs, F, n) for c in coeffs] + list(U.basis)
    V = el.echelonize(mixed, F, n)
    return U == V and all(v in U for v in vecs)


def prop_dimension_formula(rng: random.Random) -> bool:
    """``dim(U + V) + dim(U & V) = dim U + dim V``."""
    F = _random_field(rng)
    n = rng.randint(1, 7)
    U = el.echelonize(_random_vectors(rng, F, rng.randint(0, n), n), F, n)
    V = el.echelonize(_random_vectors(rng, F, rng.randint(0, n), n), F, n)
    S, I = el.span_sum(U, V), el.intersect(U, V)
    return S.dim + I.dim == U.dim + V.dim and el.contains(U, I) and el.contains(V, I)


def prop_howell_canonical(rng: random.Random) -> bool:
    """Howell form depends only on the generated submodule."""
    k = rng.randint(1, 4)
    moduli = tuple(rng.choice([2, 3, 4, 6, 8, 9, 12, 16, 27]) for _ in range(k))
    gens = [tuple(rng.randrange(m) for m in moduli) for _ in range(rng.randint(0, 4))]
    H = el.howell(gens, moduli)
    mixed = []
    for _ in range(rng.randint(0, 5)):
        coeffs = [rng.randrange(72) for _ in gens]
        mixed.append(tuple(sum(c * v[i] for c, v in zip(coeffs, gens)) % moduli[i] for i in range(k)))
    H2 = el.howell(mixed + list(reversed(H.basis)), moduli)
    # brute force: the module generated by gens, as a set of vectors
    return H == H2 and all(v in H for v in gens) and H.order() == len(_closure(gens, moduli))


def _closure(gens, moduli) -> set:
    seen = {tuple(0 for _ in moduli)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for gvec in gens:
                w = tuple((a + b) % m for a, b, m in zip(v, gvec, moduli))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


PROPERTIES: dict[str, Callable[[random.Random], bool]] = {
    "echelon canonical form": prop_echelon_canonical,
    "dimension formula": prop_dimension_formula,
    "Howell canonicality": prop_howell_canonical,
}


def criterion_10(cfg: SuiteConfig) -> Row:
    rng = random.Random(cfg.seed)
    failures = {name: sum(not prop(rng) for _ in range(cfg.cases)) for name, prop in PROPERTIES.items()}
    got = ", ".join(f"{name}: {f} failures / {cfg.cases}" for name, f in failures.items())
    exp = ", ".join(f"{name}: 0 failures / {cfg.cases}" for name in PROPERTIES)
    return Row(10, "randomized linear algebra properties", exp, got, not any(failures.values()))


CRITERIA: list[Callable[[SuiteConfig], Row]] = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
]


def run_suite(cfg: SuiteConfig | None = None) -> list[Row]:
    cfg = cfg or SuiteConfig()
    rows = []
    for crit in CRITERIA:
        try:
            rows.append(crit(cfg))
        except Exception as exc:  # a crash is a failed row, not a crashed suite
            rows.append(Row(CRITERIA.index(crit) + 1, crit.__name__, "completes", f"error: {exc!r}", False))
    return rows

from fractions import Fraction
from itertools import product
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cerings import exactlin as el
from cerings.exactlin import QQ, FieldMismatch, PrimeField

F2, F5 = PrimeField(2), PrimeField(5)


def test_parse_field():
    assert el.parse_field("Q") is QQ
    assert el.parse_field("F5") == F5
    assert el.field_from_json(F5.to_json()) == F5
    with pytest.raises(ValueError):
        PrimeField(6)


def test_prime_field_arithmetic():
    assert F5(7) == 2
    assert F5.inv(2) == 3
    assert F5(Fraction(1, 2)) == 3


def test_echelonize_examples():
    assert el.echelonize([(2, 0), (0, 3)], QQ).basis == ((1, 0), (0, 1))
    U = el.echelonize([(1, 1), (2, 2)], QQ)
    assert U.basis == ((1, 1),) and U.dim == 1
    assert el.echelonize([(1, 1), (1, 2)], F2).basis == ((1, 0), (0, 1))


def test_mixed_scalars_rejected():
    with pytest.raises(FieldMismatch):
        el.echelonize([(Fraction(1, 2), 0)], F5)


def test_solve_linear_examples():
    assert el.solve_linear([[1, 0], [0, 1]], [3, 4], QQ) == (3, 4)
    assert el.solve_linear([[1, 1], [2, 2]], [1, 3], QQ) is None
    assert el.solve_linear([[2]], [3], F5) == (4,)


def test_intersect_and_contains_examples():
    U = el.echelonize([(1, 0)], QQ, 2)
    V = el.echelonize([(0, 1)], QQ, 2)
    assert el.intersect(U, V).is_zero()
    assert el.intersect(U, U) == U
    assert el.contains(U, el.zero_subspace(QQ, 2))
    assert not el.contains(U, el.echelonize([(1, 1)], QQ, 2))


def test_kernel_and_preimage():
    # x -> (x0 + x1, x1 + x2) over Q
    images = [(1, 0), (1, 1), (0, 1)]
    K = el.kernel(images, QQ, 3)
    assert K.basis == ((1, -1, 1),)
    target = el.echelonize([(1, 0)], QQ, 2)
    P = el.preimage(images, target, 3)
    assert P.dim == 2 and (1, 0, 0) in P and (0, 0, 1) not in P


def test_howell_examples():
    assert el.howell([(2,)], (4,)).basis == ((2,),)
    assert el.howell([(2,), (3,)], (4,)).basis == ((1,),)
    assert el.howell([(2, 0), (0, 2)], (4, 4)).basis == ((2, 0), (0, 2))


def _closure(gens, moduli):
    return {
        tuple(sum(c * g[i] for c, g in zip(cs, gens)) % m for i, m in enumerate(moduli))
        for cs in product(*[range(lcm(*moduli))] * len(gens))
    }


def test_residue_kernel_matches_brute_force():
    # Z/4 + Z/2 -> Z/4, e1 -> 2, e2 -> 2
    K = el.residue_kernel([(2,), (2,)], (4, 2), (4,))
    brute = {(a, b) for a in range(4) for b in range(2) if (2 * a + 2 * b) % 4 == 0}
    assert K.order() == len(brute)
    assert all(v in K for v in brute)


def test_residue_kernel_rejects_ill_defined_map():
    with pytest.raises(ValueError):
        el.residue_kernel([(1,)], (2,), (4,))


moduli_st = st.lists(st.sampled_from([2, 3, 4, 6, 8, 9]), min_size=1, max_size=3).map(tuple)


@settings(max_examples=150, deadline=None)
@given(moduli_st, st.data())
def test_howell_is_canonical(moduli, data):
    vec = st.tuples(*[st.integers(0, m - 1) for m in moduli])
    gens = data.draw(st.lists(vec, max_size=3))
    H = el.howell(gens, moduli)
    assert el.howell(list(reversed(gens)) + list(H.basis), moduli) == H
    assert H.order() == len(_closure(gens, moduli)) if gens else H.is_zero()
    assert all(g in H for g in gens)


@settings(max_examples=150, deadline=None)
@given(moduli_st, st.data())
def test_residue_intersection_and_sum(moduli, data):
    vec = st.tuples(*[st.integers(0, m - 1) for m in moduli])
    U = el.howell(data.draw(st.lists(vec, max_size=2)), moduli)
    V = el.howell(data.draw(st.lists(vec, max_size=2)), moduli)
    S, I = el.residue_sum(U, V), el.residue_intersect(U, V)
    assert S.order() * I.order() == U.order() * V.order()
    assert el.contains(U, I) and el.contains(V, I) and el.contains(S, U)


rational = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5), st.data())
def test_dimension_formula_over_q(n, data):
    vecs = st.lists(st.tuples(*[rational] * n), max_size=n)
    U = el.echelonize(data.draw(vecs), QQ, n)
    V = el.echelonize(data.draw(vecs), QQ, n)
    assert el.span_sum(U, V).dim + el.intersect(U, V).dim == U.dim + V.dim


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5), st.sampled_from([2, 3, 7]), st.data())
def test_rref_is_canonical_mod_p(n, p, data):
    F = PrimeField(p)
    rows = data.draw(st.lists(st.tuples(*[st.integers(0, p - 1)] * n), max_size=5))
    U = el.echelonize(rows, F, n)
    shuffled = data.draw(st.permutations(rows)) if rows else []
    assert el.echelonize(list(shuffled) + [tuple((2 * x) % p for x in r) for r in rows], F, n) == U
    for v in rows:
        assert v in U
        assert all(x == 0 for x in U.reduce(v))


def test_nullspace_annihilates():
    M = [[1, 2, 3], [2, 4, 6]]
    for v in el.nullspace(M, 3, QQ):
        assert el.mat_vec(M, v, QQ) == (0, 0)


@settings(max_examples=100, deadline=None)
@given(st.integers(10**64, 10**70), st.integers(10**64, 10**70))
def test_big_rationals_are_exact(a, b):
    x = QQ(Fraction(a, b))
    assert x * QQ.inv(x) == 1
    U = el.echelonize([(x, 1), (1, QQ.inv(x))], QQ, 2)
    assert U.dim == 1


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.data())
def test_mutual_containment_is_equality(n, data):
    vecs = st.lists(st.tuples(*[st.integers(-2, 2)] * n), max_size=n)
    U = el.echelonize(data.draw(vecs), QQ, n)
    V = el.echelonize(data.draw(vecs), QQ, n)
    assert (el.contains(U, V) and el.contains(V, U)) == (U == V)

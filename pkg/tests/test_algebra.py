import json
from fractions import Fraction

import pytest

from cerings import algebra as alg
from cerings import gallery as g
from cerings.algebra import Algebra, AlgebraFormatError, EnumerationBoundExceeded, FiniteRing, ParentMismatch
from cerings.exactlin import QQ, PrimeField

F2 = PrimeField(2)


@pytest.fixture(scope="module")
def L3():
    return g.grassmann(3, QQ)


@pytest.fixture(scope="module")
def T():
    return g.rank3_algebra("T")


def planted_defect() -> Algebra:
    """Basis 1, b1..b4 with b1 b1 = b3 and b3 b2 = b4 but b1 b2 = 0: only (b1 b1) b2 breaks."""
    table = [(0, i, i, 1) for i in range(5)] + [(i, 0, i, 1) for i in range(1, 5)]
    table += [(1, 1, 3, 1), (3, 2, 4, 1)]
    return Algebra(QQ, ["1", "b1", "b2", "b3", "b4"], table, [1, 0, 0, 0, 0])


def test_grassmann_products(L3):
    e1, e2, e3 = L3["e1"], L3["e2"], L3["e3"]
    assert e1 * e2 == L3["e1^e2"]
    assert e2 * e1 == -L3["e1^e2"]
    assert (e1 * e2) * e3 == L3["e1^e2^e3"]
    assert (e1 * e1).is_zero()


def test_identity_acts_trivially(L3):
    a = L3.element([Fraction(k, 3) for k in range(8)])
    assert L3.one_element() * a == a == a * L3.one_element()


def test_commutators(L3, T):
    assert alg.commutator(L3["e1"], L3["e1"]).is_zero()
    assert alg.commutator(L3["e1"], L3["e2"]) == 2 * L3["e1^e2"]
    assert alg.commutator(T["e12"], T["e23"]) == T["e13"]


def test_is_commutative():
    for kind, k in [("K", None), ("R", None), ("S", 1)]:
        assert alg.is_commutative(g.rank3_algebra(kind, k))
    assert not alg.is_commutative(g.rank3_algebra("T"))
    assert not alg.is_commutative(g.group_algebra(g.quaternion_group(), F2))


def test_parent_mismatch(L3, T):
    with pytest.raises(ParentMismatch):
        L3["e1"] * T["e12"]


def test_regular_representation_basics(L3):
    assert alg.regular_representation(L3, L3.one) == tuple(
        tuple(1 if i == j else 0 for j in range(8)) for i in range(8)
    )
    M = alg.regular_representation(L3, L3["e3"].coords)
    assert M[0] == (0, 0, 0, 1, 0, 0, 0, 0)


def test_regular_representation_is_antimultiplicative(L3):
    x = L3.element([1, 2, 0, -1, 3, 0, 1, 2])
    y = L3.element([0, 1, 1, 0, -2, 1, 0, 5])
    Mx, My, Mxy = (alg.regular_representation(L3, z.coords) for z in (x, y, x * y))
    prod = tuple(tuple(sum(My[i][k] * Mx[k][j] for k in range(8)) for j in range(8)) for i in range(8))
    assert Mxy == prod


def test_validate_gallery():
    assert alg.validate(g.grassmann(3, QQ)) == []
    assert alg.validate(g.group_algebra(g.quaternion_group(), F2)) == []
    assert all(v == [] for v in g.check_gallery().values())


def test_planted_associativity_defect():
    violations = alg.validate(planted_defect())
    assert len(violations) == 1
    v = violations[0]
    assert v.kind == "associativity" and v.indices == (1, 1, 2)


def test_missing_identity_detected():
    A = Algebra(QQ, ["a", "b"], [(0, 0, 0, 1)], [1, 0])
    kinds = {v.kind for v in alg.validate(A)}
    assert kinds & {"left-identity", "right-identity"}


def test_finite_ring_well_definedness():
    # coefficient 1 on a Z/2 coordinate of a product landing in Z/4 is fine, the reverse is not
    bad = FiniteRing([4, 2], ["1", "t"], [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)], [1, 0])
    assert any(v.kind == "well-defined" for v in alg.validate(bad))


def test_right_ideal_closure(T):
    from cerings import exactlin as el

    M = el.echelonize([T["e23"].coords], QQ, 4)
    assert alg.right_ideal_closure(T, M) == M
    N = el.echelonize([T["e12"].coords], QQ, 4)
    assert alg.right_ideal_closure(T, N) == el.echelonize([T["e12"].coords, T["e13"].coords], QQ, 4)
    assert alg.right_ideal_closure(T, el.echelonize([T.one], QQ, 4)).dim == 4


def test_enumerate_ring():
    Z4 = FiniteRing([4], ["1"], [(0, 0, 0, 1)], [1])
    assert len(list(alg.enumerate_ring(Z4))) == 4
    assert len(list(alg.enumerate_ring(g.group_algebra(g.quaternion_group(), F2)))) == 256
    E = g.endomorphism_ring(g.FiniteAbelianGroup.parse("2:1,2:2"))
    assert E.order == 32 and len(list(alg.enumerate_ring(E))) == 32
    with pytest.raises(EnumerationBoundExceeded):
        list(alg.enumerate_ring(g.group_algebra(g.quaternion_group(), F2), bound=100))


def test_enumeration_order_has_coordinate_zero_fastest():
    Z = FiniteRing([2, 3], ["a", "b"], [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], [1, 0])
    coords = [e.coords for e in alg.enumerate_ring(Z)]
    assert coords[:3] == [(0, 0), (1, 0), (0, 1)]


@pytest.mark.parametrize("label,R", g.gallery_instances(include_large=False))
def test_json_round_trip(label, R):
    text = alg.dumps(R)
    back = alg.loads(text)
    assert back == R and back.name == R.name
    assert alg.dumps(back) == text
    assert all(isinstance(e[3], str) for e in json.loads(text)["mul"])


def test_rational_scalars_serialize_as_strings():
    S = g.rank3_algebra("S", Fraction(7, 3))
    doc = alg.to_json(S)
    assert "7/3" in {e[3] for e in doc["mul"]}
    assert alg.from_json(doc) == S


@pytest.mark.parametrize(
    "mutate,where",
    [
        (lambda d: d.pop("mul"), "mul"),
        (lambda d: d.__setitem__("dim", "three"), "dim"),
        (lambda d: d["mul"].append([0, 9, 0, "1"]), "mul[{n}][1]"),
        (lambda d: d["mul"].append([0, 1, 1, 1.5]), "mul[{n}][3]"),
        (lambda d: d["mul"].append([0, 1, 1, "x/y"]), "mul[{n}][3]"),
        (lambda d: d.__setitem__("field", {"kind": "Fp", "p": 6}), "field"),
    ],
)
def test_malformed_documents(mutate, where):
    doc = alg.to_json(g.rank3_algebra("K"))
    n = len(doc["mul"])
    mutate(doc)
    with pytest.raises(AlgebraFormatError) as info:
        alg.from_json(doc)
    assert info.value.where == where.format(n=n)


def test_malformed_json_text():
    with pytest.raises(AlgebraFormatError) as info:
        alg.loads('{"field": ')
    assert info.value.where.startswith("line 1")


def _random_element(A, rng):
    if A.field.char:
        return A.element([rng.randrange(A.field.char) for _ in range(A.dim)])
    return A.element([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(A.dim)])


@pytest.mark.parametrize("label,A", [(l, A) for l, A in g.gallery_instances(include_large=False) if isinstance(A, Algebra)])
def test_mul_is_bilinear_and_commutativity_matches_matrices(label, A):
    import random

    rng = random.Random(label)
    for _ in range(10):
        a, b, c = (_random_element(A, rng) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert c * (a + b) == c * a + c * b
    mats = [alg.regular_representation(A, _random_element(A, rng).coords) for _ in range(4)]
    F = A.field
    from cerings.exactlin import mat_mul

    pairwise = all(mat_mul(M, N, F) == mat_mul(N, M, F) for M in mats for N in mats)
    if alg.is_commutative(A):
        assert pairwise
    units = [alg.regular_representation(A, A._unit(i)) for i in range(A.dim)]
    all_commute = all(mat_mul(M, N, F) == mat_mul(N, M, F) for M in units for N in units)
    assert all_commute == alg.is_commutative(A)


def test_change_basis_preserves_structure(L3):
    P = [[1 if i == j else 0 for j in range(8)] for i in range(8)]
    P[1][0] = 1  # b'_1 = e1 + 1
    P[4][7] = Fraction(2, 3)
    B = alg.change_basis(L3, P)
    assert alg.validate(B) == []
    assert not alg.is_commutative(B)
    with pytest.raises(ValueError):
        alg.change_basis(L3, [[0] * 8] * 8)

import random
from fractions import Fraction

import pytest

from cerings import gallery as g
from cerings import invariants as inv
from cerings.algebra import is_commutative, validate
from cerings.ce import is_ce_exhaustive, is_ce_subspace
from cerings.exactlin import QQ, PrimeField
from cerings.gallery import E13, X, Y, ZERO, DerivationRingElement, IntPoly2


def test_quaternion_group():
    Q8 = g.quaternion_group()
    assert Q8.is_group() and not Q8.is_abelian()
    i, j, k = (Q8.index(n) for n in ("i", "j", "k"))
    assert Q8.mul(i, j) == k
    assert Q8.mul(j, i) == Q8.index("-k")


def test_other_groups():
    assert g.cyclic_group(5).is_abelian()
    S3 = g.symmetric_group(3)
    assert S3.order == 6 and S3.is_group() and not S3.is_abelian()


def test_group_algebra_properties():
    FQ8 = g.group_algebra(g.quaternion_group(), PrimeField(2))
    I = inv.compute_invariants(FQ8)
    assert 2**FQ8.dim == 256 and not I.commutative and I.local == "yes"
    Q2 = g.group_algebra(g.cyclic_group(2), QQ)
    assert is_commutative(Q2) and inv.is_semiprime(Q2)


def test_grassmann_basis_order():
    names = g.grassmann(3).basis_names
    assert names == ("1", "e1", "e2", "e3", "e1^e2", "e2^e3", "e1^e3", "e1^e2^e3")
    assert g.grassmann(2).basis_names == ("1", "e1", "e2", "e1^e2")
    assert g.wedge_sign((2,), (1,)) == -1 and g.wedge_sign((1,), (1,)) == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_grassmann_invariants(n):
    A = g.grassmann(n, QQ)
    assert validate(A) == []
    assert inv.radical(A).dim == 2**n - 1
    top = A.basis_elements()[-1].coords
    assert inv.socle_right(A).basis == (top,)


@pytest.mark.parametrize("n", range(1, 5))
def test_grassmann_parity_over_f3(n):
    R = g.grassmann(n, PrimeField(3))
    assert is_ce_subspace(R).decision is (n % 2 == 1)
    if 3**R.dim <= 6561:
        assert is_ce_exhaustive(R).decision is (n % 2 == 1)


def test_rank3_algebras():
    K = g.rank3_algebra("K")
    assert K.dim == 2 and is_commutative(K) and is_ce_subspace(K).decision
    S5 = g.rank3_algebra("S", 5)
    assert is_commutative(S5) and is_ce_subspace(S5).decision
    T = g.rank3_algebra("T")
    I = inv.compute_invariants(T)
    assert T.dim == 4 and not I.commutative and I.radical.dim == 3 and I.center.dim == 2
    with pytest.raises(ValueError):
        g.rank3_algebra("S", 0)
    assert validate(g.rank3_algebra("S", Fraction(-7, 3))) == []


def test_abelian_groups_counts():
    # number of partitions of the exponent, multiplied over primes
    assert len(g.abelian_groups_of_order(16)) == 5
    assert len(g.abelian_groups_of_order(64)) == 11
    assert len(g.abelian_groups_of_order(36)) == 4
    assert sum(len(g.abelian_groups_of_order(n)) for n in range(1, 65)) == 117


def test_hom_orders():
    P = g.FiniteAbelianGroup.parse
    assert g.hom_order(P("2:1"), P("2:2")) == 2
    assert g.hom_order(P("2:2"), P("3:2")) == 1
    assert g.hom_order(P("2:2,2:1"), P("2:2,2:1")) == 32


@pytest.mark.parametrize("spec,order,expected", [
    ("2:1", 2, True), ("2:2", 4, True), ("3:2", 9, True),
    ("2:1,2:1", 16, False), ("2:1,2:2", 32, False), ("2:1,3:1", 6, True),
])
def test_endomorphism_rings(spec, order, expected):
    A = g.FiniteAbelianGroup.parse(spec)
    R = g.endomorphism_ring(A)
    assert R.order == order
    assert validate(R) == []
    assert is_commutative(R) is expected is A.every_component_cyclic()
    assert is_ce_exhaustive(R).decision is expected


def test_end_z2z2_is_matrix_ring():
    R = g.endomorphism_ring(g.FiniteAbelianGroup.parse("2:1,2:1"))
    assert R.order == 16 and inv.is_semiprime(R) and inv.center(R).order() == 2


def test_endomorphism_ring_bound():
    from cerings.algebra import EnumerationBoundExceeded

    with pytest.raises(EnumerationBoundExceeded):
        g.endomorphism_ring(g.FiniteAbelianGroup.parse("2:5,2:5"), bound=100)


def test_group_spec_parsing():
    with pytest.raises(ValueError):
        g.FiniteAbelianGroup.parse("4:1")
    with pytest.raises(ValueError):
        g.FiniteAbelianGroup.parse("2-1")


# ---------------------------------------------------------------------------
# derivation ring

def _matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(3)), ZERO) for j in range(3)] for i in range(3)]


def test_derivation_products():
    x = DerivationRingElement(X)
    y = DerivationRingElement(Y)
    assert (x * x).f == X * X and (x * x).g.is_zero()
    assert (x * y).g == IntPoly2.const(1)
    assert (y * x).g.is_zero()
    a = DerivationRingElement(X + Y, X)
    assert a * E13 == DerivationRingElement(ZERO, X + Y)


def test_derivation_product_is_the_matrix_product():
    rng = random.Random(3)
    for _ in range(50):
        a, b = g.random_derivation_element(rng), g.random_derivation_element(rng)
        assert (a * b).matrix() == _matmul(a.matrix(), b.matrix())


def test_derivation_ring_is_associative():
    rng = random.Random(11)
    for _ in range(50):
        a, b, c = (g.random_derivation_element(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_derivation_centrality():
    assert g.derivation_central(DerivationRingElement(ZERO, X * Y))
    assert not g.derivation_central(DerivationRingElement(X))
    a = DerivationRingElement(IntPoly2.from_dict({(1, 0): 2, (0, 1): 3}), X)
    y = a * E13
    assert y.g == a.f and g.derivation_central(y)


def test_derivation_sample():
    v = g.derivation_ring_ce_sample(trials=100, deg_bound=3, coeff_bound=9, seed=0)
    assert v.passed and v.trials == 100


def test_generated_matrix_algebra():
    A = g.generated_matrix_algebra([[[0, 1, 0], [0, 0, 1], [0, 0, 0]]], PrimeField(2))
    assert A.dim == 3 and is_commutative(A) and validate(A) == []
    assert g.generated_matrix_algebra([[[0, 1], [0, 0]], [[0, 0], [1, 0]]], QQ).dim == 4

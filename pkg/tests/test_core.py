"""Scalar group arithmetic and the kernel-power homomorphism."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qresolve import GroupElt, MultParam, Quiver, StructuralError, q_power

from conftest import A2, JORDAN, ge

F = Fraction


def test_torsion_normalised_into_unit_interval():
    assert GroupElt(F(5, 2)).torsion == F(1, 2)
    assert GroupElt(F(-1, 3)).torsion == F(2, 3)
    assert GroupElt(F(7)).is_identity()


def test_group_law_and_inverse():
    a = ge(F(1, 3), (2, -1), 2)
    b = ge(F(1, 2), (0, 5), 2)
    assert (a * b).torsion == F(5, 6)
    assert (a * b).free == (2, 4)
    assert (a * a.inverse()).is_identity()
    assert (a ** 3).free == (6, -3)


def test_rank_mismatch_rejected():
    with pytest.raises(StructuralError):
        ge(0, (1,), 1) * ge(0, (), 0)
    with pytest.raises(StructuralError):
        MultParam((ge(0, (), 0), ge(0, (1,), 1)), 0)


def test_primitive_root_detection():
    assert ge(F(1, 2)).is_primitive_root(2)
    assert not ge(F(1, 2)).is_primitive_root(4)
    assert not ge(0, (1,), 1).is_primitive_root(1)
    assert GroupElt.identity().is_primitive_root(1)
    assert ge(F(2, 3)).torsion_order() == 3
    assert ge(0, (2,), 1).torsion_order() is None


def test_q_power_cancellation():
    q = MultParam.of([ge(0, (1,), 1), ge(0, (-1,), 1)])
    assert q_power(q, (1, 1)).is_identity()
    q2 = MultParam.of([ge(F(1, 2))])
    assert q_power(q2, (2,)).is_identity()
    assert q_power(MultParam.of([ge(F(1, 3))]), (2,)) == ge(F(2, 3))


def test_q_power_length_mismatch():
    with pytest.raises(StructuralError):
        q_power(MultParam.trivial(2), (1,))


@given(
    st.lists(st.integers(-6, 6), min_size=2, max_size=2),
    st.lists(st.integers(-6, 6), min_size=2, max_size=2),
)
def test_q_power_is_a_homomorphism(alpha, beta):
    q = MultParam.of([ge(F(1, 3), (2,), 1), ge(F(1, 4), (-1,), 1)])
    total = tuple(a + b for a, b in zip(alpha, beta))
    assert q_power(q, total) == q_power(q, alpha) * q_power(q, beta)


def test_q_power_on_coordinate_vectors():
    q = MultParam.of([ge(F(1, 5), (3,), 1), ge(F(2, 5), (0,), 1)])
    assert q_power(q, (1, 0)) == q[0]
    assert q_power(q, (0, 1)) == q[1]


def test_primitive_root_orders_are_unique():
    g = ge(F(3, 4))
    hits = [m for m in range(1, 13) if g.is_primitive_root(m)]
    assert hits == [4]


def test_quiver_validation():
    with pytest.raises(StructuralError):
        Quiver(2, ((0, 2),))
    with pytest.raises(StructuralError):
        Quiver(0, ())
    assert JORDAN.loop_count(0) == 1
    assert A2.loop_counts == (0, 0)


def test_json_round_trip():
    q = MultParam.of([ge(F(1, 2), (1, -2), 2), ge(0, (0, 3), 2)])
    assert MultParam.from_json(q.to_json()) == q
    quiver = Quiver(3, ((0, 1), (1, 1), (2, 0)), ("a", "b", "c"))
    assert Quiver.from_json(quiver.to_json()) == quiver


def test_dot_product_examples():
    from qresolve import dot

    assert dot((1, -1), (1, 1)) == 0
    assert dot((0, 0), (7, -3)) == 0
    assert dot((2, -1), (1, 3)) == -1
    with pytest.raises(StructuralError):
        dot((1,), (1, 2))

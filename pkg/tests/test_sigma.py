"""Kernel membership, divisibility, flatness, and sigma membership."""

from fractions import Fraction

import pytest

from qresolve import (
    MultParam,
    OracleBudgetError,
    PreconditionError,
    brute_force_flat,
    brute_force_sigma,
    in_kernel,
    is_flat,
    p_value,
    q_gcd,
    sigma_membership,
)
from qresolve.reflect import reflect_triple
from qresolve.sigma import CASE_A, CASE_B1, CASE_B2, isotropic_multiple_form

from conftest import (
    A2,
    A3,
    CRAB21,
    D4_STAR,
    FIXTURE_QUIVERS,
    JORDAN,
    ge,
    parameter_grid,
    small_vectors,
)

F = Fraction
Q_HALF = MultParam.of([ge(F(1, 2))])
TH1 = (0,)


def test_kernel_membership():
    assert in_kernel(JORDAN, MultParam.trivial(1), (0,), (5,))
    assert in_kernel(JORDAN, Q_HALF, TH1, (2,))
    assert not in_kernel(JORDAN, Q_HALF, TH1, (1,))
    qt = MultParam.of([ge(0, (1,), 1), ge(0, (-1,), 1)])
    assert in_kernel(A2, qt, (0, 0), (1, 1))
    assert not in_kernel(A2, qt, (0, 0), (1, 0))
    assert not in_kernel(A2, MultParam.trivial(2), (1, -1), (1, 0))


def test_q_gcd_values():
    assert q_gcd(A2, MultParam.trivial(2), (0, 0), (1, 1)) == 1
    assert q_gcd(JORDAN, Q_HALF, TH1, (4,)) == 2
    assert q_gcd(JORDAN, MultParam.trivial(1), (0,), (6,)) == 6
    with pytest.raises(PreconditionError):
        q_gcd(JORDAN, Q_HALF, TH1, (1,))


def test_flatness_examples():
    # real roots reached through admissible steps are flat
    qt = MultParam.of([ge(0, (1,), 1), ge(0, (-1,), 1)])
    assert is_flat(A2, qt, (0, 0), (1, 1)).flat
    # a proper multiple of a q-indivisible isotropic root is not flat
    cert = is_flat(JORDAN, Q_HALF, TH1, (4,))
    assert not cert.flat
    assert cert.form.m == 2 and cert.form.ell == 2
    # the q-indivisible multiple itself is flat
    assert is_flat(JORDAN, Q_HALF, TH1, (2,)).flat
    with pytest.raises(PreconditionError):
        is_flat(A2, qt, (0, 0), (2, 1))  # not a root
    with pytest.raises(PreconditionError):
        is_flat(A2, qt, (0, 0), (1, 0))  # not in the kernel


def test_framed_vector_is_flat_for_every_multiple():
    # center with a loop plus framing vertex: (m, 1) is flat for every m but
    # never in sigma when the parameters are trivial; the failure is the
    # bridge split, type (b1) for m = 1 and type (b2) beyond
    q = MultParam.trivial(2)
    for m in (1, 2, 3, 4):
        assert is_flat(CRAB21, q, (0, 0), (m, 1)).flat
    status = sigma_membership(CRAB21, q, (0, 0), (1, 1))
    assert status.tag == CASE_B1
    assert not brute_force_sigma(CRAB21, q, (0, 0), (1, 1))
    for m in (2, 3, 4):
        status = sigma_membership(CRAB21, q, (0, 0), (m, 1))
        assert status.tag == CASE_B2
        assert status.split.m == m


def test_sigma_membership_examples():
    qt = MultParam.of([ge(0, (1,), 1), ge(0, (-1,), 1)])
    assert sigma_membership(A2, qt, (0, 0), (1, 1)).in_sigma

    status = sigma_membership(A2, MultParam.trivial(2), (0, 0), (1, 1))
    assert status.tag == CASE_B1
    assert sorted(status.split.J) == [0] and sorted(status.split.K) == [1]

    status = sigma_membership(JORDAN, MultParam.trivial(1), TH1, (2,))
    assert status.tag == CASE_A
    assert status.form.m == 2 and status.form.ell == 1 and status.form.delta == (1,)

    assert sigma_membership(A2, qt, (0, 0), (2, 1)).tag == "not-root"
    assert sigma_membership(A2, qt, (0, 0), (1, 0)).tag == "not-in-kernel"


def test_sigma_case_a_with_higher_torsion():
    status = sigma_membership(JORDAN, Q_HALF, TH1, (4,))
    assert status.tag == CASE_A
    assert status.form.m == 2 and status.form.ell == 2
    assert sigma_membership(JORDAN, Q_HALF, TH1, (2,)).in_sigma


def test_brute_force_examples():
    assert not brute_force_sigma(JORDAN, MultParam.trivial(1), TH1, (2,))
    assert brute_force_sigma(JORDAN, MultParam.trivial(1), TH1, (1,))
    assert not brute_force_flat(JORDAN, Q_HALF, TH1, (4,))
    assert brute_force_flat(JORDAN, Q_HALF, TH1, (2,))
    with pytest.raises(OracleBudgetError):
        brute_force_sigma(JORDAN, Q_HALF, TH1, (9,))
    assert brute_force_sigma(JORDAN, Q_HALF, TH1, (10,), budget=12) is False


def test_sigma_oracle_equivalence_small_grid():
    """Spot equivalence on two quivers; exhaustive run lives in acceptance."""
    for quiver in (A3, CRAB21):
        n = quiver.vertex_count
        for q, theta in parameter_grid(n)[:6]:
            for alpha in small_vectors(n, 5):
                assert (
                    sigma_membership(quiver, q, theta, alpha).in_sigma
                    == brute_force_sigma(quiver, q, theta, alpha)
                )


def test_rational_multiples_of_flat_roots_stay_flat():
    for name, quiver in FIXTURE_QUIVERS.items():
        n = quiver.vertex_count
        for q, theta in parameter_grid(n)[:8]:
            for alpha in small_vectors(n, 6):
                if not in_kernel(quiver, q, theta, alpha):
                    continue
                try:
                    cert = is_flat(quiver, q, theta, alpha)
                except PreconditionError:
                    continue
                if not cert.flat:
                    continue
                for m in (2, 3):
                    if all(x % m == 0 for x in alpha):
                        smaller = tuple(x // m for x in alpha)
                        if in_kernel(quiver, q, theta, smaller):
                            assert is_flat(quiver, q, theta, smaller).flat, (name, alpha, m)


def test_divisible_sigma_members_are_anisotropic():
    for name, quiver in FIXTURE_QUIVERS.items():
        n = quiver.vertex_count
        for q, theta in parameter_grid(n)[:8]:
            for alpha in small_vectors(n, 6):
                status = sigma_membership(quiver, q, theta, alpha)
                if status.in_sigma and q_gcd(quiver, q, theta, alpha) > 1:
                    assert p_value(quiver, alpha) >= 2, (name, alpha)


def test_sigma_preserved_by_admissible_reflections():
    for quiver in (A2, A3, D4_STAR):
        n = quiver.vertex_count
        for q, theta in parameter_grid(n):
            for alpha in small_vectors(n, 5):
                for v in quiver.loopfree_vertices:
                    if q[v].is_identity() and theta[v] == 0:
                        continue
                    q2, theta2, alpha2 = reflect_triple(quiver, v, q, theta, alpha)
                    if any(a < 0 for a in alpha2):
                        continue
                    before = sigma_membership(quiver, q, theta, alpha).in_sigma
                    after = sigma_membership(quiver, q2, theta2, alpha2).in_sigma
                    assert before == after


def test_isotropic_multiple_form_requires_finite_order():
    q = MultParam.of([ge(0, (1,), 1)])
    assert isotropic_multiple_form(JORDAN, q, (4,)) is None
    q2 = MultParam.of([ge(F(1, 2), (0,), 1)])
    form = isotropic_multiple_form(JORDAN, q2, (4,))
    assert form is not None and (form.m, form.ell) == (2, 2)

"""Flat and sigma decompositions with their structural guarantees."""

from fractions import Fraction

import pytest

from qresolve import (
    MultParam,
    NotDecomposableError,
    PreconditionError,
    Quiver,
    decompose_flat,
    refine_to_sigma,
    sigma_decompose,
    verify_minimality,
)
from qresolve.decompose import FLAT_ROOT, ISOTROPIC_MULTIPLE
from qresolve.forms import p_value

from conftest import A2, CRAB21, D4_FRAMED, D4_STAR, JORDAN, ge

F = Fraction


def test_split_into_coordinate_parts():
    fd = decompose_flat(A2, MultParam.trivial(2), (0, 0), (1, 1))
    assert [(p.vector, p.kind) for p in fd.parts] == [
        ((1, 0), FLAT_ROOT),
        ((0, 1), FLAT_ROOT),
    ]


def test_isotropic_multiple_part():
    q = MultParam.of([ge(F(1, 2))])
    fd = decompose_flat(JORDAN, q, (0,), (4,))
    assert len(fd.parts) == 1
    part = fd.parts[0]
    assert part.kind == ISOTROPIC_MULTIPLE
    assert part.multiple == 2 and part.gamma == (2,)
    sd = refine_to_sigma(JORDAN, q, (0,), fd)
    assert sd.parts == (((2,), 2),)


def test_fundamental_root_stays_whole():
    q = MultParam.trivial(5)
    fd = decompose_flat(D4_STAR, q, (0,) * 5, (2, 1, 1, 1, 1))
    assert len(fd.parts) == 1
    assert fd.parts[0].kind == FLAT_ROOT


def test_jordan_trivial_parameters():
    q = MultParam.trivial(1)
    fd = decompose_flat(JORDAN, q, (0,), (2,))
    sd = refine_to_sigma(JORDAN, q, (0,), fd)
    assert sd.parts == (((1,), 2),)
    assert verify_minimality(JORDAN, q, (0,), (2,), sd)
    sd3 = sigma_decompose(JORDAN, q, (0,), (3,))
    assert sd3.parts == (((1,), 3),)
    assert verify_minimality(JORDAN, q, (0,), (3,), sd3)


def test_framed_multiple_splits_off_radical():
    # (3, 1) with trivial parameters: the only sigma members below it are the
    # radical (1,0) and the framing coordinate, so the decomposition is forced
    q = MultParam.trivial(2)
    sd = sigma_decompose(CRAB21, q, (0, 0), (3, 1))
    assert dict(sd.parts) == {(1, 0): 3, (0, 1): 1}
    assert sd.is_forest()
    assert verify_minimality(CRAB21, q, (0, 0), (3, 1), sd)


def test_preconditions():
    q = MultParam.of([ge(F(1, 2))])
    with pytest.raises(PreconditionError):
        decompose_flat(JORDAN, q, (0,), (1,))  # not in the kernel
    with pytest.raises(PreconditionError):
        decompose_flat(JORDAN, q, (0,), (0,))


def test_not_decomposable_raises():
    # two disjoint loops, torsion 1/2 on each: (1,1) is in the kernel but
    # neither component is, so there is no decomposition into kernel roots
    two_jordans = Quiver(2, ((0, 0), (1, 1)))
    q = MultParam.of([ge(F(1, 2)), ge(F(1, 2))])
    with pytest.raises(NotDecomposableError):
        decompose_flat(two_jordans, q, (0, 0), (1, 1))


def test_real_parts_transported_through_reflections():
    # admissible reflection first, then coordinate splits; the emitted real
    # parts are roots for the original parameters
    q = MultParam.of([ge(0, (1,), 1), ge(0, (-1,), 1), ge(0, (0,), 1)])
    a3 = Quiver(3, ((0, 1), (1, 2)))
    fd = decompose_flat(a3, q, (0, 0, 0), (1, 1, 2))
    assert fd.total() == (1, 1, 2)
    for part in fd.parts:
        assert all(x >= 0 for x in part.vector)
        assert p_value(a3, part.vector) == 0


def test_intersection_graph_components_recover_flat_parts():
    q = MultParam.trivial(6)
    theta = (0,) * 6
    alpha = (2, 1, 1, 1, 1, 1)  # framed radical vector on the framed star
    fd = decompose_flat(D4_FRAMED, q, theta, alpha)
    sd = refine_to_sigma(D4_FRAMED, q, theta, fd)
    assert sd.total() == alpha
    assert sd.is_forest()
    # every sigma part is dominated by some flat part
    for vec, _mult in sd.parts:
        assert any(all(x <= y for x, y in zip(vec, part.vector)) for part in fd.parts)


def test_decomposing_an_emitted_part_returns_it_alone():
    from conftest import FIXTURE_QUIVERS, parameter_grid, small_vectors
    from qresolve import in_kernel

    for name, quiver in FIXTURE_QUIVERS.items():
        n = quiver.vertex_count
        for q, theta in parameter_grid(n)[:6]:
            for alpha in small_vectors(n, 5):
                if not in_kernel(quiver, q, theta, alpha):
                    continue
                try:
                    fd = decompose_flat(quiver, q, theta, alpha)
                except NotDecomposableError:
                    continue
                for part in fd.parts:
                    again = decompose_flat(quiver, q, theta, part.vector)
                    assert len(again.parts) == 1, (name, alpha, part)
                    assert again.parts[0].vector == part.vector
                    assert again.parts[0].kind == part.kind


def test_distinct_imaginary_flat_parts_pair_to_zero():
    from conftest import FIXTURE_QUIVERS, parameter_grid, small_vectors
    from qresolve import cartan_pairing, in_kernel

    for name, quiver in FIXTURE_QUIVERS.items():
        n = quiver.vertex_count
        for q, theta in parameter_grid(n)[:8]:
            for alpha in small_vectors(n, 6):
                if not in_kernel(quiver, q, theta, alpha):
                    continue
                try:
                    fd = decompose_flat(quiver, q, theta, alpha)
                except NotDecomposableError:
                    continue
                imag = [p.vector for p in fd.parts if p_value(quiver, p.vector) >= 1]
                for i, a in enumerate(imag):
                    for b in imag[i + 1:]:
                        if a != b:
                            assert cartan_pairing(quiver, a, b) == 0, (name, alpha, a, b)


def test_flat_real_parts_survive_into_the_sigma_refinement():
    # real flat parts are sigma members already, so they pass through the
    # refinement unchanged; the refinement may add further real parts when an
    # imaginary factor sheds coordinate roots (for example (2,1) on the
    # loop-plus-leg quiver with trivial parameters splits into the radical
    # twice plus the framing coordinate)
    from collections import Counter

    from conftest import FIXTURE_QUIVERS, parameter_grid, small_vectors
    from qresolve import in_kernel

    for name, quiver in FIXTURE_QUIVERS.items():
        n = quiver.vertex_count
        for q, theta in parameter_grid(n)[:8]:
            for alpha in small_vectors(n, 6):
                if not in_kernel(quiver, q, theta, alpha):
                    continue
                try:
                    fd = decompose_flat(quiver, q, theta, alpha)
                except NotDecomposableError:
                    continue
                sd = refine_to_sigma(quiver, q, theta, fd)
                flat_reals = Counter(
                    p.vector for p in fd.parts if p_value(quiver, p.vector) == 0
                )
                sigma_reals = Counter()
                for vec, mult in sd.parts:
                    if p_value(quiver, vec) == 0:
                        sigma_reals[vec] += mult
                assert flat_reals <= sigma_reals, (name, alpha)

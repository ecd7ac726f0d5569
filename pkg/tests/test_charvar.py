"""Conjugacy class ingestion, the quiver translation, and verdict branches."""

import random
from fractions import Fraction

import pytest

from qresolve import (
    CharVarProblem,
    StructuralError,
    build_quiver_datum,
    class_from_rank_data,
    classify_charvar,
    numeric_invariants,
    order_eigenvalues,
    p_value,
    problem_from_json,
    q_power,
    reduce_genus_zero,
)
from qresolve.charvar import determinant_product
from qresolve.classify import OPEN_22, OPEN_ISOTROPIC, RESOLUTION

from conftest import ge

F = Fraction


def _free(*exps, rank=2):
    padded = tuple(exps) + (0,) * (rank - len(exps))
    return ge(0, padded, rank)


def _tors(c, rank=2):
    return ge(c, (0,) * rank, rank)


def regss2(lam, mu):
    """Rank-2 semisimple class with two distinct eigenvalues."""
    return order_eigenvalues(2, (lam, mu), ((0, 1), (1, 1)))


def semis4(lam, mu):
    """Rank-4 semisimple class with eigenvalue multiplicities (2, 2)."""
    return order_eigenvalues(4, (lam, mu), ((0, 1), (0, 1), (1, 1), (1, 1)))


def test_unipotent_rank_sequence():
    # one eigenvalue, Jordan blocks (3, 3): ranks 6 -> 4 -> 2 -> 0
    cls = order_eigenvalues(6, (_tors(0),), ((0, 3), (0, 3)))
    assert cls.w == 3
    assert cls.ranks == (4, 2)
    assert [e == _tors(0) for e in cls.xi] == [True, True, True]


def test_regular_semisimple_rank_two():
    cls = regss2(_free(1), _free(-1))
    assert cls.w == 2
    assert cls.ranks == (1,)


def test_scalar_class_has_no_leg():
    cls = order_eigenvalues(3, (_tors(F(1, 3)),), ((0, 1), (0, 1), (0, 1)))
    assert cls.w == 1
    assert cls.ranks == ()


def test_mixed_block_ordering_gives_nonincreasing_drops():
    # eigenvalue a with blocks (2,1,1), eigenvalue b with block (2)
    a, b = _tors(F(1, 2)), _tors(0)
    cls = order_eigenvalues(6, (a, b), ((0, 2), (0, 1), (0, 1), (1, 2)))
    full = (6,) + cls.ranks + (0,)
    drops = [full[i] - full[i + 1] for i in range(len(full) - 1)]
    assert drops == sorted(drops, reverse=True)
    assert sum(drops) == 6


def test_rank_data_round_trip():
    cls = order_eigenvalues(6, (_tors(F(1, 2)), _tors(0)), ((0, 2), (0, 1), (0, 1), (1, 2)))
    again = class_from_rank_data(6, cls.xi, cls.ranks)
    assert again.ranks == cls.ranks
    assert sorted(again.blocks) == sorted(cls.blocks)
    with pytest.raises(StructuralError):
        class_from_rank_data(3, (_tors(0), _tors(F(1, 2))), (3,))  # no strict decrease


def test_distinct_eigenvalues_enforced():
    with pytest.raises(StructuralError):
        order_eigenvalues(2, (_tors(0), _tors(0)), ((0, 1), (1, 1)))


def test_build_datum_star_shape():
    classes = tuple(regss2(_free(1), _free(-1)) for _ in range(4))
    problem = CharVarProblem(0, 2, classes)
    quiver, alpha, q, theta = build_quiver_datum(problem)
    assert quiver.vertex_count == 5
    assert alpha == (2, 1, 1, 1, 1)
    assert theta == (0,) * 5
    assert quiver.loop_count(0) == 0
    assert q_power(q, alpha).is_identity() == determinant_product(problem).is_identity()


def test_build_datum_torus():
    problem = CharVarProblem(1, 1, (order_eigenvalues(1, (_tors(0),), ((0, 1),)),))
    quiver, alpha, q, theta = build_quiver_datum(problem)
    assert quiver.loop_count(0) == 1
    assert alpha == (1,)


def test_numeric_invariants_match_quiver_p():
    problem = CharVarProblem(2, 2, ())
    ell, p, dim = numeric_invariants(problem)
    assert (ell, p, dim) == (0, 5, 10)
    classes = tuple(regss2(_free(1), _free(-1)) for _ in range(4))
    problem = CharVarProblem(0, 2, classes)
    assert numeric_invariants(problem) == (4, 1, 2)


def _random_class(rng: random.Random, n: int, rank: int):
    while True:
        # random partition of n into blocks over up to three eigenvalues
        sizes = []
        left = n
        while left:
            s = rng.randint(1, left)
            sizes.append(s)
            left -= s
        count = rng.randint(1, min(3, len(sizes)))
        owners = [rng.randrange(count) for _ in sizes]
        if set(owners) != set(range(count)):
            continue
        evs = []
        seen = set()
        for _ in range(count):
            for _try in range(40):
                denom = rng.randint(1, 6)
                tors = F(rng.randrange(denom), denom)
                free = tuple(rng.randint(-2, 2) for _ in range(rank))
                g = ge(tors, free, rank)
                if g not in seen:
                    seen.add(g)
                    evs.append(g)
                    break
            else:
                break
        if len(evs) != count:
            continue
        return order_eigenvalues(n, tuple(evs), tuple(zip(owners, sizes)))


def test_formula_and_determinant_bridge_randomised():
    rng = random.Random(424242)
    for _ in range(300):
        g = rng.randint(0, 2)
        n = rng.randint(1, 6)
        k = rng.randint(0, 5)
        rank = rng.randint(0, 2)
        classes = tuple(_random_class(rng, n, rank) for _ in range(k))
        problem = CharVarProblem(g, n, classes)
        ell, p, dim = numeric_invariants(problem)  # asserts formula == quiver p
        quiver, alpha, q, theta = build_quiver_datum(problem)
        assert dim == 2 * p_value(quiver, alpha)
        assert q_power(q, alpha) == determinant_product(problem).inverse()
        assert q_power(q, alpha).is_identity() == determinant_product(problem).is_identity()
        if g >= 1:
            from qresolve import is_fundamental

            assert is_fundamental(quiver, alpha)


# ---------------------------------------------------------------------------
# classification branches


def test_branch_genus_two_closed_rank_two():
    result = classify_charvar(CharVarProblem(2, 2, ()))
    assert result.branch == "a"
    assert result.quiver_verdict.overall == OPEN_22
    assert "case (a)" in result.statement


def test_branch_genus_one_closed():
    result = classify_charvar(CharVarProblem(1, 2, ()))
    assert result.branch == "b"
    assert result.quiver_verdict.overall == OPEN_ISOTROPIC
    assert "case (b)" in result.statement


def test_branch_once_punctured_torus_prime():
    cls = order_eigenvalues(
        6, (_free(1, rank=1), _free(-1, rank=1)),
        ((0, 1), (0, 1), (0, 1), (1, 1), (1, 1), (1, 1)),
    )
    problem = CharVarProblem(1, 6, (cls,))
    assert cls.w == 2 and cls.first_rank() == 3
    result = classify_charvar(problem)
    assert result.branch == "c"
    assert "case (c)" in result.statement


def test_branch_two_punctures_point_or_empty():
    t, tinv = _free(1), _free(-1)
    s, sinv = _free(0, 1), _free(0, -1)
    point_case = CharVarProblem(0, 2, (regss2(t, tinv), regss2(tinv, t)))
    result = classify_charvar(point_case)
    assert result.branch == "point"
    empty_case = CharVarProblem(0, 2, (regss2(t, tinv), regss2(s, sinv)))
    result = classify_charvar(empty_case)
    assert result.branch == "empty"
    assert result.reduction.status == "empty"


def test_branch_isotropic_star():
    classes = (
        semis4(_free(1, rank=1), _free(-1, rank=1)),
        semis4(_tors(F(1, 2), rank=1), _tors(0, rank=1)),
        semis4(_tors(F(1, 2), rank=1), _tors(0, rank=1)),
        semis4(_tors(F(1, 4), rank=1), _tors(F(3, 4), rank=1)),
    )
    problem = CharVarProblem(0, 4, classes)
    quiver, alpha, q, theta = build_quiver_datum(problem)
    assert alpha == (4, 2, 2, 2, 2)
    assert q_power(q, (2, 1, 1, 1, 1)).is_identity()  # the radical is in the kernel
    result = classify_charvar(problem)
    assert result.branch == "b"
    assert result.quiver_verdict.overall == OPEN_ISOTROPIC


def test_branch_resolution_star():
    classes = (
        semis4(_free(1, rank=1), _free(-1, rank=1)),
        semis4(_tors(F(1, 2), rank=1), _tors(0, rank=1)),
        semis4(_tors(F(1, 2), rank=1), _tors(0, rank=1)),
        semis4(_tors(F(1, 2), rank=1), _tors(0, rank=1)),
    )
    problem = CharVarProblem(0, 4, classes)
    quiver, alpha, q, theta = build_quiver_datum(problem)
    assert not q_power(q, (2, 1, 1, 1, 1)).is_identity()  # radical not in the kernel
    assert q_power(q, alpha).is_identity()
    result = classify_charvar(problem)
    assert result.branch == "resolution"
    assert result.quiver_verdict.overall == RESOLUTION


def test_reduction_statuses_consistent():
    t, tinv = _free(1), _free(-1)
    s, sinv = _free(0, 1), _free(0, -1)
    both = _free(-1, -1), _free(1, 1)
    cases = [
        CharVarProblem(0, 4, (semis4(t, tinv), semis4(s, sinv), semis4(*both))),
        CharVarProblem(0, 2, (regss2(t, tinv), regss2(tinv, t))),
        CharVarProblem(0, 2, (regss2(t, tinv), regss2(s, sinv))),
    ]
    for problem in cases:
        report = reduce_genus_zero(problem)
        assert report.status in ("not-needed", "empty", "point", "reduced", "quiver-level")
        if report.status == "reduced":
            inner = report.problem
            ell, _p, _d = numeric_invariants(inner)
            assert ell >= 2 * inner.n
            assert inner.n < problem.n
            outer_branch = classify_charvar(problem).branch
            inner_branch = classify_charvar(inner).branch
            assert inner_branch == outer_branch


def test_json_round_trip():
    payload = {
        "genus": 0,
        "rank": 2,
        "classes": [
            {"eigenvalues": [{"torsion": "0", "free": [1]},
                             {"torsion": "0", "free": [-1]}],
             "blocks": [[0, 1], [1, 1]]},
            {"eigenvalues": [{"torsion": "1/2", "free": [0]},
                             {"torsion": "0", "free": [0]}],
             "ranks": [1]},
        ],
    }
    problem = problem_from_json(payload)
    assert problem.n == 2 and len(problem.classes) == 2
    assert problem.classes[1].w == 2


def test_class_multiplication_matches_vector_multiplication():
    # m copies of every Jordan block scale the dimension vector by m on the
    # same quiver, and the divisibility notions coincide: the scaled datum is
    # q-divisible by m exactly when the smaller determinant product is trivial
    from qresolve import Quiver, in_kernel, q_gcd

    rng = random.Random(99)
    for _ in range(60):
        n = rng.randint(1, 4)
        rank = rng.randint(0, 2)
        k = rng.randint(1, 3)
        classes = tuple(_random_class(rng, n, rank) for _ in range(k))
        m = rng.randint(2, 3)
        scaled = tuple(
            order_eigenvalues(m * c.n, c.eigenvalues, tuple(c.blocks * m)) for c in classes
        )
        small = CharVarProblem(0, n, classes)
        big = CharVarProblem(0, m * n, scaled)
        q1, a1 = build_quiver_datum(small)[0], build_quiver_datum(small)[1]
        quiver_b, a_b, q_b, th_b = build_quiver_datum(big)
        assert a_b == tuple(m * x for x in a1)
        quiver_s, a_s, q_s, th_s = build_quiver_datum(small)
        assert quiver_b.arrows == quiver_s.arrows
        assert q_b == q_s
        if in_kernel(quiver_b, q_b, th_b, a_b):
            divisible_by_m = in_kernel(quiver_s, q_s, th_s, a_s)
            assert (q_gcd(quiver_b, q_b, th_b, a_b) % m == 0) == divisible_by_m



def test_small_ell_is_exactly_nonfundamental_at_the_node():
    from qresolve import is_fundamental

    rng = random.Random(2718)
    for _ in range(150):
        n = rng.randint(1, 6)
        k = rng.randint(0, 4)
        classes = tuple(_random_class(rng, n, 1) for _ in range(k))
        problem = CharVarProblem(0, n, classes)
        ell, _p, _d = numeric_invariants(problem)
        quiver, alpha, q, theta = build_quiver_datum(problem)
        node_ok = quiver.pairing_with_vertex(alpha, 0) <= 0
        assert (ell >= 2 * n) == node_ok
        if ell >= 2 * n:
            assert is_fundamental(quiver, alpha)


def test_genuine_reduction_to_smaller_canonical_datum():
    # rank 3, five punctures, each class with eigenvalue multiplicities (2,1):
    # ell = 5 < 6, and the node reflection lands on the five-leg star datum
    # with rank 2, which is fundamental and classifies as a resolution
    t, tinv2 = _free(1, rank=1), _free(-2, rank=1)
    cls = order_eigenvalues(3, (t, tinv2), ((0, 1), (0, 1), (1, 1)))
    problem = CharVarProblem(0, 3, (cls,) * 5)
    ell, p, _dim = numeric_invariants(problem)
    assert ell == 5 and p == 2
    report = reduce_genus_zero(problem)
    assert report.status == "reduced"
    inner = report.problem
    assert inner.n == 2 and len(inner.classes) == 5
    assert all(c.ranks == (1,) for c in inner.classes)
    assert numeric_invariants(inner) == (5, 2, 4)  # p is reflection invariant
    for c in inner.classes:
        assert len(set(c.xi)) == len(c.xi)
    result = classify_charvar(problem)
    assert result.branch == "resolution"
    assert result.reduction.status == "reduced"

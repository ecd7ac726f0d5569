"""Seeded fuzz over random multigraphs: the whole pipeline versus the oracle.

The fixture grid is crab-heavy; this sweep hits arbitrary small multigraphs
(multiple loops, parallel arrows, disconnected shapes) and checks membership
against the definitional oracle, decomposition parts against the flat and
sigma oracles, minimality, and that the classifier never trips an internal
invariant.
"""

import random
from fractions import Fraction as F

from qresolve import (
    GroupElt,
    MultParam,
    Quiver,
    brute_force_flat,
    brute_force_sigma,
    classify_general,
    classify_root,
    decompose_flat,
    in_kernel,
    is_flat,
    refine_to_sigma,
    sigma_membership,
    verify_minimality,
)
from qresolve.core import NotDecomposableError
from qresolve.decompose import FLAT_ROOT
from qresolve.sigma import kernel_root_cone_member


def test_random_multigraph_sweep():
    rng = random.Random(31337)
    cells = 0
    while cells < 1200:
        n = rng.randint(1, 5)
        arrows = tuple((rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 8)))
        quiver = Quiver(n, arrows)
        rank = rng.randint(0, 2)
        values = [
            GroupElt(F(rng.randrange(d), d), tuple(rng.randint(-2, 2) for _ in range(rank)))
            for d in (rng.randint(1, 4) for _ in range(n))
        ]
        q = MultParam(tuple(values), rank)
        theta = tuple(rng.randint(-2, 2) for _ in range(n))
        alpha = tuple(rng.randint(0, 3) for _ in range(n))
        if not any(alpha) or sum(alpha) > 6:
            continue
        cells += 1

        status = sigma_membership(quiver, q, theta, alpha)
        assert status.in_sigma == brute_force_sigma(quiver, q, theta, alpha)

        if classify_root(quiver, alpha).is_root and in_kernel(quiver, q, theta, alpha):
            assert is_flat(quiver, q, theta, alpha).flat == brute_force_flat(
                quiver, q, theta, alpha
            )

        if not in_kernel(quiver, q, theta, alpha):
            continue
        try:
            fd = decompose_flat(quiver, q, theta, alpha)
        except NotDecomposableError:
            assert not kernel_root_cone_member(quiver, q, theta, alpha)
            continue
        assert fd.total() == alpha
        for part in fd.parts:
            if part.kind == FLAT_ROOT:
                assert brute_force_flat(quiver, q, theta, part.vector)
            else:
                assert brute_force_sigma(quiver, q, theta, part.gamma)
        sd = refine_to_sigma(quiver, q, theta, fd)
        for vec, _mult in sd.parts:
            assert brute_force_sigma(quiver, q, theta, vec)
        assert verify_minimality(quiver, q, theta, alpha, sd, 6)
        classify_general(quiver, q, theta, alpha)  # must not raise

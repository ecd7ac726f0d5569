"""Symplectic-resolution verdicts for multiplicative quiver varieties.

The engine classifies a moduli space M_{q,theta}(Q, alpha) factor by factor
through the flat decomposition.  Per factor:

* a real sigma root contributes a point;
* a q-indivisible flat root admits a projective symplectic resolution by
  variation of the stability parameter;
* a factor of the form 2 * gamma with gamma in the kernel and p(gamma) = 2
  is the open "(2,2)" case, where a resolution by blowing up the singular
  locus is conjectured but unproven;
* a proper multiple of a q-indivisible isotropic root is the open isotropic
  case;
* every other q-divisible factor yields no symplectic resolution, because
  the variety contains an open singular factorial terminal subset.  Outside
  crab-shaped quivers the last conclusion needs a theta-stable
  representation in a proper subdimension, which no known procedure decides,
  so the verdict carries an explicit assumption flag.  On crab-shaped
  quivers nonemptiness in sigma subdimensions is known, the assumption is
  discharged, and one extra open family appears: prime multiples of the
  framed affine vector (1, l * delta).

Verdict branches carry self-contained rule identifiers and statements; the
CLI maps open cases and assumption flags onto exit codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    DimVector,
    MultParam,
    NotDecomposableError,
    PreconditionError,
    Quiver,
    as_dim_vector,
    dot,
    q_power,
    require_nonnegative_nonzero,
    restrict,
    support,
)
from .forms import detect_affine_dynkin, p_value, proportionality
from .reflect import FUNDAMENTAL, run_admissible_sequence
from .sigma import in_kernel, q_gcd, sigma_membership
from .decompose import ISOTROPIC_MULTIPLE, FlatDecomposition, decompose_flat

EMPTY = "EmptyCertificate"
POINT = "Point"
RESOLUTION = "ResolutionExists"
NO_RESOLUTION = "NoResolution"
OPEN_22 = "Open22"
OPEN_ISOTROPIC = "OpenIsotropicMultiple"
OPEN_FRAMED_PRIME = "OpenFramedAffinePrime"

NONEMPTINESS_ASSUMED = "NonEmptinessAssumed"
STABLE_SUBDIM_ASSUMED = "StableRepInSubdimensionAssumed"
EXPECTATION_STAR_USED = "ExpectationStarUsed"

_SEVERITY = {
    POINT: 0,
    RESOLUTION: 1,
    OPEN_FRAMED_PRIME: 2,
    OPEN_ISOTROPIC: 3,
    OPEN_22: 4,
    NO_RESOLUTION: 5,
    EMPTY: 6,
}

_OPEN = {OPEN_22, OPEN_ISOTROPIC, OPEN_FRAMED_PRIME}


@dataclass(frozen=True)
class FactorVerdict:
    vector: DimVector
    count: int
    verdict: str
    rule: str
    statement: str

    def to_json(self) -> dict:
        return {
            "vector": list(self.vector),
            "count": self.count,
            "verdict": self.verdict,
            "rule": self.rule,
            "statement": self.statement,
        }


@dataclass(frozen=True)
class Verdict:
    overall: str
    per_factor: tuple[FactorVerdict, ...]
    assumptions: tuple[str, ...]
    expected_dimension: int | None
    rule: str
    statement: str
    notes: tuple[str, ...] = ()

    @property
    def has_open_case(self) -> bool:
        return self.overall in _OPEN or any(f.verdict in _OPEN for f in self.per_factor)

    def to_json(self) -> dict:
        return {
            "overall": self.overall,
            "rule": self.rule,
            "statement": self.statement,
            "factors": [f.to_json() for f in self.per_factor],
            "assumptions": list(self.assumptions),
            "expected_dimension": self.expected_dimension,
            "notes": list(self.notes),
        }


def _aggregate(factors: Sequence[FactorVerdict]) -> str:
    return max((f.verdict for f in factors), key=_SEVERITY.__getitem__, default=POINT)


def _empty_verdict(rule: str, statement: str, expected: int | None = None) -> Verdict:
    return Verdict(EMPTY, (), (), expected, rule, statement)


# ---------------------------------------------------------------------------
# crab-shape detection


@dataclass(frozen=True)
class CrabShape:
    """A central vertex with loops only there, plus type-A legs hanging off it."""

    center: int
    legs: tuple[tuple[int, ...], ...]  # vertex paths ordered away from the center
    loop_count: int


def is_crab_shaped(quiver: Quiver) -> CrabShape | None:
    """Detect a crab shape: all loops at one center, legs are simple paths.

    Every edge has multiplicity one except loops; removing the center must
    leave disjoint paths each touching the center through exactly one edge
    at one end.  Returns the structure for the smallest valid center.
    """
    if not quiver.is_connected_on(range(quiver.vertex_count)):
        return None
    loopy = [v for v in range(quiver.vertex_count) if quiver.loop_count(v) > 0]
    if len(loopy) > 1:
        return None
    candidates = loopy if loopy else list(range(quiver.vertex_count))
    for center in sorted(candidates):
        shape = _try_center(quiver, center)
        if shape is not None:
            return shape
    return None


def _try_center(quiver: Quiver, center: int) -> CrabShape | None:
    n = quiver.vertex_count
    for v in range(n):
        if v != center and quiver.loop_count(v) > 0:
            return None
    mult = quiver.edge_multiplicity
    if any(m > 1 for m in mult.values()):
        return None
    others = set(range(n)) - {center}
    legs: list[tuple[int, ...]] = []
    remaining = set(others)
    starts = sorted(w for w in quiver.neighbors[center])
    for start in starts:
        if start not in remaining:
            return None
        leg = [start]
        remaining.discard(start)
        prev, cur = center, start
        while True:
            nxt = [w for w in quiver.neighbors[cur] if w != prev]
            if center in nxt:
                return None  # a cycle back to the center
            if not nxt:
                break
            if len(nxt) > 1:
                return None  # branching inside a leg
            cur2 = nxt[0]
            if cur2 not in remaining:
                return None
            leg.append(cur2)
            remaining.discard(cur2)
            prev, cur = cur, cur2
        legs.append(tuple(leg))
    if remaining:
        return None  # vertices not reachable as legs
    return CrabShape(center, tuple(legs), quiver.loop_count(center))


# ---------------------------------------------------------------------------
# per-factor rules


def _rule_point(vector: DimVector, count: int) -> FactorVerdict:
    return FactorVerdict(
        vector, count, POINT, "point-real-sigma-root",
        "a real sigma root has a unique semisimple representation, the factor is a point",
    )


def _rule_resolution(vector: DimVector, count: int, in_sigma_hint: str) -> FactorVerdict:
    return FactorVerdict(
        vector, count, RESOLUTION, "resolution-q-indivisible-flat",
        "q-indivisible flat root: a generic stability parameter gives a projective "
        f"symplectic resolution ({in_sigma_hint})",
    )


def _rule_open22(vector: DimVector, count: int, extra: str = "") -> FactorVerdict:
    return FactorVerdict(
        vector, count, OPEN_22, "open-2-2-case",
        "factor is twice a kernel vector with p = 2; a resolution by blowing up the "
        "singular locus is conjectured but unproven" + extra,
    )


def _rule_open_isotropic(vector: DimVector, count: int, m: int, gamma: DimVector) -> FactorVerdict:
    return FactorVerdict(
        vector, count, OPEN_ISOTROPIC, "open-isotropic-multiple",
        f"factor is {m} times the q-indivisible isotropic root {list(gamma)}; "
        "existence of a resolution is open",
    )


def _rule_open_framed(vector: DimVector, count: int, p: int) -> FactorVerdict:
    return FactorVerdict(
        vector, count, OPEN_FRAMED_PRIME, "open-framed-affine-prime",
        f"factor is the prime multiple {p} of a framed affine vector (1, l*delta); no "
        "stable subdimension representation is expected and the case is open",
    )


def _rule_no_resolution(vector: DimVector, count: int, g: int, conditional: bool) -> FactorVerdict:
    tail = (
        " (assuming a theta-stable representation in the subdimension exists)"
        if conditional
        else ""
    )
    return FactorVerdict(
        vector, count, NO_RESOLUTION, "no-resolution-divisible-anisotropic",
        f"q-divisible anisotropic factor ({g} times a kernel vector): the variety has an "
        "open singular factorial terminal subset and admits no symplectic resolution" + tail,
    )


def _group_parts(fd: FlatDecomposition) -> list[tuple]:
    grouped: dict[tuple, int] = {}
    for part in fd.parts:
        key = (part.vector, part.kind, part.multiple, part.gamma)
        grouped[key] = grouped.get(key, 0) + 1
    return sorted(grouped.items(), key=lambda kv: kv[0][0], reverse=True)


def _is_two_two(quiver: Quiver, q: MultParam, theta: Sequence[int], vector: DimVector) -> bool:
    if any(x % 2 for x in vector):
        return False
    half = tuple(x // 2 for x in vector)
    return in_kernel(quiver, q, theta, half) and p_value(quiver, half) == 2


@dataclass(frozen=True)
class FramedAffineForm:
    prime: int
    ell: int
    delta: DimVector
    framing_vertex: int


def framed_affine_prime_form(
    quiver: Quiver, q: MultParam, theta: Sequence[int], alpha: Sequence[int]
) -> FramedAffineForm | None:
    """Detect alpha = p * (1, l*delta) on a framed affine Dynkin support.

    The support must be an affine Dynkin subquiver plus one extra vertex tied
    by a single arrow to a vertex where delta equals one; alpha carries a
    prime p at the extra vertex and p*l*delta on the affine part, with
    q^delta = 1 and theta . delta = 0 evaluated at the given parameters.
    """
    supp = support(alpha)
    if len(supp) < 2:
        return None
    for star in sorted(supp):
        p = alpha[star]
        if p < 2 or not _is_prime(p):
            continue
        rest = supp - {star}
        crossing = [
            ((u, w), m) for (u, w), m in quiver.edge_multiplicity.items()
            if (u == star) != (w == star) and (u in supp and w in supp)
        ]
        if len(crossing) != 1 or crossing[0][1] != 1:
            continue
        (u, w), _m = crossing[0]
        attach = w if u == star else u
        if quiver.loop_count(star) > 0:
            continue
        aff = detect_affine_dynkin(quiver, rest)
        if aff is None or aff.delta[attach] != 1:
            continue
        c = proportionality(restrict(alpha, rest), aff.delta)
        if c is None or c % p != 0:
            continue
        ell = c // p
        if ell < 1:
            continue
        if not q_power(q, aff.delta).is_identity():
            continue
        if dot(theta, aff.delta) != 0:
            continue
        return FramedAffineForm(p, ell, aff.delta, star)
    return None


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# the general classifier


def classify_general(
    quiver: Quiver, q: MultParam, theta: Sequence[int], alpha: Sequence[int]
) -> Verdict:
    """Classify an arbitrary quiver datum.

    Emits an emptiness certificate when alpha fails the kernel conditions or
    is not a sum of kernel roots; otherwise classifies every factor of the
    flat decomposition and aggregates by severity.
    """
    alpha = as_dim_vector(alpha, quiver)
    require_nonnegative_nonzero(alpha)
    theta = as_dim_vector(theta, quiver)
    if not in_kernel(quiver, q, theta, alpha):
        return _empty_verdict(
            "empty-kernel-violation",
            "q^alpha != 1 or theta . alpha != 0: the moduli space is empty "
            "(necessary condition for a representation to exist)",
        )
    expected = 2 * p_value(quiver, alpha)
    try:
        fd = decompose_flat(quiver, q, theta, alpha)
    except NotDecomposableError:
        return _empty_verdict(
            "empty-not-a-sum-of-kernel-roots",
            "alpha is not a sum of positive roots of the kernel set, so no semisimple "
            "representation of this dimension exists and the moduli space is empty",
            expected,
        )
    factors: list[FactorVerdict] = []
    assumptions: set[str] = set()
    for (vector, kind, multiple, gamma), count in _group_parts(fd):
        if kind == ISOTROPIC_MULTIPLE:
            factors.append(_rule_open_isotropic(vector, count, multiple, gamma))
            assumptions.add(NONEMPTINESS_ASSUMED)
            continue
        p = p_value(quiver, vector)
        if p == 0:
            factors.append(_rule_point(vector, count))
            continue
        if _is_two_two(quiver, q, theta, vector):
            factors.append(_rule_open22(vector, count))
            assumptions.add(NONEMPTINESS_ASSUMED)
            continue
        g = q_gcd(quiver, q, theta, vector)
        if g == 1:
            hint = "sigma member" if sigma_membership(quiver, q, theta, vector).in_sigma \
                else "flat root outside sigma"
            factors.append(_rule_resolution(vector, count, hint))
            assumptions.add(NONEMPTINESS_ASSUMED)
            continue
        factors.append(_rule_no_resolution(vector, count, g, conditional=True))
        assumptions.update({NONEMPTINESS_ASSUMED, STABLE_SUBDIM_ASSUMED})
    overall = _aggregate(factors)
    head = factors and max(factors, key=lambda f: _SEVERITY[f.verdict])
    return Verdict(
        overall,
        tuple(factors),
        tuple(sorted(assumptions)),
        expected,
        head.rule if head else "point-real-sigma-root",
        head.statement if head else "no factors",
    )


# ---------------------------------------------------------------------------
# the crab-shaped classifier


def classify_crab(
    quiver: Quiver, q: MultParam, theta: Sequence[int], alpha: Sequence[int]
) -> Verdict:
    """Classify a crab-shaped quiver datum; assumptions are discharged here.

    On crab-shaped quivers the moduli space of every sigma member is known to
    be nonempty, so the no-resolution branch is unconditional and the only
    additional open family is the prime multiple of a framed affine vector
    (1, l*delta) with q^delta = 1 and theta . delta = 0.
    """
    shape = is_crab_shaped(quiver)
    if shape is None:
        raise PreconditionError("classify_crab requires a crab-shaped quiver; "
                                "use classify_general instead")
    alpha = as_dim_vector(alpha, quiver)
    require_nonnegative_nonzero(alpha)
    theta = as_dim_vector(theta, quiver)
    if not in_kernel(quiver, q, theta, alpha):
        return _empty_verdict(
            "empty-kernel-violation",
            "q^alpha != 1 or theta . alpha != 0: the moduli space is empty",
        )
    expected = 2 * p_value(quiver, alpha)
    try:
        fd = decompose_flat(quiver, q, theta, alpha)
    except NotDecomposableError:
        return _empty_verdict(
            "empty-not-a-sum-of-kernel-roots",
            "alpha is not a sum of positive roots of the kernel set; the space is empty",
            expected,
        )
    factors: list[FactorVerdict] = []
    assumptions: set[str] = set()
    notes: list[str] = []
    for (vector, kind, multiple, gamma), count in _group_parts(fd):
        if kind == ISOTROPIC_MULTIPLE:
            factors.append(_rule_open_isotropic(vector, count, multiple, gamma))
            continue
        p = p_value(quiver, vector)
        if p == 0:
            factors.append(_rule_point(vector, count))
            continue
        if _is_two_two(quiver, q, theta, vector):
            entry = _comb_entry_note(quiver, vector)
            factors.append(_rule_open22(vector, count, entry))
            continue
        g = q_gcd(quiver, q, theta, vector)
        if g == 1:
            hint = "sigma member" if sigma_membership(quiver, q, theta, vector).in_sigma \
                else "flat root outside sigma"
            factors.append(_rule_resolution(vector, count, hint))
            continue
        seq = run_admissible_sequence(quiver, q, theta, vector)
        state = (seq.q, seq.theta, seq.alpha) if seq.terminal in (FUNDAMENTAL,) else (q, theta, vector)
        framed = framed_affine_prime_form(quiver, state[0], state[1], state[2])
        if framed is not None and framed.prime == g:
            factors.append(_rule_open_framed(vector, count, framed.prime))
            assumptions.add(EXPECTATION_STAR_USED)
            continue
        factors.append(_rule_no_resolution(vector, count, g, conditional=False))
        notes.append(
            f"factor {list(vector)}: nonemptiness of the sigma subdimension is known for "
            "crab-shaped quivers, so the no-resolution conclusion is unconditional"
        )
    overall = _aggregate(factors)
    head = factors and max(factors, key=lambda f: _SEVERITY[f.verdict])
    return Verdict(
        overall,
        tuple(factors),
        tuple(sorted(assumptions)),
        expected,
        head.rule if head else "point-real-sigma-root",
        head.statement if head else "no factors",
        tuple(notes),
    )


def _comb_entry_note(quiver: Quiver, vector: DimVector) -> str:
    """Attach the finite classification entry matched by half the factor."""
    from .enum22 import match_half_against_classification

    half = tuple(x // 2 for x in vector)
    entry = match_half_against_classification(quiver, half)
    if entry is None:
        return ""
    return f"; half the factor matches finite classification entry {entry}"

"""Membership tests for the kernel set, flat roots, and the sigma set.

Terminology (all standard for quiver varieties):

* the kernel set N collects the nonnegative vectors alpha with q^alpha = 1
  and theta . alpha = 0; membership is necessary for the moduli space to be
  nonempty;
* a root alpha in N is *flat* when p(alpha) weakly dominates the p sum of
  every decomposition of alpha into positive roots of N (the multiplicative
  moment map is flat exactly over those);
* the *sigma set* consists of the roots in N whose p strictly dominates
  every such decomposition; these are the dimension vectors of stratum
  generic representations.

Both properties are decided by reflecting sequences.  Flatness fails exactly
when some step has trivial local parameters and pairing at least two, or the
fundamental terminal is a multiple m * (l * delta) with m >= 2, delta the
radical vector of an affine Dynkin support and q^delta a primitive l-th root
of unity.  Sigma membership additionally fails on any step with trivial
local parameters, and on fundamental terminals that split along a single
bridge arrow in the two ways detected below.

Definitional brute-force oracles (small inputs only) are provided alongside;
the test suite runs the reflection procedures against them exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from math import gcd
from typing import Sequence

from .core import (
    DimVector,
    InvariantViolation,
    MultParam,
    OracleBudgetError,
    PreconditionError,
    Quiver,
    Stability,
    as_dim_vector,
    dot,
    q_power,
    require_nonnegative_nonzero,
    restrict,
    sub_vectors,
    support,
)
from .forms import AffineData, detect_affine_dynkin, p_value, proportionality
from .reflect import (
    ELEMENTARY,
    FUNDAMENTAL,
    STUCK,
    ReflectingSequence,
    classify_root,
    run_admissible_sequence,
    run_reflecting_sequence,
)

IN_SIGMA = "in-sigma"
NOT_ROOT_STATUS = "not-root"
NOT_IN_KERNEL = "not-in-kernel"
INADMISSIBLE_STEP = "inadmissible-step"
CASE_A = "case-a"
CASE_B1 = "case-b1"
CASE_B2 = "case-b2"


def in_kernel(quiver: Quiver, q: MultParam, theta: Sequence[int], alpha: Sequence[int]) -> bool:
    """q^alpha = 1 and theta . alpha = 0, for nonnegative alpha."""
    alpha = as_dim_vector(alpha, quiver)
    if any(a < 0 for a in alpha):
        raise PreconditionError("kernel membership is defined for nonnegative vectors")
    return q_power(q, alpha).is_identity() and dot(theta, alpha) == 0


def _divisors_desc(n: int) -> list[int]:
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return sorted(divs, reverse=True)


def q_gcd(quiver: Quiver, q: MultParam, theta: Sequence[int], alpha: Sequence[int]) -> int:
    """Largest m >= 1 with m | gcd(alpha) and alpha/m still in the kernel.

    alpha is q-indivisible exactly when this returns 1.
    """
    alpha = as_dim_vector(alpha, quiver)
    require_nonnegative_nonzero(alpha)
    if not in_kernel(quiver, q, theta, alpha):
        raise PreconditionError("q_gcd needs a kernel member")
    g = 0
    for a in alpha:
        g = gcd(g, a)
    for m in _divisors_desc(g):
        if m == 1:
            return 1
        candidate = tuple(a // m for a in alpha)
        if in_kernel(quiver, q, theta, candidate):
            return m
    return 1


# ---------------------------------------------------------------------------
# case analysis at fundamental (or stuck) states


@dataclass(frozen=True)
class IsotropicMultipleForm:
    """alpha = m * (l * delta) with m >= 2 on an affine Dynkin support."""

    m: int
    ell: int
    delta: DimVector
    affine: AffineData


def isotropic_multiple_form(
    quiver: Quiver, q: MultParam, alpha: Sequence[int]
) -> IsotropicMultipleForm | None:
    """Detect the non-flat fundamental form m * l * delta, m >= 2.

    l is the order of q^delta; no finite order (a free exponent survives)
    means the form cannot apply.
    """
    aff = detect_affine_dynkin(quiver, support(alpha))
    if aff is None:
        return None
    c = proportionality(alpha, aff.delta)
    if c is None or c <= 0:
        return None
    ell = q_power(q, aff.delta).torsion_order()
    if ell is None or c % ell != 0:
        return None
    m = c // ell
    if m < 2:
        return None
    scaled = tuple(ell * d for d in aff.delta)
    return IsotropicMultipleForm(m, ell, scaled, aff)


@dataclass(frozen=True)
class BridgeSplit:
    """A support partition J | K joined by exactly one arrow from j to k."""

    case: str  # CASE_B1 or CASE_B2
    J: frozenset[int]
    K: frozenset[int]
    j: int
    k: int
    delta: DimVector | None = None  # CASE_B2 only
    m: int | None = None  # CASE_B2 only


def _bridges(quiver: Quiver, verts: frozenset[int]) -> list[tuple[int, int]]:
    """Multiplicity-one edges of the induced graph whose removal disconnects it."""
    out = []
    for (u, w), m in quiver.edge_multiplicity.items():
        if m != 1 or u not in verts or w not in verts:
            continue
        # connectivity from u to w avoiding the edge (u, w)
        seen = {u}
        stack = [u]
        found = False
        while stack and not found:
            x = stack.pop()
            for y in quiver.neighbors[x]:
                if y not in verts or y in seen:
                    continue
                if {x, y} == {u, w}:
                    continue
                if y == w:
                    found = True
                    break
                seen.add(y)
                stack.append(y)
        if not found:
            out.append((u, w))
    return sorted(out)


def _component_of(quiver: Quiver, verts: frozenset[int], start: int, banned_edge: tuple[int, int]) -> frozenset[int]:
    seen = {start}
    stack = [start]
    u0, w0 = banned_edge
    while stack:
        x = stack.pop()
        for y in quiver.neighbors[x]:
            if y not in verts or y in seen:
                continue
            if {x, y} == {u0, w0}:
                continue
            seen.add(y)
            stack.append(y)
    return frozenset(seen)


def bridge_split_form(
    quiver: Quiver, q: MultParam, theta: Sequence[int], alpha: Sequence[int]
) -> BridgeSplit | None:
    """Detect the two single-bridge failure forms of the sigma test.

    The support must split as J | K with exactly one arrow joining j in J to
    k in K and alpha_k = 1.  The first form additionally has alpha_j = 1 and
    alpha restricted to J a positive root of the kernel; the second has an
    affine Dynkin J with alpha|_J = m * delta for m >= 2 and delta itself in
    the kernel.  Conditions are evaluated at the current parameters.
    """
    supp = support(alpha)
    if not quiver.is_connected_on(supp):
        return None
    for (u, w) in _bridges(quiver, supp):
        J_u = _component_of(quiver, supp, u, (u, w))
        K_w = frozenset(supp - J_u)
        for (jside, kside, j, k) in ((J_u, K_w, u, w), (K_w, J_u, w, u)):
            if alpha[k] != 1:
                continue
            a_j = restrict(alpha, jside)
            if alpha[j] == 1:
                rc = classify_root(quiver, a_j)
                if rc.is_root and in_kernel(quiver, q, theta, a_j):
                    return BridgeSplit(CASE_B1, frozenset(jside), frozenset(kside), j, k)
            aff = detect_affine_dynkin(quiver, jside)
            if aff is not None:
                c = proportionality(a_j, aff.delta)
                if c is not None and c >= 2 and in_kernel(quiver, q, theta, aff.delta):
                    return BridgeSplit(CASE_B2, frozenset(jside), frozenset(kside), j, k,
                                       delta=aff.delta, m=c)
    return None


# ---------------------------------------------------------------------------
# flat roots


def _check_root_in_kernel(
    quiver: Quiver, q: MultParam, theta: Sequence[int], alpha: Sequence[int]
) -> None:
    if not classify_root(quiver, alpha).is_root:
        raise PreconditionError(f"{tuple(alpha)} is not a positive root")
    if not in_kernel(quiver, q, theta, alpha):
        raise PreconditionError(f"{tuple(alpha)} is not in the kernel set")


@dataclass(frozen=True)
class FlatnessCertificate:
    flat: bool
    sequence: ReflectingSequence
    reason: str
    form: IsotropicMultipleForm | None = None


def is_flat(
    quiver: Quiver, q: MultParam, theta: Sequence[int], alpha: Sequence[int]
) -> FlatnessCertificate:
    """Flatness of a root in the kernel, decided by one reflecting sequence.

    Raises PreconditionError when alpha is not a positive root of the kernel
    set (flatness is undefined there).
    """
    alpha = as_dim_vector(alpha, quiver)
    require_nonnegative_nonzero(alpha)
    _check_root_in_kernel(quiver, q, theta, alpha)
    seq = run_reflecting_sequence(quiver, q, theta, alpha)
    if seq.has_inadmissible_step():
        return FlatnessCertificate(False, seq, "a step had trivial parameters and pairing >= 2")
    if seq.terminal == ELEMENTARY:
        return FlatnessCertificate(True, seq, "reaches a coordinate vector")
    if seq.terminal != FUNDAMENTAL:
        raise InvariantViolation("root reached a non-root terminal")
    form = isotropic_multiple_form(quiver, seq.q, seq.alpha)
    if form is not None:
        return FlatnessCertificate(False, seq, "fundamental terminal is a proper multiple of a "
                                               "q-indivisible isotropic root", form)
    return FlatnessCertificate(True, seq, "fundamental terminal is flat")


# ---------------------------------------------------------------------------
# sigma membership


@dataclass(frozen=True)
class SigmaStatus:
    """Outcome of the sigma test with its certificate.

    ``tag`` is one of in-sigma, not-root, not-in-kernel, inadmissible-step,
    case-a, case-b1, case-b2.  The sequence that produced the verdict and,
    where applicable, the detected form are attached.  Only admissible
    reflections are performed, so case data always refers to a state reached
    by moduli isomorphisms from the input.
    """

    tag: str
    sequence: ReflectingSequence | None = None
    form: IsotropicMultipleForm | None = None
    split: BridgeSplit | None = None
    stuck_vertex: int | None = None
    stuck_pairing: int | None = None

    @property
    def in_sigma(self) -> bool:
        return self.tag == IN_SIGMA


def sigma_membership(
    quiver: Quiver, q: MultParam, theta: Sequence[int], alpha: Sequence[int]
) -> SigmaStatus:
    """Decide membership of alpha in the sigma set, with a case certificate.

    Procedure: reflect admissibly as long as possible.  Reaching a
    coordinate vector means membership (real case).  Reaching the
    fundamental region means membership unless the terminal matches the
    isotropic-multiple form or one of the bridge-split forms.  Getting stuck
    at a vertex with positive pairing but trivial parameters always refutes
    membership; the stuck state is matched against the bridge splits for
    reporting and otherwise tagged as a forced non-admissible step.
    """
    alpha = as_dim_vector(alpha, quiver)
    require_nonnegative_nonzero(alpha)
    if not classify_root(quiver, alpha).is_root:
        return SigmaStatus(NOT_ROOT_STATUS)
    if not in_kernel(quiver, q, theta, alpha):
        return SigmaStatus(NOT_IN_KERNEL)
    seq = run_admissible_sequence(quiver, q, theta, alpha)
    if seq.terminal == ELEMENTARY:
        return SigmaStatus(IN_SIGMA, seq)
    if seq.terminal == FUNDAMENTAL:
        form = isotropic_multiple_form(quiver, seq.q, seq.alpha)
        if form is not None:
            return SigmaStatus(CASE_A, seq, form=form)
        split = bridge_split_form(quiver, seq.q, seq.theta, seq.alpha)
        if split is not None:
            return SigmaStatus(split.case, seq, split=split)
        return SigmaStatus(IN_SIGMA, seq)
    if seq.terminal == STUCK:
        split = bridge_split_form(quiver, seq.q, seq.theta, seq.alpha)
        if split is not None:
            return SigmaStatus(split.case, seq, split=split)
        stuck = min(
            v for v in quiver.loopfree_vertices
            if quiver.pairing_with_vertex(seq.alpha, v) > 0
        )
        return SigmaStatus(INADMISSIBLE_STEP, seq, stuck_vertex=stuck,
                           stuck_pairing=quiver.pairing_with_vertex(seq.alpha, stuck))
    raise InvariantViolation("admissible sequence left the root cone")


# ---------------------------------------------------------------------------
# brute-force definitional oracles

DEFAULT_ORACLE_BUDGET = 8

_NEG_INF = float("-inf")


class _OracleContext:
    """Definitional enumeration for one (quiver, q, theta).

    ``best[gamma]`` is the maximum of sum p(beta_i) over decompositions of
    gamma into one or more positive roots of the kernel set, or -inf when no
    such decomposition exists.  Memoised on the remaining vector.
    """

    def __init__(self, quiver: Quiver, q: MultParam, theta: Stability):
        self.quiver = quiver
        self.q = q
        self.theta = theta
        self._root_in_kernel: dict[DimVector, bool] = {}
        self._best: dict[DimVector, float] = {}

    def root_in_kernel(self, beta: DimVector) -> bool:
        cached = self._root_in_kernel.get(beta)
        if cached is None:
            cached = classify_root(self.quiver, beta).is_root and in_kernel(
                self.quiver, self.q, self.theta, beta
            )
            self._root_in_kernel[beta] = cached
        return cached

    def _subvectors(self, gamma: DimVector):
        ranges = [range(c + 1) for c in gamma]
        for combo in _cartesian(*ranges):
            if any(combo):
                yield combo

    def best(self, gamma: DimVector) -> float:
        if not any(gamma):
            return 0
        cached = self._best.get(gamma)
        if cached is not None:
            return cached
        self._best[gamma] = _NEG_INF  # guards the recursion; overwritten below
        value = _NEG_INF
        for beta in self._subvectors(gamma):
            if not self.root_in_kernel(beta):
                continue
            rest = self.best(sub_vectors(gamma, beta))
            if rest == _NEG_INF:
                continue
            candidate = p_value(self.quiver, beta) + rest
            if candidate > value:
                value = candidate
        self._best[gamma] = value
        return value

    def max_proper_decomposition(self, alpha: DimVector) -> float:
        """Max p sum over decompositions of alpha into >= 2 kernel roots."""
        value = _NEG_INF
        for beta in self._subvectors(alpha):
            if beta == alpha or not self.root_in_kernel(beta):
                continue
            rest = self.best(sub_vectors(alpha, beta))
            if rest == _NEG_INF:
                continue
            candidate = p_value(self.quiver, beta) + rest
            if candidate > value:
                value = candidate
        return value


_oracle_contexts: dict[tuple, _OracleContext] = {}


def _context(quiver: Quiver, q: MultParam, theta: Stability) -> _OracleContext:
    key = (quiver, q, theta)
    ctx = _oracle_contexts.get(key)
    if ctx is None:
        ctx = _OracleContext(quiver, q, theta)
        _oracle_contexts[key] = ctx
    return ctx


def _guard_budget(alpha: Sequence[int], budget: int) -> None:
    if sum(alpha) > budget:
        raise OracleBudgetError(
            f"oracle budget exceeded: sum of entries {sum(alpha)} > {budget}"
        )


def brute_force_sigma(
    quiver: Quiver,
    q: MultParam,
    theta: Sequence[int],
    alpha: Sequence[int],
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> bool:
    """Sigma membership straight from the definition, by enumeration.

    Independent of the reflection machinery: roots are recognised by the
    cached alpha-only driver and decompositions are enumerated over the box
    below alpha with memoisation on the remaining vector.
    """
    alpha = as_dim_vector(alpha, quiver)
    require_nonnegative_nonzero(alpha)
    _guard_budget(alpha, budget)
    theta = as_dim_vector(theta, quiver)
    ctx = _context(quiver, q, theta)
    if not ctx.root_in_kernel(alpha):
        return False
    return ctx.max_proper_decomposition(alpha) < p_value(quiver, alpha)


def brute_force_flat(
    quiver: Quiver,
    q: MultParam,
    theta: Sequence[int],
    alpha: Sequence[int],
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> bool:
    """Flatness straight from the definition (non-strict inequality)."""
    alpha = as_dim_vector(alpha, quiver)
    require_nonnegative_nonzero(alpha)
    _guard_budget(alpha, budget)
    theta = as_dim_vector(theta, quiver)
    ctx = _context(quiver, q, theta)
    if not ctx.root_in_kernel(alpha):
        return False
    return ctx.max_proper_decomposition(alpha) <= p_value(quiver, alpha)


def kernel_root_cone_member(
    quiver: Quiver,
    q: MultParam,
    theta: Sequence[int],
    alpha: Sequence[int],
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> bool:
    """Is alpha a sum of positive roots of the kernel set?  (Oracle helper.)"""
    alpha = as_dim_vector(alpha, quiver)
    require_nonnegative_nonzero(alpha)
    _guard_budget(alpha, budget)
    theta = as_dim_vector(theta, quiver)
    ctx = _context(quiver, q, theta)
    return ctx.best(alpha) != _NEG_INF

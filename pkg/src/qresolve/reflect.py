"""Simple reflections on dimension vectors, parameters and stability weights.

A reflection at a loopfree vertex v acts simultaneously on the triple
(q, theta, alpha):

    alpha -> alpha - (alpha, e_v) e_v
    q_w   -> q_v^{-(e_v, e_w)} q_w
    theta_w -> theta_w - (e_v, e_w) theta_v

The q and theta actions are designed so that q^alpha and theta . alpha are
preserved; this compatibility is an exact identity in exponent arithmetic and
is checked wholesale by the test suite.

The reflecting-sequence driver repeatedly reflects at a vertex with positive
Cartan pairing until it reaches a coordinate vector, the fundamental region,
a negative entry, or disconnected support.  Each step is classified:

* admissible: theta_v != 0 or q_v != 1 before the step (moduli isomorphism),
* minus-one: parameters trivial at v and (alpha, e_v) = 1,
* inadmissible: parameters trivial at v and (alpha, e_v) >= 2.

Root membership only depends on the alpha component, so a lighter driver is
used for root classification and cached per quiver.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .core import (
    DimVector,
    MultParam,
    PreconditionError,
    Quiver,
    Stability,
    as_dim_vector,
    require_nonnegative_nonzero,
    support,
)
from .forms import p_value

ADMISSIBLE = "admissible"
MINUS_ONE = "minus-one"
INADMISSIBLE = "inadmissible"

ELEMENTARY = "elementary-vector"
FUNDAMENTAL = "fundamental"
WENT_NEGATIVE = "went-negative"
DISCONNECTED = "disconnected"
STUCK = "stuck"

NOT_ROOT = "not-root"
REAL_ROOT = "real"
ISOTROPIC_IMAGINARY = "isotropic-imaginary"
ANISOTROPIC_IMAGINARY = "anisotropic-imaginary"


def _require_loopfree(quiver: Quiver, v: int) -> None:
    if not (0 <= v < quiver.vertex_count):
        raise PreconditionError(f"vertex {v} out of range")
    if quiver.loop_count(v) > 0:
        raise PreconditionError(f"vertex {v} carries a loop; reflections are undefined there")


def reflect_dim(quiver: Quiver, v: int, alpha: Sequence[int]) -> DimVector:
    """s_v(alpha) = alpha - (alpha, e_v) e_v, for loopfree v."""
    _require_loopfree(quiver, v)
    alpha = as_dim_vector(alpha, quiver)
    c = quiver.pairing_with_vertex(alpha, v)
    return tuple(a - c if i == v else a for i, a in enumerate(alpha))


def reflect_q(quiver: Quiver, v: int, q: MultParam) -> MultParam:
    """u_v(q)_w = q_v^{-(e_v, e_w)} q_w, for loopfree v."""
    _require_loopfree(quiver, v)
    if len(q) != quiver.vertex_count:
        raise PreconditionError("parameter length does not match the quiver")
    row = quiver.cartan_matrix[v]
    qv = q[v]
    return q.replace(tuple(qv ** (-row[w]) * q[w] for w in range(quiver.vertex_count)))


def reflect_theta(quiver: Quiver, v: int, theta: Sequence[int]) -> Stability:
    """r_v(theta)_w = theta_w - (e_v, e_w) theta_v, for loopfree v."""
    _require_loopfree(quiver, v)
    theta = as_dim_vector(theta, quiver)
    row = quiver.cartan_matrix[v]
    tv = theta[v]
    return tuple(theta[w] - row[w] * tv for w in range(quiver.vertex_count))


def reflect_triple(
    quiver: Quiver, v: int, q: MultParam, theta: Sequence[int], alpha: Sequence[int]
) -> tuple[MultParam, Stability, DimVector]:
    return reflect_q(quiver, v, q), reflect_theta(quiver, v, theta), reflect_dim(quiver, v, alpha)


def is_admissible_vertex(quiver: Quiver, v: int, q: MultParam, theta: Sequence[int]) -> bool:
    return theta[v] != 0 or not q[v].is_identity()


@dataclass(frozen=True)
class ReflectionStep:
    vertex: int
    kind: str
    before: tuple[MultParam, Stability, DimVector]
    after: tuple[MultParam, Stability, DimVector]


@dataclass(frozen=True)
class ReflectingSequence:
    """The recorded run of the reflection driver.

    ``terminal`` is one of ELEMENTARY, FUNDAMENTAL, WENT_NEGATIVE,
    DISCONNECTED or (admissible-only driver) STUCK.  The final parameter
    state lives in ``q``, ``theta``, ``alpha``; for ELEMENTARY the vertex is
    in ``terminal_vertex``.
    """

    steps: tuple[ReflectionStep, ...]
    terminal: str
    q: MultParam
    theta: Stability
    alpha: DimVector
    terminal_vertex: int | None = None

    @property
    def word(self) -> tuple[int, ...]:
        return tuple(s.vertex for s in self.steps)

    def all_steps_admissible(self) -> bool:
        return all(s.kind == ADMISSIBLE for s in self.steps)

    def has_inadmissible_step(self) -> bool:
        return any(s.kind == INADMISSIBLE for s in self.steps)


def _elementary_vertex(quiver: Quiver, alpha: Sequence[int]) -> int | None:
    supp = [i for i, a in enumerate(alpha) if a != 0]
    if len(supp) == 1 and alpha[supp[0]] == 1 and quiver.loop_count(supp[0]) == 0:
        return supp[0]
    return None


def _drive(
    quiver: Quiver,
    q: MultParam,
    theta: Sequence[int],
    alpha: Sequence[int],
    admissible_only: bool,
) -> ReflectingSequence:
    theta = as_dim_vector(theta, quiver)
    alpha = as_dim_vector(alpha, quiver)
    require_nonnegative_nonzero(alpha)
    steps: list[ReflectionStep] = []
    while True:
        if any(a < 0 for a in alpha):
            return ReflectingSequence(tuple(steps), WENT_NEGATIVE, q, theta, alpha)
        ev = _elementary_vertex(quiver, alpha)
        if ev is not None:
            return ReflectingSequence(tuple(steps), ELEMENTARY, q, theta, alpha, ev)
        positive = [
            v for v in quiver.loopfree_vertices if quiver.pairing_with_vertex(alpha, v) > 0
        ]
        if not positive:
            kind = FUNDAMENTAL if quiver.is_connected_on(support(alpha)) else DISCONNECTED
            return ReflectingSequence(tuple(steps), kind, q, theta, alpha)
        if admissible_only:
            candidates = [v for v in positive if is_admissible_vertex(quiver, v, q, theta)]
            if not candidates:
                return ReflectingSequence(tuple(steps), STUCK, q, theta, alpha)
            v = min(candidates)
        else:
            v = min(positive)
        pairing = quiver.pairing_with_vertex(alpha, v)
        if is_admissible_vertex(quiver, v, q, theta):
            kind = ADMISSIBLE
        elif pairing == 1:
            kind = MINUS_ONE
        else:
            kind = INADMISSIBLE
        before = (q, theta, alpha)
        q, theta, alpha = reflect_triple(quiver, v, q, theta, alpha)
        steps.append(ReflectionStep(v, kind, before, (q, theta, alpha)))


def run_reflecting_sequence(
    quiver: Quiver, q: MultParam, theta: Sequence[int], alpha: Sequence[int]
) -> ReflectingSequence:
    """Reflect at the smallest positive-pairing loopfree vertex until terminal.

    Any such sequence decides root membership, flatness and the fundamental
    case analysis, so the deterministic smallest-vertex policy is purely for
    reproducibility.
    """
    return _drive(quiver, q, theta, alpha, admissible_only=False)


def run_admissible_sequence(
    quiver: Quiver, q: MultParam, theta: Sequence[int], alpha: Sequence[int]
) -> ReflectingSequence:
    """Reflect only at admissible vertices; report STUCK when none remains."""
    return _drive(quiver, q, theta, alpha, admissible_only=True)


# ---------------------------------------------------------------------------
# root classification (alpha only)


@lru_cache(maxsize=None)
def _alpha_terminal(quiver: Quiver, alpha: DimVector) -> tuple[tuple[int, ...], str, DimVector, int | None]:
    word: list[int] = []
    cur = alpha
    while True:
        if any(a < 0 for a in cur):
            return tuple(word), WENT_NEGATIVE, cur, None
        ev = _elementary_vertex(quiver, cur)
        if ev is not None:
            return tuple(word), ELEMENTARY, cur, ev
        positive = [v for v in quiver.loopfree_vertices if quiver.pairing_with_vertex(cur, v) > 0]
        if not positive:
            kind = FUNDAMENTAL if quiver.is_connected_on(support(cur)) else DISCONNECTED
            return tuple(word), kind, cur, None
        v = min(positive)
        c = quiver.pairing_with_vertex(cur, v)
        cur = tuple(a - c if i == v else a for i, a in enumerate(cur))
        word.append(v)


@dataclass(frozen=True)
class RootClass:
    """Outcome of the root test: the tag, the vertex word used, the terminal vector."""

    tag: str
    witness: tuple[int, ...]
    terminal: DimVector

    @property
    def is_root(self) -> bool:
        return self.tag != NOT_ROOT

    @property
    def is_real(self) -> bool:
        return self.tag == REAL_ROOT

    @property
    def is_imaginary(self) -> bool:
        return self.tag in (ISOTROPIC_IMAGINARY, ANISOTROPIC_IMAGINARY)


def classify_root(quiver: Quiver, alpha: Sequence[int]) -> RootClass:
    """Is alpha a positive root, and of which kind?

    Real roots reach a coordinate vector at a loopfree vertex; imaginary
    roots reach the fundamental region, where p distinguishes isotropic
    (p = 1) from anisotropic (p >= 2).  A negative entry or disconnected
    support on the way certifies that alpha is not a root.
    """
    alpha = as_dim_vector(alpha, quiver)
    require_nonnegative_nonzero(alpha)
    word, terminal, final, _v = _alpha_terminal(quiver, alpha)
    if terminal == ELEMENTARY:
        return RootClass(REAL_ROOT, word, final)
    if terminal == FUNDAMENTAL:
        p = p_value(quiver, alpha)
        tag = ISOTROPIC_IMAGINARY if p == 1 else ANISOTROPIC_IMAGINARY
        return RootClass(tag, word, final)
    return RootClass(NOT_ROOT, word, final)

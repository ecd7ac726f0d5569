"""Canonical decompositions of kernel vectors.

Two layers, mirroring the structure theory:

* the *flat decomposition* writes alpha as a sum of flat roots and of
  multiples m * gamma (m >= 2) of q-indivisible isotropic roots; real parts
  are always sigma members, imaginary parts pair nonpositively with every
  real kernel root;
* the *sigma decomposition* refines it into sigma members with
  multiplicities; the pairing between distinct imaginary parts is always 0
  or -1 and the graph of -1 pairings is a forest whose connected components
  recover the flat parts.

The construction is the proof's recursion: apply an admissible reflection
when one is available at a positive-pairing vertex, otherwise split off a
coordinate vector at a trivial-parameter vertex with positive pairing,
otherwise cut into connected components and classify each.  Every emitted
part is transported back through the reflection word, so all results are
dimension vectors for the original parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .core import (
    DimVector,
    InvariantViolation,
    MultParam,
    NotDecomposableError,
    OracleBudgetError,
    PreconditionError,
    Quiver,
    Stability,
    add_vectors,
    as_dim_vector,
    require_nonnegative_nonzero,
    restrict,
    scale_vector,
    sub_vectors,
    support,
)
from .forms import cartan_pairing, p_value
from .reflect import is_admissible_vertex, reflect_dim, reflect_triple
from .sigma import (
    CASE_B1,
    DEFAULT_ORACLE_BUDGET,
    bridge_split_form,
    brute_force_sigma,
    in_kernel,
    isotropic_multiple_form,
)

FLAT_ROOT = "flat-root"
ISOTROPIC_MULTIPLE = "isotropic-multiple"


@dataclass(frozen=True)
class FlatPart:
    """One factor of the flat decomposition, in original coordinates.

    ``kind`` is flat-root or isotropic-multiple; for the latter the vector
    equals multiple * gamma with gamma a q-indivisible isotropic root.
    """

    vector: DimVector
    kind: str
    multiple: int = 1
    gamma: DimVector | None = None


@dataclass(frozen=True)
class FlatDecomposition:
    parts: tuple[FlatPart, ...]
    log: tuple[tuple[str, int], ...]  # ("reflect", v) and ("split", v) events

    def total(self) -> DimVector:
        tot = self.parts[0].vector
        for part in self.parts[1:]:
            tot = add_vectors(tot, part.vector)
        return tot


@dataclass(frozen=True)
class SigmaDecomposition:
    """Sigma members with multiplicities, plus the -1 pairing forest."""

    parts: tuple[tuple[DimVector, int], ...]
    intersection_edges: tuple[tuple[DimVector, DimVector], ...]

    def total(self) -> DimVector:
        tot = scale_vector(self.parts[0][1], self.parts[0][0])
        for vec, mult in self.parts[1:]:
            tot = add_vectors(tot, scale_vector(mult, vec))
        return tot

    def is_forest(self) -> bool:
        index = {vec: i for i, (vec, _) in enumerate(self.parts)}
        parent = list(range(len(self.parts)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.intersection_edges:
            ra, rb = find(index[a]), find(index[b])
            if ra == rb:
                return False
            parent[ra] = rb
        return True


# ---------------------------------------------------------------------------
# the shared recursion


def _recurse(
    quiver: Quiver,
    q: MultParam,
    theta: Stability,
    alpha: DimVector,
    emit_component: Callable,
    log: list[tuple[str, int]],
) -> list:
    """Core of both decompositions.

    ``emit_component`` maps a fundamental connected component (in the current
    frame) to a list of parts (still in the current frame); reflections and
    coordinate splits are handled here, including the transport of parts back
    through reflections.
    """
    if not any(alpha):
        return []
    positive = [v for v in quiver.loopfree_vertices if quiver.pairing_with_vertex(alpha, v) > 0]
    admissible = [v for v in positive if is_admissible_vertex(quiver, v, q, theta)]
    if admissible:
        v = min(admissible)
        log.append(("reflect", v))
        q2, theta2, alpha2 = reflect_triple(quiver, v, q, theta, alpha)
        if any(a < 0 for a in alpha2):
            raise NotDecomposableError(
                f"admissible reflection at {v} left the nonnegative cone; "
                "the vector is not a sum of kernel roots"
            )
        inner = _recurse(quiver, q2, theta2, alpha2, emit_component, log)
        out = []
        for part in inner:
            pulled = part.pull_back(quiver, v)
            if any(a < 0 for a in pulled.vector):
                raise InvariantViolation("a decomposition part went negative under pull-back")
            out.append(pulled)
        return out
    if positive:
        v = min(positive)
        log.append(("split", v))
        e_v = quiver.coordinate_vector(v)
        rest = sub_vectors(alpha, e_v)
        return [_Part.coordinate(e_v)] + _recurse(quiver, q, theta, tuple(rest), emit_component, log)
    comps = quiver.components_on(support(alpha))
    out = []
    for comp in comps:
        piece = restrict(alpha, comp)
        if not in_kernel(quiver, q, theta, piece):
            raise NotDecomposableError(
                f"connected component {piece} of the reflected vector is not in the kernel; "
                "the input is not a sum of kernel roots"
            )
        out.extend(emit_component(quiver, q, theta, piece))
    return out


@dataclass(frozen=True)
class _Part:
    """Internal transportable part: a vector plus flat/sigma classification data."""

    vector: DimVector
    kind: str
    multiple: int = 1
    gamma: DimVector | None = None

    @staticmethod
    def coordinate(e_v: DimVector) -> "_Part":
        return _Part(e_v, FLAT_ROOT)

    def pull_back(self, quiver: Quiver, v: int) -> "_Part":
        vec = reflect_dim(quiver, v, self.vector)
        gamma = reflect_dim(quiver, v, self.gamma) if self.gamma is not None else None
        return _Part(vec, self.kind, self.multiple, gamma)


def _emit_flat(quiver: Quiver, q: MultParam, theta: Stability, piece: DimVector) -> list[_Part]:
    form = isotropic_multiple_form(quiver, q, piece)
    if form is not None:
        return [_Part(piece, ISOTROPIC_MULTIPLE, form.m, form.delta)]
    return [_Part(piece, FLAT_ROOT)]


def _emit_sigma(quiver: Quiver, q: MultParam, theta: Stability, piece: DimVector) -> list[_Part]:
    form = isotropic_multiple_form(quiver, q, piece)
    if form is not None:
        return [_Part(form.delta, "sigma", 1) for _ in range(form.m)]
    split = bridge_split_form(quiver, q, theta, piece)
    if split is None:
        return [_Part(piece, "sigma", 1)]
    if split.case == CASE_B1:
        left = restrict(piece, split.J)
        right = restrict(piece, split.K)
    else:
        left = split.delta
        right = sub_vectors(piece, split.delta)
    out = []
    for sub in (left, right):
        out.extend(_sigma_parts(quiver, q, theta, tuple(sub)))
    return out


def _sigma_parts(quiver: Quiver, q: MultParam, theta: Stability, alpha: DimVector) -> list[_Part]:
    log: list[tuple[str, int]] = []
    return _recurse(quiver, q, theta, alpha, _emit_sigma, log)


# ---------------------------------------------------------------------------
# public operations


def decompose_flat(
    quiver: Quiver, q: MultParam, theta: Sequence[int], alpha: Sequence[int]
) -> FlatDecomposition:
    """Flat decomposition of a kernel vector, parts in original coordinates.

    Raises NotDecomposableError when alpha is not a sum of positive roots of
    the kernel set (equivalently, the moduli space has no semisimple
    representative and is empty).
    """
    alpha = as_dim_vector(alpha, quiver)
    require_nonnegative_nonzero(alpha)
    theta = as_dim_vector(theta, quiver)
    if not in_kernel(quiver, q, theta, alpha):
        raise PreconditionError("decompose_flat needs a kernel member")
    log: list[tuple[str, int]] = []
    raw = _recurse(quiver, q, theta, alpha, _emit_flat, log)
    parts = tuple(FlatPart(p.vector, p.kind, p.multiple, p.gamma) for p in raw)
    fd = FlatDecomposition(parts, tuple(log))
    if fd.total() != alpha:
        raise InvariantViolation("flat decomposition does not sum to the input")
    return fd


def sigma_decompose(
    quiver: Quiver, q: MultParam, theta: Sequence[int], alpha: Sequence[int]
) -> SigmaDecomposition:
    """The minimal decomposition of alpha into sigma members, with the forest."""
    alpha = as_dim_vector(alpha, quiver)
    require_nonnegative_nonzero(alpha)
    theta = as_dim_vector(theta, quiver)
    if not in_kernel(quiver, q, theta, alpha):
        raise PreconditionError("sigma decomposition needs a kernel member")
    raw = _sigma_parts(quiver, q, theta, alpha)
    return _assemble_sigma(quiver, alpha, raw)


def _assemble_sigma(quiver: Quiver, alpha: DimVector, raw: list[_Part]) -> SigmaDecomposition:
    counts: dict[DimVector, int] = {}
    for part in raw:
        counts[part.vector] = counts.get(part.vector, 0) + part.multiple
    parts = tuple(sorted(counts.items(), key=lambda kv: kv[0], reverse=True))
    imag = [vec for vec, _ in parts if p_value(quiver, vec) >= 1]
    edges = []
    for i, a in enumerate(imag):
        for b in imag[i + 1:]:
            pairing = cartan_pairing(quiver, a, b)
            if pairing == -1:
                edges.append((a, b))
            elif pairing != 0:
                raise InvariantViolation(
                    f"imaginary sigma parts {a} and {b} pair to {pairing}, expected 0 or -1"
                )
    sd = SigmaDecomposition(parts, tuple(edges))
    if sd.total() != alpha:
        raise InvariantViolation("sigma decomposition does not sum to the input")
    if not sd.is_forest():
        raise InvariantViolation("the -1 pairing graph is not a forest")
    return sd


def refine_to_sigma(
    quiver: Quiver, q: MultParam, theta: Sequence[int], fd: FlatDecomposition
) -> SigmaDecomposition:
    """Refine a flat decomposition into the minimal sigma decomposition."""
    theta = as_dim_vector(theta, quiver)
    raw: list[_Part] = []
    for part in fd.parts:
        if part.kind == ISOTROPIC_MULTIPLE:
            raw.extend(_Part(part.gamma, "sigma", 1) for _ in range(part.multiple))
        else:
            raw.extend(_sigma_parts(quiver, q, theta, part.vector))
    return _assemble_sigma(quiver, fd.total(), raw)


# ---------------------------------------------------------------------------
# brute-force minimality verification


def _enumerate_sigma_decompositions(
    quiver: Quiver,
    q: MultParam,
    theta: Stability,
    alpha: DimVector,
    budget: int,
):
    """All multisets of sigma members summing to alpha (definitional oracle)."""
    from itertools import product as cartesian

    if sum(alpha) > budget:
        raise OracleBudgetError(f"minimality budget exceeded for {alpha}")
    members: list[DimVector] = []
    for combo in cartesian(*(range(c + 1) for c in alpha)):
        if any(combo) and brute_force_sigma(quiver, q, theta, combo, budget):
            members.append(combo)
    members.sort(reverse=True)

    def dfs(remaining: DimVector, start: int, chosen: list[DimVector]):
        if not any(remaining):
            yield list(chosen)
            return
        for i in range(start, len(members)):
            m = members[i]
            if all(x <= r for x, r in zip(m, remaining)):
                chosen.append(m)
                yield from dfs(sub_vectors(remaining, m), i, chosen)
                chosen.pop()

    yield from dfs(alpha, 0, [])


def _refines(candidate: list[DimVector], groups: list[DimVector]) -> bool:
    """Can the candidate multiset be partitioned into blocks summing to groups?"""
    if not groups:
        return not candidate
    target = groups[0]
    rest = groups[1:]
    n = len(candidate)

    def pick(idx: int, remaining: DimVector, used: list[bool]):
        if not any(remaining):
            leftover = [candidate[i] for i in range(n) if not used[i]]
            if _refines(leftover, rest):
                yield True
            return
        for i in range(idx, n):
            if used[i]:
                continue
            vec = candidate[i]
            if all(x <= r for x, r in zip(vec, remaining)):
                used[i] = True
                yield from pick(i + 1, sub_vectors(remaining, vec), used)
                used[i] = False

    return next(pick(0, target, [False] * n), False)


def verify_minimality(
    quiver: Quiver,
    q: MultParam,
    theta: Sequence[int],
    alpha: Sequence[int],
    sd: SigmaDecomposition,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> bool:
    """Every sigma decomposition of alpha refines sd (exhaustive, small alpha).

    A candidate refines sd when its parts can be grouped into blocks summing
    to the parts of sd.  This is the definitional minimality statement.
    """
    alpha = as_dim_vector(alpha, quiver)
    theta = as_dim_vector(theta, quiver)
    groups: list[DimVector] = []
    for vec, mult in sd.parts:
        groups.extend([vec] * mult)
    for candidate in _enumerate_sigma_decompositions(quiver, q, theta, alpha, budget):
        if not _refines(candidate, groups):
            return False
    return True

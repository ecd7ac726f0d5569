"""Exact data model: quivers, dimension vectors, and symbolic scalar parameters.

Every scalar parameter is an element of the abelian group (Q/Z) + Z^r written
multiplicatively: a ``GroupElt`` with torsion exponent c and free exponents
(n_1, ..., n_r) stands for the nonzero complex number

    e^{2 pi i c} * t_1^{n_1} * ... * t_r^{n_r}

where t_1, ..., t_r are generators the caller declares to be multiplicatively
independent.  All decision procedures in this package only ever ask whether a
product of parameters equals 1, or is a primitive m-th root of unity, so this
encoding makes every such test exact and decidable.  Declaring independent
generators is the caller's responsibility; nothing is ever evaluated
numerically.

Dimension vectors and stability parameters are plain integer tuples.  Entries
of dimension vectors may be negative (reflection intermediates need that);
operations that require nonnegativity check it themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence


class StructuralError(ValueError):
    """Inputs disagree structurally: lengths, vertex ids, generator ranks."""


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold."""


class NotDecomposableError(ValueError):
    """The vector admits no decomposition into positive roots of the kernel.

    For such a vector the moduli space has no semisimple representative at
    all, so it is empty; see :mod:`qresolve.classify` for how this is
    reported.
    """


class OracleBudgetError(RuntimeError):
    """A brute-force oracle was asked to exceed its enumeration budget."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed.  This indicates a bug."""


DimVector = tuple[int, ...]
Stability = tuple[int, ...]


# ---------------------------------------------------------------------------
# quivers


@dataclass(frozen=True)
class Quiver:
    """A finite directed multigraph.  Loops and parallel arrows are allowed.

    Vertices are the integers ``0 .. vertex_count-1``.  Arrows are stored as
    (tail, head) pairs; orientation is kept for bookkeeping, but every form
    and root computation in this package is orientation insensitive.
    """

    vertex_count: int
    arrows: tuple[tuple[int, int], ...]
    vertex_labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.vertex_count <= 0:
            raise StructuralError("quiver needs at least one vertex")
        for t, h in self.arrows:
            if not (0 <= t < self.vertex_count and 0 <= h < self.vertex_count):
                raise StructuralError(f"arrow ({t},{h}) has an endpoint outside the vertex range")
        if self.vertex_labels is not None and len(self.vertex_labels) != self.vertex_count:
            raise StructuralError("vertex_labels length must match vertex_count")

    @cached_property
    def loop_counts(self) -> tuple[int, ...]:
        counts = [0] * self.vertex_count
        for t, h in self.arrows:
            if t == h:
                counts[t] += 1
        return tuple(counts)

    def loop_count(self, v: int) -> int:
        return self.loop_counts[v]

    @cached_property
    def loopfree_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.vertex_count) if self.loop_counts[v] == 0)

    @cached_property
    def edge_multiplicity(self) -> dict[tuple[int, int], int]:
        """Multiplicity of edges between distinct vertices, keyed (u, w) with u < w."""
        mult: dict[tuple[int, int], int] = {}
        for t, h in self.arrows:
            if t != h:
                key = (t, h) if t < h else (h, t)
                mult[key] = mult.get(key, 0) + 1
        return mult

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Distinct neighbours in the underlying graph, loops excluded."""
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for (u, w) in self.edge_multiplicity:
            adj[u].add(w)
            adj[w].add(u)
        return tuple(tuple(sorted(s)) for s in adj)

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Symmetrised Cartan matrix: C[i][i] = 2 - 2*loops(i), C[i][j] = -#edges."""
        n = self.vertex_count
        mat = [[0] * n for _ in range(n)]
        for i in range(n):
            mat[i][i] = 2 - 2 * self.loop_counts[i]
        for (u, w), m in self.edge_multiplicity.items():
            mat[u][w] -= m
            mat[w][u] -= m
        return tuple(tuple(row) for row in mat)

    def pairing_with_vertex(self, alpha: Sequence[int], v: int) -> int:
        """Cartan pairing (alpha, e_v), computed from the cached matrix row."""
        row = self.cartan_matrix[v]
        return sum(row[j] * alpha[j] for j in range(self.vertex_count))

    def coordinate_vector(self, v: int) -> DimVector:
        if not (0 <= v < self.vertex_count):
            raise StructuralError(f"vertex {v} out of range")
        return tuple(1 if i == v else 0 for i in range(self.vertex_count))

    def is_connected_on(self, vertices: Iterable[int]) -> bool:
        """Connectivity of the induced underlying graph.  Loops play no role."""
        verts = set(vertices)
        if not verts:
            return False
        start = next(iter(verts))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in self.neighbors[u]:
                if w in verts and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == verts

    def components_on(self, vertices: Iterable[int]) -> list[frozenset[int]]:
        verts = set(vertices)
        comps: list[frozenset[int]] = []
        while verts:
            start = verts.pop()
            seen = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in self.neighbors[u]:
                    if w in verts:
                        verts.discard(w)
                        seen.add(w)
                        stack.append(w)
            comps.append(frozenset(seen))
        return sorted(comps, key=min)

    def to_json(self) -> dict:
        out: dict = {"vertices": self.vertex_count, "arrows": [list(a) for a in self.arrows]}
        if self.vertex_labels is not None:
            out["labels"] = list(self.vertex_labels)
        return out

    @staticmethod
    def from_json(data: dict) -> "Quiver":
        try:
            n = int(data["vertices"])
            arrows = tuple((int(t), int(h)) for t, h in data["arrows"])
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"bad quiver payload: {exc}") from exc
        labels = data.get("labels")
        return Quiver(n, arrows, tuple(labels) if labels is not None else None)


# ---------------------------------------------------------------------------
# dimension vectors and stability parameters


def as_dim_vector(entries: Sequence[int], quiver: Quiver) -> DimVector:
    vec = tuple(int(x) for x in entries)
    if len(vec) != quiver.vertex_count:
        raise StructuralError(
            f"dimension vector has length {len(vec)}, quiver has {quiver.vertex_count} vertices"
        )
    return vec


def support(alpha: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, a in enumerate(alpha) if a != 0)


def is_nonnegative(alpha: Sequence[int]) -> bool:
    return all(a >= 0 for a in alpha)


def require_nonnegative_nonzero(alpha: Sequence[int]) -> None:
    if not is_nonnegative(alpha):
        raise PreconditionError(f"vector {tuple(alpha)} has a negative entry")
    if not any(alpha):
        raise PreconditionError("vector is zero")


def add_vectors(a: Sequence[int], b: Sequence[int]) -> DimVector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def sub_vectors(a: Sequence[int], b: Sequence[int]) -> DimVector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def scale_vector(k: int, a: Sequence[int]) -> DimVector:
    return tuple(k * x for x in a)


def dot(theta: Sequence[int], alpha: Sequence[int]) -> int:
    """Integer dot product; both vectors must be indexed by the same vertices."""
    if len(theta) != len(alpha):
        raise StructuralError("length mismatch in dot product")
    return sum(t * a for t, a in zip(theta, alpha))


def restrict(alpha: Sequence[int], vertices: Iterable[int]) -> DimVector:
    keep = set(vertices)
    return tuple(a if i in keep else 0 for i, a in enumerate(alpha))


# ---------------------------------------------------------------------------
# the symbolic scalar group


def _parse_fraction(text: str | int) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise StructuralError(f"bad rational {text!r}: {exc}") from exc


@dataclass(frozen=True)
class GroupElt:
    """An element of (Q/Z) + Z^r, written multiplicatively.

    ``torsion`` is stored reduced with 0 <= torsion < 1 and represents the
    root of unity e^{2 pi i torsion}; ``free`` holds the integer exponents on
    the declared free generators.  The group law is exponent addition, which
    is exact and total.
    """

    torsion: Fraction
    free: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        t = Fraction(self.torsion)
        object.__setattr__(self, "torsion", t - (t // 1))
        object.__setattr__(self, "free", tuple(int(x) for x in self.free))

    @staticmethod
    def identity(rank: int = 0) -> "GroupElt":
        return GroupElt(Fraction(0), (0,) * rank)

    @staticmethod
    def root_of_unity(c: Fraction | str | int, rank: int = 0) -> "GroupElt":
        return GroupElt(_parse_fraction(c), (0,) * rank)

    @staticmethod
    def generator(index: int, rank: int) -> "GroupElt":
        if not (0 <= index < rank):
            raise StructuralError("free generator index out of range")
        return GroupElt(Fraction(0), tuple(1 if i == index else 0 for i in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.free)

    def _check_rank(self, other: "GroupElt") -> None:
        if len(self.free) != len(other.free):
            raise StructuralError("scalar parameters use different generator ranks")

    def __mul__(self, other: "GroupElt") -> "GroupElt":
        self._check_rank(other)
        return GroupElt(self.torsion + other.torsion,
                        tuple(a + b for a, b in zip(self.free, other.free)))

    def __pow__(self, k: int) -> "GroupElt":
        return GroupElt(self.torsion * k, tuple(a * k for a in self.free))

    def inverse(self) -> "GroupElt":
        return self ** -1

    def is_identity(self) -> bool:
        return self.torsion == 0 and not any(self.free)

    def torsion_order(self) -> int | None:
        """Order of the element, or None if a free exponent is nonzero."""
        if any(self.free):
            return None
        return self.torsion.denominator

    def is_primitive_root(self, m: int) -> bool:
        """True iff the element is a primitive m-th root of unity (m=1 is the identity)."""
        if m < 1:
            raise PreconditionError("m must be a positive integer")
        return self.torsion_order() == m

    def sort_key(self) -> tuple:
        return (self.torsion, self.free)

    def to_json(self) -> dict:
        return {"torsion": str(self.torsion), "free": list(self.free)}

    @staticmethod
    def from_json(data: dict, rank: int | None = None) -> "GroupElt":
        torsion = _parse_fraction(data.get("torsion", 0))
        free = tuple(int(x) for x in data.get("free", () if rank is None else (0,) * rank))
        if rank is not None:
            if len(free) == 0:
                free = (0,) * rank
            if len(free) != rank:
                raise StructuralError("free exponent vector does not match declared generator count")
        return GroupElt(torsion, free)


@dataclass(frozen=True)
class MultParam:
    """A vertex-indexed family of symbolic nonzero scalars with a shared rank."""

    values: tuple[GroupElt, ...]
    rank: int = 0

    def __post_init__(self) -> None:
        for g in self.values:
            if g.rank != self.rank:
                raise StructuralError("all entries of a parameter must use the same generator rank")

    @staticmethod
    def trivial(n: int, rank: int = 0) -> "MultParam":
        return MultParam((GroupElt.identity(rank),) * n, rank)

    @staticmethod
    def of(values: Sequence[GroupElt]) -> "MultParam":
        if not values:
            raise StructuralError("a parameter needs at least one entry")
        return MultParam(tuple(values), values[0].rank)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> GroupElt:
        return self.values[v]

    def replace(self, values: Sequence[GroupElt]) -> "MultParam":
        return MultParam(tuple(values), self.rank)

    def to_json(self) -> dict:
        return {"generators": self.rank, "values": [g.to_json() for g in self.values]}

    @staticmethod
    def from_json(data: dict) -> "MultParam":
        try:
            rank = int(data.get("generators", 0))
            values = tuple(GroupElt.from_json(v, rank) for v in data["values"])
        except (KeyError, TypeError) as exc:
            raise StructuralError(f"bad parameter payload: {exc}") from exc
        return MultParam(values, rank)


def q_power(q: MultParam, alpha: Sequence[int]) -> GroupElt:
    """The product of the q_i^{alpha_i}, computed in exponents.

    Defined for arbitrary integer vectors; this is a group homomorphism from
    Z^{vertices} to the scalar group.
    """
    if len(q) != len(alpha):
        raise StructuralError("parameter and dimension vector have different lengths")
    torsion = Fraction(0)
    free = [0] * q.rank
    for g, a in zip(q.values, alpha):
        if a == 0:
            continue
        torsion += g.torsion * a
        for i, e in enumerate(g.free):
            free[i] += e * a
    return GroupElt(torsion, tuple(free))

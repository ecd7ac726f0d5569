"""Euler and Cartan-Tits forms, the p function, and affine Dynkin recognition.

The recognition test is exact integer linear algebra: a support is affine
Dynkin iff the symmetrised Cartan matrix restricted to it is positive
semidefinite with a one dimensional radical spanned by a strictly positive
primitive vector.  Shape labels (A~, D~, E~) are attached afterwards and are
purely cosmetic; the classification logic only ever uses the general test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .core import (
    DimVector,
    InvariantViolation,
    PreconditionError,
    Quiver,
    StructuralError,
    support,
)


def euler_form(quiver: Quiver, alpha: Sequence[int], beta: Sequence[int]) -> int:
    """Ringel form: sum_i a_i b_i - sum over arrows of a_tail * b_head."""
    n = quiver.vertex_count
    if len(alpha) != n or len(beta) != n:
        raise StructuralError("vector length does not match the quiver")
    total = sum(a * b for a, b in zip(alpha, beta))
    for t, h in quiver.arrows:
        total -= alpha[t] * beta[h]
    return total


def cartan_pairing(quiver: Quiver, alpha: Sequence[int], beta: Sequence[int]) -> int:
    """Symmetrised Euler form (alpha, beta)."""
    n = quiver.vertex_count
    if len(alpha) != n or len(beta) != n:
        raise StructuralError("vector length does not match the quiver")
    mat = quiver.cartan_matrix
    return sum(alpha[i] * sum(mat[i][j] * beta[j] for j in range(n)) for i in range(n))


def p_value(quiver: Quiver, alpha: Sequence[int]) -> int:
    """p(alpha) = 1 - <alpha, alpha>.  Twice this is the expected moduli dimension."""
    return 1 - euler_form(quiver, alpha, alpha)


def is_fundamental(quiver: Quiver, alpha: Sequence[int]) -> bool:
    """Nonzero, nonnegative, connected support, and (alpha, e_i) <= 0 everywhere."""
    if any(a < 0 for a in alpha):
        raise PreconditionError("fundamental-region test needs a nonnegative vector")
    supp = support(alpha)
    if not supp:
        return False
    if not quiver.is_connected_on(supp):
        return False
    return all(quiver.pairing_with_vertex(alpha, v) <= 0 for v in range(quiver.vertex_count))


# ---------------------------------------------------------------------------
# affine Dynkin recognition


@dataclass(frozen=True)
class AffineData:
    """An affine Dynkin support together with its primitive radical vector.

    ``kind`` is a cosmetic label ("A~0", "A~3", "D~4", "E~6", ...).  ``delta``
    is the primitive strictly positive generator of the radical of the Tits
    form on the support, embedded as a full-length vector (zero outside).
    """

    kind: str
    delta: DimVector


def _psd_check(mat: list[list[Fraction]]) -> bool:
    """Positive semidefiniteness of a symmetric rational matrix.

    Pivoted elimination: a zero diagonal entry must come with an all-zero
    row, a negative diagonal entry is an immediate failure.
    """
    m = len(mat)
    a = [row[:] for row in mat]
    for i in range(m):
        if a[i][i] < 0:
            return False
        if a[i][i] == 0:
            if any(a[i][j] != 0 for j in range(m)):
                return False
            continue
        for j in range(i + 1, m):
            f = a[j][i] / a[i][i]
            if f:
                for k in range(i, m):
                    a[j][k] -= f * a[i][k]
    return True


def _kernel_basis(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the rational kernel via Gaussian elimination."""
    m = len(mat)
    a = [row[:] for row in mat]
    pivots: list[int] = []
    row = 0
    for col in range(m):
        pivot = next((r for r in range(row, m) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        inv = a[row][col]
        a[row] = [x / inv for x in a[row]]
        for r in range(m):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    free_cols = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * m
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -a[r][fc]
        basis.append(vec)
    return basis


def _affine_label(quiver: Quiver, verts: list[int]) -> str:
    """Shape label for a support already known to pass the affine test."""
    loops = sum(quiver.loop_counts[v] for v in verts)
    if loops:
        if len(verts) == 1 and loops == 1:
            return "A~0"
        raise InvariantViolation("affine support with loops must be a single one-loop vertex")
    vset = set(verts)
    deg = {v: 0 for v in verts}
    for (u, w), m in quiver.edge_multiplicity.items():
        if u in vset and w in vset:
            deg[u] += m
            deg[w] += m
    degrees = sorted(deg.values())
    n = len(verts)
    if all(d == 2 for d in degrees):
        return f"A~{n - 1}"
    if degrees.count(3) == 0 and degrees.count(4) == 1 and n == 5:
        return "D~4"
    if degrees.count(3) == 2:
        return f"D~{n - 1}"
    if degrees.count(3) == 1:
        center = next(v for v in verts if deg[v] == 3)
        lengths = []
        for start in quiver.neighbors[center]:
            if start not in vset:
                continue
            length, prev, cur = 1, center, start
            while deg[cur] == 2:
                nxt = next(w for w in quiver.neighbors[cur] if w in vset and w != prev)
                prev, cur = cur, nxt
                length += 1
            lengths.append(length)
        legs = tuple(sorted(lengths, reverse=True))
        label = {(2, 2, 2): "E~6", (3, 3, 1): "E~7", (5, 2, 1): "E~8"}.get(legs)
        if label:
            return label
    raise InvariantViolation(f"unrecognised affine shape on {verts}")


def detect_affine_dynkin(quiver: Quiver, vertices: Iterable[int]) -> AffineData | None:
    """Detect an affine Dynkin induced subquiver and extract its radical vector.

    Returns None when the Tits form on the support is not positive
    semidefinite of corank one with strictly positive radical.  Disconnected
    supports fall out automatically (their radical generator cannot be
    strictly positive and one dimensional at the same time).
    """
    verts = sorted(set(vertices))
    if not verts:
        raise PreconditionError("empty support")
    mat_full = quiver.cartan_matrix
    sub = [[Fraction(mat_full[u][w]) for w in verts] for u in verts]
    if not _psd_check(sub):
        return None
    kernel = _kernel_basis(sub)
    if len(kernel) != 1:
        return None
    vec = kernel[0]
    lcm = 1
    for x in vec:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if all(x < 0 for x in ints):
        ints = [-x for x in ints]
    if not all(x > 0 for x in ints):
        return None
    delta = [0] * quiver.vertex_count
    for v, x in zip(verts, ints):
        delta[v] = x
    return AffineData(_affine_label(quiver, verts), tuple(delta))


def proportionality(alpha: Sequence[int], delta: Sequence[int]) -> int | None:
    """The integer c with alpha = c * delta on the support of delta, or None.

    The two vectors must have identical support for a hit.
    """
    if support(alpha) != support(delta):
        return None
    ratio: int | None = None
    for a, d in zip(alpha, delta):
        if d == 0:
            continue
        if a % d != 0:
            return None
        c = a // d
        if ratio is None:
            ratio = c
        elif c != ratio:
            return None
    return ratio

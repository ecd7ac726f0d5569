"""Exhaustive search for crab-shaped pairs (Q, alpha) with p(alpha) = 2.

A crab shape is a center with g loops and k legs; a dimension vector is
encoded as the center value n together with one integer sequence per leg,
ordered away from the center.  The search enumerates sincere vectors in the
fundamental region with <alpha, alpha> = -1 inside configurable bounds and
canonicalises up to permutations of the legs.

The genus-zero search returns exactly thirteen pairs and the positive-genus
search exactly two; the test suite pins both lists and checks saturation
(enlarging every bound adds nothing).

Leg sequences are generated under the fundamental-region constraints
directly: writing the leg as a_1, ..., a_L and a_0 = n, the pairing
condition at an interior leg vertex says the drops a_{j-1} - a_j are
nonincreasing along the leg, and at the end vertex 2 a_L <= a_{L-1}.  This
prunes the search space to exactly the vectors that could ever qualify.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DimVector, Quiver
from .forms import is_fundamental, p_value
from .classify import is_crab_shaped


@dataclass(frozen=True)
class SearchBounds:
    max_center: int = 13
    max_legs: int = 6
    max_leg_length: int = 12
    max_genus: int = 3

    def enlarged(self, by: int = 2) -> "SearchBounds":
        return SearchBounds(
            self.max_center + by, self.max_legs + by,
            self.max_leg_length + by, self.max_genus + by,
        )


@dataclass(frozen=True)
class CrabEntry:
    """A classified pair: genus, center value, and leg value sequences."""

    genus: int
    center: int
    legs: tuple[tuple[int, ...], ...]

    def canonical(self) -> "CrabEntry":
        return CrabEntry(self.genus, self.center, tuple(sorted(self.legs, reverse=True)))

    def build(self) -> tuple[Quiver, DimVector]:
        """Materialise the quiver (arrows pointing toward the center) and vector."""
        dims = [self.center]
        arrows: list[tuple[int, int]] = [(0, 0)] * self.genus
        for leg in self.legs:
            prev = 0
            for value in leg:
                idx = len(dims)
                dims.append(value)
                arrows.append((idx, prev))
                prev = idx
        quiver = Quiver(len(dims), tuple(arrows))
        return quiver, tuple(dims)

    def to_json(self) -> dict:
        return {"genus": self.genus, "center": self.center,
                "legs": [list(l) for l in self.legs]}

    def table_row(self) -> str:
        legs = " | ".join("-".join(str(x) for x in leg) for leg in self.legs) or "(none)"
        return f"g={self.genus}  n={self.center:>2}  legs: {legs}"


def _leg_sequences(n: int, max_len: int) -> list[tuple[tuple[int, ...], int, int]]:
    """All admissible legs for center value n: (sequence, form value, first entry).

    The form value is the leg's contribution to <alpha, alpha>, namely
    sum a_j^2 - n a_1 - sum a_j a_{j+1}.
    """
    out: list[tuple[tuple[int, ...], int, int]] = []

    def extend(seq: list[int]) -> None:
        a_prev2 = seq[-2] if len(seq) >= 2 else n
        a_prev = seq[-1]
        if 2 * a_prev <= a_prev2:
            contribution = sum(x * x for x in seq) - n * seq[0]
            contribution -= sum(a * b for a, b in zip(seq, seq[1:]))
            out.append((tuple(seq), contribution, seq[0]))
        if len(seq) == max_len:
            return
        lo = max(1, 2 * a_prev - a_prev2)
        for nxt in range(lo, a_prev + 1):
            seq.append(nxt)
            extend(seq)
            seq.pop()

    for first in range(1, n + 1):
        extend([first])
    return out


def enumerate_22(bounds: SearchBounds | None = None, genus_mode: str = "zero") -> list[CrabEntry]:
    """All crab pairs with alpha sincere, fundamental and p(alpha) = 2.

    ``genus_mode`` selects loopless shapes ("zero") or shapes with at least
    one loop ("positive").  Results are canonical (legs sorted) and listed in
    a fixed order.
    """
    if genus_mode not in ("zero", "positive"):
        raise ValueError("genus_mode must be 'zero' or 'positive'")
    bounds = bounds or SearchBounds()
    genera = [0] if genus_mode == "zero" else list(range(1, bounds.max_genus + 1))
    found: set[CrabEntry] = set()
    for g in genera:
        for n in range(1, bounds.max_center + 1):
            target = -1 - (1 - g) * n * n
            legs = _leg_sequences(n, bounds.max_leg_length)
            legs.sort(key=lambda item: item[0], reverse=True)
            min_c = min((c for (_s, c, _f) in legs), default=0)

            def dfs(start: int, remaining: int, first_sum: int, chosen: list[int], k: int) -> None:
                if remaining == 0:
                    # adding further legs only lowers the form value, so stop here
                    if g >= 1 or first_sum >= 2 * n:
                        entry = CrabEntry(g, n, tuple(legs[i][0] for i in chosen)).canonical()
                        quiver, alpha = entry.build()
                        if is_fundamental(quiver, alpha) and p_value(quiver, alpha) == 2:
                            found.add(entry)
                    return
                if k == 0 or remaining > 0:
                    return
                for i in range(start, len(legs)):
                    rest = remaining - legs[i][1]
                    if rest > 0 or rest < (k - 1) * min_c:
                        continue
                    chosen.append(i)
                    dfs(i, rest, first_sum + legs[i][2], chosen, k - 1)
                    chosen.pop()

            dfs(0, target, 0, [], bounds.max_legs)
    return sorted(found, key=lambda e: (e.genus, e.center, tuple(e.legs)))


def verify_22_side_conditions(entry: CrabEntry) -> dict:
    """Structural report for one classified pair.

    Includes the p value, fundamentality, sincerity, whether the pair has the
    shape (2*delta, 1) over an affine Dynkin subquiver (with the subtype),
    and the parameter conditions under which the vector is a sigma member:
    q^alpha = 1 and theta . alpha = 0 always, plus, in the (2*delta, 1)
    shape, q^delta != 1 or theta . delta != 0.
    """
    quiver, alpha = entry.build()
    flagged = _two_delta_one_form(quiver, alpha)
    report = {
        "entry": entry.to_json(),
        "p": p_value(quiver, alpha),
        "fundamental": is_fundamental(quiver, alpha),
        "sincere": all(a > 0 for a in alpha),
        "two_delta_one": flagged,
        "sigma_conditions": ["q^alpha = 1 and theta . alpha = 0"],
    }
    if flagged is not None:
        report["sigma_conditions"].append(
            "q^delta != 1 or theta . delta != 0 for the affine radical vector delta"
        )
    return report


def _two_delta_one_form(quiver: Quiver, alpha: DimVector) -> str | None:
    """Does (Q, alpha) equal (2*delta, 1) over an affine subquiver?  Subtype or None."""
    from .forms import detect_affine_dynkin, proportionality
    from .core import restrict, support

    supp = support(alpha)
    for star in sorted(supp):
        if alpha[star] != 1:
            continue
        rest = supp - {star}
        if not rest:
            continue
        crossing = [
            m for (u, w), m in quiver.edge_multiplicity.items()
            if (u == star) != (w == star) and u in supp and w in supp
        ]
        if sum(crossing) != 1:
            continue
        aff = detect_affine_dynkin(quiver, rest)
        if aff is None:
            continue
        attach = next(
            (w if u == star else u)
            for (u, w), m in quiver.edge_multiplicity.items()
            if (u == star) != (w == star) and u in supp and w in supp
        )
        if aff.delta[attach] != 1:
            continue
        if proportionality(restrict(alpha, rest), aff.delta) == 2:
            return aff.kind
    return None


def match_half_against_classification(quiver: Quiver, half: DimVector) -> str | None:
    """Identify (support quiver, half) among the fifteen classified pairs.

    Returns a short entry descriptor, or None when the vector does not match
    (only crab-shaped supports can).
    """
    from .core import support

    supp = support(half)
    if not supp or any(h < 0 for h in half):
        return None
    sub_arrows = tuple(
        (t, h) for (t, h) in quiver.arrows if t in supp and h in supp
    )
    index = {v: i for i, v in enumerate(sorted(supp))}
    sub = Quiver(len(supp), tuple((index[t], index[h]) for t, h in sub_arrows))
    vec = tuple(half[v] for v in sorted(supp))
    shape = is_crab_shaped(sub)
    if shape is None:
        return None
    if not is_fundamental(sub, vec) or p_value(sub, vec) != 2:
        return None
    if not all(x > 0 for x in vec):
        return None
    legs = tuple(sorted((tuple(vec[v] for v in leg) for leg in shape.legs), reverse=True))
    entry = CrabEntry(shape.loop_count, vec[shape.center], legs)
    table = classification_table()
    for label, known in table.items():
        if known == entry:
            return label
    return None


_TABLE: dict[str, CrabEntry] | None = None


def classification_table() -> dict[str, CrabEntry]:
    """The fifteen classified pairs, computed once from the search itself."""
    global _TABLE
    if _TABLE is None:
        zero = enumerate_22(genus_mode="zero")
        pos = enumerate_22(genus_mode="positive")
        _TABLE = {f"genus-0 #{i + 1}": e for i, e in enumerate(zero)}
        _TABLE.update({f"positive-genus #{i + 1}": e for i, e in enumerate(pos)})
    return _TABLE

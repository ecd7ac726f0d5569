"""Canonical decompositions: flat factors, sigma refinement, minimality.

Every kernel vector that is a sum of kernel roots splits canonically into
flat roots and proper multiples of q-indivisible isotropic roots; refining
further gives the minimal decomposition into sigma members, which every
other sigma decomposition refines.  The moduli space is the product of the
factors' spaces.
"""

from fractions import Fraction

from qresolve import (
    GroupElt,
    MultParam,
    Quiver,
    decompose_flat,
    refine_to_sigma,
    sigma_decompose,
    verify_minimality,
)

F = Fraction

jordan = Quiver(1, ((0, 0),))
q_half = MultParam.of([GroupElt(F(1, 2))])
print("one-loop vertex, q of order two, alpha = (4):")
fd = decompose_flat(jordan, q_half, (0,), (4,))
for part in fd.parts:
    print(f"  flat part {part.vector} [{part.kind}]"
          + (f" = {part.multiple} x {part.gamma}" if part.gamma else ""))
sd = refine_to_sigma(jordan, q_half, (0,), fd)
print("  sigma refinement:", dict(sd.parts))
print("  minimal among all sigma decompositions:",
      verify_minimality(jordan, q_half, (0,), (4,), sd))

# A mixed example: admissible reflections, coordinate splits and an
# isotropic component all appear, and parts land in original coordinates.
a3 = Quiver(3, ((0, 1), (1, 2)))
t = GroupElt(F(0), (1,))
q = MultParam.of([t, t.inverse(), GroupElt(F(0), (0,))])
alpha = (1, 1, 2)
fd = decompose_flat(a3, q, (0, 0, 0), alpha)
print(f"\npath quiver, q = (t, 1/t, 1), alpha = {alpha}:")
for part in fd.parts:
    print(f"  flat part {part.vector} [{part.kind}]")
sd = sigma_decompose(a3, q, (0, 0, 0), alpha)
print("  sigma parts:", dict(sd.parts))
print("  intersection forest edges:", sd.intersection_edges)
print("  is a forest:", sd.is_forest())

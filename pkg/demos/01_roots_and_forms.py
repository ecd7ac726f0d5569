"""Quivers, bilinear forms, and root recognition.

A quiver is a finite directed multigraph; a dimension vector assigns an
integer to every vertex.  Everything downstream is driven by the Euler form

    <a, b> = sum_i a_i b_i - sum over arrows of a_tail * b_head,

its symmetrisation (the Cartan-Tits form), and p(a) = 1 - <a, a>.  Twice p
is the expected dimension of the moduli space attached to a.
"""

from qresolve import (
    Quiver,
    cartan_pairing,
    classify_root,
    detect_affine_dynkin,
    euler_form,
    is_fundamental,
    p_value,
)

jordan = Quiver(1, ((0, 0),))             # one vertex, one loop
a2 = Quiver(2, ((0, 1),))                 # two vertices, one arrow
d4 = Quiver(5, ((0, 1), (0, 2), (0, 3), (0, 4)))   # star with four leaves

print("Euler form on the one-loop quiver: <(1),(1)> =", euler_form(jordan, (1,), (1,)))
print("Cartan pairing on a loopfree vertex: (e,e) =", cartan_pairing(a2, (1, 0), (1, 0)))
print("p of the loop vertex:", p_value(jordan, (1,)), " (isotropic: the loop kills the form)")

# The fundamental region: connected support, nonpositive pairing everywhere.
delta = (2, 1, 1, 1, 1)
print("\ndelta =", delta, "on the four-leaf star:")
print("  fundamental:", is_fundamental(d4, delta), "  p =", p_value(d4, delta))

# Affine Dynkin supports are recognised by exact linear algebra: the Cartan
# matrix restricted to the support must be positive semidefinite with a one
# dimensional radical spanned by a strictly positive primitive vector.
aff = detect_affine_dynkin(d4, range(5))
print("  affine type:", aff.kind, " radical vector:", aff.delta)
print("  one-loop vertex:", detect_affine_dynkin(jordan, {0}))
print("  plain A2 is finite type:", detect_affine_dynkin(a2, {0, 1}))

# Root recognition plays the numbers game: reflect at a vertex with positive
# pairing until a coordinate vector (real root), the fundamental region
# (imaginary root), or a negative entry (not a root) appears.
print("\nroot classification:")
for quiver, name, vec in [
    (a2, "a2", (1, 1)),
    (a2, "a2", (2, 1)),
    (jordan, "loop", (3,)),
    (d4, "star", (2, 1, 1, 1, 1)),
    (d4, "star", (3, 1, 1, 1, 1)),
]:
    rc = classify_root(quiver, vec)
    print(f"  {name} {vec}: {rc.tag}  (terminal {rc.terminal})")

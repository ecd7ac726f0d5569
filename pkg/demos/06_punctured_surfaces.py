"""Character varieties of punctured surfaces, end to end.

Fix a genus, a rank, and one conjugacy class closure per puncture with
symbolic eigenvalues.  The pipeline builds the crab-shaped quiver datum,
computes the closed-form invariants, and reports which branch of the
punctured-surface classification the instance falls into.
"""

from fractions import Fraction

from qresolve import (
    CharVarProblem,
    GroupElt,
    build_quiver_datum,
    classify_charvar,
    numeric_invariants,
    order_eigenvalues,
)

F = Fraction


def show(label, problem):
    ell, p, dim = numeric_invariants(problem)
    result = classify_charvar(problem)
    print(f"{label}")
    print(f"    ell={ell}  p={p}  expected dim={dim}")
    print(f"    branch {result.branch}: {result.statement[:94]}")
    print(f"    quiver verdict: {result.quiver_verdict.overall}")


# Closed surfaces first: no punctures at all.
show("closed genus-2 surface, rank 2   [open (2,2) case]", CharVarProblem(2, 2, ()))
show("closed torus, rank 3             [open isotropic case]", CharVarProblem(1, 3, ()))

# A once-punctured torus whose monodromy has a degree-2 minimal polynomial
# and prime first partial rank: the stated open case (c).
t, ti = GroupElt(F(0), (1,)), GroupElt(F(0), (-1,))
cls = order_eigenvalues(6, (t, ti), ((0, 1), (0, 1), (0, 1), (1, 1), (1, 1), (1, 1)))
show("once-punctured torus, rank 6     [open framed prime case]",
     CharVarProblem(1, 6, (cls,)))


def regss2(lam, mu):
    return order_eigenvalues(2, (lam, mu), ((0, 1), (1, 1)))


# Two punctures force a point or an empty variety.
s, si = GroupElt(F(0), (0, 1)), GroupElt(F(0), (0, -1))
t2, t2i = GroupElt(F(0), (1, 0)), GroupElt(F(0), (-1, 0))
show("sphere, 2 punctures, inverse classes", CharVarProblem(0, 2, (regss2(t2, t2i), regss2(t2i, t2))))
show("sphere, 2 punctures, generic classes", CharVarProblem(0, 2, (regss2(t2, t2i), regss2(s, si))))

# Four punctures on the sphere, rank 4, eigenvalue multiplicities (2,2):
# the radical vector of the affine star lies in the kernel, so the datum is
# a q-divisible isotropic multiple and the case is open.
u, ui = GroupElt(F(0), (1,)), GroupElt(F(0), (-1,))
half, one = GroupElt(F(1, 2), (0,)), GroupElt(F(0), (0,))
quarter, threeq = GroupElt(F(1, 4), (0,)), GroupElt(F(3, 4), (0,))


def semis4(lam, mu):
    return order_eigenvalues(4, (lam, mu), ((0, 1), (0, 1), (1, 1), (1, 1)))


show("4-punctured sphere, rank 4       [open isotropic case]",
     CharVarProblem(0, 4, (semis4(u, ui), semis4(half, one), semis4(half, one),
                           semis4(quarter, threeq))))
show("4-punctured sphere, rank 4       [resolution exists]",
     CharVarProblem(0, 4, (semis4(u, ui), semis4(half, one), semis4(half, one),
                           semis4(half, one))))

# The quiver datum itself is available for inspection.
problem = CharVarProblem(0, 2, tuple(regss2(t2, t2i) for _ in range(4)))
quiver, alpha, q, theta = build_quiver_datum(problem)
print("\nrank-2, 4 punctures translates to the affine star:")
print("    arrows:", quiver.arrows)
print("    alpha:", alpha, " theta:", theta)
print("    q at the node:", q[0].to_json())

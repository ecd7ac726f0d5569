"""The reflection action on (q, theta, alpha) and its exactness.

At a loopfree vertex v the triple transforms by

    alpha -> alpha - (alpha, e_v) e_v
    q_w   -> q_v^{-(e_v, e_w)} q_w
    theta -> theta - (e_v, .) theta_v

and the combinations q^alpha and theta . alpha never change.  When the local
data at v is nontrivial (q_v != 1 or theta_v != 0) the reflection is
admissible and induces an isomorphism of moduli spaces, which is what makes
the whole reduction strategy work.
"""

from fractions import Fraction

from qresolve import (
    GroupElt,
    MultParam,
    Quiver,
    dot,
    q_power,
    reflect_dim,
    reflect_q,
    reflect_theta,
    run_reflecting_sequence,
)

F = Fraction
a3 = Quiver(3, ((0, 1), (1, 2)))

# symbolic parameter: a primitive cube root at vertex 0, free generators after
t = GroupElt(F(0), (1,))
q = MultParam.of([GroupElt(F(1, 3), (0,)), t, t.inverse() * GroupElt(F(2, 3), (0,))])
theta = (1, 0, -1)
alpha = (2, 3, 1)

v = 1
q2, theta2, alpha2 = reflect_q(a3, v, q), reflect_theta(a3, v, theta), reflect_dim(a3, v, alpha)
print("before:", alpha, "after reflecting at", v, ":", alpha2)
print("q^alpha preserved:", q_power(q, alpha) == q_power(q2, alpha2))
print("theta.alpha preserved:", dot(theta, alpha) == dot(theta2, alpha2))

# A full reflecting sequence records every step with its kind.  On the
# four-leaf star, (1,1,1,1,0) walks down to a coordinate vector: a real root.
star = Quiver(5, ((0, 1), (0, 2), (0, 3), (0, 4)))
q5 = MultParam.of([t, t.inverse(), t, t.inverse(), GroupElt(F(1, 2), (0,))])
seq = run_reflecting_sequence(star, q5, (0,) * 5, (1, 1, 1, 1, 0))
print("\nsequence for (1,1,1,1,0) on the star:")
for step in seq.steps:
    print(f"  reflect at {step.vertex} [{step.kind}]: {step.before[2]} -> {step.after[2]}")
print("terminal:", seq.terminal, seq.alpha)

# A negative entry on the way certifies that the vector was never a root.
seq = run_reflecting_sequence(a3, q, theta, (3, 2, 2))
print("\nsequence for (3,2,2) on the path:")
for step in seq.steps:
    print(f"  reflect at {step.vertex} [{step.kind}]: {step.before[2]} -> {step.after[2]}")
print("terminal:", seq.terminal, seq.alpha)

"""Flat roots and the sigma set, with the brute-force oracle alongside.

For alpha in the kernel set (q^alpha = 1, theta . alpha = 0) and a root:

* alpha is flat when p(alpha) >= sum p(beta_i) over every decomposition of
  alpha into positive kernel roots;
* alpha is a sigma member when the inequality is strict.

The reflection procedure decides both; the oracle recomputes them straight
from the definition by enumerating decompositions.  They agree everywhere.
"""

from fractions import Fraction

from qresolve import (
    GroupElt,
    MultParam,
    PreconditionError,
    Quiver,
    brute_force_flat,
    brute_force_sigma,
    is_flat,
    q_gcd,
    sigma_membership,
)

F = Fraction
jordan = Quiver(1, ((0, 0),))
crab = Quiver(2, ((0, 0), (0, 1)))   # loop plus one leg

q_half = MultParam.of([GroupElt(F(1, 2))])
theta = (0,)

print("one-loop vertex, q = primitive square root of unity:")
for m in (1, 2, 3, 4, 6):
    vec = (m,)
    parts = []
    try:
        parts.append(f"flat={is_flat(jordan, q_half, theta, vec).flat}")
    except PreconditionError:  # odd m: not in the kernel, flatness undefined
        parts.append("flat undefined")
    status = sigma_membership(jordan, q_half, theta, vec)
    parts.append(f"sigma={status.tag}")
    if m % 2 == 0:
        parts.append(f"q_gcd={q_gcd(jordan, q_half, theta, vec)}")
        parts.append(f"oracle sigma={brute_force_sigma(jordan, q_half, theta, vec)}")
        parts.append(f"oracle flat={brute_force_flat(jordan, q_half, theta, vec)}")
    print(f"  alpha=({m},): " + "  ".join(parts))

# The framed family (m, 1): flat for every m but in sigma for none of them
# when the parameters are trivial; the certificate names the bridge split.
print("\nloop-plus-leg quiver, trivial parameters, vectors (m, 1):")
q2 = MultParam.trivial(2)
for m in (1, 2, 3):
    cert = is_flat(crab, q2, (0, 0), (m, 1))
    status = sigma_membership(crab, q2, (0, 0), (m, 1))
    extra = ""
    if status.split is not None:
        extra = f"  split J={sorted(status.split.J)} K={sorted(status.split.K)}"
    print(f"  ({m},1): flat={cert.flat}  sigma={status.tag}{extra}")

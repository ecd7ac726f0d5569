"""Symplectic-resolution verdicts, factor by factor.

The headline dichotomy on crab-shaped quivers: after reducing to the
fundamental region, a q-indivisible dimension vector always admits a
projective symplectic resolution, and a q-divisible one never does, except
in three explicitly classified open families:

* the (2,2) family: twice a vector with p = 2 (blow-up resolution
  conjectured);
* proper multiples of q-indivisible isotropic roots;
* prime multiples of the framed affine vector (1, l * delta).
"""

from fractions import Fraction

from qresolve import GroupElt, MultParam, Quiver, classify_crab, classify_general

F = Fraction


def show(label, verdict):
    print(f"{label}: {verdict.overall}")
    for factor in verdict.per_factor:
        print(f"    factor {list(factor.vector)} x{factor.count}: "
              f"{factor.verdict} [{factor.rule}]")
    if verdict.assumptions:
        print("    assumptions:", ", ".join(verdict.assumptions))


jordan = Quiver(1, ((0, 0),))
q_half = MultParam.of([GroupElt(F(1, 2))])
show("loop vertex, q of order 2, alpha=(2)  [q-indivisible]",
     classify_crab(jordan, q_half, (0,), (2,)))
show("loop vertex, trivial q, alpha=(2)     [isotropic multiple]",
     classify_crab(jordan, MultParam.trivial(1), (0,), (2,)))

two_loops = Quiver(1, ((0, 0), (0, 0)))
show("two loops, trivial q, alpha=(2)       [the (2,2) family]",
     classify_crab(two_loops, MultParam.trivial(1), (0,), (2,)))

star5 = Quiver(6, ((0, 1), (0, 2), (0, 3), (0, 4), (0, 5)))
show("five-leg star, doubled p=2 vector     [the (2,2) family]",
     classify_crab(star5, MultParam.trivial(6), (0,) * 6, (4, 2, 2, 2, 2, 2)))

d4f = Quiver(6, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 5)))
show("framed star, 3 x (1, 2*delta)         [framed prime, open]",
     classify_crab(d4f, MultParam.trivial(6), (0,) * 6, (12, 6, 6, 6, 6, 3)))

crab = Quiver(2, ((0, 0), (0, 1)))
q_free = MultParam.of([GroupElt(F(0), (1,)), GroupElt(F(0), (-2,))])
show("loop plus leg, 3 x (2,1), free q      [no resolution, unconditional]",
     classify_crab(crab, q_free, (0, 0), (6, 3)))

# Outside crab shapes the no-resolution branch needs an undecided stability
# hypothesis, so the verdict carries an explicit assumption flag.
kron_loop = Quiver(2, ((0, 0), (0, 1), (0, 1)))
q2 = MultParam.of([GroupElt(F(0), (1,)), GroupElt(F(0), (-1,))])
show("non-crab shape, q-divisible data      [flagged]",
     classify_general(kron_loop, q2, (0, 0), (3, 3)))

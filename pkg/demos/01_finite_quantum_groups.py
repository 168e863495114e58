"""Build finite quantum groups and inspect their structure.

The two built-in families are the function algebra F(G) of a finite group
(commutative, quantum only in attitude) and the group algebra C*(G)
(cocommutative).  Both come with every Hopf *-algebra structure tensor, a
faithful representation, and the unique invariant state.
"""

import numpy as np

from cqms import (
    check_axioms,
    convolve,
    counit_support_projection,
    function_algebra,
    group_algebra,
    haar_state,
    Functional,
)
from cqms import groups

np.set_printoptions(precision=4, suppress=True)

print("=" * 70)
print("The function algebra F(Z_6) with the arc metric")
print("=" * 70)
fz6 = function_algebra(groups.cyclic_table(6), metric=groups.arc_metric(6))
report = check_axioms(fz6)
print(report)
print()

h = haar_state(fz6)
print("invariant state on F(Z_6) is the uniform average:", h.coeffs.real)
print()

print("convolution translates point evaluations: ev_2 * ev_3 on Z_6")
ev2, ev3 = Functional(np.eye(6)[2]), Functional(np.eye(6)[3])
print("  ev_2 * ev_3 =", convolve(ev2, ev3, fz6).coeffs.real, "(the evaluation at 5)")
print()

print("=" * 70)
print("The group algebra C*(S_3) with a word length")
print("=" * 70)
table = groups.s3_table()
length = groups.symmetric_word_length(table, groups.s3_word_generators())
cs3 = group_algebra(table, length=length)
print("word lengths over the two adjacent transpositions:", length)
report = check_axioms(cs3)
print(f"axioms: max residual {report.max_residual:.2e} -> {'pass' if report.passed else 'FAIL'}")
print("invariant state is the trace at the identity:", haar_state(cs3).coeffs.real)
print()

print("the counit support projections of the two families:")
print("  F(Z_6):  p =", counit_support_projection(fz6).real, " (the point mass at e)")
print("  C*(S_3): p =", counit_support_projection(cs3).real, " (the average of translations)")
print()

print("a deliberately broken multiplication is caught by the validator:")
mult = np.array(fz6.mult)
mult[1, 1, 2] += 1e-3
from cqms import FiniteQuantumGroup

broken = FiniteQuantumGroup(dim=6, mult=mult, unit=fz6.unit, star=fz6.star,
                            comult=fz6.comult, counit=fz6.counit, antipode=fz6.antipode,
                            rep=fz6.rep, haar=fz6.haar)
bad = check_axioms(broken)
print(f"  associativity residual after a 1e-3 bump: {bad.residuals['associativity']:.2e}")

# Hall products on the A_2 quiver 1 -> 2 over F_2, and the integration map.
import numpy as np

from motivic_hall.hall import HallElement, integrate_counting, motivic_class_total
from motivic_hall.protoexact import quiver as qv
from motivic_hall.protoexact.quiver import QuiverRep

Q = qv.A2()

# iso classes of dimension (1,1): the zero map and the isomorphism
table = qv.enumerate_reps(Q, (1, 1), 2)
for rep, aut in zip(table.representatives, table.aut_orders):
    print(rep.mats, "aut", aut)

S1, S2 = QuiverRep.simple(Q, 2, 0), QuiverRep.simple(Q, 2, 1)
one = HallElement.indicator

# subobject first: only S_2 sits inside the non-split extension
print("1_S2 * 1_S1 =", [(k[1], str(v)) for k, v in (one(S2) * one(S1)).items()])
print("1_S1 * 1_S2 =", [(k[1], str(v)) for k, v in (one(S1) * one(S2)).items()])

# the integration map kills the difference up to the twist L^{chi_op}
a = integrate_counting(one(S1) * one(S2))[(1, 1)]
b = integrate_counting(one(S2) * one(S1))[(1, 1)]
print("int(1_S1*1_S2) =", a, " int(1_S2*1_S1) =", b)

# motivic class of the whole stack against the groupoid count, dimension up to 2
vecs = [a for a in qv.vectors_up_to(2, 2) if any(a)]
counts = np.array([[float(qv.enumerate_reps(Q, a, q).groupoid_cardinality()) for q in (2, 3)] for a in vecs])
for alpha, row in zip(vecs, counts):
    print(alpha, motivic_class_total(Q, alpha).format(), row)

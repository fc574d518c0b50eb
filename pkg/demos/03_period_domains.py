# Period domains: semistable flags with respect to a rational structure.
from motivic_hall.equivariant import equivariant_period_domain, lefschetz_count
from motivic_hall.slope import FlagType, period_domain_bruteforce, period_domain_polynomial

# the Drinfeld half plane: P^1 minus its F_q-rational points
ft = FlagType(2, (1, 1), (1, 0))
print(period_domain_polynomial(ft, "Fq", 3).format("t"))
for k in (1, 2, 3):
    print(k, period_domain_bruteforce(ft, "Fq", 3, k))

# the same flag data over F_1: coordinate subspaces play the rational ones
ft3 = FlagType(3, (1, 1, 1), (2, 1, 0))
f = equivariant_period_domain(ft3, "F1")
print(f.format())
print("t=1:", f.identity_value().evaluate(1), period_domain_bruteforce(ft3, "F1", 1))

# a permutation's value is the number of flags fixed by it twisted by Frobenius
G = f.group
for lab, cl, v in zip(G.class_labels, G.classes, f.values):
    print(lab, v.evaluate(2), lefschetz_count(ft3, "F1", 2, cl[0], 1))

# GL_2(F_2) acting on the Drinfeld domain
g = equivariant_period_domain(ft, "Fq", 2)
print(g.format())

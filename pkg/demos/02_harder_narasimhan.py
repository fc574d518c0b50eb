# HN strata of Kronecker representations and the semistable locus.
import numpy as np

from motivic_hall.coeffring import evaluate
from motivic_hall.hall import motivic_class_total
from motivic_hall.protoexact import quiver as qv
from motivic_hall.slope import (StabilityData, count_semistable_bruteforce, hn_stratum_class, hn_types,
                                semistable_motivic_class)

K = qv.kronecker()
s = StabilityData((1, 0))

alpha = (1, 2)
for tau in hn_types(alpha, s):
    print(tau, hn_stratum_class(K, tau, s).format())
print("total", motivic_class_total(K, alpha).format())

# recursion and inversion produce the same rational function
ss = semistable_motivic_class(K, alpha, s, "recursive")
assert ss == semistable_motivic_class(K, alpha, s, "inversion")
print("semistable", ss.format())

# compare with enumeration at a few primes
qs = np.array([2, 3, 5])
formula = np.array([float(evaluate(ss, int(q))) for q in qs])
brute = np.array([float(count_semistable_bruteforce(K, alpha, s, int(q))) for q in qs[:2]])
print(formula, brute)

# (1,1) semistables are the pencils P^1: class L + 1 over [GL_1]
print(semistable_motivic_class(K, (1, 1), s).format())

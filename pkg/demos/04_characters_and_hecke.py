# Symmetric group characters, induction, and a small Hecke algebra.
import numpy as np

from motivic_hall.equivariant import ClassFunction, decomposition, induce, sym_character_table
from motivic_hall.groups import general_linear_group, symmetric_group
from motivic_hall.protoexact.hecke import hecke_structure_constants

t = sym_character_table(4)
X = np.array(t.rows)
print([str(p) for p in t.partitions])
print(X)
sizes = np.array([len(c) for c in symmetric_group(4).classes])
print((X * sizes) @ X.T // 24)  # identity matrix

# permutation character on 2-subsets
G = symmetric_group(4)
perm = induce(ClassFunction.trivial(G.young_subgroup((2, 2))), G)
print({lam: str(m) for lam, m in decomposition(perm).items() if m.evaluate(2)})

# Iwahori-Hecke algebra of GL_2(F_3) with respect to the Borel subgroup
H = hecke_structure_constants(general_linear_group(2, 3), general_linear_group(2, 3).parabolic((1, 1)).embedding)
print(H.constants[(1, 1)])

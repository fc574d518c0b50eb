"""Finite category models exposing what the Waldhausen cells need: iso
classes with automorphism groups, subobjects inside a fixed object, and
subquotient classes.

Two models: quiver representations over F_q and finite pointed sets (the
F_1 model, with based injections as admissible monos and collapse maps as
admissible epis).  A quiver with no vertices gives the zero category.
"""

from dataclasses import dataclass
from itertools import permutations
from math import factorial

from ..ffield import rref
from . import quiver as qv


class RepCategory:
    """rep_{F_q}(Q)."""

    def __init__(self, quiver, q):
        self.quiver, self.q = quiver, q
        self.F = qv.field(q)

    def __repr__(self):
        return f"rep_F{self.q}({self.quiver})"

    def objects(self, bound):
        out = []
        for alpha in qv.vectors_up_to(self.quiver.n, bound):
            table = qv.enumerate_reps(self.quiver, alpha, self.q)
            for rep, aut in zip(table.representatives, table.aut_orders):
                out.append(((rep.dim, rep.mats), aut))
        return out

    def size(self, key):
        return sum(key[0])

    def zero_sub(self, key):
        return tuple(() for _ in key[0])

    def full_sub(self, key):
        return tuple(qv.identity_basis(d) for d in key[0])

    def subobjects(self, key):
        return [s[2] for s in qv.subobject_classes(self.quiver, self.q, key)]

    def contains(self, key, big, small):
        return qv.contains(self.F, big, small)

    def subquotient(self, key, small, big):
        E = qv.rep_from_key(self.quiver, self.q, key)
        return qv.class_key(qv.subquotient(E, small, big))

    def automorphisms(self, key):
        return qv.automorphism_group(self.quiver, self.q, key)

    def act(self, g, sub):
        F = self.F
        out = []
        for (gi, _), U in zip(g, sub):
            if not U:
                out.append(())
                continue
            out.append(rref(F, [qv._apply(F, gi, u) for u in U])[0])
        return tuple(out)

    def label(self, key):
        dim, mats = key
        return f"{list(dim)}:{[ [list(r) for r in M] for M in mats]}"


class PointedSetCategory:
    """Finite pointed sets; the object of size n is {*, 0, ..., n-1}."""

    def __repr__(self):
        return "vect_F1"

    def objects(self, bound):
        return [(n, factorial(n)) for n in range(bound + 1)]

    def size(self, key):
        return key

    def zero_sub(self, key):
        return frozenset()

    def full_sub(self, key):
        return frozenset(range(key))

    def subobjects(self, key):
        n = key
        return [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]

    def contains(self, key, big, small):
        return small <= big

    def subquotient(self, key, small, big):
        return len(big) - len(small)

    def automorphisms(self, key):
        return list(permutations(range(key)))

    def act(self, g, sub):
        return frozenset(g[i] for i in sub)

    def label(self, key):
        return str(key)


@dataclass(frozen=True)
class PointedSet:
    """F_1-vector space of rank ``size``: subobjects are subsets."""

    size: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("pointed set size must be >= 0")

    def subobjects(self):
        return PointedSetCategory().subobjects(self.size)

    def automorphism_order(self):
        return factorial(self.size)

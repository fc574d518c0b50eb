"""Double-coset Hecke algebras H(G, K).

The basis is K\\G/K.  Structure constants come from counting 2-simplices of
the Cech nerve of the G-set X = G/K: G-orbits on X x X are the double
cosets, and

    T_a T_b = sum_c c^c_{a,b} T_c,   c^c_{a,b} = #{y in X : (x0, y) in O_a, (y, z0) in O_b}

for any fixed (x0, z0) in O_c.  ``convolution_constants`` recomputes them
from bi-K-invariant functions on G, (f*g)(h) = (1/|K|) sum_x f(x) g(x^-1 h).
"""

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ValidationError, check_budget


@dataclass
class HeckeAlgebra:
    group: object
    K: tuple
    double_cosets: list  # sorted tuples of group elements; index 0 is K itself
    constants: dict  # (a, b) -> {c: Fraction}

    @property
    def rank(self):
        return len(self.double_cosets)

    def multiply(self, u, v):
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, k in self.constants[(a, b)].items():
                    out[c] = out.get(c, Fraction(0)) + x * y * k
        return {c: k for c, k in out.items() if k}

    def basis(self, a):
        return {a: Fraction(1)}

    def is_associative(self):
        n = self.rank
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    lhs = self.multiply(self.multiply(self.basis(a), self.basis(b)), self.basis(c))
                    rhs = self.multiply(self.basis(a), self.multiply(self.basis(b), self.basis(c)))
                    if lhs != rhs:
                        return False
        return True

    def to_json(self):
        return {
            "double_cosets": [list(d) for d in self.double_cosets],
            "constants": [
                {"a": a, "b": b, "c": c, "value": str(k)}
                for (a, b), row in sorted(self.constants.items())
                for c, k in sorted(row.items())
            ],
        }


def _check_subgroup(G, K):
    K = tuple(sorted(set(K)))
    if not K or any(not 0 <= k < G.order for k in K):
        raise ValidationError("subgroup elements must be indices into the group table")
    if not G.is_subgroup(K):
        raise ValidationError("K is not closed under multiplication")
    return K


def _double_cosets(G, K):
    seen, out = set(), []
    order = [G.identity] + [g for g in range(G.order) if g != G.identity]
    for g in order:
        if g in seen:
            continue
        d = tuple(sorted({G.mul(G.mul(k1, g), k2) for k1 in K for k2 in K}))
        seen.update(d)
        out.append(d)
    return out


def hecke_structure_constants(G, K):
    """Structure constants by counting Cech-nerve triangles of G/K."""
    K = _check_subgroup(G, K)
    check_budget(G.order * G.order, "Hecke double cosets")
    dcs = _double_cosets(G, K)
    where = {}
    for i, d in enumerate(dcs):
        for g in d:
            where[g] = i
    # points of X = G/K, named by the smallest element of the coset
    cosets = sorted({min(G.mul(g, k) for k in K) for g in range(G.order)})
    inv = G.inverse

    def orbit(x, y):
        # (xK, yK) lies in the orbit of (K, x^-1 y K)
        return where[G.mul(inv[x], y)]

    x0 = min(K)  # the coset K itself
    consts = {}
    for c, d in enumerate(dcs):
        z0 = min(G.mul(d[0], k) for k in K)
        counts = {}
        for y in cosets:
            key = (orbit(x0, y), orbit(y, z0))
            counts[key] = counts.get(key, 0) + 1
        for (a, b), n in counts.items():
            consts.setdefault((a, b), {})[c] = Fraction(n)
    for a in range(len(dcs)):
        for b in range(len(dcs)):
            consts.setdefault((a, b), {})
    return HeckeAlgebra(G, K, dcs, consts)


def convolution_constants(G, K):
    """The same constants from convolution of double-coset indicators on G."""
    K = _check_subgroup(G, K)
    dcs = _double_cosets(G, K)
    ind = [set(d) for d in dcs]
    inv = G.inverse
    consts = {}
    for a, Da in enumerate(ind):
        for b, Db in enumerate(ind):
            row = {}
            for c, d in enumerate(dcs):
                h = d[0]
                n = sum(1 for x in Da if G.mul(inv[x], h) in Db)
                if n:
                    row[c] = Fraction(n, len(K))
            consts[(a, b)] = row
    return HeckeAlgebra(G, K, dcs, consts)

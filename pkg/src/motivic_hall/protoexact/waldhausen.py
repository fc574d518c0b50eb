"""Cells of the Waldhausen construction as finite groupoids, and the
counting-level 2-Segal check in simplicial degree 3.

An n-cell is a flag A_1 >-> A_2 >-> ... >-> A_n; it is realized inside its
top object X = A_n as a chain of subobjects U_1 <= ... <= U_{n-1} <= X, and
the isomorphism classes of flags are the Aut(X)-orbits of such chains.  A
cell is graded by the classes of all subquotients A_ij = U_j / U_i,
0 <= i < j <= n (U_0 = 0, U_n = X), listed in lexicographic order of (i, j).
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import check_budget


@dataclass
class FiniteGroupoidSummary:
    """Components (grade, automorphism order) of a finite groupoid."""

    n: int
    components: list = field(default_factory=list)

    def cardinality(self):
        return sum((Fraction(1, a) for _, a in self.components), Fraction(0))

    def by_grade(self, key=None):
        out = defaultdict(Fraction)
        for grade, aut in self.components:
            out[key(grade) if key else grade] += Fraction(1, aut)
        return dict(out)


def _pairs(n):
    return [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)]


def _chains(ctx, key, length):
    subs = ctx.subobjects(key)
    chains = [()]
    for _ in range(length):
        grown = []
        for ch in chains:
            for U in subs:
                if not ch or ctx.contains(key, U, ch[-1]):
                    grown.append(ch + (U,))
        chains = grown
    return chains


def waldhausen_cells(ctx, n, bound):
    """The groupoid of n-cells with top object of size <= ``bound``."""
    summary = FiniteGroupoidSummary(n)
    if n == 0:
        summary.components.append(((), 1))
        return summary
    for key, aut in ctx.objects(bound):
        chains = _chains(ctx, key, n - 1)
        check_budget(len(chains) * aut, "flag orbits")
        group = ctx.automorphisms(key) if n > 1 else None
        seen = set()
        for ch in chains:
            if ch in seen:
                continue
            if group is None:
                orbit = {ch}
            else:
                orbit = {tuple(ctx.act(g, U) for U in ch) for g in group}
            seen |= orbit
            flag = (ctx.zero_sub(key),) + ch + (ctx.full_sub(key),)
            grade = tuple(ctx.subquotient(key, flag[i], flag[j]) for i, j in _pairs(n))
            # stabilizer of the chain in Aut(X)
            summary.components.append((grade, aut // len(orbit)))
    return summary


@dataclass
class SegalCheck:
    map: str  # "lower" or "upper"
    grade: tuple
    source: Fraction
    target: Fraction

    @property
    def ok(self):
        return self.source == self.target


@dataclass
class SegalReport:
    context: str
    bound: int
    checks: list

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]


# positions of A_ij in a 3-cell grade: (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
_A01, _A02, _A03, _A12, _A13, _A23 = range(6)


def verify_2segal_counting(ctx, bound):
    """Compare homotopy cardinalities on both sides of the two 2-Segal maps out of S_3.

    lower: S_3 -> S_{012} x_{S_{02}} S_{023};  upper: S_3 -> S_{013} x_{S_{13}} S_{123}.
    A homotopy fibre product of finite groupoids over the component z has
    cardinality |X_z| * |Y_z| * #Aut(z).
    """
    s3 = waldhausen_cells(ctx, 3, bound)
    s2 = waldhausen_cells(ctx, 2, bound).by_grade()  # (sub, total, quotient) = (A01, A02, A12)
    aut = dict(ctx.objects(bound))

    def lower_key(g):
        return (g[_A01], g[_A12], g[_A02], g[_A23], g[_A03])

    def upper_key(g):
        return (g[_A01], g[_A13], g[_A03], g[_A12], g[_A23])

    checks = []
    for name, key, glue in (("lower", lower_key, "lower"), ("upper", upper_key, "upper")):
        src = s3.by_grade(key)
        tgt = defaultdict(Fraction)
        for (a, total1, b), x in s2.items():
            for (c, total2, d), y in s2.items():
                if glue == "lower":
                    # (A01 <= A02) glued to (A02 <= A03) along A02
                    if total1 != c:
                        continue
                    if total2 not in aut:
                        continue
                    tgt[(a, b, total1, d, total2)] += x * y * aut[c]
                else:
                    # (A01 <= A03) glued to (A12 <= A13) along A13 = A03/A01
                    if b != total2:
                        continue
                    tgt[(a, b, total1, c, d)] += x * y * aut[b]
        for grade in sorted(set(src) | set(tgt), key=repr):
            checks.append(SegalCheck(name, grade, src.get(grade, Fraction(0)), tgt.get(grade, Fraction(0))))
    return SegalReport(repr(ctx), bound, checks)

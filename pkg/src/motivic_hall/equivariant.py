"""Class functions with values in Z[t] (localized), symmetric-group
characters, induction from subgroups, and the equivariant Euler
characteristic of period domains as a virtual character of GL_r(F_q)
(r <= 2) or S_r.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .coeffring import IntPoly, MotivicScalar, QScalar, evaluate
from .errors import ValidationError
from .ffield import field, gl_order, rref
from .groups import FiniteGroup, Subgroup, general_linear_group, partition_label, symmetric_group
from .protoexact import filtered as fl
from .slope import filtered_twist_exponent, flag_ingredient, period_reineke_types

SYM_CAP = 8
F1_CAP = 6


def _scalar(v):
    if isinstance(v, IntPoly):
        v = MotivicScalar(v)
    out = QScalar._coerce(v)
    if out is NotImplemented:
        raise ValidationError(f"{v!r} is not a class function value")
    return out


class ClassFunction:
    """One value per conjugacy class, in the order of ``group.classes``."""

    def __init__(self, group, values):
        values = [_scalar(v) for v in values]
        if len(values) != len(group.classes):
            raise ValidationError(f"{group} has {len(group.classes)} classes, got {len(values)} values")
        self.group = group
        self.values = values

    @classmethod
    def trivial(cls, group, value=1):
        return cls(group, [value] * len(group.classes))

    @classmethod
    def from_elements(cls, group, fn):
        return cls(group, [fn(cl[0]) for cl in group.classes])

    def at(self, g):
        return self.values[self.group.class_of[g]]

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])
        c = _scalar(other)
        return ClassFunction(self.group, [a * c for a in self.values])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ClassFunction) and other.group is self.group and self.values == other.values

    def _check(self, other):
        if not isinstance(other, ClassFunction) or other.group is not self.group:
            raise ValidationError("class functions on different groups")

    def identity_value(self):
        return self.at(self.group.identity)

    def specialize(self, t0):
        return [evaluate(v, t0) for v in self.values]

    def to_json(self):
        return {"group": self.group.name, "classes": list(self.group.class_labels),
                "values": [v.to_json() for v in self.values]}

    def format(self):
        return {lab: v.format("t") for lab, v in zip(self.group.class_labels, self.values)}

    def __repr__(self):
        return f"ClassFunction({self.group.name}, {self.format()})"


def class_function_from_json(data, group):
    if isinstance(data, str):
        data = json.loads(data)
    labels = list(group.class_labels)
    if data.get("classes", labels) != labels:
        raise ValidationError(f"class labels {data.get('classes')} do not match {group.name}")
    return ClassFunction(group, [QScalar.from_json(v) for v in data["values"]])


def inner_product(f, g):
    """(1/|G|) sum_C |C| f(C) g(C); all characters used here are real."""
    G = f.group
    f._check(g)
    total = QScalar(0)
    for cl, a, b in zip(G.classes, f.values, g.values):
        total = total + a * b * len(cl)
    return total / G.order


# ---- symmetric group characters ------------------------------------------


def partitions(n, maxpart=None):
    if maxpart is None:
        maxpart = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def _mn(lam, mu):
    """chi^lam at cycle type mu by removing rim hooks (beta-set form)."""
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    n = len(lam)
    beta = [lam[i] + (n - 1 - i) for i in range(n)]
    bset = set(beta)
    total = 0
    for b in beta:
        c = b - k
        if c < 0 or c in bset:
            continue
        sign = (-1) ** sum(1 for x in beta if c < x < b)
        new = sorted((bset - {b}) | {c}, reverse=True)
        shape = tuple(x - (n - 1 - i) for i, x in enumerate(new))
        shape = tuple(p for p in shape if p > 0)
        total += sign * _mn(shape, rest)
    return total


@dataclass(frozen=True)
class CharacterTable:
    r: int
    partitions: tuple  # row labels
    classes: tuple  # column cycle types, in the order of symmetric_group(r).classes
    rows: tuple

    def character(self, lam):
        G = symmetric_group(self.r)
        return ClassFunction(G, list(self.rows[self.partitions.index(tuple(lam))]))

    def to_json(self):
        return {"r": self.r, "classes": [partition_label(c) for c in self.classes],
                "characters": [{"partition": list(p), "values": list(row)} for p, row in zip(self.partitions, self.rows)]}


@lru_cache(maxsize=None)
def sym_character_table(r):
    """Irreducible characters of S_r by Murnaghan-Nakayama, rows indexed by partitions."""
    if r < 0 or r > SYM_CAP:
        raise ValidationError(f"S_r character tables are capped at r <= {SYM_CAP}")
    G = symmetric_group(r)
    types = G.class_types
    parts = tuple(partitions(r))
    rows = tuple(tuple(_mn(lam, mu) for mu in types) for lam in parts)
    return CharacterTable(r, parts, tuple(types), rows)


def decomposition(f):
    """Multiplicities <f, chi^lam> for a class function on S_r."""
    G = f.group
    if not hasattr(G, "r") or not G.name.startswith("S_"):
        raise ValidationError("decomposition is only offered for symmetric groups")
    table = sym_character_table(G.r)
    return {lam: inner_product(f, table.character(lam)) for lam in table.partitions}


# ---- induction, restriction, products ------------------------------------


def restrict(f, H):
    if not isinstance(H, Subgroup) or H.ambient is not f.group:
        raise ValidationError("restriction needs a subgroup of the class function's group")
    return ClassFunction.from_elements(H, lambda h: f.at(H.embedding[h]))


def induce(f, G=None):
    """(Ind f)(g) = (1/|H|) sum over x in G with x^-1 g x in H of f(x^-1 g x)."""
    H = f.group
    if G is None or G is H:
        if G is None and not isinstance(H, Subgroup):
            return f
        if G is H:
            return f
    if not isinstance(H, Subgroup):
        raise ValidationError("induction needs a class function on a subgroup")
    if H.ambient is not G:
        # allow towers: induce step by step
        if isinstance(H.ambient, Subgroup):
            return induce(induce(f, H.ambient), G)
        raise ValidationError(f"{H.name} is not a subgroup of {G}")
    pos = {g: i for i, g in enumerate(H.embedding)}
    values = []
    for cl in G.classes:
        g = cl[0]
        total = QScalar(0)
        for x in range(G.order):
            y = G.conj(x, g)
            if y in pos:
                total = total + f.at(pos[y])
        values.append(total / H.order)
    return ClassFunction(G, values)


class DirectProduct(FiniteGroup):
    def __init__(self, A, B):
        n, m = A.order, B.order
        table = [[A.table[a1][a2] * m + B.table[b1][b2] for a2 in range(n) for b2 in range(m)]
                 for a1 in range(n) for b1 in range(m)]
        super().__init__(table, f"{A.name}x{B.name}", elements=[(a, b) for a in A.elements for b in B.elements],
                         check=False)
        self.factors = (A, B)

    def split(self, g):
        return divmod(g, self.factors[1].order)

    @property
    def class_labels(self):
        A, B = self.factors
        out = []
        for cl in self.classes:
            a, b = self.split(cl[0])
            out.append(f"({A.class_labels[A.class_of[a]]},{B.class_labels[B.class_of[b]]})")
        return out


def external_product(f, g):
    P = DirectProduct(f.group, g.group)
    return ClassFunction.from_elements(P, lambda x: f.at(P.split(x)[0]) * g.at(P.split(x)[1]))


# ---- parabolic subgroups --------------------------------------------------


def multinomial_denominator(eta):
    out = 1
    for e in eta:
        out *= factorial(e)
    return out


@dataclass
class ParabolicSubgroup:
    ambient: object
    eta: tuple
    subgroup: Subgroup

    @property
    def order(self):
        return self.subgroup.order

    def expected_order(self):
        """prod eta_i! for S_r; q^(sum_{i<j} eta_i eta_j) prod |GL_eta_i| for GL_r."""
        if self.kind == "S":
            return multinomial_denominator(self.eta)
        q = self.ambient.q
        e = sum(self.eta[i] * self.eta[j] for i in range(len(self.eta)) for j in range(i + 1, len(self.eta)))
        out = q**e
        for d in self.eta:
            out *= gl_order(q, d)
        return out

    def levi_components(self, p):
        """Images of the element p (index into ``subgroup``) in each Levi factor group."""
        elt = self.subgroup.elements[p]
        out = []
        start = 0
        for e in self.eta:
            if self.kind == "S":
                block = tuple(elt[i] - start for i in range(start, start + e))
                G = symmetric_group(e)
            else:
                block = tuple(tuple(elt[i][j] for j in range(start, start + e)) for i in range(start, start + e))
                G = general_linear_group(e, self.ambient.q)
            out.append(_element_index(G)[block])
            start += e
        return out

    @property
    def kind(self):
        return "S" if self.ambient.name.startswith("S_") else "GL"


def _element_index(G):
    idx = getattr(G, "_index", None)
    if idx is None:
        idx = {e: i for i, e in enumerate(G.elements)}
        G._index = idx
    return idx


def parabolic(G, eta):
    eta = tuple(eta)
    if G.name.startswith("S_"):
        H = G.young_subgroup(eta)
    else:
        H = G.parabolic(eta)
    return ParabolicSubgroup(G, eta, H)


def parabolic_product(P, factors):
    """Inflate the external product of class functions on the Levi factors to P."""
    if len(factors) != len(P.eta):
        raise ValidationError("one factor per block")

    def value(p):
        comps = P.levi_components(p)
        out = QScalar(1)
        for f, c in zip(factors, comps):
            out = out * f.at(c)
        return out

    return ClassFunction.from_elements(P.subgroup, value)


def parabolic_induction(G, eta, factors):
    return induce(parabolic_product(parabolic(G, eta), factors), G)


# ---- equivariant period domains ------------------------------------------


def ambient_group(ft, field_name, q=None):
    if field_name == "Fq":
        if ft.r > 2 or q not in (2, 3):
            raise ValidationError("the F_q equivariant formula is modelled for r <= 2 and q in {2, 3}")
        return general_linear_group(ft.r, q)
    if field_name == "F1":
        if ft.r > F1_CAP:
            raise ValidationError(f"the F_1 equivariant formula is capped at r <= {F1_CAP}")
        return symmetric_group(ft.r)
    raise ValidationError(f"unknown field {field_name!r}; use Fq or F1")


def _block_group(field_name, n, q):
    return general_linear_group(n, q) if field_name == "Fq" else symmetric_group(n)


def flag_character(a, field_name, q=None):
    """chi_c of the flag variety of the filtered class a, as a class function of Aut.

    The automorphism group acts trivially on the cohomology of a flag variety
    (it sits in a connected group), so this is sum_w t^l(w) times the trivial
    character.
    """
    n = sum(a)
    return ClassFunction.trivial(_block_group(field_name, n, q), MotivicScalar(flag_ingredient(a)))


def equivariant_period_domain(ft, field_name="F1", q=None, convention="sub_first"):
    """sum over tau of (-1)^(m-1) t^e(tau) Ind_{P_eta}^{G}(chi_c(flags_1) x ... x chi_c(flags_m))."""
    G = ambient_group(ft, field_name, q)
    total = ClassFunction(G, [0] * len(G.classes))
    for tau in period_reineke_types(ft):
        eta = tuple(sum(a) for a in tau)
        factors = [flag_character(a, field_name, q) for a in tau]
        term = parabolic_induction(G, eta, factors)
        coeff = IntPoly.monomial(filtered_twist_exponent(tau, convention)) * ((-1) ** (len(tau) - 1))
        total = total + term * MotivicScalar(coeff)
    return total


def dimension_at(f, t0):
    """Value at the identity class with t = t0."""
    return evaluate(f.identity_value(), t0)


# ---- Lefschetz oracle -----------------------------------------------------


def _act_rows(F, g, U):
    """Image of the row space U under the matrix g (acting on column vectors)."""
    if not U:
        return ()
    rows = [tuple(_dot(F, row, u) for row in g) for u in U]
    return rref(F, rows)[0]


def _dot(F, a, b):
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add[acc][F.mul[x][y]]
    return acc


def _frob_rows(F, U, k):
    if not U:
        return ()
    return rref(F, [tuple(F.frobenius(x, k) for x in row) for row in U])[0]


def _matrix_of(G, g):
    elt = G.elements[g]
    if G.name.startswith("S_"):
        r = len(elt)
        # permutation matrix sending e_i to e_{elt[i]}
        return tuple(tuple(int(elt[j] == i) for j in range(r)) for i in range(r))
    return elt


def _order(G, g):
    n, x = 1, g
    while x != G.identity:
        x = G.mul(x, g)
        n += 1
    return n


def lefschetz_count(ft, field_name, q, g, k=1):
    """#{semistable flags x : g . Frob^k(x) = x}, Frob the q-power map.

    By the Lefschetz trace formula this is the class function's value at g
    with t = q^k.  Fixed flags are defined over F_{q^(k * ord g)}.
    """
    G = ambient_group(ft, field_name, q) if field_name == "Fq" else symmetric_group(ft.r)
    m = k * _order(G, g)
    F = field(q, m)
    M = _matrix_of(G, g)
    if field_name == "Fq":
        tests = fl.rational_subspaces(F, ft.r, q)
    else:
        tests = [B for _, B in fl.coordinate_subspaces(ft.r)]
    mu = ft.slope(ft.delta)
    n = 0
    for chain in fl.flags(F, ft.r, ft.delta):
        moved = tuple(_act_rows(F, M, _frob_rows(F, U, k)) for U in chain)
        if moved != chain:
            continue
        V = fl.FilteredSpace(q, ft.r, chain, m)
        if all(not ft.slope(V.induced_graded_dims(W)) > mu for W in tests):
            n += 1
    return n

"""Representations of acyclic quivers over prime fields, enumerated exhaustively.

A representation is stored as a dimension vector plus one matrix per arrow;
matrices are tuples of rows, shape dim[target] x dim[source].  Iso classes are
GL_alpha-orbits on the representation space, and each class is named by its
lexicographically smallest point.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
import json

from ..errors import ValidationError, check_budget
from ..ffield import all_rref, field, gl_elements, gl_order, is_prime, mat_inverse, matmul, rank, rref


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # (source index, target index)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise ValidationError("duplicate vertex labels")
        for s, t in self.arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise ValidationError(f"arrow {s}->{t} out of range")
            if s == t:
                raise ValidationError("loops are not allowed (quiver must be acyclic)")
        if not self._acyclic():
            raise ValidationError("quiver has an oriented cycle")

    def _acyclic(self):
        n = len(self.vertices)
        indeg = [0] * n
        for _, t in self.arrows:
            indeg[t] += 1
        ready = [v for v in range(n) if indeg[v] == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
        return seen == n

    @property
    def n(self):
        return len(self.vertices)

    def euler_matrix(self):
        """Matrix of psi(x, y) = sum x_i y_i - sum_e x_s(e) y_t(e)."""
        M = [[int(i == j) for j in range(self.n)] for i in range(self.n)]
        for s, t in self.arrows:
            M[s][t] -= 1
        return tuple(tuple(r) for r in M)

    def rep_space_dim(self, alpha):
        return sum(alpha[s] * alpha[t] for s, t in self.arrows)

    def to_json(self):
        return {
            "vertices": list(self.vertices),
            "arrows": [{"src": self.vertices[s], "tgt": self.vertices[t]} for s, t in self.arrows],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            verts = [str(v) for v in data["vertices"]]
            index = {v: i for i, v in enumerate(verts)}
            arrows = [(index[str(a["src"])], index[str(a["tgt"])]) for a in data.get("arrows", [])]
        except KeyError as exc:
            raise ValidationError(f"quiver JSON: unknown or missing field {exc}") from exc
        except (TypeError, AttributeError) as exc:
            raise ValidationError(f"quiver JSON malformed: {exc}") from exc
        return cls(tuple(verts), tuple(arrows))

    def __str__(self):
        arr = ", ".join(f"{self.vertices[s]}->{self.vertices[t]}" for s, t in self.arrows)
        return f"Quiver({', '.join(self.vertices)}; {arr})"


def A1():
    return Quiver(("1",), ())


def A2():
    return Quiver(("1", "2"), ((0, 1),))


def kronecker(m=2):
    return Quiver(("1", "2"), ((0, 1),) * m)


def zero_quiver():
    return Quiver((), ())


def _zero_matrix(rows, cols):
    return tuple(tuple(0 for _ in range(cols)) for _ in range(rows))


def _check_field(q):
    if not is_prime(q):
        raise ValidationError(f"q = {q}: only prime fields are modelled")
    return field(q)


@dataclass(frozen=True)
class QuiverRep:
    quiver: Quiver
    q: int
    dim: tuple
    mats: tuple

    def __post_init__(self):
        object.__setattr__(self, "dim", tuple(int(d) for d in self.dim))
        object.__setattr__(self, "mats", tuple(tuple(tuple(int(x) % self.q for x in row) for row in M) for M in self.mats))
        _check_field(self.q)
        if len(self.dim) != self.quiver.n or any(d < 0 for d in self.dim):
            raise ValidationError(f"dimension vector {self.dim} does not fit {self.quiver}")
        if len(self.mats) != len(self.quiver.arrows):
            raise ValidationError("need exactly one matrix per arrow")
        for (s, t), M in zip(self.quiver.arrows, self.mats):
            if len(M) != self.dim[t] or any(len(row) != self.dim[s] for row in M):
                raise ValidationError(f"matrix for arrow {s}->{t} must be {self.dim[t]}x{self.dim[s]}")

    @classmethod
    def zero(cls, quiver, q, dim=None):
        dim = tuple(dim) if dim is not None else (0,) * quiver.n
        return cls(quiver, q, dim, tuple(_zero_matrix(dim[t], dim[s]) for s, t in quiver.arrows))

    @classmethod
    def simple(cls, quiver, q, vertex):
        dim = tuple(int(i == vertex) for i in range(quiver.n))
        return cls.zero(quiver, q, dim)

    @property
    def total_dim(self):
        return sum(self.dim)

    @property
    def field(self):
        return field(self.q)

    def direct_sum(self, other):
        if (self.quiver, self.q) != (other.quiver, other.q):
            raise ValidationError("direct sum of representations in different contexts")
        dim = tuple(a + b for a, b in zip(self.dim, other.dim))
        mats = []
        for (s, t), A, B in zip(self.quiver.arrows, self.mats, other.mats):
            rows = [tuple(row) + (0,) * other.dim[s] for row in A]
            rows += [(0,) * self.dim[s] + tuple(row) for row in B]
            mats.append(tuple(rows))
        return QuiverRep(self.quiver, self.q, dim, tuple(mats))

    def to_json(self):
        return {"q": self.q, "dim": list(self.dim), "mats": [[list(r) for r in M] for M in self.mats]}

    @classmethod
    def from_json(cls, quiver, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            q, dim, mats = int(data["q"]), data["dim"], data.get("mats", [])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"representation JSON: missing field {exc}") from exc
        dim = tuple(int(d) for d in dim)
        if len(mats) != len(quiver.arrows):
            raise ValidationError("representation JSON: field 'mats' needs one matrix per arrow")
        fixed = []
        for (s, t), M in zip(quiver.arrows, mats):
            if dim[t] > 0 and dim[s] == 0 and not M:
                M = [[] for _ in range(dim[t])]
            fixed.append(tuple(tuple(r) for r in M))
        return cls(quiver, q, dim, tuple(fixed))


def act(F, quiver, g, mats):
    """g = (g_i) acting by M_e -> g_t M_e g_s^-1; ``g`` holds (g_i, g_i^-1) pairs."""
    out = []
    for (s, t), M in zip(quiver.arrows, mats):
        if not M or not M[0]:
            out.append(M)
            continue
        out.append(matmul(F, matmul(F, g[t][0], M), g[s][1]))
    return tuple(out)


@lru_cache(maxsize=None)
def _gl_with_inverses(q, n):
    F = field(q)
    return tuple((g, mat_inverse(F, g)) for g in gl_elements(F, n))


def gl_alpha_order(q, alpha):
    out = 1
    for d in alpha:
        out *= gl_order(q, d)
    return out


class IsoClassTable:
    """All iso classes of representations of dimension ``alpha`` with automorphism orders."""

    def __init__(self, quiver, alpha, q):
        self.quiver, self.alpha, self.q = quiver, tuple(alpha), q
        F = _check_field(q)
        if len(self.alpha) != quiver.n or any(a < 0 for a in self.alpha):
            raise ValidationError(f"bad dimension vector {alpha}")
        npoints = q ** quiver.rep_space_dim(self.alpha)
        check_budget(npoints, f"representations of dimension {self.alpha}")
        check_budget(gl_alpha_order(q, self.alpha), f"GL_{self.alpha}(F_{q})")
        shapes = [(self.alpha[t], self.alpha[s]) for s, t in quiver.arrows]
        mat_choices = []
        for rows, cols in shapes:
            mat_choices.append(
                [tuple(tuple(entries[r * cols:(r + 1) * cols]) for r in range(rows))
                 for entries in product(range(q), repeat=rows * cols)]
            )
        group = list(product(*(_gl_with_inverses(q, d) for d in self.alpha)))
        self.group_order = len(group)
        index = {}
        reps, auts = [], []
        for point in product(*mat_choices):
            if point in index:
                continue
            orbit = {act(F, quiver, g, point) for g in group}
            canon = min(orbit)
            k = len(reps)
            reps.append(canon)
            auts.append(self.group_order // len(orbit))
            for x in orbit:
                index[x] = k
        order = sorted(range(len(reps)), key=lambda i: reps[i])
        renum = {old: new for new, old in enumerate(order)}
        self.representatives = [QuiverRep(quiver, q, self.alpha, reps[i]) for i in order]
        self.aut_orders = [auts[i] for i in order]
        self._index = {x: renum[k] for x, k in index.items()}
        self.npoints = npoints

    def __len__(self):
        return len(self.representatives)

    def class_index(self, mats):
        return self._index[mats]

    def canonical(self, rep):
        return self.representatives[self._index[rep.mats]]

    def groupoid_cardinality(self):
        return sum((Fraction(1, a) for a in self.aut_orders), Fraction(0))

    def orbit_sizes(self):
        return [self.group_order // a for a in self.aut_orders]


@lru_cache(maxsize=None)
def enumerate_reps(quiver, alpha, q):
    """Complete table of iso classes of dimension ``alpha`` over F_q."""
    return IsoClassTable(quiver, tuple(alpha), q)


def canonical(rep):
    return enumerate_reps(rep.quiver, rep.dim, rep.q).canonical(rep)


def aut_order(rep):
    table = enumerate_reps(rep.quiver, rep.dim, rep.q)
    return table.aut_orders[table.class_index(rep.mats)]


def class_key(rep):
    """Hashable name of the iso class: (dim, canonical matrices)."""
    c = canonical(rep)
    return (c.dim, c.mats)


def rep_from_key(quiver, q, key):
    return QuiverRep(quiver, q, key[0], key[1])


def effective_vectors(n, total):
    """All dimension vectors of length n with entry sum == total."""
    if n == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total, -1, -1):
        for rest in effective_vectors(n - 1, total - first):
            out.append((first,) + rest)
    return out


def vectors_up_to(n, bound):
    return [v for k in range(bound + 1) for v in effective_vectors(n, k)]


# ---- subobjects -----------------------------------------------------------


@dataclass(frozen=True)
class Subobject:
    spaces: tuple  # per vertex: RREF basis rows inside the ambient space
    sub: QuiverRep
    quotient: QuiverRep

    @property
    def dim(self):
        return self.sub.dim


def _coords(basis_pivots, v):
    return tuple(v[p] for p in basis_pivots)


def _pivots(basis):
    return tuple(next(i for i, x in enumerate(row) if x) for row in basis)


def _reduce(F, basis, pivots, v):
    """v minus its component along the RREF ``basis``."""
    v = list(v)
    for row, p in zip(basis, pivots):
        c = v[p]
        if c:
            mc = F.mul[F.neg[c]]
            v = [F.add[a][mc[b]] for a, b in zip(v, row)]
    return v


def _column(M, c):
    return tuple(row[c] for row in M)


def _apply(F, M, v):
    return tuple(sum(F.mul[a][b] for a, b in zip(row, v)) % F.p for row in M)


def sub_rep(E, spaces):
    """Representation on the arrow-closed subspaces ``spaces`` of E (in their RREF bases)."""
    F = E.field
    dim = tuple(len(U) for U in spaces)
    piv = [_pivots(U) for U in spaces]
    mats = []
    for (s, t), M in zip(E.quiver.arrows, E.mats):
        cols = [_coords(piv[t], _apply(F, M, u)) for u in spaces[s]]
        mats.append(tuple(tuple(cols[j][i] for j in range(dim[s])) for i in range(dim[t])))
    return QuiverRep(E.quiver, E.q, dim, tuple(mats))


def quotient_rep(E, spaces):
    F = E.field
    piv = [_pivots(U) for U in spaces]
    comp = [[c for c in range(E.dim[i]) if c not in piv[i]] for i in range(E.quiver.n)]
    dim = tuple(len(c) for c in comp)
    mats = []
    for (s, t), M in zip(E.quiver.arrows, E.mats):
        cols = []
        for c in comp[s]:
            v = _reduce(F, spaces[t], piv[t], _column(M, c))
            cols.append(tuple(v[k] for k in comp[t]))
        mats.append(tuple(tuple(cols[j][i] for j in range(dim[s])) for i in range(dim[t])))
    return QuiverRep(E.quiver, E.q, dim, tuple(mats))


def is_arrow_closed(E, spaces):
    F = E.field
    for (s, t), M in zip(E.quiver.arrows, E.mats):
        if not spaces[s]:
            continue
        images = [_apply(F, M, u) for u in spaces[s]]
        if rank(F, list(spaces[t]) + images) != len(spaces[t]):
            return False
    return True


@lru_cache(maxsize=None)
def _subspaces(q, n):
    F = field(q)
    return tuple(U for k in range(n + 1) for U in all_rref(F, k, n))


def subobjects(E):
    """All subrepresentations of E, each with its quotient."""
    from ..ffield import count_subspaces

    total = 1
    for d in E.dim:
        total *= sum(count_subspaces(E.q, k, d) for k in range(d + 1))
    check_budget(total, "subspace tuples")
    out = []
    for spaces in product(*(_subspaces(E.q, d) for d in E.dim)):
        if is_arrow_closed(E, spaces):
            out.append(Subobject(tuple(spaces), sub_rep(E, spaces), quotient_rep(E, spaces)))
    return out


def contains(F, big, small):
    """Is each subspace of ``small`` inside the corresponding one of ``big``?"""
    return all(rank(F, list(B) + list(S)) == len(B) for B, S in zip(big, small))


def subquotient(E, small, big):
    """The representation big/small for nested arrow-closed subspaces of E."""
    top = sub_rep(E, big)
    piv = [_pivots(B) for B in big]
    inner = tuple(rref(top.field, [_coords(p, v) for v in S])[0] if S else () for p, S in zip(piv, small))
    return quotient_rep(top, inner)


@lru_cache(maxsize=None)
def subobject_classes(quiver, q, key):
    """(sub class key, quotient class key, spaces) for each subobject of the class ``key``."""
    E = rep_from_key(quiver, q, key)
    return tuple((class_key(s.sub), class_key(s.quotient), s.spaces) for s in subobjects(E))


# ---- Hom and Ext ----------------------------------------------------------


def _same_context(A, B):
    if A.quiver != B.quiver or A.q != B.q:
        raise ValidationError("representations live over different quivers or fields")


def hom_dim(A, B):
    """dim Hom(A, B): solutions f = (f_i) of f_t A_e = B_e f_s."""
    _same_context(A, B)
    F = A.field
    offsets, n = [], 0
    for i in range(A.quiver.n):
        offsets.append(n)
        n += B.dim[i] * A.dim[i]
    if n == 0:
        return 0

    def var(i, r, c):  # entry (r, c) of f_i : A_i -> B_i
        return offsets[i] + r * A.dim[i] + c

    rows = []
    for (s, t), Ma, Mb in zip(A.quiver.arrows, A.mats, B.mats):
        for r in range(B.dim[t]):
            for c in range(A.dim[s]):
                eq = [0] * n
                for k in range(A.dim[t]):
                    a = Ma[k][c]
                    if a:
                        j = var(t, r, k)
                        eq[j] = (eq[j] + a) % F.p
                for k in range(B.dim[s]):
                    b = Mb[r][k]
                    if b:
                        j = var(s, k, c)
                        eq[j] = (eq[j] - b) % F.p
                if any(eq):
                    rows.append(eq)
    return n - rank(F, rows)


def euler_form_values(quiver, x, y):
    if len(x) != quiver.n or len(y) != quiver.n:
        raise ValidationError(f"vectors must have length {quiver.n}")
    val = sum(a * b for a, b in zip(x, y))
    val -= sum(x[s] * y[t] for s, t in quiver.arrows)
    return val


def ext1_dim(A, B):
    """dim Ext^1(A, B) = dim Hom(A, B) - psi(dim A, dim B) (path algebras are hereditary)."""
    return hom_dim(A, B) - euler_form_values(A.quiver, A.dim, B.dim)


def identity_basis(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def automorphism_group(quiver, q, key):
    """Elements of GL_alpha fixing the point ``key``, as (g_i, g_i^-1) tuples."""
    F = field(q)
    dim, mats = key
    check_budget(gl_alpha_order(q, dim), f"GL_{dim}(F_{q})")
    group = product(*(_gl_with_inverses(q, d) for d in dim))
    return tuple(g for g in group if act(F, quiver, g, mats) == mats)

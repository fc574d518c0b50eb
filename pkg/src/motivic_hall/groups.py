"""Finite groups given by multiplication tables: S_r, GL_n(F_q) for tiny n, q,
or any table read from JSON.  Elements are the indices 0..|G|-1.
"""

import json
from functools import cached_property, lru_cache
from itertools import permutations

from .errors import ValidationError, check_budget
from .ffield import field, gl_elements, matmul


def cycle_type(perm):
    seen, parts = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        n, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            n += 1
        parts.append(n)
    return tuple(sorted(parts, reverse=True))


def partition_label(parts):
    """(2, 1) -> "21", (1, 1, 1) -> "1^3"; parts >= 10 are comma separated."""
    if not parts:
        return "0"
    chunks = []
    for p in sorted(set(parts), reverse=True):
        m = parts.count(p)
        s = str(p)
        chunks.append(s if m == 1 else f"{s}^{m}")
    sep = "," if max(parts) >= 10 else ""
    return sep.join(chunks)


class FiniteGroup:
    def __init__(self, table, name="G", elements=None, check=True):
        self.table = [list(map(int, row)) for row in table]
        n = len(self.table)
        self.name = name
        self.elements = list(elements) if elements is not None else list(range(n))
        if n == 0 or any(len(row) != n for row in self.table):
            raise ValidationError("group table must be a non-empty square array")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise ValidationError("group table entries must be element indices")
        full = set(range(n))
        if any(set(row) != full for row in self.table) or any({row[j] for row in self.table} != full for j in range(n)):
            raise ValidationError("group table must be a Latin square")
        ids = [e for e in range(n) if self.table[e] == list(range(n))]
        if not ids:
            raise ValidationError("group table has no identity")
        self.identity = ids[0]
        self.inverse = []
        for g in range(n):
            inv = [h for h in range(n) if self.table[g][h] == self.identity]
            if len(inv) != 1:
                raise ValidationError(f"element {g} has no unique inverse")
            self.inverse.append(inv[0])
        if check:
            check_budget(n**3, "group associativity check")
            T = self.table
            for a in range(n):
                Ta = T[a]
                for b in range(n):
                    ab = Ta[b]
                    Tb = T[b]
                    for c in range(n):
                        if T[ab][c] != Ta[Tb[c]]:
                            raise ValidationError("group table is not associative")

    @classmethod
    def from_json(cls, data, name="G"):
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, dict):
            name = data.get("name", name)
            data = data.get("table")
        if not isinstance(data, list):
            raise ValidationError("group JSON: field 'table' must be an array of arrays")
        return cls(data, name)

    def to_json(self):
        return {"name": self.name, "table": self.table}

    def __len__(self):
        return len(self.table)

    @property
    def order(self):
        return len(self.table)

    def mul(self, a, b):
        return self.table[a][b]

    def conj(self, x, g):
        """x^-1 g x."""
        return self.table[self.table[self.inverse[x]][g]][x]

    def is_subgroup(self, H):
        H = set(H)
        if self.identity not in H:
            return False
        return all(self.table[a][self.inverse[b]] in H for a in H for b in H)

    @cached_property
    def classes(self):
        """Conjugacy classes as sorted tuples; the identity class first, then by smallest element."""
        seen, out = set(), []
        for g in [self.identity] + list(range(self.order)):
            if g in seen:
                continue
            cl = tuple(sorted({self.conj(x, g) for x in range(self.order)}))
            seen.update(cl)
            out.append(cl)
        return out

    @cached_property
    def class_of(self):
        out = [0] * self.order
        for k, cl in enumerate(self.classes):
            for g in cl:
                out[g] = k
        return out

    @cached_property
    def class_labels(self):
        return [str(k) for k in range(len(self.classes))]

    def subgroup(self, members, name=None):
        members = sorted(set(members))
        if not self.is_subgroup(members):
            raise ValidationError("subset is not closed under multiplication and inverses")
        return Subgroup(self, members, name or f"H<{self.name}")

    def __repr__(self):
        return self.name


class Subgroup(FiniteGroup):
    """A subgroup, carried as its own table plus the embedding into the ambient group."""

    def __init__(self, ambient, members, name):
        pos = {g: i for i, g in enumerate(members)}
        table = [[pos[ambient.table[a][b]] for b in members] for a in members]
        super().__init__(table, name, elements=[ambient.elements[g] for g in members], check=False)
        self.ambient = ambient
        self.embedding = list(members)


class SymmetricGroup(FiniteGroup):
    """S_r acting on {0..r-1}; classes labelled by cycle type."""

    def __init__(self, r):
        if r < 0:
            raise ValidationError("r must be >= 0")
        perms = sorted(permutations(range(r)))
        check_budget(len(perms) ** 2, f"S_{r} multiplication table")
        pos = {p: i for i, p in enumerate(perms)}
        # (a*b)(i) = a(b(i))
        table = [[pos[tuple(a[b[i]] for i in range(r))] for b in perms] for a in perms]
        super().__init__(table, f"S_{r}", elements=perms, check=False)
        self.r = r

    @cached_property
    def classes(self):
        by_type = {}
        for g, p in enumerate(self.elements):
            by_type.setdefault(cycle_type(p), []).append(g)
        # lexicographic on the sorted parts: "1^r" first, "r" last
        types = sorted(by_type, key=lambda lam: tuple(lam))
        self._types = types
        return [tuple(by_type[t]) for t in types]

    @cached_property
    def class_types(self):
        self.classes
        return list(self._types)

    @cached_property
    def class_labels(self):
        return [partition_label(t) for t in self.class_types]

    def young_subgroup(self, eta):
        """S_eta: permutations preserving the consecutive blocks of sizes eta."""
        blocks = _blocks(eta, self.r)
        members = [g for g, p in enumerate(self.elements) if all(blocks[p[i]] == blocks[i] for i in range(self.r))]
        return self.subgroup(members, f"S_{tuple(eta)}")


class GeneralLinearGroup(FiniteGroup):
    """GL_n(F_q) as an explicit table; only meant for n <= 2, q in {2, 3}."""

    def __init__(self, n, q):
        F = field(q)
        mats = sorted(gl_elements(F, n))
        check_budget(len(mats) ** 2, f"GL_{n}(F_{q}) multiplication table")
        pos = {m: i for i, m in enumerate(mats)}
        table = [[pos[matmul(F, a, b)] for b in mats] for a in mats]
        super().__init__(table, f"GL_{n}(F_{q})", elements=mats, check=False)
        self.n, self.q = n, q

    @cached_property
    def class_labels(self):
        # a representative matrix, rows joined by "/"
        return ["/".join("".join(map(str, row)) for row in self.elements[cl[0]]) for cl in self.classes]

    def parabolic(self, eta):
        """Block upper triangular matrices for the composition eta."""
        blocks = _blocks(eta, self.n)
        members = [g for g, m in enumerate(self.elements)
                   if all(m[i][j] == 0 for i in range(self.n) for j in range(self.n) if blocks[i] > blocks[j])]
        return self.subgroup(members, f"P_{tuple(eta)}")


def _blocks(eta, r):
    if sum(eta) != r or any(e <= 0 for e in eta):
        raise ValidationError(f"{eta} is not a composition of {r}")
    out = []
    for k, e in enumerate(eta):
        out += [k] * e
    return out


@lru_cache(maxsize=None)
def symmetric_group(r):
    return SymmetricGroup(r)


@lru_cache(maxsize=None)
def general_linear_group(n, q):
    return GeneralLinearGroup(n, q)

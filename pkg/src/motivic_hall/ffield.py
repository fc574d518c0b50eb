"""Finite fields GF(p^m) with table arithmetic, and the row-reduction
routines the enumerators need (rank, echelon forms, kernels, subspaces).

Elements are ints 0..p^m-1; for m = 1 they are the residues themselves.
For m > 1 the int encodes the coefficient vector base p of a polynomial
modulo a fixed irreducible of degree m.
"""

from functools import lru_cache
from itertools import combinations, product

import numpy as np

from .errors import ValidationError

MAX_TABLE = 1024


def is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _poly_mulmod(a, b, mod, p):
    # a, b: coefficient lists of length m; mod: monic of length m+1
    m = len(mod) - 1
    out = [0] * (2 * m - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for k in range(len(out) - 1, m - 1, -1):
        c = out[k]
        if c:
            for j in range(m + 1):
                out[k - m + j] = (out[k - m + j] - c * mod[j]) % p
    return out[:m]


def _is_irreducible(mod, p):
    m = len(mod) - 1
    for d in range(1, m // 2 + 1):
        for tail in product(range(p), repeat=d):
            div = list(tail) + [1]
            rem = list(mod)
            for k in range(len(rem) - 1, d - 1, -1):
                c = rem[k]
                if c:
                    for j in range(d + 1):
                        rem[k - d + j] = (rem[k - d + j] - c * div[j]) % p
            if not any(rem[:d]):
                return False
    return True


class GF:
    """The field with p^m elements."""

    def __init__(self, p, m=1):
        if not is_prime(p):
            raise ValidationError(f"field characteristic {p} is not prime")
        if m < 1:
            raise ValidationError("extension degree must be >= 1")
        self.p, self.m = p, m
        self.order = p**m
        if self.order > MAX_TABLE:
            raise ValidationError(f"GF({p}^{m}) exceeds the table size cap {MAX_TABLE}")
        n = self.order
        if m == 1:
            r = np.arange(p)
            self.add = (r[:, None] + r[None, :]) % p
            self.mul = (r[:, None] * r[None, :]) % p
            self.modulus = None
        else:
            self.modulus = self._find_modulus()
            digits = [self._digits(x) for x in range(n)]
            weights = p ** np.arange(m)
            dig = np.array(digits)
            self.add = ((dig[:, None, :] + dig[None, :, :]) % p) @ weights
            mul = np.zeros((n, n), dtype=np.int64)
            for a in range(n):
                for b in range(a, n):
                    c = self._from_digits(_poly_mulmod(digits[a], digits[b], self.modulus, p))
                    mul[a, b] = mul[b, a] = c
            self.mul = mul
        # nested lists index faster than numpy scalars in the pure-Python loops below
        self.add = np.asarray(self.add, dtype=np.int64).tolist()
        self.mul = np.asarray(self.mul, dtype=np.int64).tolist()
        self.neg = [row.index(0) for row in self.add]
        self.inv = [0] + [self.mul[a].index(1) for a in range(1, n)]
        self._frob = [self.power(a, p) for a in range(n)]

    def _digits(self, x):
        out = []
        for _ in range(self.m):
            out.append(x % self.p)
            x //= self.p
        return out

    def _from_digits(self, digits):
        x = 0
        for d in reversed(digits):
            x = x * self.p + d
        return x

    def _find_modulus(self):
        p, m = self.p, self.m
        for tail in product(range(p), repeat=m):
            mod = list(tail) + [1]
            if mod[0] and _is_irreducible(mod, p):
                return mod
        raise AssertionError("no irreducible polynomial found")

    def power(self, a, e):
        out = 1
        for _ in range(e):
            out = self.mul[out][a]
        return out

    def frobenius(self, a, k=1):
        """a -> a^(p^k)."""
        for _ in range(k):
            a = self._frob[a]
        return a

    def prime_subfield(self):
        """Elements of GF(p) inside this field (the ints 0..p-1 in our encoding)."""
        return list(range(self.p))

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))


@lru_cache(maxsize=None)
def field(p, m=1):
    return GF(p, m)


def rref(F, rows):
    """Reduced row echelon form of a list of row vectors; returns (rows, pivots)."""
    A = [list(r) for r in rows]
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    add, mul, inv, neg = F.add, F.mul, F.inv, F.neg
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        ms = mul[inv[A[r][c]]]
        A[r] = [ms[x] for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                mf = mul[neg[A[i][c]]]
                A[i] = [add[x][mf[y]] for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return tuple(tuple(row) for row in A[:r]), tuple(pivots)


def rank(F, rows):
    if not rows:
        return 0
    return len(rref(F, rows)[1])


def matmul(F, A, B):
    """Product of matrices given as tuples of rows."""
    if not A or not B:
        ncols = len(B[0]) if B else 0
        return tuple(tuple(0 for _ in range(ncols)) for _ in A)
    add, mul = F.add, F.mul
    out = []
    for row in A:
        new = []
        for j in range(len(B[0])):
            acc = 0
            for k, a in enumerate(row):
                if a:
                    acc = add[acc][mul[a][B[k][j]]]
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def transpose(A, nrows=None, ncols=None):
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


def kernel(F, A, ncols):
    """Basis of {x : A x = 0} for A with ``ncols`` columns, as row vectors."""
    if not A:
        return tuple(tuple(int(i == j) for j in range(ncols)) for i in range(ncols))
    R, piv = rref(F, A)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, piv):
            v[pc] = F.neg[row[f]]
        basis.append(tuple(v))
    return tuple(basis)


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_inverse(F, A):
    n = len(A)
    aug = [tuple(A[i]) + identity(n)[i] for i in range(n)]
    R, piv = rref(F, aug)
    if tuple(piv[:n]) != tuple(range(n)) or len(piv) < n:
        raise ValidationError("singular matrix")
    return tuple(tuple(row[n:]) for row in R)


def all_rref(F, k, n, scalars=None):
    """All k-dimensional subspaces of F^n as canonical RREF bases.

    ``scalars`` restricts the free entries (default: all field elements).
    """
    vals = list(range(F.order)) if scalars is None else list(scalars)
    out = []
    for piv in combinations(range(n), k):
        slots = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, n) if c not in piv]
        for fill in product(vals, repeat=len(slots)):
            M = [[0] * n for _ in range(k)]
            for i, pc in enumerate(piv):
                M[i][pc] = 1
            for (i, c), v in zip(slots, fill):
                M[i][c] = v
            out.append(tuple(tuple(r) for r in M))
    return out


def count_subspaces(q, k, n):
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def span_dim(F, *bases):
    rows = [r for b in bases for r in b]
    return rank(F, rows)


def gl_elements(F, n):
    """All invertible n x n matrices over F (tuples of rows)."""
    if n == 0:
        return [()]
    out = []
    q = F.order

    def extend(rows):
        if len(rows) == n:
            out.append(tuple(rows))
            return
        for v in product(range(q), repeat=n):
            if rank(F, rows + [v]) == len(rows) + 1:
                extend(rows + [v])

    extend([])
    return out


def gl_order(q, n):
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out

"""Filtered vector spaces over finite fields, and the F_1 analogue.

A filtration is stored as an increasing chain V_1 <= V_2 <= ... <= V_n = V
(so V_n is the whole space); graded piece i is V_i / V_{i-1}.  A weight
vector assigns weight w_i to graded piece i, and a subspace W gets the
induced degree  deg(W) = sum_i w_i dim((W cap V_i) / (W cap V_{i-1})).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..errors import ValidationError, check_budget
from ..ffield import all_rref, count_subspaces, field, rank, rref


def _partial_sums(delta):
    out, s = [], 0
    for d in delta:
        s += d
        out.append(s)
    return out


@dataclass(frozen=True)
class FilteredSpace:
    """F^r with a flag; ``steps`` lists V_1 <= ... <= V_n = F^r as RREF bases.

    ``p`` and ``m`` name the field GF(p^m) the flag is defined over.
    """

    p: int
    r: int
    steps: tuple
    m: int = 1

    def __post_init__(self):
        F = self.field
        steps = []
        for U in self.steps:
            U = tuple(tuple(int(x) for x in row) for row in U)
            if any(len(row) != self.r for row in U):
                raise ValidationError("filtration step has wrong ambient dimension")
            R = rref(F, U)[0] if U else ()
            if len(R) != len(U):
                raise ValidationError("filtration step basis is not linearly independent")
            steps.append(R)
        for A, B in zip(steps, steps[1:]):
            if rank(F, list(A) + list(B)) != len(B):
                raise ValidationError("filtration steps are not nested")
        if not steps or len(steps[-1]) != self.r:
            raise ValidationError("last filtration step must be the whole space")
        object.__setattr__(self, "steps", tuple(steps))

    @property
    def field(self):
        return field(self.p, self.m)

    @property
    def q(self):
        return self.p**self.m

    @property
    def graded_dims(self):
        dims = [len(U) for U in self.steps]
        return tuple(b - a for a, b in zip([0] + dims, dims))

    def intersection_dims(self, W):
        """dim(W cap V_i) for each step."""
        F = self.field
        W = list(W)
        return [len(W) + len(U) - rank(F, W + list(U)) if W else 0 for U in self.steps]

    def induced_graded_dims(self, W):
        dims = self.intersection_dims(W)
        return tuple(b - a for a, b in zip([0] + dims, dims))

    def degree(self, W, weights):
        return sum(w * g for w, g in zip(weights, self.induced_graded_dims(W)))


def flags(F, r, delta):
    """All flags of type ``delta`` in F^r as chains of RREF bases."""
    check_budget(_flag_count(F.order, delta), f"flags of type {tuple(delta)} over {F}")
    dims = _partial_sums(delta)
    if dims[-1] != r:
        raise ValidationError(f"{tuple(delta)} is not a composition of {r}")
    by_dim = {}
    out = []

    def grow(chain):
        k = len(chain)
        if k == len(dims):
            out.append(tuple(chain))
            return
        d = dims[k]
        if d not in by_dim:
            by_dim[d] = all_rref(F, d, r)
        prev = list(chain[-1]) if chain else []
        for U in by_dim[d]:
            if not prev or rank(F, list(U) + prev) == d:
                grow(chain + [U])

    grow([])
    return out


def _flag_count(q, delta):
    total, left = 1, sum(delta)
    for d in delta:
        total *= count_subspaces(q, d, left)
        left -= d
    return total


def rational_subspaces(F, r, p):
    """Proper nonzero subspaces of F^r defined over the prime field F_p."""
    out = []
    for d in range(1, r):
        out += all_rref(F, d, r, scalars=range(p))
    return out


def coordinate_subspaces(r):
    """Proper nonzero coordinate subspaces, as (subset, RREF basis)."""
    out = []
    for d in range(1, r):
        for S in combinations(range(r), d):
            out.append((frozenset(S), tuple(tuple(int(j == i) for j in range(r)) for i in S)))
    return out


def slope(graded, weights):
    n = sum(graded)
    return Fraction(sum(w * g for w, g in zip(weights, graded)), n)


# ---- the F_1 side: chains of subsets -------------------------------------


def subset_flags(r, delta):
    """Chains S_1 < ... < S_n = {0..r-1} with |S_i / S_{i-1}| = delta_i."""
    dims = _partial_sums(delta)
    if dims[-1] != r:
        raise ValidationError(f"{tuple(delta)} is not a composition of {r}")
    out = []

    def grow(chain, used):
        k = len(chain)
        if k == len(dims):
            out.append(tuple(chain))
            return
        rest = [i for i in range(r) if i not in used]
        for extra in combinations(rest, dims[k] - len(used)):
            S = used | frozenset(extra)
            grow(chain + [S], S)

    grow([], frozenset())
    return out


def subset_induced_graded(chain, S):
    dims = [len(S & V) for V in chain]
    return tuple(b - a for a, b in zip([0] + dims, dims))

"""Slopes, semistability, Harder-Narasimhan filtrations, and the HN
recursion / Reineke inversion for quiver moduli, flag varieties and period
domains (over F_q and over F_1).

Twist convention: an HN stratum of type (a_1, ..., a_m), listed from the
sub end, has class L^{-sum_{i<j} chi_op(a_i, a_j)} prod [ss M_{a_k}].  The
other index order is available as ``convention="quotient_first"`` only so
the tests can show that it disagrees with brute force.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering

from .coeffring import L, IntPoly, MotivicScalar, evaluate, gaussian_multinomial, gl_class, multinomial, parabolic_order, X
from .errors import ConsistencyError, ValidationError
from .ffield import count_subspaces, field, gl_elements, gl_order, rank
from .hall import EulerFormSpec, motivic_class_total
from .protoexact import filtered as fl
from .protoexact import quiver as qv

CONVENTIONS = ("sub_first", "quotient_first")


# ---- stability data and slopes ---------------------------------------------


@dataclass(frozen=True)
class StabilityData:
    theta: tuple
    rank: tuple = None

    def __post_init__(self):
        theta = tuple(int(x) for x in self.theta)
        rank_ = tuple(int(x) for x in self.rank) if self.rank is not None else (1,) * len(theta)
        if len(rank_) != len(theta):
            raise ValidationError("theta and rank weights must have the same length")
        if any(r <= 0 for r in rank_):
            raise ValidationError("rank weights must be strictly positive")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "rank", rank_)

    def deg(self, alpha):
        return sum(a * b for a, b in zip(self.theta, alpha))

    def rk(self, alpha):
        return sum(a * b for a, b in zip(self.rank, alpha))

    def to_json(self):
        return {"theta": list(self.theta), "rank": list(self.rank)}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        if "theta" not in data:
            raise ValidationError("stability JSON: missing field 'theta'")
        return cls(data["theta"], data.get("rank"))


@total_ordering
class _Top:
    """The slope of a nonzero rank-0 object: above every rational."""

    def __eq__(self, other):
        return isinstance(other, _Top)

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return not isinstance(other, _Top)

    def __hash__(self):
        return hash("TOP")

    def __repr__(self):
        return "inf"


TOP = _Top()


def slope_of(alpha, s):
    alpha = tuple(alpha)
    if len(alpha) != len(s.theta):
        raise ValidationError(f"vector {alpha} does not match stability data of length {len(s.theta)}")
    if not any(alpha):
        raise ValidationError("slope of the zero class is undefined")
    r = s.rk(alpha)
    if r == 0:
        return TOP
    return Fraction(s.deg(alpha), r)


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


# ---- quiver representations: semistability and HN filtrations ------------


def is_semistable(E, s):
    """No proper nonzero subrepresentation has slope > slope(E)."""
    if not any(E.dim):
        return True
    mu = slope_of(E.dim, s)
    for sub in qv.subobjects(E):
        d = sub.dim
        if any(d) and d != E.dim and slope_of(d, s) > mu:
            return False
    return True


@dataclass(frozen=True)
class HNFiltration:
    steps: tuple  # arrow-closed subspace tuples 0 < F_1 < ... < F_n = E
    type: tuple  # dimension vectors of the subquotients

    def to_json(self):
        return {"type": [list(a) for a in self.type],
                "steps": [[[list(r) for r in U] for U in spaces] for spaces in self.steps]}


def hn_filtration(E, s):
    """HN flag by repeated extraction of the maximal destabilizing subobject.

    At each step the candidate with maximal slope, then maximal rank, is
    taken; a second candidate with the same (slope, rank) raises
    ConsistencyError (the HN flag is unique).
    """
    F = E.field
    subs = qv.subobjects(E)
    current = tuple(() for _ in E.dim)
    cur_dim = (0,) * len(E.dim)
    steps, types = [], []
    while cur_dim != E.dim:
        best, best_key, ties = None, None, 0
        for sub in subs:
            d = sub.dim
            if d == cur_dim or not qv.contains(F, sub.spaces, current):
                continue
            rel = _sub(d, cur_dim)
            key = (slope_of(rel, s), s.rk(rel))
            if best_key is None or key > best_key:
                best, best_key, ties = sub, key, 1
            elif key == best_key:
                ties += 1
        if ties != 1:
            raise ConsistencyError(f"HN step not unique: {ties} subobjects attain {best_key}")
        types.append(_sub(best.dim, cur_dim))
        steps.append(best.spaces)
        current, cur_dim = best.spaces, best.dim
    return HNFiltration(tuple(steps), tuple(types))


def is_hn_type(tau, s):
    slopes = [slope_of(a, s) for a in tau]
    return all(x > y for x, y in zip(slopes, slopes[1:]))


def _nonzero_below(alpha):
    """Nonzero effective vectors beta <= alpha, deterministic order."""
    out = []

    def rec(i, acc):
        if i == len(alpha):
            if any(acc):
                out.append(tuple(acc))
            return
        for v in range(alpha[i] + 1):
            rec(i + 1, acc + [v])

    rec(0, [])
    return out


def compositions(alpha):
    """All ordered decompositions of alpha into nonzero effective vectors."""
    alpha = tuple(alpha)
    if not any(alpha):
        return [()]
    out = []
    for first in _nonzero_below(alpha):
        for rest in compositions(_sub(alpha, first)):
            out.append((first,) + rest)
    return out


def hn_types(alpha, s):
    """Decompositions with strictly decreasing slopes; the one-step type first."""
    alpha = tuple(alpha)
    if any(a < 0 for a in alpha):
        raise ValidationError("HN types need an effective class")
    if not any(alpha):
        return []
    found = [tau for tau in compositions(alpha) if is_hn_type(tau, s)]
    return sorted(found, key=lambda tau: (len(tau), [[-x for x in a] for a in tau]))


def _twist_exponent(chi_op, tau, convention):
    e = 0
    for i in range(len(tau)):
        for j in range(i + 1, len(tau)):
            x, y = (tau[i], tau[j]) if convention == "sub_first" else (tau[j], tau[i])
            e += chi_op(x, y)
    return e


def semistable_motivic_class(quiver, alpha, s, method="recursive", convention="sub_first"):
    """[ss M_alpha] from the HN recursion or from Reineke's inversion formula."""
    if convention not in CONVENTIONS:
        raise ValidationError(f"unknown twist convention {convention!r}")
    alpha = tuple(alpha)
    if len(alpha) != quiver.n or any(a < 0 for a in alpha):
        raise ValidationError(f"bad dimension vector {alpha}")
    if method == "recursive":
        return _ss_recursive(quiver, s, convention, alpha)
    if method == "inversion":
        return _ss_inversion(quiver, s, convention, alpha)
    raise ValidationError(f"unknown method {method!r}")


def _chi_op(quiver):
    spec = EulerFormSpec(quiver)
    return spec.chi_op


@lru_cache(maxsize=None)
def _ss_recursive(quiver, s, convention, alpha):
    if not any(alpha):
        return MotivicScalar(1)
    chi_op = _chi_op(quiver)
    out = motivic_class_total(quiver, alpha)
    for tau in hn_types(alpha, s):
        if len(tau) == 1:
            continue
        term = L ** (-_twist_exponent(chi_op, tau, convention))
        for a in tau:
            term = term * _ss_recursive(quiver, s, convention, a)
        out = out - term
    return out


def reineke_compositions(alpha, s):
    """tau with every proper partial sum of slope > mu(alpha)."""
    mu = slope_of(alpha, s)
    out = []
    for tau in compositions(alpha):
        acc, ok = (0,) * len(alpha), True
        for a in tau[:-1]:
            acc = _add(acc, a)
            if not slope_of(acc, s) > mu:
                ok = False
                break
        if ok:
            out.append(tau)
    return out


def _ss_inversion(quiver, s, convention, alpha):
    if not any(alpha):
        return MotivicScalar(1)
    chi_op = _chi_op(quiver)
    out = MotivicScalar(0)
    for tau in reineke_compositions(alpha, s):
        term = L ** (-_twist_exponent(chi_op, tau, convention))
        for a in tau:
            term = term * motivic_class_total(quiver, a)
        out = out + term if len(tau) % 2 else out - term
    return out


def semistable_class_checked(quiver, alpha, s):
    a = semistable_motivic_class(quiver, alpha, s, "recursive")
    b = semistable_motivic_class(quiver, alpha, s, "inversion")
    if a != b:
        raise ConsistencyError(f"HN recursion and inversion disagree at {alpha}: {a} vs {b}")
    return a


def hn_stratum_class(quiver, tau, s, convention="sub_first"):
    term = L ** (-_twist_exponent(_chi_op(quiver), tau, convention))
    for a in tau:
        term = term * semistable_motivic_class(quiver, a, s, "recursive", convention)
    return term


def count_semistable_bruteforce(quiver, alpha, s, q):
    """sum of 1/#Aut over semistable iso classes of dimension alpha."""
    table = qv.enumerate_reps(quiver, tuple(alpha), q)
    total = Fraction(0)
    for rep, aut in zip(table.representatives, table.aut_orders):
        if is_semistable(rep, s):
            total += Fraction(1, aut)
    return total


def hn_stratum_counts(quiver, alpha, s, q):
    """Groupoid count of each HN stratum, classifying every iso class by hn_filtration."""
    table = qv.enumerate_reps(quiver, tuple(alpha), q)
    out = {}
    for rep, aut in zip(table.representatives, table.aut_orders):
        tau = hn_filtration(rep, s).type
        out[tau] = out.get(tau, Fraction(0)) + Fraction(1, aut)
    return out


def hn_report(quiver, alpha, s, q):
    counts = hn_stratum_counts(quiver, alpha, s, q)
    return [{"type": [list(a) for a in tau], "count": str(counts.get(tau, Fraction(0)))}
            for tau in hn_types(alpha, s)]


def all_hn_flags(E, s):
    """Every flag of subrepresentations with semistable subquotients of strictly decreasing slope."""
    F = E.field
    subs = qv.subobjects(E)
    out = []

    def quotient_semistable(small, big):
        Q = qv.subquotient(E, small.spaces, big.spaces)
        return is_semistable(Q, s)

    def grow(chain, last_slope):
        top = chain[-1]
        if top.dim == E.dim:
            out.append(tuple(c.spaces for c in chain[1:]))
            return
        for sub in subs:
            if sub.dim == top.dim or not qv.contains(F, sub.spaces, top.spaces):
                continue
            mu = slope_of(_sub(sub.dim, top.dim), s)
            if last_slope is not None and not mu < last_slope:
                continue
            if quotient_semistable(top, sub):
                grow(chain + [sub], mu)

    zero = next(x for x in subs if not any(x.dim))
    grow([zero], None)
    return out


# ---- flags and period domains --------------------------------------------


@dataclass(frozen=True)
class FlagType:
    """Flags V_1 < ... < V_n = K^r with dim V_i/V_{i-1} = delta_i; graded piece i has weight weights[i]."""

    r: int
    delta: tuple
    weights: tuple = None

    def __post_init__(self):
        delta = tuple(int(d) for d in self.delta)
        if any(d <= 0 for d in delta) or sum(delta) != self.r:
            raise ValidationError(f"delta {delta} is not a composition of r = {self.r}")
        weights = tuple(Fraction(w) for w in self.weights) if self.weights is not None else None
        if weights is not None and len(weights) != len(delta):
            raise ValidationError("need one weight per graded piece")
        if weights is not None and any(a < b for a, b in zip(weights, weights[1:])):
            # smaller steps of the flag carry larger weights (a decreasing filtration read upwards)
            raise ValidationError(f"weights {[str(w) for w in weights]} must be non-increasing along the flag")
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "weights", weights)

    def slope(self, graded):
        return fl.slope(graded, self.weights)


def flag_groupoid_class(ft):
    """[GL_r/P_delta] [B P_delta] = gaussian(r; delta) / #P_delta."""
    return MotivicScalar(gaussian_multinomial(ft.r, ft.delta)) / parabolic_order(ft.delta)


def count_flags_bruteforce(q, r, delta):
    """Number of F_q-flags of type delta in F_q^r, by enumeration."""
    return len(fl.flags(field(q), r, delta))


def stabilizer_order_bruteforce(q, r, delta):
    """Order of the stabilizer in GL_r(F_q) of the standard flag of type delta."""
    F = field(q)
    blocks = []
    for k, d in enumerate(delta):
        blocks += [k] * d
    # g preserves the standard flag iff g e_j lies in span(e_i : block(i) <= block(j)); columns as vectors
    n = 0
    for g in gl_elements(F, r):
        if all(g[i][j] == 0 for i in range(r) for j in range(r) if blocks[i] > blocks[j]):
            n += 1
    return n


def _need_weights(ft):
    if ft.weights is None:
        raise ValidationError("period domains need a weight per graded piece")


def _flag_is_semistable(ft, V, subspaces):
    mu = ft.slope(ft.delta)
    for W in subspaces:
        if ft.slope(V.induced_graded_dims(W)) > mu:
            return False
    return True


def period_domain_bruteforce(ft, field_name, q, k=1):
    """Count semistable flags by enumeration.

    F_q: flags over F_{q^k}, tested against every F_q-rational subspace.
    F_1: flags over F_{q^k} tested against coordinate subspaces; with q = 1
         the flags are chains of subsets instead (the torus-fixed points).
    """
    _need_weights(ft)
    mu = ft.slope(ft.delta)
    if field_name == "F1" and q == 1:
        n = 0
        subsets = [S for S, _ in fl.coordinate_subspaces(ft.r)]
        for chain in fl.subset_flags(ft.r, ft.delta):
            if all(not ft.slope(fl.subset_induced_graded(chain, S)) > mu for S in subsets):
                n += 1
        return n
    if not qv.is_prime(q):
        raise ValidationError("brute-force period domains need a prime q")
    F = field(q, k)
    if field_name == "Fq":
        tests = fl.rational_subspaces(F, ft.r, q)
    elif field_name == "F1":
        tests = [B for _, B in fl.coordinate_subspaces(ft.r)]
    else:
        raise ValidationError(f"unknown field {field_name!r}; use Fq or F1")
    n = 0
    for chain in fl.flags(F, ft.r, ft.delta):
        V = fl.FilteredSpace(q, ft.r, chain, k)
        if _flag_is_semistable(ft, V, tests):
            n += 1
    return n


def graded_classes(delta):
    """Nonzero vectors a with 0 <= a_i <= delta_i: classes of filtered subobjects."""
    return _nonzero_below(tuple(delta))


def period_reineke_types(ft):
    """tau = (a_1, ..., a_m), sum = delta, every proper partial sum of slope > mu(delta)."""
    _need_weights(ft)
    mu = ft.slope(ft.delta)
    out = []
    for tau in compositions(ft.delta):
        acc, ok = (0,) * len(ft.delta), True
        for a in tau[:-1]:
            acc = _add(acc, a)
            if not ft.slope(acc) > mu:
                ok = False
                break
        if ok:
            out.append(tau)
    return out


def filtered_twist_exponent(tau, convention="sub_first"):
    """Exponent of t for a type tau of filtered classes.

    The relative Euler form of filtered spaces against their underlying
    spaces is chi_rel(a, b) = -sum_{k<l} a_k b_l, so
    -sum_{i<j} chi_op_rel(a_i, a_j) = sum_{i<j} sum_{k<l} (a_j)_k (a_i)_l.
    """
    e = 0
    for i in range(len(tau)):
        for j in range(i + 1, len(tau)):
            sub, quo = (tau[i], tau[j]) if convention == "sub_first" else (tau[j], tau[i])
            n = len(sub)
            e += sum(quo[k] * sub[l] for k in range(n) for l in range(k + 1, n))
    return e


def flag_ingredient(a):
    """Sum over S_|a| / S_a of t^length: the flag variety of the filtered class a."""
    parts = [x for x in a if x]
    return gaussian_multinomial(sum(parts), parts)


def period_domain_terms(ft, convention="sub_first"):
    """(sign, t-exponent, rank composition eta, t-polynomial) per inversion term."""
    out = []
    for tau in period_reineke_types(ft):
        eta = tuple(sum(a) for a in tau)
        poly = IntPoly.monomial(filtered_twist_exponent(tau, convention))
        for a in tau:
            poly = poly * flag_ingredient(a)
        out.append(((-1) ** (len(tau) - 1), tau, eta, poly))
    return out


def period_domain_polynomial(ft, field_name, q=None, convention="sub_first"):
    """Identity value of the equivariant formula: a polynomial in t.

    Over F_q the index [GL_r(F_q) : P_eta(F_q)] is a number depending on q;
    over F_1 it is the multinomial [S_r : S_eta].
    """
    out = IntPoly()
    for sign, _tau, eta, poly in period_domain_terms(ft, convention):
        if field_name == "Fq":
            if q is None:
                raise ValidationError("the F_q formula needs q")
            index = gaussian_multinomial(ft.r, eta)(q)
        elif field_name == "F1":
            index = multinomial(ft.r, eta)
        else:
            raise ValidationError(f"unknown field {field_name!r}; use Fq or F1")
        out = out + poly * (sign * index)
    return out


def period_domain_count(ft, field_name="Fq", mode="recursion", q=2, k=1, convention="sub_first"):
    """Recursion mode returns the t-polynomial; bruteforce mode an integer count.

    For ``mode="both"`` the polynomial is evaluated at t = q^k (t = 1 for F_1
    with q = 1) and compared against enumeration; disagreement raises.
    """
    if mode == "recursion":
        return period_domain_polynomial(ft, field_name, None if field_name == "F1" else q, convention)
    if mode == "bruteforce":
        return period_domain_bruteforce(ft, field_name, q, k)
    if mode == "both":
        poly = period_domain_polynomial(ft, field_name, None if field_name == "F1" else q, convention)
        t = q**k
        brute = period_domain_bruteforce(ft, field_name, q, k)
        if poly(t) != brute:
            raise ConsistencyError(f"period domain {ft}: formula gives {poly(t)} at t={t}, enumeration {brute}")
        return brute
    raise ValidationError(f"unknown mode {mode!r}")

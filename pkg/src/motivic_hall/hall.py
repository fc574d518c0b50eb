"""Ringel-Hall algebras of rep_{F_q}(Q), the twisted group ring, and the
integration map between them.

Conventions (fixed once, used everywhere):
    psi(x, y)     = sum_i x_i y_i - sum_{arrows s->t} x_s y_t
    chi_op(x, y)  = psi(y, x)
    (f * g)(E)    = sum_{B <= E} f(B) g(E/B)        subobject first
    T^a . T^b     = zeta^{chi_op(a, b)} T^{a+b}     zeta = L^-1 or q^-1
    int 1_A       = T^{dim A} / #Aut(A)
"""

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product

from .coeffring import L, MotivicScalar, gl_class
from .errors import ValidationError
from .protoexact import quiver as qv
from .protoexact.quiver import Quiver, QuiverRep

DEFAULT_TRUNCATION = 6


# ---- Euler form -----------------------------------------------------------


@dataclass(frozen=True)
class EulerFormSpec:
    quiver: Quiver

    @property
    def matrix(self):
        return self.quiver.euler_matrix()

    @property
    def chi_op_matrix(self):
        M = self.matrix
        n = len(M)
        return tuple(tuple(M[j][i] for j in range(n)) for i in range(n))

    def __call__(self, x, y):
        return euler_form(self, x, y)

    def chi_op(self, x, y):
        return euler_form(self, y, x)


def euler_form(spec, x, y):
    if isinstance(spec, Quiver):
        spec = EulerFormSpec(spec)
    return qv.euler_form_values(spec.quiver, tuple(x), tuple(y))


def _bilinear(M, x, y):
    return sum(x[i] * M[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))


# ---- Hall algebra ---------------------------------------------------------


def _frac(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v)
    return Fraction(v)


@dataclass(frozen=True)
class HallContext:
    quiver: Quiver
    q: int

    def to_json(self):
        return {"quiver": self.quiver.to_json(), "q": self.q}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(Quiver.from_json(data["quiver"]), int(data["q"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"Hall context JSON: missing field {exc}") from exc


class HallElement:
    """Finitely supported Q-valued function on iso classes."""

    def __init__(self, ctx, coeffs=None):
        self.ctx = ctx
        clean = {}
        for key, v in (coeffs or {}).items():
            v = _frac(v)
            if v:
                clean[key] = clean.get(key, Fraction(0)) + v
        self.coeffs = {k: v for k, v in clean.items() if v}

    @classmethod
    def indicator(cls, rep, value=1):
        ctx = HallContext(rep.quiver, rep.q)
        return cls(ctx, {qv.class_key(rep): value})

    @classmethod
    def unit(cls, ctx):
        return cls.indicator(QuiverRep.zero(ctx.quiver, ctx.q))

    def _check(self, other):
        if not isinstance(other, HallElement) or other.ctx != self.ctx:
            raise ValidationError("Hall elements from different contexts")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return HallElement(self.ctx, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return HallElement(self.ctx, {k: v * _frac(c) for k, v in self.coeffs.items()})

    def __mul__(self, other):
        return hall_product(self, other)

    def __eq__(self, other):
        return isinstance(other, HallElement) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __getitem__(self, rep):
        key = qv.class_key(rep) if isinstance(rep, QuiverRep) else rep
        return self.coeffs.get(key, Fraction(0))

    def support_dims(self):
        return sorted({k[0] for k in self.coeffs})

    def items(self):
        return sorted(self.coeffs.items())

    def __repr__(self):
        return f"HallElement({len(self.coeffs)} terms over F_{self.ctx.q})"

    def to_json(self):
        return {
            "context": self.ctx.to_json(),
            "coeffs": [
                {"class": qv.rep_from_key(self.ctx.quiver, self.ctx.q, k).to_json(), "value": str(v)}
                for k, v in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        ctx = HallContext.from_json(data["context"])
        coeffs = {}
        for entry in data.get("coeffs", []):
            rep = QuiverRep.from_json(ctx.quiver, entry["class"])
            if rep.q != ctx.q:
                raise ValidationError("Hall element JSON: class field size differs from context")
            key = qv.class_key(rep)
            coeffs[key] = coeffs.get(key, Fraction(0)) + _frac(entry["value"])
        return cls(ctx, coeffs)


def hall_product(phi, psi):
    """(phi * psi)(E) = sum over subobjects B of E of phi(B) psi(E/B)."""
    phi._check(psi)
    ctx = phi.ctx
    targets = sorted({tuple(a + b for a, b in zip(x, y)) for x in phi.support_dims() for y in psi.support_dims()})
    out = {}
    for gamma in targets:
        table = qv.enumerate_reps(ctx.quiver, gamma, ctx.q)
        for rep in table.representatives:
            key = (rep.dim, rep.mats)
            total = Fraction(0)
            for sub, quot, _ in qv.subobject_classes(ctx.quiver, ctx.q, key):
                a = phi.coeffs.get(sub)
                if a:
                    b = psi.coeffs.get(quot)
                    if b:
                        total += a * b
            if total:
                out[key] = total
    return HallElement(ctx, out)


def basis(ctx, bound):
    """Indicators of all iso classes of total dimension <= bound."""
    out = []
    for alpha in qv.vectors_up_to(ctx.quiver.n, bound):
        for rep in qv.enumerate_reps(ctx.quiver, alpha, ctx.q).representatives:
            out.append(HallElement.indicator(rep))
    return out


def motivic_class_total(quiver, alpha):
    """[V_alpha / GL_alpha] = L^{dim V_alpha} / prod_i [GL_{alpha_i}]."""
    alpha = tuple(alpha)
    if len(alpha) != quiver.n or any(a < 0 for a in alpha):
        raise ValidationError(f"bad dimension vector {alpha}")
    out = L ** quiver.rep_space_dim(alpha)
    for a in alpha:
        out = out / gl_class(a)
    return out


def groupoid_count(quiver, alpha, q):
    return qv.enumerate_reps(quiver, tuple(alpha), q).groupoid_cardinality()


# ---- twisted group ring ---------------------------------------------------


def _vec(a):
    return tuple(int(x) for x in a)


@dataclass
class TwistedSeries:
    """sum_alpha c_alpha T^alpha in the twisted ring, truncated at total dimension ``trunc``.

    ``base`` is "motivic" (coefficients MotivicScalar, zeta = L^-1) or an
    integer q (coefficients Fraction, zeta = 1/q).
    """

    chi_op: tuple
    base: object = "motivic"
    trunc: int = DEFAULT_TRUNCATION
    coeffs: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.chi_op = tuple(tuple(int(x) for x in row) for row in self.chi_op)
        clean = {}
        for a, v in self.coeffs.items():
            a = _vec(a)
            if len(a) != len(self.chi_op) or any(x < 0 for x in a):
                raise ValidationError(f"bad exponent {a} in twisted series")
            if sum(a) > self.trunc:
                continue
            v = self._scalar(v)
            if v:
                clean[a] = v
        self.coeffs = clean

    def _scalar(self, v):
        if self.base == "motivic":
            return v if isinstance(v, MotivicScalar) else MotivicScalar._coerce(v) if isinstance(v, int) else _bad(v)
        return _frac(v)

    @classmethod
    def for_quiver(cls, quiver, base="motivic", trunc=DEFAULT_TRUNCATION, coeffs=None):
        return cls(EulerFormSpec(quiver).chi_op_matrix, base, trunc, dict(coeffs or {}))

    def zeta_power(self, e):
        if self.base == "motivic":
            return L ** (-e)
        return Fraction(self.base) ** (-e)

    def _check(self, other):
        if not isinstance(other, TwistedSeries):
            raise ValidationError("not a twisted series")
        if (self.chi_op, self.base, self.trunc) != (other.chi_op, other.base, other.trunc):
            raise ValidationError("twisted series live in different rings (form, base or truncation differ)")

    def __mul__(self, other):
        return twisted_mul(self, other)

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for a, v in other.coeffs.items():
            out[a] = out[a] + v if a in out else v
        return TwistedSeries(self.chi_op, self.base, self.trunc, out)

    def __eq__(self, other):
        return isinstance(other, TwistedSeries) and (self.chi_op, self.base, self.trunc, self.coeffs) == (
            other.chi_op, other.base, other.trunc, other.coeffs)

    def __getitem__(self, alpha):
        return self.coeffs.get(_vec(alpha), 0)

    def to_json(self):
        def val(v):
            return v.to_json() if isinstance(v, MotivicScalar) else str(v)

        return {
            "chi_op": [list(r) for r in self.chi_op],
            "base": self.base,
            "trunc": self.trunc,
            "coeffs": [{"alpha": list(a), "value": val(v)} for a, v in sorted(self.coeffs.items())],
            "metadata": {"truncated_at_total_dimension": self.trunc},
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            base = data.get("base", "motivic")
            coeffs = {}
            for e in data["coeffs"]:
                v = e["value"]
                coeffs[_vec(e["alpha"])] = MotivicScalar.from_json(v) if base == "motivic" else _frac(v)
            return cls(data["chi_op"], base, int(data.get("trunc", DEFAULT_TRUNCATION)), coeffs)
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"twisted series JSON: missing field {exc}") from exc


def _bad(v):
    raise ValidationError(f"{v!r} is not a motivic scalar")


def twisted_mul(a, b):
    a._check(b)
    out = {}
    for x, u in a.coeffs.items():
        for y, v in b.coeffs.items():
            z = tuple(i + j for i, j in zip(x, y))
            if sum(z) > a.trunc:
                continue
            term = a.zeta_power(_bilinear(a.chi_op, x, y)) * u * v
            out[z] = out[z] + term if z in out else term
    return TwistedSeries(a.chi_op, a.base, a.trunc, out)


def monomial(quiver, alpha, base="motivic", trunc=DEFAULT_TRUNCATION, coeff=1):
    return TwistedSeries.for_quiver(quiver, base, trunc, {tuple(alpha): coeff})


# ---- integration ----------------------------------------------------------


def integrate_counting(phi, trunc=DEFAULT_TRUNCATION):
    """int phi = sum_A phi(A)/#Aut(A) T^{dim A}, with counting twist zeta = 1/q."""
    ctx = phi.ctx
    out = {}
    for key, v in phi.coeffs.items():
        rep = qv.rep_from_key(ctx.quiver, ctx.q, key)
        out[key[0]] = out.get(key[0], Fraction(0)) + v / qv.aut_order(rep)
    trunc = max(trunc, max((sum(a) for a in out), default=0))
    return TwistedSeries.for_quiver(ctx.quiver, ctx.q, trunc, out)


def integrate_motivic(quiver, classes, trunc=DEFAULT_TRUNCATION):
    """Send stratum classes {alpha: [X_alpha]} to sum [X_alpha] T^alpha."""
    return TwistedSeries.for_quiver(quiver, "motivic", trunc, {tuple(a): c for a, c in classes.items()})


def total_moduli_series(quiver, trunc=DEFAULT_TRUNCATION):
    """sum_alpha [M_alpha] T^alpha up to total dimension ``trunc``."""
    return integrate_motivic(
        quiver, {a: motivic_class_total(quiver, a) for a in qv.vectors_up_to(quiver.n, trunc)}, trunc)


def specialize(series, q):
    """Counting measure applied coefficientwise: motivic series -> series over Q at L = q."""
    from .coeffring import evaluate

    if series.base != "motivic":
        raise ValidationError("series is already a counting series")
    return TwistedSeries(series.chi_op, q, series.trunc, {a: evaluate(v, q) for a, v in series.coeffs.items()})


@dataclass
class CheckEntry:
    identity: str
    params: dict
    lhs: object
    rhs: object

    @property
    def ok(self):
        return self.lhs == self.rhs

    def to_json(self):
        def s(v):
            if isinstance(v, TwistedSeries):
                return v.to_json()["coeffs"]
            if hasattr(v, "format") and not isinstance(v, str):
                return v.format("L")
            if isinstance(v, dict):
                return [[s(k), s(x)] for k, x in sorted(v.items())]
            if isinstance(v, (list, tuple)):
                return [s(x) for x in v]
            return str(v)

        return {"identity": self.identity, "params": self.params, "lhs": s(self.lhs), "rhs": s(self.rhs),
                "pass": self.ok}


@dataclass
class Report:
    name: str
    entries: list

    @property
    def ok(self):
        return all(e.ok for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.ok]

    def to_json(self):
        return {"suite": self.name, "pass": self.ok, "checks": [e.to_json() for e in self.entries]}


def _label(rep):
    return f"{list(rep.dim)}:{[[list(r) for r in M] for M in rep.mats]}"


def verify_integration_morphism(quiver, bound, q):
    """int(1_A * 1_B) == int 1_A . int 1_B for all pairs with |A| + |B| <= bound."""
    ctx = HallContext(quiver, q)
    elems = basis(ctx, bound)
    entries = []
    for x, y in product(elems, elems):
        (ka,), (kb,) = x.coeffs, y.coeffs
        if sum(ka[0]) + sum(kb[0]) > bound:
            continue
        lhs = integrate_counting(x * y, bound)
        rhs = integrate_counting(x, bound) * integrate_counting(y, bound)
        A = qv.rep_from_key(quiver, q, ka)
        B = qv.rep_from_key(quiver, q, kb)
        entries.append(CheckEntry("integration map is an algebra morphism",
                                  {"quiver": str(quiver), "q": q, "A": _label(A), "B": _label(B)}, lhs, rhs))
    return Report("integration", entries)


def verify_associativity(quiver, bound, q):
    """(a*b)*c == a*(b*c) on all basis triples of total dimension <= bound."""
    ctx = HallContext(quiver, q)
    elems = basis(ctx, bound)
    entries = []
    for x, y, z in product(elems, repeat=3):
        dims = [sum(next(iter(e.coeffs))[0]) for e in (x, y, z)]
        if sum(dims) > bound:
            continue
        lhs, rhs = (x * y) * z, x * (y * z)
        labels = [_label(qv.rep_from_key(quiver, q, next(iter(e.coeffs)))) for e in (x, y, z)]
        entries.append(CheckEntry("Hall product associativity",
                                  {"quiver": str(quiver), "q": q, "triple": labels},
                                  sorted(lhs.coeffs.items()), sorted(rhs.coeffs.items())))
    return Report("assoc", entries)


def riedtmann_fibre_check(A, B):
    """sum_E g^E_{A,B}/#Aut(E) against q^{ext1(B,A) - hom(B,A)} / (#Aut A #Aut B).

    g^E_{A,B} counts subobjects of E isomorphic to A with quotient isomorphic to B.
    """
    if (A.quiver, A.q) != (B.quiver, B.q):
        raise ValidationError("representations live over different quivers or fields")
    quiver, q = A.quiver, A.q
    ka, kb = qv.class_key(A), qv.class_key(B)
    gamma = tuple(a + b for a, b in zip(A.dim, B.dim))
    table = qv.enumerate_reps(quiver, gamma, q)
    lhs = Fraction(0)
    middle = []
    for rep, aut in zip(table.representatives, table.aut_orders):
        g = sum(1 for s, t, _ in qv.subobject_classes(quiver, q, (rep.dim, rep.mats)) if s == ka and t == kb)
        if g:
            middle.append((_label(rep), g, aut))
            lhs += Fraction(g, aut)
    e, h = qv.ext1_dim(B, A), qv.hom_dim(B, A)
    rhs = Fraction(q) ** (e - h) / (qv.aut_order(A) * qv.aut_order(B))
    entry = CheckEntry("Riedtmann fibre formula", {"A": _label(A), "B": _label(B), "q": q,
                                                    "ext1(B,A)": e, "hom(B,A)": h, "middle_terms": middle},
                       lhs, rhs)
    return Report("riedtmann", [entry])


def verify_counting_measure(quiver, bound, qs=(2, 3)):
    """evaluate([M_alpha], q) equals the brute-force groupoid count."""
    from .coeffring import evaluate

    entries = []
    for q in qs:
        for alpha in qv.vectors_up_to(quiver.n, bound):
            entries.append(CheckEntry("counting measure on [V_alpha/GL_alpha]",
                                      {"quiver": str(quiver), "alpha": list(alpha), "q": q},
                                      evaluate(motivic_class_total(quiver, alpha), q),
                                      groupoid_count(quiver, alpha, q)))
    return Report("counting", entries)

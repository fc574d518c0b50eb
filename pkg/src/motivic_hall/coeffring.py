"""Exact scalars: integer polynomials in L (or t) and the localized ring
Z[L][L^-1, (L^n - 1)^-1] where motivic classes of quiver moduli live.

Everything is arbitrary precision; rationals are ``fractions.Fraction``.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd

from .errors import DomainError, HallError, ValidationError


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPoly:
    """Immutable polynomial with integer coefficients, stored low degree first.

    The zero polynomial has degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, dict):
            top = max((int(e) for e, c in coeffs.items() if c), default=-1)
            dense = [0] * (top + 1)
            for e, c in coeffs.items():
                e = int(e)
                if e < 0:
                    raise ValidationError("negative exponent in IntPoly")
                dense[e] += int(c)
            coeffs = dense
        object.__setattr__(self, "coeffs", _strip(int(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, n, c=1):
        return cls((0,) * n + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, n):
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    @staticmethod
    def _coerce(other):
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = IntPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod_exact(self, other):
        """Division over Q; returns (quotient, remainder) as rational-coefficient lists."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        quo = [Fraction(0)] * max(len(rem) - other.degree, 0)
        lc = other.lc
        for k in range(len(quo) - 1, -1, -1):
            c = rem[k + other.degree] / lc
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return quo, rem[: other.degree] if other.degree > 0 else []

    def exact_div(self, other):
        """self / other, which must be an exact division in Z[x]."""
        quo, rem = self.divmod_exact(other)
        if any(rem) or any(c.denominator != 1 for c in quo):
            raise HallError(f"{self} is not divisible by {other} in Z[x]")
        return IntPoly(int(c) for c in quo)

    def divides(self, other):
        """True if self divides other in Z[x]."""
        quo, rem = other.divmod_exact(self)
        return not any(rem) and all(c.denominator == 1 for c in quo)

    @property
    def content(self):
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        c = self.content
        if self.lc < 0:
            c = -c
        return IntPoly(x // c for x in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_palindromic(self):
        return self.coeffs == self.coeffs[::-1]

    def format(self, var="L"):
        if not self.coeffs:
            return "0"
        terms = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format("t")

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def to_json(self):
        return {str(e): str(c) for e, c in enumerate(self.coeffs) if c}

    @classmethod
    def from_json(cls, data):
        try:
            return cls({int(e): int(c) for e, c in data.items()})
        except (AttributeError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad IntPoly JSON: {data!r}") from exc


def poly_gcd(a, b):
    """Primitive gcd in Z[x] with positive leading coefficient (Euclid over Q)."""
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        _, rem = a.divmod_exact(b)
        den = 1
        for c in rem:
            den = den * c.denominator // gcd(den, c.denominator)
        r = IntPoly(int(c * den) for c in rem)
        a, b = b, r.primitive()
    return a


X = IntPoly((0, 1))
ONE = IntPoly((1,))


@lru_cache(maxsize=None)
def cyclotomic(n):
    """The n-th cyclotomic polynomial."""
    p = X**n - 1
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


def is_admissible_denominator(den):
    """Does ``den`` divide some L^a * prod (L^n - 1)?

    Equivalently, is it +-L^a times a product of cyclotomic polynomials.
    """
    if den.is_zero():
        return False
    while den[0] == 0:
        den = IntPoly(den.coeffs[1:])
    n = 1
    while den.degree > 0:
        phi = cyclotomic(n)
        if phi.degree > den.degree:
            return False
        while phi.divides(den):
            den = den.exact_div(phi)
        n += 1
    return abs(den.lc) == 1


class MotivicScalar:
    """Reduced fraction num/den of integer polynomials in L.

    The denominator is primitive with positive leading coefficient, coprime to
    the numerator, and divides a product of L and (L^n - 1)'s.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE, _reduced=False):
        num = IntPoly._coerce(num) if not isinstance(num, IntPoly) else num
        den = IntPoly._coerce(den) if not isinstance(den, IntPoly) else den
        if num is NotImplemented or den is NotImplemented:
            raise ValidationError("MotivicScalar needs integer polynomials")
        if den.is_zero():
            raise DomainError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = ONE
            else:
                g = poly_gcd(num, den)
                num, den = num.exact_div(g), den.exact_div(g)
                c = den.content if den.lc > 0 else -den.content
                if c != 1:
                    # den is admissible only if c = +-1 after reduction
                    if num.content % abs(c):
                        raise DomainError(f"denominator {den} has non-unit content")
                    num = IntPoly(x // c for x in num.coeffs)
                    den = IntPoly(x // c for x in den.coeffs)
            if not is_admissible_denominator(den):
                raise DomainError(f"denominator {den.format('L')} is not a product of L and (L^n - 1) factors")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("MotivicScalar is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, MotivicScalar):
            return other
        if isinstance(other, (int, IntPoly)):
            return MotivicScalar(other, ONE, _reduced=True)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("MotivicScalar", self.num.coeffs, self.den.coeffs))

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return MotivicScalar(self.num + other.num, self.den)
        return MotivicScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return MotivicScalar(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return MotivicScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DomainError("division by zero")
        return MotivicScalar(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return MotivicScalar(self.num**n, self.den**n, _reduced=True)

    def is_polynomial(self):
        return self.den == ONE

    def evaluate(self, q):
        return evaluate(self, q)

    def format(self, var="L"):
        if self.den == ONE:
            return self.num.format(var)
        num = self.num.format(var)
        if len(self.num.coeffs) - sum(1 for c in self.num.coeffs if c == 0) > 1:
            num = f"({num})"
        return f"{num}/({self.den.format(var)})"

    def __str__(self):
        return self.format("L")

    def __repr__(self):
        return f"MotivicScalar({self.format('L')})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(IntPoly.from_json(data["num"]), IntPoly.from_json(data["den"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad MotivicScalar JSON: {data!r}") from exc


L = MotivicScalar(X)
T = L  # Tate variable on the character side; same ring


def evaluate(s, q):
    """Counting measure: substitute L = q and return an exact rational."""
    if isinstance(s, QScalar):
        return s.evaluate(q)
    if not isinstance(s, MotivicScalar):
        s = MotivicScalar._coerce(s)
    if isinstance(q, int):
        q = Fraction(q)
    den = s.den(q)
    if den == 0:
        raise DomainError(f"{s} has a pole at L = {q}")
    return Fraction(s.num(q)) / den


def gl_class(n):
    """[GL_n] = L^(n(n-1)/2) * prod_{k=1..n} (L^k - 1)."""
    if n < 0:
        raise ValidationError("GL_n needs n >= 0")
    p = X ** (n * (n - 1) // 2)
    for k in range(1, n + 1):
        p = p * (X**k - 1)
    return MotivicScalar(p, ONE, _reduced=True)


def _q_factorial(n):
    p = ONE
    for k in range(1, n + 1):
        p = p * (X**k - 1)
    return p


def gaussian_multinomial(r, delta):
    """(t^r - 1)...(t - 1) / prod_i (t^{d_i} - 1)...(t - 1)."""
    delta = tuple(delta)
    if any(d <= 0 for d in delta) or sum(delta) != r:
        raise ValidationError(f"{delta} is not a composition of {r}")
    den = ONE
    for d in delta:
        den = den * _q_factorial(d)
    return _q_factorial(r).exact_div(den)


def multinomial(r, delta):
    out = factorial(r)
    for d in delta:
        out //= factorial(d)
    return out


def parabolic_order(delta):
    """#P_delta = L^(sum_{i<j} d_i d_j) * prod [GL_{d_i}] for the block upper triangular parabolic."""
    delta = tuple(delta)
    e = sum(delta[i] * delta[j] for i in range(len(delta)) for j in range(i + 1, len(delta)))
    out = L**e
    for d in delta:
        out = out * gl_class(d)
    return out


class QScalar:
    """Q tensor the localized ring: c * s with c rational and s a MotivicScalar.

    Canonical form: s has primitive numerator with positive leading
    coefficient (or s = 0 and c = 0).  Class-function values live here, since
    induction and inner products divide by group orders.
    """

    __slots__ = ("c", "s")

    def __init__(self, value=0, c=1):
        c = Fraction(c)
        if isinstance(value, QScalar):
            c, value = c * value.c, value.s
        elif isinstance(value, Fraction):
            c, value = c * value, ONE
        if not isinstance(value, MotivicScalar):
            value = MotivicScalar._coerce(value)
            if value is NotImplemented:
                raise ValidationError("QScalar needs a rational or a motivic scalar")
        if not value or not c:
            c, value = Fraction(0), MotivicScalar(0)
        else:
            k = value.num.content
            if value.num.lc < 0:
                k = -k
            if k != 1:
                c *= k
                value = MotivicScalar(IntPoly(x // k for x in value.num.coeffs), value.den, _reduced=True)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "s", value)

    def __setattr__(self, name, value):
        raise AttributeError("QScalar is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, QScalar):
            return other
        if isinstance(other, (int, Fraction, IntPoly, MotivicScalar)):
            return QScalar(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.c == other.c and self.s == other.s

    def __hash__(self):
        return hash(("QScalar", self.c, self.s))

    def __bool__(self):
        return bool(self.c)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.c:
            return other
        if not other.c:
            return self
        D = self.c.denominator * other.c.denominator // gcd(self.c.denominator, other.c.denominator)
        a, b = int(self.c * D), int(other.c * D)
        return QScalar(self.s * a + other.s * b, Fraction(1, D))

    __radd__ = __add__

    def __neg__(self):
        return QScalar(self.s, -self.c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QScalar(self.s * other.s, self.c * other.c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.c:
            raise DomainError("division by zero")
        return QScalar(self.s / other.s, self.c / other.c)

    def evaluate(self, q):
        return self.c * evaluate(self.s, q)

    def format(self, var="L"):
        if not self.c or self.s == 1:
            return str(self.c)
        if self.c == 1:
            return self.s.format(var)
        if self.c == -1:
            return f"-({self.s.format(var)})"
        return f"{self.c}*({self.s.format(var)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"QScalar({self.format('L')})"

    def to_json(self):
        out = self.s.to_json()
        if self.c != 1:
            out["scale"] = str(self.c)
        return out

    @classmethod
    def from_json(cls, data):
        try:
            return cls(MotivicScalar.from_json(data), Fraction(data.get("scale", "1")))
        except (ValueError, ZeroDivisionError, AttributeError) as exc:
            raise ValidationError(f"bad scalar JSON: {data!r}") from exc

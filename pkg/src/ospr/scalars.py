"""Exact arithmetic in the deformation coefficient field.

The whole library computes over K = Q(q^{1/2})[s] / (s^2 - q^{1/2} - q^{-1/2}):
Laurent polynomials in q^{1/2} with rational coefficients, their fraction
field, and a quadratic extension by one formal square root ``s``.  Every
exponent of q is stored as an integer counting q^{1/2} units, so the
half-integral weights that show up in the B-type data never need a second
representation.

Nothing here is floating point.  Equality means equality of normalized
representatives; random evaluation (``eval_qlaurent`` and friends) plugs in
exact rationals and is used by the randomized identity checks.
"""

from __future__ import annotations

from fractions import Fraction

try:  # gmpy2 is much faster for big rational arithmetic when present
    from gmpy2 import mpq as Frac  # type: ignore
except ImportError:  # pragma: no cover
    Frac = Fraction

_ZERO = Frac(0)
_ONE = Frac(1)


class DenominatorVanishes(ArithmeticError):
    """A substituted denominator evaluated to zero; callers resample."""


def _frac_gcd(a, b):
    # gcd of two rationals, nonnegative; gcd(0, x) = |x|
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    if not a:
        return b
    if not b:
        return a
    an, ad = a.numerator, a.denominator
    bn, bd = b.numerator, b.denominator
    from math import gcd, lcm

    return Frac(gcd(an, bn), lcm(ad, bd))


class QLaurent:
    """Laurent polynomial in x = q^{1/2} with Fraction coefficients.

    Stored as a dict mapping integer exponents (of q^{1/2}) to nonzero
    coefficients.  Immutable by convention: no method mutates self.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[e] = Frac(v)
        self.c = c

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero():
        return QLaurent()

    @staticmethod
    def one():
        return QLaurent({0: 1})

    @staticmethod
    def const(v):
        return QLaurent({0: v})

    @staticmethod
    def q_half_power(e):
        """q^{e/2} as a monomial (e counts q^{1/2} units)."""
        return QLaurent({e: 1})

    # -- predicates ---------------------------------------------------
    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def is_one(self):
        return self.c == {0: _ONE}

    def min_exp(self):
        return min(self.c) if self.c else 0

    def max_exp(self):
        return max(self.c) if self.c else 0

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        c = dict(self.c)
        for e, v in other.c.items():
            w = c.get(e)
            if w is None:
                c[e] = v
            else:
                w = w + v
                if w:
                    c[e] = w
                else:
                    del c[e]
        r = QLaurent.__new__(QLaurent)
        r.c = c
        return r

    def __neg__(self):
        r = QLaurent.__new__(QLaurent)
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not (self.c and other.c):
            return QLaurent()
        c = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = c.get(e)
                if w is None:
                    c[e] = v1 * v2
                else:
                    w = w + v1 * v2
                    if w:
                        c[e] = w
                    else:
                        del c[e]
        r = QLaurent.__new__(QLaurent)
        r.c = c
        return r

    def scale(self, f):
        if not f:
            return QLaurent()
        r = QLaurent.__new__(QLaurent)
        r.c = {e: v * f for e, v in self.c.items()}
        return r

    def shift(self, k):
        """Multiply by q^{k/2}."""
        r = QLaurent.__new__(QLaurent)
        r.c = {e + k: v for e, v in self.c.items()}
        return r

    def subs_qinv(self):
        """Substitute q^{1/2} -> q^{-1/2}."""
        r = QLaurent.__new__(QLaurent)
        r.c = {-e: v for e, v in self.c.items()}
        return r

    def __eq__(self, other):
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    # -- polynomial helpers (on the shifted, exponent >= 0 view) -------
    def divmod_poly(self, other):
        """Division with remainder; both operands must have min_exp >= 0."""
        assert other.c, "division by zero polynomial"
        rem = dict(self.c)
        quot = {}
        dmax = other.max_exp()
        dlead = other.c[dmax]
        while rem and max(rem) >= dmax:
            e = max(rem)
            f = rem[e] / dlead
            quot[e - dmax] = f
            for oe, ov in other.c.items():
                t = e - dmax + oe
                w = rem.get(t, _ZERO) - f * ov
                if w:
                    rem[t] = w
                elif t in rem:
                    del rem[t]
        q = QLaurent.__new__(QLaurent)
        q.c = quot
        r = QLaurent.__new__(QLaurent)
        r.c = rem
        return q, r

    def monic(self):
        if not self.c:
            return self
        return self.scale(1 / self.c[self.max_exp()])

    def content(self):
        """gcd of coefficients, signed by the lowest-exponent coefficient."""
        if not self.c:
            return _ZERO
        g = _ZERO
        for v in self.c.values():
            g = _frac_gcd(g, v)
        if self.c[self.min_exp()] < 0:
            g = -g
        return g

    def eval(self, x):
        """Evaluate at q^{1/2} = x (a nonzero Fraction)."""
        total = _ZERO
        for e, v in self.c.items():
            total += v * x ** e
        return total

    def __repr__(self):
        return f"QLaurent({qlaurent_str(self)})"


def qlaurent_gcd(a: QLaurent, b: QLaurent) -> QLaurent:
    """Monic gcd in Q[q^{1/2}] after clearing negative exponents."""
    a = a.shift(-a.min_exp()) if a.c else a
    b = b.shift(-b.min_exp()) if b.c else b
    while b.c:
        _, r = a.divmod_poly(b)
        a, b = b, r
    return a.monic()


def qlaurent_str(p: QLaurent) -> str:
    """Canonical text form, e.g. ``3*q^{1/2} - 2`` or ``q - q^{-1}``."""
    if not p.c:
        return "0"
    parts = []
    for e in sorted(p.c, reverse=True):
        v = p.c[e]
        neg = v < 0
        av = -v if neg else v
        if e == 0:
            body = str(av)
        else:
            if e % 2 == 0:
                ex = str(e // 2)
            else:
                ex = f"{e}/2"
            qq = "q" if ex == "1" else "q^{%s}" % ex
            body = qq if av == 1 else f"{av}*{qq}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


class QRat:
    """Reduced fraction of QLaurent polynomials.

    Invariants: den is nonzero with min_exp 0 and its lowest coefficient
    equal to 1; num/den have no common polynomial factor and no common
    monomial factor.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: QLaurent, den: QLaurent = None, reduce=True):
        if den is None:
            den = QLaurent.one()
        if not den.c:
            raise ZeroDivisionError("QRat with zero denominator")
        if reduce:
            num, den = _qrat_reduce(num, den)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero():
        return QRat(QLaurent.zero(), QLaurent.one(), reduce=False)

    @staticmethod
    def one():
        return QRat(QLaurent.one(), QLaurent.one(), reduce=False)

    @staticmethod
    def const(v):
        return QRat(QLaurent.const(v), QLaurent.one(), reduce=False)

    @staticmethod
    def q_half_power(e):
        return QRat(QLaurent.q_half_power(e), QLaurent.one(), reduce=False)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __add__(self, other):
        other = _as_qrat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return QRat(self.num + other.num, self.den)
        return QRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = QRat.__new__(QRat)
        r.num = -self.num
        r.den = self.den
        return r

    def __sub__(self, other):
        other = _as_qrat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_qrat(other) - self

    def __mul__(self, other):
        other = _as_qrat(other)
        if other is NotImplemented:
            return NotImplemented
        return QRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_qrat(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("QRat division by zero")
        return QRat(self.num * other.den, self.den * other.num)

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("QRat inverse of zero")
        return QRat(self.den, self.num)

    def subs_qinv(self):
        return QRat(self.num.subs_qinv(), self.den.subs_qinv())

    def __eq__(self, other):
        other = _as_qrat(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def q_valuation(self):
        """Lowest q^{1/2}-exponent of the reduced fraction (0 for 0)."""
        if self.num.is_zero():
            return 0
        return self.num.min_exp() - self.den.min_exp()

    def eval(self, x):
        d = self.den.eval(x)
        if not d:
            raise DenominatorVanishes("q-denominator vanished")
        return self.num.eval(x) / d

    def __repr__(self):
        return f"QRat({qrat_str(self)})"


def _as_qrat(v):
    if isinstance(v, QRat):
        return v
    if isinstance(v, int) or isinstance(v, Fraction):
        return QRat.const(v)
    if isinstance(v, QLaurent):
        return QRat(v)
    if type(v).__name__ == "mpq":
        return QRat.const(v)
    return NotImplemented


def _qrat_reduce(num: QLaurent, den: QLaurent):
    if num.is_zero():
        return QLaurent.zero(), QLaurent.one()
    # strip the common monomial, moving both to exponent >= 0
    shift = min(num.min_exp(), den.min_exp())
    num = num.shift(-shift)
    den = den.shift(-shift)
    k = min(num.min_exp(), den.min_exp())
    if k:
        num = num.shift(-k)
        den = den.shift(-k)
    if not den.is_one():
        g = qlaurent_gcd(num, den)
        if g.max_exp() > 0 or g.min_exp() > 0:
            num, _ = num.divmod_poly(g)
            den, _ = den.divmod_poly(g)
    # normalize: den lowest coefficient +1, monomial part on num
    dmin = den.min_exp()
    if dmin:
        num = num.shift(-dmin)
        den = den.shift(-dmin)
    lead = den.c[den.min_exp()]
    if lead != 1:
        inv = 1 / lead
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


def qrat_str(r: QRat) -> str:
    if r.den.is_one():
        return qlaurent_str(r.num)
    return f"({qlaurent_str(r.num)})/({qlaurent_str(r.den)})"


class KScalar:
    """Element a + b*s of the quadratic extension, s^2 = q^{1/2} + q^{-1/2}."""

    __slots__ = ("a", "b")

    _S2 = None  # cached q^{1/2} + q^{-1/2}

    def __init__(self, a: QRat, b: QRat = None):
        self.a = a
        self.b = b if b is not None else QRat.zero()

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero():
        return KScalar(QRat.zero())

    @staticmethod
    def one():
        return KScalar(QRat.one())

    @staticmethod
    def const(v):
        return KScalar(QRat.const(v))

    @staticmethod
    def qh(e=1):
        """q^{e/2}."""
        return KScalar(QRat.q_half_power(e))

    @staticmethod
    def s():
        return KScalar(QRat.zero(), QRat.one())

    @staticmethod
    def s_squared():
        if KScalar._S2 is None:
            KScalar._S2 = QRat(QLaurent({1: 1, -1: 1}))
        return KScalar._S2

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_one(self):
        return self.a.is_one() and self.b.is_zero()

    def __add__(self, other):
        other = _as_kscalar(other)
        if other is NotImplemented:
            return NotImplemented
        return KScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return KScalar(-self.a, -self.b)

    def __sub__(self, other):
        other = _as_kscalar(other)
        if other is NotImplemented:
            return NotImplemented
        return KScalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return _as_kscalar(other) - self

    def __mul__(self, other):
        other = _as_kscalar(other)
        if other is NotImplemented:
            return NotImplemented
        if self.b.is_zero() and other.b.is_zero():
            return KScalar(self.a * other.a)
        s2 = KScalar.s_squared()
        a = self.a * other.a + self.b * other.b * s2
        b = self.a * other.b + self.b * other.a
        return KScalar(a, b)

    __rmul__ = __mul__

    def inverse(self):
        if self.b.is_zero():
            return KScalar(self.a.inverse())
        nrm = self.a * self.a - self.b * self.b * KScalar.s_squared()
        if nrm.is_zero():
            raise ZeroDivisionError("KScalar inverse of zero norm")
        ninv = nrm.inverse()
        return KScalar(self.a * ninv, -self.b * ninv)

    def __truediv__(self, other):
        other = _as_kscalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_kscalar(other) * self.inverse()

    def __eq__(self, other):
        other = _as_kscalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def subs_qinv(self):
        return KScalar(self.a.subs_qinv(), self.b.subs_qinv())

    def eval(self, qh_val, s_val):
        """Exact value at q^{1/2} = qh_val, s = s_val (Fractions).

        The s^2 relation has already been folded in symbolically, so this is
        a literal substitution; it is homomorphic only on the s-free part."""
        v = self.a.eval(qh_val)
        if self.b.is_zero():
            return v
        return v + self.b.eval(qh_val) * s_val

    def eval_quad(self, qh_val):
        """Homomorphic evaluation into the quadratic extension of Q."""
        r = qh_val + 1 / qh_val
        return QuadFrac(self.a.eval(qh_val),
                        _ZERO if self.b.is_zero() else self.b.eval(qh_val), r)

    def __repr__(self):
        return f"KScalar({kscalar_str(self)})"


def _as_kscalar(v):
    if isinstance(v, KScalar):
        return v
    r = _as_qrat(v)
    if r is NotImplemented:
        return NotImplemented
    return KScalar(r)


def kscalar_str(k: KScalar) -> str:
    if k.b.is_zero():
        return qrat_str(k.a)
    spart = f"({qrat_str(k.b)})*s"
    if k.a.is_zero():
        return spart
    return f"{qrat_str(k.a)} + {spart}"


K_ZERO = KScalar.zero()
K_ONE = KScalar.one()


class QuadFrac:
    """Exact pair a + b*t with t^2 = r over Q; the evaluation codomain.

    Evaluating KScalar at a rational q^{1/2} lands here (r = qh + 1/qh), so
    evaluation is an honest ring homomorphism even when s is present.
    """

    __slots__ = ("a", "b", "r")

    def __init__(self, a, b, r):
        self.a = a
        self.b = b
        self.r = r

    def is_zero(self):
        return not self.a and not self.b

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other):
        if isinstance(other, QuadFrac):
            return other
        return QuadFrac(Frac(other), _ZERO, self.r)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadFrac(self.a + o.a, self.b + o.b, self.r)

    __radd__ = __add__

    def __neg__(self):
        return QuadFrac(-self.a, -self.b, self.r)

    def __sub__(self, other):
        o = self._coerce(other)
        return QuadFrac(self.a - o.a, self.b - o.b, self.r)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadFrac(self.a * o.a + self.b * o.b * self.r,
                        self.a * o.b + self.b * o.a, self.r)

    __rmul__ = __mul__

    def inverse(self):
        nrm = self.a * self.a - self.b * self.b * self.r
        if not nrm:
            raise ZeroDivisionError("QuadFrac with zero norm")
        return QuadFrac(self.a / nrm, -self.b / nrm, self.r)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"QuadFrac({self.a}, {self.b})"


def quad_point(qh_val):
    """The relation constant and ring injections for QuadFrac at q^{1/2}=v."""
    r = qh_val + 1 / qh_val
    return QuadFrac(_ZERO, _ONE, r)


def qint(a: int, base: str = "q") -> KScalar:
    """q-integer [a] in base q or q^{1/2}: (v^a - v^-a)/(v - v^-1).

    Expanded directly as the Laurent polynomial v^{a-1} + v^{a-3} + ... so
    no division is needed; qint(-a) = -qint(a) and qint(0) = 0.
    """
    if base == "q":
        unit = 2
    elif base == "q_half":
        unit = 1
    else:
        raise ValueError(f"unknown q-integer base {base!r}")
    if a == 0:
        return KScalar.zero()
    sign = 1
    if a < 0:
        sign, a = -1, -a
    coeffs = {}
    for j in range(a):
        coeffs[(a - 1 - 2 * j) * unit] = sign
    return KScalar(QRat(QLaurent(coeffs)))


def sample_fraction(rng, small=False):
    """A random nonzero Fraction with small numerator and denominator."""
    hi = 12 if small else 60
    num = 0
    while num == 0:
        num = rng.randint(-hi, hi)
    den = rng.randint(1, 12 if small else 40)
    return Frac(num, den)


def sample_qh(rng):
    """A random value for q^{1/2} avoiding the unit circle degeneracies."""
    while True:
        v = sample_fraction(rng, small=True)
        if v not in (0, 1, -1) and v + 1 != 0:
            return v

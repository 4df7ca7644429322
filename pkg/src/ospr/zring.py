"""Polynomials and rational functions in the spectral variables.

Everything downstream of the scalar field lives in K[z, w, u, g] and its
fraction field: z and w are spectral parameters, u is the auxiliary
evaluation parameter of the L-operators, and g stands for q^c, kept as a
free invertible parameter (it is never expanded in q).

ZPoly is a sparse dict keyed by exponent 4-tuples; ZRat is a fraction of
two ZPoly.  Fractions are normalized by monomial content and by a gcd
computed with a primitive subresultant-style remainder sequence, one
variable at a time.  Equality never relies on reduction: it always
cross-multiplies, so an unreduced fraction is slower but never wrong.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import DenominatorVanishes, Frac, KScalar, K_ONE, K_ZERO, _as_kscalar, kscalar_str

VARS = ("z", "w", "u", "g")
NV = len(VARS)
VIDX = {v: i for i, v in enumerate(VARS)}
_E0 = (0, 0, 0, 0)

# term-count budget beyond which gcd reduction is skipped (equality is
# cross-multiplied, so this only trades memory for speed)
GCD_TERM_BUDGET = 400


def _unit(i):
    e = [0] * NV
    e[i] = 1
    return tuple(e)


class ZPoly:
    """Sparse polynomial over KScalar in the variables z, w, u, g."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if not v.is_zero():
                    c[e] = v
        self.c = c

    @staticmethod
    def zero():
        return ZPoly()

    @staticmethod
    def one():
        return ZPoly({_E0: K_ONE})

    @staticmethod
    def const(k):
        k = _as_kscalar(k)
        return ZPoly({_E0: k})

    @staticmethod
    def var(name, power=1):
        e = [0] * NV
        e[VIDX[name]] = power
        return ZPoly({tuple(e): K_ONE})

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def is_one(self):
        return self.c == {_E0: K_ONE} or (len(self.c) == 1 and _E0 in self.c and self.c[_E0].is_one())

    def is_const(self):
        return not self.c or (len(self.c) == 1 and _E0 in self.c)

    def const_value(self):
        return self.c.get(_E0, K_ZERO)

    def __add__(self, other):
        c = dict(self.c)
        for e, v in other.c.items():
            w = c.get(e)
            if w is None:
                c[e] = v
            else:
                w = w + v
                if w.is_zero():
                    del c[e]
                else:
                    c[e] = w
        r = ZPoly.__new__(ZPoly)
        r.c = c
        return r

    def __neg__(self):
        r = ZPoly.__new__(ZPoly)
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not (self.c and other.c):
            return ZPoly()
        c = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                w = c.get(e)
                p = v1 * v2
                if w is None:
                    if not p.is_zero():
                        c[e] = p
                else:
                    w = w + p
                    if w.is_zero():
                        del c[e]
                    else:
                        c[e] = w
        r = ZPoly.__new__(ZPoly)
        r.c = c
        return r

    def scale(self, k):
        k = _as_kscalar(k)
        if k.is_zero():
            return ZPoly()
        r = ZPoly.__new__(ZPoly)
        r.c = {e: v * k for e, v in self.c.items()}
        return r

    def __eq__(self, other):
        if not isinstance(other, ZPoly):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def vars_used(self):
        used = [False] * NV
        for e in self.c:
            for i in range(NV):
                if e[i]:
                    used[i] = True
        return [i for i in range(NV) if used[i]]

    def degree(self, vi):
        return max((e[vi] for e in self.c), default=0)

    def min_degree(self, vi):
        return min((e[vi] for e in self.c), default=0)

    def shift(self, vi, k):
        """Multiply by VARS[vi]^k (k may be negative if all exponents allow)."""
        r = ZPoly.__new__(ZPoly)
        c = {}
        for e, v in self.c.items():
            ee = list(e)
            ee[vi] += k
            assert ee[vi] >= 0, "negative exponent in ZPoly.shift"
            c[tuple(ee)] = v
        r.c = c
        return r

    def coeff_of(self, vi, k):
        """Coefficient of VARS[vi]^k, a ZPoly in the remaining variables."""
        c = {}
        for e, v in self.c.items():
            if e[vi] == k:
                ee = list(e)
                ee[vi] = 0
                c[tuple(ee)] = v
        r = ZPoly.__new__(ZPoly)
        r.c = c
        return r

    def subst_var(self, name, num: "ZPoly", den: "ZPoly" = None):
        """Substitute variable -> num/den, returning a ZRat."""
        vi = VIDX[name]
        d = self.degree(vi)
        if den is None:
            den = ZPoly.one()
        # Horner in the chosen variable
        acc_num = ZPoly.zero()
        acc_den = ZPoly.one()
        for k in range(d, -1, -1):
            ck = self.coeff_of(vi, k)
            # acc = acc * (num/den) + ck
            acc_num = acc_num * num + ck * (acc_den * den)
            acc_den = acc_den * den
        return ZRat(acc_num, acc_den)

    def eval(self, point):
        """Exact value at a sample point dict with keys qh, s, z, w, u, g."""
        zv, wv, uv, gv = point["z"], point["w"], point["u"], point["g"]
        qh, sv = point["qh"], point["s"]
        total = Frac(0)
        for e, v in self.c.items():
            m = v.eval(qh, sv)
            if e[0]:
                m *= zv ** e[0]
            if e[1]:
                m *= wv ** e[1]
            if e[2]:
                m *= uv ** e[2]
            if e[3]:
                m *= gv ** e[3]
            total += m
        return total

    def subs_qinv(self):
        r = ZPoly.__new__(ZPoly)
        r.c = {e: v.subs_qinv() for e, v in self.c.items()}
        return r

    def __repr__(self):
        return f"ZPoly({zpoly_str(self)})"


def zpoly_str(p: ZPoly) -> str:
    if not p.c:
        return "0"
    terms = []
    for e in sorted(p.c, reverse=True):
        v = p.c[e]
        mono = "*".join(
            (VARS[i] if e[i] == 1 else f"{VARS[i]}^{e[i]}") for i in range(NV) if e[i]
        )
        ks = kscalar_str(v)
        if mono:
            ks = f"({ks})*{mono}" if not v.is_one() else mono
        terms.append(ks)
    return " + ".join(terms)


def _div_exact(p: ZPoly, d: ZPoly):
    """Exact division p / d; returns None when d does not divide p."""
    if p.is_zero():
        return ZPoly.zero()
    if d.is_zero():
        return None
    if d.is_const():
        return p.scale(d.const_value().inverse())
    if len(d.c) == 1:
        # monomial divisor
        (de, dv), = d.c.items()
        c = {}
        inv = dv.inverse()
        for e, v in p.c.items():
            ee = tuple(e[i] - de[i] for i in range(NV))
            if any(x < 0 for x in ee):
                return None
            c[ee] = v * inv
        r = ZPoly.__new__(ZPoly)
        r.c = c
        return r
    dvars = d.vars_used()
    vi = dvars[-1]
    ddeg = d.degree(vi)
    dlead = d.coeff_of(vi, ddeg)
    rem = p
    quot = ZPoly.zero()
    while not rem.is_zero():
        rdeg = rem.degree(vi)
        if rdeg < ddeg:
            return None
        rlead = rem.coeff_of(vi, rdeg)
        q = _div_exact(rlead, dlead)
        if q is None:
            return None
        qterm = q.shift(vi, rdeg - ddeg)
        quot = quot + qterm
        rem = rem - qterm * d
        if not rem.is_zero() and rem.degree(vi) >= rdeg:
            return None
    return quot


def _prem(a: ZPoly, b: ZPoly, vi):
    """Pseudo-remainder of a by b in variable vi."""
    da, db = a.degree(vi), b.degree(vi)
    blead = b.coeff_of(vi, db)
    rem = a
    while not rem.is_zero():
        dr = rem.degree(vi)
        if dr < db:
            break
        rlead = rem.coeff_of(vi, dr)
        rem = rem * blead - (rlead.shift(vi, dr - db)) * b
    return rem


def _content(p: ZPoly, vi):
    """gcd of the vi-coefficients of p (a ZPoly without vi)."""
    g = ZPoly.zero()
    for k in range(p.degree(vi) + 1):
        ck = p.coeff_of(vi, k)
        if not ck.is_zero():
            g = zpoly_gcd(g, ck)
            if g.is_const() and not g.is_zero():
                return ZPoly.one()
    return g if not g.is_zero() else ZPoly.one()


def _normalize_lead(p: ZPoly):
    if p.is_zero():
        return p
    e = max(p.c)
    return p.scale(p.c[e].inverse())


def zpoly_gcd(a: ZPoly, b: ZPoly) -> ZPoly:
    """A gcd of a and b, normalized so the lexicographically leading
    coefficient is one.  Gives up (returns 1) past a size budget."""
    if a.is_zero():
        return _normalize_lead(b)
    if b.is_zero():
        return _normalize_lead(a)
    if a.is_const() or b.is_const():
        return ZPoly.one()
    if len(a.c) > GCD_TERM_BUDGET or len(b.c) > GCD_TERM_BUDGET:
        return ZPoly.one()
    avars = set(a.vars_used())
    bvars = set(b.vars_used())
    common = sorted(avars & bvars)
    if not common:
        return ZPoly.one()
    vi = common[-1]
    ca, cb = _content(a, vi), _content(b, vi)
    pa = _div_exact(a, ca)
    pb = _div_exact(b, cb)
    cg = zpoly_gcd(ca, cb)
    # primitive remainder sequence in vi
    while not pb.is_zero():
        r = _prem(pa, pb, vi)
        if r.is_zero():
            pa = pb
            break
        r = _div_exact(r, _content(r, vi))
        if pa.degree(vi) == 0 or pb.degree(vi) == 0:
            pa = ZPoly.one()
            break
        pa, pb = pb, r
        if pb.degree(vi) == 0:
            pa = ZPoly.one()
            break
    return _normalize_lead(cg * pa)


class ZRat:
    """Fraction of ZPoly, normalized but not always fully reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num: ZPoly, den: ZPoly = None, reduce=True):
        if den is None:
            den = ZPoly.one()
        if den.is_zero():
            raise ZeroDivisionError("ZRat with zero denominator")
        if reduce:
            num, den = _zrat_reduce(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def zero():
        return ZRat(ZPoly.zero(), ZPoly.one(), reduce=False)

    @staticmethod
    def one():
        return ZRat(ZPoly.one(), ZPoly.one(), reduce=False)

    @staticmethod
    def const(k):
        return ZRat(ZPoly.const(k), ZPoly.one(), reduce=False)

    @staticmethod
    def var(name, power=1):
        if power >= 0:
            return ZRat(ZPoly.var(name, power), ZPoly.one(), reduce=False)
        return ZRat(ZPoly.one(), ZPoly.var(name, -power), reduce=False)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return (self.num - self.den).is_zero()

    def __add__(self, other):
        other = as_zrat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den is other.den or self.den.c == other.den.c:
            return ZRat(self.num + other.num, self.den)
        return ZRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = ZRat.__new__(ZRat)
        r.num = -self.num
        r.den = self.den
        return r

    def __sub__(self, other):
        other = as_zrat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return as_zrat(other) - self

    def __mul__(self, other):
        other = as_zrat(other)
        if other is NotImplemented:
            return NotImplemented
        return ZRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_zrat(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("ZRat division by zero")
        return ZRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return as_zrat(other) / self

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("ZRat inverse of zero")
        return ZRat(self.den, self.num)

    def __eq__(self, other):
        other = as_zrat(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None

    def subst_var(self, name, num: ZPoly, den: ZPoly = None):
        rn = self.num.subst_var(name, num, den)
        rd = self.den.subst_var(name, num, den)
        return rn / rd

    def eval(self, point):
        d = self.den.eval(point)
        if not d:
            raise DenominatorVanishes("spectral denominator vanished")
        return self.num.eval(point) / d

    def subs_qinv(self):
        return ZRat(self.num.subs_qinv(), self.den.subs_qinv(), reduce=False)

    def __repr__(self):
        return f"ZRat({zrat_str(self)})"


def zrat_str(r: ZRat) -> str:
    if r.den.is_one():
        return zpoly_str(r.num)
    return f"({zpoly_str(r.num)})/({zpoly_str(r.den)})"


def as_zrat(v):
    if isinstance(v, ZRat):
        return v
    if isinstance(v, ZPoly):
        return ZRat(v, reduce=False)
    if isinstance(v, (KScalar, int, Fraction)) or type(v).__name__ == "mpq":
        return ZRat.const(_as_kscalar(v))
    return NotImplemented


def _zrat_reduce(num: ZPoly, den: ZPoly):
    if num.is_zero():
        return ZPoly.zero(), ZPoly.one()
    # common monomial content
    for vi in range(NV):
        k = min(num.min_degree(vi), den.min_degree(vi))
        if k:
            num = num.shift(vi, -k)
            den = den.shift(vi, -k)
    if not den.is_one() and len(num.c) <= GCD_TERM_BUDGET and len(den.c) <= GCD_TERM_BUDGET:
        g = zpoly_gcd(num, den)
        if not g.is_one() and not g.is_const():
            qn = _div_exact(num, g)
            qd = _div_exact(den, g)
            if qn is not None and qd is not None:
                num, den = qn, qd
    # scale so the leading denominator coefficient is one
    lead = den.c[max(den.c)]
    if not lead.is_one():
        inv = lead.inverse()
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


def zrat_single_var_parts(r: ZRat, name: str):
    """View num/den as univariate in `name`: ([(k, ZPoly)], [(k, ZPoly)])."""
    vi = VIDX[name]

    def parts(p):
        out = {}
        for e, v in p.c.items():
            k = e[vi]
            ee = list(e)
            ee[vi] = 0
            out.setdefault(k, {})[tuple(ee)] = v
        return sorted((k, ZPoly(c)) for k, c in out.items())

    return parts(r.num), parts(r.den)

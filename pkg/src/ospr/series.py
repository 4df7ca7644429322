"""Truncated Laurent series in one or several spectral variables.

A TSeries knows, per variable, the window [klo, khi] on which its
coefficients have been computed, together with two exactness flags saying
whether the series is known to vanish identically below klo / above khi.
Every arithmetic operation propagates the largest window on which the
result is still fully determined by the operands; comparing two series
happens on the intersection of their reliable windows and raises
WindowMismatch when that intersection is empty.  This is what makes a
"pass" from the series checks meaningful: no coefficient that could have
been polluted by a truncated tail is ever trusted.

Coefficients are generic: KScalar, ZRat or matrices, anything with ring
operations and is_zero().
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Frac
from .zring import ZPoly, ZRat, as_zrat, zrat_single_var_parts


class WindowMismatch(ValueError):
    """The reliable windows of two series do not overlap."""


class WindowTooSmall(ValueError):
    """An operation needs a wider window than the operand carries."""


class NonUnitDenominator(ZeroDivisionError):
    """Series expansion hit a denominator with no invertible low term."""


class Win:
    """Known window of one variable plus exactness flags for the tails."""

    __slots__ = ("klo", "khi", "lo_exact", "hi_exact")

    def __init__(self, klo, khi, lo_exact=True, hi_exact=True):
        self.klo = klo
        self.khi = khi
        self.lo_exact = lo_exact
        self.hi_exact = hi_exact

    def copy(self):
        return Win(self.klo, self.khi, self.lo_exact, self.hi_exact)

    def __repr__(self):
        lo = "[" if self.lo_exact else "("
        hi = "]" if self.hi_exact else ")"
        return f"{lo}{self.klo},{self.khi}{hi}"

    def __eq__(self, other):
        return (self.klo, self.khi, self.lo_exact, self.hi_exact) == (
            other.klo, other.khi, other.lo_exact, other.hi_exact)


_EXACT_POINT = Win(0, 0, True, True)


def _mul_win(a: Win, b: Win):
    """Window of a product along one shared variable."""
    hi_bounds = [a.khi + b.khi]
    lo_bounds = [a.klo + b.klo]
    if not a.hi_exact:
        if not b.lo_exact:
            return None
        hi_bounds.append(a.khi + b.klo)
    if not b.hi_exact:
        if not a.lo_exact:
            return None
        hi_bounds.append(a.klo + b.khi)
    if not a.lo_exact:
        if not b.hi_exact:
            return None
        lo_bounds.append(a.klo + b.khi)
    if not b.lo_exact:
        if not a.hi_exact:
            return None
        lo_bounds.append(a.khi + b.klo)
    return Win(max(lo_bounds), min(hi_bounds),
               a.lo_exact and b.lo_exact, a.hi_exact and b.hi_exact)


def _add_win(a: Win, b: Win):
    big = 10 ** 9
    lo = max(-big if a.lo_exact else a.klo, -big if b.lo_exact else b.klo)
    hi = min(big if a.hi_exact else a.khi, big if b.hi_exact else b.khi)
    if lo == -big:
        lo = min(a.klo, b.klo)
    if hi == big:
        hi = max(a.khi, b.khi)
    return Win(lo, hi, a.lo_exact and b.lo_exact, a.hi_exact and b.hi_exact)


class TSeries:
    """Sparse truncated Laurent series over an arbitrary coefficient ring."""

    __slots__ = ("vars", "wins", "c")

    def __init__(self, variables, wins, coeffs):
        self.vars = tuple(variables)
        self.wins = {v: w for v, w in wins.items()}
        self.c = dict(coeffs)

    # -- constructors --------------------------------------------------
    @staticmethod
    def constant(value, variables=()):
        key = (0,) * len(variables)
        wins = {v: Win(0, 0, True, True) for v in variables}
        c = {} if _is_zero(value) else {key: value}
        return TSeries(variables, wins, c)

    @staticmethod
    def monomial(value, variables, exps):
        wins = {}
        for v, e in zip(variables, exps):
            wins[v] = Win(min(e, 0), max(e, 0), True, True)
        c = {} if _is_zero(value) else {tuple(exps): value}
        return TSeries(variables, wins, c)

    @staticmethod
    def from_coeffs(var, coeffs, klo, khi, lo_exact=True, hi_exact=False):
        c = {(e,): v for e, v in coeffs.items() if not _is_zero(v) and klo <= e <= khi}
        return TSeries((var,), {var: Win(klo, khi, lo_exact, hi_exact)}, c)

    @staticmethod
    def delta_box(var_num, var_den, reach):
        """Bounding box used when a formal delta(x/y) enters a product."""
        wins = {var_num: Win(-reach, reach, False, False),
                var_den: Win(-reach, reach, False, False)}
        return TSeries((var_num, var_den), wins, {})

    # -- structural helpers ---------------------------------------------
    def with_vars(self, variables):
        """Extend to a larger variable set (new variables enter at degree 0)."""
        variables = tuple(variables)
        pos = {v: i for i, v in enumerate(variables)}
        wins = {v: _EXACT_POINT.copy() for v in variables}
        for v, w in self.wins.items():
            wins[v] = w.copy()
        c = {}
        for e, val in self.c.items():
            ee = [0] * len(variables)
            for v, x in zip(self.vars, e):
                ee[pos[v]] = x
            c[tuple(ee)] = val
        return TSeries(variables, wins, c)

    def rename_var(self, old, new):
        assert new not in self.vars
        variables = tuple(new if v == old else v for v in self.vars)
        wins = {(new if v == old else v): w for v, w in self.wins.items()}
        return TSeries(variables, wins, self.c)

    def is_zero(self):
        return all(_is_zero(v) for v in self.c.values())

    def coeff(self, exps):
        return self.c.get(tuple(exps))

    # -- ring operations -------------------------------------------------
    def _aligned(self, other):
        if self.vars == other.vars:
            return self, other
        allv = list(self.vars)
        for v in other.vars:
            if v not in allv:
                allv.append(v)
        return self.with_vars(allv), other.with_vars(allv)

    def __add__(self, other):
        a, b = self._aligned(other)
        wins = {v: _add_win(a.wins[v], b.wins[v]) for v in a.vars}
        c = dict(a.c)
        for e, v in b.c.items():
            if e in c:
                s = c[e] + v
                if _is_zero(s):
                    del c[e]
                else:
                    c[e] = s
            else:
                c[e] = v
        r = TSeries(a.vars, wins, c)
        return r._clip()

    def __neg__(self):
        return TSeries(self.vars, {v: w.copy() for v, w in self.wins.items()},
                       {e: -v for e, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self._aligned(other)
        wins = {}
        for v in a.vars:
            w = _mul_win(a.wins[v], b.wins[v])
            if w is None:
                raise WindowMismatch(f"two-sided truncated series multiplied in {v}")
            wins[v] = w
        n = len(a.vars)
        c = {}
        for e1, v1 in a.c.items():
            for e2, v2 in b.c.items():
                e = tuple(e1[i] + e2[i] for i in range(n))
                ok = True
                for i, v in enumerate(a.vars):
                    if e[i] < wins[v].klo or e[i] > wins[v].khi:
                        ok = False
                        break
                if not ok:
                    continue
                p = v1 * v2
                if e in c:
                    s = c[e] + p
                    if _is_zero(s):
                        del c[e]
                    else:
                        c[e] = s
                elif not _is_zero(p):
                    c[e] = p
        return TSeries(a.vars, wins, c)

    def scale(self, k):
        if _is_zero_scalar(k):
            return TSeries(self.vars, {v: w.copy() for v, w in self.wins.items()}, {})
        return TSeries(self.vars, {v: w.copy() for v, w in self.wins.items()},
                       {e: _scalar_mul(v, k) for e, v in self.c.items()})

    def _clip(self):
        c = {}
        for e, v in self.c.items():
            ok = True
            for i, var in enumerate(self.vars):
                w = self.wins[var]
                if e[i] < w.klo or e[i] > w.khi:
                    ok = False
                    break
            if ok:
                c[e] = v
        self.c = c
        return self

    def truncate(self, var, klo=None, khi=None):
        old = self.wins[var]
        w = old.copy()
        if klo is not None and klo > old.klo:
            w.klo = klo
            w.lo_exact = False
        if khi is not None and khi < old.khi:
            w.khi = khi
            w.hi_exact = False
        wins = {v: (w if v == var else self.wins[v].copy()) for v in self.vars}
        r = TSeries(self.vars, wins, self.c)
        return r._clip()

    def shift_arg(self, var, factor):
        """Substitute var -> factor*var where factor is an invertible scalar."""
        i = self.vars.index(var)
        inv = None
        c = {}
        for e, v in self.c.items():
            k = e[i]
            if k >= 0:
                f = _scalar_pow(factor, k)
            else:
                if inv is None:
                    inv = factor.inverse()
                f = _scalar_pow(inv, -k)
            if f is not None:
                v = _scalar_mul(v, f)
            if not _is_zero(v):
                c[e] = v
        return TSeries(self.vars, {v: w.copy() for v, w in self.wins.items()}, c)

    # -- single-variable inversions and transcendental maps ---------------
    def _single(self):
        active = [v for v in self.vars if not (self.wins[v].klo == 0 == self.wins[v].khi
                                               and self.wins[v].lo_exact and self.wins[v].hi_exact)]
        live = {v for v in self.vars for e in self.c for v2, x in zip(self.vars, e) if v2 == v and x}
        active = [v for v in self.vars if v in live or v in active]
        if len(active) > 1:
            raise WindowMismatch("operation requires a single-variable series")
        return active[0] if active else self.vars[0] if self.vars else None

    def inverse(self, one):
        """Multiplicative inverse of a series with an invertible extreme term."""
        var = self._single()
        if var is None:
            (e, v), = self.c.items() if self.c else (((), None),)
            return TSeries.constant(v.inverse(), self.vars)
        w = self.wins[var]
        i = self.vars.index(var)
        coeffs = {e[i]: v for e, v in self.c.items()}
        if w.lo_exact:
            lead_exp = min((k for k in coeffs), default=w.klo)
            direction = 1
        elif w.hi_exact:
            lead_exp = max((k for k in coeffs), default=w.khi)
            direction = -1
        else:
            raise WindowMismatch("cannot invert a two-sided series")
        lead = coeffs.get(lead_exp)
        if lead is None or _is_zero(lead):
            raise NonUnitDenominator("series inverse with zero leading term")
        lead_inv = lead.inverse()
        if direction == 1:
            length = w.khi - lead_exp
        else:
            length = lead_exp - w.klo
        out = {-lead_exp: lead_inv}
        for n in range(1, length + 1):
            acc = None
            for j in range(1, n + 1):
                aj = coeffs.get(lead_exp + direction * j)
                if aj is None:
                    continue
                bj = out.get(-lead_exp + direction * (n - j))
                if bj is None:
                    continue
                t = aj * bj
                acc = t if acc is None else acc + t
            if acc is None:
                continue
            val = -(lead_inv * acc)
            if not _is_zero(val):
                out[-lead_exp + direction * n] = val
        if direction == 1:
            nw = Win(-lead_exp, -lead_exp + length, True, False)
        else:
            nw = Win(-lead_exp - length, -lead_exp, False, True)
        wins = {v: (nw if v == var else self.wins[v].copy()) for v in self.vars}
        c = {}
        for k, v in out.items():
            e = [0] * len(self.vars)
            e[i] = k
            c[tuple(e)] = v
        return TSeries(self.vars, wins, c)

    def exp(self, one):
        """exp of a series with zero constant term (ascending window)."""
        var = self._single()
        w = self.wins[var]
        if not w.lo_exact:
            raise WindowMismatch("exp needs an ascending series")
        i = self.vars.index(var)
        a = {e[i]: v for e, v in self.c.items()}
        assert 0 not in a or _is_zero(a[0]), "exp needs zero constant term"
        assert min(a, default=1) >= 1 or all(_is_zero(v) for k, v in a.items() if k < 1)
        hi = w.khi
        out = {0: one}
        # E' = A' E  =>  n E_n = sum_{j=1..n} j A_j E_{n-j}
        for n in range(1, hi + 1):
            acc = None
            for j in range(1, n + 1):
                aj = a.get(j)
                if aj is None:
                    continue
                ej = out.get(n - j)
                if ej is None:
                    continue
                t = _scalar_mul(aj * ej, Frac(j))
                acc = t if acc is None else acc + t
            if acc is not None:
                val = _scalar_mul(acc, Frac(1, n))
                if not _is_zero(val):
                    out[n] = val
        wins = {v: (Win(0, hi, True, w.hi_exact and False) if v == var else self.wins[v].copy())
                for v in self.vars}
        wins[var].hi_exact = False
        c = {}
        for k, v in out.items():
            e = [0] * len(self.vars)
            e[i] = k
            c[tuple(e)] = v
        return TSeries(self.vars, wins, c)

    def log(self, one):
        """log of a series with constant term one (ascending window)."""
        var = self._single()
        w = self.wins[var]
        if not w.lo_exact:
            raise WindowMismatch("log needs an ascending series")
        i = self.vars.index(var)
        a = {e[i]: v for e, v in self.c.items()}
        a0 = a.get(0)
        assert a0 is not None and (a0 - one).is_zero() if hasattr(a0, "is_zero") else True
        hi = w.khi
        out = {}
        # L' A = A'  =>  n A_n = sum_{j=1..n} j L_j A_{n-j}
        for n in range(1, hi + 1):
            rhs = a.get(n)
            acc = _scalar_mul(rhs, Frac(n)) if rhs is not None else None
            for j in range(1, n):
                lj = out.get(j)
                if lj is None:
                    continue
                anj = a.get(n - j)
                if anj is None:
                    continue
                t = _scalar_mul(lj * anj, Frac(j))
                acc = acc - t if acc is not None else -t
            if acc is not None:
                val = _scalar_mul(acc, Frac(1, n))
                if not _is_zero(val):
                    out[n] = val
        wins = {v: (Win(0, hi, True, False) if v == var else self.wins[v].copy())
                for v in self.vars}
        c = {}
        for k, v in out.items():
            e = [0] * len(self.vars)
            e[i] = k
            c[tuple(e)] = v
        return TSeries(self.vars, wins, c)

    # -- comparisons -----------------------------------------------------
    def overlap_window(self, other):
        """Per-variable exponent range on which both series are known."""
        a, b = self._aligned(other)
        big = 10 ** 9
        wins = {}
        for v in a.vars:
            wa, wb = a.wins[v], b.wins[v]
            klo = max(-big if wa.lo_exact else wa.klo, -big if wb.lo_exact else wb.klo)
            khi = min(big if wa.hi_exact else wa.khi, big if wb.hi_exact else wb.khi)
            if klo == -big:
                klo = min(wa.klo, wb.klo)
            if khi == big:
                khi = max(wa.khi, wb.khi)
            if klo > khi:
                raise WindowMismatch(f"no overlap in {v}: {wa} vs {wb}")
            wins[v] = (klo, khi)
        return a, b, wins

    def diff_witness(self, other):
        """First exponent tuple where the two series differ, or None."""
        a, b, wins = self.overlap_window(other)

        def inside(e):
            return all(wins[v][0] <= e[i] <= wins[v][1] for i, v in enumerate(a.vars))

        keys = set(k for k in a.c if inside(k)) | set(k for k in b.c if inside(k))
        for e in sorted(keys):
            va, vb = a.c.get(e), b.c.get(e)
            if va is None:
                if not _is_zero(vb):
                    return e, None, vb
            elif vb is None:
                if not _is_zero(va):
                    return e, va, None
            else:
                d = va - vb
                if not _is_zero(d):
                    return e, va, vb
        return None

    def eq_series(self, other):
        return self.diff_witness(other) is None

    def __repr__(self):
        ws = ", ".join(f"{v}:{self.wins[v]!r}" for v in self.vars)
        return f"TSeries[{ws}; {len(self.c)} terms]"


def _is_zero(v):
    if v is None:
        return True
    z = getattr(v, "is_zero", None)
    if z is not None:
        return z()
    return not v


def _is_zero_scalar(k):
    return _is_zero(k)


def _scalar_mul(v, k):
    return v * k


def _scalar_pow(base, k):
    if k == 0:
        return None
    out = base
    for _ in range(k - 1):
        out = out * base
    return out


def expand_zrat(r: ZRat, var: str, lo: int, hi: int, at_infinity=False) -> TSeries:
    """Laurent expansion of a rational function in one variable.

    Expansion is at var = 0 by default, or at var = infinity (descending
    powers).  Coefficients are ZRat in the remaining variables (exact).
    """
    if at_infinity:
        return _expand_parts(r, var, lo, hi, infinity=True)
    return _expand_parts(r, var, lo, hi, infinity=False)


def _expand_parts(r: ZRat, var: str, lo: int, hi: int, infinity: bool) -> TSeries:
    nparts, dparts = zrat_single_var_parts(r, var)
    if not nparts:
        return TSeries.from_coeffs(var, {}, lo, hi, lo_exact=not infinity, hi_exact=infinity)
    if infinity:
        # substitute var -> 1/var: exponents negate; expand ascending in the
        # mirrored exponent t = -k, then flip back
        nparts = [(-k, c) for k, c in reversed(nparts)]
        dparts = [(-k, c) for k, c in reversed(dparts)]
        mirror = _expand_ascending(nparts, dparts, -hi, -lo)
        coeffs = {-k: v for k, v in mirror.items()}
        return TSeries.from_coeffs(var, coeffs, lo, hi, lo_exact=False, hi_exact=True)
    coeffs = _expand_ascending(nparts, dparts, lo, hi)
    return TSeries.from_coeffs(var, coeffs, lo, hi, lo_exact=True, hi_exact=False)


def _expand_ascending(nparts, dparts, lo, hi):
    """Coefficients of (sum n_k x^k)/(sum d_k x^k) for exponents in [lo, hi]."""
    dmin = dparts[0][0]
    d0 = dparts[0][1]
    if d0.is_zero():
        raise NonUnitDenominator("denominator has zero trailing coefficient")
    d0inv = ZRat(ZPoly.one(), d0)
    dtail = {k - dmin: ZRat(c) for k, c in dparts[1:]}
    nmin = nparts[0][0]
    val = nmin - dmin  # valuation of the quotient
    if val > hi:
        return {}
    ncoeff = {k - nmin: ZRat(c) for k, c in nparts}
    # q_j coefficients of theквотient shifted: quotient = x^{val} * sum q_j x^j
    top = hi - val
    q = {}
    for j in range(0, top + 1):
        acc = ncoeff.get(j, None)
        for t, dv in dtail.items():
            if t <= 0 or t > j:
                continue
            prev = q.get(j - t)
            if prev is None:
                continue
            term = dv * prev
            acc = (acc - term) if acc is not None else -term
        if acc is None:
            continue
        qq = d0inv * acc
        if not qq.is_zero():
            q[j] = qq
    out = {}
    for j, v in q.items():
        k = j + val
        if lo <= k <= hi:
            out[k] = v
    return out


def series_expand(r: ZRat, var: str, window) -> TSeries:
    """Spec-facing wrapper: expansion at 0 over [window[0], window[1]]."""
    lo, hi = window
    return expand_zrat(r, var, lo, hi, at_infinity=False)


def delta_times(F: TSeries, zvar: str, wvar: str, zfactor, reach: int) -> TSeries:
    """delta(c*z/w) * F, expanded formally: coefficient of z^a w^b is
    c^a * F_{a+b}.

    F must depend on z and w only through one shared exponent (it is a
    series in a single one of them, or a convolution already collapsed to
    one).  The result is materialized on the box |a|, |b| <= reach, which
    is sound as long as F is known wherever a+b can land; this is checked
    and the box shrunk accordingly."""
    allowed = {zvar, wvar}
    fvars = [v for v in F.vars if v in allowed and not (
        F.wins[v].klo == 0 == F.wins[v].khi and F.wins[v].lo_exact and F.wins[v].hi_exact)]
    extra = [v for v in F.vars if v not in allowed and F.c]
    for v in extra:
        w = F.wins[v]
        if not (w.klo == 0 == w.khi):
            raise WindowMismatch("delta factor multiplies a series in a foreign variable")
    if len(fvars) > 1:
        raise WindowMismatch("delta factor multiplies a genuinely two-variable series")
    src = fvars[0] if fvars else wvar
    w = F.wins.get(src, Win(0, 0, True, True))
    i = F.vars.index(src) if src in F.vars else None
    coeffs = {}
    if i is not None:
        for e, v in F.c.items():
            coeffs[e[i]] = v
    else:
        if F.c:
            coeffs[0] = next(iter(F.c.values()))
    big = 10 ** 9
    lo_eff = -big if w.lo_exact else w.klo
    hi_eff = big if w.hi_exact else w.khi
    # shrink the box until every reachable a+b is known for F
    B = reach
    while B > 0 and (2 * B > hi_eff or -2 * B < lo_eff):
        B -= 1
    if B == 0:
        raise WindowMismatch("delta box shrank to nothing")
    out_vars = (zvar, wvar)
    wins = {zvar: Win(-B, B, False, False), wvar: Win(-B, B, False, False)}
    c = {}
    zinv = None
    for a in range(-B, B + 1):
        if a >= 0:
            f = _scalar_pow(zfactor, a)
        else:
            if zinv is None:
                zinv = zfactor.inverse()
            f = _scalar_pow(zinv, -a)
        for b in range(-B, B + 1):
            v = coeffs.get(a + b)
            if v is None or _is_zero(v):
                continue
            vv = _scalar_mul(v, f) if f is not None else v
            c[(a, b)] = vv
    return TSeries(out_vars, wins, c)

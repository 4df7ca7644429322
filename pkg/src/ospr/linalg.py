"""Small exact matrices over an arbitrary coefficient ring.

Entries can be Fractions, KScalar, ZRat, or anything else with ring
operations, is_zero() and inverse().  Inversion is plain Gaussian
elimination with pivoting on any invertible entry; over the rational
function fields used here "nonzero" means "invertible", so no fraction-free
tricks are needed for correctness, only exactness.
"""

from __future__ import annotations


class SingularMatrix(ArithmeticError):
    pass


class Mat:
    """Dense-by-dict n x m matrix; missing entries are zero."""

    __slots__ = ("n", "m", "e", "one")

    def __init__(self, n, m, entries=None, one=None):
        self.n = n
        self.m = m
        self.e = {}
        self.one = one
        if entries:
            for k, v in entries.items():
                if not _zero(v):
                    self.e[k] = v

    @staticmethod
    def identity(n, one):
        r = Mat(n, n, one=one)
        for i in range(n):
            r.e[(i, i)] = one
        return r

    @staticmethod
    def zero(n, m, one=None):
        return Mat(n, m, one=one)

    def copy(self):
        r = Mat(self.n, self.m, one=self.one)
        r.e = dict(self.e)
        return r

    def __getitem__(self, k):
        return self.e.get(k)

    def get(self, i, j, default=None):
        return self.e.get((i, j), default)

    def set(self, i, j, v):
        if _zero(v):
            self.e.pop((i, j), None)
        else:
            self.e[(i, j)] = v

    def is_zero(self):
        return all(_zero(v) for v in self.e.values())

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        assert (self.n, self.m) == (other.n, other.m)
        r = self.copy()
        for k, v in other.e.items():
            w = r.e.get(k)
            if w is None:
                r.e[k] = v
            else:
                w = w + v
                if _zero(w):
                    del r.e[k]
                else:
                    r.e[k] = w
        return r

    def __neg__(self):
        r = Mat(self.n, self.m, one=self.one)
        r.e = {k: -v for k, v in self.e.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Mat):
            assert self.m == other.n, "matrix shape mismatch"
            rows = {}
            for (i, k), v in self.e.items():
                rows.setdefault(i, []).append((k, v))
            cols = {}
            for (k, j), v in other.e.items():
                cols.setdefault(k, []).append((j, v))
            r = Mat(self.n, other.m, one=self.one or other.one)
            acc = {}
            for i, row in rows.items():
                for k, v in row:
                    col = cols.get(k)
                    if not col:
                        continue
                    for j, w in col:
                        p = v * w
                        key = (i, j)
                        cur = acc.get(key)
                        acc[key] = p if cur is None else cur + p
            r.e = {k: v for k, v in acc.items() if not _zero(v)}
            return r
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale_left(other)

    def scale(self, k):
        r = Mat(self.n, self.m, one=self.one)
        if _zero(k):
            return r
        r.e = {key: v * k for key, v in self.e.items()}
        return r

    def scale_left(self, k):
        r = Mat(self.n, self.m, one=self.one)
        if _zero(k):
            return r
        r.e = {key: k * v for key, v in self.e.items()}
        return r

    def transpose(self):
        r = Mat(self.m, self.n, one=self.one)
        r.e = {(j, i): v for (i, j), v in self.e.items()}
        return r

    def map_entries(self, f):
        r = Mat(self.n, self.m, one=self.one)
        for k, v in self.e.items():
            w = f(v)
            if not _zero(w):
                r.e[k] = w
        return r

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def inverse(self):
        """Exact inverse by Gaussian elimination; raises SingularMatrix."""
        assert self.n == self.m
        assert self.one is not None, "identity element required for inverse"
        n = self.n
        a = [[self.e.get((i, j)) for j in range(n)] for i in range(n)]
        b = [[self.one if i == j else None for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = None
            for row in range(col, n):
                v = a[row][col]
                if v is not None and not _zero(v):
                    piv = row
                    break
            if piv is None:
                raise SingularMatrix(f"no pivot in column {col}")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                b[col], b[piv] = b[piv], b[col]
            inv = a[col][col].inverse()
            for j in range(n):
                if a[col][j] is not None:
                    a[col][j] = inv * a[col][j]
                if b[col][j] is not None:
                    b[col][j] = inv * b[col][j]
            for row in range(n):
                if row == col:
                    continue
                f = a[row][col]
                if f is None or _zero(f):
                    continue
                for j in range(n):
                    if a[col][j] is not None:
                        t = f * a[col][j]
                        a[row][j] = -t if a[row][j] is None else a[row][j] - t
                    if b[col][j] is not None:
                        t = f * b[col][j]
                        b[row][j] = -t if b[row][j] is None else b[row][j] - t
        r = Mat(n, n, one=self.one)
        for i in range(n):
            for j in range(n):
                v = b[i][j]
                if v is not None and not _zero(v):
                    r.e[(i, j)] = v
        return r

    def is_scalar(self):
        """Return the scalar c when self == c * identity, else None."""
        assert self.n == self.m
        c = self.e.get((0, 0))
        for (i, j), v in self.e.items():
            if i != j and not _zero(v):
                return None
        if c is None:
            return None if self.e else c
        for i in range(1, self.n):
            v = self.e.get((i, i))
            if v is None or not _zero(v - c):
                return None
        return c

    def __repr__(self):
        return f"Mat({self.n}x{self.m}, {len(self.e)} nz)"


def _zero(v):
    if v is None:
        return True
    z = getattr(v, "is_zero", None)
    if z is not None:
        return z()
    return not v

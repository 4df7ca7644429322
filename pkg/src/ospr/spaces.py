"""Index combinatorics of the graded vector space C^(2m+1|2n).

The basis is indexed 1..N with N = 2m+2n+1: the first n and last n indices
are odd (fermionic), the middle 2m+1 are even.  This module holds the
parity, the bar involution pairing an index with its dual partner, the
sign table xi, the bilinear-form data d_i and its partial sums nu_i, the
weight pairings with the half-sum of positive roots, the exponents of the
diagonal crossing matrix D, and the finite Cartan matrix.

A deliberate convention, recorded where it is used: d(middle) is taken to
be +1 in the representation formulas (the true bilinear square of the
middle weight is 0, which would make the diagonal Cartan images
non-invertible); the honest pairing values are available separately via
eps_pair.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Frac


class SuperSpace:
    """The pair (m, n) with m >= 1, plus the derived constants."""

    __slots__ = ("m", "n", "N", "mn")

    def __init__(self, m: int, n: int):
        if m < 1:
            raise ValueError("m >= 1 required")
        if n < 0:
            raise ValueError("n >= 0 required")
        self.m = m
        self.n = n
        self.N = 2 * m + 2 * n + 1
        self.mn = m + n

    def __repr__(self):
        return f"SuperSpace(m={self.m}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, SuperSpace) and (self.m, self.n) == (other.m, other.n)

    def __hash__(self):
        return hash((self.m, self.n))

    # -- index helpers (all 1-based) ------------------------------------
    def parity(self, a: int) -> int:
        """Grading of basis index a: 0 for n+1 <= a <= 2m+n+1, else 1."""
        return 0 if self.n + 1 <= a <= 2 * self.m + self.n + 1 else 1

    def bar(self, a: int) -> int:
        return 2 * self.n + 2 * self.m + 2 - a

    def xi(self, a: int) -> int:
        if self.parity(a) == 0:
            return 1
        if 1 <= a <= self.n:
            return -1 if a % 2 else 1
        return 1 if a % 2 else -1

    def d(self, i: int) -> int:
        """Signed square of the i-th weight, with the middle set to +1.

        Extended to all of 1..N by d(bar(i)) = d(i)."""
        if i > self.mn + 1:
            i = self.bar(i)
        if i <= self.n:
            return -1
        return 1

    def eps_pair(self, i: int, j: int) -> int:
        """Bilinear form of the i-th and j-th weights, middle weight = 0."""
        si, ii = self._weight(i)
        sj, jj = self._weight(j)
        if ii == 0 or jj == 0 or ii != jj:
            return 0
        base = -1 if ii <= self.n else 1
        return si * sj * base

    def _weight(self, a: int):
        """Index a carries weight sign*eps_k; middle is ( +1, 0 )."""
        mid = self.mn + 1
        if a < mid:
            return 1, a
        if a == mid:
            return 1, 0
        return -1, self.bar(a)

    def nu(self, i: int) -> int:
        """Partial sums of d over 1..i for i <= m+n."""
        assert 1 <= i <= self.mn
        if i <= self.n:
            return -i
        return i - 2 * self.n

    def rho_eps(self, i: int) -> Fraction:
        """Pairing of the half-sum of positive roots with the i-th weight.

        Defined for extended indices 1..N; antisymmetric under bar."""
        s, k = self._weight(i)
        if k == 0:
            return Frac(0)
        if k <= self.n:
            v = Frac(2 * self.n - 2 * self.m + 1 - 2 * k, 2) * (-1)
        else:
            v = Frac(2 * self.m + 1 - 2 * (k - self.n), 2)
        return s * v

    def dexp_half(self, a: int) -> int:
        """Exponent of the diagonal matrix D at index a, in q^{1/2} units.

        Solved from D(middle) = q^0, exponents antisymmetric under bar, and
        differences matching the rho pairings."""
        v = -self.rho_eps(a)
        h = v * 2
        assert h.denominator == 1
        return int(h)

    def rho_pair_half(self, a: int, b: int) -> int:
        """(rho, eps_a - eps_b) in q^{1/2} exponent units."""
        v = (self.rho_eps(a) - self.rho_eps(b)) * 2
        assert v.denominator == 1
        return int(v)

    def cross_weight_half(self, a: int) -> int:
        """Weight of index a in the bar-pairing operator, in q^{1/2} units:
        2 * [(rho, eps_a) - (eps_a, eps_a)/2].

        The half-unit self-pairing shift is what makes the pairing operator
        the actual rank-one invariant of V (x) V; without it the
        Yang-Baxter and inversion identities fail."""
        v = 2 * self.rho_eps(a)
        assert v.denominator == 1
        return int(v) - self.eps_pair(a, a)

    # -- roots and Cartan data ------------------------------------------
    def alpha_parity(self, i: int) -> int:
        """Grading of the i-th simple root generator."""
        assert 1 <= i <= self.mn
        if i < self.mn:
            return (self.parity(i) + self.parity(i + 1)) % 2
        return (self.parity(self.mn) + self.parity(self.mn + 1)) % 2

    def alpha_pair(self, i: int, j: int) -> int:
        """Bilinear form of two simple roots."""
        assert 1 <= i <= self.mn and 1 <= j <= self.mn

        def comps(k):
            # simple root as weight-index combinations
            if k < self.mn:
                return ((1, k), (-1, k + 1))
            return ((1, self.mn),)

        total = 0
        for si, ii in comps(i):
            for sj, jj in comps(j):
                total += si * sj * self.eps_pair(ii, jj)
        return total

    def eps_alpha_pair(self, i: int, j: int) -> int:
        """(eps_i, alpha_j) for 1 <= i <= m+n."""
        if j < self.mn:
            return self.eps_pair(i, j) - self.eps_pair(i, j + 1)
        return self.eps_pair(i, self.mn)

    def cartan_entry(self, i: int, j: int) -> int:
        """Finite Cartan matrix: row m+n doubled."""
        v = self.alpha_pair(i, j)
        return 2 * v if i == self.mn else v

    def qi_half_units(self, i: int) -> int:
        """q_i as an exponent of q^{1/2}: 2 means q, 1 means q^{1/2}."""
        a = self.alpha_pair(i, i)
        if a == 0:
            return 2
        return abs(a)

    def zeta_half_units(self) -> int:
        """The crossing constant zeta = q^{2m-2n-1}, in q^{1/2} units."""
        return 2 * (2 * self.m - 2 * self.n - 1)

    def index_range(self):
        return range(1, self.N + 1)


def index_data(space: SuperSpace) -> dict:
    """All tables at once, for reports and dumps."""
    return {
        "m": space.m,
        "n": space.n,
        "N": space.N,
        "parity": {a: space.parity(a) for a in space.index_range()},
        "bar": {a: space.bar(a) for a in space.index_range()},
        "xi": {a: space.xi(a) for a in space.index_range()},
        "d": {a: space.d(a) for a in space.index_range()},
        "nu": {i: space.nu(i) for i in range(1, space.mn + 1)},
        "dexp_half": {a: space.dexp_half(a) for a in space.index_range()},
    }

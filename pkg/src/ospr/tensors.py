"""Koszul-signed operators on tensor powers of the graded space.

A TensorOperator stores the *action matrix* of an element of
End(V)^(tensor k) on the flattened basis of V^(tensor k).  The graded
tensor-product multiplication (X (x) Y)(Z (x) W) = (-1)^{[Y][Z]} XZ (x) YW
then becomes plain sparse matrix multiplication; all Koszul signs are paid
once, when an abstract summand E^a_b (x) E^c_d ... is converted to its
action (`tensor_unit`) or back (`coeff_map`).

Row/column indices run over tuples of 1-based basis indices, flattened in
row-major order.  Entries may be KScalar, ZPoly, ZRat or Fraction.
"""

from __future__ import annotations

from .spaces import SuperSpace


class TensorOperator:
    """Sparse operator on V^(tensor legs), stored as row -> {col: coeff}."""

    __slots__ = ("space", "legs", "rows")

    def __init__(self, space: SuperSpace, legs: int, rows=None):
        self.space = space
        self.legs = legs
        self.rows = rows if rows is not None else {}

    # -- index flattening ------------------------------------------------
    def flat(self, multi):
        N = self.space.N
        x = 0
        for a in multi:
            x = x * N + (a - 1)
        return x

    def unflat(self, x):
        N = self.space.N
        out = []
        for _ in range(self.legs):
            out.append(x % N + 1)
            x //= N
        return tuple(reversed(out))

    def dim(self):
        return self.space.N ** self.legs

    # -- basic ring structure ---------------------------------------------
    def copy(self):
        return TensorOperator(self.space, self.legs,
                              {r: dict(cols) for r, cols in self.rows.items()})

    def set(self, r, c, v):
        if _zero(v):
            row = self.rows.get(r)
            if row:
                row.pop(c, None)
                if not row:
                    del self.rows[r]
        else:
            self.rows.setdefault(r, {})[c] = v

    def add_to(self, r, c, v):
        row = self.rows.setdefault(r, {})
        cur = row.get(c)
        if cur is None:
            if not _zero(v):
                row[c] = v
        else:
            cur = cur + v
            if _zero(cur):
                del row[c]
            else:
                row[c] = cur
        if not row:
            del self.rows[r]

    def entry(self, r, c):
        row = self.rows.get(r)
        return row.get(c) if row else None

    def __add__(self, other):
        assert self.legs == other.legs
        out = self.copy()
        for r, cols in other.rows.items():
            for c, v in cols.items():
                out.add_to(r, c, v)
        return out

    def __neg__(self):
        return TensorOperator(self.space, self.legs,
                              {r: {c: -v for c, v in cols.items()}
                               for r, cols in self.rows.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorOperator):
            assert self.legs == other.legs
            out = TensorOperator(self.space, self.legs)
            orows = other.rows
            for r, cols in self.rows.items():
                acc = {}
                for k, v in cols.items():
                    rk = orows.get(k)
                    if not rk:
                        continue
                    for c, w in rk.items():
                        p = v * w
                        cur = acc.get(c)
                        acc[c] = p if cur is None else cur + p
                acc = {c: v for c, v in acc.items() if not _zero(v)}
                if acc:
                    out.rows[r] = acc
            return out
        return self.scale(other)

    def __rmul__(self, k):
        return self.scale_left(k)

    def scale(self, k):
        if _zero(k):
            return TensorOperator(self.space, self.legs)
        return TensorOperator(self.space, self.legs,
                              {r: {c: v * k for c, v in cols.items()}
                               for r, cols in self.rows.items()})

    def scale_left(self, k):
        if _zero(k):
            return TensorOperator(self.space, self.legs)
        return TensorOperator(self.space, self.legs,
                              {r: {c: k * v for c, v in cols.items()}
                               for r, cols in self.rows.items()})

    def map_entries(self, f):
        out = TensorOperator(self.space, self.legs)
        for r, cols in self.rows.items():
            nc = {}
            for c, v in cols.items():
                w = f(v)
                if not _zero(w):
                    nc[c] = w
            if nc:
                out.rows[r] = nc
        return out

    def is_zero(self):
        return all(_zero(v) for cols in self.rows.values() for v in cols.values())

    def __eq__(self, other):
        if not isinstance(other, TensorOperator):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def nnz(self):
        return sum(len(c) for c in self.rows.values())

    def first_difference(self, other):
        d = self - other
        for r in sorted(d.rows):
            for c in sorted(d.rows[r]):
                if not _zero(d.rows[r][c]):
                    return self.unflat(r), self.unflat(c), self.entry(r, c), other.entry(r, c)
        return None

    def is_scalar_multiple_of_identity(self):
        """Return c if self == c*Id (entrywise), else None."""
        c = None
        for r, cols in self.rows.items():
            for cc, v in cols.items():
                if r != cc and not _zero(v):
                    return None
        for x in range(self.dim()):
            v = self.entry(x, x)
            if c is None:
                c = v
            else:
                if v is None or not _zero(v - c):
                    return None
        return c

    def __repr__(self):
        return f"TensorOperator(legs={self.legs}, nnz={self.nnz()})"


def _zero(v):
    if v is None:
        return True
    z = getattr(v, "is_zero", None)
    if z is not None:
        return z()
    return not v


# -- construction with Koszul signs ---------------------------------------

def action_sign(space: SuperSpace, ops, col):
    """Sign of (E^{a_1}_{b_1} (x) ... ) acting on v_{b_1} (x) ... : each
    factor picks up the parities of the vectors it moves across."""
    s = 0
    acc = 0
    for t in range(1, len(ops)):
        acc += space.parity(col[t - 1])
        a, b = ops[t]
        s += (space.parity(a) + space.parity(b)) * acc
    return -1 if s % 2 else 1


def tensor_unit(space: SuperSpace, pairs, coeff, legs=None, out=None):
    """Add coeff * E^{a_1}_{b_1} (x) E^{a_2}_{b_2} (x) ... to `out`.

    pairs is a sequence of (row, col) basis index pairs, one per leg."""
    legs = legs if legs is not None else len(pairs)
    assert len(pairs) == legs
    op = out if out is not None else TensorOperator(space, legs)
    rowm = tuple(p[0] for p in pairs)
    colm = tuple(p[1] for p in pairs)
    sg = action_sign(space, pairs, colm)
    v = coeff if sg == 1 else -coeff
    op.add_to(op.flat(rowm), op.flat(colm), v)
    return op


def coeff_map(X: TensorOperator):
    """Abstract coefficients of X: dict (rows, cols) -> coeff such that
    X = sum coeff * E^{r_1}_{c_1} (x) ... (inverts the action signs)."""
    out = {}
    for r, cols in X.rows.items():
        rm = X.unflat(r)
        for c, v in cols.items():
            cm = X.unflat(c)
            sg = action_sign(X.space, tuple(zip(rm, cm)), cm)
            out[(rm, cm)] = v if sg == 1 else -v
    return out


def from_coeff_map(space: SuperSpace, legs: int, cmap):
    out = TensorOperator(space, legs)
    for (rm, cm), v in cmap.items():
        tensor_unit(space, tuple(zip(rm, cm)), v, legs=legs, out=out)
    return out


def identity_op(space: SuperSpace, legs: int, one):
    out = TensorOperator(space, legs)
    for x in range(space.N ** legs):
        out.rows[x] = {x: one}
    return out


def diag_op(space: SuperSpace, legs: int, values):
    """Diagonal operator with given per-flat-index values (callable)."""
    out = TensorOperator(space, legs)
    for x in range(space.N ** legs):
        v = values(out.unflat(x))
        if not _zero(v):
            out.rows[x] = {x: v}
    return out


# -- leg bookkeeping --------------------------------------------------------

def embed_legs(X: TensorOperator, total_legs: int, positions, one):
    """Embed X into `total_legs` legs at the given (0-based) positions,
    identity elsewhere.  Multiplicative thanks to the action representation."""
    space = X.space
    N = space.N
    cmap = coeff_map(X)
    out = TensorOperator(space, total_legs)
    others = [t for t in range(total_legs) if t not in positions]
    import itertools
    for (rm, cm), v in cmap.items():
        for rest in itertools.product(range(1, N + 1), repeat=len(others)):
            rfull = [0] * total_legs
            cfull = [0] * total_legs
            for p, t in enumerate(positions):
                rfull[t] = rm[p]
                cfull[t] = cm[p]
            for p, t in enumerate(others):
                rfull[t] = rest[p]
                cfull[t] = rest[p]
            tensor_unit(space, tuple(zip(rfull, cfull)), v, legs=total_legs, out=out)
    return out


def embed_leg_pair(X: TensorOperator, pair: str, one):
    """Embed a 2-leg operator into 3 legs; pair is one of '12', '13', '23'."""
    assert X.legs == 2
    positions = {"12": (0, 1), "13": (0, 2), "23": (1, 2)}[pair]
    return embed_legs(X, 3, positions, one)


def swap_legs_coeff(X: TensorOperator):
    """Formal slot swap of a 2-leg operator's tensor coefficients (no sign):
    sum x E^a_b (x) E^c_d  ->  sum x E^c_d (x) E^a_b."""
    cmap = coeff_map(X)
    out = {}
    for ((a, c), (b, d)), v in cmap.items():
        out[((c, a), (d, b))] = v
    return from_coeff_map(X.space, 2, out)


def swap_legs_graded(X: TensorOperator):
    """Graded flip: coefficients pick up (-1)^{([a]+[b])([c]+[d])}."""
    sp = X.space
    cmap = coeff_map(X)
    out = {}
    for ((a, c), (b, d)), v in cmap.items():
        sg = (sp.parity(a) + sp.parity(b)) * (sp.parity(c) + sp.parity(d))
        out[((c, a), (d, b))] = -v if sg % 2 else v
    return from_coeff_map(X.space, 2, out)


# -- the structural operators P, Q, D and the super transposition -----------

def build_P(space: SuperSpace, one):
    """Graded permutation: P = sum (-1)^{[b]} E^a_b (x) E^b_a."""
    out = TensorOperator(space, 2)
    for a in space.index_range():
        for b in space.index_range():
            v = -one if space.parity(b) else one
            tensor_unit(space, ((a, b), (b, a)), v, out=out)
    return out


def build_Qop(space: SuperSpace, qh, one):
    """The rank-one bar-pairing operator
    Q = sum (-1)^{[a][b]} xi_a xi_b q^{g(a) - g(b)} E^a_b (x) E^{bar a}_{bar b},
    where g is the shifted weight of cross_weight_half; `qh(j)` gives q^{j/2}."""
    out = TensorOperator(space, 2)
    for a in space.index_range():
        for b in space.index_range():
            sg = space.parity(a) * space.parity(b)
            coeff = space.xi(a) * space.xi(b) * (-1 if sg % 2 else 1)
            v = qh(space.cross_weight_half(a) - space.cross_weight_half(b))
            v = v if coeff == 1 else -v
            tensor_unit(space, ((a, b), (space.bar(a), space.bar(b))), v, out=out)
    return out


def build_D(space: SuperSpace, qh, legs=1, leg=0):
    """Diagonal crossing matrix D = diag(q^{dexp(a)}) on one leg of many."""
    out = TensorOperator(space, legs)
    for x in range(space.N ** legs):
        multi = out.unflat(x)
        out.rows[x] = {x: qh(space.dexp_half(multi[leg]))}
    return out


def super_transpose_leg(X: TensorOperator, leg: int, qh=None):
    """Apply the super transposition t to one leg of a 2-leg operator:
    (E^i_j)^t = (-1)^{[i][j]+[j]} xi_{bar i} xi_{bar j}
                q^{((eps_i,eps_i)-(eps_j,eps_j))/2} E^{bar j}_{bar i}.

    The q-shift pairs with the shifted weights of the bar-pairing operator
    so that Q = D1^{-1} P^{t1} D1 holds; `qh(j)` supplies q^{j/2} in the
    entry ring (when omitted the shift factor is dropped, which is only
    correct for entries where both self-pairings agree)."""
    assert X.legs == 2
    sp = X.space
    cmap = coeff_map(X)
    out = {}
    for (rm, cm), v in cmap.items():
        i, j = rm[leg], cm[leg]
        sg = (sp.parity(i) * sp.parity(j) + sp.parity(j)) % 2
        coeff = sp.xi(sp.bar(i)) * sp.xi(sp.bar(j)) * (-1 if sg else 1)
        nr = list(rm)
        nc = list(cm)
        nr[leg] = sp.bar(j)
        nc[leg] = sp.bar(i)
        key = (tuple(nr), tuple(nc))
        w = v if coeff == 1 else -v
        if qh is not None:
            shift = sp.eps_pair(i, i) - sp.eps_pair(j, j)
            if shift:
                w = w * qh(shift)
        if key in out:
            out[key] = out[key] + w
        else:
            out[key] = w
    return from_coeff_map(sp, 2, out)


def matrix_dump_lines(X: TensorOperator, render=str):
    """Line-oriented `row col value` triples with 1-based flat indices."""
    lines = []
    for r in sorted(X.rows):
        for c in sorted(X.rows[r]):
            lines.append(f"{r + 1} {c + 1} {render(X.rows[r][c])}")
    return lines

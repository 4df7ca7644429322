import itertools
import random

from ospr.scalars import KScalar, K_ONE
from ospr.spaces import SuperSpace
from ospr.tensors import (
    build_D, build_P, build_Qop, coeff_map, embed_leg_pair, from_coeff_map,
    identity_op, super_transpose_leg, swap_legs_graded, tensor_unit,
)

SP11 = SuperSpace(1, 1)


def qh(j):
    return KScalar.qh(j)


def unit(sp, pairs, c=K_ONE):
    return tensor_unit(sp, pairs, c)


def test_koszul_product_even_even():
    sp = SuperSpace(1, 1)
    # (E^1_2 (x) E^3_3) (E^2_1 (x) E^3_3) with even second factors -> + E^1_1 (x) E^3_3
    a = unit(sp, ((1, 2), (3, 3)))
    b = unit(sp, ((2, 1), (3, 3)))
    expect = unit(sp, ((1, 1), (3, 3)))
    assert a * b == expect


def test_koszul_product_odd_odd():
    sp = SuperSpace(1, 1)
    # (E^1_1 (x) E^1_2)(E^1_2 (x) E^2_1) = -(E^1_2 (x) E^1_1): both E^1_2-type
    # factors are odd, so the crossing sign fires
    a = unit(sp, ((1, 1), (1, 2)))
    b = unit(sp, ((1, 2), (2, 1)))
    expect = unit(sp, ((1, 2), (1, 1)), -K_ONE)
    assert a * b == expect


def test_identity_is_unit():
    sp = SuperSpace(1, 1)
    ident = identity_op(sp, 2, K_ONE)
    rng = random.Random(5)
    X = sum_random_op(sp, rng, 6)
    assert ident * X == X
    assert X * ident == X


def sum_random_op(sp, rng, terms):
    out = None
    for _ in range(terms):
        pairs = tuple((rng.randint(1, sp.N), rng.randint(1, sp.N)) for _ in range(2))
        t = unit(sp, pairs, KScalar.const(rng.randint(1, 5)))
        out = t if out is None else out + t
    return out


def test_associativity_on_units():
    sp = SuperSpace(1, 1)
    rng = random.Random(9)
    for _ in range(25):
        X = sum_random_op(sp, rng, 2)
        Y = sum_random_op(sp, rng, 2)
        Z = sum_random_op(sp, rng, 2)
        assert (X * Y) * Z == X * (Y * Z)


def test_coeff_roundtrip():
    sp = SuperSpace(1, 1)
    rng = random.Random(13)
    X = sum_random_op(sp, rng, 8)
    back = from_coeff_map(sp, 2, coeff_map(X))
    assert back == X


def test_P_square_and_action():
    for (m, n) in [(1, 1), (2, 1)]:
        sp = SuperSpace(m, n)
        P = build_P(sp, K_ONE)
        assert P * P == identity_op(sp, 2, K_ONE)
        # P(v_a (x) v_b) = (-1)^{[a][b]} v_b (x) v_a
        for a, b in itertools.product(sp.index_range(), repeat=2):
            col = P.flat((a, b))
            row = P.flat((b, a))
            v = P.entry(row, col)
            sg = -1 if sp.parity(a) * sp.parity(b) else 1
            assert v == KScalar.const(sg)


def test_super_transpose_examples_m1n1():
    sp = SP11
    e33 = unit(sp, ((3, 3), (3, 3)))
    assert super_transpose_leg(e33, 0, qh) == e33
    e11 = unit(sp, ((1, 1), (3, 3)))
    e55 = unit(sp, ((5, 5), (3, 3)))
    assert super_transpose_leg(e11, 0, qh) == e55


def test_super_transpose_squares_to_identity():
    for (m, n) in [(1, 1), (2, 1), (1, 2)]:
        sp = SuperSpace(m, n)
        rng = random.Random(31)
        for _ in range(6):
            X = sum_random_op(sp, rng, 4)
            tt = super_transpose_leg(super_transpose_leg(X, 0, qh), 0, qh)
            assert tt == X


def test_d5_triple():
    for (m, n) in [(1, 1), (1, 0), (2, 1), (1, 2)]:
        sp = SuperSpace(m, n)
        P = build_P(sp, K_ONE)
        Q = build_Qop(sp, qh, K_ONE)
        D1 = build_D(sp, qh, legs=2, leg=0)
        D2 = build_D(sp, qh, legs=2, leg=1)
        D1inv = build_D(sp, lambda j: qh(-j), legs=2, leg=0)
        D2inv = build_D(sp, lambda j: qh(-j), legs=2, leg=1)
        Pt1 = super_transpose_leg(P, 0, qh)
        assert D1inv * Pt1 * D1 == Q
        assert Pt1 * D1 == Pt1 * D2inv
        assert D2 * Pt1 == D1inv * Pt1


def test_braid_relation_for_embedded_P():
    sp = SuperSpace(1, 1)
    P = build_P(sp, K_ONE)
    p12 = embed_leg_pair(P, "12", K_ONE)
    p23 = embed_leg_pair(P, "23", K_ONE)
    assert p12 * p23 * p12 == p23 * p12 * p23


def test_embedding_multiplicative():
    sp = SuperSpace(1, 1)
    rng = random.Random(3)
    for pair in ("12", "13", "23"):
        X = sum_random_op(sp, rng, 3)
        Y = sum_random_op(sp, rng, 3)
        exy = embed_leg_pair(X * Y, pair, K_ONE)
        ex = embed_leg_pair(X, pair, K_ONE)
        ey = embed_leg_pair(Y, pair, K_ONE)
        assert ex * ey == exy


def test_embed_identity():
    sp = SuperSpace(1, 1)
    ident2 = identity_op(sp, 2, K_ONE)
    for pair in ("12", "13", "23"):
        assert embed_leg_pair(ident2, pair, K_ONE) == identity_op(sp, 3, K_ONE)


def test_nonsuper_embedding_matches_plain_kron():
    sp = SuperSpace(1, 0)
    # no odd indices: no signs anywhere
    P = build_P(sp, K_ONE)
    for (rm, cm), v in coeff_map(P).items():
        assert v == K_ONE
    p13 = embed_leg_pair(P, "13", K_ONE)
    for r, cols in p13.rows.items():
        for c, v in cols.items():
            assert v == K_ONE


def test_pswap_conjugation_is_graded_flip():
    sp = SuperSpace(1, 1)
    P = build_P(sp, K_ONE)
    rng = random.Random(21)
    for _ in range(10):
        X = sum_random_op(sp, rng, 5)
        assert P * X * P == swap_legs_graded(X)

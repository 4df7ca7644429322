import pytest

from ospr.scalars import Frac, KScalar, K_ONE
from ospr.series import TSeries, WindowMismatch, expand_zrat
from ospr.zring import ZPoly, ZRat


def kc(n):
    return KScalar.const(n)


def geom(hi):
    # 1/(1-z) on [0, hi]
    z = ZPoly.var("z")
    return expand_zrat(ZRat(ZPoly.one(), ZPoly.one() - z), "z", 0, hi)


def test_expand_geometric():
    s = geom(3)
    assert s.coeff((0,)) == K_ONE and s.coeff((3,)) == K_ONE
    assert s.wins["z"].klo == 0 and s.wins["z"].khi == 3 and not s.wins["z"].hi_exact


def test_expand_example_long_division():
    # z/(q - q^{-1} z) on [1,2]: q^{-1} z + q^{-3} z^2
    z = ZPoly.var("z")
    q = ZPoly.const(KScalar.qh(2))
    qi = ZPoly.const(KScalar.qh(-2))
    r = ZRat(z, q - qi * z)
    s = expand_zrat(r, "z", 1, 2)
    assert s.coeff((1,)) == ZRat.const(KScalar.qh(-2))
    assert s.coeff((2,)) == ZRat.const(KScalar.qh(-6))


def test_expand_cancellation():
    z = ZPoly.var("z")
    r = ZRat(z - ZPoly.one(), z - ZPoly.one())
    s = expand_zrat(r, "z", 0, 5)
    assert s.coeff((0,)) and s.coeff((0,)).is_one()
    assert all(s.coeff((k,)) is None for k in range(1, 6))


def test_expand_at_infinity():
    # 1/(1-z) at infinity: -z^{-1} - z^{-2} - ...
    z = ZPoly.var("z")
    s = expand_zrat(ZRat(ZPoly.one(), ZPoly.one() - z), "z", -3, 0, at_infinity=True)
    assert s.coeff((0,)) is None
    assert s.coeff((-1,)) == -ZRat.one()
    assert s.coeff((-3,)) == -ZRat.one()
    assert s.wins["z"].hi_exact and not s.wins["z"].lo_exact


def test_mul_is_ring_hom_within_window():
    z = ZPoly.var("z")
    one = ZPoly.one()
    r1 = ZRat(one, one - z)
    r2 = ZRat(one + z, one - z * z)
    hi = 6
    prod = expand_zrat(r1 * r2, "z", 0, hi)
    prod2 = expand_zrat(r1, "z", 0, hi) * expand_zrat(r2, "z", 0, hi)
    assert prod.diff_witness(prod2) is None


def test_window_rules_two_sided_product_fails():
    a = TSeries.from_coeffs("z", {0: K_ONE}, -2, 2, lo_exact=False, hi_exact=False)
    b = TSeries.from_coeffs("z", {0: K_ONE}, -2, 2, lo_exact=False, hi_exact=False)
    with pytest.raises(WindowMismatch):
        a * b


def test_disjoint_variable_product_keeps_windows():
    a = TSeries.from_coeffs("z", {k: K_ONE for k in range(-2, 3)}, -2, 2,
                            lo_exact=False, hi_exact=False)
    b = TSeries.from_coeffs("w", {k: kc(k) for k in range(0, 3) if k}, 0, 2)
    p = a * b
    assert p.wins["z"].klo == -2 and p.wins["z"].khi == 2
    assert p.wins["w"].klo == 0 and p.wins["w"].khi == 2
    assert p.coeff((1, 2)) == kc(2)


def test_exp_log_roundtrip():
    coeffs = {1: kc(3), 2: kc(-1), 5: kc(7)}
    s = TSeries.from_coeffs("z", coeffs, 0, 8)
    e = s.exp(K_ONE)
    back = e.log(K_ONE)
    assert back.diff_witness(s) is None


def test_inverse_ascending_and_descending():
    s = TSeries.from_coeffs("z", {0: kc(2), 1: kc(1)}, 0, 5)
    inv = s.inverse(K_ONE)
    one = TSeries.from_coeffs("z", {0: K_ONE}, 0, 5)
    assert (s * inv).diff_witness(one) is None
    d = TSeries.from_coeffs("z", {0: kc(1), -1: kc(4)}, -5, 0, lo_exact=False, hi_exact=True)
    dinv = d.inverse(K_ONE)
    assert (d * dinv).diff_witness(one) is None


def test_delta_times_series():
    from ospr.series import delta_times
    h = TSeries.from_coeffs("w", {0: kc(1), 1: kc(5)}, 0, 6)
    p = delta_times(h, "z", "w", K_ONE, 6)
    # coefficient of z^a w^b is h_{a+b}; box shrinks so a+b stays known
    assert p.wins["z"].khi == 3
    assert p.coeff((1, -1)) == kc(1)
    assert p.coeff((1, -2)) is None
    assert p.coeff((-1, 2)) == kc(5)
    # coefficient scaling c^a for delta(c z / w)
    p2 = delta_times(h, "z", "w", KScalar.qh(2), 6)
    assert p2.coeff((1, -1)) == KScalar.qh(2)
    assert p2.coeff((-1, 1)) == KScalar.qh(-2)


def test_shift_arg():
    q2 = KScalar.qh(4)
    s = TSeries.from_coeffs("z", {k: K_ONE for k in range(0, 4)}, 0, 3)
    t = s.shift_arg("z", q2)
    assert t.coeff((2,)) == KScalar.qh(8)


def test_rename_and_witness():
    s = TSeries.from_coeffs("z", {1: kc(1)}, 0, 3)
    t = s.rename_var("z", "z1")
    assert t.vars == ("z1",)
    other = TSeries.from_coeffs("z1", {1: kc(2)}, 0, 3)
    wit = t.diff_witness(other)
    assert wit is not None and wit[0] == (1,)

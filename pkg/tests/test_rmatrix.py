import random

import pytest

from ospr.rmatrix import (
    SYM_RAT, build_QVV, build_Rtilde, check_crossing_d7, check_d6_window,
    check_f_functional, check_fq_consistency, check_gl_block, check_lemma_C,
    check_p_conjugation, check_qvv_inversion, check_unitarity, check_ybe_exact,
    check_ybe_random, f_series, g_series, run_check, structure_ops, y_scalar,
)
from ospr.scalars import KScalar, K_ONE
from ospr.spaces import SuperSpace
from ospr.zring import ZPoly, ZRat

SP10 = SuperSpace(1, 0)
SP11 = SuperSpace(1, 1)


def entry(op, rm, cm):
    return op.entry(op.flat(rm), op.flat(cm))


def test_rtilde_corner_entries():
    r10 = build_Rtilde(SP10)
    assert entry(r10, (1, 1), (1, 1)) == ZRat.one()
    r11 = build_Rtilde(SP11)
    z = ZPoly.var("z")
    one = ZPoly.one()
    q = ZPoly.const(KScalar.qh(2))
    qi = ZPoly.const(KScalar.qh(-2))
    expect = ZRat(qi - q * z, q - qi * z)
    assert entry(r11, (1, 1), (1, 1)) == expect


def test_qvv_degree_bound_and_z1():
    qvv = build_QVV(SP11)
    for r, cols in qvv.rows.items():
        for c, v in cols.items():
            assert v.degree(0) <= 2
    # at z = 1 only the permutation term survives, with factor (1-q^2)(1-zeta)
    at1 = qvv.map_entries(lambda p: p.subst_var("z", ZPoly.one()).num)
    from ospr.tensors import build_P
    P = build_P(SP11, K_ONE)
    zeta = KScalar.qh(SP11.zeta_half_units())
    coeff = (K_ONE - KScalar.qh(4)) * (K_ONE - zeta)
    expect = P.map_entries(lambda v: ZPoly.const(v * coeff))
    assert at1 == expect


def test_f_series_normalization_and_functional_eq():
    for sp in (SP10, SP11):
        f = f_series(sp, 12)
        assert f.coeff((0,)) == K_ONE
        assert check_f_functional(sp, hi=12) is None


def test_g_vs_f_q_consistency():
    assert check_fq_consistency(SP11, hi=8) is None


def test_y_scalar_value_m1n1():
    y = y_scalar(SP11)
    z = ZPoly.var("z")
    one = ZPoly.one()
    qm1 = ZPoly.const(KScalar.qh(-2))
    qm2 = ZPoly.const(KScalar.qh(-4))
    qm3 = ZPoly.const(KScalar.qh(-6))
    expect = ZRat((z - qm2) * (z * qm1 - one), (one - z) * (one - qm3 * z))
    assert y == expect


def test_unitarity_and_pconj():
    for sp in (SP10, SP11):
        assert check_unitarity(sp) is None
        diff, plain = check_p_conjugation(sp)
        assert diff is None


def test_crossing_d7():
    for sp in (SP10, SP11):
        assert check_crossing_d7(sp) is None


def test_d6_window():
    assert check_d6_window(SP11, hi=12) is None


def test_qvv_inversion():
    assert check_qvv_inversion(SP11) is None


def test_ybe_exact_small():
    assert check_ybe_exact(SP10) is None


@pytest.mark.slow
def test_ybe_exact_m1n1():
    assert check_ybe_exact(SP11) is None


def test_ybe_random_m2n1():
    rng = random.Random(42)
    assert check_ybe_random(SuperSpace(2, 1), rng, samples=3) is None


def test_gl_block():
    assert check_gl_block(SP11) is None


def test_lemma_C_m1n1():
    rng = random.Random(7)
    assert check_lemma_C(SP11, rng, samples=2) is None


def test_run_check_reports():
    rep = run_check("unitarity", SP10, mode="exact")
    assert rep.passed and rep.check == "rmatrix:unitarity"
    d = rep.to_dict()
    assert d["space"] == {"m": 1, "n": 0} and d["status"] == "pass"

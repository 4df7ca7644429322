from fractions import Fraction

import pytest

from ospr.spaces import SuperSpace, index_data


def test_parity_and_bar_m1n1():
    sp = SuperSpace(1, 1)
    assert [sp.parity(a) for a in sp.index_range()] == [1, 0, 0, 0, 1]
    assert sp.bar(2) == 4
    for a in sp.index_range():
        assert sp.bar(sp.bar(a)) == a
        assert sp.parity(sp.bar(a)) == sp.parity(a)


def test_xi_table_m1n1():
    sp = SuperSpace(1, 1)
    assert sp.xi(1) == -1
    assert sp.xi(5) == 1
    assert sp.xi(2) == sp.xi(3) == sp.xi(4) == 1


def test_dexp_m1n1():
    sp = SuperSpace(1, 1)
    # in q^{1/2} units: (-1/2, -1/2, 0, 1/2, 1/2) doubled
    assert [sp.dexp_half(a) for a in sp.index_range()] == [-1, -1, 0, 1, 1]
    for a in sp.index_range():
        assert sp.dexp_half(sp.bar(a)) == -sp.dexp_half(a)
    # the defining constraint: rho pairings match dexp differences at bar
    for i in sp.index_range():
        for j in sp.index_range():
            assert sp.rho_pair_half(i, j) == sp.dexp_half(sp.bar(i)) - sp.dexp_half(sp.bar(j))


def test_d_and_nu():
    sp = SuperSpace(1, 1)
    assert [sp.d(a) for a in sp.index_range()] == [-1, 1, 1, 1, -1]
    assert sp.nu(1) == -1 and sp.nu(2) == 0
    sp2 = SuperSpace(2, 1)
    assert [sp2.nu(i) for i in (1, 2, 3)] == [-1, 0, 1]


def test_cartan_m1n1():
    sp = SuperSpace(1, 1)
    A = [[sp.cartan_entry(i, j) for j in (1, 2)] for i in (1, 2)]
    assert A == [[0, -1], [-2, 2]]
    assert sp.qi_half_units(1) == 2 and sp.qi_half_units(2) == 1
    assert sp.alpha_parity(1) == 1 and sp.alpha_parity(2) == 0


def test_cartan_symmetrized_various():
    for (m, n) in [(1, 0), (1, 1), (2, 1), (1, 2), (3, 2)]:
        sp = SuperSpace(m, n)
        mn = sp.mn
        C = [Fraction(1)] * (mn - 1) + [Fraction(1, 2)]
        for i in range(1, mn + 1):
            for j in range(1, mn + 1):
                sym_ij = C[i - 1] * sp.cartan_entry(i, j)
                sym_ji = C[j - 1] * sp.cartan_entry(j, i)
                assert sym_ij == sym_ji


def test_space_validation():
    with pytest.raises(ValueError):
        SuperSpace(0, 1)
    with pytest.raises(ValueError):
        SuperSpace(1, -1)


def test_index_data_snapshot():
    data = index_data(SuperSpace(1, 1))
    assert data["N"] == 5
    assert data["bar"][2] == 4
    assert sum(data["parity"].values()) == 2


def test_dexp_bar_sum_invariance():
    sp = SuperSpace(2, 1)
    exps = sorted(sp.dexp_half(a) for a in sp.index_range())
    negs = sorted(-e for e in exps)
    assert exps == negs

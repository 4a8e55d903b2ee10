from fractions import Fraction

import pytest

import charnum


def test_elliptic_cubic_in_space():
    assert charnum.elliptic(3, 3, incidences=[0, 6, 3]) == 1


def test_plane_tangency_row():
    assert charnum.elliptic(2, 3, tangents=1, incidences=[0, 8]) == 4


def test_values_are_fractions():
    value = charnum.rational(2, 4, incidences=[0, 11])
    assert isinstance(value, Fraction)
    assert value == 620


def test_aux_stacks():
    assert charnum.cuspidal(2, 3, [0, 7]) == 24
    assert charnum.nodal(2, 3, [0, 8]) == 12
    assert charnum.fixed_j(2, 3, incidences=[0, 8]) == 12


def test_hyperplanes_scale_by_degree():
    assert charnum.elliptic(3, 3, incidences=[2, 6, 3]) == 9


def test_table():
    rows = charnum.table(2, 3, jobs=2)
    assert len(rows) == 10
    assert rows[0] == ((0, 9), 1)
    assert rows[-1] == ((9, 0), 33616)


def test_audit_balances():
    a = charnum.audit(3, 3, [0, 6, 3], pivot=2)
    assert a["balance"] == 0
    assert a["balance_line"] == "36·1 + 972 - 1008 = 0"
    assert a["terms"]


def test_verify():
    results = charnum.verify("lemma51", 2, 3)
    assert results and all(ok for _, ok, _ in results)


def test_unbalanced_query_raises():
    with pytest.raises(charnum.CharnumError) as info:
        charnum.elliptic(3, 3, incidences=[0, 6, 2])
    assert info.value.code == "INFINITE_FAMILY"

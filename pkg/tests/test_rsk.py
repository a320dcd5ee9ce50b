from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detgb.determinantal import MinorIndex, diagonal_ideal
from detgb.errors import NotStandard, ParseError
from detgb.monideal import all_monomials
from detgb.poly import VariableGrid
from detgb.rsk import (
    ANTIDIAGONAL,
    DIAGONAL,
    Bitableau,
    enumerate_standard,
    evacuate,
    longest_diagonal,
    minor_leq,
    rsk_backward,
    rsk_forward,
    rsk_tableaux,
    schensted_width,
    standard_basis_rank_check,
    verify_bijection,
    verify_schen3,
)

G33 = VariableGrid(3, 3)
G24 = VariableGrid(2, 4)


def mi(rows, cols):
    return MinorIndex(tuple(rows), tuple(cols))


def test_minor_leq_examples():
    assert minor_leq(mi([1, 3, 4, 5], [1, 2, 3, 6]), mi([2, 3, 5], [1, 4, 5]))
    a = mi([1, 2], [2, 3])
    assert minor_leq(a, a)
    assert minor_leq(mi([1], [1]), mi([1], [2]))
    assert not minor_leq(mi([1], [2]), mi([1], [1]))
    assert not minor_leq(mi([1], [1]), mi([1, 2], [1, 2]))


def test_text_form_round_trip():
    text = "[1,3,4,5|1,2,3,6][2,3,5|1,4,5][4|2]"
    bt = Bitableau.parse(text)
    assert str(bt) == text
    assert bt.shape == (4, 3, 1) and bt.degree == 8
    assert bt.is_standard()
    assert Bitableau.parse("") == Bitableau()
    with pytest.raises(ParseError):
        Bitableau.parse("[1,2|1,2] junk")


def test_enumerate_small_degrees():
    assert enumerate_standard(G33, 0) == [Bitableau()]
    ones = enumerate_standard(G33, 1)
    assert sorted(str(b) for b in ones) == sorted(f"[{i}|{j}]" for i in range(1, 4) for j in range(1, 4))


@pytest.mark.parametrize("grid", [G33, G24, VariableGrid(2, 2)])
@pytest.mark.parametrize("d", [2, 3, 4])
def test_standard_count_matches_monomials(grid, d):
    std = enumerate_standard(grid, d)
    assert len(std) == len(set(std)) == comb(grid.size + d - 1, d)


def test_rsk_trivial():
    assert rsk_forward((0,) * 9, G33) == Bitableau()
    assert rsk_backward(Bitableau(), G33) == (0,) * 9
    for i in range(1, 4):
        for j in range(1, 4):
            u = G33.monomial([(i, j)])
            assert str(rsk_forward(u, G33)) == f"[{i}|{j}]"
            assert rsk_backward(Bitableau([mi([i], [j])]), G33) == u


def test_rsk_backward_rejects_nonstandard():
    bad = Bitableau([mi([1], [2]), mi([1, 2], [1, 2])])
    with pytest.raises(NotStandard):
        rsk_backward(bad, G33)


@pytest.mark.parametrize("convention", [DIAGONAL, ANTIDIAGONAL])
@pytest.mark.parametrize("grid", [G33, G24])
def test_exhaustive_round_trip(grid, convention):
    for d in range(5):
        rep = verify_bijection(grid, d, convention)
        assert rep["outcome"], rep


def test_width_examples():
    assert schensted_width(G33.monomial([(1, 1), (2, 2)]), G33) == 2
    assert schensted_width(G33.monomial([(1, 2), (2, 1)]), G33) == 1
    assert schensted_width(G33.monomial([(1, 2), (2, 1)]), G33, ANTIDIAGONAL) == 2


def test_width_matches_subsequence_oracle():
    for d in range(5):
        for u in all_monomials(9, d):
            assert schensted_width(u, G33) == longest_diagonal(u, G33)


@settings(max_examples=200)
@given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4)), max_size=9))
def test_round_trip_property(positions):
    g = VariableGrid(4, 4)
    u = g.monomial(positions)
    for conv in (DIAGONAL, ANTIDIAGONAL):
        bt = rsk_forward(u, g, conv)
        assert bt.is_standard() and bt.degree == len(positions)
        assert rsk_backward(bt, g, conv) == u
        assert schensted_width(u, g, conv) == longest_diagonal(u, g, conv)


def test_schen3_examples():
    rep = verify_schen3(G33, 2, 2)
    assert rep["outcome"] and rep["J_count"] == 9
    rep = verify_schen3(G33, 1, 3)
    assert rep["outcome"] and rep["J_count"] == comb(11, 3)
    rep = verify_schen3(G33, 3, 3)
    assert rep["outcome"] and rep["J_count"] == 1


def test_membership_compatibility():
    """A standard bitableau with first factor of size >= t maps into J_t."""
    J = {t: diagonal_ideal(t, G33) for t in (2, 3)}
    for d in range(2, 5):
        for bt in enumerate_standard(G33, d):
            for t in (2, 3):
                if bt.factors[0].size >= t:
                    assert rsk_backward(bt, G33) in J[t]


@pytest.mark.parametrize("grid,d,expected", [(VariableGrid(2, 2), 1, 4), (VariableGrid(2, 2), 2, 10), (G33, 3, 165)])
def test_rank_check(grid, d, expected):
    rep = standard_basis_rank_check(grid, d)
    assert rep["outcome"] and rep["rank"] == expected


def test_evacuation_involution():
    for d in range(1, 5):
        for u in all_monomials(9, d):
            P, _ = rsk_tableaux(u, G33, ANTIDIAGONAL)
            E = evacuate(P, 3)
            assert [len(r) for r in E] == [len(r) for r in P]
            assert sorted(x for r in E for x in r) == sorted(4 - x for r in P for x in r)
            assert evacuate(E, 3) == P


def test_2x2_degree_two_images():
    g = VariableGrid(2, 2)
    assert str(rsk_forward(g.monomial([(1, 1), (2, 2)]), g)) == "[1,2|1,2]"
    assert str(rsk_forward(g.monomial([(1, 2), (2, 1)]), g)) == "[1|1][2|2]"

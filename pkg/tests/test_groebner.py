import random
from fractions import Fraction
from math import comb

import pytest
import sympy

from detgb.determinantal import antidiagonal_grevlex, diagonal_ideal, diagonal_lex, minors_ideal
from detgb.errors import NotReduced
from detgb.groebner import (
    GroebnerBasis,
    buchberger,
    eliminate,
    hilbert_data,
    ideal_contains,
    initial_ideal,
    is_groebner_basis,
    is_reduced,
    normal_form,
    reduce_basis,
)
from detgb.monideal import MonomialIdeal, all_monomials, hilbert_function
from detgb.poly import GF, QQ, GrevLex, Lex, PolyRing, VariableGrid, Weight, leading_term

G22 = VariableGrid(2, 2)
G33 = VariableGrid(3, 3)


def to_sympy(f, syms):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**e for s, e in zip(syms, m)]) for c, m in f.terms)


def from_sympy(expr, ring, syms):
    P = sympy.Poly(expr, *syms)
    return ring.from_terms((Fraction(int(c.p), int(c.q)), m) for m, c in P.terms())


def random_poly(ring, rng, terms=3, dmax=3):
    out = ring.zero()
    for _ in range(terms):
        e = [0] * ring.nvars
        for _ in range(rng.randint(0, dmax)):
            e[rng.randrange(ring.nvars)] += 1
        out = out + ring.monomial(tuple(e), rng.randint(-3, 3))
    return out


# ---------------------------------------------------------------------------
# normal form
# ---------------------------------------------------------------------------


def test_normal_form_multiple():
    ring = G33.ring()
    g = ring.parse("x[1,1]*x[2,2] - x[1,2]*x[2,1]")
    h = ring.parse("x[3,3]^2 + 5*x[1,3]")
    assert normal_form(g * h, [g], GrevLex(9)).is_zero()


def test_normal_form_one_step():
    ring = G22.ring()
    g = ring.parse("x[1,1]*x[2,2] - x[1,2]*x[2,1]")
    f = ring.parse("x[1,1]*x[2,2]")
    assert normal_form(f, [g], diagonal_lex(G22)) == ring.parse("x[1,2]*x[2,1]")


def test_normal_form_membership_oracle():
    """200 random elements of I_2(3x3): NF(f) = NF(f + h) for h in I, and NF(h) = 0."""
    ring = G33.ring()
    gens = minors_ideal(2, G33, ring)
    order = GrevLex(9, [4, 0, 8, 1, 7, 2, 6, 3, 5])
    G = buchberger(gens, order)
    rng = random.Random(2)
    for _ in range(200):
        h = ring.zero()
        for g in rng.sample(gens, 3):
            h = h + g * random_poly(ring, rng)
        f = random_poly(ring, rng, terms=5)
        assert normal_form(h, G.elements, order).is_zero()
        assert ideal_contains(G, h)
        assert normal_form(f + h, G.elements, order) == normal_form(f, G.elements, order)


def test_normal_form_terms_irreducible():
    ring = G33.ring()
    order = Lex(9)
    G = buchberger(minors_ideal(2, G33, ring), order)
    lms = G.leading_monomials()
    rng = random.Random(4)
    for _ in range(30):
        r = normal_form(random_poly(ring, rng, terms=6), G.elements, order)
        for _, m in r.terms:
            assert not any(all(a <= b for a, b in zip(lm, m)) for lm in lms)


# ---------------------------------------------------------------------------
# buchberger
# ---------------------------------------------------------------------------


def test_principal_ideal():
    ring = G33.ring()
    f = ring.parse("3*x[1,1]^2 - x[2,3]*x[3,1] + 1")
    G = buchberger([f], GrevLex(9))
    assert len(G) == 1 and G.elements[0] == f.monic(GrevLex(9))


def test_2x2_single_minor():
    ring = G22.ring()
    for order in (Lex(4), GrevLex(4, [3, 1, 2, 0]), Weight([5, 1, 2, 9])):
        G = buchberger(minors_ideal(2, G22, ring), order)
        assert len(G) == 1


def test_3x3_diagonal_lex_no_new_elements():
    ring = G33.ring()
    gens = minors_ideal(2, G33, ring)
    G = buchberger(gens, diagonal_lex(G33))
    assert len(G) == 9
    assert initial_ideal(G) == diagonal_ideal(2, G33)


@pytest.mark.parametrize("seed", range(4))
def test_against_sympy(seed):
    rng = random.Random(seed)
    ring = PolyRing(["a", "b", "c", "d"], QQ)
    syms = sympy.symbols("a b c d")
    gens = [random_poly(ring, rng, terms=3, dmax=2) for _ in range(3)]
    gens = [g for g in gens if g]
    ours = buchberger(gens, GrevLex(4))
    theirs = sympy.groebner([to_sympy(g, syms) for g in gens], *syms, order="grevlex", domain="QQ")
    expected = {from_sympy(e, ring, syms).monic(GrevLex(4)) for e in theirs.exprs}
    assert set(ours.elements) == expected


def test_against_sympy_lex_minors():
    ring = VariableGrid(2, 3).ring(QQ)
    syms = sympy.symbols("v0:6")
    gens = minors_ideal(2, VariableGrid(2, 3), ring)
    ours = buchberger(gens, Lex(6))
    theirs = sympy.groebner([to_sympy(g, syms) for g in gens], *syms, order="lex", domain="QQ")
    assert set(ours.elements) == {from_sympy(e, ring, syms).monic(Lex(6)) for e in theirs.exprs}


def test_gf_coefficients():
    ring = G33.ring(GF(7))
    G = buchberger(minors_ideal(2, G33, ring), GrevLex(9))
    assert is_groebner_basis(G.elements, GrevLex(9))


def test_trace_lines():
    trace = []
    buchberger(minors_ideal(2, G33, G33.ring()), Lex(9, [2, 4, 6, 0, 1, 3, 5, 7, 8]), trace=trace)
    assert trace and all(isinstance(line, str) and "\n" not in line for line in trace)


# ---------------------------------------------------------------------------
# reduce_basis / initial_ideal
# ---------------------------------------------------------------------------


def test_reduce_idempotent_and_redundant():
    ring = G33.ring()
    order = GrevLex(9)
    G = buchberger(minors_ideal(2, G33, ring), order)
    f, g = G.elements[0], G.elements[1]
    padded = GroebnerBasis(order, [f, f + g, g] + G.elements[2:])
    once = reduce_basis(padded)
    assert once.elements == G.elements
    assert reduce_basis(once).elements == once.elements
    assert is_reduced(once)


def test_permuted_generators_agree():
    ring = G33.ring()
    gens = minors_ideal(2, G33, ring)
    order = Lex(9, [8, 3, 1, 0, 5, 2, 7, 6, 4])
    ref = buchberger(gens, order).elements
    rng = random.Random(9)
    for _ in range(5):
        rng.shuffle(gens)
        assert buchberger(gens, order).elements == ref


def test_initial_ideal_not_reduced():
    ring = G22.ring()
    g = ring.parse("2*x[1,1]*x[2,2] - 2*x[1,2]*x[2,1]")
    with pytest.raises(NotReduced):
        initial_ideal(GroebnerBasis(Lex(4), [g], reduced=False))
    with pytest.raises(NotReduced):
        initial_ideal(GroebnerBasis(Lex(4), [g], reduced=True))


def test_initial_ideal_principal():
    ring = G22.ring()
    G = buchberger(minors_ideal(2, G22, ring), diagonal_lex(G22))
    assert initial_ideal(G) == MonomialIdeal(4, [G22.monomial([(1, 1), (2, 2)])])


def test_hilbert_function_order_independent():
    ring = G33.ring()
    gens = minors_ideal(2, G33, ring)
    a = initial_ideal(buchberger(gens, Lex(9, [3, 7, 1, 0, 8, 2, 5, 4, 6])))
    b = initial_ideal(buchberger(gens, GrevLex(9, [6, 1, 2, 8, 0, 3, 7, 5, 4])))
    assert a != b
    ha, hb = hilbert_function(a, 6), hilbert_function(b, 6)
    assert ha.values == hb.values
    assert (ha.dimension, ha.degree) == (hb.dimension, hb.degree)


# ---------------------------------------------------------------------------
# is_groebner_basis
# ---------------------------------------------------------------------------


def test_max_minors_random_weights():
    g = VariableGrid(2, 3)
    gens = minors_ideal(2, g, g.ring())
    rng = random.Random(0)
    for _ in range(50):
        assert is_groebner_basis(gens, Weight([rng.randint(1, 10**4) for _ in range(6)]))


def test_some_lex_order_fails_for_2minors():
    """The 2-minors of 3x3 are not universal: search lex rankings for a failure."""
    gens = minors_ideal(2, G33, G33.ring())
    failing = None
    rng = random.Random(1)
    for _ in range(5000):
        perm = rng.sample(range(9), 9)
        witness = []
        if not is_groebner_basis(gens, Lex(9, perm), witness):
            failing = perm
            break
    assert failing is not None
    assert witness
    # the completed basis really is larger
    assert len(buchberger(gens, Lex(9, failing))) > 9


def test_single_polynomial_is_gb():
    ring = G33.ring()
    assert is_groebner_basis([ring.parse("x[1,1]^3 + x[2,2] + 1")], Lex(9))


# ---------------------------------------------------------------------------
# elimination and Hilbert functions
# ---------------------------------------------------------------------------


def test_eliminate_nothing():
    ring = G33.ring()
    gens = minors_ideal(2, G33, ring)
    assert set(eliminate(gens, [])) == set(buchberger(gens, GrevLex(9)).elements)


def test_eliminate_segre_2x2():
    ring = PolyRing(["y1", "y2", "z1", "z2", "x11", "x12", "x21", "x22"], QQ)
    v = ring.var
    gens = [v("x11") - v("y1") * v("z1"), v("x12") - v("y1") * v("z2"), v("x21") - v("y2") * v("z1"), v("x22") - v("y2") * v("z2")]
    out = eliminate(gens, range(4))
    assert len(out) == 1
    f = out[0]
    target = v("x11") * v("x22") - v("x12") * v("x21")
    assert f == target or f == -target


def test_hilbert_zero_ideal():
    for N in (1, 3, 5):
        hd = hilbert_function(MonomialIdeal(N, []), 6)
        assert list(hd.values) == [comb(N - 1 + d, d) for d in range(7)]
        assert hd.dimension == N and hd.degree == 1


def test_hilbert_2x2_brute_force():
    G = buchberger(minors_ideal(2, G22, G22.ring()), diagonal_lex(G22))
    M = initial_ideal(G)
    hd = hilbert_data(G, 6)
    for d in range(7):
        assert hd.values[d] == sum(1 for u in all_monomials(4, d) if u not in M)
    assert (hd.dimension, hd.degree) == (3, 2)


def test_gb_output_passes_check():
    for (m, n, t) in [(3, 3, 2), (3, 4, 3), (4, 4, 3)]:
        g = VariableGrid(m, n)
        gens = minors_ideal(t, g, g.ring())
        for order in (Lex(g.size, list(reversed(range(g.size)))), antidiagonal_grevlex(g)):
            G = buchberger(gens, order)
            assert is_groebner_basis(G.elements, order)

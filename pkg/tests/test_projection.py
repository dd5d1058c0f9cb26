"""Weight functions: combinatorics, the two evaluators, mode expansion."""

import pytest

from uqa22.blocks import ArgList, build_block, build_kernel
from uqa22.ncalg import NCExpr, abstract, mode
from uqa22.projection import (
    MINUS,
    PLUS,
    AdmissiblePair,
    admissible_pairs,
    build_F,
    build_F_tilde,
    build_S,
    build_tau_IJ,
    mode_expand,
    minus_f_row,
    minus_tau_row,
    plus_f_row,
    star_projection,
    tau_factored,
    weight_minus_closed,
    weight_plus_closed,
    weight_plus_recursive,
    weight_structure,
)
from uqa22.qfield import qnum, qpow
from uqa22.verify import brute_admissible

q = qpow(1)


# -- admissible pairs ---------------------------------------------------------

def test_pairs_n2():
    assert [(p.I, p.J) for p in admissible_pairs(2, 1, PLUS)] == [((1,), (2,))]
    assert [(p.I, p.J) for p in admissible_pairs(2, 1, MINUS)] == [((1,), (2,))]


def test_pairs_n3_r1_plus():
    got = {(p.I, p.J) for p in admissible_pairs(3, 1, PLUS)}
    assert got == {((1,), (2,)), ((1,), (3,)), ((2,), (3,))}


def test_pairs_n4_r2_plus_is_the_printed_triple():
    got = [(p.I, p.J) for p in admissible_pairs(4, 2, PLUS)]
    assert got == [((1, 2), (4, 3)), ((2, 1), (4, 3)), ((3, 1), (4, 2))]


def test_pairs_n4_r2_minus_count():
    assert len(admissible_pairs(4, 2, MINUS)) == 3


def test_pairs_out_of_range():
    with pytest.raises(ValueError):
        admissible_pairs(4, 3, PLUS)


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("orientation", [PLUS, MINUS])
def test_pairs_match_brute_force(n, orientation):
    for r in range(n // 2 + 1):
        fast = {(p.I, p.J) for p in admissible_pairs(n, r, orientation)}
        assert fast == set(brute_admissible(n, r, orientation))


def test_pair_validation():
    with pytest.raises(ValueError):
        AdmissiblePair((1,), (1,), PLUS, 3)
    with pytest.raises(ValueError):
        AdmissiblePair((2,), (1,), PLUS, 3)
    with pytest.raises(ValueError):
        AdmissiblePair((1, 2), (3, 4), PLUS, 4)   # J must decrease


# -- building blocks ----------------------------------------------------------

def test_F_with_empty_row_is_a_bare_symbol():
    f = build_F(ArgList((), 1), 2, 4)
    assert set(f.expr.coeffs) == {(abstract("f+", 1),)}


def test_F_matches_rho_blocks():
    f = build_F(ArgList((1,), 2), 2, 5)
    rho = build_block("rho", ArgList((1,), 2), 1, 2).expand(5)
    got = f.expr.coefficient((abstract("f+", 1),))
    assert got.equal_up_to(-rho, 5)


def test_S_coefficients_carry_twisted_symbol():
    s = build_S(ArgList((1,), 2), 2, 5)
    words = set(s.expr.coeffs)
    assert (abstract("s+", 1, True),) in words
    assert (abstract("s+", 2),) in words
    nu = build_block("nu", ArgList((1,), 2), 1, 2).expand(5)
    assert s.expr.coefficient((abstract("s+", 1, True),)).equal_up_to(-nu, 5)


def test_F_IJ_row_selection():
    pair = AdmissiblePair((3,), (4,), PLUS, 4)
    assert plus_f_row(pair, 2) == ((3, 1), 2)
    assert plus_f_row(pair, 1) == ((3,), 1)
    with pytest.raises(ValueError, match="paired"):
        plus_f_row(pair, 4)


def test_tau_IJ_requires_valid_index():
    pair = AdmissiblePair((1,), (2,), PLUS, 2)
    with pytest.raises(ValueError):
        build_tau_IJ(pair, 2, 4)


def test_tau_n2_display():
    pair = AdmissiblePair((1,), (2,), PLUS, 2)
    t = build_tau_IJ(pair, 1, 6)
    lam = build_block("lambda", ArgList((1,), 2), 1, 2)
    assert t.equal_up_to(lam.scale(-1).expand(6), 6)


def test_tau_n4_products_include_alpha_crossings():
    pair = AdmissiblePair((2, 1), (4, 3), PLUS, 4)
    want = build_block("lambda", ArgList((1, 2, 3), 4), 2, 4).scale(-1) \
        * build_kernel("alpha", qnum(1), 1, 2, 4) \
        * build_kernel("alpha", qpow(1, -1), 1, 2, 4) \
        * build_kernel("alpha", qpow(1, -1), 3, 2, 4)
    got = tau_factored(pair, 1)
    assert got.expand(4).equal_up_to(want.expand(4), 4)


# -- closed formula -----------------------------------------------------------

def test_weight_plus_n1():
    w = weight_plus_closed(1, 3)
    assert set(w.expr.coeffs) == {(abstract("f+", 1),)}


def test_weight_plus_n2_structure():
    terms = weight_structure(2, PLUS)
    assert len(terms) == 2
    empty = [t for t in terms if t.pair.r == 0][0]
    assert empty.f_rows == (((), 1), ((1,), 2))
    paired = [t for t in terms if t.pair.r == 1][0]
    assert paired.pair.I == (1,) and paired.pair.J == (2,)
    assert paired.s_rows == (((), 1),)
    assert not paired.f_rows


def test_weight_plus_n2_value():
    w = weight_plus_closed(2, 5)
    f2 = build_F(ArgList((1,), 2), 2, 5)
    pf1 = NCExpr.from_word(2, (abstract("f+", 1),))
    tau = build_tau_IJ(AdmissiblePair((1,), (2,), PLUS, 2), 1, 5)
    ps1 = NCExpr.from_word(2, (abstract("s+", 1),))
    want = pf1 * f2.expr + ps1.scale(tau)
    assert w.expr.equal_up_to(want, 5)


# -- recursion oracle ---------------------------------------------------------

def test_recursion_n1_and_n2_hand_unrolled():
    w1 = weight_plus_recursive(1, 3)
    assert set(w1.expr.coeffs) == {(abstract("f+", 1),)}
    w2 = weight_plus_recursive(2, 5)
    assert w2.equal_up_to(weight_plus_closed(2, 5), 5)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_closed_equals_recursive(n):
    depth = 4
    closed = weight_plus_closed(n, depth)
    recursive = weight_plus_recursive(n, depth)
    assert closed.equal_up_to(recursive, depth)


# -- negative projection ------------------------------------------------------

def test_weight_minus_n1():
    w = weight_minus_closed(1, 3)
    assert set(w.expr.coeffs) == {(abstract("f-", 1),)}


def test_weight_minus_n2_hand_unrolled():
    from uqa22.blocks import build_tilde_block
    w = weight_minus_closed(2, 5)
    ftilde = build_F_tilde(ArgList((2,), 1), 2, 5)
    pf2 = NCExpr.from_word(2, (abstract("f-", 2),))
    tau = build_tilde_block("lambda", ArgList((2,), 1), 2, 2).expand(5)
    ps2 = NCExpr.from_word(2, (abstract("s~-", 2),))
    want = ftilde.expr * pf2 + ps2.scale(tau)
    assert w.expr.equal_up_to(want, 5)


def test_weight_minus_orders_factors_f_then_reversed_s():
    terms = weight_structure(4, MINUS)
    paired = [t for t in terms if t.pair.I == (1, 3)][0]
    assert paired.pair.J == (2, 4)
    # reversed S row: the second factor's row holds the first paired index
    assert paired.s_rows == (((2,), 4), ((), 2))


def test_minus_tau_row_skips_and_appends():
    # a paired index already used is skipped from the natural range and
    # re-appended at the end, so it appears exactly once
    pair = AdmissiblePair((1, 3), (2, 5), MINUS, 5)
    row, target = minus_tau_row(pair, 2)
    assert target == 3
    assert row == (4, 5, 2)
    frow, ftarget = minus_f_row(pair, 4)
    assert (frow, ftarget) == ((5, 2), 4)


# -- mode expansion -----------------------------------------------------------

def test_mode_expand_single_current():
    w = mode_expand(weight_plus_closed(1, 3), 5)
    assert set(w.coeffs) == {(mode("f", m),) for m in range(1, 6)}
    for m in range(1, 6):
        assert w.coefficient((mode("f", m),)).coefficient((-m,)) == qnum(1)


def test_mode_expand_minus_single_current():
    w = mode_expand(weight_minus_closed(1, 3), 4)
    assert set(w.coeffs) == {(mode("f", -m),) for m in range(0, 5)}


def test_mode_expand_composite_coefficient():
    from uqa22.projection import _ps_plus_modes
    ps = _ps_plus_modes(1, 1, 6, False)
    pref = qnum(-1) / (q + qpow(-2))
    got = ps.coefficient((mode("f", 1), mode("f", 0))).coefficient((-1,))
    assert got == pref * (q + 1)
    got = ps.coefficient((mode("f", 0), mode("f", 1))).coefficient((-1,))
    assert got == -pref * (1 + qpow(-1))


def test_mode_expand_twisted_symbol_uses_scaled_argument():
    from uqa22.projection import _ps_plus_modes
    plain = _ps_plus_modes(1, 1, 5, False)
    twisted = _ps_plus_modes(1, 1, 5, True)
    for word, series in plain.coeffs.items():
        tw = twisted.coefficient(word)
        assert tw.terms == series.substitute_scale(1, qpow(1, -1)).terms


def test_mode_window_monotonicity():
    big = mode_expand(weight_plus_closed(2, 4), 4)
    small = mode_expand(weight_plus_closed(2, 4), 3)
    for word, series in small.coeffs.items():
        if all(abs(s.index) <= 3 for s in word):
            ref = big.coefficient(word)
            assert ref.equal_up_to(series, min(ref.validity, series.validity))


def test_mode_sign_disjointness():
    plus = mode_expand(weight_plus_closed(2, 4), 4)
    for word in plus.coeffs:
        assert all(s.index >= 0 for s in word)
    minus = mode_expand(weight_minus_closed(2, 4), 4)
    for word in minus.coeffs:
        assert all(s.index <= 1 for s in word)
        # index 1 only arises inside composite-current pairs
        if any(s.index == 1 for s in word):
            assert any(x.index <= 0 for x in word)


# -- duality transport --------------------------------------------------------

def test_star_projection_single_current():
    sp = star_projection(1, 4, 5, "-")
    assert set(sp.coeffs) == {(mode("e", -m),) for m in range(1, 6)}
    for m in range(1, 6):
        assert sp.coefficient((mode("e", -m),)).coefficient((m,)) == qnum(1)
    sp2 = star_projection(1, 4, 5, "+")
    assert set(sp2.coeffs) == {(mode("e", m),) for m in range(0, 6)}


def test_double_involution_with_inversion_restores():
    me = mode_expand(weight_plus_closed(2, 4), 3)
    back = me.iota(invert_vars=True).iota(invert_vars=True)
    assert set(back.coeffs) == set(me.coeffs)
    for w, s in me.coeffs.items():
        assert back.coeffs[w].terms == s.terms

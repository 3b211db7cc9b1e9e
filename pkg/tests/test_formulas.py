from __future__ import annotations

from fractions import Fraction

import pytest

from graphres.correlator import maximize
from graphres.errors import DomainError, FormulaNotApplicable
from graphres.formulas import (
    AGREED,
    IDENTITY,
    MAIN,
    RESOLVED_DEFAULTS,
    SUPPLEMENT,
    GammaFormulaResult,
    gamma_cluster,
    gamma_star,
    gamma_tree,
    gamma_turan,
    resolve_variants,
)
from graphres.graph import make_grid, make_star, make_tree, make_turan, max_corona_edges, turan_spec
from graphres.state import graph_state


def exact(graph, **kw):
    return Fraction(maximize(graph_state(graph), **kw).gamma)


# --------------------------------------------------------------------------
# star


def test_star_sequence_l6():
    assert [gamma_star(6, p).gamma for p in range(6)] == [0, 1, 2, 3, 3, 3]


@pytest.mark.parametrize("L", range(3, 11))
def test_star_formula_matches_exhaustive_evaluation(L):
    for p in range(max_corona_edges(L) + 1):
        assert gamma_star(L, p).gamma == exact(make_star(L, p)), (L, p)


def test_star_small_l_uses_lc_identity():
    r = gamma_star(4, 3)
    assert r.variant == IDENTITY and r.gamma == 0
    assert gamma_star(3, 1).gamma == 0


def test_star_closing_edge_variants():
    r = gamma_star(7, 6)
    assert r.disputed
    assert r.variants == {MAIN: 5, SUPPLEMENT: 3}
    assert r.variant == SUPPLEMENT and r.gamma == 3 == exact(make_star(7, 6))
    even = gamma_star(8, 7)
    assert not even.disputed and even.gamma == gamma_star(8, 6).gamma


def test_star_asymptote():
    for p in range(10, 400):
        g = gamma_star(p + 2, p).gamma
        assert abs(g / p - Fraction(1, 2)) <= Fraction(2, p)


def test_star_at_large_l_reaches_half_only_at_the_top():
    L = 1000
    ratios = [gamma_star(L, p).gamma / L for p in range(L)]
    assert all(r <= Fraction(1, 2) for r in ratios)
    # gamma(p) = (p + 3) // 2 touches L/2 for the last three corona sizes
    assert [p for p, r in enumerate(ratios) if r == Fraction(1, 2)] == [997, 998, 999]


def test_half_ratio_also_exact_at_l10():
    assert exact(make_star(10, 8)) == 5


def test_star_domain():
    with pytest.raises(DomainError):
        gamma_star(2, 0)
    with pytest.raises(DomainError):
        gamma_star(6, 6)


# --------------------------------------------------------------------------
# Turan


@pytest.mark.parametrize("L, K", [(4, 2), (6, 2), (8, 2), (8, 4), (10, 2)])
def test_turan_even_k_matches_exhaustive(L, K):
    assert gamma_turan(turan_spec(L, K)).gamma == K - 1 == exact(make_turan(L, K)[0])


@pytest.mark.parametrize("L, K, oracle_gamma", [(6, 3, 3), (9, 3, 4)])
def test_turan_odd_k_formula_is_below_exhaustive(L, K, oracle_gamma):
    r = gamma_turan(turan_spec(L, K))
    assert r.gamma == K - 1
    assert exact(make_turan(L, K)[0]) == oracle_gamma
    assert "odd K" in r.validity_note


def test_turan_special_cases():
    assert gamma_turan(turan_spec(3, 2)).variant == IDENTITY
    assert exact(make_turan(3, 2)[0]) == 0
    with pytest.raises(FormulaNotApplicable):
        gamma_turan(turan_spec(5, 1))
    with pytest.raises(FormulaNotApplicable):
        gamma_turan(turan_spec(5, 3))  # sizes (2, 2, 1)


# --------------------------------------------------------------------------
# trees


def test_tree_depth_one_is_a_star():
    for r in (2, 3, 5):
        res = gamma_tree(r, 1)
        assert res.gamma == 0 and res.variant == IDENTITY
        assert exact(make_tree(r, 1)) == 0


def test_tree_even_depth_even_r():
    r = gamma_tree(2, 2)
    assert r.variants == {MAIN: 2, SUPPLEMENT: 1}
    assert r.variant == MAIN
    assert exact(make_tree(2, 2)) == r.gamma


def test_tree_even_depth_odd_r():
    r = gamma_tree(3, 2)
    assert r.variant == AGREED and r.gamma == 2
    assert exact(make_tree(3, 2), max_qubits=13) == 2


def test_tree_odd_depth_is_flagged():
    r = gamma_tree(2, 3)
    assert r.disputed
    assert r.variants == {MAIN: 2, SUPPLEMENT: 9}
    assert "unverified" in r.validity_note


def test_tree_domain():
    with pytest.raises(DomainError):
        gamma_tree(1, 3)
    with pytest.raises(DomainError):
        gamma_tree(2, 0)
    with pytest.raises(DomainError):
        gamma_tree(2, 70)


# --------------------------------------------------------------------------
# clusters


@pytest.mark.parametrize("m, n, oracle_gamma", [(2, 2, 1), (2, 3, 3), (2, 4, 5), (2, 5, 6), (2, 6, 7),
                                                 (3, 3, 4), (3, 4, 6)])
def test_cluster_against_exhaustive(m, n, oracle_gamma):
    assert exact(make_grid(m, n)) == oracle_gamma
    f = gamma_cluster(m, n).gamma
    if (m, n) in ((2, 2), (2, 3)):
        assert f == oracle_gamma + (2 if n == 2 else 1)
    else:
        assert f == oracle_gamma


def test_cluster_domain():
    with pytest.raises(FormulaNotApplicable):
        gamma_cluster(4, 4)
    with pytest.raises(DomainError):
        gamma_cluster(2, 1)


# --------------------------------------------------------------------------
# result type and variant resolution


def test_result_serialization():
    d = gamma_tree(2, 2).to_dict()
    assert d == {"gamma": 2, "variant": MAIN, "variants": {MAIN: 2, SUPPLEMENT: 1},
                 "validity_note": "even r, even h: variants differ by one"}
    with pytest.raises(DomainError):
        GammaFormulaResult(Fraction(-1), AGREED)


def test_resolve_variants():
    res = resolve_variants()
    assert set(res) == set(RESOLVED_DEFAULTS)
    assert res["star-closing-odd-L"]["oracle_gamma"] == 2
    assert res["star-closing-odd-L"]["selected"] == SUPPLEMENT
    assert res["tree-even-h-even-r"]["oracle_gamma"] == 2
    assert res["tree-even-h-even-r"]["selected"] == MAIN
    assert res["tree-odd-h"]["oracle_gamma"] == 4
    assert res["tree-odd-h"]["selected"] is None
    for key, rec in res.items():
        if rec["selected"] is not None:
            assert rec["selected"] == RESOLVED_DEFAULTS[key]

"""Iterated extension tower: recursion vs closed forms, chi and h^1 ladders."""

import pytest

from scroll_ulrich import (
    DivisorClass,
    ScrollParams,
    chi_endo_tower,
    chi_tower_vs_line,
    epsilon,
    moduli_dim_gap,
    moduli_dim_tower,
    mul_div_div,
    named_line_bundles,
    slope,
    tower_chern,
    tower_h1_recursion,
)
from scroll_ulrich.tower import in_tower_hypothesis, tower_pair

HYP_GRID = [
    (a, b, c) for a in (0, 1) for b in range(a, 2) for c in range(a + b + 1, a + b + 7)
]


def test_epsilon():
    assert epsilon(1) == 1
    assert epsilon(2) == 2
    assert epsilon(7) == 1
    with pytest.raises(ValueError):
        epsilon(0)


def test_rank_one_and_two():
    p = ScrollParams(0, 1, 2)
    f = named_line_bundles(p)
    t1 = tower_chern(p, 1)
    assert t1.c1 == f["N_dual"]
    assert t1.c2.as_tuple() == (0, 0, 0) and t1.c3 == 0
    t2 = tower_chern(p, 2)
    assert t2.c1 == f["N"] + f["N_dual"]
    assert t2.c2 == mul_div_div(f["N_dual"], f["N"], p)
    assert t2.quotients == (f["N_dual"], f["N"])


def test_c3_example():
    t3 = tower_chern(ScrollParams(0, 0, 1), 3)
    assert t3.c3 == 8  # (r^2 - 1)(r - 2)(2c - b - a - 1)


def test_recursion_matches_closed_forms_everywhere():
    # closed forms hold for all parameters, not only the small-a-b strip
    for cell in [(0, 0, 1), (0, 1, 2), (1, 1, 3), (1, 2, 4), (2, 3, 6), (3, 3, 12)]:
        p = ScrollParams(*cell)
        for r in range(1, 13):
            tower_chern(p, r)  # raises ClosedFormMismatchError on disagreement


def test_outside_hypothesis_flag():
    t = tower_chern(ScrollParams(0, 2, 4), 4)
    assert t.outside_hypothesis
    assert not tower_chern(ScrollParams(0, 1, 2), 4).outside_hypothesis


def test_slope_constant_in_rank():
    for cell in HYP_GRID:
        p = ScrollParams(*cell)
        mu = 4 * (2 * p.c - p.b - p.a) - 2
        for r in range(1, 13):
            assert slope(p, tower_chern(p, r).c1, r) == mu


def test_chi_vs_line_closed_forms():
    p = ScrollParams(0, 0, 1)
    n_dual, n = tower_pair(p)
    pick = {1: n_dual, 2: n}
    assert chi_tower_vs_line(p, 3, pick[epsilon(4)]) == -5
    assert chi_tower_vs_line(p, 2, pick[epsilon(3)]) == -2
    assert chi_tower_vs_line(p, 1, n_dual) == 1
    for cell in HYP_GRID:
        q = ScrollParams(*cell)
        nd, nn = tower_pair(q)
        for r in range(1, 13):
            next_q = {1: nd, 2: nn}[epsilon(r + 1)]
            last_q = {1: nd, 2: nn}[epsilon(r)]
            assert chi_tower_vs_line(q, r, next_q) == (-r - 2 if r % 2 else -r)
            assert chi_tower_vs_line(q, r, last_q) == (-r + 2 if r % 2 else -r)


def test_chi_vs_line_skips_assertion_outside_hypothesis():
    p = ScrollParams(0, 3, 4)
    n_dual, n = tower_pair(p)
    value = chi_tower_vs_line(p, 3, n)
    # additive over the filtration: 2 chi(N^U - N) + chi(O)
    from scroll_ulrich import chi

    assert value == 2 * chi(p, n_dual - n) + 1


def test_chi_endo_tower():
    p = ScrollParams(0, 0, 1)
    assert chi_endo_tower(p, 1) == 1
    assert chi_endo_tower(p, 2) == -4
    assert chi_endo_tower(p, 3) == -7
    for cell in HYP_GRID:
        q = ScrollParams(*cell)
        for r in range(1, 13):
            assert chi_endo_tower(q, r) == (-r * r + 2 if r % 2 else -r * r)


def test_h1_sequence():
    for cell in HYP_GRID:
        q = ScrollParams(*cell)
        seq = tower_h1_recursion(q, 12)
        assert seq == [r + 2 if r % 2 else r + 1 for r in range(1, 13)]
    with pytest.raises(ValueError):
        tower_h1_recursion(ScrollParams(0, 2, 3), 4)
    with pytest.raises(ValueError):
        tower_h1_recursion(ScrollParams(0, 0, 1), 0)


def test_moduli_dims_and_gaps():
    assert moduli_dim_tower(1) == 0
    assert moduli_dim_tower(2) == 5
    assert moduli_dim_tower(3) == 8
    assert [moduli_dim_gap(r) for r in range(2, 9)] == [3, 1, 5, 3, 7, 5, 9]
    for r in range(2, 13):
        want = r + 1 if r % 2 == 0 else r - 2
        assert moduli_dim_gap(r) == want > 0
    with pytest.raises(ValueError):
        moduli_dim_tower(0)
    with pytest.raises(ValueError):
        moduli_dim_gap(1)


def test_quotient_alternation():
    p = ScrollParams(1, 1, 3)
    f = named_line_bundles(p)
    t = tower_chern(p, 6)
    for i, q in enumerate(t.quotients):
        assert q == (f["N"] if i % 2 else f["N_dual"])
    assert t.c1 == sum(t.quotients, DivisorClass(0, 0, 0))


def test_hypothesis_predicate():
    assert in_tower_hypothesis(ScrollParams(0, 1, 2))
    assert not in_tower_hypothesis(ScrollParams(1, 0, 2))
    assert not in_tower_hypothesis(ScrollParams(0, 2, 3))


def test_closed_form_mismatch_is_a_hard_error(monkeypatch):
    import scroll_ulrich.tower as towmod
    from scroll_ulrich import Codim2Class, ClosedFormMismatchError

    real = towmod._closed_c2

    def perturbed(params, r):
        value = real(params, r)
        return Codim2Class(value.p, value.q, value.r + (1 if r == 3 else 0))

    monkeypatch.setattr(towmod, "_closed_c2", perturbed)
    with pytest.raises(ClosedFormMismatchError):
        tower_chern(ScrollParams(0, 0, 1), 3)

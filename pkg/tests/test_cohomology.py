"""Cohomology layer: frozen values, dual-route chi oracle, lattice oracle.

The scroll is toric; for any divisor class the sections are the lattice
points of the polyhedron cut out by the six rays of its fan,

    (1,0,b), (-1,a,0), (0,1,0), (0,-1,0), (0,0,1), (0,0,-1),

so h0 has a section-counting oracle that never touches the pushforward
code, and h3 follows from it through K_X - D.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scroll_ulrich import (
    CohomologyVector,
    DivisorClass,
    ScrollParams,
    chi,
    chi_closed_form,
    h_hirzebruch,
    h_p1,
    h_scroll,
    serre_dual,
)
from scroll_ulrich import cohomology as cohmod

PARAMS = [
    ScrollParams(0, 0, 1),
    ScrollParams(0, 1, 2),
    ScrollParams(0, 2, 4),
    ScrollParams(1, 1, 3),
    ScrollParams(1, 2, 4),
    ScrollParams(2, 3, 6),
]


def h0_lattice(params, div):
    """Count lattice points (m, n, p) with

    m + b*p >= -z,  -m + a*n >= 0,  n >= -y,  -n >= 0,  p >= -x,  -p >= 0.
    """
    a, b = params.a, params.b
    x, y, z = div.x, div.y, div.z
    count = 0
    for p in range(-x, 1):
        for n in range(-y, 1):
            # -z - b*p <= m <= a*n
            count += max(a * n - (-z - b * p) + 1, 0)
    return count


def h3_lattice(params, div):
    return h0_lattice(params, serre_dual(params, div))


params_st = st.sampled_from(PARAMS)
divisors = st.builds(
    DivisorClass, st.integers(-6, 6), st.integers(-6, 6), st.integers(-25, 25)
)


def test_p1_values():
    assert h_p1(3).as_tuple() == (4, 0, 0, 0)
    assert h_p1(-1).as_tuple() == (0, 0, 0, 0)
    assert h_p1(-4).as_tuple() == (0, 3, 0, 0)


def test_hirzebruch_values():
    # sum h_p1(1) + h_p1(0) + h_p1(-1); lattice count agrees
    assert h_hirzebruch(1, 2, 1).as_tuple() == (3, 0, 0, 0)
    assert h_hirzebruch(2, -1, 17).as_tuple() == (0, 0, 0, 0)
    assert h_hirzebruch(0, 2, 0).as_tuple() == (3, 0, 0, 0)
    assert h_hirzebruch(1, 2, 1).h0 == sum(max(1 - k + 1, 0) for k in range(3))
    with pytest.raises(ValueError):
        h_hirzebruch(-1, 0, 0)


def test_hirzebruch_section_count_matches_lattice():
    # 2-dimensional slice of the lattice oracle (p = 0 layer with b = 0)
    p = ScrollParams(1, 0, 2)
    for alpha in range(4):
        for beta in range(-5, 6):
            got = h_hirzebruch(1, alpha, beta).h0
            want = h0_lattice(p, DivisorClass(0, alpha, beta))
            assert got == want


def test_scroll_values():
    p = ScrollParams(0, 1, 2)
    assert h_scroll(p, DivisorClass(0, 2, -3)).as_tuple() == (0, 6, 0, 0)
    assert h_scroll(p, DivisorClass(0, -2, 3)).as_tuple() == (0, 4, 0, 0)
    assert chi(p, DivisorClass(0, 2, -3)) == -6
    for q in PARAMS:
        assert h_scroll(q, DivisorClass(0, 0, 0)).as_tuple() == (1, 0, 0, 0)
        assert h_scroll(q, DivisorClass(-1, 5, 9)).is_zero()
        assert chi(q, DivisorClass(-1, 5, 9)) == 0


def test_chi_closed_form_values():
    assert chi_closed_form(ScrollParams(1, 1, 3), DivisorClass(2, 2, 5)) == 36
    assert chi_closed_form(ScrollParams(0, 1, 2), DivisorClass(0, 2, -3)) == -6
    for q in PARAMS:
        assert chi_closed_form(q, DivisorClass(0, 0, 0)) == 1


def test_serre_dual_map():
    p = ScrollParams(0, 0, 1)
    assert serre_dual(p, DivisorClass(1, 1, 1)) == DivisorClass(-3, -3, -3)
    q = ScrollParams(1, 2, 4)
    assert serre_dual(q, DivisorClass(0, 0, 0)) == DivisorClass(-2, -2, -5)
    d = DivisorClass(3, -2, 7)
    assert serre_dual(q, serre_dual(q, d)) == d


@given(params_st, divisors)
@settings(max_examples=300)
def test_chi_equals_closed_form(p, d):
    assert chi(p, d) == chi_closed_form(p, d)


@given(params_st, divisors)
@settings(max_examples=300)
def test_serre_reversal(p, d):
    assert h_scroll(p, d).reversed() == h_scroll(p, serre_dual(p, d))


@given(params_st, divisors)
@settings(max_examples=300)
def test_h0_h3_against_lattice_count(p, d):
    vec = h_scroll(p, d)
    assert vec.h0 == h0_lattice(p, d)
    assert vec.h3 == h3_lattice(p, d)


@given(params_st, st.builds(DivisorClass, st.integers(0, 5), st.integers(0, 5), st.integers(-25, 25)))
def test_nonnegative_quadrant_against_direct_double_sum(p, d):
    # independent recount: every h^i is the double sum of P^1 contributions
    want = [0, 0, 0, 0]
    for j in range(d.x + 1):
        for k in range(d.y + 1):
            deg = d.z - j * p.b - k * p.a
            want[0] += max(deg + 1, 0)
            want[1] += max(-deg - 1, 0)
    assert h_scroll(p, d).as_tuple() == tuple(want)


@given(params_st, divisors)
def test_double_scroll_swap_invariance(p, d):
    q = p.swapped()
    assert h_scroll(p, d) == h_scroll(q, DivisorClass(d.y, d.x, d.z))


@given(params_st, divisors)
def test_degree_bounds(p, d):
    vec = h_scroll(p, d)
    assert min(vec.as_tuple()) >= 0
    if d.x >= 0:
        assert vec.h3 == 0
    if d.x == -1:
        assert vec.is_zero()
    if d.x >= 0 and d.y == -1:
        assert vec.is_zero()


def test_results_do_not_depend_on_cache():
    p = ScrollParams(2, 3, 6)
    d = DivisorClass(-4, 2, -11)
    warm = h_scroll(p, d)
    cohmod._h_scroll.cache_clear()
    cohmod._h_surface.cache_clear()
    cohmod._h_p1.cache_clear()
    assert h_scroll(p, d) == warm


def test_vector_helpers():
    v = CohomologyVector(1, 2, 3, 4)
    assert v.reversed().as_tuple() == (4, 3, 2, 1)
    assert v.chi == 1 - 2 + 3 - 4
    assert not v.is_zero()

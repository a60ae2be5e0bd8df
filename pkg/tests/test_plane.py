from fractions import Fraction

import pytest

from tropquartic.series import ONE, PuiseuxSeries, t_power
from tropquartic.plane import (
    DegenerateSupport,
    EmptySupport,
    PuiseuxPolynomial,
    faithfulness_report,
    initial_form,
    initial_form_certified,
    lattice_length,
    primitive,
    regular_subdivision,
    tropical_curve,
)


def lolli_quartic(a, b, c, d, e, f, gamma=1):
    """The three-lolli quartic: cycles hidden behind three weight-2 edges."""
    return PuiseuxPolynomial(
        {
            (0, 4): t_power(6 * Fraction(a) + b),
            (4, 0): t_power(6 * Fraction(c) + d),
            (0, 0): t_power(6 * Fraction(e) + f),
            (2, 2): ONE,
            (1, 2): 2 * ONE,
            (0, 2): ONE - t_power(2 * Fraction(a)),
            (2, 1): 2 * ONE,
            (2, 0): ONE - t_power(2 * Fraction(c)),
            (1, 1): (-2) * (ONE + t_power(2 * Fraction(e), gamma)),
        }
    )


def test_newton_polygon_full_quartic():
    p = lolli_quartic(1, 1, 1, 1, 1, 1)
    assert p.newton_polygon() == [(0, 0), (4, 0), (0, 4)]


def test_newton_polygon_segment():
    p = PuiseuxPolynomial({(2, 2): ONE, (1, 1): ONE})
    assert p.newton_polygon() == [(1, 1), (2, 2)]
    with pytest.raises(DegenerateSupport):
        regular_subdivision(p)


def test_newton_polygon_empty():
    with pytest.raises(EmptySupport):
        PuiseuxPolynomial({}).newton_polygon()


def test_subdivision_single_cell():
    p = PuiseuxPolynomial(
        {(i, j): ONE for i in range(5) for j in range(5 - i)}
    )
    sub = regular_subdivision(p)
    assert len(sub.cells) == 1
    assert sub.cells[0][0] == frozenset(
        (i, j) for i in range(5) for j in range(5 - i)
    )


def test_lolli_subdivision_cells():
    sub = regular_subdivision(lolli_quartic(1, 1, 1, 1, 1, 1))
    hulls = {frozenset(sub.cell_hull(k)) for k in range(len(sub.cells))}
    assert frozenset({(0, 2), (2, 2), (0, 4)}) in hulls
    assert frozenset({(2, 0), (2, 2), (4, 0)}) in hulls
    assert frozenset({(0, 0), (2, 0), (0, 2)}) in hulls
    assert frozenset({(0, 2), (2, 2), (2, 0)}) in hulls


def test_tropical_line():
    p = PuiseuxPolynomial({(0, 0): ONE, (1, 0): ONE, (0, 1): ONE})
    curve = tropical_curve(p)
    assert curve.vertices == [(0, 0)]
    assert {d for _v, d, _w, _dc in curve.rays} == {(-1, 0), (0, -1), (1, 1)}
    assert all(w == 1 for _v, _d, w, _dc in curve.rays)


def test_lolli_curve_vertices_and_weights():
    a = b = c = d = e = f = 1
    curve = tropical_curve(lolli_quartic(a, b, c, d, e, f))
    vs = set(curve.vertices)
    # vertex positions forced by the valuations: the row-2 / column-2 /
    # diagonal groups meet y^4, x^4, 1 at half the coefficient valuation
    assert (0, 0) in vs
    assert (0, Fraction(7, 2)) in vs
    assert (Fraction(7, 2), 0) in vs
    assert (Fraction(-7, 2), Fraction(-7, 2)) in vs
    heavy = [(curve.vertices[a_], curve.vertices[b_]) for a_, b_, w, _d in curve.edges if w == 2]
    assert len(heavy) == 3
    assert len(curve.edges) == 3


def test_lolli_ray_degree():
    curve = tropical_curve(lolli_quartic(2, 1, 1, 3, 1, 2))
    totals = {(-1, 0): 0, (0, -1): 0, (1, 1): 0}
    for _v, d, w, _dc in curve.rays:
        totals[d] += w
    assert totals == {(-1, 0): 4, (0, -1): 4, (1, 1): 4}


def test_betti_number_smooth_quartic():
    # honeycomb-style lift: unimodular triangulation, genus 3
    p = PuiseuxPolynomial(
        {
            (i, j): t_power(i * i + j * j + i * j)
            for i in range(5)
            for j in range(5 - i)
        }
    )
    curve = tropical_curve(p)
    assert curve.betti_number() == 3
    rep = faithfulness_report(curve)
    assert rep.is_empty()


def test_monomial_unit_invariance():
    p = lolli_quartic(1, 2, 1, 1, 1, 3)
    curve1 = tropical_curve(p)
    unit = ONE + t_power(1)
    q = PuiseuxPolynomial(
        {pt: coeff * unit for pt, coeff in p.support.items()}
    )
    curve2 = tropical_curve(q)
    assert set(curve1.vertices) == set(curve2.vertices)
    assert len(curve1.edges) == len(curve2.edges)


def test_faithfulness_flags_lolli():
    curve = tropical_curve(lolli_quartic(1, 1, 1, 1, 1, 1))
    rep = faithfulness_report(curve)
    assert len(rep.heavy_edges) == 3
    # the three corner cells are width-2 simplices: non-unimodular
    assert len(rep.flagged_vertices) >= 3


def test_faithfulness_flags_area():
    p = PuiseuxPolynomial(
        {
            (0, 2): ONE,
            (2, 2): ONE,
            (0, 4): ONE,
            (0, 0): t_power(1),
        }
    )
    curve = tropical_curve(p)
    rep = faithfulness_report(curve)
    flagged_cells = [
        curve.subdivision.cell_hull(k) for k in rep.flagged_vertices
    ]
    assert [(0, 2), (2, 2), (0, 4)] in flagged_cells


def test_initial_form_certificates():
    # (x+1)^2 + y^2: splits over the closure
    form = {(2, 2): Fraction(1), (1, 2): Fraction(2), (0, 2): Fraction(1), (0, 4): Fraction(1)}
    assert not initial_form_certified(form)
    # y + z y^2 + y^4 ~ linear in z with trivial content
    form2 = {(0, 1): Fraction(1), (1, 2): Fraction(1), (0, 4): Fraction(1)}
    assert initial_form_certified(form2)
    # z y^2 + z^2 y^2 + y^4: quadratic in z, disc has simple roots
    form3 = {(1, 2): Fraction(1), (2, 2): Fraction(1), (0, 4): Fraction(1)}
    assert initial_form_certified(form3)
    # unimodular triangle
    form4 = {(0, 0): Fraction(1), (1, 0): Fraction(2), (0, 1): Fraction(5)}
    assert initial_form_certified(form4)


def test_primitive_and_lattice_length():
    assert primitive((4, -6)) == (2, -3)
    assert lattice_length((0, 0), (0, Fraction(7, 2))) == Fraction(7, 2)
    assert lattice_length((0, 0), (2, 4)) == 2


def test_json_roundtrip():
    p = lolli_quartic(1, 1, 2, 1, 1, 1)
    q = PuiseuxPolynomial.from_json(p.to_json())
    assert q == p

from fractions import Fraction

import pytest

from tropquartic.series import ONE, PuiseuxSeries, t_power
from tropquartic.plane import PuiseuxPolynomial, tropical_curve
from tropquartic.graphs import classify, graphs_isomorphic, type_template
from tropquartic.reembed import (
    InconsistentProjections,
    LinearForm,
    ModificationPlan,
    apply_plan,
    curves_equal,
    embedded_skeleton,
    modify,
    naive_modification,
    skeleton_support,
    substitute,
)

from tests.test_plane import lolli_quartic


def lolli_plan(a, b, c, d, e, f, diag_r=2):
    """The three combined modification forms for the lolli quartic."""
    z1 = LinearForm("x-shift", m=ONE + t_power(a))
    z2 = LinearForm("y-shift", m=ONE + t_power(c))
    z3 = LinearForm(
        "yx-tilt",
        c=PuiseuxSeries([(0, -1), (Fraction(e), -diag_r)]),
    )
    return ModificationPlan([z1, z2, z3])


def test_substitute_binomial():
    q = PuiseuxPolynomial({(0, 2): ONE})
    out = substitute(q, LinearForm("y-shift", m=ONE))
    # y^2 with y = z - 1 -> z^2 - 2z + 1
    assert out.coefficient(0, 2) == ONE
    assert out.coefficient(0, 1) == (-2) * ONE
    assert out.coefficient(0, 0) == ONE


def test_substitute_tilt_preserves_degree():
    q = lolli_quartic(1, 1, 1, 1, 1, 1)
    out = substitute(q, LinearForm.tilt_monomial(0))
    assert out.degree() == 4
    assert all(i + j <= 4 for i, j in out.support)


def test_substitute_lolli_row_cancellation():
    # row y^2 of the lolli quartic is (x+1)^2 - t^(2a); substituting the
    # combined form x = z - 1 - t^a kills the constant term exactly
    q = lolli_quartic(1, 1, 1, 1, 1, 1)
    out = substitute(q, LinearForm("x-shift", m=ONE + t_power(1)))
    assert out.coefficient(0, 2).is_exact_zero()
    assert out.coefficient(1, 2).val() == 1
    assert out.coefficient(2, 2) == ONE


def test_modify_single_lolli_geometry():
    a = b = 1
    q = lolli_quartic(a, b, 1, 1, 1, 1)
    emb = modify(q, LinearForm("x-shift", m=ONE + t_power(a)))
    assert emb.dim == 3
    vs = set(emb.vertices)
    # stick top at (0, 2a, -a); cycle top at (0, 2a + b/2, -a)
    assert (0, 2 * a, -a) in vs
    assert (0, 2 * a + Fraction(b, 2), -a) in vs
    # the junction where the hidden ray re-enters the graph part
    assert (0, 3 * a + Fraction(b, 2), 0) in vs


def test_modify_single_lolli_skeleton():
    a, b = Fraction(3, 2), Fraction(5, 2)
    q = lolli_quartic(a, b, 1, 1, 1, 1)
    emb = modify(q, LinearForm("x-shift", m=ONE + t_power(a)))
    g = embedded_skeleton(emb).forgetful()
    # one lolli is unfolded: a genus-1 graph, cycle b on a stick a
    assert g.genus() == 3 - 2  # two cycles still hidden in weight-2 edges
    lens = sorted(ln for _u, _v, ln in g.edges)
    assert b in lens


def test_apply_plan_full_303_all_ones():
    q = lolli_quartic(1, 1, 1, 1, 1, 1)
    emb = apply_plan(q, lolli_plan(1, 1, 1, 1, 1, 1))
    assert emb.dim == 5
    g = embedded_skeleton(emb).forgetful()
    tag, lengths, _ = classify(g)
    assert tag == "303"
    assert lengths == (1, 1, 1, 1, 1, 1)


def test_apply_plan_full_303_distinct_lengths():
    a, b, c, d, e, f = (
        Fraction(3),
        Fraction(2),
        Fraction(2),
        Fraction(5, 2),
        Fraction(1),
        Fraction(3, 2),
    )
    q = lolli_quartic(a, b, c, d, e, f, gamma=2)
    emb = apply_plan(q, lolli_plan(a, b, c, d, e, f, diag_r=2))
    g = embedded_skeleton(emb).forgetful()
    tag, lengths, _ = classify(g)
    assert tag == "303"
    assert graphs_isomorphic(g, type_template("303", (a, b, c, d, e, f)))


def test_skeleton_support_weights_all_one():
    q = lolli_quartic(1, 1, 1, 1, 1, 1)
    emb = apply_plan(q, lolli_plan(1, 1, 1, 1, 1, 1))
    sk_edges, _sk_vertices = skeleton_support(emb)
    assert sk_edges, "skeleton is nonempty"
    for e in sk_edges:
        assert emb.edges[e][2] == 1


def test_generic_modification_is_naive():
    q = lolli_quartic(1, 2, 1, 1, 1, 1)
    form = LinearForm("y-shift", m=t_power(Fraction(-5, 2)) + ONE)
    emb = modify(q, form)
    naive = naive_modification(tropical_curve(q), form)
    assert curves_equal(emb, naive)


def test_special_modification_is_not_naive():
    q = lolli_quartic(1, 1, 1, 1, 1, 1)
    form = LinearForm("x-shift", m=ONE + t_power(1))
    emb = modify(q, form)
    with pytest.raises(InconsistentProjections):
        # the weight-2 edge lies inside the wall: no naive picture exists
        naive_modification(tropical_curve(q), form)
    assert emb.dim == 3


def test_projection_contract_checked():
    # modify() runs exact pushforward checks onto both plane curves and
    # balancing in the ambient space; reaching here without raising is the
    # Lemma 2.4 contract.
    for m in (ONE + t_power(2), rationalish := ONE + t_power(Fraction(1, 2))):
        q = lolli_quartic(2, 1, 1, 2, 1, 1)
        emb = modify(q, LinearForm("x-shift", m=m))
        emb.check_balancing()


def test_plan_json_roundtrip():
    plan = lolli_plan(1, 1, 1, 1, 1, 1)
    plan2 = ModificationPlan.from_json(plan.to_json())
    assert [f.kind for f in plan2] == [f.kind for f in plan]
    assert [f.m for f in plan2] == [f.m for f in plan]
    assert [getattr(f, "c", None) for f in plan2] == [
        getattr(f, "c", None) for f in plan
    ]

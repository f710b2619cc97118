"""Curve families, complete intersections, residuals, extra forms."""

from __future__ import annotations

import pytest

from cmreg import families
from cmreg.families import (build_family, ci_forms, curve_exponents,
                            curve_ideal, extra_form, graded_piece_basis,
                            parametrization_defect, pq_products,
                            residual_pivot)
from cmreg.groebner import Ideal, member
from cmreg.hilbert import dim_deg
from cmreg.ring import GREVLEX, PolyRing, QQ


def test_curve_exponents_values():
    assert curve_exponents(1, 2, primed=True) == (0, 1, 2, 3)
    assert curve_exponents(2, 2, primed=True) == (0, 1, 4, 6, 9)
    assert curve_exponents(2, 2) == (0, 1, 4, 6)
    assert curve_exponents(3, 2) == (0, 1, 8, 12, 18)
    assert curve_exponents(2, 3) == (0, 1, 9, 12)
    with pytest.raises(ValueError):
        curve_exponents(0, 2)
    with pytest.raises(ValueError):
        curve_exponents(2, 1)


def test_curve_ideal_twisted_cubic():
    ring, I = curve_ideal((0, 1, 2, 3), char=0)
    X0, X1, X2, X3 = ring.gens()
    expected = Ideal(ring, [X0 * X2 - X1 * X1, X0 * X3 - X1 * X2,
                            X1 * X3 - X2 * X2])
    assert I.same_ideal(expected)
    assert dim_deg(I) == (2, 3)


def test_curve_ideal_input_validation():
    with pytest.raises(ValueError):
        curve_ideal((1, 2, 3))  # must start 0, 1
    with pytest.raises(ValueError):
        curve_ideal((0, 1, 3, 3))  # duplicates


def test_parametrization_defect():
    ring, I = curve_ideal((0, 1, 2, 3), char=0)
    X0, X1, X2, X3 = ring.gens()
    assert parametrization_defect(X0 * X2 - X1 * X1, (0, 1, 2, 3)) == {}
    assert parametrization_defect(X2, (0, 1, 2, 3)) == {2: 1}
    assert parametrization_defect(X0 * X3 - X2, (0, 1, 2, 3)) == {3: 1, 2: -1}


def test_pq_products_small_cases():
    R4 = PolyRing(tuple(f"X{i}" for i in range(4)), QQ, GREVLEX)
    P, Q = pq_products(1, R4)
    assert (str(P), str(Q)) == ("X2", "X3")
    R5 = PolyRing(tuple(f"X{i}" for i in range(5)), QQ, GREVLEX)
    P, Q = pq_products(2, R5)
    assert (str(P), str(Q)) == ("X2*X4", "X3^2")
    R6 = PolyRing(tuple(f"X{i}" for i in range(6)), QQ, GREVLEX)
    P, Q = pq_products(3, R6)
    assert (str(P), str(Q)) == ("X2*X4^3", "X3^3*X5")
    # equal degrees, disjoint supports
    assert P.degree() == Q.degree() == 4
    with pytest.raises(ValueError):
        pq_products(3, R4)


def test_ci_forms_hand_cases():
    R4 = PolyRing(tuple(f"X{i}" for i in range(4)), QQ, GREVLEX)
    X0, X1, X2, X3 = R4.gens()
    primed = ci_forms(1, 2, R4, primed=True)
    assert primed == [X1 * X2 - X0 * X3, X2 ** 3 - X0 * X3 ** 2]
    unprimed = ci_forms(2, 2, R4, primed=False)
    assert unprimed == [X1 ** 2 * X2 - X0 ** 2 * X3, X2 ** 3 - X0 * X3 ** 2]
    with pytest.raises(ValueError):
        ci_forms(1, 2, R4, primed=False)  # unprimed needs m >= 2
    with pytest.raises(ValueError):
        ci_forms(2, 2, R4, primed=True)  # wrong variable count


def test_residual_pivot_membership(fam22):
    pivot = residual_pivot(fam22.ring, 2, 2)
    X = fam22.ring.gens()
    assert pivot == X[1] ** 4 - X[0] ** 3 * X[2]
    assert member(pivot, fam22.curve)


def test_family_22_shape(fam22):
    assert fam22.ring.nvars == 4
    assert fam22.exponents == (0, 1, 4, 6)
    assert fam22.ci_degrees == (3, 3)
    assert fam22.extra_degree == 4
    assert fam22.codim_expected == 2
    assert dim_deg(fam22.curve) == (2, 6)
    assert dim_deg(fam22.almost_complete_intersection)[0] == 2
    assert sorted(f.degree() for f in fam22.almost_complete_intersection.gens) == [3, 3, 4]


def test_family_12_primed_shape(fam12p):
    assert fam12p.ring.nvars == 4
    assert fam12p.exponents == (0, 1, 2, 3)
    assert fam12p.ci_degrees == (3, 2)
    assert fam12p.extra_degree == 3
    assert fam12p.codim_expected == 2
    assert dim_deg(fam12p.curve) == (2, 3)
    assert sorted(f.degree() for f in fam12p.almost_complete_intersection.gens) == [2, 3, 3]


def test_extra_form_avoids_curve_but_sits_in_residual(fam22):
    F = fam22.extra_form
    assert F.degree() == 4
    assert F.is_homogeneous()
    assert member(F, fam22.residual)
    assert not member(F, fam22.curve)
    # the almost complete intersection is ci + (F)
    for g in fam22.complete_intersection.gens:
        assert member(g, fam22.almost_complete_intersection)


def test_ci_forms_vanish_on_curve(fam22, fam12p):
    for fam in (fam22, fam12p):
        for f in fam.complete_intersection.gens:
            assert parametrization_defect(f, fam.exponents) == {}
            assert member(f, fam.curve)


def test_graded_piece_basis_echelon(fam22):
    basis = graded_piece_basis(fam22.curve, 3)
    # strictly decreasing leading monomials => linearly independent, canonical
    pack = fam22.ring.bound.pack
    leads = [pack(f.lm()) for f in basis]
    assert leads == sorted(leads, reverse=True)
    assert len(leads) == len(set(leads))
    for f in basis:
        assert f.degree() == 3
        assert member(f, fam22.curve)


def test_build_family_deterministic():
    inst1 = build_family(2, 2)
    key = (2, 2, False, 32003)
    saved = families._FAMILY_CACHE.pop(key)
    try:
        inst2 = build_family(2, 2)
    finally:
        families._FAMILY_CACHE[key] = saved
    assert inst1 is not inst2
    assert str(inst1.extra_form) == str(inst2.extra_form)
    gb1 = [str(g) for g in inst1.almost_complete_intersection.groebner().polys]
    gb2 = [str(g) for g in inst2.almost_complete_intersection.groebner().polys]
    assert gb1 == gb2


def test_build_family_validation():
    with pytest.raises(ValueError):
        build_family(1, 2)  # unprimed needs m >= 2
    with pytest.raises(ValueError):
        build_family(2, 1)


def test_residual_times_curve_in_ci(fam12p):
    gci = fam12p.complete_intersection.groebner()
    for g in fam12p.curve.gens:
        for h in fam12p.residual.gens:
            assert gci.reduces_to_zero(g * h)

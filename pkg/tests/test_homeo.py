from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coarsefp import (
    CertificateError,
    InputError,
    PLLift,
    ResourceLimitError,
    commutator,
    compose,
    corollary_certificate,
    evaluate,
    identity_lift,
    invert,
    ob_bounded_check,
    power,
    standard_a,
    standard_b,
    translation_lift,
)

rationals = st.fractions(
    min_value=Fraction(-8), max_value=Fraction(8), max_denominator=64
)


def test_lift_validation():
    with pytest.raises(InputError):
        PLLift((), ())
    with pytest.raises(InputError):
        PLLift((Fraction(1, 2),), (Fraction(0),))  # must start at 0
    with pytest.raises(InputError):
        PLLift((Fraction(0), Fraction(0)), (Fraction(0), Fraction(1, 2)))
    with pytest.raises(InputError):
        PLLift((Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(0)))
    with pytest.raises(InputError):
        PLLift((0.0,), (0.0,))  # floats are rejected, exactness is the point
    with pytest.raises(InputError):
        PLLift((Fraction(0), Fraction(3, 2)), (Fraction(0), Fraction(1, 2)))


def test_standard_maps_pointwise():
    a, b = standard_a(), standard_b()
    assert evaluate(a, Fraction(1, 2)) == Fraction(1, 4)
    assert evaluate(b, 0) == 0
    assert evaluate(b, Fraction(1, 8)) == Fraction(3, 8)
    assert evaluate(b, Fraction(1, 4)) == Fraction(3, 4)
    assert evaluate(b, Fraction(1, 2)) == Fraction(5, 6)
    assert evaluate(b, 1) == 1
    # b^-1 undoes the corner
    assert evaluate(invert(b), Fraction(3, 4)) == Fraction(1, 4)


@given(rationals)
@settings(max_examples=120, deadline=None)
def test_equivariance_under_integer_translation(x):
    for f in (standard_a(), standard_b(), commutator(standard_a(), standard_b())):
        assert evaluate(f, x + 1) == evaluate(f, x) + 1
        assert evaluate(f, x + 5) == evaluate(f, x) + 5


@given(rationals)
@settings(max_examples=120, deadline=None)
def test_inverse_evaluates_back(x):
    for f in (standard_b(), compose(standard_a(), standard_b())):
        assert evaluate(invert(f), evaluate(f, x)) == x


def test_inverse_is_structural_identity():
    for f in (standard_a(), standard_b(), commutator(standard_a(), standard_b())):
        g = compose(f, invert(f))
        assert g == identity_lift()
        assert compose(invert(f), f) == identity_lift()


def test_double_inverse_roundtrip():
    f = compose(standard_b(), standard_a())
    assert invert(invert(f)) == f


def test_translation_compose_adds():
    t1 = translation_lift(Fraction(1, 3))
    t2 = translation_lift(Fraction(1, 6))
    assert compose(t1, t2) == translation_lift(Fraction(1, 2))
    assert power(t1, 3) == translation_lift(1)
    assert power(t1, -3) == translation_lift(-1)


def test_slopes_positive_and_canonical():
    f = compose(standard_b(), standard_b())
    pts = list(zip(f.breakpoints, f.values))
    pts.append((Fraction(1), f.values[0] + 1))
    slopes = [
        (vb - va) / (xb - xa) for (xa, va), (xb, vb) in zip(pts, pts[1:])
    ]
    assert all(s > 0 for s in slopes)
    # canonical form: no two adjacent slopes equal
    assert all(s1 != s2 for s1, s2 in zip(slopes, slopes[1:]))


@given(rationals)
@settings(max_examples=80, deadline=None)
def test_composition_agrees_pointwise(x):
    a, b = standard_a(), standard_b()
    assert evaluate(compose(a, b), x) == evaluate(a, evaluate(b, x))
    assert evaluate(compose(b, a), x) == evaluate(b, evaluate(a, x))


def test_power_matches_repeated_composition():
    b = standard_b()
    acc = identity_lift()
    for n in range(1, 5):
        acc = compose(b, acc)
        assert power(b, n) == acc
    assert power(b, 0) == identity_lift()
    assert power(b, -2) == invert(compose(b, b))


def test_certificate_exact_values():
    rep = corollary_certificate(n_max=100)
    assert rep.ok
    assert rep.commutator_ab_at_0 == Fraction(1, 2)
    assert rep.commutator_inv_at_half == 1
    assert rep.w_at_0 == 1
    assert rep.orbit_exact
    assert rep.displacements == tuple(Fraction(n) for n in range(1, 101))


def test_certificate_guards():
    with pytest.raises(InputError):
        corollary_certificate(0)


def test_commutator_of_translations_is_identity():
    t1 = translation_lift(Fraction(1, 3))
    t2 = translation_lift(Fraction(2, 5))
    assert commutator(t1, t2) == identity_lift()


def test_ob_bounded_check():
    a, b = standard_a(), standard_b()
    fam = [a, b, invert(a), invert(b)]
    rep = ob_bounded_check(fam, Fraction(1, 4))
    assert rep.bounded and bool(rep)
    assert rep.max_abs_at_0 == Fraction(1, 4)
    w = compose(commutator(invert(b), invert(a)), commutator(a, b))
    far = power(w, 3)
    rep2 = ob_bounded_check([far], 2)
    assert not rep2.bounded
    assert rep2.max_abs_at_0 == 3
    with pytest.raises(InputError):
        ob_bounded_check(fam, -1)


def test_word_growth_is_linear():
    a, b = standard_a(), standard_b()
    w = compose(commutator(invert(b), invert(a)), commutator(a, b))
    x = Fraction(0)
    for n in range(1, 30):
        x = evaluate(w, x)
        assert x == n


def test_composition_cap(monkeypatch):
    import coarsefp.homeo as homeo_mod

    monkeypatch.setattr(homeo_mod, "COMPOSITION_CAP", 4)
    b = standard_b()
    with pytest.raises(ResourceLimitError):
        f = b
        for _ in range(10):
            f = compose(f, b)


def test_evaluate_rejects_floats():
    with pytest.raises(InputError):
        evaluate(standard_b(), 0.25)

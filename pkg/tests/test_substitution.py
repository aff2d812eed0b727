from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germkit.errors import ConstantTermError, SingularLinearPartError
from germkit.poly import Polynomial, WeightVector
from germkit.substitution import (
    JetSubstitution,
    compose,
    invert_jet,
    substitute_jet,
    verify_weight_respecting,
)

from conftest import P, W, VARS4


def sub(images, order=12, variables=VARS4):
    return JetSubstitution.from_images(variables, images, order)


# -- substitute_jet examples ---------------------------------------------------

def test_substitute_shear_example():
    f = P("x^2 + y^2 + 2*x*t^2 + z^3")
    sigma = sub({"x": P("x - t^2")})
    assert substitute_jet(f, sigma, 12) == P("x^2 + y^2 + z^3 - t^4")


def test_substitute_identity():
    f = P("x*y + z^5 + t^9")
    sigma = JetSubstitution.identity(VARS4, 10)
    assert substitute_jet(f, sigma, 4) == f.truncated(4)


def test_substitute_fixing_family_example():
    f = P("x*y + z^2 + t^3")
    sigma = sub({"z": P("z + x"), "y": P("y - 2*z - x")})
    assert substitute_jet(f, sigma, 10) == f.truncated(10)


def test_substitute_rejects_constant_component():
    with pytest.raises(ConstantTermError):
        sub({"x": P("x + 1")})


# -- inversion -------------------------------------------------------------------

def test_invert_shear():
    sigma = invert_jet(sub({"x": P("x - t^2")}), 8)
    assert sigma.inverse_components["x"] == P("x + t^2").truncated(8)


def test_invert_linear_combination():
    sigma = invert_jet(sub({"y": P("y - 2*z - x"), "z": P("z + x")}), 8)
    inv = sigma.inverted_view()
    both = sigma.then(inv)
    for v in VARS4:
        assert both.components[v] == Polynomial.variable(v, VARS4).truncated(8)


def test_invert_scaling():
    sigma = invert_jet(sub({"x": P("2*x")}), 4)
    assert sigma.inverse_components["x"] == (P("x") * Fraction(1, 2)).truncated(4)


def test_invert_singular():
    with pytest.raises(SingularLinearPartError):
        invert_jet(sub({"x": P("y"), "y": P("y")}), 4)


# -- weight-respecting verification ------------------------------------------------

def test_swap_is_weight_respecting_between_swapped_weights():
    swap = sub({"x": P("y"), "y": P("x")})
    cert = verify_weight_respecting(swap, W(1, 3, 2, 1), W(3, 1, 2, 1))
    assert cert.ok


def test_shear_violates_weights():
    vars3 = ("x", "y", "z")
    sigma = JetSubstitution.from_images(vars3, {"z": P("z + x", vars3)}, 8)
    w = WeightVector.for_variables(vars3, (1, 1, 2))
    cert = verify_weight_respecting(sigma, w, w)
    assert not cert.ok
    violation = cert.violations[0]
    assert violation.variable == "z"
    assert violation.required == 2 and violation.actual == 1


def test_identity_weight_respecting():
    sigma = JetSubstitution.identity(VARS4, 6)
    assert verify_weight_respecting(sigma, W(4, 3, 2, 1), W(4, 3, 2, 1)).ok


def test_verification_symmetric_in_inverse():
    sigma = sub({"x": P("x - t^2")}).with_inverse()
    w = W(2, 1, 1, 1)
    forward = verify_weight_respecting(sigma, w, w)
    backward = verify_weight_respecting(sigma.inverted_view(), w, w)
    assert forward.ok == backward.ok


# -- property tests -----------------------------------------------------------------

small_polys = st.builds(
    lambda pairs: Polynomial(VARS4, dict(pairs)),
    st.lists(
        st.tuples(
            st.tuples(*(st.integers(0, 2) for _ in range(4))),
            st.integers(-3, 3).filter(bool).map(Fraction),
        ),
        min_size=1,
        max_size=4,
    ),
)


@st.composite
def invertible_substitutions(draw, order=10):
    images = {}
    for i, v in enumerate(VARS4):
        expr = Polynomial.variable(v, VARS4)
        for u in VARS4[i + 1:]:
            expr = expr + Polynomial.variable(u, VARS4) * draw(st.integers(-2, 2))
        quad = draw(st.sampled_from([None, "t^2", "z*t", "z^2"]))
        if quad and v in ("x", "y"):
            expr = expr + P(quad) * draw(st.integers(-1, 1))
        images[v] = expr
    return JetSubstitution.from_images(VARS4, images, order)


@settings(max_examples=30)
@given(small_polys, invertible_substitutions())
def test_roundtrip_through_inverse(f, sigma):
    sigma = sigma.with_inverse()
    forward = substitute_jet(f, sigma, 8)
    back = substitute_jet(forward, sigma.inverted_view(), 8)
    assert back == f.truncated(8)


@settings(max_examples=25)
@given(invertible_substitutions(), invertible_substitutions())
def test_composition_of_weight_respecting_is_weight_respecting(a, b):
    w = W(1, 1, 1, 1)
    a, b = a.with_inverse(), b.with_inverse()
    if not (verify_weight_respecting(a, w, w) and verify_weight_respecting(b, w, w)):
        return
    c = compose(a, b).with_inverse()
    assert verify_weight_respecting(c, w, w).ok


@settings(max_examples=25)
@given(small_polys, invertible_substitutions())
def test_weight_filtration_respected(f, sigma):
    w = W(2, 2, 1, 1)
    sigma = sigma.with_inverse()
    if not verify_weight_respecting(sigma, w, w):
        return
    image = substitute_jet(f, sigma, 8)
    if image.is_zero or f.is_zero:
        return
    assert image.weight(w) >= f.truncated(8).weight(w)

from fractions import Fraction
from math import inf

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germkit.errors import ExactDivisionError, MissingWeightError
from germkit.poly import (
    Polynomial,
    WeightVector,
    jacobian_generators,
    multiplicity,
    quadratic_rank,
    quasihomogeneous_part,
    weight,
)

from conftest import P, W, VARS4


# -- multiplicity -----------------------------------------------------------

def test_multiplicity_examples():
    assert multiplicity(P("x*y + z^3 + t^3")) == 2
    assert multiplicity(Polynomial.zero(VARS4)) == inf
    assert multiplicity(P("x^2 + y^2 + z^3 + x*t^2")) == 2


# -- weight ------------------------------------------------------------------

def test_weight_examples():
    assert weight(P("x^2 + y^2 + z^3 + x*t^2"), W(4, 3, 2, 1)) == 6
    assert weight(Polynomial.zero(VARS4), W(1, 1, 1, 1)) == inf
    assert weight(P("x*y + z^2 + t^3"), W(1, 5, 3, 2)) == 6


def test_weight_missing_variable():
    with pytest.raises(MissingWeightError):
        weight(P("x*y + z^2"), WeightVector({"x": 1, "y": 2}))


# -- quasihomogeneous part ---------------------------------------------------

def test_quasihomogeneous_part_examples():
    f = P("x*y + z^2 + t^3 + t^4")
    w = W(3, 3, 3, 2)
    assert quasihomogeneous_part(f, w, 6) == P("x*y + z^2 + t^3")
    assert quasihomogeneous_part(f, w, 5).is_zero
    e6 = P("x^2 + y^2 + z^3 + x*t^2")
    assert quasihomogeneous_part(e6, W(4, 3, 2, 1), 8) == P("x^2")


# -- quadratic rank -----------------------------------------------------------

def test_quadratic_rank_examples():
    assert quadratic_rank(P("x*y + z^2 + t^3")) == 3
    assert quadratic_rank(P("x^2 + y^2 + z^3 + x*t^2")) == 2
    assert quadratic_rank(P("z^3 + t^4")) == 0


# -- jacobian -----------------------------------------------------------------

def test_jacobian_examples():
    zt = ("z", "t")
    gens = jacobian_generators(P("z^2 + t^3", zt))
    assert gens == [P("2*z", zt), P("3*t^2", zt)]
    gens4 = jacobian_generators(P("x*y + z^2 + t^3"))
    assert gens4 == [P("y"), P("x"), P("2*z"), P("3*t^2")]
    const = Polynomial.constant(VARS4, 5)
    assert all(g.is_zero for g in jacobian_generators(const))


# -- exact division ------------------------------------------------------------

def test_exact_division():
    f = P("x^2*y + x*t^2")
    assert f.exact_div_power("x", 1) == P("x*y + t^2")
    with pytest.raises(ExactDivisionError):
        P("x + t").exact_div_power("x", 1)


# -- property tests --------------------------------------------------------------

coeffs = st.integers(-4, 4).filter(bool).map(Fraction)
exponents = st.tuples(*(st.integers(0, 3) for _ in range(4)))


@st.composite
def polynomials(draw, min_terms=1, max_terms=5):
    n = draw(st.integers(min_terms, max_terms))
    terms = {}
    for _ in range(n):
        terms[draw(exponents)] = draw(coeffs)
    return Polynomial(VARS4, terms)


weight_vectors = st.tuples(*(st.integers(1, 5) for _ in range(4))).map(
    lambda v: WeightVector.for_variables(VARS4, v)
)


@given(polynomials(), polynomials(), weight_vectors)
def test_weight_multiplicative_and_subadditive(f, g, w):
    if f.is_zero or g.is_zero:
        return
    assert weight(f * g, w) == weight(f, w) + weight(g, w)
    s = f + g
    if not s.is_zero:
        assert weight(s, w) >= min(weight(f, w), weight(g, w))
        if weight(f, w) != weight(g, w):
            assert weight(s, w) == min(weight(f, w), weight(g, w))


@given(polynomials(), weight_vectors)
def test_quasihomogeneous_parts_reconstruct(f, w):
    total = Polynomial.zero(VARS4)
    for d, part in f.parts_by_weight(w).items():
        assert part == quasihomogeneous_part(f, w, d)
        total = total + part
    assert total == f


@given(polynomials(), weight_vectors)
def test_multiplicity_weight_bounds(f, w):
    if f.is_zero:
        return
    values = [v for _, v in w.items()]
    if min(values) != 1:
        return
    assert multiplicity(f) <= weight(f, w) <= max(values) * multiplicity(f)


@settings(max_examples=40)
@given(polynomials(), st.randoms(use_true_random=False))
def test_quadratic_rank_linear_invariance(f, rng):
    from germkit.substitution import JetSubstitution, substitute_jet

    # random invertible triangular-based rational linear change
    images = {}
    for i, v in enumerate(VARS4):
        expr = Polynomial.variable(v, VARS4) * Fraction(rng.choice([1, 2, -1, Fraction(1, 2)]))
        for u in VARS4[i + 1:]:
            expr = expr + Polynomial.variable(u, VARS4) * Fraction(rng.randint(-2, 2))
        images[v] = expr
    sigma = JetSubstitution.from_images(VARS4, images, 14)
    assert quadratic_rank(substitute_jet(f, sigma, 14)) == quadratic_rank(f)


def test_jet_truncation_in_arithmetic():
    f = P("x + y^2").truncated(3)
    g = P("x^2 + t^3")
    product = f * g
    assert product.jet_order == 3
    assert all(sum(e) <= 3 for e in product.terms)


def test_variable_alignment_and_equality():
    a = P("z^2 + t^3", ("z", "t"))
    b = P("z^2 + t^3")
    assert a == b
    assert (a + P("x", ("x",))).variables == ("z", "t", "x")

import random
from fractions import Fraction

import pytest

from germkit.errors import NotSimpleError, PreconditionError, RationalObstructionError
from germkit.milnor import milnor_data
from germkit.normal_form import (
    reduce_to_simple,
    split_off,
    split_quadratic,
    weighted_normal_form,
)
from germkit.poly import Polynomial, WeightVector
from germkit.substitution import substitute_jet, verify_weight_respecting

from conftest import P, W, VARS4


def check_witness(source, marked):
    """Spec invariants common to every emitted witness."""
    sigma = marked.witness
    reproduced = substitute_jet(source, sigma, sigma.jet_order)
    assert reproduced == marked.polynomial
    assert verify_weight_respecting(sigma, marked.weights, marked.weights).ok
    assert (
        milnor_data(source).milnor_number
        == milnor_data(marked.polynomial).milnor_number
    )


# -- split_quadratic ----------------------------------------------------------

def pair_support_clean(f, pair):
    i1 = f.variables.index(pair[0])
    i2 = f.variables.index(pair[1])
    for exps in f.terms:
        if exps[i1] or exps[i2]:
            assert exps[i1] == 1 and exps[i2] == 1 and sum(exps) == 2


def test_split_example_one():
    f = P("x*y + y*t^2 + z^3 + t^6")
    w = W(1, 5, 2, 1)
    marked = split_quadratic(f, w, ("x", "y"))
    assert marked.polynomial == P("x*y + z^3 + t^6")
    assert marked.witness.components["x"] == P("x - t^2").truncated(
        marked.witness.jet_order
    )
    pair_support_clean(marked.polynomial, ("x", "y"))
    check_witness(f, marked)


def test_split_already_split():
    f = P("x*y + z^3 + t^3")
    marked = split_quadratic(f, W(1, 1, 1, 1), ("x", "y"))
    assert marked.polynomial == f
    assert marked.witness.is_identity()


def test_split_example_three():
    f = P("x*y + x^2*z + z^2 + t^5")
    marked = split_quadratic(f, W(1, 1, 1, 1), ("x", "y"))
    assert marked.polynomial == P("x*y + z^2 + t^5")
    assert marked.witness.components["y"] == P("y - x*z").truncated(
        marked.witness.jet_order
    )
    check_witness(f, marked)


def test_split_precondition_errors():
    with pytest.raises(PreconditionError):
        split_quadratic(P("x^2 + y^2 + z^3 + t^4"), W(1, 1, 1, 1), ("x", "y"))
    with pytest.raises(PreconditionError):
        # wt(xy) = 7 > wt(f) = 6
        split_quadratic(P("x*y + t^6 + z^3 + y^2"), W(1, 6, 2, 1), ("x", "y"))


def test_split_rational_obstruction():
    # x^2 + xy + y^2 is anisotropic over the rationals
    f = P("x^2 + x*y + y^2 + z^3 + t^3")
    with pytest.raises(RationalObstructionError):
        split_quadratic(f, W(1, 1, 1, 1), ("x", "y"))


def test_split_absorbs_isotropic_diagonal():
    # x^2 + 3xy + 2y^2 = (x + y)(x + 2y) is rationally hyperbolic
    f = P("x^2 + 3*x*y + 2*y^2 + z^3 + t^4")
    marked = split_quadratic(f, W(1, 1, 1, 1), ("x", "y"))
    pair_support_clean(marked.polynomial, ("x", "y"))
    check_witness(f, marked)


# -- weighted_normal_form --------------------------------------------------------

def test_wnf_example_one():
    f = P("x*y + z^2 + t^3 + t^4")
    w = W(3, 3, 3, 2)
    marked = weighted_normal_form(f, w)
    assert marked.polynomial == P("x*y + z^2 + t^3")
    check_witness(f, marked)


def test_wnf_quasihomogeneous_fixed():
    f = P("x*y + z^2 + t^3")
    marked = weighted_normal_form(f, W(3, 3, 3, 2))
    assert marked.polynomial == f
    assert marked.witness.is_identity()


def test_wnf_example_three():
    f = P("x^2 + y^2 + z^3 - t^4 + z*t^3")
    w = W(6, 6, 4, 3)
    marked = weighted_normal_form(f, w)
    assert marked.polynomial == P("x^2 + y^2 + z^3 - t^4")
    check_witness(f, marked)


def test_wnf_idempotent():
    f = P("x*y + z^2 + t^3 + t^4 + z*t^4")
    w = W(3, 3, 3, 2)
    first = weighted_normal_form(f, w)
    second = weighted_normal_form(first.polynomial, w)
    assert second.polynomial == first.polynomial
    assert second.witness.is_identity()


def test_wnf_keeps_marked_spanning_terms():
    # f0 = xy + z^3 + t^6 has basis element z*t^4 of weight 2+4=6... pick a
    # germ whose higher part meets the spanning set: the perturbation stays.
    f = P("x*y + z^3 + t^6 + z*t^5")
    w = W(3, 3, 2, 1)
    marked = weighted_normal_form(f, w)
    # zt^5 has weight 7 > 6 and z*t^5 is not in the Milnor spanning set of f0;
    # the reduction must remove it
    assert marked.polynomial == P("x*y + z^3 + t^6")
    check_witness(f, marked)


def test_wnf_permutation_determinism():
    f = P("x*y + z^2 + t^3 + t^4")
    w = W(3, 3, 3, 2)
    out = weighted_normal_form(f, w).polynomial

    perm = {"x": "y", "y": "x"}
    f_perm = f.renamed(perm).with_variables(VARS4)
    w_perm = W(3, 3, 3, 2)
    out_perm = weighted_normal_form(f_perm, w_perm).polynomial
    assert out_perm.renamed(perm).with_variables(VARS4) == out


# -- reduce_to_simple ---------------------------------------------------------------

def test_reduce_example_one():
    f = P("x*y + z^2 + t^3 + z*t^5")
    marked = reduce_to_simple(f, W(3, 3, 3, 2))
    assert marked.polynomial == P("x*y + z^2 + t^3")
    check_witness(f, marked)


def test_reduce_quasihomogeneous_identity():
    f = P("x^2 + y^2 + z^3 - t^4")
    marked = reduce_to_simple(f, W(6, 6, 4, 3))
    assert marked.polynomial == f
    assert marked.witness.is_identity()


def test_reduce_e6_weighted_route():
    f = P("x^2 + y^2 + 2*x*t^2 + z^3")
    w = W(4, 3, 2, 1)
    marked = reduce_to_simple(f, w)
    assert marked.unit_form == P("x^2 + y^2 + z^3 + x*t^2")
    check_witness(f, marked)
    # and the canonical representative is already reduced
    canonical = reduce_to_simple(P("x^2 + y^2 + z^3 + x*t^2"), w)
    assert canonical.polynomial == P("x^2 + y^2 + z^3 + x*t^2")


def test_reduce_rejects_non_simple():
    with pytest.raises(NotSimpleError):
        reduce_to_simple(P("x*y + z^3 + t^6"), W(3, 3, 2, 1))


# -- split_off (multi-variable, used by the classifier) -------------------------------

def test_split_off_full_rank():
    f = P("x^2 + y^2 + z^2 + t^2 + x^3")
    order = milnor_data(f).milnor_number + 1
    reduced, witness, split_vars = split_off(f, 4, order)
    assert split_vars == VARS4
    assert substitute_jet(f, witness, order) == reduced


def test_split_off_resolves_cross_terms():
    f = P("x*y + z^3 + t^3")
    order = milnor_data(f).milnor_number + 1
    reduced, witness, split_vars = split_off(f, 2, order)
    for exps in reduced.terms:
        touching = exps[0] or exps[1]
        if touching:
            assert sum(exps) == 2 and (exps[0] == 2 or exps[1] == 2)
    assert substitute_jet(f, witness, order) == reduced


# -- randomized witness soundness (small-scale; the acceptance suite scales up) -------

def random_split_germ(rng):
    terms = {"x*y": 1}
    f = P("x*y + z^3 + t^4")
    candidates = ["x*z^2", "y*t^2", "x^2*z", "y*z*t", "x*t^3", "z^2*t", "z*t^3"]
    for monomial in rng.sample(candidates, rng.randint(1, 3)):
        f = f + P(monomial) * Fraction(rng.randint(-2, 2))
    return f


def test_random_split_and_normal_form_witnesses():
    from germkit.errors import NonIsolatedError

    rng = random.Random(7)
    trivial = W(1, 1, 1, 1)
    natural = W(6, 6, 4, 3)  # matches the xy + z^3 + t^4 skeleton
    for _ in range(25):
        f = random_split_germ(rng)
        try:
            milnor_data(f)
        except NonIsolatedError:
            continue
        marked = split_quadratic(f, trivial, ("x", "y"))
        pair_support_clean(marked.polynomial, ("x", "y"))
        check_witness(f, marked)
        try:
            nf = weighted_normal_form(f, natural)
        except NonIsolatedError:
            continue  # least-weight part degenerate for this draw
        check_witness(f, nf)

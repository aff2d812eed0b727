from fractions import Fraction

import pytest

from germkit.errors import (
    DeterminacyBoundError,
    NonIsolatedError,
    SmoothGermError,
)
from germkit.milnor import determinacy_truncate, milnor_data
from germkit.poly import Polynomial

from conftest import P, VARS4
from oracle_milnor import oracle_milnor_number

ZT = ("z", "t")


def as_dict(f):
    return {exps: coeff for exps, coeff in f.terms.items()}


def test_milnor_examples():
    data = milnor_data(P("z^2 + t^3", ZT))
    assert data.milnor_number == 2
    assert [str(b) for b in data.basis] == ["1", "t"]

    assert milnor_data(P("x*y + z^3 + t^6")).milnor_number == 10

    data = milnor_data(P("x^2 + y^2 + z^2 + t^2"))
    assert data.milnor_number == 1
    assert [str(b) for b in data.basis] == ["1"]


def test_milnor_invariants():
    data = milnor_data(P("x^2 + y^2 + z^3 + x*t^2"))
    assert data.milnor_number == 6
    assert len(data.basis) == data.milnor_number
    assert all(b.degree() < data.stabilization_order for b in data.basis)
    assert data.stabilization_order <= data.milnor_number + 1


def test_milnor_family_lower_bound_equality():
    # mu(xy + z^{n+1} + t^{(n+1)a}) = n((n+1)a - 1)
    for n, a in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)]:
        f = P(f"x*y + z^{n+1} + t^{(n + 1) * a}")
        assert milnor_data(f).milnor_number == n * ((n + 1) * a - 1)


def test_milnor_oracle_agreement_basic():
    for text, variables in [
        ("z^2 + t^3", ZT),
        ("z^3 + t^6", ZT),
        ("x*y + z^3 + t^3", VARS4),
        ("x^2 + y^2 + z^3 + x*t^2", VARS4),
    ]:
        f = P(text, variables)
        assert milnor_data(f).milnor_number == oracle_milnor_number(
            as_dict(f), len(variables)
        )


def test_milnor_stabilization_against_larger_caps():
    f = P("x*y + z^3 + t^6")
    a = milnor_data(f, cap=8)
    b = milnor_data(f, cap=10)
    assert a.milnor_number == b.milnor_number
    assert a.stabilization_order == b.stabilization_order


def test_degree_mu_monomials_reduce_to_zero():
    # m^mu lies in the Jacobian ideal: at the stabilization order every
    # degree-mu monomial is reducible (mu >= stabilization order here)
    from germkit.milnor import _jacobian_echelon, monomials_up_to
    from germkit.poly import jacobian_generators

    f = P("z^2 + t^3", ZT)
    data = milnor_data(f)
    gens = [g.without_jet() for g in jacobian_generators(f)]
    ech = _jacobian_echelon(gens, 2, data.milnor_number)
    for m in monomials_up_to(2, data.milnor_number):
        if sum(m) == data.milnor_number:
            assert ech.contains_monomial(m)


def test_non_isolated_error():
    with pytest.raises(NonIsolatedError):
        milnor_data(P("x^2"), cap=8)
    with pytest.raises(NonIsolatedError):
        milnor_data(P("z^2*t^2", ZT), cap=10)  # both axes singular


def test_smooth_germ_error():
    with pytest.raises(SmoothGermError):
        milnor_data(P("x + y^2"))


def test_determinacy_truncate_examples():
    f = P("x*y + z^2 + t^3 + t^9")
    assert determinacy_truncate(f, 3) == P("x*y + z^2 + t^3")

    quasi = P("x*y + z^2 + t^3")
    assert determinacy_truncate(quasi, 3) == quasi

    e6 = P("x^2 + y^2 + z^3 + x*t^2 + t^10")
    assert determinacy_truncate(e6, 7) == P("x^2 + y^2 + z^3 + x*t^2")


def test_determinacy_bound_enforced():
    f = P("x*y + z^2 + t^3")  # mu = 2
    with pytest.raises(DeterminacyBoundError):
        determinacy_truncate(f, 2)


def test_milnor_invariance_under_normal_form_witnesses():
    from germkit.normal_form import weighted_normal_form
    from conftest import W

    f = P("x*y + z^2 + t^3 + t^4 + z*t^3")
    nf = weighted_normal_form(f, W(3, 3, 3, 2))
    assert milnor_data(nf.polynomial).milnor_number == milnor_data(f).milnor_number

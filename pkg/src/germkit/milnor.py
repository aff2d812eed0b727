"""Milnor number and Milnor-algebra monomial bases via exact jet linear algebra.

The Milnor number of an isolated germ f is computed without standard bases:
find the least k such that every degree-k monomial lies in j(f) + m^(k+1)
(working inside the jet space of order k); Nakayama then gives m^k <= j(f),
so the Milnor algebra is a quotient of the order-k jet space and plain row
reduction finishes the job.  The monomial basis returned is the graded-lex
greedy one (smallest monomials preferred), which downstream normal-form code
uses as its spanning set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import (
    DeterminacyBoundError,
    HypersurfaceGermError,
    NonIsolatedError,
    SmoothGermError,
)
from .poly import Polynomial, jacobian_generators
from .reduction import IntEchelon, Row

DEFAULT_CAP = 64


@dataclass(frozen=True)
class MilnorData:
    milnor_number: int
    basis: tuple[Polynomial, ...]
    stabilization_order: int


def monomials_up_to(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for total in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), total):
            exps = [0] * nvars
            for idx in combo:
                exps[idx] += 1
            out.append(tuple(exps))
    return out


def _shifted(terms: Row, offset: tuple[int, ...], cap: int) -> Row:
    out: Row = {}
    for exps, coeff in terms.items():
        key = tuple(a + b for a, b in zip(exps, offset))
        if sum(key) <= cap:
            out[key] = coeff
    return out


def _jacobian_echelon(generators: list[Polynomial], nvars: int, order: int) -> IntEchelon:
    """Echelon of the image of the Jacobian ideal in the order-jet space.

    Short rows are inserted first: monomial rows become pivots immediately and
    keep the later eliminations sparse.
    """
    echelon = IntEchelon()
    rows: list[Row] = []
    for gen in generators:
        if gen.is_zero:
            continue
        mult = int(gen.multiplicity())
        terms = dict(gen.terms)
        for offset in monomials_up_to(nvars, order - mult):
            row = _shifted(terms, offset, order)
            if row:
                rows.append(row)
    rows.sort(key=len)
    for row in rows:
        echelon.insert(row)
    return echelon


def milnor_data(f: Polynomial, cap: int = DEFAULT_CAP) -> MilnorData:
    """Milnor number, greedy monomial basis and stabilization order of f.

    Raises SmoothGermError when the Jacobian ideal is the whole local ring
    (mu = 0) and NonIsolatedError when no stabilization order <= cap exists.
    """
    if f.constant_term():
        raise HypersurfaceGermError("germ must vanish at the origin")
    nvars = len(f.variables)
    generators = [g for g in (gen.without_jet() for gen in jacobian_generators(f)) if not g.is_zero]
    if not generators:
        raise NonIsolatedError("zero Jacobian ideal")
    if any(g.constant_term() for g in generators):
        raise SmoothGermError("Milnor number 0: the germ is smooth")

    # a variable missing from every generator can never be stabilized
    for i, name in enumerate(f.variables):
        if not any(any(e[i] for e in g.terms) for g in generators):
            raise NonIsolatedError(f"variable {name!r} absent from the Jacobian ideal")

    for k in range(1, cap + 1):
        echelon = _jacobian_echelon(generators, nvars, k)
        degree_k = [m for m in monomials_up_to(nvars, k) if sum(m) == k]
        if all(echelon.contains_monomial(m) for m in degree_k):
            # every top-degree monomial is then itself a pivot, so the
            # standard monomials below degree k enumerate the Milnor algebra
            monomials = monomials_up_to(nvars, k)
            standard = sorted(
                (m for m in monomials if m not in echelon.pivots),
                key=lambda e: (sum(e), e),
            )
            mu = len(standard)
            if mu == 0:
                raise SmoothGermError("Milnor number 0: the germ is smooth")
            basis = tuple(Polynomial(f.variables, {m: 1}) for m in standard)
            return MilnorData(mu, basis, k)
    raise NonIsolatedError(f"no stabilization order below cap {cap}")


def milnor_number(f: Polynomial, cap: int = DEFAULT_CAP) -> int:
    return milnor_data(f, cap).milnor_number


def determinacy_truncate(f: Polynomial, order: int, cap: int = DEFAULT_CAP) -> Polynomial:
    """Degree-<=order truncation of f, legitimate whenever order >= mu + 1.

    Finite determinacy makes the truncation right equivalent to f through a
    substitution agreeing with the identity up to degree order - mu; the
    witness is not constructed here (downstream code only needs the
    truncation plus classifier invariance).
    """
    mu = milnor_data(f, cap).milnor_number
    if order <= mu:
        raise DeterminacyBoundError(
            f"truncation order {order} is not above the Milnor number {mu}"
        )
    return f.truncated(order)

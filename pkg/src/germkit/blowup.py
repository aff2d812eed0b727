"""Weighted-blowup charts, strict transforms, discrepancies and lift checks.

A weighted blowup with weights w has one chart per variable: on the chart of
x_j the substitution reads x_i = u^{w_i} * x_i (i != j) and x_j = u^{w_j},
with a residual cyclic quotient of order w_j (order 1 means an honest affine
chart).  The strict transform of V(f) is f composed with the chart map and
divided by u^{wt f}; the division is exact by the definition of the weight.

Lifting a coordinate change to the blown-up spaces is decided in two steps:
weight-respecting maps lift outright; otherwise the change is conjugated by
every order-1 chart and must come out with u-denominator-free components in
both directions.  The only data needed for that decision is the u-valuation
of the pulled-back components, because the chart unit is invertible along
the exceptional divisor.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import PreconditionError, UnsupportedGermError
from .poly import Polynomial, WeightVector, substitute
from .substitution import JetSubstitution, verify_weight_respecting

AMBIENT = None  # marker: discrepancy/lift over the ambient smooth space


@dataclass(frozen=True)
class BlowupChart:
    chart_variable: str
    substitution: dict[str, Polynomial]
    quotient_order: int
    transform: Polynomial | None
    exceptional: Polynomial

    def chart_ring(self) -> tuple[str, ...]:
        return self.exceptional.variables


def _chart_parameter(variables: tuple[str, ...]) -> str:
    for candidate in ("u", "u0", "u1", "u2"):
        if candidate not in variables:
            return candidate
    raise PreconditionError("no free name for the chart parameter")


def charts(w: WeightVector, variables: tuple[str, ...] | None = None) -> list[BlowupChart]:
    """One chart skeleton per variable (transforms left empty)."""
    if variables is None:
        variables = w.variables()
    if not variables:
        raise PreconditionError("blowup needs at least one variable")
    u = _chart_parameter(variables)
    ring = (u, *variables)
    out = []
    for j, name in enumerate(variables):
        subst: dict[str, Polynomial] = {}
        u_poly = Polynomial.variable(u, ring)
        for i, other in enumerate(variables):
            if i == j:
                subst[other] = u_poly ** w[other]
            else:
                subst[other] = u_poly ** w[other] * Polynomial.variable(other, ring)
        out.append(
            BlowupChart(
                chart_variable=name,
                substitution=subst,
                quotient_order=w[name],
                transform=None,
                exceptional=u_poly,
            )
        )
    return out


def strict_transform(f: Polynomial, w: WeightVector, chart: BlowupChart) -> BlowupChart:
    """Populate the chart with (f o substitution) / u^{wt f} (exact division)."""
    d = f.weight(w)
    if d == float("inf"):
        raise PreconditionError("strict transform of the zero polynomial is undefined")
    pulled = substitute(f, chart.substitution, None)
    u = chart.exceptional.variables[0]
    transform = pulled.exact_div_power(u, int(d))
    u_index = transform.variables.index(u)
    if transform.terms and all(e[u_index] for e in transform.terms):
        raise AssertionError("strict transform still divisible by the exceptional parameter")
    return replace(chart, transform=transform)


def discrepancy(w: WeightVector, f: Polynomial | None = AMBIENT) -> int:
    """sum(weights) - 1 over the smooth ambient space; for a hypersurface
    germ, sum(weights) - wt(f) - 1."""
    values = [value for _, value in w.items()]
    if f is AMBIENT:
        if len(values) != 3:
            raise UnsupportedGermError("ambient smooth case expects three weights")
        return sum(values) - 1
    if len(f.variables) != 4:
        raise UnsupportedGermError("hypersurface discrepancy expects four variables")
    d = f.weight(w)
    if d == float("inf"):
        raise UnsupportedGermError("zero polynomial has no discrepancy")
    return sum(w[v] for v in f.variables) - int(d) - 1


@dataclass(frozen=True)
class LaurentViolation:
    chart: str
    component: str
    direction: str           # "forward" or "inverse"
    monomial: Polynomial     # the offending pulled-back term
    u_shortfall: int         # how many powers of u are missing


@dataclass(frozen=True)
class LiftCertificate:
    lifts: bool
    via: str                                  # "weight_respecting" or "chart_regularity"
    violations: tuple[LaurentViolation, ...] = ()

    def __bool__(self) -> bool:
        return self.lifts


def lift_check(
    sigma: JetSubstitution,
    w: WeightVector,
    f: Polynomial | None = AMBIENT,
) -> LiftCertificate:
    """Decide whether sigma lifts to the w-blowup.

    Weight-respecting maps lift by the lifting lemma.  Otherwise sigma and
    its inverse are conjugated onto every order-1 chart; the candidate
    component for x_i is pullback(sigma_i) / (u^{w_i} * unit), so the lift is
    regular exactly when every pulled-back component has u-valuation at least
    w_i.  Jet truncation cannot hide a violation: with minimal weight 1 a
    term of degree above the jet order already carries enough powers of u.
    """
    sigma = sigma.with_inverse()
    certificate = verify_weight_respecting(sigma, w, w)
    if certificate:
        return LiftCertificate(True, "weight_respecting")

    variables = sigma.source_vars
    order_one = [v for v in variables if w[v] == 1]
    if not order_one:
        raise PreconditionError("no order-1 chart available for the lift decision")

    violations: list[LaurentViolation] = []
    chart_list = charts(w, variables)
    for chart in chart_list:
        if chart.quotient_order != 1:
            continue
        u = chart.exceptional.variables[0]
        for direction, components in (
            ("forward", sigma.components),
            ("inverse", sigma.inverse_components),
        ):
            for name, image in components.items():
                pulled = substitute(image, chart.substitution, None)
                u_index = pulled.variables.index(u)
                required = w[name]
                for exps, coeff in pulled.terms.items():
                    if exps[u_index] < required:
                        violations.append(
                            LaurentViolation(
                                chart=chart.chart_variable,
                                component=name,
                                direction=direction,
                                monomial=Polynomial(pulled.variables, {exps: coeff}),
                                u_shortfall=required - exps[u_index],
                            )
                        )
    return LiftCertificate(not violations, "chart_regularity", tuple(violations))


def algebraize(
    relations: list[Polynomial],
    psi: JetSubstitution,
    w_targets: WeightVector,
) -> tuple[list[Polynomial], WeightVector]:
    """Graph construction tying analytic coordinates to algebraic ones.

    Given relations in the source variables and a coordinate map psi into
    target variables carrying positive weights, emit the generators
    relations + { trunc(psi_j, w_j - 1) - y_j } over the combined variable
    ring, with weight 1 on every source variable.  The graph projection to
    the target space is weight-respecting, so the weighted blowup of the
    output is locally analytically equivalent to the target blowup.
    """
    source = psi.source_vars
    targets = psi.target_vars
    for name in targets:
        if w_targets[name] < 1:
            raise PreconditionError("target weights must be positive")
    combined = tuple(source) + tuple(targets)
    generators = [rel.with_variables(combined) for rel in relations]
    for name in targets:
        truncated = psi.components[name].truncated(max(w_targets[name] - 1, 1))
        if w_targets[name] == 1:
            truncated = Polynomial.zero(source)
        gen = truncated.without_jet().with_variables(combined) - Polynomial.variable(
            name, combined
        )
        generators.append(gen)
    table = {v: 1 for v in source}
    for name in targets:
        table[name] = w_targets[name]
    return generators, WeightVector(table)

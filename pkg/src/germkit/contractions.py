"""Divisorial-contraction census over a germ: enumeration, counting,
membership decisions, and the automorphism families witnessing uncountability.

Class kinds: ``smooth`` is the (1,a,b)-family over a smooth point; ``type1``
the (r1,r2,a,1)-blowups of xy + g with wt g = r1 + r2; ``type2`` the single
(1,5,3,2)-class over the A2 germ; ``type3`` the single (4,3,2,1)-class over
the E6 germ.  Discrepancies are a+b, a, 4 and 3 respectively; the uniform
formula sum(weights) - wt(f) - 1 reproduces them on hypersurface germs.

Existence of a type1 class for a candidate a is decided by the weight test
wt(g, (a,1)) = a(n+1) on a canonical representative of the residual: the
marked simple normal form when the residual is an ADE germ, and otherwise a
pure-power rotation of the multiplicity form followed by shears absorbing
z^n-terms.  For a >= 2 the test is conclusive: any coordinate change acts on
the multiplicity form through its linear part, so a residual whose
multiplicity form is not a perfect (n+1)-st power admits no such weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .classify import SingularityReport, cA_index, classify_simple
from .errors import GermError, PreconditionError, UnsupportedGermError
from .milnor import milnor_data
from .poly import Polynomial, WeightVector
from .substitution import JetSubstitution, substitute

COUNTABLY_INFINITE = "countably infinite"
UNCOUNTABLE = "uncountable"


@dataclass(frozen=True)
class ContractionClass:
    kind: str                      # smooth | type1 | type2 | type3
    weights: WeightVector | None   # None for the symbolic smooth family
    params: tuple                  # (r1, r2, a) for type1, (a, b) for smooth
    cA: int | None
    discrepancy: int | None
    representative: Polynomial | None

    def weight_values(self) -> tuple[int, ...] | None:
        if self.weights is None or self.representative is None:
            return None
        return tuple(self.weights[v] for v in self.representative.variables)


@dataclass(frozen=True)
class MembershipRejection:
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class ContractionCensus:
    classes: tuple[ContractionClass, ...]
    count_local_analytic: int | str
    count_over_base: int | str
    a_max: int | None
    over_base_systems: tuple[tuple[int, int, int], ...] | None
    smooth_family: str | None = None


# ---------------------------------------------------------------------------
# residual preparation for the admissibility weight test
# ---------------------------------------------------------------------------


def _power_line(form: Polynomial, power: int) -> tuple[Fraction, tuple[Fraction, Fraction]] | None:
    """(kappa, (alpha, beta)) with form = kappa*(alpha*u + beta*v)^power."""
    coeffs: dict[int, Fraction] = {}
    for exps, coeff in form.terms.items():
        if sum(exps) != power:
            return None
        coeffs[exps[0]] = coeff
    c_top = coeffs.get(power, Fraction(0))
    if c_top:
        s = coeffs.get(power - 1, Fraction(0)) / (power * c_top)
        kappa = c_top
        from math import comb

        for i in range(power + 1):
            if coeffs.get(power - i, Fraction(0)) != comb(power, i) * kappa * s**i:
                return None
        return kappa, (Fraction(1), s)
    # no u^power term: the line can only be v itself
    c_bot = coeffs.get(0, Fraction(0))
    if c_bot and all(not coeffs.get(j, Fraction(0)) for j in range(1, power + 1)):
        return c_bot, (Fraction(0), Fraction(1))
    return None


def prepare_residual(g: Polynomial, order_hint: int | None = None) -> Polynomial:
    """Canonical representative of a two-variable residual for the weight test.

    Simple residuals use their marked ADE normal form (maximal weight by the
    normal-form lemma).  Non-simple residuals get the multiplicity form
    rotated onto a pure power of the first variable when possible, followed
    by shears removing mixed terms divisible by its (n-th) power.
    """
    if len(g.variables) != 2:
        raise PreconditionError("residual preparation expects a two-variable germ")
    mu = milnor_data(g).milnor_number
    order = order_hint or (mu + 1)
    report = classify_simple(g)
    if report.normal_form is not None:
        return report.normal_form.polynomial.without_jet()
    current = g.truncated(order)
    n_plus_1 = int(current.multiplicity())
    u, v = current.variables
    found = _power_line(current.degree_part(n_plus_1), n_plus_1)
    if found is not None:
        _, line = found
        if line[0]:
            matrix = [[line[0], line[1]], [Fraction(0), Fraction(1)]]
        else:
            matrix = [[line[0], line[1]], [Fraction(1), Fraction(0)]]
        det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
        inv = [
            [matrix[1][1] / det, -matrix[0][1] / det],
            [-matrix[1][0] / det, matrix[0][0] / det],
        ]
        images = {
            u: Polynomial.variable(u, current.variables) * inv[0][0]
            + Polynomial.variable(v, current.variables) * inv[0][1],
            v: Polynomial.variable(u, current.variables) * inv[1][0]
            + Polynomial.variable(v, current.variables) * inv[1][1],
        }
        rotation = JetSubstitution.from_images(current.variables, images, order)
        current = rotation.apply(current, order)
        # absorb u^n * v^j terms into the pure power, ascending in j
        for _ in range(order + 2):
            kappa = current.coefficient(
                tuple(n_plus_1 if name == u else 0 for name in current.variables)
            )
            offender = None
            for exps, coeff in sorted(current.terms.items(), key=lambda kv: kv[0][1]):
                if exps[0] == n_plus_1 - 1 and exps[1] >= 1:
                    offender = (exps, coeff)
                    break
            if offender is None or not kappa:
                break
            exps, coeff = offender
            shear = Polynomial(
                current.variables,
                {(0, exps[1]): coeff / (n_plus_1 * kappa)},
            )
            step = JetSubstitution.from_images(
                current.variables,
                {u: Polynomial.variable(u, current.variables) - shear},
                order,
            )
            current = step.apply(current, order)
    return current.without_jet()


# ---------------------------------------------------------------------------
# admissible weight systems
# ---------------------------------------------------------------------------


def admissible_weight_systems(
    g: Polynomial, n: int, max_a: int | None = None
) -> list[tuple[int, int, int]]:
    """All (r1, r2, a) with r1 <= r2, r1 + r2 = a(n+1), gcd(a, r1) = 1 such
    that the prepared residual has weight a(n+1) under (a, 1).

    The candidate range for a is bounded by the Milnor inequality
    n((n+1)a - 1) <= mu(g) + 1, which the quasihomogeneous lower bound for
    the Milnor number forces on any admissible system.
    """
    if g.multiplicity() != n + 1:
        raise PreconditionError(
            f"residual multiplicity {g.multiplicity()} does not match n+1 = {n + 1}"
        )
    mu = milnor_data(g).milnor_number
    bound = 1
    while n * ((n + 1) * (bound + 1) - 1) <= mu + 1:
        bound += 1
    if max_a is not None:
        bound = min(bound, max_a)
    prepared = prepare_residual(g)
    u, v = prepared.variables
    systems: list[tuple[int, int, int]] = []
    for a in range(1, bound + 1):
        w = WeightVector({u: a, v: 1})
        if prepared.weight(w) != a * (n + 1):
            continue
        total = a * (n + 1)
        for r1 in range(1, total // 2 + 1):
            if gcd(a, r1) == 1:
                systems.append((r1, total - r1, a))
    systems.sort(key=lambda s: (s[2], s[0]))
    return systems


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------


def _canonical_a2(variables: tuple[str, ...]) -> Polynomial:
    x, y, z, t = variables
    return (
        Polynomial.variable(x, variables) * Polynomial.variable(y, variables)
        + Polynomial.variable(z, variables) ** 2
        + Polynomial.variable(t, variables) ** 3
    )


def _canonical_e6(variables: tuple[str, ...]) -> Polynomial:
    x, y, z, t = variables
    return (
        Polynomial.variable(x, variables) ** 2
        + Polynomial.variable(y, variables) ** 2
        + Polynomial.variable(z, variables) ** 3
        + Polynomial.variable(x, variables) * Polynomial.variable(t, variables) ** 2
    )


def enumerate_contractions(f: Polynomial, max_a: int | None = None) -> ContractionCensus:
    """Census of divisorial-contraction classes over the germ of f.

    Smooth germs get the symbolic countable family; compound-A germs get the
    type1 systems from the split residual plus the special type2/type3
    classes when the germ is the A2 or E6 singularity.  Counts over the base
    follow the discrepancy dichotomy: n classes when every discrepancy is 1,
    uncountably many as soon as one class has discrepancy >= 2.
    """
    mult = f.multiplicity()
    if mult == 0:
        raise UnsupportedGermError("the germ is a unit")
    if mult == 1:
        return ContractionCensus(
            classes=(),
            count_local_analytic=COUNTABLY_INFINITE,
            count_over_base=UNCOUNTABLE,
            a_max=None,
            over_base_systems=None,
            smooth_family="(1, a, b)-blowups, a <= b coprime positive integers",
        )
    compound = cA_index(f, with_witness=False)
    if compound.type_tag.kind != "cA":
        raise UnsupportedGermError(
            "census supports smooth and compound-A germs only "
            f"(classifier says {compound.type_tag})"
        )
    n = compound.cA_index
    residual = compound.residual
    assert residual is not None
    simple = classify_simple(f, with_witness=False)

    variables = f.variables
    classes: list[ContractionClass] = []
    systems = admissible_weight_systems(residual, n, max_a=max_a)
    prepared = prepare_residual(residual)
    for r1, r2, a in systems:
        rep = (
            Polynomial.variable(variables[0], variables)
            * Polynomial.variable(variables[1], variables)
            + prepared.with_variables(variables)
        )
        classes.append(
            ContractionClass(
                kind="type1",
                weights=WeightVector.for_variables(variables, (r1, r2, a, 1)),
                params=(r1, r2, a),
                cA=n,
                discrepancy=a,
                representative=rep,
            )
        )
    tag = simple.type_tag
    if n == 1 and tag.kind == "A" and tag.index == 2:
        classes.append(
            ContractionClass(
                kind="type2",
                weights=WeightVector.for_variables(variables, (1, 5, 3, 2)),
                params=(),
                cA=1,
                discrepancy=4,
                representative=_canonical_a2(variables),
            )
        )
    if n == 2 and tag.kind == "E6":
        classes.append(
            ContractionClass(
                kind="type3",
                weights=WeightVector.for_variables(variables, (4, 3, 2, 1)),
                params=(),
                cA=2,
                discrepancy=3,
                representative=_canonical_e6(variables),
            )
        )
    a_max = max((c.params[2] for c in classes if c.kind == "type1"), default=0)
    all_discrepancy_one = all(c.discrepancy == 1 for c in classes)
    if all_discrepancy_one:
        count_over_base: int | str = n
        over_base = tuple((r1, n + 1 - r1, 1) for r1 in range(1, n + 1))
    else:
        count_over_base = UNCOUNTABLE
        over_base = None
    return ContractionCensus(
        classes=tuple(classes),
        count_local_analytic=len(classes),
        count_over_base=count_over_base,
        a_max=a_max,
        over_base_systems=over_base,
    )


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------


def decide_membership(
    f: Polynomial | None, w: WeightVector
) -> ContractionClass | MembershipRejection:
    """Match a (germ, weight) pair against the classification families.

    ``f = None`` asks about the ambient smooth three-space; otherwise f must
    be an isolated four-variable germ.  Checks run in the order smooth,
    type1, type2, type3 and the rejection names the first failed condition.
    """
    if f is None:
        values = sorted(w.values_for(w.variables()))
        if len(values) != 3:
            return MembershipRejection("smooth case needs exactly three weights")
        one, a, b = values
        if one != 1:
            return MembershipRejection(f"smallest weight is {one}, not 1")
        if gcd(a, b) != 1:
            return MembershipRejection(f"gcd({a}, {b}) = {gcd(a, b)} != 1")
        return ContractionClass(
            kind="smooth",
            weights=w,
            params=(a, b),
            cA=None,
            discrepancy=a + b,
            representative=None,
        )

    variables = f.variables
    if len(variables) != 4:
        return MembershipRejection("hypersurface membership needs four variables")
    if not w.covers(variables):
        return MembershipRejection("weights do not cover the variables")
    values = tuple(w[v] for v in variables)
    rejections: list[MembershipRejection] = []

    # type1: positional shape (r1, r2, a, 1), the first two weights
    # interchangeable by the weight-respecting swap of x and y
    r1, r2, a, last = values
    if r1 > r2:
        r1, r2 = r2, r1
    if last == 1:
        outcome = _try_type1(f, w, r1, r2, a)
        if isinstance(outcome, ContractionClass):
            return outcome
        rejections.append(outcome)

    if sorted(values) == [1, 2, 3, 5]:
        report = classify_simple(f, with_witness=False)
        if not (report.type_tag.kind == "A" and report.type_tag.index == 2):
            rejections.append(MembershipRejection(f"germ is {report.type_tag}, not A2"))
        elif f.weight(w) != 6:
            rejections.append(MembershipRejection(f"weight(f, w) = {f.weight(w)} != 6"))
        else:
            return ContractionClass(
                kind="type2", weights=w, params=(), cA=1, discrepancy=4, representative=f
            )

    if sorted(values) == [1, 2, 3, 4]:
        report = classify_simple(f, with_witness=False)
        if report.type_tag.kind != "E6":
            rejections.append(MembershipRejection(f"germ is {report.type_tag}, not E6"))
        elif f.weight(w) != 6:
            rejections.append(MembershipRejection(f"weight(f, w) = {f.weight(w)} != 6"))
        else:
            return ContractionClass(
                kind="type3", weights=w, params=(), cA=2, discrepancy=3, representative=f
            )

    if rejections:
        return rejections[0]
    return MembershipRejection(f"weights {values} match no classification family")


def _try_type1(
    f: Polynomial, w: WeightVector, r1: int, r2: int, a: int
) -> ContractionClass | MembershipRejection:
    if (r1 + r2) % a != 0:
        return MembershipRejection(f"{a} does not divide r1 + r2 = {r1 + r2}")
    if gcd(a, r1) != 1 or gcd(a, r2) != 1:
        return MembershipRejection(f"{a} is not coprime to ({r1}, {r2})")
    compound = cA_index(f, with_witness=False)
    if compound.type_tag.kind != "cA":
        return MembershipRejection("germ is not a compound-A singularity")
    n = compound.cA_index
    if a * (n + 1) != r1 + r2:
        return MembershipRejection(
            f"a(n+1) = {a * (n + 1)} differs from r1 + r2 = {r1 + r2}"
        )
    actual = f.weight(w)
    if actual != r1 + r2:
        return MembershipRejection(f"weight(f, w) = {actual} != {r1 + r2}")
    return ContractionClass(
        kind="type1",
        weights=w,
        params=(r1, r2, a),
        cA=n,
        discrepancy=a,
        representative=f,
    )


# ---------------------------------------------------------------------------
# automorphism families (the uncountability witnesses)
# ---------------------------------------------------------------------------


def family_witness(cls: ContractionClass, params) -> JetSubstitution:
    """The automorphism of the class representative indexed by ``params``.

    type1 (with r1 = 1): params is a rational c; the map fixes xy + g via
    z -> z + c x and the exact cancellation y -> y - (g(z + cx, t) - g(z, t))/x.
    type3: params is a rational circle point (u, v, w) with u = +-1 and
    v^2 + w^2 = 1.  The fixing property is machine-verified exactly.
    """
    if cls.kind == "type1":
        r1, r2, a = cls.params
        if r1 != 1:
            raise PreconditionError("the shear family needs r1 = 1")
        c = Fraction(params if not isinstance(params, tuple) else params[0])
        rep = cls.representative
        assert rep is not None
        variables = rep.variables
        x, y, z, t = variables
        g = Polynomial.zero(variables)
        ix, iy = variables.index(x), variables.index(y)
        for exps, coeff in rep.terms.items():
            if not exps[ix] and not exps[iy]:
                g = g + Polynomial(variables, {exps: coeff})
        shifted = substitute(
            g,
            {z: Polynomial.variable(z, variables) + Polynomial.variable(x, variables) * c},
            None,
        )
        h = (shifted - g).exact_div_power(x, 1)
        order = max(12, 2 * rep.degree())
        sigma = JetSubstitution.from_images(
            variables,
            {
                y: Polynomial.variable(y, variables) - h,
                z: Polynomial.variable(z, variables) + Polynomial.variable(x, variables) * c,
            },
            order,
        )
        _verify_fixes(sigma, rep)
        return sigma.with_inverse(order)

    if cls.kind == "type3":
        u, v, wp = (Fraction(p) for p in params)
        if u * u != 1:
            raise PreconditionError(f"u must be +1 or -1, got {u}")
        if v * v + wp * wp != 1:
            raise PreconditionError(f"(v, w) = ({v}, {wp}) is not on the unit circle")
        rep = cls.representative
        assert rep is not None
        variables = rep.variables
        x, y, z, t = variables
        X = Polynomial.variable(x, variables)
        Y = Polynomial.variable(y, variables)
        T = Polynomial.variable(t, variables)
        order = 12
        sigma = JetSubstitution.from_images(
            variables,
            {
                x: X * v + Y * wp + T ** 2 * ((v - 1) / 2),
                y: X * (u * wp) - Y * (u * v) + T ** 2 * (u * wp / 2),
            },
            order,
        )
        _verify_fixes(sigma, rep)
        return sigma.with_inverse(order)

    raise PreconditionError(f"no parametrized family for kind {cls.kind!r}")


def _verify_fixes(sigma: JetSubstitution, rep: Polynomial) -> None:
    image = substitute(rep, sigma.components, None)
    if image != rep:
        raise AssertionError("family automorphism does not fix the representative")

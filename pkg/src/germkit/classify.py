"""Singularity recognition: ADE determinator, compound-A index, consolidated reports.

The determinator follows the classical corank casework.  Corank <= 1 gives
A_mu.  In corank 2 the cubic part of the two-variable residual decides the
branch through its linear-factor structure, tested rationally: square-free
(nonzero discriminant) means three distinct complex factors, a vanishing
Hessian means a triple factor, anything in between is a double factor.  The
Milnor number then pins the index.  Corank >= 3 and every failed branch
report non_simple; ``unrecognized`` is reserved for germs outside the
compound-A test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    GermError,
    HypersurfaceGermError,
    NonIsolatedError,
    UnsupportedGermError,
)
from .milnor import milnor_data
from .normal_form import (
    MarkedNormalForm,
    reduce_to_simple,
    split_off,
)
from .poly import Polynomial, WeightVector, quadratic_rank
from .substitution import JetSubstitution, substitute_jet


@dataclass(frozen=True)
class SingTag:
    kind: str                 # smooth | A | D | E6 | E7 | E8 | cA | non_simple | unrecognized
    index: int | None = None

    def __str__(self) -> str:
        if self.kind in ("A", "D", "cA"):
            return f"{self.kind}{self.index}"
        return self.kind

    @property
    def is_simple(self) -> bool:
        return self.kind in ("A", "D", "E6", "E7", "E8")


@dataclass(frozen=True)
class SingularityReport:
    multiplicity: int | float
    quadratic_rank: int
    corank: int
    milnor_number: int | None
    type_tag: SingTag
    cA_index: int | None = None
    residual: Polynomial | None = None
    witness: JetSubstitution | None = None
    normal_form: MarkedNormalForm | None = None


# ---------------------------------------------------------------------------
# binary cubic structure over the rationals
# ---------------------------------------------------------------------------


def _binary_cubic(g: Polynomial) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Coefficients (a, b, c, d) of a*u^3 + b*u^2 v + c*u v^2 + d*v^3 for a
    two-variable polynomial's degree-3 part."""
    if len(g.variables) != 2:
        raise UnsupportedGermError("binary cubic analysis needs a two-variable germ")
    coeffs = {3: Fraction(0), 2: Fraction(0), 1: Fraction(0), 0: Fraction(0)}
    for exps, coeff in g.degree_part(3).terms.items():
        coeffs[exps[0]] = coeff
    return coeffs[3], coeffs[2], coeffs[1], coeffs[0]


def cubic_discriminant(cubic: tuple[Fraction, Fraction, Fraction, Fraction]) -> Fraction:
    a, b, c, d = cubic
    return (
        18 * a * b * c * d
        - 4 * b**3 * d
        + b**2 * c**2
        - 4 * a * c**3
        - 27 * a**2 * d**2
    )


def cubic_hessian(cubic) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients of the Hessian binary quadratic, up to the factor 4."""
    a, b, c, d = cubic
    return (3 * a * c - b * b, 9 * a * d - b * c, 3 * b * d - c * c)


def cubic_factor_structure(cubic) -> str:
    """'zero', 'distinct', 'double' or 'triple' (factorization over C,
    decided rationally via discriminant and Hessian)."""
    if not any(cubic):
        return "zero"
    if cubic_discriminant(cubic) != 0:
        return "distinct"
    if any(cubic_hessian(cubic)):
        return "double"
    return "triple"


def triple_line(cubic) -> tuple[Fraction, tuple[Fraction, Fraction]] | None:
    """(kappa, (alpha, beta)) with cubic = kappa*(alpha*u + beta*v)^3."""
    a, b, c, d = cubic
    if a:
        s = b / (3 * a)
        if c == 3 * a * s * s and d == a * s**3:
            return a, (Fraction(1), s)
        return None
    if d:
        s = c / (3 * d)
        if b == 3 * d * s * s and a == d * s**3:
            return d, (s, Fraction(1))
        return None
    return None


def _integer_divisors(value: int) -> list[int]:
    value = abs(value)
    out = []
    d = 1
    while d * d <= value:
        if value % d == 0:
            out.append(d)
            out.append(value // d)
        d += 1
    return sorted(set(out))


def rational_linear_factor(cubic) -> tuple[Fraction, Fraction] | None:
    """A line (alpha, beta) with (alpha*u + beta*v) dividing the cubic, if one
    exists over the rationals (rational-root search on the dehomogenization)."""
    a, b, c, d = cubic
    if not a:
        return (Fraction(0), Fraction(1))  # v divides
    from math import lcm

    scale = lcm(a.denominator, b.denominator, c.denominator, d.denominator)
    ia, ib, ic, id_ = (int(x * scale) for x in (a, b, c, d))
    if id_ == 0:
        return (Fraction(1), Fraction(0))  # cubic(u,1) has root 0: the line is u
    for num in _integer_divisors(id_):
        for den in _integer_divisors(ia):
            for sign in (1, -1):
                root = Fraction(sign * num, den)
                if a * root**3 + b * root**2 + c * root + d == 0:
                    # u = root is a root of cubic(u, 1): the line is u - root*v
                    return (Fraction(1), -root)
    return None


def double_line(cubic) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]] | None:
    """((alpha, beta), (alpha', beta')) with cubic = const*(alpha*u+beta*v)^2*(alpha'*u+beta'*v)."""
    A, B, C = cubic_hessian(cubic)
    if A:
        line = (Fraction(1), B / (2 * A))
    elif C:
        line = (B / (2 * C), Fraction(1))
    else:
        return None
    alpha, beta = line
    # divide the dehomogenized cubic by (u + s v)^2 resp. handle u-powers
    a, b, c, d = cubic
    if alpha:
        s = beta / alpha
        # p(u) = a u^3 + b u^2 + c u + d at v = 1, double root at -s
        p = [a, b, c, d]
        if _poly_eval(p, -s) != 0 or _poly_eval(_poly_diff(p), -s) != 0:
            return None
        q = _synthetic_div(_synthetic_div(p, -s), -s)
        # q = [q1, q0] gives the cofactor q1*u + q0*v after rehomogenizing
        return line, (q[0], q[1])
    # line = v: cubic = v^2 (c u + d v), requires a = b = 0
    if a or b:
        return None
    return line, (c, d)


def _poly_eval(coeffs: list[Fraction], x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in coeffs:
        out = out * x + c
    return out


def _poly_diff(coeffs: list[Fraction]) -> list[Fraction]:
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])]


def _synthetic_div(coeffs: list[Fraction], root: Fraction) -> list[Fraction]:
    out = []
    acc = Fraction(0)
    for c in coeffs[:-1]:
        acc = acc * root + c
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# natural quasihomogeneous weights of the simple forms
# ---------------------------------------------------------------------------


def natural_simple_weights(
    tag: SingTag, core_vars: tuple[str, ...], quad_vars: tuple[str, ...]
) -> WeightVector:
    if tag.kind == "A":
        k = tag.index
        table = {v: 2 for v in core_vars}
        table.update({v: k + 1 for v in quad_vars})
    elif tag.kind == "D":
        k = tag.index
        u, v = core_vars
        table = {u: 2, v: k - 2}
        table.update({q: k - 1 for q in quad_vars})
    elif tag.kind == "E6":
        u, v = core_vars
        table = {u: 4, v: 3}
        table.update({q: 6 for q in quad_vars})
    elif tag.kind == "E7":
        u, v = core_vars
        table = {u: 6, v: 4}
        table.update({q: 9 for q in quad_vars})
    elif tag.kind == "E8":
        u, v = core_vars
        table = {u: 10, v: 6}
        table.update({q: 15 for q in quad_vars})
    else:
        raise UnsupportedGermError(f"no natural weights for {tag}")
    return WeightVector(table)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def _require_germ(f: Polynomial) -> None:
    if len(f.variables) < 2:
        raise UnsupportedGermError("classification needs at least two variables")
    if f.constant_term():
        raise HypersurfaceGermError("nonzero constant term")
    if f.degree_part(1).terms:
        raise HypersurfaceGermError("nonzero linear part: germ is smooth")


def _residual_after_split(split_form: Polynomial, split_vars: tuple[str, ...]) -> Polynomial:
    keep = [v for v in split_form.variables if v not in split_vars]
    residual = Polynomial.zero(split_form.variables)
    for exps, coeff in split_form.terms.items():
        if all(
            not e or split_form.variables[i] in keep for i, e in enumerate(exps)
        ):
            residual = residual + Polynomial(split_form.variables, {exps: coeff})
    return residual.without_jet().with_variables(tuple(keep))


def classify_simple(f: Polynomial, with_witness: bool = True) -> SingularityReport:
    """ADE recognition for an isolated hypersurface germ (>= 2 variables)."""
    _require_germ(f)
    mu = milnor_data(f).milnor_number
    rank = quadratic_rank(f)
    nvars = len(f.variables)
    corank = nvars - rank
    mult = f.multiplicity()
    base = dict(
        multiplicity=mult,
        quadratic_rank=rank,
        corank=corank,
        milnor_number=mu,
    )
    order = mu + 1

    if corank == 0:
        if mu != 1:
            raise AssertionError("corank 0 forces Milnor number 1")
        tag = SingTag("A", 1)
        return _with_witness(f, SingularityReport(type_tag=tag, **base), order, with_witness)
    if corank == 1:
        tag = SingTag("A", mu)
        return _with_witness(f, SingularityReport(type_tag=tag, **base), order, with_witness)
    if corank >= 3:
        return SingularityReport(type_tag=SingTag("non_simple"), **base)

    # corank 2: split down to a two-variable residual and read the cubic
    split_form, split_witness, split_vars = split_off(f, rank, order)
    residual = _residual_after_split(split_form, split_vars)
    cubic = _binary_cubic(residual)
    structure = cubic_factor_structure(cubic)
    if structure == "zero":
        tag = SingTag("non_simple")
    elif structure == "distinct":
        if mu != 4:
            raise AssertionError("three distinct cubic factors force Milnor number 4")
        tag = SingTag("D", 4)
    elif structure == "double":
        if mu < 5:
            raise AssertionError("double cubic factor forces Milnor number >= 5")
        tag = SingTag("D", mu)
    else:
        tag = {6: SingTag("E6"), 7: SingTag("E7"), 8: SingTag("E8")}.get(
            mu, SingTag("non_simple")
        )
    report = SingularityReport(type_tag=tag, residual=residual, **base)
    return _with_witness(f, report, order, with_witness)


def _with_witness(
    f: Polynomial, report: SingularityReport, order: int, enabled: bool
) -> SingularityReport:
    if not enabled or not report.type_tag.is_simple:
        return report
    try:
        marked = simple_normal_form_witness(f, report, order)
    except GermError:
        return report
    if marked is None:
        return report
    return SingularityReport(
        multiplicity=report.multiplicity,
        quadratic_rank=report.quadratic_rank,
        corank=report.corank,
        milnor_number=report.milnor_number,
        type_tag=report.type_tag,
        cA_index=report.cA_index,
        residual=report.residual,
        witness=marked.witness,
        normal_form=marked,
    )


def simple_normal_form_witness(
    f: Polynomial, report: SingularityReport, order: int
) -> MarkedNormalForm | None:
    """Best-effort reduction of a recognized ADE germ onto its marked form.

    Splits off the quadratic rank, rotates the distinguished cubic line onto
    a coordinate axis where the branch requires it, and runs the weighted
    reduction under the natural quasihomogeneous weights of the form.
    Returns None when the germ needs preparation outside this pipeline.
    """
    tag = report.type_tag
    rank = report.quadratic_rank
    split_form, split_witness, split_vars = split_off(f, rank, order)
    keep = tuple(v for v in split_form.variables if v not in split_vars)
    variables = split_form.variables

    rotation = JetSubstitution.identity(variables, order)
    if tag.kind in ("D", "E6", "E7", "E8"):
        residual = _residual_after_split(split_form, split_vars)
        cubic = _binary_cubic(residual)
        u, v = keep
        if tag.kind == "D" and tag.index == 4:
            line = rational_linear_factor(cubic)
            if line is None:
                return None  # three lines, none rational: no rational D4 shaping
            rotation = _axis_rotation(variables, (u, v), line, order)
            split_form = rotation.apply(split_form, order)
            a3, b3, c3, d3 = _binary_cubic(_residual_after_split(split_form, split_vars))
            if d3 or not c3:
                return None
            if b3:
                shear = JetSubstitution.from_images(
                    variables,
                    {
                        v: Polynomial.variable(v, variables)
                        - Polynomial.variable(u, variables) * (b3 / (2 * c3))
                    },
                    order,
                )
                split_form = shear.apply(split_form, order)
                rotation = rotation.then(shear)
        elif tag.kind == "D":
            found = double_line(cubic)
            if found is None:
                return None
            line2, line1 = found
            matrix = [[line1[0], line1[1]], [line2[0], line2[1]]]  # simple line -> u, double -> v
            rotation = _line_rotation(variables, (u, v), matrix, order)
            split_form = rotation.apply(split_form, order)
        else:
            found = triple_line(cubic)
            if found is None:
                return None
            _, line = found
            rotation = _axis_rotation(variables, (u, v), line, order)
            split_form = rotation.apply(split_form, order)

    quad_vars = split_vars
    core_vars = () if (tag.kind == "A" and tag.index == 1) else keep
    weights = natural_simple_weights(tag, core_vars, quad_vars)
    marked = reduce_to_simple(split_form, weights)
    witness = split_witness.then(rotation).then(marked.witness).with_inverse(order)
    reproduced = substitute_jet(f, witness, order)
    if reproduced != marked.polynomial:
        raise AssertionError("composite classifier witness failed to reproduce the form")
    # splitting runs under the degree filtration, so the composite is only
    # guaranteed weight-respecting for uniform weights
    trivial = WeightVector({v: 1 for v in f.variables})
    return MarkedNormalForm.build(marked.polynomial, witness, trivial)


def _axis_rotation(
    variables: tuple[str, ...],
    pair: tuple[str, str],
    line: tuple[Fraction, Fraction],
    order: int,
) -> JetSubstitution:
    """Linear change sending the given line onto the first pair variable."""
    if line[0]:
        matrix = [[line[0], line[1]], [Fraction(0), Fraction(1)]]
    else:
        matrix = [[line[0], line[1]], [Fraction(1), Fraction(0)]]
    return _line_rotation(variables, pair, matrix, order)


def _line_rotation(
    variables: tuple[str, ...],
    pair: tuple[str, str],
    matrix: list[list[Fraction]],
    order: int,
) -> JetSubstitution:
    """Substitution with prescribed linear images on a pair of variables.

    ``matrix`` rows give the images of the pair under the *inverse* point map:
    row i lists the coefficients of (pair[0], pair[1]) in the image of
    pair[i], chosen so the marked lines land on the coordinate axes.
    """
    u, v = pair
    det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    if not det:
        raise UnsupportedGermError("degenerate line rotation")
    inv = [
        [matrix[1][1] / det, -matrix[0][1] / det],
        [-matrix[1][0] / det, matrix[0][0] / det],
    ]
    img_u = (
        Polynomial.variable(u, variables) * inv[0][0]
        + Polynomial.variable(v, variables) * inv[0][1]
    )
    img_v = (
        Polynomial.variable(u, variables) * inv[1][0]
        + Polynomial.variable(v, variables) * inv[1][1]
    )
    return JetSubstitution.from_images(variables, {u: img_u, v: img_v}, order)


def cA_index(f: Polynomial, with_witness: bool = True) -> SingularityReport:
    """Compound-A test: split two rank directions, read mult(residual) - 1.

    Germs of quadratic rank < 2 are reported as ``unrecognized`` (never an
    error): they fall outside the compound-A family this toolkit handles.
    """
    _require_germ(f)
    if len(f.variables) != 4:
        raise UnsupportedGermError("compound-A germs live in four variables")
    mu = milnor_data(f).milnor_number
    rank = quadratic_rank(f)
    corank = len(f.variables) - rank
    base = dict(
        multiplicity=f.multiplicity(),
        quadratic_rank=rank,
        corank=corank,
        milnor_number=mu,
    )
    if rank < 2:
        return SingularityReport(type_tag=SingTag("unrecognized"), **base)
    order = mu + 1
    split_form, witness, split_vars = split_off(f, 2, order)
    residual = _residual_after_split(split_form, split_vars)
    n = int(residual.multiplicity()) - 1
    if n < 1:
        raise AssertionError("residual multiplicity below 2 on an isolated germ")
    return SingularityReport(
        type_tag=SingTag("cA", n),
        cA_index=n,
        residual=residual,
        witness=witness if with_witness else None,
        **base,
    )


def is_simple(f: Polynomial) -> bool:
    return classify_simple(f, with_witness=False).type_tag.is_simple


def germ_report(f: Polynomial) -> SingularityReport:
    """Consolidated report: smoothness, ADE tag, and compound-A data."""
    mult = f.multiplicity()
    if mult == 0:
        raise HypersurfaceGermError("germ is a unit: no singularity at the origin")
    if mult == 1:
        return SingularityReport(
            multiplicity=1,
            quadratic_rank=quadratic_rank(f),
            corank=len(f.variables) - quadratic_rank(f),
            milnor_number=0,
            type_tag=SingTag("smooth"),
        )
    report = classify_simple(f)
    if len(f.variables) == 4:
        try:
            compound = cA_index(f, with_witness=report.witness is None)
        except (NonIsolatedError, UnsupportedGermError):
            compound = None
        if compound is not None and compound.type_tag.kind == "cA":
            return SingularityReport(
                multiplicity=report.multiplicity,
                quadratic_rank=report.quadratic_rank,
                corank=report.corank,
                milnor_number=report.milnor_number,
                type_tag=report.type_tag,
                cA_index=compound.cA_index,
                residual=compound.residual,
                witness=report.witness or compound.witness,
                normal_form=report.normal_form,
            )
    return report

"""Weight-respecting reductions: quadratic splitting, weighted normal forms,
and reduction to the simple (ADE) forms, each returning a verified witness.

All reductions work on jets of order mu + 1 (finite determinacy licenses the
truncation) and keep coefficients rational.  Scaling a coefficient to 1 can
require a square root, so outputs are *marked* normal forms: the polynomial
has the support of the classical normal form, the marking records the actual
rational coefficient of each monomial, and equivalence to the coefficient-1
form holds over the complex numbers by diagonal scaling.

Every witness emitted here is machine-checked before being returned: it must
reproduce the output from the input under jet substitution and pass
verify_weight_respecting for the declared weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf, isqrt

from .errors import (
    HypersurfaceGermError,
    NonIsolatedError,
    NotSimpleError,
    PreconditionError,
    RationalObstructionError,
)
from .milnor import milnor_data
from .poly import Polynomial, WeightVector, quadratic_rank
from .reduction import Echelon
from .substitution import JetSubstitution, substitute_jet, verify_weight_respecting

_ENGINE_CAP = 2000


@dataclass(frozen=True)
class MarkedNormalForm:
    """A normal form with rational coefficient markings.

    ``polynomial`` is the reduced germ; ``unit_form`` has the same support
    with every coefficient set to 1 (the classical shape); ``marking`` maps
    each support monomial to its rational coefficient.  Substituting
    ``witness`` into the reduction input reproduces ``polynomial`` at the
    witness jet order, and the witness is weight-respecting for ``weights``.
    """

    polynomial: Polynomial
    unit_form: Polynomial
    marking: dict[Polynomial, Fraction]
    witness: JetSubstitution
    weights: WeightVector

    @classmethod
    def build(
        cls, polynomial: Polynomial, witness: JetSubstitution, weights: WeightVector
    ) -> "MarkedNormalForm":
        marking = {
            Polynomial(polynomial.variables, {exps: 1}): coeff
            for exps, coeff in polynomial.terms.items()
        }
        unit = Polynomial(polynomial.variables, {e: 1 for e in polynomial.terms})
        return cls(polynomial, unit, marking, witness, weights)


def _checked(
    source: Polynomial,
    result: Polynomial,
    witness: JetSubstitution,
    w: WeightVector,
    order: int,
) -> MarkedNormalForm:
    """Assemble a marked form after verifying the witness soundness contract."""
    witness = witness.with_inverse(order)
    reproduced = substitute_jet(source, witness, order)
    if reproduced != result:
        raise AssertionError("witness does not reproduce the reduction output")
    certificate = verify_weight_respecting(witness, w, w)
    if not certificate:
        raise AssertionError(f"witness is not weight-respecting: {certificate.violations}")
    return MarkedNormalForm.build(result, witness, w)


def _fraction_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# pair splitting
# ---------------------------------------------------------------------------


def _pair_exponents(f: Polynomial, pair: tuple[str, str]) -> tuple[int, int]:
    return f.variables.index(pair[0]), f.variables.index(pair[1])


def _block_coefficients(
    f: Polynomial, pair: tuple[str, str]
) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients (a, c, b) of x1^2, x1*x2, x2^2 in f."""
    i1, i2 = _pair_exponents(f, pair)
    a = c = b = Fraction(0)
    for exps, coeff in f.degree_part(2).terms.items():
        if exps[i1] == 2 and sum(exps) == 2:
            a = coeff
        elif exps[i2] == 2 and sum(exps) == 2:
            b = coeff
        elif exps[i1] == 1 and exps[i2] == 1:
            c = coeff
    return a, c, b


def _split_offenders(
    f: Polynomial, pair: tuple[str, str], block: set
) -> list[tuple[tuple[int, ...], Fraction]]:
    i1, i2 = _pair_exponents(f, pair)
    out = []
    for exps, coeff in f.terms.items():
        if (exps[i1] or exps[i2]) and exps not in block:
            out.append((exps, coeff))
    return out


def _split_block_exponents(
    f: Polynomial, pair: tuple[str, str], w: WeightVector, hyperbolic_only: bool
) -> set:
    """Exponents of the allowed rank-carrying quadratic block on the pair."""
    i1, i2 = _pair_exponents(f, pair)
    n = len(f.variables)
    d = f.weight(w)

    def exps_for(e1: int, e2: int):
        out = [0] * n
        out[i1], out[i2] = e1, e2
        return tuple(out)

    allowed = set()
    cross = exps_for(1, 1)
    if w[pair[0]] + w[pair[1]] == d:
        allowed.add(cross)
    if not hyperbolic_only:
        if 2 * w[pair[0]] == d:
            allowed.add(exps_for(2, 0))
        if 2 * w[pair[1]] == d:
            allowed.add(exps_for(0, 2))
    return allowed


def _run_pair_split(
    f: Polynomial,
    w: WeightVector,
    pair: tuple[str, str],
    order: int,
    hyperbolic_only: bool,
) -> tuple[Polynomial, JetSubstitution]:
    """Eliminate every pair-ideal monomial outside the quadratic block.

    Per weight level: decompose the offenders as x1*A + x2*C and cancel them
    through the gradient of the block; the corresponding shear is
    weight-respecting because offenders live at or above the germ weight.
    Levels above the germ weight clear in a single round; the base level
    terminates because the maximal x1-degree among offenders decreases.
    """
    variables = f.variables
    x1, x2 = pair
    i1, i2 = _pair_exponents(f, pair)
    block = _split_block_exponents(f, pair, w, hyperbolic_only)
    current = f.truncated(order)
    total = JetSubstitution.identity(variables, order)

    for _ in range(_ENGINE_CAP):
        offenders = _split_offenders(current, pair, block)
        if not offenders:
            break
        weight_of = lambda exps: sum(
            w[v] * e for v, e in zip(variables, exps)
        )
        level = min(weight_of(exps) for exps, _ in offenders)
        batch = [(e, c) for e, c in offenders if weight_of(e) == level]

        a, c, b = _block_coefficients(current, pair)
        det = 4 * a * b - c * c
        if det == 0 and (a or b):
            raise RationalObstructionError("pair block degenerated during splitting")
        if not (a or b) and not c:
            raise PreconditionError("pair block vanished during splitting")

        bucket1 = Polynomial.zero(variables)  # offenders / x1
        bucket2 = Polynomial.zero(variables)  # remaining offenders / x2
        for exps, coeff in batch:
            if exps[i1]:
                down = list(exps)
                down[i1] -= 1
                bucket1 = bucket1 + Polynomial(variables, {tuple(down): coeff})
            else:
                down = list(exps)
                down[i2] -= 1
                bucket2 = bucket2 + Polynomial(variables, {tuple(down): coeff})

        # solve  [2a c; c 2b] [h1, h2] = [bucket1, bucket2]
        if a or b:
            h1 = (bucket1 * (2 * b) - bucket2 * c) / det
            h2 = (bucket2 * (2 * a) - bucket1 * c) / det
        else:
            h1 = bucket2 / c
            h2 = bucket1 / c
        images = {}
        if not h1.is_zero:
            images[x1] = Polynomial.variable(x1, variables) - h1
        if not h2.is_zero:
            images[x2] = Polynomial.variable(x2, variables) - h2
        step = JetSubstitution.from_images(variables, images, order)
        current = step.apply(current, order)
        total = total.then(step)
    else:
        raise AssertionError("pair splitting did not terminate")
    return current, total


def _absorb_pair_diagonal(
    f: Polynomial, pair: tuple[str, str], order: int
) -> tuple[Polynomial, JetSubstitution]:
    """Make the pair block purely hyperbolic (only x1*x2), over the rationals.

    Possible exactly when the binary quadratic a*x1^2 + c*x1*x2 + b*x2^2 is
    rationally isotropic (c^2 - 4ab a rational square); otherwise the germ is
    complex-equivalent but not rationally equivalent to the split shape.
    """
    variables = f.variables
    x1, x2 = pair
    total = JetSubstitution.identity(variables, order)
    a, c, b = _block_coefficients(f, pair)
    if not a and not b:
        return f, total
    disc = c * c - 4 * a * b
    root = _fraction_sqrt(disc)
    if root is None:
        raise RationalObstructionError(
            f"quadratic block {a}*{x1}^2 + {c}*{x1}*{x2} + {b}*{x2}^2 "
            "is not rationally hyperbolic (discriminant is not a square)"
        )
    if a:
        # kill the x1^2 term with x2 -> x2 + s*x1, then fall through
        if b:
            s = (-c + root) / (2 * b)
            if b * s * s + c * s + a != 0:
                s = (-c - root) / (2 * b)
        else:
            s = -a / c
        step = JetSubstitution.from_images(
            variables,
            {x2: Polynomial.variable(x2, variables) + Polynomial.variable(x1, variables) * s},
            order,
        )
        f = step.apply(f, order)
        total = total.then(step)
        a, c, b = _block_coefficients(f, pair)
    if b:
        if not c:
            raise RationalObstructionError("pair block degenerated while absorbing squares")
        s = -b / c
        step = JetSubstitution.from_images(
            variables,
            {x1: Polynomial.variable(x1, variables) + Polynomial.variable(x2, variables) * s},
            order,
        )
        f = step.apply(f, order)
        total = total.then(step)
    return f, total


def split_quadratic(
    f: Polynomial, w: WeightVector, pair: tuple[str, str]
) -> MarkedNormalForm:
    """Right equivalence leaving x1*x2 as the only monomial in the pair ideal.

    Preconditions: the coefficient of x1*x2 is nonzero and wt(x1*x2) equals
    wt(f).  When equal pair weights allow diagonal quadratic terms, those are
    absorbed rationally when the block is isotropic over the rationals, and a
    RationalObstructionError is raised otherwise.
    """
    x1, x2 = pair
    cross = Polynomial.variable(x1, f.variables) * Polynomial.variable(x2, f.variables)
    if not f.coefficient_of(cross):
        raise PreconditionError(f"coefficient of {x1}*{x2} is zero")
    if cross.weight(w) != f.weight(w):
        raise PreconditionError(
            f"wt({x1}*{x2}) = {cross.weight(w)} differs from wt(f) = {f.weight(w)}"
        )
    order = milnor_data(f).milnor_number + 1
    start = f.truncated(order)
    prepared, absorb = _absorb_pair_diagonal(start, pair, order)
    result, witness = _run_pair_split(prepared, w, pair, order, hyperbolic_only=True)
    return _checked(f, result, absorb.then(witness), w, order)


# ---------------------------------------------------------------------------
# rational congruence and multi-variable splitting (trivial weights)
# ---------------------------------------------------------------------------


def _quadratic_matrix(f: Polynomial) -> list[list[Fraction]]:
    n = len(f.variables)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for exps, coeff in f.degree_part(2).terms.items():
        idx = [i for i, e in enumerate(exps) if e]
        if len(idx) == 1:
            matrix[idx[0]][idx[0]] = coeff
        else:
            i, j = idx
            matrix[i][j] = coeff / 2
            matrix[j][i] = coeff / 2
    return matrix


def congruence_diagonalize(f: Polynomial, order: int) -> tuple[Polynomial, JetSubstitution]:
    """Linear change making the quadratic part diagonal, rank entries first.

    Classic symmetric Gaussian congruence over the rationals; the returned
    substitution is linear, hence weight-respecting for uniform weights.
    """
    variables = f.variables
    n = len(variables)
    current = f.truncated(order)
    total = JetSubstitution.identity(variables, order)

    def apply(images: dict[str, Polynomial]):
        nonlocal current, total
        step = JetSubstitution.from_images(variables, images, order)
        current = step.apply(current, order)
        total = total.then(step)

    for k in range(n):
        matrix = _quadratic_matrix(current)
        if not matrix[k][k]:
            pivot = next((j for j in range(k + 1, n) if matrix[j][j]), None)
            if pivot is not None:
                vk, vp = variables[k], variables[pivot]
                apply(
                    {
                        vk: Polynomial.variable(vp, variables),
                        vp: Polynomial.variable(vk, variables),
                    }
                )
                matrix = _quadratic_matrix(current)
            else:
                j = next((j for j in range(k + 1, n) if matrix[k][j]), None)
                if j is None:
                    continue
                # replacing v_j by v_j + v_k turns the cross term into a square on v_k
                vk, vj = variables[k], variables[j]
                apply(
                    {
                        vj: Polynomial.variable(vj, variables)
                        + Polynomial.variable(vk, variables)
                    }
                )
                matrix = _quadratic_matrix(current)
        if not matrix[k][k]:
            continue
        shear = Polynomial.zero(variables)
        for j in range(n):
            if j != k and matrix[k][j]:
                shear = shear + Polynomial.variable(variables[j], variables) * (
                    matrix[k][j] / matrix[k][k]
                )
        if not shear.is_zero:
            vk = variables[k]
            apply({vk: Polynomial.variable(vk, variables) - shear})

    # move the nonzero squares to the front variable slots
    matrix = _quadratic_matrix(current)
    nonzero = [i for i in range(n) if matrix[i][i]]
    zero = [i for i in range(n) if not matrix[i][i]]
    desired = nonzero + zero
    if desired != list(range(n)):
        images = {
            variables[src]: Polynomial.variable(variables[pos], variables)
            for pos, src in zip(range(n), desired)
        }
        apply(images)
    return current, total


def _run_diagonal_split(
    f: Polynomial, split_vars: tuple[str, ...], order: int
) -> tuple[Polynomial, JetSubstitution]:
    """Empty the split-variable ideal down to the diagonal squares.

    Requires a fully diagonal quadratic part with nonzero squares on every
    split variable (guaranteed after :func:`congruence_diagonalize`).  Each
    degree level is cleared by one simultaneous shear u_i -> u_i - h_i with
    h_i = (offenders divisible by u_i) / (2 lambda_i); new terms always land
    at strictly higher degree, so the sweep terminates.
    """
    variables = f.variables
    indices = [variables.index(v) for v in split_vars]
    squares = {
        tuple(2 if i == idx else 0 for i in range(len(variables))): idx for idx in indices
    }
    current = f.truncated(order)
    total = JetSubstitution.identity(variables, order)

    for _ in range(_ENGINE_CAP):
        offenders = []
        for exps, coeff in current.terms.items():
            if exps in squares:
                continue
            if any(exps[idx] for idx in indices):
                offenders.append((exps, coeff))
        if not offenders:
            break
        level = min(sum(e) for e, _ in offenders)
        lam = {
            idx: current.terms.get(sq, Fraction(0))
            for sq, idx in ((s, i) for s, i in squares.items())
        }
        if any(not lam[idx] for idx in indices):
            raise PreconditionError("a split square vanished during splitting")
        buckets: dict[int, dict] = {idx: {} for idx in indices}
        for exps, coeff in offenders:
            if sum(exps) != level:
                continue
            idx = next(i for i in indices if exps[i])
            down = list(exps)
            down[idx] -= 1
            key = tuple(down)
            buckets[idx][key] = buckets[idx].get(key, Fraction(0)) + coeff
        images = {}
        for idx in indices:
            if buckets[idx]:
                h = Polynomial(variables, buckets[idx]) / (2 * lam[idx])
                name = variables[idx]
                images[name] = Polynomial.variable(name, variables) - h
        step = JetSubstitution.from_images(variables, images, order)
        current = step.apply(current, order)
        total = total.then(step)
    else:
        raise AssertionError("diagonal splitting did not terminate")
    return current, total


def split_off(
    f: Polynomial, count: int, order: int
) -> tuple[Polynomial, JetSubstitution, tuple[str, ...]]:
    """Split the first ``count`` variables off a germ under trivial weights.

    After a rational congruence the quadratic part is diagonal with its rank
    on the leading variables; the split then removes every monomial in the
    ideal of the first ``count`` variables except their squares.  Returns the
    reduced germ, the witness, and the names of the split variables.
    """
    if quadratic_rank(f) < count:
        raise PreconditionError(
            f"quadratic rank {quadratic_rank(f)} is below the requested split size {count}"
        )
    diag, congruence = congruence_diagonalize(f, order)
    variables = f.variables
    split_vars = variables[:count]
    current, step = _run_diagonal_split(diag, split_vars, order)
    total = congruence.then(step)
    return current, total, split_vars


# ---------------------------------------------------------------------------
# weighted normal form (the tangent-space elimination loop)
# ---------------------------------------------------------------------------


def _monomials_of_weight(
    variables: tuple[str, ...], w: WeightVector, target: int, max_degree: int
) -> list[tuple[int, ...]]:
    weights = [w[v] for v in variables]
    out: list[tuple[int, ...]] = []

    def rec(pos: int, remaining: int, degree_budget: int, prefix: list[int]):
        if pos == len(weights):
            if remaining == 0:
                out.append(tuple(prefix))
            return
        if pos == len(weights) - 1:
            q, r = divmod(remaining, weights[pos])
            if r == 0 and q <= degree_budget:
                out.append(tuple(prefix + [q]))
            return
        step = weights[pos]
        for e in range(min(remaining // step, degree_budget) + 1):
            rec(pos + 1, remaining - e * step, degree_budget - e, prefix + [e])

    rec(0, target, max_degree, [])
    return out


def weighted_normal_form(f: Polynomial, w: WeightVector) -> MarkedNormalForm:
    """Kill every monomial of weight above wt(f) outside a Milnor spanning set.

    With f0 the least-weight part and S the greedy monomial basis of the
    Milnor algebra of f0, each weight level above wt(f0) is cleared by one
    tangent-space shear x_i -> x_i - h_i, the h_i read off from an exact
    row reduction of the offending part against the level slice of the
    Jacobian ideal of f0.  Levels only ever get polluted upwards, so the loop
    sweeps each level once.
    """
    if f.is_zero or f.constant_term():
        raise HypersurfaceGermError("reduction requires a germ vanishing at the origin")
    if not w.covers(v for v in f.variables if f.involves(v)):
        raise PreconditionError("weights do not cover the variables of f")
    mu = milnor_data(f).milnor_number
    order = mu + 1
    current = f.truncated(order)
    variables = current.variables
    d = current.weight(w)
    f0 = current.least_weight_part(w)
    if f0 != f.least_weight_part(w):
        raise PreconditionError(
            "least-weight part has terms above the determinacy order; "
            "increase the jet model before reducing"
        )
    try:
        data0 = milnor_data(f0)
    except NonIsolatedError as exc:
        raise NonIsolatedError(f"least-weight part is not isolated: {exc}") from exc
    if data0.milnor_number != mu:
        raise NonIsolatedError(
            "Milnor number of the least-weight part differs from the germ; "
            "the weight filtration is not semi-quasihomogeneous"
        )
    basis_exponents = {tuple(next(iter(b.terms))) for b in data0.basis}
    generators = [(v, f0.partial(v).without_jet()) for v in variables]
    generators = [(v, g) for v, g in generators if not g.is_zero]

    weights_tuple = [w[v] for v in variables]

    def weight_of(exps) -> int:
        return sum(wi * e for wi, e in zip(weights_tuple, exps))

    total = JetSubstitution.identity(variables, order)
    for _ in range(_ENGINE_CAP):
        offending: dict[int, dict] = {}
        for exps, coeff in current.terms.items():
            wt = weight_of(exps)
            if wt > d and exps not in basis_exponents:
                offending.setdefault(wt, {})[exps] = coeff
        if not offending:
            break
        level = min(offending)
        target = offending[level]

        echelon = Echelon(track=True)
        for v, gen in generators:
            needed = level - d + w[v]
            if needed < 0:
                continue
            for q in _monomials_of_weight(variables, w, needed, order - int(gen.multiplicity())):
                row = {}
                for gexp, gcoeff in gen.terms.items():
                    key = tuple(a + b for a, b in zip(gexp, q))
                    if sum(key) <= order:
                        row[key] = gcoeff
                if row:
                    echelon.insert(row, {(v, q): Fraction(1)})
        remainder, used = echelon.reduce(dict(target))
        if any(exps not in basis_exponents for exps in remainder):
            raise AssertionError(
                "level reduction left a remainder outside the Milnor spanning set"
            )
        shears: dict[str, Polynomial] = {}
        for (v, q), coeff in used.items():
            shears.setdefault(v, Polynomial.zero(variables))
            shears[v] = shears[v] + Polynomial(variables, {q: coeff})
        images = {}
        for v, h in shears.items():
            if h.is_zero:
                continue
            if h.weight(w) <= w[v]:
                raise AssertionError("shear is not strictly weight-increasing")
            images[v] = Polynomial.variable(v, variables) - h
        if not images:
            raise AssertionError("no progress at weight level %d" % level)
        step = JetSubstitution.from_images(variables, images, order)
        current = step.apply(current, order)
        total = total.then(step)
    else:
        raise AssertionError("normal-form loop did not terminate")
    return _checked(f, current, total, w, order)


# ---------------------------------------------------------------------------
# simple (ADE) shapes and reduction to them
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleShape:
    tag: str                      # "A", "D", "E6", "E7", "E8"
    index: int                    # k for A_k / D_k, 6/7/8 for E
    core_vars: tuple[str, ...]
    quad_vars: tuple[str, ...]


def _match_core(core: Polynomial, core_vars: tuple[str, ...]) -> tuple[str, int] | None:
    """Match the degree->=3 content against the marked A/D/E core supports."""
    support = []
    for exps, _ in core.terms.items():
        reduced = tuple(
            e for v, e in zip(core.variables, exps) if v in core_vars
        )
        if sum(e for v, e in zip(core.variables, exps) if v not in core_vars):
            return None
        support.append(reduced)
    support.sort()
    if len(core_vars) == 1:
        if len(support) == 1 and support[0][0] >= 3:
            return ("A", support[0][0] - 1)
        return None
    if len(core_vars) == 2:
        pairs = {tuple(s) for s in support}
        for u, v in ((0, 1), (1, 0)):
            def key(eu, ev):
                exps = [0, 0]
                exps[u], exps[v] = eu, ev
                return tuple(exps)

            if pairs == {key(1, 2), key(3, 0)}:
                return ("D", 4)
            for k in range(5, 40):
                if pairs == {key(1, 2), key(k - 1, 0)}:
                    return ("D", k)
            if pairs == {key(3, 0), key(0, 4)}:
                return ("E6", 6)
            if pairs == {key(3, 0), key(1, 3)}:
                return ("E7", 7)
            if pairs == {key(3, 0), key(0, 5)}:
                return ("E8", 8)
        return None
    return None


def match_simple_shape(f0: Polynomial) -> SimpleShape | None:
    """Recognize marked simple support: nondegenerate quadratic block on some
    variables plus an A/D/E core on the remaining one or two variables."""
    quad = f0.degree_part(2)
    core = f0 - quad
    quad_vars = tuple(v for v in f0.variables if quad.involves(v))
    core_vars = tuple(v for v in f0.variables if core.involves(v))
    if set(quad_vars) & set(core_vars):
        return None
    if quadratic_rank(quad) != len(quad_vars):
        return None
    if core.is_zero:
        if not quad_vars:
            return None
        return SimpleShape("A", 1, (), quad_vars)
    if len(core_vars) > 2:
        return None
    matched = _match_core(core, core_vars)
    if matched is None:
        return None
    tag, index = matched
    if tag == "A":
        return SimpleShape("A", index, core_vars, quad_vars)
    return SimpleShape(tag, index, core_vars, quad_vars)


def reduce_to_simple(f: Polynomial, w: WeightVector) -> MarkedNormalForm:
    """Weight-respecting reduction onto the (marked) simple leading part.

    Generic route: the least-weight part is a marked simple form; its Milnor
    spanning set has no element of weight above wt(f0), so the weighted
    normal form equals f0 exactly.  A dedicated constructive route handles
    the weight-(4,3,2,1) germs whose least-weight part is not isolated but
    which reduce onto the x^2 + y^2 + z^3 + x*t^2 shape.
    """
    f0 = f.least_weight_part(w)
    shape = match_simple_shape(f0)
    if shape is not None:
        nf = weighted_normal_form(f, w)
        if nf.polynomial != f0:
            raise NotSimpleError(
                "reduction left monomials beyond the simple leading part"
            )
        return nf
    values = tuple(w[v] for v in f.variables)
    if len(f.variables) == 4 and values == (4, 3, 2, 1):
        return _reduce_weighted_e6(f, w)
    raise NotSimpleError(f"least-weight part {f0} is not a marked simple form")


# ---------------------------------------------------------------------------
# the (4,3,2,1) route onto x^2 + y^2 + z^3 + x*t^2
# ---------------------------------------------------------------------------


def _reduce_weighted_e6(f: Polynomial, w: WeightVector) -> MarkedNormalForm:
    """Constructive reduction of a weight-6 germ onto the marked
    a*x^2 + b*y^2 + beta*z^3 + delta*x*t^2 shape under weights (4,3,2,1).

    Follows the shape of the corresponding equivalence proof: normalize the
    quadratic part to a*x^2 + b*y^2, strip the ideal (x, y) down to the
    allowed x-cross of weight 2 and 3, reduce g - p^2/(4a) in (z, t) under
    weights (4, 3), and absorb the leftover cross with one final x-shear.
    Every step is weight-respecting for (4,3,2,1).
    """
    X, Y, Z, T = f.variables
    if f.weight(w) != 6:
        raise NotSimpleError(f"weight {f.weight(w)} != 6 under (4,3,2,1)")
    mu = milnor_data(f).milnor_number
    order = max(mu + 1, 7)
    current = f.truncated(order)
    variables = current.variables
    total = JetSubstitution.identity(variables, order)

    def var(name: str) -> Polynomial:
        return Polynomial.variable(name, variables)

    def apply(images: dict[str, Polynomial]):
        nonlocal current, total
        step = JetSubstitution.from_images(variables, images, order)
        current = step.apply(current, order)
        total = total.then(step)

    # phase A: quadratic part -> a*x^2 + b*y^2
    quad = current.degree_part(2)
    if quad.coefficient_of(var(X) * var(Z)):
        raise NotSimpleError("x*z cross term present: germ is not of the expected type")
    b = quad.coefficient_of(var(Y) ** 2)
    if not b:
        raise NotSimpleError("y^2 coefficient vanishes: germ is not of the expected type")
    c_xy = quad.coefficient_of(var(X) * var(Y))
    if c_xy:
        apply({Y: var(Y) - var(X) * (c_xy / (2 * b))})
    quad = current.degree_part(2)
    a = quad.coefficient_of(var(X) ** 2)
    if not a:
        raise NotSimpleError("x^2 coefficient vanishes: quadratic rank is not 2")

    # phase B: empty the ideal (x, y) except y^2, x^2 and the x-cross of
    # weight 2 and 3; shears go into the variable carrying the square.
    iX, iY, iZ, iT = (variables.index(v) for v in (X, Y, Z, T))

    def weight_of(exps) -> int:
        return 4 * exps[iX] + 3 * exps[iY] + 2 * exps[iZ] + exps[iT]

    def next_offender():
        best = None
        for exps, coeff in current.terms.items():
            dx, dy = exps[iX], exps[iY]
            if dx + dy == 0:
                continue
            if dx == 2 and dy == 0 and sum(exps) == 2:
                continue
            if dy == 2 and dx == 0 and sum(exps) == 2:
                continue
            rest_weight = 2 * exps[iZ] + exps[iT]
            if dx == 1 and dy == 0 and rest_weight in (2, 3) and sum(exps) == 1 + exps[iZ] + exps[iT]:
                continue
            key = (weight_of(exps), dx + dy, exps)
            if best is None or key < best[0]:
                best = (key, exps, coeff)
        return best

    for _ in range(_ENGINE_CAP):
        found = next_offender()
        if found is None:
            break
        _, exps, coeff = found
        if exps[iY]:
            down = list(exps)
            down[iY] -= 1
            h = Polynomial(variables, {tuple(down): coeff / (2 * b)})
            apply({Y: var(Y) - h})
        else:
            down = list(exps)
            down[iX] -= 1
            h = Polynomial(variables, {tuple(down): coeff / (2 * a)})
            apply({X: var(X) - h})
    else:
        raise AssertionError("(x, y)-ideal stripping did not terminate")

    # phase C: extract p and g; recurse on g - p^2/(4a) in (z, t)
    p = Polynomial.zero(variables)
    g = Polynomial.zero(variables)
    for exps, coeff in current.terms.items():
        if exps[iX] == 1 and exps[iY] == 0 and sum(exps) == 1 + exps[iZ] + exps[iT]:
            down = list(exps)
            down[iX] -= 1
            p = p + Polynomial(variables, {tuple(down): coeff})
        elif exps[iX] == 0 and exps[iY] == 0:
            g = g + Polynomial(variables, {exps: coeff})
    delta = p.coefficient_of(var(T) ** 2)
    if not delta:
        raise NotSimpleError("t^2 coefficient of the cross term vanishes")
    if p.coefficient_of(var(Z)):
        raise NotSimpleError("x*z cross term reappeared: germ is not of the expected type")

    resolved = (g - p * p * Fraction(1, 4) / a).without_jet()
    g2 = resolved.with_variables((Z, T))
    inner = reduce_to_simple(g2, WeightVector({Z: 4, T: 3}))
    phi = inner.witness
    ext_images = {
        Z: phi.components[Z].with_variables(variables),
        T: phi.components[T].with_variables(variables),
    }
    apply(ext_images)

    # phase D: the residual cross R has weight >= 4; absorb it into x^2
    p_new = Polynomial.zero(variables)
    for exps, coeff in current.terms.items():
        if exps[iX] == 1 and exps[iY] == 0 and sum(exps) == 1 + exps[iZ] + exps[iT]:
            down = list(exps)
            down[iX] -= 1
            p_new = p_new + Polynomial(variables, {tuple(down): coeff})
    residual_cross = p_new - var(T) ** 2 * delta
    if not residual_cross.is_zero:
        if residual_cross.weight(w) < 4:
            raise AssertionError("residual cross term too light to absorb")
        apply({X: var(X) - residual_cross / (2 * a)})

    expected_support = {
        tuple(2 if i == iX else 0 for i in range(4)),
        tuple(2 if i == iY else 0 for i in range(4)),
        tuple(3 if i == iZ else 0 for i in range(4)),
        tuple(1 if i == iX else (2 if i == iT else 0) for i in range(4)),
    }
    if set(current.terms) != expected_support:
        raise AssertionError(
            f"weighted reduction did not reach the expected support: {current}"
        )
    return _checked(f, current, total, w, order)

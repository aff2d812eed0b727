"""Sparse exact polynomial arithmetic with named variables and integer weights.

Coefficients are rationals (``fractions.Fraction``); a term is an exponent
tuple aligned with an ordered variable list.  A polynomial may carry a *jet
order* N, meaning it is trusted only modulo terms of total degree > N.  All
arithmetic propagates the tightest jet order of its inputs and truncates
accordingly, so jet polynomials model analytic germs up to finite determinacy.

Term iteration is deterministic: terms are kept sorted in ascending graded
lexicographic order of the exponent tuple.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    ArityMismatchError,
    ConstantTermError,
    ExactDivisionError,
    MissingWeightError,
)

Exponent = tuple[int, ...]
Coefficient = int | Fraction


def grlex_key(exponents: Exponent) -> tuple[int, Exponent]:
    """Graded-lexicographic sort key (total degree first, then lex)."""
    return (sum(exponents), exponents)


class WeightVector:
    """Positive integer weights for named variables."""

    __slots__ = ("_weights",)

    def __init__(self, weights: Mapping[str, int]):
        table: dict[str, int] = {}
        for name, value in weights.items():
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"weight of {name!r} must be a positive integer, got {value!r}")
            table[str(name)] = value
        self._weights = table

    @classmethod
    def for_variables(cls, variables: Sequence[str], values: Iterable[int]) -> "WeightVector":
        values = tuple(values)
        if len(values) != len(variables):
            raise ArityMismatchError(
                f"{len(values)} weights given for {len(variables)} variables"
            )
        return cls(dict(zip(variables, values)))

    def __getitem__(self, name: str) -> int:
        try:
            return self._weights[name]
        except KeyError:
            raise MissingWeightError(f"no weight assigned to variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._weights

    def get(self, name: str, default: int | None = None) -> int | None:
        return self._weights.get(name, default)

    def covers(self, variables: Iterable[str]) -> bool:
        return all(v in self._weights for v in variables)

    def items(self) -> Iterator[tuple[str, int]]:
        return iter(self._weights.items())

    def variables(self) -> tuple[str, ...]:
        return tuple(self._weights)

    def values_for(self, variables: Sequence[str]) -> tuple[int, ...]:
        return tuple(self[v] for v in variables)

    def restricted(self, variables: Sequence[str]) -> "WeightVector":
        return WeightVector({v: self[v] for v in variables})

    def max_weight(self) -> int:
        return max(self._weights.values())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeightVector) and self._weights == other._weights

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}: {v}" for k, v in self._weights.items())
        return f"WeightVector({{{inner}}})"


def _merge_variables(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    if a == b:
        return a
    merged = list(a)
    for name in b:
        if name not in merged:
            merged.append(name)
    return tuple(merged)


def _combine_jets(*jets: int | None) -> int | None:
    present = [j for j in jets if j is not None]
    return min(present) if present else None


class Polynomial:
    """Immutable sparse polynomial over the rationals.

    ``terms`` maps exponent tuples (aligned with ``variables``) to nonzero
    Fraction coefficients.  ``jet_order`` is either None (exact polynomial) or
    a positive integer N; construction drops any term of total degree > N.
    """

    __slots__ = ("variables", "terms", "jet_order")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Mapping[Exponent, Coefficient] | None = None,
        jet_order: int | None = None,
    ):
        variables = tuple(variables)
        if jet_order is not None and jet_order < 1:
            raise ValueError(f"jet_order must be positive, got {jet_order}")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            arity = len(variables)
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != arity:
                    raise ArityMismatchError(
                        f"exponent {exps} has arity {len(exps)}, expected {arity}"
                    )
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                if jet_order is not None and sum(exps) > jet_order:
                    continue
                value = Fraction(coeff)
                if value:
                    clean[exps] = clean.get(exps, Fraction(0)) + value
                    if not clean[exps]:
                        del clean[exps]
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda kv: grlex_key(kv[0]))))
        object.__setattr__(self, "jet_order", jet_order)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str], jet_order: int | None = None) -> "Polynomial":
        return cls(variables, {}, jet_order)

    @classmethod
    def constant(cls, variables: Sequence[str], value: Coefficient) -> "Polynomial":
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> "Polynomial":
        variables = tuple(variables)
        if name not in variables:
            raise ArityMismatchError(f"{name!r} not among variables {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def monomial(
        cls, variables: Sequence[str], exponents: Exponent, coefficient: Coefficient = 1
    ) -> "Polynomial":
        return cls(variables, {tuple(exponents): coefficient})

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def coefficient(self, exponents: Exponent) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def coefficient_of(self, monomial: "Polynomial") -> Fraction:
        """Coefficient of a single-term monomial, aligning variables."""
        if len(monomial.terms) != 1:
            raise ValueError("coefficient_of expects a single-term monomial")
        a, b = self.aligned(monomial)
        (exps,) = b.terms
        return a.terms.get(exps, Fraction(0))

    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def multiplicity(self) -> int | float:
        """Minimal total degree of a stored term; infinity for 0."""
        return min((sum(e) for e in self.terms), default=inf)

    def involves(self, name: str) -> bool:
        if name not in self.variables:
            return False
        i = self.variables.index(name)
        return any(e[i] for e in self.terms)

    def support(self) -> list[Exponent]:
        return list(self.terms)

    def monomials(self) -> list["Polynomial"]:
        return [Polynomial(self.variables, {e: 1}) for e in self.terms]

    # -- variable bookkeeping ----------------------------------------------

    def with_variables(self, variables: Sequence[str]) -> "Polynomial":
        """Re-express over a variable list that contains all involved variables."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        index = {}
        for pos, name in enumerate(self.variables):
            if name not in variables:
                if any(e[pos] for e in self.terms):
                    raise ArityMismatchError(f"cannot drop variable {name!r} still in use")
                index[pos] = None
            else:
                index[pos] = variables.index(name)
        terms: dict[Exponent, Fraction] = {}
        for exps, coeff in self.terms.items():
            new = [0] * len(variables)
            for pos, e in enumerate(exps):
                if e:
                    new[index[pos]] = e
            terms[tuple(new)] = coeff
        return Polynomial(variables, terms, self.jet_order)

    def aligned(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if self.variables == other.variables:
            return self, other
        merged = _merge_variables(self.variables, other.variables)
        return self.with_variables(merged), other.with_variables(merged)

    def renamed(self, mapping: Mapping[str, str]) -> "Polynomial":
        """Rename variables (a bijection on the names involved)."""
        new_vars = tuple(mapping.get(v, v) for v in self.variables)
        if len(set(new_vars)) != len(new_vars):
            raise ArityMismatchError(f"renaming {mapping} collapses variables")
        return Polynomial(new_vars, dict(self.terms), self.jet_order)

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.aligned(other)
        return a.terms == b.terms

    def __hash__(self) -> int:
        involved = tuple(
            (tuple((v, e) for v, e in zip(self.variables, exps) if e), coeff)
            for exps, coeff in self.terms.items()
        )
        return hash(frozenset(involved))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()}, self.jet_order)

    def __add__(self, other: "Polynomial | Coefficient") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.variables, other)
        a, b = self.aligned(other)
        terms = dict(a.terms)
        for exps, coeff in b.terms.items():
            total = terms.get(exps, Fraction(0)) + coeff
            if total:
                terms[exps] = total
            else:
                terms.pop(exps, None)
        return Polynomial(a.variables, terms, _combine_jets(self.jet_order, other.jet_order))

    __radd__ = __add__

    def __sub__(self, other: "Polynomial | Coefficient") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.variables, other)
        return self + (-other)

    def __rsub__(self, other: Coefficient) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: "Polynomial | Coefficient") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            value = Fraction(other)
            if not value:
                return Polynomial.zero(self.variables, self.jet_order)
            return Polynomial(
                self.variables, {e: c * value for e, c in self.terms.items()}, self.jet_order
            )
        a, b = self.aligned(other)
        jet = _combine_jets(self.jet_order, other.jet_order)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in a.terms.items():
            d1 = sum(e1)
            for e2, c2 in b.terms.items():
                if jet is not None and d1 + sum(e2) > jet:
                    continue
                key = tuple(x + y for x, y in zip(e1, e2))
                total = terms.get(key, Fraction(0)) + c1 * c2
                if total:
                    terms[key] = total
                else:
                    del terms[key]
        return Polynomial(a.variables, terms, jet)

    __rmul__ = __mul__

    def __truediv__(self, other: Coefficient) -> "Polynomial":
        value = Fraction(other)
        if not value:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return self * (Fraction(1) / value)

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.constant(self.variables, 1)
        if self.jet_order is not None:
            result = Polynomial(self.variables, result.terms, self.jet_order)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- jets ----------------------------------------------------------------

    def truncated(self, order: int) -> "Polynomial":
        """Drop terms of total degree > order and mark the result as an order-jet."""
        jet = _combine_jets(self.jet_order, order)
        return Polynomial(self.variables, dict(self.terms), jet)

    def without_jet(self) -> "Polynomial":
        return Polynomial(self.variables, dict(self.terms))

    def degree_part(self, degree: int) -> "Polynomial":
        terms = {e: c for e, c in self.terms.items() if sum(e) == degree}
        return Polynomial(self.variables, terms, self.jet_order)

    def parts_by_degree(self) -> dict[int, "Polynomial"]:
        out: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {
            d: Polynomial(self.variables, terms, self.jet_order) for d, terms in sorted(out.items())
        }

    # -- weights -------------------------------------------------------------

    def _weight_tuple(self, w: WeightVector) -> tuple[int, ...]:
        return tuple(w[v] if self.involves(v) else w.get(v, 1) for v in self.variables)

    def weight(self, w: WeightVector) -> int | float:
        """Minimal weighted degree of a stored term; infinity for 0."""
        if self.is_zero:
            return inf
        wt = self._weight_tuple(w)
        return min(sum(wi * ei for wi, ei in zip(wt, e)) for e in self.terms)

    def quasihomogeneous_part(self, w: WeightVector, d: int) -> "Polynomial":
        wt = self._weight_tuple(w)
        terms = {
            e: c for e, c in self.terms.items() if sum(wi * ei for wi, ei in zip(wt, e)) == d
        }
        return Polynomial(self.variables, terms, self.jet_order)

    def least_weight_part(self, w: WeightVector) -> "Polynomial":
        """The quasihomogeneous part of minimal weight (0 for the zero polynomial)."""
        d = self.weight(w)
        if d is inf:
            return self
        return self.quasihomogeneous_part(w, int(d))

    def parts_by_weight(self, w: WeightVector) -> dict[int, "Polynomial"]:
        wt = self._weight_tuple(w)
        out: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            out.setdefault(sum(wi * ei for wi, ei in zip(wt, e)), {})[e] = c
        return {
            d: Polynomial(self.variables, terms, self.jet_order) for d, terms in sorted(out.items())
        }

    # -- calculus ------------------------------------------------------------

    def partial(self, name: str) -> "Polynomial":
        if name not in self.variables:
            return Polynomial.zero(self.variables, self.jet_order)
        i = self.variables.index(name)
        terms: dict[Exponent, Fraction] = {}
        for exps, coeff in self.terms.items():
            if exps[i]:
                new = list(exps)
                new[i] -= 1
                terms[tuple(new)] = coeff * exps[i]
        # differentiating a jet of order N yields a jet of order N - 1
        jet = None if self.jet_order is None else max(self.jet_order - 1, 1)
        return Polynomial(self.variables, terms, jet)

    def quadratic_part(self) -> "Polynomial":
        return self.degree_part(2)

    # -- division ------------------------------------------------------------

    def exact_div_power(self, name: str, power: int) -> "Polynomial":
        """Divide by ``name**power``; error if any term is not divisible."""
        if power == 0:
            return self
        if name not in self.variables:
            if self.is_zero:
                return self
            raise ExactDivisionError(f"{name!r} does not divide all terms")
        i = self.variables.index(name)
        terms: dict[Exponent, Fraction] = {}
        for exps, coeff in self.terms.items():
            if exps[i] < power:
                raise ExactDivisionError(
                    f"term with exponent {exps} not divisible by {name}^{power}"
                )
            new = list(exps)
            new[i] -= power
            terms[tuple(new)] = coeff
        return Polynomial(self.variables, terms, self.jet_order)

    # -- display -------------------------------------------------------------

    def __repr__(self) -> str:
        return format_polynomial(self)


# -- module-level operation surface ---------------------------------------


def multiplicity(f: Polynomial) -> int | float:
    return f.multiplicity()


def weight(f: Polynomial, w: WeightVector) -> int | float:
    return f.weight(w)


def quasihomogeneous_part(f: Polynomial, w: WeightVector, d: int) -> Polynomial:
    return f.quasihomogeneous_part(w, d)


def jacobian_generators(f: Polynomial) -> list[Polynomial]:
    """Partial derivatives of f, one per variable, in variable order."""
    return [f.partial(v) for v in f.variables]


def quadratic_rank(f: Polynomial) -> int:
    """Rank over the rationals of the symmetric matrix of the quadratic part.

    Rank over the rationals equals rank over the complex numbers, so this
    matches the complex-analytic quadratic rank.
    """
    n = len(f.variables)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for exps, coeff in f.quadratic_part().terms.items():
        positions = [i for i, e in enumerate(exps) if e]
        if len(positions) == 1:
            i = positions[0]
            matrix[i][i] = coeff
        else:
            i, j = positions
            matrix[i][j] = coeff / 2
            matrix[j][i] = coeff / 2
    return _rank(matrix)


def _rank(matrix: list[list[Fraction]]) -> int:
    rows = [row[:] for row in matrix if any(row)]
    rank = 0
    col = 0
    width = len(matrix[0]) if matrix else 0
    while rows and col < width:
        pivot_row = next((r for r in rows if r[col]), None)
        if pivot_row is None:
            col += 1
            continue
        rows.remove(pivot_row)
        rank += 1
        for r in rows:
            if r[col]:
                factor = r[col] / pivot_row[col]
                for k in range(col, width):
                    r[k] -= factor * pivot_row[k]
        rows = [r for r in rows if any(r)]
        col += 1
    return rank


def substitute(
    f: Polynomial,
    images: Mapping[str, Polynomial],
    max_degree: int | None,
) -> Polynomial:
    """Replace each variable of f by its image, truncating at ``max_degree``.

    Every image must have zero constant term when a degree bound is in force
    (otherwise truncation would not commute with substitution).  Variables
    without images are kept as themselves.
    """
    result_vars = f.variables
    for name, image in images.items():
        result_vars = _merge_variables(result_vars, image.variables)
    jet = _combine_jets(f.jet_order, max_degree, *(g.jet_order for g in images.values()))

    aligned_images: dict[str, Polynomial] = {}
    for name in f.variables:
        if name in images:
            image = images[name].with_variables(result_vars)
            if jet is not None and image.constant_term():
                raise ConstantTermError(
                    f"substitution image of {name!r} has a nonzero constant term"
                )
            aligned_images[name] = image
        else:
            aligned_images[name] = Polynomial.variable(name, result_vars)

    one = Polynomial.constant(result_vars, 1)
    if jet is not None:
        one = one.truncated(jet)
    power_cache: dict[tuple[str, int], Polynomial] = {}

    def power(name: str, k: int) -> Polynomial:
        key = (name, k)
        if key not in power_cache:
            power_cache[key] = aligned_images[name] ** k if k else one
        return power_cache[key]

    total = Polynomial.zero(result_vars, jet)
    for exps, coeff in f.terms.items():
        term = one * coeff
        for name, e in zip(f.variables, exps):
            if e:
                term = term * power(name, e)
                if term.is_zero:
                    break
        total = total + term
    return total


# -- formatting (kept here so repr works without importing the parser) ------


def format_coefficient(value: Fraction) -> str:
    return str(value)


def format_polynomial(f: Polynomial, *, descending: bool = False) -> str:
    """Render as text accepted by :func:`germkit.parsing.parse_polynomial`."""
    if f.is_zero:
        return "0"
    items = sorted(f.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=descending)
    pieces: list[str] = []
    for exps, coeff in items:
        factors = []
        for name, e in zip(f.variables, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        magnitude = abs(coeff)
        if not factors:
            body = format_coefficient(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_coefficient(magnitude), *factors])
        sign = "-" if coeff < 0 else "+"
        pieces.append(f"{sign} {body}")
    text = " ".join(pieces)
    if text.startswith("+ "):
        return text[2:]
    if text.startswith("- "):
        return "-" + text[2:]
    return text

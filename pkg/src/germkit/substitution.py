"""Jet-level coordinate changes and the weight-respecting calculus.

A :class:`JetSubstitution` is a ring substitution: it sends a polynomial in
the *target* variables to one in the *source* variables by replacing each
target variable with its component polynomial.  For automorphisms the two
variable lists coincide.  Components have zero constant term (germ maps fix
the origin).

A substitution is *weight-respecting* for weight vectors (w_src, w_dst) when
every component has source-weight at least the target weight of its variable,
and symmetrically for the inverse.  Such maps lift to weighted blowups; that
is the load-bearing fact behind every witness this package emits, so the
check is machine-verified and never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    ArityMismatchError,
    ConstantTermError,
    SingularLinearPartError,
)
from .poly import Polynomial, WeightVector, substitute


class JetSubstitution:
    """Coordinate change tracked to a jet order, with an optional inverse."""

    __slots__ = ("source_vars", "target_vars", "components", "inverse_components", "jet_order")

    def __init__(
        self,
        components: Mapping[str, Polynomial],
        jet_order: int,
        source_vars: Sequence[str] | None = None,
        target_vars: Sequence[str] | None = None,
        inverse_components: Mapping[str, Polynomial] | None = None,
    ):
        if jet_order < 1:
            raise ValueError("jet_order must be positive")
        target_vars = tuple(target_vars) if target_vars is not None else tuple(components)
        if set(target_vars) != set(components):
            raise ArityMismatchError("components must cover exactly the target variables")
        if source_vars is None:
            source_vars = target_vars
        source_vars = tuple(source_vars)
        clean: dict[str, Polynomial] = {}
        for name in target_vars:
            image = components[name].with_variables(source_vars)
            if image.constant_term():
                raise ConstantTermError(f"component for {name!r} has a constant term")
            clean[name] = image.truncated(jet_order)
        self.source_vars = source_vars
        self.target_vars = target_vars
        self.components = clean
        self.jet_order = jet_order
        if inverse_components is not None:
            inverse_components = {
                name: image.with_variables(target_vars).truncated(jet_order)
                for name, image in inverse_components.items()
            }
        self.inverse_components = inverse_components

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, variables: Sequence[str], jet_order: int) -> "JetSubstitution":
        variables = tuple(variables)
        comps = {v: Polynomial.variable(v, variables) for v in variables}
        return cls(comps, jet_order, variables, variables, dict(comps))

    @classmethod
    def from_images(
        cls,
        variables: Sequence[str],
        images: Mapping[str, Polynomial],
        jet_order: int,
    ) -> "JetSubstitution":
        """Automorphism sending each listed variable to its image; unlisted
        variables are fixed."""
        variables = tuple(variables)
        comps = {
            v: images[v] if v in images else Polynomial.variable(v, variables)
            for v in variables
        }
        return cls(comps, jet_order, variables, variables)

    # -- basic operations -----------------------------------------------------

    def __call__(self, f: Polynomial, order: int | None = None) -> Polynomial:
        return self.apply(f, order)

    def apply(self, f: Polynomial, order: int | None = None) -> Polynomial:
        order = self.jet_order if order is None else min(order, self.jet_order)
        return substitute(f, self.components, order)

    def is_identity(self) -> bool:
        return all(
            self.components[v] == Polynomial.variable(v, self.source_vars)
            for v in self.target_vars
        )

    def linear_matrix(self) -> list[list[Fraction]]:
        """Rows indexed by target variables, columns by source variables."""
        rows = []
        for name in self.target_vars:
            image = self.components[name]
            row = []
            for src in self.source_vars:
                exps = tuple(1 if v == src else 0 for v in self.source_vars)
                row.append(image.terms.get(exps, Fraction(0)))
            rows.append(row)
        return rows

    # -- inversion -------------------------------------------------------------

    def inverted(self, order: int | None = None) -> "JetSubstitution":
        """The inverse substitution, computed (or reused) at the given jet order."""
        order = self.jet_order if order is None else order
        if self.inverse_components is not None and order <= self.jet_order:
            return JetSubstitution(
                self.inverse_components,
                order,
                self.target_vars,
                self.source_vars,
                self.components,
            )
        return invert_jet(self, order).inverted_view()

    def inverted_view(self) -> "JetSubstitution":
        if self.inverse_components is None:
            raise SingularLinearPartError("inverse has not been computed")
        return JetSubstitution(
            self.inverse_components,
            self.jet_order,
            self.target_vars,
            self.source_vars,
            self.components,
        )

    def with_inverse(self, order: int | None = None) -> "JetSubstitution":
        if self.inverse_components is not None:
            return self
        return invert_jet(self, order or self.jet_order)

    # -- composition ------------------------------------------------------------

    def then(self, nxt: "JetSubstitution") -> "JetSubstitution":
        """Sequential composition: (self.then(nxt))(f) == nxt(self(f)).

        As ring maps this is nxt ∘ self applied to each component of self.
        """
        if set(nxt.target_vars) != set(self.source_vars):
            raise ArityMismatchError("composition variable lists do not match")
        order = min(self.jet_order, nxt.jet_order)
        comps = {v: nxt.apply(self.components[v], order) for v in self.target_vars}
        inverse = None
        if self.inverse_components is not None and nxt.inverse_components is not None:
            inv_self = self.inverted_view()
            inverse = {
                v: inv_self.apply(nxt.inverse_components[v], order)
                for v in nxt.source_vars
            }
        return JetSubstitution(comps, order, nxt.source_vars, self.target_vars, inverse)

    def __repr__(self) -> str:
        body = ", ".join(f"{v} -> {self.components[v]}" for v in self.target_vars)
        return f"JetSubstitution({body}; jet {self.jet_order})"


def _merge(a: Sequence[str], b: Sequence[str]) -> tuple[str, ...]:
    merged = list(a)
    for name in b:
        if name not in merged:
            merged.append(name)
    return tuple(merged)


def compose(outer: JetSubstitution, inner: JetSubstitution) -> JetSubstitution:
    """Ring composition (outer ∘ inner)(f) = outer(inner(f))."""
    return inner.then(outer)


def substitute_jet(f: Polynomial, sigma: JetSubstitution, order: int) -> Polynomial:
    """f with each variable replaced by its image, truncated at total degree order."""
    if order < 1:
        raise ValueError("jet order must be positive")
    if order > sigma.jet_order:
        raise ArityMismatchError(
            f"requested order {order} exceeds substitution jet order {sigma.jet_order}"
        )
    missing = [v for v in f.variables if f.involves(v) and v not in sigma.components]
    if missing:
        raise ArityMismatchError(f"substitution does not cover variables {missing}")
    return substitute(f, sigma.components, order)


def _matrix_inverse(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise SingularLinearPartError("linear part is singular over the rationals")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def invert_jet(sigma: JetSubstitution, order: int) -> JetSubstitution:
    """Populate the inverse by fixed-point iteration on jets.

    Writing sigma = L + H with L linear and mult(H) >= 2, the inverse solves
    theta = L^{-1}(y - H(theta)); each pass gains at least one degree of
    accuracy, so ``order`` passes suffice.  Both compositions are verified to
    be the identity modulo degree > order.
    """
    if len(sigma.source_vars) != len(sigma.target_vars):
        raise ArityMismatchError("only equal-arity substitutions are invertible")
    n = len(sigma.source_vars)
    L = sigma.linear_matrix()
    Linv = _matrix_inverse(L)

    tvars = sigma.target_vars
    svars = sigma.source_vars
    y = {v: Polynomial.variable(v, tvars) for v in tvars}
    # H_j = component_j - linear part, expressed in source variables
    higher = {}
    for j, tv in enumerate(tvars):
        linear = Polynomial.zero(svars)
        for i, sv in enumerate(svars):
            if L[j][i]:
                linear = linear + Polynomial.variable(sv, svars) * L[j][i]
        higher[tv] = sigma.components[tv] - linear

    def linv_apply(vec: dict[str, Polynomial]) -> dict[str, Polynomial]:
        out = {}
        for i, sv in enumerate(svars):
            acc = Polynomial.zero(tvars, order)
            for j, tv in enumerate(tvars):
                if Linv[i][j]:
                    acc = acc + vec[tv] * Linv[i][j]
            out[sv] = acc
        return out

    theta = linv_apply(y)
    for _ in range(order):
        h_of_theta = {tv: substitute(higher[tv], theta, order) for tv in tvars}
        candidate = linv_apply({tv: y[tv] - h_of_theta[tv] for tv in tvars})
        stable = all(candidate[v] == theta[v] for v in svars)
        theta = candidate
        if stable:
            break

    result = JetSubstitution(
        dict(sigma.components), min(order, sigma.jet_order), svars, tvars, theta
    )
    _check_inverse(result, min(order, sigma.jet_order))
    return result


def _check_inverse(sigma: JetSubstitution, order: int) -> None:
    inv = sigma.inverse_components
    assert inv is not None
    for v in sigma.target_vars:
        image = substitute(sigma.components[v], inv, order)
        if image != Polynomial.variable(v, sigma.target_vars).truncated(order):
            raise SingularLinearPartError(
                f"inverse verification failed for component {v!r}"
            )


@dataclass(frozen=True)
class WeightViolation:
    variable: str
    side: str          # "component" or "inverse"
    required: int
    actual: int | float


@dataclass(frozen=True)
class WeightRespectCertificate:
    ok: bool
    violations: tuple[WeightViolation, ...]

    def __bool__(self) -> bool:
        return self.ok


def verify_weight_respecting(
    sigma: JetSubstitution,
    w_src: WeightVector,
    w_dst: WeightVector,
) -> WeightRespectCertificate:
    """Check wt(component_j) >= w_dst(y_j) and wt(inverse_i) >= w_src(x_i).

    The substitution must be invertible; the inverse is computed on demand.
    The certificate lists every violating component with its weights.
    """
    sigma = sigma.with_inverse()
    violations: list[WeightViolation] = []
    for name in sigma.target_vars:
        required = w_dst[name]
        actual = sigma.components[name].weight(w_src)
        if actual < required:
            violations.append(WeightViolation(name, "component", required, actual))
    assert sigma.inverse_components is not None
    for name in sigma.source_vars:
        required = w_src[name]
        actual = sigma.inverse_components[name].weight(w_dst)
        if actual < required:
            violations.append(WeightViolation(name, "inverse", required, actual))
    return WeightRespectCertificate(not violations, tuple(violations))

"""Brute-force Milnor number oracle, independent of the package internals.

Works directly on {exponent-tuple: Fraction} dictionaries.  For a fixed jet
order N it row-reduces the span of all monomial multiples of the partial
derivatives inside the space of polynomials of degree <= N and counts the
monomials left over; the reported value is accepted once two consecutive
jet orders agree twice in a row.

This file is the reference the milnor module is tested against; it must stay
free of imports from germkit (plain dict arithmetic only).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

Term = tuple[int, ...]
Poly = dict[Term, Fraction]


def oracle_partial(poly: Poly, index: int) -> Poly:
    out: Poly = {}
    for exps, coeff in poly.items():
        if exps[index]:
            reduced = list(exps)
            reduced[index] -= 1
            out[tuple(reduced)] = coeff * exps[index]
    return out


def oracle_monomials_up_to(nvars: int, degree: int) -> list[Term]:
    monomials: list[Term] = []
    for total in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), total):
            exps = [0] * nvars
            for idx in combo:
                exps[idx] += 1
            monomials.append(tuple(exps))
    return monomials


def _shift(poly: Poly, offset: Term, cap: int) -> Poly:
    out: Poly = {}
    for exps, coeff in poly.items():
        shifted = tuple(a + b for a, b in zip(exps, offset))
        if sum(shifted) <= cap:
            out[shifted] = coeff
    return out


def _row_reduce_count(rows: list[Poly]) -> int:
    """Number of independent rows (pivot = graded-lex largest monomial)."""
    pivots: dict[Term, Poly] = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = max(row, key=lambda e: (sum(e), e))
            if lead not in pivots:
                pivots[lead] = row
                break
            pivot_row = pivots[lead]
            factor = row[lead] / pivot_row[lead]
            for exps, coeff in pivot_row.items():
                value = row.get(exps, Fraction(0)) - factor * coeff
                if value:
                    row[exps] = value
                else:
                    row.pop(exps, None)
    return len(pivots)


def oracle_mu_at_order(poly: Poly, nvars: int, order: int) -> int:
    """dim of (polynomials of degree <= order) / (jacobian multiples)."""
    gens = [oracle_partial(poly, i) for i in range(nvars)]
    rows: list[Poly] = []
    for gen in gens:
        if not gen:
            continue
        mult = min(sum(e) for e in gen)
        for offset in oracle_monomials_up_to(nvars, order - mult):
            row = _shift(gen, offset, order)
            if row:
                rows.append(row)
    total = len(oracle_monomials_up_to(nvars, order))
    return total - _row_reduce_count(rows)


def oracle_milnor_number(poly: Poly, nvars: int, max_order: int = 24) -> int:
    """Stabilized Milnor number; raises if no stabilization below max_order."""
    previous = None
    agreements = 0
    for order in range(2, max_order + 1):
        value = oracle_mu_at_order(poly, nvars, order)
        if value == previous:
            agreements += 1
            if agreements >= 2:
                return value
        else:
            agreements = 0
        previous = value
    raise RuntimeError(f"oracle did not stabilize below jet order {max_order}")

"""Sparse exact row reduction over the rationals, keyed by exponent tuples.

Rows are {exponent: Fraction} dicts.  The pivot of a row is its graded-lex
largest monomial, so the non-pivot (standard) monomials of an echelon are the
graded-lex smallest possible; downstream code relies on this when choosing
monomial bases.  Rows can carry an opaque *tag* dict that is combined along
with the arithmetic, which lets callers recover how a reduced vector was
expressed in terms of the original generators.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable

Term = tuple[int, ...]
Row = dict[Term, Fraction]
Tag = dict[Hashable, Fraction]


def _lead(row: Row) -> Term:
    return max(row, key=lambda e: (sum(e), e))


def _axpy(target: Row, factor: Fraction, source: Row) -> None:
    for key, value in source.items():
        updated = target.get(key, Fraction(0)) + factor * value
        if updated:
            target[key] = updated
        else:
            target.pop(key, None)


class Echelon:
    """Incremental echelon form with optional generator tracking."""

    def __init__(self, track: bool = False):
        self.pivots: dict[Term, Row] = {}
        self.tags: dict[Term, Tag] = {}
        self.track = track

    def __len__(self) -> int:
        return len(self.pivots)

    def insert(self, row: Row, tag: Tag | None = None) -> Term | None:
        """Reduce ``row`` against the echelon and store it if independent.

        Returns the new pivot monomial, or None when the row was dependent.
        """
        row = dict(row)
        tag = dict(tag) if (self.track and tag is not None) else ({} if self.track else None)
        while row:
            lead = _lead(row)
            pivot_row = self.pivots.get(lead)
            if pivot_row is None:
                scale = Fraction(1) / row[lead]
                self.pivots[lead] = {k: v * scale for k, v in row.items()}
                if self.track:
                    self.tags[lead] = {k: v * scale for k, v in tag.items()}
                return lead
            factor = -row[lead]
            _axpy(row, factor, pivot_row)
            if self.track:
                _axpy(tag, factor, self.tags[lead])
        return None

    def reduce(self, vector: Row) -> tuple[Row, Tag]:
        """Remainder of ``vector`` modulo the row space.

        Returns (remainder, used) with vector = remainder + sum of
        used[g] * generator_g when tracking is on (used is empty otherwise).
        """
        work = dict(vector)
        remainder: Row = {}
        used: Tag = {}
        while work:
            lead = _lead(work)
            pivot_row = self.pivots.get(lead)
            if pivot_row is None:
                remainder[lead] = work.pop(lead)
                continue
            coeff = work[lead]
            _axpy(work, -coeff, pivot_row)
            if self.track:
                _axpy(used, coeff, self.tags[lead])
        return remainder, used

    def contains(self, vector: Row) -> bool:
        remainder, _ = self.reduce(vector)
        return not remainder

    def standard_monomials(self, monomials: Iterable[Term]) -> list[Term]:
        """Monomials from the iterable that are not pivots, graded-lex ascending."""
        out = [m for m in monomials if m not in self.pivots]
        out.sort(key=lambda e: (sum(e), e))
        return out


class IntEchelon:
    """Echelon over the integers (rows defined up to scale): much faster than
    Fraction rows for rank/membership questions, which is all the Milnor
    computation needs.  Rows are gcd-normalized after every reduction."""

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: dict[Term, dict[Term, int]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    @staticmethod
    def _normalize(row: dict[Term, int]) -> dict[Term, int]:
        from math import gcd

        g = 0
        for v in row.values():
            g = gcd(g, v)
            if g == 1:
                return row
        if g > 1:
            return {k: v // g for k, v in row.items()}
        return row

    def _reduce(self, row: dict[Term, int], store: bool) -> Term | None:
        while row:
            lead = max(row, key=lambda e: (sum(e), e))
            pivot_row = self.pivots.get(lead)
            if pivot_row is None:
                if store:
                    self.pivots[lead] = self._normalize(row)
                return lead
            a = row[lead]
            b = pivot_row[lead]
            for key, value in row.items():
                row[key] = value * b
            for key, value in pivot_row.items():
                updated = row.get(key, 0) - a * value
                if updated:
                    row[key] = updated
                else:
                    row.pop(key, None)
            row = self._normalize(row)
        return None

    def insert(self, row: dict[Term, Fraction | int]) -> Term | None:
        from math import lcm

        scale = 1
        for value in row.values():
            if isinstance(value, Fraction):
                scale = lcm(scale, value.denominator)
        cleaned = {k: int(v * scale) for k, v in row.items() if v}
        if not cleaned:
            return None
        return self._reduce(cleaned, store=True)

    def contains_monomial(self, term: Term) -> bool:
        return self._reduce({term: 1}, store=False) is None

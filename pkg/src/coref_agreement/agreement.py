"""Cohen's kappa and Krippendorff's alpha over coincidence matrices.

Chance agreement comes from the product of the two coders' marginals.  All
quantities are exact fractions, so kappa and alpha can be compared for exact
equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .contingency import LinkTable
from .errors import NegativeCellRefusal
from .muc import round_half_away

LINK_CATEGORIES = ('+Link', '-Link')


@dataclass(frozen=True)
class CoincidenceMatrix:
    """``counts[i][j]``: items the row coder put in category i and the column coder in j."""
    categories: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        categories = tuple(self.categories)
        counts = tuple(tuple(int(x) for x in row) for row in self.counts)
        k = len(categories)
        if k == 0:
            raise ValueError('need at least one category')
        if len(set(categories)) != k:
            raise ValueError('category labels must be distinct')
        if len(counts) != k or any(len(row) != k for row in counts):
            raise ValueError('counts must be a %dx%d grid' % (k, k))
        if any(x < 0 for row in counts for x in row):
            raise ValueError('counts must be non-negative')
        if sum(map(sum, counts)) < 1:
            raise ValueError('matrix total must be at least 1')
        object.__setattr__(self, 'categories', categories)
        object.__setattr__(self, 'counts', counts)

    @classmethod
    def from_link_table(cls, t: LinkTable) -> CoincidenceMatrix:
        if t.negative_cell:
            raise NegativeCellRefusal('link table %s has a negative cell; kappa is undefined'
                                      % ((t.a, t.b, t.c, t.d),))
        return cls(LINK_CATEGORIES, t.cells)

    @property
    def n(self) -> int:
        return sum(map(sum, self.counts))

    @property
    def row_marginals(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.counts)

    @property
    def column_marginals(self) -> tuple[int, ...]:
        return tuple(map(sum, zip(*self.counts)))

    def permuted(self, order: Sequence[int]) -> CoincidenceMatrix:
        return CoincidenceMatrix(tuple(self.categories[i] for i in order),
                                 tuple(tuple(self.counts[i][j] for j in order) for i in order))

    def transposed(self) -> CoincidenceMatrix:
        return CoincidenceMatrix(self.categories, tuple(zip(*self.counts)))


@dataclass(frozen=True)
class AgreementResult:
    p_ao: Fraction
    p_ae: Fraction
    p_do: Fraction
    p_de: Fraction
    kappa: Fraction | None   # None when chance agreement is 1
    alpha: Fraction | None

    @property
    def degenerate(self) -> bool:
        return self.kappa is None

    def render(self, digits: int = 2) -> str:
        return 'degenerate' if self.degenerate else round_half_away(self.kappa, digits)


def observed_agreement(m: CoincidenceMatrix) -> Fraction:
    return Fraction(sum(m.counts[i][i] for i in range(len(m.categories))), m.n)


def expected_agreement(m: CoincidenceMatrix) -> Fraction:
    n = m.n
    return sum((Fraction(r * c, n * n) for r, c in zip(m.row_marginals, m.column_marginals)),
               Fraction(0))


def observed_disagreement(m: CoincidenceMatrix) -> Fraction:
    k = len(m.categories)
    return Fraction(sum(m.counts[i][j] for i in range(k) for j in range(k) if i != j), m.n)


def expected_disagreement(m: CoincidenceMatrix) -> Fraction:
    n = m.n
    rows, cols = m.row_marginals, m.column_marginals
    k = len(m.categories)
    return sum((Fraction(rows[i] * cols[j], n * n) for i in range(k) for j in range(k) if i != j),
               Fraction(0))


def kappa(m: CoincidenceMatrix) -> AgreementResult:
    """Kappa from agreements and alpha from disagreements, cross-checked."""
    p_ao, p_ae = observed_agreement(m), expected_agreement(m)
    p_do, p_de = observed_disagreement(m), expected_disagreement(m)
    if p_ao + p_do != 1 or p_ae + p_de != 1:
        raise ArithmeticError('agreement and disagreement proportions do not sum to 1')
    if p_ae == 1:
        return AgreementResult(p_ao, p_ae, p_do, p_de, None, None)
    k = (p_ao - p_ae) / (1 - p_ae)
    a = 1 - p_do / p_de
    if k != a:
        raise ArithmeticError('kappa %s and alpha %s disagree' % (k, a))
    return AgreementResult(p_ao, p_ae, p_do, p_de, k, a)


def kappa_from_link_table(t: LinkTable) -> AgreementResult:
    return kappa(CoincidenceMatrix.from_link_table(t))

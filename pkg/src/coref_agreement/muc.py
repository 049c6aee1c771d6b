"""Vilain-style link recall and precision over equivalence classes."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .annotation import Annotation, check_commensurate, classes_of
from .errors import UnknownMarkable


def round_half_away(value, digits: int) -> str:
    """Render a rational at ``digits`` decimals, ties rounded away from zero."""
    value = Fraction(value)
    scale = 10 ** digits
    scaled = abs(value) * scale
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    sign = '-' if value < 0 and q else ''
    if digits == 0:
        return '%s%d' % (sign, q)
    whole, frac = divmod(q, scale)
    return '%s%d.%0*d' % (sign, whole, digits, frac)


@dataclass(frozen=True)
class Ratio:
    """An exact, unreduced fraction of link counts.

    A zero denominator only arises when every class involved is a singleton;
    such a ratio is ``degenerate`` and renders as 0.
    """
    numerator: int
    denominator: int

    def __post_init__(self):
        if self.numerator < 0 or self.denominator < 0:
            raise ValueError('ratio terms must be non-negative')
        if self.denominator == 0 and self.numerator != 0:
            raise ValueError('non-zero numerator over zero denominator')

    @property
    def degenerate(self) -> bool:
        return self.denominator == 0

    @property
    def value(self) -> Fraction:
        if self.degenerate:
            return Fraction(0)
        return Fraction(self.numerator, self.denominator)

    def render(self, digits: int = 3) -> str:
        return round_half_away(self.value, digits)

    def __float__(self):
        return float(self.value)

    def __str__(self):
        return '%d/%d' % (self.numerator, self.denominator)


@dataclass(frozen=True)
class ClassScore:
    target_class: frozenset[str]
    partition: tuple[frozenset[str], ...]
    recall: Ratio

    @property
    def partition_size(self) -> int:
        return len(self.partition)

    @property
    def missing_links(self) -> int:
        return self.partition_size - 1

    @property
    def target_links(self) -> int:
        return len(self.target_class) - 1

    @property
    def degenerate(self) -> bool:
        return self.recall.degenerate


def partition_of_class(c: Iterable[str], response: Annotation) -> tuple[frozenset[str], ...]:
    """Split ``c`` into groups by the response annotation's chain labels."""
    groups = defaultdict(set)
    for mid in c:
        try:
            groups[response.chain_of[mid]].add(mid)
        except KeyError:
            raise UnknownMarkable('markable %r is not in the response annotation' % mid) from None
    return tuple(frozenset(g) for g in groups.values())


def class_recall(c: Iterable[str], response: Annotation) -> ClassScore:
    c = frozenset(c)
    if not c:
        raise ValueError('cannot score an empty class')
    part = partition_of_class(c, response)
    return ClassScore(c, part, Ratio(len(c) - len(part), len(c) - 1))


def _sum_over_classes(target: Annotation, response: Annotation) -> Ratio:
    num = den = 0
    for c in classes_of(target):
        score = class_recall(c, response)
        num += score.recall.numerator
        den += score.recall.denominator
    return Ratio(num, den)


def muc_recall(target: Annotation, response: Annotation) -> Ratio:
    """Sum of (|C| - |p(C)|) over sum of (|C| - 1) for target classes C.

    Singleton classes add nothing to either sum.  When the target has no
    links at all the result is a degenerate 0/0.
    """
    check_commensurate(target, response)
    return _sum_over_classes(target, response)


def muc_precision(target: Annotation, response: Annotation) -> Ratio:
    """Response classes partitioned by the target; equal to ``muc_recall(response, target)``."""
    check_commensurate(target, response)
    return _sum_over_classes(response, target)

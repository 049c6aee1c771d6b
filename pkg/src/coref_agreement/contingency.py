"""2x2 link coincidence tables built from a pair of partitions.

Columns belong to the target coding and rows to the response coding::

                 target +Link   target -Link
    resp +Link        a              b          a+b
    resp -Link        c              d          c+d
                     a+c            b+d         total

``total`` is N - 1 for N shared markables, the size of a spanning tree over
the whole document.  ``d`` is whatever remains after a, b and c, which can be
negative when two codings disagree on many links; such a table is flagged and
kappa refuses it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .annotation import (Annotation, check_commensurate, classes_of, link_count,
                         meet)
from .errors import MalformedRecord, TooFewMarkables
from .muc import Ratio


@dataclass(frozen=True)
class Orientation:
    target: str
    response: str

    def swapped(self) -> Orientation:
        return Orientation(self.response, self.target)

    def __str__(self):
        return 'target (columns) = %s, response (rows) = %s' % (self.target, self.response)


@dataclass(frozen=True)
class LinkTable:
    a: int
    b: int
    c: int
    d: int
    orientation: Orientation

    def __post_init__(self):
        if not isinstance(self.orientation, Orientation):
            raise TypeError('a LinkTable needs an explicit Orientation')

    @property
    def total(self) -> int:
        return self.a + self.b + self.c + self.d

    @property
    def negative_cell(self) -> bool:
        return min(self.a, self.b, self.c, self.d) < 0

    @property
    def row_marginals(self) -> tuple[int, int]:
        """Response +Link, response -Link."""
        return self.a + self.b, self.c + self.d

    @property
    def column_marginals(self) -> tuple[int, int]:
        """Target +Link, target -Link."""
        return self.a + self.c, self.b + self.d

    @property
    def cells(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)

    def transposed(self) -> LinkTable:
        """The same table with target and response roles exchanged."""
        return LinkTable(self.a, self.c, self.b, self.d, self.orientation.swapped())


def build_link_table(target: Annotation, response: Annotation,
                     orientation: Orientation | None = None) -> LinkTable:
    check_commensurate(target, response)
    n = len(target)
    if n < 2:
        raise TooFewMarkables('need at least 2 markables to form a link table, got %d' % n)
    if orientation is None:
        orientation = Orientation(target.doc_id or 'target', response.doc_id or 'response')
    p, q = classes_of(target), classes_of(response)
    a = link_count(meet(p, q))
    c = link_count(p) - a
    b = link_count(q) - a
    d = (n - 1) - a - b - c
    return LinkTable(a, b, c, d, orientation)


def table_from_counts(a: int, b: int, c: int, d: int, orientation: Orientation) -> LinkTable:
    """Wrap pre-tabulated cell counts, e.g. a published matrix."""
    if a + b + c + d < 1:
        raise ValueError('table total must be at least 1')
    return LinkTable(a, b, c, d, orientation)


def parse_counts(record: str) -> tuple[int, int, int, int]:
    """Parse an ``a,b,c,d`` record."""
    fields = [f.strip() for f in record.strip().split(',')]
    if len(fields) != 4:
        raise MalformedRecord('expected four comma-separated integers, got %r' % record)
    try:
        return tuple(int(f) for f in fields)
    except ValueError:
        raise MalformedRecord('non-integer cell in %r' % record) from None


def read_count_tables(stream, orientation: Orientation) -> list[LinkTable]:
    """One ``a,b,c,d`` table per line; ``#`` comments and blank lines skipped."""
    tables = []
    for lineno, line in enumerate(stream, 1):
        if not line.strip() or line.startswith('#'):
            continue
        try:
            tables.append(table_from_counts(*parse_counts(line), orientation))
        except (MalformedRecord, ValueError) as e:
            raise MalformedRecord(str(e), line=lineno) from None
    return tables


def table_recall(t: LinkTable) -> Ratio:
    """a / (a + c) under the table's orientation."""
    return Ratio(t.a, t.a + t.c)


def table_precision(t: LinkTable) -> Ratio:
    """a / (a + b) under the table's orientation."""
    return Ratio(t.a, t.a + t.b)


def intersection_d(target: Annotation, response: Annotation) -> tuple[int, int]:
    """Alternative count of d: classes each coding shares with the meet, less one.

    Returned as ``(from_target, from_response)``.  This is a diagnostic only;
    the two sides can disagree with each other and with ``total - a - b - c``
    (target {1,2,3} against response {1,2},{3} gives -1 and 1 against 0).
    """
    check_commensurate(target, response)
    p, q = classes_of(target), classes_of(response)
    m = meet(p, q).classes
    return len(p.classes & m) - 1, len(q.classes & m) - 1

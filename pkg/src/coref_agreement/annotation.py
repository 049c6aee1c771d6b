"""Markables, coreference annotations and equivalence-class partitions.

An annotation assigns every markable of a document to a chain label.  Labels
are opaque: only the grouping they induce matters, so scoring works on the
label-free :class:`Partition` returned by :func:`classes_of`.
"""

from __future__ import annotations

import io
from collections import defaultdict
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (DuplicateMarkable, Incommensurate, MalformedRecord,
                     UniverseMismatch)


@dataclass(frozen=True)
class Markable:
    """A referring expression.  ``surface`` and ``position`` are display only."""
    id: str
    surface: str | None = field(default=None, compare=False)
    position: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValueError('markable id must be a non-empty string')
        if self.position is not None and self.position < 0:
            raise ValueError('markable position must be non-negative')


@dataclass(frozen=True)
class Annotation:
    doc_id: str
    markables: tuple[Markable, ...]
    chain_of: Mapping[str, str]

    def __post_init__(self):
        markables = tuple(self.markables)
        ids = [m.id for m in markables]
        seen = set()
        for mid in ids:
            if mid in seen:
                raise DuplicateMarkable('duplicate markable %r' % mid)
            seen.add(mid)
        chain_of = dict(self.chain_of)
        if set(chain_of) != seen:
            extra = sorted(set(chain_of) - seen)
            missing = sorted(seen - set(chain_of))
            raise ValueError('chain assignment must cover exactly the markables '
                             '(missing %s, extra %s)' % (missing, extra))
        for mid, label in chain_of.items():
            if not isinstance(label, str) or not label.strip():
                raise MalformedRecord('blank chain label for markable %r' % mid)
        object.__setattr__(self, 'markables', markables)
        object.__setattr__(self, 'chain_of', MappingProxyType(chain_of))

    @classmethod
    def from_pairs(cls, doc_id: str, pairs: Iterable[tuple[str, str]]) -> Annotation:
        """Build from ``(markable_id, chain_label)`` pairs in document order."""
        markables = []
        chain_of = {}
        for pos, (mid, label) in enumerate(pairs):
            if mid in chain_of:
                raise DuplicateMarkable('duplicate markable %r' % mid)
            markables.append(Markable(mid, position=pos))
            chain_of[mid] = label
        return cls(doc_id, tuple(markables), chain_of)

    @property
    def ids(self) -> frozenset[str]:
        return frozenset(self.chain_of)

    @property
    def chains(self) -> frozenset[str]:
        return frozenset(self.chain_of.values())

    def __len__(self):
        return len(self.markables)


@dataclass(frozen=True)
class Partition:
    """Disjoint, covering equivalence classes over a set of markable ids."""
    classes: frozenset[frozenset[str]]

    def __post_init__(self):
        classes = frozenset(frozenset(c) for c in self.classes)
        seen = set()
        for c in classes:
            if not c:
                raise ValueError('partition classes must be non-empty')
            if seen & c:
                raise ValueError('partition classes overlap on %s' % sorted(seen & c))
            seen |= c
        object.__setattr__(self, 'classes', classes)
        object.__setattr__(self, '_universe', frozenset(seen))

    @classmethod
    def of(cls, *classes: Iterable[str]) -> Partition:
        return cls(frozenset(frozenset(c) for c in classes))

    @property
    def universe(self) -> frozenset[str]:
        return self._universe

    def class_index(self) -> dict[str, frozenset[str]]:
        """Map each member to the class containing it."""
        return {x: c for c in self.classes for x in c}

    def refines(self, other: Partition) -> bool:
        index = other.class_index()
        return all(c <= index[next(iter(c))] for c in self.classes)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __str__(self):
        parts = sorted(sorted(c) for c in self.classes)
        return ' '.join('{%s}' % ', '.join(p) for p in parts)


def parse_annotation(text, doc_id: str = '', source=None) -> Annotation:
    """Read the two-column TSV format ``markable_id<TAB>chain_label``.

    ``text`` may be a string or a text stream.  Lines starting with ``#`` are
    comments and blank lines are skipped.  An optional third column is kept
    as the markable's surface string.
    """
    if isinstance(text, str):
        text = io.StringIO(text)
    markables = []
    chain_of = {}
    for lineno, raw in enumerate(text, 1):
        line = raw.rstrip('\r\n')
        if not line.strip() or line.startswith('#'):
            continue
        fields = line.split('\t')
        if len(fields) not in (2, 3):
            raise MalformedRecord('expected markable_id<TAB>chain_label, got %d field(s)'
                                  % len(fields), line=lineno, source=source)
        mid, label = fields[0], fields[1]
        if not mid.strip():
            raise MalformedRecord('empty markable id', line=lineno, source=source)
        if not label.strip():
            raise MalformedRecord('blank chain label for %r' % mid, line=lineno, source=source)
        if mid in chain_of:
            raise DuplicateMarkable('duplicate markable %r' % mid, line=lineno, source=source)
        surface = fields[2] if len(fields) == 3 else None
        markables.append(Markable(mid, surface=surface, position=len(markables)))
        chain_of[mid] = label
    return Annotation(doc_id, tuple(markables), chain_of)


def read_annotation(path, doc_id: str | None = None) -> Annotation:
    with open(path, encoding='utf-8') as f:
        return parse_annotation(f, doc_id if doc_id is not None else str(path), source=path)


def classes_of(a: Annotation) -> Partition:
    by_label = defaultdict(set)
    for mid, label in a.chain_of.items():
        by_label[label].add(mid)
    return Partition(frozenset(frozenset(c) for c in by_label.values()))


def check_commensurate(a: Annotation, b: Annotation) -> None:
    """Raise :class:`Incommensurate` unless both cover the same markable ids."""
    ids_a, ids_b = a.ids, b.ids
    if ids_a != ids_b:
        raise Incommensurate(ids_a - ids_b, ids_b - ids_a)


def meet(p: Partition, q: Partition) -> Partition:
    """Common refinement: members share a class iff they do in both p and q."""
    if p.universe != q.universe:
        raise UniverseMismatch('cannot meet partitions over different universes')
    p_id = {x: i for i, c in enumerate(p.classes) for x in c}
    q_id = {x: j for j, c in enumerate(q.classes) for x in c}
    cells = defaultdict(set)
    for x in p.universe:
        cells[p_id[x], q_id[x]].add(x)
    return Partition(frozenset(frozenset(c) for c in cells.values()))


def link_count(p: Partition) -> int:
    return len(p.universe) - len(p.classes)

"""Scoring annotation pairs and corpora, and rendering the results.

Every number in a report is held as an exact ratio; decimals are produced
only when rendering.
"""

from __future__ import annotations

import json
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import Context, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .agreement import AgreementResult, kappa_from_link_table
from .annotation import Annotation, read_annotation
from .contingency import (LinkTable, Orientation, build_link_table, intersection_d,
                          table_precision, table_recall)
from .errors import CorefAgreementError, EmptyList, TooFewMarkables
from .muc import Ratio, muc_precision, muc_recall, round_half_away

RATIO_DIGITS = 3
KAPPA_DIGITS = 2

# Flags attached to reports
NEGATIVE_CELL = 'negative-cell'
KAPPA_REFUSED = 'kappa-refused'
KAPPA_DEGENERATE = 'kappa-degenerate'
RECALL_DEGENERATE = 'recall-degenerate'
PRECISION_DEGENERATE = 'precision-degenerate'
TOO_FEW_MARKABLES = 'too-few-markables'
D_CROSSCHECK = 'd-crosscheck-disagrees'


@dataclass(frozen=True)
class PairReport:
    doc_id: str
    orientation: Orientation
    muc_recall: Ratio
    muc_precision: Ratio
    link_table: LinkTable | None
    agreement: AgreementResult | None
    flags: tuple[str, ...] = ()

    @property
    def kappa(self) -> Fraction | None:
        return None if self.agreement is None else self.agreement.kappa

    @property
    def alpha(self) -> Fraction | None:
        return None if self.agreement is None else self.agreement.alpha

    @property
    def degenerate_only(self) -> bool:
        return (self.muc_recall.degenerate and self.muc_precision.degenerate
                and self.kappa is None)


def _agreement_for(table: LinkTable, flags: list) -> AgreementResult | None:
    if table.negative_cell:
        flags += [NEGATIVE_CELL, KAPPA_REFUSED]
        return None
    result = kappa_from_link_table(table)
    if result.degenerate:
        flags.append(KAPPA_DEGENERATE)
    return result


def report_for(target: Annotation, response: Annotation,
               orientation: Orientation | None = None) -> PairReport:
    """Score two already-loaded annotations; ``target`` supplies the columns."""
    if orientation is None:
        orientation = Orientation(target.doc_id or 'target', response.doc_id or 'response')
    recall = muc_recall(target, response)
    precision = muc_precision(target, response)
    flags = []
    if recall.degenerate:
        flags.append(RECALL_DEGENERATE)
    if precision.degenerate:
        flags.append(PRECISION_DEGENERATE)
    try:
        table = build_link_table(target, response, orientation)
    except TooFewMarkables:
        flags.append(TOO_FEW_MARKABLES)
        return PairReport(target.doc_id, orientation, recall, precision, None, None, tuple(flags))
    agreement = _agreement_for(table, flags)
    d_target, d_response = intersection_d(target, response)
    if not d_target == d_response == table.d:
        flags.append('%s (target %d, response %d, table %d)'
                     % (D_CROSSCHECK, d_target, d_response, table.d))
    return PairReport(target.doc_id, orientation, recall, precision, table, agreement,
                      tuple(flags))


def report_for_table(table: LinkTable, doc_id: str = '') -> PairReport:
    """Report for a pre-tabulated link table; recall/precision come from the cells."""
    recall, precision = table_recall(table), table_precision(table)
    flags = []
    if recall.degenerate:
        flags.append(RECALL_DEGENERATE)
    if precision.degenerate:
        flags.append(PRECISION_DEGENERATE)
    agreement = _agreement_for(table, flags)
    return PairReport(doc_id, table.orientation, recall, precision, table, agreement, tuple(flags))


def score_pair(target_path, response_path, doc_id: str | None = None) -> PairReport:
    """Read and score two annotation files; the first is the target."""
    target_path, response_path = Path(target_path), Path(response_path)
    target = read_annotation(target_path, doc_id if doc_id is not None else target_path.stem)
    response = read_annotation(response_path, doc_id if doc_id is not None else response_path.stem)
    return report_for(target, response, Orientation(str(target_path), str(response_path)))


# ---------------------------------------------------------------- batch

METRICS = ('kappa', 'recall', 'precision')


@dataclass(frozen=True)
class BatchRow:
    doc_id: str
    report: PairReport | None = None
    error: str | None = None

    def metric(self, name: str) -> Fraction | None:
        """Exact metric value, or None if it must be left out of sigma."""
        r = self.report
        if r is None:
            return None
        if name == 'kappa':
            return r.kappa
        ratio = r.muc_recall if name == 'recall' else r.muc_precision
        return None if ratio.degenerate else ratio.value


@dataclass(frozen=True)
class BatchReport:
    rows: tuple[BatchRow, ...]
    sigma: dict = field(default_factory=dict)      # metric -> Decimal | None
    excluded: dict = field(default_factory=dict)   # metric -> int
    sample: bool = False


def stddev(values: Sequence, sample: bool = False) -> Decimal:
    """Population (or sample) standard deviation of exact values."""
    values = [Fraction(v) for v in values]
    if not values:
        raise EmptyList('standard deviation of an empty list')
    if sample and len(values) < 2:
        raise EmptyList('sample standard deviation needs at least two values')
    var = statistics.variance(values) if sample else statistics.pvariance(values)
    ctx = Context(prec=40)
    return ctx.sqrt(ctx.divide(Decimal(var.numerator), Decimal(var.denominator)))


def read_manifest(path) -> list[tuple[str, str | None, str | None, str | None]]:
    """Rows of ``(doc_id, target_path, response_path, error)``.

    Relative paths are resolved against the manifest's directory.
    """
    path = Path(path)
    base = path.parent
    rows = []
    with open(path, encoding='utf-8') as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip('\r\n')
            if not line.strip() or line.startswith('#'):
                continue
            fields = line.split('\t')
            if len(fields) != 3 or not all(x.strip() for x in fields):
                rows.append(('%s:%d' % (path.name, lineno), None, None,
                             'malformed manifest line %d' % lineno))
                continue
            doc_id, t, r = fields
            rows.append((doc_id, str(base / t), str(base / r), None))
    return rows


def _score_row(entry) -> BatchRow:
    doc_id, t, r, error = entry
    if error is not None:
        return BatchRow(doc_id, error=error)
    try:
        return BatchRow(doc_id, report=score_pair(t, r, doc_id=doc_id))
    except (CorefAgreementError, OSError) as e:
        return BatchRow(doc_id, error='%s: %s' % (type(e).__name__, e))


def summarize(rows: Sequence[BatchRow], sample: bool = False) -> BatchReport:
    sigma, excluded = {}, {}
    for name in METRICS:
        values = [row.metric(name) for row in rows]
        kept = [v for v in values if v is not None]
        excluded[name] = len(values) - len(kept)
        if len(kept) >= (2 if sample else 1):
            sigma[name] = stddev(kept, sample)
        else:
            sigma[name] = None
    return BatchReport(tuple(rows), sigma, excluded, sample)


def score_batch(manifest_path, sample: bool = False, jobs: int = 1) -> BatchReport:
    """Score every manifest entry; failing rows are kept, flagged, and left out of sigma."""
    entries = read_manifest(manifest_path)
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            rows = list(pool.map(_score_row, entries))
    else:
        rows = [_score_row(e) for e in entries]
    return summarize(rows, sample)


# ---------------------------------------------------------------- rendering

def _grid(table: LinkTable) -> list[str]:
    o = table.orientation
    rm, cm = table.row_marginals, table.column_marginals
    cells = [
        ['', 'target +Link', 'target -Link', ''],
        ['response +Link', table.a, table.b, rm[0]],
        ['response -Link', table.c, table.d, rm[1]],
        ['', cm[0], cm[1], table.total],
    ]
    widths = [max(len(str(row[i])) for row in cells) for i in range(4)]
    lines = ['target (columns): %s' % o.target, 'response (rows): %s' % o.response]
    for row in cells:
        lines.append('  '.join(str(x).ljust(widths[0]) if i == 0 else str(x).rjust(widths[i])
                               for i, x in enumerate(row)).rstrip())
    return lines


def _ratio_line(label, ratio, digits):
    if ratio.degenerate:
        return '%-10s %s  %s (degenerate)' % (label, ratio, ratio.render(digits))
    return '%-10s %s  %s' % (label, ratio, ratio.render(digits))


def render_pair_text(r: PairReport, ratio_digits=RATIO_DIGITS, kappa_digits=KAPPA_DIGITS) -> str:
    lines = ['document: %s' % r.doc_id]
    if r.link_table is not None:
        lines += _grid(r.link_table)
    else:
        lines += ['target (columns): %s' % r.orientation.target,
                  'response (rows): %s' % r.orientation.response]
    lines.append('')
    lines.append(_ratio_line('recall', r.muc_recall, ratio_digits))
    lines.append(_ratio_line('precision', r.muc_precision, ratio_digits))
    if r.link_table is not None and not r.link_table.negative_cell:
        t = r.link_table.transposed()
        lines.append('roles swapped (target = %s): recall %s, precision %s'
                     % (t.orientation.target, table_recall(t).render(ratio_digits),
                        table_precision(t).render(ratio_digits)))
    ag = r.agreement
    if ag is None:
        lines.append('kappa      refused')
    elif ag.degenerate:
        lines.append('kappa      degenerate (expected agreement is 1)')
    else:
        lines.append('kappa      %s  alpha %s' % (round_half_away(ag.kappa, kappa_digits),
                                                  round_half_away(ag.alpha, kappa_digits)))
        lines.append('           p_ao %s  p_ae %s  p_do %s  p_de %s'
                     % (ag.p_ao, ag.p_ae, ag.p_do, ag.p_de))
    lines.append('flags: %s' % (', '.join(r.flags) if r.flags else 'none'))
    return '\n'.join(lines) + '\n'


def _cell(value, digits):
    return '-' if value is None else round_half_away(value, digits)


def render_batch_text(b: BatchReport, ratio_digits=KAPPA_DIGITS, kappa_digits=KAPPA_DIGITS) -> str:
    width = max([len('doc')] + [len(row.doc_id) for row in b.rows])
    head = '%-*s  %7s  %7s  %9s' % (width, 'doc', 'kappa', 'recall', 'precision')
    lines = [head, '-' * len(head)]
    notes = []
    for row in b.rows:
        lines.append('%-*s  %7s  %7s  %9s' % (
            width, row.doc_id, _cell(row.metric('kappa'), kappa_digits),
            _cell(row.metric('recall'), ratio_digits),
            _cell(row.metric('precision'), ratio_digits)))
        if row.error:
            notes.append('%s: %s' % (row.doc_id, row.error))
        elif row.report.flags:
            notes.append('%s: %s' % (row.doc_id, ', '.join(row.report.flags)))
    if b.rows:
        lines.append('-' * len(head))
        label = 'sigma (n-1)' if b.sample else 'sigma'
        lines.append('%-*s  %7s  %7s  %9s' % (
            width, label, _cell(b.sigma.get('kappa'), kappa_digits),
            _cell(b.sigma.get('recall'), ratio_digits),
            _cell(b.sigma.get('precision'), ratio_digits)))
        lines.append('excluded from sigma: ' + ', '.join(
            '%s %d' % (m, b.excluded.get(m, 0)) for m in METRICS))
    lines += notes
    return '\n'.join(lines) + '\n'


def _frac(x, digits):
    if x is None:
        return None
    x = Fraction(x)
    return {'numerator': x.numerator, 'denominator': x.denominator,
            'decimal': round_half_away(x, digits)}


def _ratio(r: Ratio, digits):
    return {'numerator': r.numerator, 'denominator': r.denominator,
            'decimal': r.render(digits), 'degenerate': r.degenerate}


def pair_to_dict(r: PairReport, ratio_digits=RATIO_DIGITS, kappa_digits=KAPPA_DIGITS) -> dict:
    t = r.link_table
    ag = r.agreement
    return {
        'doc_id': r.doc_id,
        'orientation': {'target': r.orientation.target, 'response': r.orientation.response},
        'muc_recall': _ratio(r.muc_recall, ratio_digits),
        'muc_precision': _ratio(r.muc_precision, ratio_digits),
        'link_table': None if t is None else {
            'a': t.a, 'b': t.b, 'c': t.c, 'd': t.d, 'total': t.total,
            'negative_cell': t.negative_cell,
            'row_marginals': list(t.row_marginals),
            'column_marginals': list(t.column_marginals),
        },
        'agreement': None if ag is None else {
            'p_ao': _frac(ag.p_ao, kappa_digits), 'p_ae': _frac(ag.p_ae, kappa_digits),
            'p_do': _frac(ag.p_do, kappa_digits), 'p_de': _frac(ag.p_de, kappa_digits),
            'kappa': _frac(ag.kappa, kappa_digits), 'alpha': _frac(ag.alpha, kappa_digits),
        },
        'flags': list(r.flags),
    }


def _unfrac(d):
    return None if d is None else Fraction(d['numerator'], d['denominator'])


def pair_from_dict(d: dict) -> PairReport:
    o = Orientation(d['orientation']['target'], d['orientation']['response'])
    t = d['link_table']
    table = None if t is None else LinkTable(t['a'], t['b'], t['c'], t['d'], o)
    ag = d['agreement']
    agreement = None if ag is None else AgreementResult(
        *(_unfrac(ag[k]) for k in ('p_ao', 'p_ae', 'p_do', 'p_de', 'kappa', 'alpha')))
    ratio = lambda x: Ratio(x['numerator'], x['denominator'])  # noqa: E731
    return PairReport(d['doc_id'], o, ratio(d['muc_recall']), ratio(d['muc_precision']),
                      table, agreement, tuple(d['flags']))


def batch_to_dict(b: BatchReport, ratio_digits=KAPPA_DIGITS, kappa_digits=KAPPA_DIGITS) -> dict:
    rows = []
    for row in b.rows:
        rows.append({
            'doc_id': row.doc_id,
            'error': row.error,
            'report': None if row.report is None
            else pair_to_dict(row.report, ratio_digits, kappa_digits),
        })
    sigma = {}
    for m in METRICS:
        s = b.sigma.get(m)
        digits = kappa_digits if m == 'kappa' else ratio_digits
        sigma[m] = None if s is None else {'value': str(s), 'decimal': _cell(s, digits)}
    return {'rows': rows, 'sigma': sigma, 'excluded': dict(b.excluded),
            'convention': 'sample' if b.sample else 'population'}


def batch_from_dict(d: dict) -> BatchReport:
    rows = tuple(BatchRow(r['doc_id'],
                          None if r['report'] is None else pair_from_dict(r['report']),
                          r['error']) for r in d['rows'])
    sigma = {m: None if s is None else Decimal(s['value']) for m, s in d['sigma'].items()}
    return BatchReport(rows, sigma, dict(d['excluded']), d['convention'] == 'sample')


def render(report, fmt: str = 'text', ratio_digits: int | None = None,
           kappa_digits: int | None = None) -> str:
    """Render a PairReport or BatchReport as ``text`` or ``machine`` (JSON)."""
    if fmt not in ('text', 'machine'):
        raise ValueError('unknown format %r' % fmt)
    kd = KAPPA_DIGITS if kappa_digits is None else kappa_digits
    if isinstance(report, BatchReport):
        rd = KAPPA_DIGITS if ratio_digits is None else ratio_digits
        if fmt == 'text':
            return render_batch_text(report, rd, kd)
        return json.dumps(batch_to_dict(report, rd, kd), indent=2, sort_keys=True) + '\n'
    rd = RATIO_DIGITS if ratio_digits is None else ratio_digits
    if fmt == 'text':
        return render_pair_text(report, rd, kd)
    return json.dumps(pair_to_dict(report, rd, kd), indent=2, sort_keys=True) + '\n'


def load_machine(text: str):
    """Inverse of ``render(..., 'machine')``."""
    d = json.loads(text)
    return batch_from_dict(d) if 'rows' in d else pair_from_dict(d)


import json
from decimal import Decimal
from fractions import Fraction

import pytest

from coref_agreement import (Annotation, EmptyList, Incommensurate, MalformedRecord, Orientation,
                             Ratio, load_machine, render, report_for, report_for_table,
                             score_batch, score_pair, stddev, table_from_counts)
from coref_agreement.muc import round_half_away
from coref_agreement.report import BatchReport, summarize

import published
from oracles import gadget_pair


def write_annotation(path, labels):
    path.write_text(''.join('%s\t%s\n' % kv for kv in labels.items()), encoding='utf-8')


@pytest.fixture
def table5_manifest(tmp_path):
    lines = []
    for narr, gadget in zip(published.NARRATIVES, published.GADGETS):
        t, r = gadget_pair(*gadget)
        write_annotation(tmp_path / ('n%d_target.tsv' % narr), t)
        write_annotation(tmp_path / ('n%d_response.tsv' % narr), r)
        lines.append('narr%d\tn%d_target.tsv\tn%d_response.tsv' % (narr, narr, narr))
    manifest = tmp_path / 'manifest.tsv'
    manifest.write_text('# doc\ttarget\tresponse\n' + '\n'.join(lines) + '\n')
    return manifest


def test_score_pair_table3(fixtures):
    r = score_pair(fixtures / 'trains_ca1_d_prime.tsv', fixtures / 'trains_ca3.tsv')
    assert r.muc_recall.render(3) == '0.857' and r.muc_precision.render(3) == '0.857'
    assert round_half_away(r.kappa, 2) == '0.52'
    assert r.kappa == r.alpha
    assert r.orientation.target.endswith('trains_ca1_d_prime.tsv')
    assert r.flags == ()


def test_score_pair_identical(fixtures):
    r = score_pair(fixtures / 'trains_ca3.tsv', fixtures / 'trains_ca3.tsv')
    assert r.muc_recall.value == r.muc_precision.value == r.kappa == 1


def test_score_pair_all_singletons():
    a = Annotation.from_pairs('a', [(x, x) for x in 'abcd'])
    r = report_for(a, a)
    assert r.degenerate_only
    assert 'kappa-degenerate' in r.flags and 'recall-degenerate' in r.flags


def test_score_pair_incommensurate(fixtures):
    with pytest.raises(Incommensurate) as e:
        score_pair(fixtures / 'trains_ca1.tsv', fixtures / 'trains_ca3.tsv')
    assert e.value.difference == {"D'"}


def test_score_pair_parse_error_has_context(tmp_path, fixtures):
    bad = tmp_path / 'bad.tsv'
    bad.write_text('A\t1\nB\n')
    with pytest.raises(MalformedRecord) as e:
        score_pair(bad, fixtures / 'trains_ca1.tsv')
    assert 'bad.tsv:2' in str(e.value)


def test_negative_cell_report():
    t = Annotation.from_pairs('t', [('1', 'x'), ('2', 'x'), ('3', 'y'), ('4', 'y')])
    r = Annotation.from_pairs('r', [('1', 'x'), ('3', 'x'), ('2', 'y'), ('4', 'y')])
    rep = report_for(t, r)
    assert rep.agreement is None
    assert 'negative-cell' in rep.flags and 'kappa-refused' in rep.flags
    assert 'refused' in render(rep)


def test_d_crosscheck_flag():
    t = Annotation.from_pairs('t', [('1', 'a'), ('2', 'a'), ('3', 'a')])
    r = Annotation.from_pairs('r', [('1', 'a'), ('2', 'a'), ('3', 'b')])
    rep = report_for(t, r)
    assert any(f.startswith('d-crosscheck-disagrees') for f in rep.flags)


@pytest.mark.parametrize('values, expected', [
    (published.KAPPA, '0.07'),
    (published.RECALL, '0.02'),
    (published.PRECISION, '0.02'),
    ([Fraction(3, 7)] * 4, '0.00'),
    ([0, 1], '0.50'),
])
def test_stddev(values, expected):
    assert round_half_away(Fraction(stddev(values)), 2) == expected


def test_stddev_conventions():
    # only the population convention reproduces the printed sigma row;
    # dividing by n-1 pushes recall to .0256
    for col, want in zip((published.KAPPA, published.RECALL, published.PRECISION),
                         ('0.07', '0.03', '0.02')):
        assert round_half_away(Fraction(stddev(col, sample=True)), 2) == want
    assert abs(stddev([1, 2, 3, 4]) - Decimal('1.118033988749894848204586834365638')) < Decimal('1e-30')
    with pytest.raises(EmptyList):
        stddev([])
    with pytest.raises(EmptyList):
        stddev([1], sample=True)


def test_batch_table5(table5_manifest):
    b = score_batch(table5_manifest)
    assert [row.doc_id for row in b.rows] == ['narr%d' % n for n in published.NARRATIVES]
    for row, k, r, p in zip(b.rows, published.KAPPA, published.RECALL, published.PRECISION):
        assert round_half_away(row.metric('kappa'), 2) == round_half_away(k, 2)
        assert round_half_away(row.metric('recall'), 2) == round_half_away(r, 2)
        assert round_half_away(row.metric('precision'), 2) == round_half_away(p, 2)
    for metric, want in published.SIGMA.items():
        assert round_half_away(Fraction(b.sigma[metric]), 2) == want
    assert b.excluded == {'kappa': 0, 'recall': 0, 'precision': 0}


def test_batch_parallel_keeps_order(table5_manifest):
    serial = score_batch(table5_manifest)
    parallel = score_batch(table5_manifest, jobs=4)
    assert serial == parallel


def test_batch_flags_bad_rows(tmp_path, fixtures):
    manifest = tmp_path / 'm.tsv'
    manifest.write_text(
        'good\t{f}/trains_ca1_d_prime.tsv\t{f}/trains_ca3.tsv\n'
        'incomm\t{f}/trains_ca1.tsv\t{f}/trains_ca3.tsv\n'
        'missing\t{f}/nope.tsv\t{f}/trains_ca3.tsv\n'
        'short\tonly-two\n'
        'single\t{f}/trains_ca1.tsv\t{f}/trains_ca1.tsv\n'.format(f=fixtures))
    b = score_batch(manifest)
    assert [row.doc_id for row in b.rows] == ['good', 'incomm', 'missing', 'm.tsv:4', 'single']
    assert b.rows[0].error is None and b.rows[4].error is None
    assert 'Incommensurate' in b.rows[1].error
    assert b.rows[2].error and b.rows[3].error
    assert b.excluded['kappa'] == 3
    text = render(b)
    assert 'incomm: Incommensurate' in text


def test_batch_single_row_sigma_zero(tmp_path, fixtures):
    manifest = tmp_path / 'm.tsv'
    manifest.write_text('x\t%s\t%s\n' % (fixtures / 'trains_ca1.tsv', fixtures / 'trains_ca2.tsv'))
    b = score_batch(manifest)
    assert b.sigma == {'kappa': 0, 'recall': 0, 'precision': 0}


def test_empty_batch_renders_header():
    b = summarize([])
    text = render(b)
    assert text.splitlines()[0].split() == ['doc', 'kappa', 'recall', 'precision']
    assert len(text.splitlines()) == 2
    assert load_machine(render(b, 'machine')) == b


def test_render_table3_text(fixtures):
    r = score_pair(fixtures / 'trains_ca1_d_prime.tsv', fixtures / 'trains_ca3.tsv')
    lines = render(r).splitlines()
    grid = [line.split() for line in lines[4:7]]
    assert grid[0][-3:] == ['6', '1', '7']
    assert grid[1][-3:] == ['1', '2', '3']
    assert grid[2] == ['7', '3', '10']


def test_render_table4_text():
    r = report_for_table(table_from_counts(166, 19, 13, 44, Orientation('R1', 'R2')), 'Table 4')
    text = render(r)
    for marginal in ('185', '57', '179', '63', '242'):
        assert marginal in text
    # both assignments of the recall/precision pair are shown, with orientation labels
    assert 'target (columns): R1' in text
    assert 'recall     166/179  0.927' in text
    assert 'precision  166/185  0.897' in text
    assert 'roles swapped (target = R2): recall 0.897, precision 0.927' in text
    assert 'kappa      0.65' in text


def test_machine_round_trip(fixtures, table5_manifest):
    r = score_pair(fixtures / 'trains_ca1_d_prime.tsv', fixtures / 'trains_ca3.tsv')
    out = render(r, 'machine')
    d = json.loads(out)
    assert d['muc_recall'] == {'numerator': 6, 'denominator': 7, 'decimal': '0.857',
                               'degenerate': False}
    assert d['agreement']['kappa'] == {'numerator': 11, 'denominator': 21, 'decimal': '0.52'}
    assert load_machine(out) == r

    b = score_batch(table5_manifest)
    back = load_machine(render(b, 'machine'))
    assert isinstance(back, BatchReport)
    assert back.rows == b.rows and back.excluded == b.excluded
    assert all(abs(back.sigma[m] - b.sigma[m]) == 0 for m in b.sigma)


def test_machine_round_trip_degenerate():
    a = Annotation.from_pairs('a', [(x, x) for x in 'abc'])
    r = report_for(a, a)
    assert load_machine(render(r, 'machine')) == r
    t = Annotation.from_pairs('t', [('1', 'x'), ('2', 'x'), ('3', 'y'), ('4', 'y')])
    s = Annotation.from_pairs('r', [('1', 'x'), ('3', 'x'), ('2', 'y'), ('4', 'y')])
    r = report_for(t, s)
    assert load_machine(render(r, 'machine')) == r


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError):
        render(report_for_table(table_from_counts(1, 0, 0, 1, Orientation('x', 'y'))), 'html')


def test_ratio_in_report_is_exact(fixtures):
    r = score_pair(fixtures / 'trains_ca1.tsv', fixtures / 'trains_ca2.tsv')
    assert r.muc_recall == Ratio(6, 7)

"""Command line entry point: ``coref-agree score|batch|table``."""

import argparse
import sys

from .contingency import Orientation, parse_counts, read_count_tables, table_from_counts
from .errors import AnnotationError, Incommensurate, MalformedRecord
from .report import render, report_for_table, score_batch, score_pair

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INCOMMENSURATE = 3
EXIT_DEGENERATE = 4


def _digits(args):
    return {'ratio_digits': args.precision, 'kappa_digits': args.precision}


def cmd_score(args):
    try:
        report = score_pair(args.target, args.response)
    except AnnotationError as e:
        print('parse error: %s' % e, file=sys.stderr)
        return EXIT_PARSE
    except Incommensurate as e:
        print('%s vs %s: %s' % (args.target, args.response, e), file=sys.stderr)
        return EXIT_INCOMMENSURATE
    sys.stdout.write(render(report, args.format, **_digits(args)))
    return EXIT_DEGENERATE if report.degenerate_only else EXIT_OK


def cmd_batch(args):
    try:
        batch = score_batch(args.manifest, sample=args.sample_stddev, jobs=args.jobs)
    except OSError as e:
        print('cannot read manifest: %s' % e, file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(render(batch, args.format, **_digits(args)))
    if batch.rows and all(v is None for v in batch.sigma.values()):
        return EXIT_DEGENERATE
    return EXIT_OK


def cmd_table(args):
    orientation = Orientation(args.target_name, args.response_name)
    try:
        tables = [table_from_counts(*parse_counts(c), orientation) for c in args.counts or ()]
        if args.counts_file:
            with open(args.counts_file, encoding='utf-8') as f:
                tables += read_count_tables(f, orientation)
    except (MalformedRecord, ValueError) as e:
        print('parse error: %s' % e, file=sys.stderr)
        return EXIT_PARSE
    if not tables:
        print('no tables given; use --counts or --counts-file', file=sys.stderr)
        return EXIT_PARSE
    reports = [report_for_table(t, doc_id='table %d' % (i + 1)) for i, t in enumerate(tables)]
    for r in reports:
        sys.stdout.write(render(r, args.format, **_digits(args)))
    return EXIT_DEGENERATE if all(r.degenerate_only for r in reports) else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog='coref-agree',
        description='MUC recall/precision and kappa/alpha for coreference annotations.')
    sub = parser.add_subparsers(dest='command', required=True)

    def common(p):
        p.add_argument('--format', choices=('text', 'machine'), default='text')
        p.add_argument('--precision', type=int, default=None, metavar='N',
                       help='decimal places for every rendered value')

    p = sub.add_parser('score', help='score one annotation pair (first file is the target)')
    p.add_argument('target')
    p.add_argument('response')
    common(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser('batch', help='score every pair listed in a manifest')
    p.add_argument('manifest', help='TSV of doc_id, target path, response path')
    p.add_argument('--sample-stddev', action='store_true',
                   help='divide by n-1 instead of n')
    p.add_argument('--jobs', type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser('table', help='score pre-tabulated a,b,c,d link tables')
    p.add_argument('--counts', action='append', metavar='A,B,C,D')
    p.add_argument('--counts-file', metavar='PATH', help='one a,b,c,d record per line')
    p.add_argument('--target-name', default='target', help='label of the column coder')
    p.add_argument('--response-name', default='response', help='label of the row coder')
    common(p)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == '__main__':
    sys.exit(main())

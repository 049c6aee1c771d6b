"""Agreement scoring for coreference annotations.

MUC link recall/precision from equivalence-class partitions, the 2x2 link
coincidence table that connects them to chance-corrected reliability, and
Cohen's kappa / Krippendorff's alpha over coincidence matrices.
"""

from .agreement import (AgreementResult, CoincidenceMatrix, expected_agreement, kappa,
                        kappa_from_link_table, observed_agreement)
from .annotation import (Annotation, Markable, Partition, check_commensurate, classes_of,
                         link_count, meet, parse_annotation, read_annotation)
from .contingency import (LinkTable, Orientation, build_link_table, intersection_d,
                          table_from_counts, table_precision, table_recall)
from .errors import (CorefAgreementError, DuplicateMarkable, EmptyList, Incommensurate,
                     MalformedRecord, NegativeCellRefusal, TooFewMarkables, UniverseMismatch,
                     UnknownMarkable)
from .muc import ClassScore, Ratio, class_recall, muc_precision, muc_recall, partition_of_class
from .report import (BatchReport, PairReport, load_machine, render, report_for,
                     report_for_table, score_batch, score_pair, stddev)

__version__ = '0.1.0'

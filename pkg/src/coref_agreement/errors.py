"""Exception types raised by the scorers."""


class CorefAgreementError(Exception):
    pass


class AnnotationError(CorefAgreementError):
    """Problem reading an annotation file."""

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        super().__init__(message)

    def __str__(self):
        where = ''
        if self.source is not None:
            where += str(self.source)
        if self.line is not None:
            where += ':%d' % self.line if where else 'line %d' % self.line
        msg = super().__str__()
        return '%s: %s' % (where, msg) if where else msg


class MalformedRecord(AnnotationError):
    pass


class DuplicateMarkable(AnnotationError):
    pass


class Incommensurate(CorefAgreementError):
    """Two annotations do not cover the same markables.

    ``only_in_first`` and ``only_in_second`` split the symmetric difference.
    """

    def __init__(self, only_in_first, only_in_second):
        self.only_in_first = frozenset(only_in_first)
        self.only_in_second = frozenset(only_in_second)
        super().__init__(
            'annotations are incommensurate; only in first: %s; only in second: %s'
            % (_fmt(self.only_in_first), _fmt(self.only_in_second)))

    @property
    def difference(self):
        return self.only_in_first | self.only_in_second


class UniverseMismatch(CorefAgreementError):
    pass


class UnknownMarkable(CorefAgreementError):
    pass


class TooFewMarkables(CorefAgreementError):
    pass


class NegativeCellRefusal(CorefAgreementError):
    """Raised when kappa is requested for a link table with a negative cell."""


class EmptyList(CorefAgreementError, ValueError):
    pass


def _fmt(ids):
    return '{' + ', '.join(sorted(ids)) + '}' if ids else '{}'

"""Exception hierarchy shared across the package."""


class HebbOCRError(Exception):
    pass


class MalformedHeader(HebbOCRError, ValueError):
    pass


class ValueOutOfRange(HebbOCRError, ValueError):
    pass


class TruncatedData(HebbOCRError, ValueError):
    pass


class NoInk(HebbOCRError, ValueError):
    """Blank sample; callers count it as unrecognized."""


class DimensionMismatch(HebbOCRError, ValueError):
    pass


class UnknownLabel(HebbOCRError, KeyError):
    pass


class UnknownVersion(HebbOCRError, ValueError):
    pass


class ChecksumMismatch(HebbOCRError, ValueError):
    pass


class MalformedRecord(HebbOCRError, ValueError):
    pass


class NoTests(HebbOCRError, ValueError):
    pass


class CountOverflow(HebbOCRError, ValueError):
    pass


class CanvasTooSmall(HebbOCRError, ValueError):
    pass

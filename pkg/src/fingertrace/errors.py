"""Exception types raised by the pipeline stages."""


class FingertraceError(Exception):
    pass


class RasterError(FingertraceError, ValueError):
    pass


class MalformedHeader(RasterError):
    pass


class UnsupportedMaxval(RasterError):
    pass


class TruncatedPixelData(RasterError):
    pass


class BadKernel(FingertraceError, ValueError):
    pass


class NoForeground(FingertraceError):
    """The silhouette has no foreground pixels (skin filter found nothing)."""


class VerticalSegment(FingertraceError, ZeroDivisionError):
    pass


class NoCutFound(FingertraceError):
    """No histogram step along the scan exceeds the slope threshold."""


class EmptyCrop(FingertraceError):
    pass


class SpecUnsatisfiable(FingertraceError, ValueError):
    pass


class LengthMismatch(FingertraceError, ValueError):
    pass

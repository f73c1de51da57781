"""File defining custom splinehmm exception classes.

Every error raised on purpose by the package derives from
`SplineHMMError`.  The `category` attribute is what the command line
reports next to the message.
"""


class SplineHMMError(Exception):
    category = 'error'

    def __reduce__(self):
        # keeps custom constructors picklable across worker processes
        return (self.__class__, getattr(self, '_reduce_args', self.args))


class KnotError(SplineHMMError):
    category = 'knots'


class InvalidKnotsError(KnotError):
    pass


class TooFewKnotsError(KnotError):
    pass


class MinimumKnotsError(KnotError):
    pass


class DegenerateInsertionError(KnotError):
    pass


class OutOfRangeError(SplineHMMError):
    category = 'range'

    def __init__(self, value, bounds, message=None):
        self._reduce_args = (value, bounds, message)
        self.value = value
        self.bounds = tuple(bounds)
        if message is None:
            message = "value {!r} lies outside the support [{}, {}]".format(
                value, self.bounds[0], self.bounds[1])
        super(OutOfRangeError, self).__init__(message)


class InvalidParamsError(SplineHMMError):
    category = 'params'


class NumericError(SplineHMMError):
    category = 'numeric'

    def __init__(self, message, time_index=None, sweep=None):
        self._reduce_args = (message, time_index, sweep)
        self.time_index = time_index
        self.sweep = sweep
        if time_index is not None:
            message = "{} (time index {})".format(message, time_index)
        if sweep is not None:
            message = "{} (sweep {})".format(message, sweep)
        super(NumericError, self).__init__(message)


class UnderflowError(NumericError):
    pass


class EmptyDataError(SplineHMMError):
    category = 'data'


class DataFormatError(SplineHMMError):
    category = 'data'

    def __init__(self, message, filename=None, line=None):
        self._reduce_args = (message, filename, line)
        self.filename = filename
        self.line = line
        if filename is not None and line is not None:
            message = "{}:{}: {}".format(filename, line, message)
        super(DataFormatError, self).__init__(message)


class EmptyTraceError(SplineHMMError):
    category = 'trace'


class DrawCountMismatchError(SplineHMMError):
    category = 'trace'

    def __init__(self, counts):
        self._reduce_args = (counts,)
        self.counts = dict(counts)
        super(DrawCountMismatchError, self).__init__(
            "traces must hold the same number of draws, got {}".format(
                ', '.join('N={}: {}'.format(k, v)
                          for k, v in sorted(self.counts.items()))))


class EmptyConditioningError(SplineHMMError):
    category = 'conditioning'


class ChainError(SplineHMMError):
    category = 'chain'

    def __init__(self, candidate, cause):
        self._reduce_args = (candidate, cause)
        self.candidate = candidate
        self.cause = cause
        self.sweep = getattr(cause, 'sweep', None)
        super(ChainError, self).__init__(
            "chain for N={} failed: {}".format(candidate, cause))


class ConfigError(SplineHMMError):
    category = 'config'

    def __init__(self, key, message=None):
        self._reduce_args = (key, message)
        self.key = key
        if message is None:
            message = "unknown configuration key '{}'".format(key)
        super(ConfigError, self).__init__(message)


class PerformanceWarning(RuntimeWarning):
    pass

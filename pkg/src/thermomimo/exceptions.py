"""Exception hierarchy shared by every module of the package."""


class ThermoMimoError(Exception):
    """Base class for all errors raised by :mod:`thermomimo`."""


class ValidationError(ThermoMimoError, ValueError):
    """An input violates a structural invariant (shape, sign, normalization)."""


class DomainError(ThermoMimoError, ValueError):
    """Inputs are well formed but lie outside the domain of a formula."""


class ConservationError(DomainError):
    """Energy leaving a stage exceeds the energy that entered it."""


class ConfigError(ThermoMimoError):
    """A configuration document could not be parsed or contains bad keys.

    ``line`` and ``column`` are 1-based and ``None`` when unknown.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class SweepError(ThermoMimoError):
    """A sweep aborted at one grid point.

    Attributes
    ----------
    index : int
        Position of the failing point in the grid.
    value : float
        Value of the swept variable at the failing point.
    partial : list of SweepRecord
        Records for every grid point before ``index``, in grid order.
    """

    def __init__(self, index, value, cause, partial):
        self.index = index
        self.value = value
        self.cause = cause
        self.partial = list(partial)
        super().__init__(
            f"sweep failed at grid point {index} (value={value!r}): {cause}"
        )

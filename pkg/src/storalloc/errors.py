class StorallocError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(StorallocError, ValueError):
    """A problem or engine parameter is out of range.

    ``param`` names the offending parameter so the CLI can point at the flag.
    """

    def __init__(self, param, message):
        self.param = param
        super().__init__(f"{param}: {message}")


class DoesNotFit(StorallocError, ValueError):
    """A symmetric plan needs more non-empty nodes than the network has."""


class InvalidChunk(InvalidParameter):
    def __init__(self, j, F):
        super().__init__("j", f"chunk size {j} outside [1, {F}]")


class InfeasibleProfile(StorallocError, ValueError):
    """The fraction of non-empty nodes would exceed 1."""


class SearchSpaceTooLarge(StorallocError):
    def __init__(self, size, limit):
        self.size = size
        self.limit = limit
        super().__init__(f"search space has {size} allocations, limit is {limit}")


class InstanceTooLarge(StorallocError):
    def __init__(self, size, limit):
        self.size = size
        self.limit = limit
        super().__init__(f"instance needs {size} evaluations, limit is {limit}")

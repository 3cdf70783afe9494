class StemcodeError(ValueError):
    """Base class for domain errors raised by stemcode."""


class StrandError(StemcodeError):
    pass


class WeightTableError(StemcodeError):
    """Malformed or invalid weight table; ``cells`` names the offending stems."""

    def __init__(self, message, cells=()):
        super().__init__(message)
        self.cells = tuple(cells)


class DistributionError(StemcodeError):
    pass


class ConvergenceError(StemcodeError):
    pass


class CodeError(StemcodeError):
    """Invalid DNA code; ``strand`` is the first violating codeword, if any."""

    def __init__(self, message, strand=None):
        super().__init__(message)
        self.strand = strand

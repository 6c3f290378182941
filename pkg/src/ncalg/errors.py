"""Exception types shared across the package."""


class NcalgError(Exception):
    """Base class for domain errors raised by this package."""


class IndexOutOfBlockError(NcalgError):
    """A generator index lies outside the finite block an operation covers."""


class DegreeBoundError(NcalgError):
    """An evaluation was requested beyond a state's declared degree bound."""


class GeneratorBlockError(NcalgError):
    """An element uses generators outside a state's generator block."""


class UnclassifiedGeneratorError(NcalgError):
    """A generator is not classified as creation or annihilation."""


class ConjugationMismatchError(NcalgError):
    """Incompatible conjugations (e.g. when combining generator maps)."""


class InvalidRelationError(NcalgError):
    """A relation set is inconsistent (pair governed by two kinds, etc.)."""


class EmptyProbeError(NcalgError):
    """A smearing probe has empty support after rounding to lattice sites."""


class ExpressionSyntaxError(NcalgError):
    """Syntax error in the textual expression grammar."""

    def __init__(self, message, line=1, column=0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ConfigError(NcalgError):
    """Invalid run configuration (unknown keys, missing fields, bad types)."""

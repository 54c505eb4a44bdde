# -*- coding: utf-8 -*-
"""
    exceptions
    ==========
    Exceptions raised by opgraph. All of them derive from :class:`OpGraphException`, so a caller that only wants to
    know that something went wrong can catch that one.
"""


class OpGraphException(Exception):
    pass


class DimensionError(OpGraphException):
    """ Shapes of the arguments do not match what the operation needs."""
    pass


class DomainError(OpGraphException):
    """ The argument has the right shape but is outside of the domain of the operation, for example a non-Hermitian
    matrix passed where a Hermitian one is required."""
    pass


class NotPSDError(DomainError):
    pass


class ParameterError(OpGraphException):
    """ Sizes or options that cannot be honoured."""
    pass


class RejectedInputError(OpGraphException):
    """ An object that fails its own invariants was handed to a construction."""
    pass


class FormatParseError(OpGraphException):
    """ A document could not be read. ``field`` and ``line`` locate the problem when they are known."""
    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        context = []
        if field is not None:
            context.append('field {}'.format(field))
        if line is not None:
            context.append('line {}'.format(line))
        if context:
            message = '{} ({})'.format(message, ', '.join(context))
        super().__init__(message)


class ValidationError(OpGraphException):
    """ A document was read but the object it describes breaks one of its invariants."""
    def __init__(self, message, invariant):
        self.invariant = invariant
        super().__init__('{}: {}'.format(invariant, message))


class StageError(OpGraphException):
    """ Wraps an error raised inside one stage of a pipeline."""
    def __init__(self, stage, message):
        self.stage = stage
        super().__init__(message)

"""Exception types shared across the package.

The CLI maps :class:`InputError` to exit code 2 and :class:`LimitError`
to exit code 3.
"""


class GroupError(Exception):
    pass


class InputError(GroupError, ValueError):
    """Bad user input: malformed text, invalid parameters, unmet preconditions."""


class ParseError(InputError):
    def __init__(self, message, offset=None, line=None, column=None):
        self.reason = message
        self.offset = offset
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if offset is not None and line is None:
            where.append(f"offset {offset}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class NotNormalError(InputError):
    pass


class PreconditionError(InputError):
    pass


class LimitError(GroupError):
    """A configured cap or budget was hit."""


class CapExceeded(LimitError):
    pass


class BudgetExceeded(LimitError):
    def __init__(self, message, progress=None):
        self.progress = progress
        super().__init__(message)

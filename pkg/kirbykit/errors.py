class KirbyError(Exception):
    """base class of all errors raised by kirbykit"""


class ValidationError(KirbyError, ValueError):
    """malformed input: diagrams, handle structures, files

    Parameters
    ----------
    message : str
    path : str or path-like, optional
        The file the invalid data was read from.
    field : str, optional
        The offending field, if known.
    """

    def __init__(self, message, *, path=None, field=None):
        self.path = path
        self.field = field

        context = []
        if path is not None:
            context.append(str(path))
        if field is not None:
            context.append(f"field {field!r}")
        if context:
            message = f"{': '.join(context)}: {message}"

        super().__init__(message)


class IllegalMoveError(KirbyError):
    """a move precondition does not hold"""

    def __init__(self, message, *, move=None, step=None):
        self.move = move
        self.step = step
        self.reason = message

        if step is not None:
            message = f"step {step} ({move}): {message}"
        elif move is not None:
            message = f"{move}: {message}"

        super().__init__(message)


class InvariantMismatchError(KirbyError):
    """computed invariants differ from the expected ones"""

    def __init__(self, message, *, expected=None, actual=None):
        self.expected = expected
        self.actual = actual
        super().__init__(message)


class MarkingError(ValidationError):
    """the named handles do not form the T²×B² pattern"""


class UnsupportedKnotError(KirbyError, LookupError):
    """no catalog entry, template or presentation exists for a knot"""


class TemplateError(KirbyError):
    """a shipped template does not preserve the invariants it must preserve"""


def format_error_message(mapping, op):
    sep = "\n    " if len(mapping) == 1 else "\n -- "
    if op == "parse":
        message = "Cannot parse handle structure:"
        message = sep.join(
            [message]
            + [f"invalid value for {key!r}: {error}" for key, error in mapping.items()]
        )
    elif op == "links":
        message = "Contradicting linking numbers:"
        message = sep.join(
            [message]
            + [
                f"link({a!r}, {b!r}) given as {first} and {second}"
                for (a, b), (first, second) in mapping.items()
            ]
        )
    elif op == "marking":
        message = "Cannot mark torus:"
        message = sep.join(
            [message]
            + [f"handle {key!r}: {reason}" for key, reason in mapping.items()]
        )
    elif op == "expect":
        message = "Invariants do not match:"
        message = sep.join(
            [message]
            + [
                f"{key}: expected {expected}, got {actual}"
                for key, (expected, actual) in mapping.items()
            ]
        )
    else:
        raise ValueError("invalid op")

    return message

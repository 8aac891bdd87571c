"""Exception hierarchy shared across cqlkit."""


class CqlError(Exception):
    """Base class for all cqlkit errors."""


class ParseError(CqlError):
    """A query failed to parse.

    ``offset`` is the character offset of the offending token in the source,
    ``expected`` the set of token kinds (or descriptions) that would have been
    accepted there.
    """

    def __init__(self, message, offset, expected=(), source=None):
        super().__init__(message)
        self.message = message
        self.offset = offset
        self.expected = frozenset(expected)
        self.source = source

    def __str__(self):
        return f"{self.message} (at offset {self.offset})"

    def diagnostic(self):
        """Render the error with a caret under the offending column."""
        lines = [f"error: {self.message}"]
        if self.source is not None:
            lines.append("  " + self.source)
            lines.append("  " + " " * self.offset + "^")
        if self.expected:
            lines.append("expected one of: " + ", ".join(sorted(self.expected)))
        return "\n".join(lines)


class GoldInvalid(CqlError):
    """The reference query does not parse."""


class GoldExecutionFailed(CqlError):
    """The reference query failed to execute on the corpus."""


class ExecutionError(CqlError):
    pass


class UnknownAttribute(ExecutionError):
    pass


class RegexError(ExecutionError):
    pass


class CorpusTooLarge(ExecutionError):
    pass


class FormatError(CqlError):
    """Malformed vertical corpus, collocation or lexicon file."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class NoEligiblePair(CqlError):
    pass


class ExhaustedInputs(CqlError):
    pass


class SchemaError(CqlError):
    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class DuplicateId(SchemaError):
    pass


class DanglingPredictionId(SchemaError):
    pass

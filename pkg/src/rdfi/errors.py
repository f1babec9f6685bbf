"""Exception hierarchy shared by every layer of the package."""


class RdfiError(Exception):
    """Base class for all errors raised by this package."""


class IllFormedTriple(RdfiError):
    """A triple puts a term in a position its kind may not occupy."""


class LanguageMismatch(RdfiError):
    """A constraint atom does not belong to the database's language."""


class UnknownDatatype(RdfiError):
    """A literal carries a datatype the active language does not know."""


class IllFormedConstant(RdfiError):
    """A constraint constant is malformed, e.g. a degenerate polygon."""


class NotClosed(RdfiError):
    """The language cannot express the negation of an atom."""


class UnsatGlobal(RdfiError):
    """The global constraint has no satisfying valuation."""


class NotPossiblyCompatible(RdfiError):
    """Two conditional mappings were joined although they can never agree."""


class NotAfoFragment(RdfiError):
    """Well-designedness was asked of a pattern that uses UNION."""


class UnsupportedFragment(RdfiError):
    """A query falls outside the fragment an operation supports."""


class EmptyWorldSet(RdfiError):
    """No valuation over the candidate domain satisfies the global constraint."""


class SolverError(RdfiError):
    """A decision procedure could not finish, e.g. no witness was found."""


class ParseError(RdfiError):
    """Malformed input text, located by line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)

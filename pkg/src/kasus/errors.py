class KasusError(Exception):
    """Base class for all data errors raised by the toolkit."""


class ParseError(KasusError, ValueError):
    """A TSV input file could not be parsed.

    ``lineno`` is 1-based; ``path`` may be None for in-memory input.
    """

    def __init__(self, message, path=None, lineno=None):
        self.path = path
        self.lineno = lineno
        where = []
        if path is not None:
            where.append(str(path))
        if lineno is not None:
            where.append(f"line {lineno}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class AlignmentError(KasusError):
    """Decisions and gold labels do not line up."""

    def __init__(self, keys):
        self.keys = sorted(keys)
        shown = ", ".join("(" + ", ".join(k) + ")" for k in self.keys[:10])
        more = f" and {len(self.keys) - 10} more" if len(self.keys) > 10 else ""
        super().__init__(f"gold/decision mismatch for keys: {shown}{more}")

"""Subject/object disambiguation for German clauses from unambiguous corpus evidence."""

__version__ = "0.1.0"

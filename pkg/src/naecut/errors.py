"""Shared exception types."""


class FormatError(ValueError):
    """Malformed input text (DIMACS files, certificates, map files)."""


class BudgetExceeded(RuntimeError):
    """A search ran out of its state budget; the answer is unknown, not "no"."""

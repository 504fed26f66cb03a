"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed textual input (edge lists, formulas, colorings)."""


class ResourceLimitError(RuntimeError):
    """An exhaustive operation was asked to exceed its desk-scale cap."""

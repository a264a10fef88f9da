"""Error type for malformed input files."""


class SchemaError(ValueError):
    """An input file parses but does not match the expected schema."""

"""Exception types shared across the package.

SchemaError covers malformed input files (bad headers, wrong field counts,
schema violations); ContractError covers violations of operation contracts
detected mid-pipeline (dimension mismatches, missing ids, empty inputs).
The CLI maps these onto distinct exit codes.
"""


class SchemaError(ValueError):
    """An input file does not conform to its declared format."""


class ContractError(ValueError):
    """An operation precondition or invariant was violated."""

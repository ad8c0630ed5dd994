"""Parse and validation errors for molecular inputs."""

from __future__ import annotations


class ChemError(ValueError):
    """Base class for all chemistry input errors."""


class ParseError(ChemError):
    """SMILES parse error carrying the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class EmptyInput(ParseError):
    pass


class UnbalancedParenthesis(ParseError):
    pass


class UnclosedRing(ParseError):
    pass


class UnknownElement(ParseError):
    pass


class ValenceViolation(ParseError):
    pass


class DisconnectedInput(ParseError):
    """Dot-disconnected SMILES, rejected unless fragment keeping is enabled."""


class SdfError(ChemError):
    """MOL/SDF block error carrying the 1-based block index."""

    def __init__(self, message: str, block: int):
        super().__init__(f"{message} (block {block})")
        self.block = block


class MalformedCountsLine(SdfError):
    pass


class AtomBlockShort(SdfError):
    pass


class BatchLimitExceeded(ChemError):
    def __init__(self, count: int, limit: int):
        super().__init__(f"batch of {count} molecules exceeds the limit of {limit}")
        self.count = count
        self.limit = limit

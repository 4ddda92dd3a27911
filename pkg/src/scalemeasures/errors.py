"""Exception types shared across the package."""

from __future__ import annotations


class FcaError(Exception):
    """Base class for all domain errors raised by this package."""


class UnknownElementError(FcaError):
    """A name does not belong to the ground set it was used against."""

    def __init__(self, name: str, kind: str = "element"):
        super().__init__(f"unknown {kind}: {name!r}")
        self.name = name
        self.kind = kind


class DuplicateNameError(FcaError):
    """A declared object or attribute list contains a repeated name."""


class NotClosedError(FcaError):
    """An operation required a closed set but received one that is not."""


class InvalidFamilyError(FcaError):
    """A set family is not a closure system over its ground set."""


class BoundExceededError(FcaError):
    """A brute-force enumeration was refused because its input is too large."""


class NotAScaleMeasureError(FcaError):
    """A candidate scale-measure reflects at least one non-extent."""

    def __init__(self, message: str, witness: frozenset[str] | None = None):
        super().__init__(message)
        self.witness = witness


class RejectedCounterexampleError(FcaError):
    """A counterexample answer violated the current query's constraints."""

    def __init__(self, message: str, offending: frozenset[str] = frozenset()):
        super().__init__(message)
        self.offending = offending


class ExplorationPhaseError(FcaError):
    """An exploration answer arrived while no query was pending."""


class ScriptError(FcaError):
    """A scripted expert ran out of steps or met an unexpected query."""


class FormatError(FcaError):
    """An input document does not follow the expected serialization."""


class UndefinedScoreError(FcaError):
    """An importance measure was applied to a concept it is undefined for."""

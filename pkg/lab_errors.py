"""
Workbench Error Classes

This module defines the exception hierarchy shared by every layer of the
workbench, so that the command-line front end can turn any failure into a
clear message and a stable exit code.
"""

from typing import Iterable, Optional


class LabError(Exception):
    """Base class for all workbench errors."""

    def __init__(self, message: str, exit_code: int = 1):
        """
        Initialize workbench error.

        Args:
            message: Human-readable description of the failure
            exit_code: Process exit code the CLI reports for this error
        """
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code


class ConfigurationError(LabError):
    """Raised when a configuration value cannot be parsed or is out of range."""

    def __init__(self, variable: str, value: str, reason: str):
        """
        Initialize configuration error.

        Args:
            variable: Name of the setting (environment variable or flag)
            value: The offending raw value
            reason: Why the value was rejected
        """
        message = f"Invalid value {value!r} for {variable}: {reason}"
        super().__init__(message, exit_code=4)
        self.variable = variable
        self.value = value


class FieldMismatchError(LabError):
    """Raised when scalars or matrices over different fields are combined."""

    def __init__(self, left: str, right: str):
        message = f"Field mismatch: cannot combine values over {left} and {right}"
        super().__init__(message)
        self.left = left
        self.right = right


class DimensionMismatchError(LabError):
    """Raised when shapes, ranks or vertex counts do not agree."""

    def __init__(self, what: str, expected, actual):
        message = f"Dimension mismatch in {what}: expected {expected}, got {actual}"
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class ForeignObjectError(LabError):
    """Raised when an object or morphism does not belong to the given context."""

    def __init__(self, item: str, context: str):
        message = f"{item} does not belong to {context}"
        super().__init__(message)


class NonComposableError(LabError):
    """Raised when the codomain of the first map is not the domain of the second."""

    def __init__(self, detail: str = ""):
        message = "Morphisms are not composable"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class NonLiftableError(LabError):
    """Raised when a morphism cannot be lifted blockwise to the derived category."""

    def __init__(self, summand: str, degrees: Iterable[int]):
        degree_list = ", ".join(str(d) for d in sorted(degrees))
        message = (
            f"Source summand {summand} has components in several orbit degrees "
            f"({degree_list}); only blockwise-homogeneous morphisms can be lifted"
        )
        super().__init__(message)
        self.summand = summand


class ResourceCapExceeded(LabError):
    """Raised when a requested build exceeds the configured resource cap."""

    def __init__(self, resource: str, requested: int, cap: int):
        message = f"{resource} would be {requested}, above the configured cap of {cap}"
        super().__init__(message, exit_code=4)
        self.requested = requested
        self.cap = cap


class BijectionError(LabError):
    """Raised when no arc-to-object bijection matches the crossing data."""

    def __init__(self, rank: int, orbit: int):
        message = (
            f"No bijection between polygon arcs and indecomposables matches the "
            f"compatibility data for rank {rank}, m={orbit}"
        )
        super().__init__(message)


class ModelViolation(LabError):
    """Raised when an internal model assertion fails. Always fatal."""

    def __init__(self, assertion: str):
        message = f"Model violation: {assertion}"
        super().__init__(message, exit_code=1)
        self.assertion = assertion


class IncompatibleParameters(LabError):
    """Raised when parameters cannot be used together."""

    def __init__(self, detail: str):
        super().__init__(f"Incompatible parameters: {detail}", exit_code=4)


class ProfileInsufficient(LabError):
    """Raised when a subcategory is not rigid or strong enough for a check."""

    def __init__(self, profile: str, have: int, need: int):
        message = f"{profile} profile is {have}, but the check needs at least {need}"
        super().__init__(message)
        self.have = have
        self.need = need


class NonContiguousWindow(LabError):
    """Raised when a star-product window is not a contiguous range of shifts."""

    def __init__(self, strata):
        message = f"Star-product window {list(strata)} is not a contiguous increasing range"
        super().__init__(message)


class ModuleActionError(LabError):
    """Raised when a module's action matrices violate the algebra's structure constants."""

    def __init__(self, errors: list):
        # Join all violations into a single message
        message = "Module action inconsistent with the algebra:\n" + "\n".join(
            f"- {error}" for error in errors
        )
        super().__init__(message)
        self.errors = errors


class ExportError(LabError):
    """Raised when a report cannot be written."""

    def __init__(self, path: Optional[str], reason: str):
        target = path if path else "<stdout>"
        super().__init__(f"Cannot export report to {target}: {reason}", exit_code=5)
        self.path = path

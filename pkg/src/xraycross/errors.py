"""Exceptions shared across the package."""

from __future__ import annotations


class XrayError(Exception):
    """Base class for X-ray specific failures."""


class MalformedXray(XrayError):
    """Structurally broken X-ray: bad ids, bad poset, bad vertex data."""


class ValidationFailed(XrayError):
    """An X-ray failed one of the structural validators."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"{len(self.violations)} violation(s): {lines}")


class PropagationError(XrayError):
    """Wall-crossing recursion produced inconsistent values along a cycle."""


class SingularLevel(XrayError):
    """A regular-level formula was asked to evaluate at a critical level."""

"""Exception hierarchy for the vrank pipeline.

Precondition violations on plain values (bad n, empty case list, ...) raise
ValueError; everything environmental or protocol-level gets a class below so
callers can tell them apart.
"""


class VrankError(Exception):
    """Base class for all pipeline errors."""


class ConfigError(VrankError):
    """Invalid or missing configuration."""


class GatewayError(VrankError):
    """Base class for LLM gateway failures."""


class ProviderUnreachableError(GatewayError):
    """Provider did not answer after the retry budget was exhausted."""


class MockScriptError(GatewayError):
    """Mock provider script lacks a response kind or ran out of entries."""


class InsufficientTestCasesError(GatewayError):
    """Model never produced the minimum number of test cases."""


class InterfaceParseError(VrankError):
    """Module interface header does not expose identifiable ports."""


class NoDistinguishingCaseError(VrankError):
    """Clusters cannot be compared case-by-case (a failed cluster has no records)."""


class MissingReferenceTestbenchError(VrankError):
    """Problem carries no ground-truth testbench to judge against."""

"""Exception hierarchy shared by all qgi modules.

The CLI maps these onto process exit codes: InputError -> 2,
ResourceLimitError -> 3, InternalCheckError -> 4.
"""

from __future__ import annotations


class QgiError(Exception):
    """Base class for all qgi errors."""


class InputError(QgiError):
    """Malformed or inconsistent user input (bad graph text, bad flags)."""


class GraphParseError(InputError):
    """A graph serialization could not be decoded."""


class ResourceLimitError(QgiError):
    """A size cap was exceeded (too many vertices/qubits for this operation)."""


class InternalCheckError(QgiError):
    """A runtime self-check failed; indicates a bug, not bad input."""


class CacheError(InputError):
    """A survey cache file is corrupt or fails its checksum."""

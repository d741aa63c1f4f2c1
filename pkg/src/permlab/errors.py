"""Exception hierarchy shared by the library and the CLI.

Each class carries the process exit code the CLI maps it to. Falsification
errors are deliberately distinct from ordinary bugs: they fire when a
computed object contradicts a structural claim the code is built to check,
and they always indicate either a real counterexample or an implementation
defect, never bad user input.
"""

from __future__ import annotations


class PermLabError(Exception):
    exit_code = 1


class UsageError(PermLabError, ValueError):
    """Bad arguments: invalid cut points, size mismatches, unparsable input."""

    exit_code = 1


class ResourceError(PermLabError):
    """A computation would exceed the configured memory or search budget."""

    exit_code = 2


class FalsificationError(PermLabError):
    """A computed object contradicts a structural claim it was checked against."""

    exit_code = 3


class ArtifactIOError(PermLabError):
    """A cache or export file is unreadable, corrupt, or unwritable."""

    exit_code = 4

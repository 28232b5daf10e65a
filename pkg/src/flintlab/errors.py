"""Exception hierarchy shared by every flintlab module.

Three failure families:

* ``UsageError`` -- the caller handed us something malformed (bad flag
  combination, out-of-domain argument, degenerate input).  Maps to CLI
  exit code 1.
* ``PrecisionError`` -- the requested computation could not be certified
  at any precision we are willing to pay for.  Maps to CLI exit code 2.
* ``CheckpointMismatchError`` -- a resume file disagrees with the
  parameters of the run being resumed.  Maps to CLI exit code 3.
"""

from __future__ import annotations


class FlintlabError(Exception):
    """Base class for everything raised deliberately by this package."""


class UsageError(FlintlabError):
    """Caller-side mistake: bad arguments, bad flags, bad files."""


class DomainError(UsageError):
    """An argument lies outside the mathematical domain of the operation."""


class DegenerateInputError(DomainError):
    """Input is technically in-domain but degenerate (e.g. a = n exactly)."""


class PrecisionError(FlintlabError):
    """A result could not be produced at a certifiable accuracy."""


class ResourceLimitError(PrecisionError):
    """Escalation hit the hard precision/work ceiling before deciding."""


class UndecidableError(PrecisionError):
    """Intervals still overlap at the maximum precision we allow."""


class CheckpointMismatchError(FlintlabError):
    """A checkpoint's recorded parameters conflict with the requested run."""

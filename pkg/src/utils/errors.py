"""
Error Types Module

Every failure raised by the library derives from :class:`SepsysError`, which is a
``ValueError`` so callers treating bad input generically keep working.

Report-style operations (``validate``, ``verify_*``) never raise; they return a
list of defect strings instead.

"""
import logging

from src.conf import config

logger = logging.getLogger(__name__)


class SepsysError(ValueError):
    """Base class for every error raised by the library."""


class InvalidStructure(SepsysError):
    """Input does not describe a valid poset or separation system."""


class InvalidInvolutionPoset(InvalidStructure):
    pass


class DocumentError(InvalidStructure):
    """A document could not be parsed into a structure."""


class NotALattice(SepsysError):
    pass


class NotDistributive(SepsysError):
    pass


class SizeLimitExceeded(SepsysError):
    pass


class InvolutionRequired(SepsysError):
    pass


class InputNotSubmodular(SepsysError):
    pass


NotSubmodularInput = InputNotSubmodular


class NotAnInterval(SepsysError):
    pass


class NotASublattice(SepsysError):
    pass


class MissingTopOrBottom(SepsysError):
    pass


class NotASubuniverse(SepsysError):
    pass


class NotSymmetricInterval(SepsysError):
    pass


class InputNotSubmodularOrNotSymmetric(SepsysError):
    pass


class TooSmall(SepsysError):
    pass


class NotSubmodular(SepsysError):
    pass


class ProofPreconditionUnmet(SepsysError):
    """A construction step that is guaranteed to succeed on valid input did not."""


class InternalContradiction(SepsysError):
    """A uniqueness claim failed; the input universe is malformed."""


def check_size(count: int, limit: int, what: str) -> None:
    """
    Raise :class:`SizeLimitExceeded` when ``count`` passes ``limit``.

    The guard is skipped when limits are switched off in the configuration.

    :param count: Number of elements about to be built.
    :type count: int
    :param limit: Configured bound.
    :type limit: int
    :param what: Human-readable name of the structure, used in the message.
    :type what: str
    :raises SizeLimitExceeded: If the bound is exceeded.
    """
    if config.ENFORCE_LIMITS and count > limit:
        logger.error(f"Refusing to build {what}: {count} elements exceed the limit of {limit}")
        raise SizeLimitExceeded(f"{what} would have {count} elements (limit {limit})")

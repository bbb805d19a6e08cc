"""
Exception hierarchy shared by every atcert module.
"""


class AtCertError(Exception):
    """Base class for all errors raised by atcert."""


class InvalidInputError(AtCertError):
    """A file, argument or value could not be interpreted."""


class EmbeddingError(AtCertError):
    """The rotation system does not describe a valid plane embedding."""


class NotTwoConnectedError(AtCertError):
    """An operation that needs a 2-connected plane graph received something else."""


class PreconditionError(AtCertError):
    """An operation was called outside its documented domain."""


class OracleTooLargeError(AtCertError):
    """A brute-force oracle would exceed its configured resource cap."""


class CertificateViolation(AtCertError):
    """A runtime-checked proof step failed; always indicates a bug or a tampered input."""

# Copyright (c) 2026 strokemark developers
# MIT license

"""
Custom errors/exceptions.
"""


class ConfigError(Exception):
    """Could not parse or validate the configurations"""
    pass


class ManifestError(Exception):
    """Errors when build and/or manipulate the embedding manifest"""
    pass


class ContractError(ValueError):
    """An operation was called with inputs violating its preconditions
    (e.g., mismatched image dimensions, point not on the skeleton)"""
    pass


class ImageIOError(OSError):
    """Could not read or write an image file"""
    def __init__(self, path, reason):
        self.path = path
        self.reason = reason
        super().__init__("%s: %s" % (path, reason))


class EmbedError(Exception):
    """
    Base class of the per-glyph outcomes that prevent a bit from being
    embedded.  The document codec catches these and skips the character.
    """
    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


class NonEmbeddable(EmbedError):
    """The glyph offers no usable handle (e.g., no endpoints)"""
    pass


class EmbedInfeasible(EmbedError):
    """The handle exists, but the required movement cannot be realized
    or the result fails the decode verification"""
    pass


class CapacityError(Exception):
    """The document has no embeddable characters"""
    pass

"""Exception hierarchy shared by all quadlab modules."""


class QuadlabError(Exception):
    """Base class for every error raised by the library."""


# geometry
class NonConvex(QuadlabError):
    pass


class DuplicatePoint(QuadlabError):
    pass


class OutsideQuad(QuadlabError):
    pass


class TooFewVertices(QuadlabError):
    pass


# subdivision
class BadM(QuadlabError):
    pass


class OutOfRange(QuadlabError):
    pass


class MixedM(QuadlabError):
    pass


# pattern
class PatternFormatError(QuadlabError):
    """Malformed pattern file."""


class BadHeader(PatternFormatError):
    pass


class RaggedRow(PatternFormatError):
    pass


class BadChar(PatternFormatError):
    pass


class MTooSmall(QuadlabError):
    pass


class NotValidated(QuadlabError):
    """A check that requires a valid labyrinth pattern got an invalid one."""


# iteration
class DepthTooLarge(QuadlabError):
    pass


# analysis
class NotWhite(QuadlabError):
    pass


class NotBlack(QuadlabError):
    pass


class NotTree(QuadlabError):
    pass


class NoEscape(QuadlabError):
    """No black path to the border exists. Never expected for tree patterns."""

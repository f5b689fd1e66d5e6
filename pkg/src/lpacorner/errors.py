"""Exception hierarchy shared by every module."""


class LPAError(Exception):
    """Base class; the CLI maps these to exit status 1."""


class InvalidGraph(LPAError):
    pass


class FormatError(LPAError):
    """Malformed input text or file (CLI exit status 2)."""


class UnknownVertex(LPAError):
    pass


class UnknownEdge(LPAError):
    pass


class NotHereditary(LPAError):
    pass


class NotSubgraph(LPAError):
    pass


class NotASource(LPAError):
    pass


class MoveRNotApplicable(LPAError):
    pass


class LoopAtVertex(LPAError):
    pass


class SinkVertex(LPAError):
    pass


class VertexIsSink(SinkVertex):
    pass


class SourceVertex(LPAError):
    pass


class BadPartition(LPAError):
    pass


class BadSpec(LPAError):
    pass


class UnsupportedMoveKind(LPAError):
    pass


class ZeroClass(LPAError):
    pass


class EmptyGraph(LPAError):
    pass


class EmptySet(LPAError):
    pass


class ClassVanished(LPAError):
    pass


class GraphMismatch(LPAError):
    pass


class NotInCorner(LPAError):
    pass

"""Exception types raised across the package."""


class DeltaTreeError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(DeltaTreeError, ValueError):
    pass


class IndexOutOfRange(DeltaTreeError, IndexError):
    pass


class DuplicateIndex(DeltaTreeError, ValueError):
    pass


class NegativeDelta(DeltaTreeError, ValueError):
    pass


class Disconnected(DeltaTreeError, ValueError):
    def __init__(self, components):
        self.components = [sorted(c) for c in components]
        shown = "; ".join("{" + ", ".join(map(str, c)) + "}" for c in self.components)
        super().__init__(f"graph is disconnected: {len(self.components)} components: {shown}")


class ParameterOutOfRange(DeltaTreeError, ValueError):
    pass


class NonPositiveResolution(DeltaTreeError, ValueError):
    pass


class NotConvex(DeltaTreeError, ValueError):
    pass


class NotATree(DeltaTreeError, ValueError):
    pass


class NotZeroHyperbolic(DeltaTreeError, ValueError):
    def __init__(self, delta, witness, labels=None):
        self.delta = delta
        self.witness = tuple(witness)
        shown = self.witness if labels is None else tuple(labels[i] for i in self.witness)
        super().__init__(f"metric is not 0-hyperbolic: delta={delta!r} at quadruple {shown}")


class NegativeEdge(DeltaTreeError, ValueError):
    pass


class MissingLabel(DeltaTreeError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class DuplicatePoint(DeltaTreeError, ValueError):
    pass


class PointOutsideDisk(DeltaTreeError, ValueError):
    pass


class EmptyFamily(DeltaTreeError, ValueError):
    pass


class BadSize(DeltaTreeError, ValueError):
    pass


class NonPositiveLength(DeltaTreeError, ValueError):
    pass


class ParseError(DeltaTreeError, ValueError):
    """Malformed text input. ``line``/``column`` are 1-based when known."""

    def __init__(self, message, *, line=None, column=None, position=None):
        self.line = line
        self.column = column
        self.position = position
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if position is not None:
            where.append(f"position {position}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)

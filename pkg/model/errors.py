class GameError(Exception):
    """Base class for every failure raised by the game analysis code."""


class DomainError(GameError, ValueError):
    pass


class SizeLimitError(DomainError):
    def __init__(self, operation: str, n: int, limit: int):
        super().__init__('%s supports at most %d players, got %d' % (operation, limit, n))
        self.operation = operation
        self.n = n
        self.limit = limit


class MissingUtilityError(GameError, KeyError):
    def __init__(self, assessor: int, outcome: str):
        super().__init__('no utility for assessor mask %d on outcome %r' % (assessor, outcome))
        self.assessor = assessor
        self.outcome = outcome

    def __str__(self) -> str:
        return self.args[0]


class StructureError(GameError):
    """An additivity identity failed; carries the first violating pair."""

    def __init__(self, structure: str, assessor: int, coalition: int, expected: float, actual: float):
        super().__init__('game is not %s: u_%d(%d) = %r but the decomposition gives %r'
                         % (structure, assessor, coalition, actual, expected))
        self.structure = structure
        self.assessor = assessor
        self.coalition = coalition
        self.expected = expected
        self.actual = actual


class ReductionRejected(GameError):
    def __init__(self, a: int, b: int, value: float):
        super().__init__('competitive contribution c_%d(%d u %d) = %r is not zero' % (a, a, b, value))
        self.a = a
        self.b = b
        self.value = value


class GameDocumentError(GameError):
    def __init__(self, message: str, field: str = '', line: int | None = None):
        location = field
        if line is not None:
            location = '%s (line %d)' % (field, line) if field else 'line %d' % line
        super().__init__('%s: %s' % (location, message) if location else message)
        self.field = field
        self.line = line


class OutputError(GameError):
    def __init__(self, path: str, reason: str):
        super().__init__('cannot write %s: %s' % (path, reason))
        self.path = path

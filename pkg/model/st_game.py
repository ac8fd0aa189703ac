from enum import Enum
from typing import Hashable

from pydantic import BaseModel, ConfigDict, model_validator

from model.errors import DomainError, MissingUtilityError, SizeLimitError
from model.player_set import PlayerSet, check, full_set, nonempty_subsets, submasks, format_set

# V(empty set). No assessor other than the empty one is ever asked about it.
NULL_OUTCOME = None

MAX_ST_PLAYERS = 16


class STGame:
    """
    Subset team game: every assessing subset A has its own utility u_A over
    the outcome V(S) reached by a coalition S.

    Subclasses provide consequence() and assess(); utility() applies the
    empty-set conventions u_empty(x) = 0 and V(empty) = NULL_OUTCOME.
    """
    n: int
    players: list[str]

    def __init__(self, n: int, players: list[str] | None = None, limit: int = MAX_ST_PLAYERS):
        if not 1 <= n <= limit:
            raise SizeLimitError(type(self).__name__, n, limit)
        self.n = n
        self.players = list(players) if players else [str(i + 1) for i in range(n)]
        if len(self.players) != n:
            raise DomainError('expected %d player names, got %d' % (n, len(self.players)))

    @property
    def grand_coalition(self) -> PlayerSet:
        return full_set(self.n)

    def consequence(self, coalition: PlayerSet) -> Hashable:
        raise NotImplementedError

    def assess(self, assessor: PlayerSet, outcome: Hashable) -> float:
        raise NotImplementedError

    def outcome(self, coalition: PlayerSet) -> Hashable:
        check(coalition, self.n, 'coalition')
        if not coalition:
            return NULL_OUTCOME
        return self.consequence(coalition)

    def utility(self, assessor: PlayerSet, coalition: PlayerSet) -> float:
        check(assessor, self.n, 'assessor')
        if not assessor or not coalition:
            return 0.0
        return float(self.assess(assessor, self.outcome(coalition)))

    def describe(self, mask: PlayerSet) -> str:
        return format_set(mask, self.players)


class TabulatedSTGame(STGame):
    """ST game given by an explicit consequence map and a sparse utility table."""
    outcomes: list[str]
    consequences: dict[PlayerSet, str]
    table: dict[tuple[PlayerSet, str], float]

    def __init__(self, n: int, outcomes: list[str], consequences: dict[PlayerSet, str],
                 table: dict[tuple[PlayerSet, str], float], players: list[str] | None = None):
        super().__init__(n, players)
        self.outcomes = list(outcomes)
        self.consequences = dict(consequences)
        self.table = dict(table)
        self._validate()

    def _validate(self):
        declared = set(self.outcomes)
        for coalition in nonempty_subsets(self.n):
            outcome = self.consequences.get(coalition)
            if outcome is None:
                raise DomainError('consequence V%s is missing' % self.describe(coalition))
            if outcome not in declared:
                raise DomainError('V%s = %r is not a declared outcome' % (self.describe(coalition), outcome))
        for (assessor, outcome) in self.table:
            check(assessor, self.n, 'assessor')
            if not assessor:
                raise DomainError('the empty set cannot assess outcomes')
            if outcome not in declared:
                raise DomainError('utility for undeclared outcome %r' % outcome)
        for coalition in nonempty_subsets(self.n):
            outcome = self.consequences[coalition]
            for assessor in submasks(coalition):
                if assessor and (assessor, outcome) not in self.table:
                    raise MissingUtilityError(assessor, outcome)

    def consequence(self, coalition: PlayerSet) -> str:
        return self.consequences[coalition]

    def assess(self, assessor: PlayerSet, outcome: str) -> float:
        try:
            return self.table[(assessor, outcome)]
        except KeyError:
            raise MissingUtilityError(assessor, outcome) from None


class FunctionSTGame(STGame):
    """
    ST game given by callables: subset_utility(A, outcome) and an optional
    consequence(S). Without a consequence map the outcome of S is S itself.
    """

    def __init__(self, n: int, subset_utility, consequence=None, players: list[str] | None = None):
        super().__init__(n, players)
        self._subset_utility = subset_utility
        self._consequence = consequence

    def consequence(self, coalition: PlayerSet) -> Hashable:
        if self._consequence is None:
            return coalition
        return self._consequence(coalition)

    def assess(self, assessor: PlayerSet, outcome: Hashable) -> float:
        return self._subset_utility(assessor, outcome)


class Quadrant(str, Enum):
    I = 'I'
    II = 'II'
    III = 'III'
    IV = 'IV'
    AXIS_A = 'AxisA'
    AXIS_C = 'AxisC'
    ORIGIN = 'Origin'


class CoopPoint(BaseModel):
    """Position of an assessing subset in cooperation space (altruism, competitive)."""
    model_config = ConfigDict(frozen=True)

    altruism: float
    competitive: float
    marginal: float
    subset: int
    grand: bool = False

    @model_validator(mode='after')
    def _check_decomposition(self) -> 'CoopPoint':
        if abs(self.marginal - (self.altruism + self.competitive)) > 1e-9 * max(1.0, abs(self.marginal)):
            raise ValueError('marginal %r != altruism %r + competitive %r'
                             % (self.marginal, self.altruism, self.competitive))
        return self

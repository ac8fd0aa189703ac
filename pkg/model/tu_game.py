import numpy

from model.errors import DomainError, SizeLimitError
from model.player_set import PlayerSet, check, full_set

MAX_TU_PLAYERS = 20

# One payoff share per player, indexed like the player list.
Allocation = numpy.ndarray


class TUGame:
    """Transferable-utility game: a payoff for every coalition, stored by mask."""
    n: int
    values: numpy.ndarray
    players: list[str]

    def __init__(self, n: int, values, players: list[str] | None = None):
        if not 1 <= n <= MAX_TU_PLAYERS:
            raise SizeLimitError('TUGame', n, MAX_TU_PLAYERS)
        table = numpy.asarray(values, dtype=float)
        if table.shape != (1 << n,):
            raise DomainError('payoff table must have %d entries, got %s' % (1 << n, table.shape))
        if table[0] != 0.0:
            raise DomainError('u(empty set) must be 0, got %r' % table[0])
        if not numpy.all(numpy.isfinite(table)):
            raise DomainError('payoff table contains non-finite values')
        table.setflags(write=False)
        self.n = n
        self.values = table
        self.players = players if players else [str(i + 1) for i in range(n)]
        if len(self.players) != n:
            raise DomainError('expected %d player names, got %d' % (n, len(self.players)))

    @classmethod
    def from_function(cls, n: int, payoff, players: list[str] | None = None) -> 'TUGame':
        values = [0.0] + [float(payoff(mask)) for mask in range(1, 1 << n)]
        return cls(n, values, players)

    @property
    def grand_coalition(self) -> PlayerSet:
        return full_set(self.n)

    def value(self, mask: PlayerSet) -> float:
        return float(self.values[check(mask, self.n)])

    def __repr__(self) -> str:
        return 'TUGame(n=%d, u(T)=%r)' % (self.n, self.value(self.grand_coalition))

from typing import Callable

from model.errors import DomainError
from model.player_set import from_indices, size
from model.st_game import TabulatedSTGame
from model.tu_game import TUGame


def prisoners_dilemma() -> TabulatedSTGame:
    """Two prisoners who either team up (outcome AB) or act alone (A, B)."""
    a, b = from_indices([0]), from_indices([1])
    consequences = {a | b: 'AB', a: 'A', b: 'B'}
    table = {
        (a | b, 'AB'): 4.0,
        (a, 'AB'): 2.0,
        (a, 'A'): 1.0,
        (b, 'AB'): 2.0,
        (b, 'B'): 1.0,
    }
    return TabulatedSTGame(2, ['AB', 'A', 'B'], consequences, table, ['A', 'B'])


def glove() -> TUGame:
    """Player 1 holds a left glove, players 2 and 3 a right glove each; a pair is worth 1."""
    return TUGame.from_function(3, lambda mask: 1.0 if mask & 1 and mask & 0b110 else 0.0)


def majority3() -> TUGame:
    return TUGame.from_function(3, lambda mask: 1.0 if size(mask) >= 2 else 0.0)


SCENARIOS: dict[str, Callable[[], TabulatedSTGame | TUGame]] = {
    'pd': prisoners_dilemma,
    'glove': glove,
    'majority3': majority3,
}


def scenario(name: str) -> TabulatedSTGame | TUGame:
    try:
        return SCENARIOS[name]()
    except KeyError:
        raise DomainError('unknown scenario %r, expected one of %s' % (name, ', '.join(SCENARIOS))) from None

import hypothesis.strategies as st
import numpy

from model.player_set import members
from model.st_game import FunctionSTGame
from model.tu_game import TUGame
from util.additivity import BiAdditiveMatrix
from util.game_core import from_unanimity

utilities = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


@st.composite
def tu_games(draw, max_players: int = 7) -> TUGame:
    n = draw(st.integers(min_value=1, max_value=max_players))
    rng = numpy.random.default_rng(draw(seeds))
    values = rng.uniform(-5.0, 10.0, 1 << n)
    values[0] = 0.0
    return TUGame(n, values)


@st.composite
def convex_games(draw, max_players: int = 6) -> TUGame:
    """Nonnegative combinations of unanimity games."""
    n = draw(st.integers(min_value=1, max_value=max_players))
    rng = numpy.random.default_rng(draw(seeds))
    carriers = rng.choice(numpy.arange(1, 1 << n), size=min(6, (1 << n) - 1), replace=False)
    return from_unanimity(n, {int(c): float(rng.uniform(0.0, 3.0)) for c in carriers})


@st.composite
def st_games(draw, max_players: int = 6) -> FunctionSTGame:
    """Unstructured ST game: an independent utility for every (assessor, coalition)."""
    n = draw(st.integers(min_value=1, max_value=max_players))
    rng = numpy.random.default_rng(draw(seeds))
    table = rng.uniform(-5.0, 5.0, (1 << n, 1 << n))
    return FunctionSTGame(n, lambda a, s: float(table[a, s]))


@st.composite
def additive_games(draw, max_players: int = 6, nonnegative: bool = False) -> FunctionSTGame:
    n = draw(st.integers(min_value=1, max_value=max_players))
    rng = numpy.random.default_rng(draw(seeds))
    low = 0.0 if nonnegative else -2.0
    individual = rng.uniform(low, 5.0, (n, 1 << n))
    return FunctionSTGame(n, lambda a, s: float(sum(individual[i, s] for i in members(a))))


@st.composite
def coadditive_games(draw, max_players: int = 6) -> FunctionSTGame:
    n = draw(st.integers(min_value=1, max_value=max_players))
    rng = numpy.random.default_rng(draw(seeds))
    perceived = rng.uniform(-2.0, 5.0, (1 << n, n))
    return FunctionSTGame(n, lambda a, s: float(sum(perceived[a, b] for b in members(s))))


@st.composite
def perception_matrices(draw, max_players: int = 6, nonnegative: bool = False) -> BiAdditiveMatrix:
    n = draw(st.integers(min_value=1, max_value=max_players))
    rng = numpy.random.default_rng(draw(seeds))
    low = 0.0 if nonnegative else -3.0
    # integer entries keep block sums exact
    return BiAdditiveMatrix(rng.integers(int(low), 6, (n, n)).astype(float))


@st.composite
def superadditive_games(draw, max_players: int = 6) -> TUGame:
    """Superadditive cover of random values: u(S) is the best split of S into parts."""
    n = draw(st.integers(min_value=1, max_value=max_players))
    rng = numpy.random.default_rng(draw(seeds))
    raw = rng.uniform(-5.0, 10.0, 1 << n)
    values = [0.0] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        best = raw[s]
        # parts holding the lowest member of S cover every split once
        t = (s - 1) & s
        while t:
            if t & low:
                best = max(best, values[t] + values[s & ~t])
            t = (t - 1) & s
        values[s] = float(best)
    return TUGame(n, values)

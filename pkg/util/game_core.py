import itertools
import logging
import math
from fractions import Fraction

import numpy

from model.analysis_config import AnalysisConfig
from model.errors import DomainError, SizeLimitError
from model.player_set import PlayerSet, check, check_disjoint, full_set, is_subset, singleton, submasks
from model.tu_game import Allocation, TUGame
from util.exact_simplex import FeasibilityTableau

MAX_PERMUTATION_PLAYERS = 8
MAX_CORE_PLAYERS = 10

_logger = logging.getLogger(__name__)


def _mask_sizes(n: int) -> numpy.ndarray:
    masks = numpy.arange(1 << n)
    sizes = numpy.zeros(1 << n, dtype=numpy.int64)
    for bit in range(n):
        sizes += (masks >> bit) & 1
    return sizes


def marginal_contribution(game: TUGame, a: PlayerSet, b: PlayerSet) -> float:
    """m_A(B) = u(A u B) - u(B) for disjoint A, B."""
    check_disjoint(a, b, game.n)
    return game.value(a | b) - game.value(b)


def shapley_value(game: TUGame) -> Allocation:
    """Shapley value weighting each coalition S without i by |S|!(n-|S|-1)!/n!."""
    n = game.n
    u = game.values
    masks = numpy.arange(1 << n)
    sizes = _mask_sizes(n)
    weights = numpy.array([math.factorial(k) * math.factorial(n - k - 1) / math.factorial(n)
                           for k in range(n)] + [0.0])

    phi = numpy.zeros(n)
    for i in range(n):
        without = masks[(masks >> i) & 1 == 0]
        margins = u[without | (1 << i)] - u[without]
        phi[i] = numpy.dot(weights[sizes[without]], margins)
    return phi


def shapley_by_size(game: TUGame) -> Allocation:
    """Shapley value as the average, over coalition sizes, of the mean marginal contribution at that size."""
    n = game.n
    u = game.values
    masks = numpy.arange(1 << n)
    sizes = _mask_sizes(n)

    phi = numpy.zeros(n)
    for i in range(n):
        outside = (masks >> i) & 1 == 0
        total = 0.0
        for k in range(n):
            stratum = masks[outside & (sizes == k)]
            total += numpy.mean(u[stratum | (1 << i)] - u[stratum])
        phi[i] = total / n
    return phi


def shapley_by_permutations(game: TUGame) -> Allocation:
    n = game.n
    if n > MAX_PERMUTATION_PLAYERS:
        raise SizeLimitError('shapley_by_permutations', n, MAX_PERMUTATION_PLAYERS)

    totals = [0.0] * n
    orders = 0
    for order in itertools.permutations(range(n)):
        joined = 0
        for i in order:
            totals[i] += game.value(joined | (1 << i)) - game.value(joined)
            joined |= 1 << i
        orders += 1
    return numpy.array(totals) / orders


def is_convex(game: TUGame, tol: float = AnalysisConfig.tolerance) -> bool:
    """Marginal contributions increase weakly with the coalition: m_i(S u {i}) <= m_i(S u {i, j})."""
    n = game.n
    u = game.values
    masks = numpy.arange(1 << n)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            base = masks[((masks >> i) & 1 == 0) & ((masks >> j) & 1 == 0)]
            smaller = u[base | (1 << i)] - u[base]
            larger = u[base | (1 << i) | (1 << j)] - u[base | (1 << j)]
            if numpy.any(smaller > larger + tol):
                return False
    return True


def is_superadditive(game: TUGame, tol: float = AnalysisConfig.tolerance) -> bool:
    full = full_set(game.n)
    u = game.values
    for a in range(1, full + 1):
        for b in submasks(full & ~a):
            if b and u[a | b] < u[a] + u[b] - tol:
                return False
    return True


def coalition_sums(phi: Allocation) -> numpy.ndarray:
    n = len(phi)
    sums = numpy.zeros(1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + phi[low.bit_length() - 1]
    return sums


def is_efficient(game: TUGame, phi: Allocation, tol: float = AnalysisConfig.tolerance) -> bool:
    return abs(float(numpy.sum(phi)) - game.value(game.grand_coalition)) <= tol


def is_individually_rational(game: TUGame, phi: Allocation, tol: float = AnalysisConfig.tolerance) -> bool:
    return all(phi[i] >= game.value(singleton(i)) - tol for i in range(game.n))


def in_core(game: TUGame, phi: Allocation, tol: float = AnalysisConfig.tolerance) -> bool:
    phi = numpy.asarray(phi, dtype=float)
    if phi.shape != (game.n,):
        raise DomainError('allocation has %d entries for %d players' % (len(phi), game.n))
    if not is_efficient(game, phi, tol):
        return False
    return bool(numpy.all(coalition_sums(phi) >= game.values - tol))


def core_witness(game: TUGame) -> Allocation | None:
    """
    An allocation in the core, or None when the core is empty.

    Solved exactly: with phi_i = u({i}) + y_i the singleton constraints become
    y >= 0 and every other coalition gives sum_S y >= u(S) - sum_S u({i}),
    plus the efficiency equality over T.
    """
    n = game.n
    if n > MAX_CORE_PLAYERS:
        raise SizeLimitError('core_is_nonempty', n, MAX_CORE_PLAYERS)

    u = [Fraction(float(value)) for value in game.values]
    standalone = [u[1 << i] for i in range(n)]
    full = full_set(n)

    rows = []
    for mask in range(1, full):
        if mask & (mask - 1) == 0:
            continue
        coefficients = [1 if mask >> i & 1 else 0 for i in range(n)]
        excess = u[mask] - sum(standalone[i] for i in range(n) if mask >> i & 1)
        rows.append((coefficients, '>=', excess))
    rows.append(([1] * n, '==', u[full] - sum(standalone)))

    solution = FeasibilityTableau(n, rows).solve()
    if solution is None:
        _logger.debug('Core of %r is empty', game)
        return None
    return numpy.array([float(standalone[i] + solution[i]) for i in range(n)])


def core_is_nonempty(game: TUGame) -> bool:
    return core_witness(game) is not None


def unanimity_game(n: int, carrier: PlayerSet) -> TUGame:
    check(carrier, n, 'carrier')
    if not carrier:
        raise DomainError('unanimity game needs a nonempty carrier')
    return TUGame.from_function(n, lambda mask: 1.0 if is_subset(carrier, mask) else 0.0)


def from_unanimity(n: int, coefficients: dict[PlayerSet, float]) -> TUGame:
    """Linear combination of unanimity games; convex when every coefficient is nonnegative."""
    values = numpy.zeros(1 << n)
    masks = numpy.arange(1 << n)
    for carrier, weight in coefficients.items():
        check(carrier, n, 'carrier')
        if not carrier:
            raise DomainError('unanimity game needs a nonempty carrier')
        values += weight * ((masks & carrier) == carrier)
    return TUGame(n, values)

import logging
from typing import Callable, Hashable, Mapping

from model.analysis_config import AnalysisConfig
from model.errors import DomainError, ReductionRejected
from model.player_set import (PlayerSet, check, check_disjoint, complement, disjoint_pairs, disjoint_pairs_within,
                              members, nonempty_subsets, submasks)
from model.st_game import CoopPoint, FunctionSTGame, Quadrant, STGame, TabulatedSTGame
from model.tu_game import TUGame
from util.parallel import ordered_map

_logger = logging.getLogger(__name__)


def total_marginal(g: STGame, a: PlayerSet, b: PlayerSet) -> float:
    """m_A(A u B) = u_{A u B}(A u B) - u_B(B)."""
    _check_assessing_pair(g, a, b)
    return g.utility(a | b, a | b) - g.utility(b, b)


def competitive_contribution(g: STGame, a: PlayerSet, b: PlayerSet) -> float:
    """c_A(A u B) = u_{A u B}(A u B) - u_B(A u B): two assessments of one outcome."""
    _check_assessing_pair(g, a, b)
    return g.utility(a | b, a | b) - g.utility(b, a | b)


def altruistic_contribution(g: STGame, a: PlayerSet, b: PlayerSet) -> float:
    """a_A(A u B) = u_B(A u B) - u_B(B): one assessor, two outcomes."""
    _check_assessing_pair(g, a, b)
    if not b:
        raise DomainError('altruistic contribution needs a nonempty B')
    return g.utility(b, a | b) - g.utility(b, b)


def _check_assessing_pair(g: STGame, a: PlayerSet, b: PlayerSet):
    check_disjoint(a, b, g.n)
    if not a:
        raise DomainError('contributions are defined for a nonempty A')


def coop_point(g: STGame, a: PlayerSet) -> CoopPoint:
    """Cooperation-space point of A for the whole team, with B = T minus A."""
    check(a, g.n, 'A')
    if not a:
        raise DomainError('cooperation points are defined for a nonempty A')
    b = complement(a, g.n)
    if not b:
        value = g.utility(a, a)
        return CoopPoint(altruism=0.0, competitive=value, marginal=value, subset=a, grand=True)

    joint = g.utility(a | b, a | b)
    b_on_joint = g.utility(b, a | b)
    b_alone = g.utility(b, b)
    altruism = b_on_joint - b_alone
    competitive = joint - b_on_joint
    return CoopPoint(altruism=altruism, competitive=competitive, marginal=altruism + competitive, subset=a)


def all_coop_points(g: STGame, include_grand: bool = True, threads: int = 1) -> list[CoopPoint]:
    """One point per nonempty proper subset in ascending mask order, then the flagged grand-coalition point."""
    subsets = list(range(1, g.grand_coalition))
    if include_grand:
        subsets.append(g.grand_coalition)
    return ordered_map(lambda a: coop_point(g, a), subsets, threads)


def classify_quadrant(p: CoopPoint, tol: float = AnalysisConfig.tolerance, closed: bool = False) -> Quadrant:
    """
    Quadrant of (altruism, competitive). Open quadrants report points within
    tol of an axis as AxisA / AxisC / Origin; closed quadrants fold those
    boundaries into the quadrant that the >= 0 predicates accept.
    """
    a, c = p.altruism, p.competitive
    if closed:
        if a >= -tol:
            return Quadrant.I if c >= -tol else Quadrant.IV
        return Quadrant.II if c >= -tol else Quadrant.III

    a_zero = abs(a) <= tol
    c_zero = abs(c) <= tol
    if a_zero and c_zero:
        return Quadrant.ORIGIN
    if c_zero:
        return Quadrant.AXIS_A
    if a_zero:
        return Quadrant.AXIS_C
    if c > 0:
        return Quadrant.I if a > 0 else Quadrant.II
    return Quadrant.IV if a > 0 else Quadrant.III


def is_sensible(g: STGame, tol: float = AnalysisConfig.tolerance) -> bool:
    for a, b in disjoint_pairs(g.n, allow_empty_b=True):
        value = competitive_contribution(g, a, b)
        if value < -tol:
            _logger.debug('Not sensible: c_%s(%s) = %r', g.describe(a), g.describe(a | b), value)
            return False
    return True


def is_cohesive(g: STGame, s: PlayerSet, tol: float = AnalysisConfig.tolerance) -> bool:
    check(s, g.n, 'S')
    if not s:
        raise DomainError('cohesiveness is defined for a nonempty coalition')
    for a, b in disjoint_pairs_within(s):
        value = altruistic_contribution(g, a, b)
        if value < -tol:
            _logger.debug('%s not cohesive: a_%s(%s) = %r', g.describe(s), g.describe(a), g.describe(a | b), value)
            return False
    return True


def is_fully_cooperative(g: STGame, tol: float = AnalysisConfig.tolerance) -> bool:
    # every coalition's pairs are pairs of T
    return is_cohesive(g, g.grand_coalition, tol)


def is_sensible_complementary(g: STGame, tol: float = AnalysisConfig.tolerance) -> bool:
    """Sensibility checked only on the pairs (A, T minus A)."""
    return all(competitive_contribution(g, a, complement(a, g.n)) >= -tol for a in nonempty_subsets(g.n))


def is_fully_cooperative_complementary(g: STGame, tol: float = AnalysisConfig.tolerance) -> bool:
    """Full cooperation checked only on the pairs (A, T minus A)."""
    return all(altruistic_contribution(g, a, complement(a, g.n)) >= -tol for a in range(1, g.grand_coalition))


def is_zero_competition(g: STGame, tol: float = AnalysisConfig.tolerance) -> bool:
    return all(abs(competitive_contribution(g, a, b)) <= tol for a, b in disjoint_pairs(g.n))


def is_zero_altruism(g: STGame, tol: float = AnalysisConfig.tolerance) -> bool:
    return all(abs(altruistic_contribution(g, a, b)) <= tol for a, b in disjoint_pairs(g.n))


def in_st_core(n: int, consequence: Mapping[PlayerSet, Hashable] | Callable[[PlayerSet], Hashable],
               utility: Mapping[tuple[PlayerSet, Hashable], float] | Callable[[PlayerSet, Hashable], float],
               tol: float = AnalysisConfig.tolerance) -> bool:
    """Whether the utility family makes the consequence map a fully-cooperative game."""
    consequence_fn = consequence.__getitem__ if isinstance(consequence, Mapping) else consequence
    if isinstance(utility, Mapping):
        utility_fn = lambda assessor, outcome: utility[(assessor, outcome)]
    else:
        utility_fn = utility
    return is_fully_cooperative(FunctionSTGame(n, utility_fn, consequence_fn), tol)


def from_ntu(n: int, outcomes: list[str], consequence: Mapping[PlayerSet, str],
             utilities: list[Mapping[str, float]], players: list[str] | None = None) -> TabulatedSTGame:
    """Additive ST game u_A(x) = sum of u_a(x) over a in A, from per-player NTU utilities."""
    if len(utilities) != n:
        raise DomainError('expected %d individual utilities, got %d' % (n, len(utilities)))
    for i, individual in enumerate(utilities):
        missing = [x for x in outcomes if x not in individual]
        if missing:
            raise DomainError('player %d has no utility for outcomes %s' % (i, missing))

    table = {}
    for assessor in nonempty_subsets(n):
        for outcome in outcomes:
            table[(assessor, outcome)] = sum(utilities[i][outcome] for i in members(assessor))
    return TabulatedSTGame(n, outcomes, dict(consequence), table, players)


def reduce_to_tu(g: STGame, tol: float = AnalysisConfig.tolerance) -> TUGame:
    """
    The TU game u(S) = u_S(V(S)) when every competitive contribution vanishes.
    Raises ReductionRejected with the first violating pair otherwise.
    """
    for a, b in disjoint_pairs(g.n):
        value = competitive_contribution(g, a, b)
        if abs(value) > tol:
            raise ReductionRejected(a, b, value)
    return TUGame.from_function(g.n, lambda s: g.utility(s, s), g.players)


def stgame_from_tu(game: TUGame) -> STGame:
    """Embed a TU game as an ST game in which every assessor values an outcome equally."""
    return FunctionSTGame(game.n, lambda assessor, coalition: game.value(coalition), players=game.players)


def assessments_agree(g: STGame, tol: float = AnalysisConfig.tolerance) -> bool:
    """u_A(V(S)) is the same for every nonempty A inside S."""
    for s in nonempty_subsets(g.n):
        reference = g.utility(s, s)
        if any(abs(g.utility(a, s) - reference) > tol for a in submasks(s) if a):
            return False
    return True


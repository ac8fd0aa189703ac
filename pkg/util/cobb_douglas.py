import logging
import math
from typing import Hashable, Sequence

import numpy

from model.analysis_config import AnalysisConfig
from model.cobb_douglas_config import CobbDouglasConfig, ContributionProfile, PayoffScheme, ValueFunction
from model.errors import DomainError
from model.player_set import MAX_PLAYERS, PlayerSet, check, check_disjoint, full_set, is_subset, size
from model.st_game import CoopPoint, STGame
from model.sweep_rows import FigureAxes, FrontierCell, PathPoint, PayoffCell, RationalRow, SweepRow
from util.optimizer import find_roots, maximize_on_interval
from util.parallel import ordered_map
from util.st_metrics import altruistic_contribution, classify_quadrant, competitive_contribution, total_marginal

UNBOUNDED = math.inf
DERIVATIVE_STEP = 1e-7
EQUILIBRIUM_GAP = 1e-9

_logger = logging.getLogger(__name__)


def cd_value(theta: float, y: float, z: float) -> float:
    """U(y, z) = y^theta z^(1 - theta), with 0^0 = 1 at the endpoints of theta."""
    if y < 0 or z < 0:
        raise DomainError('Cobb-Douglas arguments must be nonnegative, got (%r, %r)' % (y, z))
    if theta == 1.0:
        return y
    if theta == 0.0:
        return z
    if y == 0.0 or z == 0.0:
        return 0.0
    return y ** theta * z ** (1.0 - theta)


def optimal_split(theta: float, total: float) -> tuple[float, float]:
    """The (y, z) with y + z = total maximizing U; y = theta / (1 - theta) z."""
    return theta * total, (1.0 - theta) * total


def _share(weight: float, value: float, x_a: float, x_s: float, size_a: int, size_s: int) -> float:
    # nothing contributed means nothing produced, f(0) = 0
    if x_s <= 0.0:
        return 0.0
    proportional = x_a / x_s * value
    equal = size_a / size_s * value
    return weight * proportional + (1.0 - weight) * equal


def _check_assessor(profile: ContributionProfile, a: PlayerSet, s: PlayerSet):
    check(a, profile.n, 'A')
    check(s, profile.n, 'S')
    if not s:
        raise DomainError('payoffs are defined for a nonempty coalition')
    if not is_subset(a, s):
        raise DomainError('assessing set %d is not inside coalition %d' % (a, s))


def payoff(scheme: PayoffScheme, cfg: CobbDouglasConfig, profile: ContributionProfile,
           a: PlayerSet, s: PlayerSet, f: ValueFunction | None = None) -> float:
    """Share of f(x_S) paid to A inside S: proportional, equal, or the gamma hybrid of both."""
    _check_assessor(profile, a, s)
    f = f or cfg.value_function()
    x_s = profile.contributed(s)
    return _share(scheme.proportional_weight, f(x_s), profile.contributed(a), x_s, size(a), size(s))


def cd_subset_utility(cfg: CobbDouglasConfig, scheme: PayoffScheme, profile: ContributionProfile,
                      a: PlayerSet, s: PlayerSet, f: ValueFunction | None = None) -> float:
    """u_A(S) = U_theta(payoff of A in S, reserve of A)."""
    _check_assessor(profile, a, s)
    if not a:
        return 0.0
    return cd_value(cfg.theta, payoff(scheme, cfg, profile, a, s, f), profile.reserve(a))


class CobbDouglasGame(STGame):
    """Resource-contribution ST game; the outcome of a coalition is the coalition with its contributions."""
    cfg: CobbDouglasConfig
    scheme: PayoffScheme
    profile: ContributionProfile

    def __init__(self, cfg: CobbDouglasConfig, scheme: PayoffScheme, profile: ContributionProfile,
                 players: list[str] | None = None):
        # evaluated one coalition at a time, never enumerated
        super().__init__(profile.n, players, MAX_PLAYERS)
        self.cfg = cfg
        self.scheme = scheme
        self.profile = profile
        self._f = cfg.value_function()

    def consequence(self, coalition: PlayerSet) -> Hashable:
        return coalition

    def assess(self, assessor: PlayerSet, outcome: PlayerSet) -> float:
        if is_subset(assessor, outcome):
            return cd_subset_utility(self.cfg, self.scheme, self.profile, assessor, outcome, self._f)
        # members outside the coalition are paid nothing but still hold their reserve
        inside = assessor & outcome
        paid = payoff(self.scheme, self.cfg, self.profile, inside, outcome, self._f) if inside else 0.0
        return cd_value(self.cfg.theta, paid, self.profile.reserve(assessor))


def symmetric_profile(size_a: int, size_b: int, xa_avg: float, xb_avg: float) -> ContributionProfile:
    """Players 0..|A|-1 form A and give xa_avg each, the rest form B and give xb_avg; every pool is 1."""
    if size_a < 1 or size_b < 1:
        raise DomainError('team sizes must be at least 1, got |A|=%d |B|=%d' % (size_a, size_b))
    return ContributionProfile(contributions=[xa_avg] * size_a + [xb_avg] * size_b,
                               resources=[1.0] * (size_a + size_b))


def split_masks(size_a: int, size_b: int) -> tuple[PlayerSet, PlayerSet]:
    a = full_set(size_a)
    return a, full_set(size_a + size_b) & ~a


def cd_sensibility_check(cfg: CobbDouglasConfig, scheme: PayoffScheme, profile: ContributionProfile,
                         a: PlayerSet, b: PlayerSet) -> float:
    """c_A(A u B) of the Cobb-Douglas game; nonnegative for every configuration."""
    check_disjoint(a, b, profile.n)
    return competitive_contribution(CobbDouglasGame(cfg, scheme, profile), a, b)


def cd_fully_cooperative(cfg: CobbDouglasConfig, scheme: PayoffScheme, profile: ContributionProfile,
                         a: PlayerSet, b: PlayerSet, tol: float = AnalysisConfig.tolerance) -> bool:
    """B is no worse paid inside A u B than alone: f_B(A u B) >= f_B(B)."""
    check_disjoint(a, b, profile.n)
    if not b:
        raise DomainError('the cooperation condition needs a nonempty B')
    f = cfg.value_function()
    return payoff(scheme, cfg, profile, b, a | b, f) >= payoff(scheme, cfg, profile, b, b, f) - tol


def random_configuration(rng: numpy.random.Generator, alpha: float = 1.0, max_players: int = 6
                         ) -> tuple[CobbDouglasConfig, ContributionProfile, PlayerSet, PlayerSet]:
    """A random game with theta in (0, 1), beta in [0.5, 3] and a random disjoint pair A, B of nonempty sets."""
    n = int(rng.integers(2, max_players + 1))
    cfg = CobbDouglasConfig(theta=float(rng.uniform(0.05, 0.95)), alpha=alpha, beta=float(rng.uniform(0.5, 3.0)))
    resources = rng.uniform(0.1, 2.0, n)
    contributions = resources * rng.uniform(0.0, 1.0, n)
    profile = ContributionProfile(contributions=[float(x) for x in contributions],
                                  resources=[float(r) for r in resources])
    order = [int(i) for i in rng.permutation(n)]
    size_a = int(rng.integers(1, n))
    size_b = int(rng.integers(1, n - size_a + 1))
    a = sum(1 << i for i in order[:size_a])
    b = sum(1 << i for i in order[size_a:size_a + size_b])
    return cfg, profile, a, b


def sensibility_sweep(schemes: Sequence[PayoffScheme], samples: int, rng: numpy.random.Generator,
                      alpha: float = 1.0, tol: float = AnalysisConfig.tolerance) -> list[dict]:
    """
    Per scheme, the smallest c_A(A u B) over random games and the number of
    games where the sign of a_A(A u B) opposes the sign of f_B(A u B) - f_B(B)
    while B keeps a positive reserve.
    """
    rows = []
    for scheme in schemes:
        lowest = math.inf
        disagreements = 0
        for _ in range(samples):
            cfg, profile, a, b = random_configuration(rng, alpha)
            game = CobbDouglasGame(cfg, scheme, profile)
            lowest = min(lowest, competitive_contribution(game, a, b))
            if profile.reserve(b) <= 0.0:
                continue
            f = cfg.value_function()
            gain = payoff(scheme, cfg, profile, b, a | b, f) - payoff(scheme, cfg, profile, b, b, f)
            altruism = altruistic_contribution(game, a, b)
            if (altruism > tol and gain < -tol) or (altruism < -tol and gain > tol):
                disagreements += 1
        _logger.debug('Scheme %s over %d games: min c = %r, %d sign disagreements',
                      scheme.kind.value, samples, lowest, disagreements)
        rows.append({'scheme': scheme.kind.value, 'gamma': scheme.proportional_weight, 'samples': samples,
                     'min_competitive': lowest, 'sign_disagreements': disagreements})
    return rows


def avg_return_condition(f: ValueFunction, x: float, y: float, tol: float = AnalysisConfig.tolerance) -> bool:
    """f(y)/y >= f(x)/x for 0 < x <= y: the rate of return does not fall with contributions."""
    if x <= 0 or y <= 0:
        raise DomainError('average return needs positive contributions, got (%r, %r)' % (x, y))
    if x > y:
        raise DomainError('average return compares x <= y, got x=%r > y=%r' % (x, y))
    return f(y) / y >= f(x) / x - tol


def power_return_increases(beta: float) -> bool:
    """f'(x) >= f(x)/x for f = alpha x^beta reduces to beta >= 1."""
    return beta >= 1.0


def stable_size_bound(gamma: float, r: float, beta: float) -> float:
    """(1 - gamma) / (r^beta - gamma r), or UNBOUNDED when the denominator is not positive."""
    _check_frontier_domain(gamma, r, beta)
    denominator = r ** beta - gamma * r
    if denominator <= 0.0:
        return UNBOUNDED
    return (1.0 - gamma) / denominator


def max_stable_team_size(gamma: float, r: float, beta: float) -> int | float:
    """Largest |S| keeping a member with share r = x_b / x_S from leaving; UNBOUNDED if none limits it."""
    bound = stable_size_bound(gamma, r, beta)
    if bound == UNBOUNDED:
        return UNBOUNDED
    return int(math.floor(bound + 1e-9))


def _check_frontier_domain(gamma: float, r: float, beta: float):
    if not 0.0 < r <= 1.0:
        raise DomainError('contribution share r must lie in (0, 1], got %r' % r)
    if beta <= 1.0:
        raise DomainError('team-size bounds need beta > 1, got %r' % beta)
    if not 0.0 <= gamma <= 1.0:
        raise DomainError('gamma must lie in [0, 1], got %r' % gamma)


def stable_team_size_brute(gamma: float, r: float, beta: float, theta: float = 0.75,
                           limit: int = MAX_PLAYERS, tol: float = AnalysisConfig.tolerance) -> int | float:
    """
    Largest team size whose member b with share r of the total keeps
    a_{S-b}(S) >= 0, checked on the game itself. Player b gives r, the other
    |S|-1 split 1 - r equally. UNBOUNDED when every size up to limit passes.
    """
    _check_frontier_domain(gamma, r, beta)
    cfg = CobbDouglasConfig(theta=theta, gamma=gamma, alpha=1.0, beta=beta)
    scheme = PayoffScheme.hybrid(gamma)
    largest = 1
    for team in range(2, limit + 1):
        others = (1.0 - r) / (team - 1)
        profile = ContributionProfile(contributions=[r] + [others] * (team - 1), resources=[1.0] * team)
        b = 1
        a = full_set(team) & ~b
        if altruistic_contribution(CobbDouglasGame(cfg, scheme, profile), a, b) < -tol:
            return largest
        largest = team
    return UNBOUNDED


def equal_payoff_breaking_size(cfg: CobbDouglasConfig, x_a: float, x_b: float, size_b: int,
                               limit: int = 10_000) -> int | None:
    """
    Smallest |A| at which B, with total x_b over size_b players, would rather
    leave A u B under equal payoffs when A's total contribution stays x_a.
    """
    f = cfg.value_function()
    for size_a in range(1, limit + 1):
        together = size_b / (size_a + size_b) * f(x_a + x_b)
        if together < f(x_b):
            return size_a
    return None


def rational_contribution(cfg: CobbDouglasConfig, scheme: PayoffScheme, profile: ContributionProfile,
                          player: int) -> float:
    """The contribution of player maximizing its own u_a(T) with everyone else fixed."""
    return best_response(cfg, scheme, profile, player)[0]


def best_response(cfg: CobbDouglasConfig, scheme: PayoffScheme, profile: ContributionProfile,
                  player: int) -> tuple[float, float]:
    if not 0 <= player < profile.n:
        raise DomainError('player %d outside 0..%d' % (player, profile.n - 1))
    cap = profile.resources[player]
    if cap <= 0.0:
        raise DomainError('player %d has no resources to contribute' % player)

    f = cfg.value_function()
    others = profile.contributed(full_set(profile.n) & ~(1 << player))
    weight = scheme.proportional_weight
    n = profile.n

    def own_utility(x: float) -> float:
        total = x + others
        return cd_value(cfg.theta, _share(weight, f(total), x, total, 1, n), max(cap - x, 0.0))

    return maximize_on_interval(own_utility, 0.0, cap)


def rational_group_contribution(cfg: CobbDouglasConfig, scheme: PayoffScheme, size_a: int, size_b: int,
                                xb_avg: float) -> tuple[float, float]:
    """
    Common per-member contribution of A maximizing u_A(A u B) when every
    member of B gives xb_avg and every pool is 1. For |A| = 1 this is the
    single player's best response.
    """
    f = cfg.value_function()
    weight = scheme.proportional_weight
    x_b = size_b * xb_avg
    team = size_a + size_b

    def bloc_utility(t: float) -> float:
        x_a = size_a * t
        total = x_a + x_b
        return cd_value(cfg.theta, _share(weight, f(total), x_a, total, size_a, team), size_a * max(1.0 - t, 0.0))

    return maximize_on_interval(bloc_utility, 0.0, 1.0)


def symmetric_rational_contribution(cfg: CobbDouglasConfig, scheme: PayoffScheme, size_a: int, size_b: int,
                                    xb_avg: float) -> tuple[float, float]:
    """
    Common contribution t of A at which no member of A gains by deviating
    alone: one member's best response is t while the other members of A give
    t and every member of B gives xb_avg, every pool being 1. Returns t and
    the member's own utility. Among several such points the one paying the
    members most is taken, ties to the smaller t.
    """
    f = cfg.value_function()
    weight = scheme.proportional_weight
    x_b = size_b * xb_avg
    team = size_a + size_b

    def member_utility(x: float, t: float) -> float:
        total = x + (size_a - 1) * t + x_b
        return cd_value(cfg.theta, _share(weight, f(total), x, total, 1, team), max(1.0 - x, 0.0))

    def marginal(t: float) -> float:
        lo, hi = max(t - DERIVATIVE_STEP, 0.0), min(t + DERIVATIVE_STEP, 1.0)
        return (member_utility(hi, t) - member_utility(lo, t)) / (hi - lo)

    candidates = find_roots(marginal, 0.0, 1.0)
    if marginal(0.0) <= 0.0:
        candidates.insert(0, 0.0)
    if marginal(1.0) >= 0.0:
        candidates.append(1.0)

    gaps = {}
    for t in sorted(set(candidates)):
        _, best = maximize_on_interval(lambda x: member_utility(x, t), 0.0, 1.0)
        gaps[t] = best - member_utility(t, t)
    stable = [t for t, gap in gaps.items() if gap <= EQUILIBRIUM_GAP]
    if not stable:
        t = min(gaps, key=gaps.get)
        _logger.warning('No symmetric equilibrium for gamma=%r |A|=%d |B|=%d xB=%r, closest deviation gain %r at %r',
                        weight, size_a, size_b, xb_avg, gaps[t], t)
        stable = [t]
    t = max(stable, key=lambda x: (member_utility(x, x), -x))
    return t, member_utility(t, t)


def _rational_average(cfg: CobbDouglasConfig, scheme: PayoffScheme, size_a: int, size_b: int, xb_avg: float,
                      bloc: bool) -> float:
    if bloc:
        return rational_group_contribution(cfg, scheme, size_a, size_b, xb_avg)[0]
    return symmetric_rational_contribution(cfg, scheme, size_a, size_b, xb_avg)[0]


def zero_altruism_roots(cfg: CobbDouglasConfig, scheme: PayoffScheme, size_a: int, size_b: int,
                        xb_avg: float) -> list[float]:
    """Average contributions of A where f_B(A u B) = f_B(B), i.e. where a_A(A u B) changes sign."""
    f = cfg.value_function()
    weight = scheme.proportional_weight
    x_b = size_b * xb_avg
    team = size_a + size_b
    alone = f(x_b) if x_b > 0.0 else 0.0

    def gain(t: float) -> float:
        total = size_a * t + x_b
        return _share(weight, f(total), x_b, total, size_b, team) - alone

    return find_roots(gain, 0.0, 1.0)


def zero_altruism_contour(cfg: CobbDouglasConfig, scheme: PayoffScheme, size_a: int, size_b: int,
                          xb_avg: float) -> float | None:
    roots = zero_altruism_roots(cfg, scheme, size_a, size_b, xb_avg)
    return roots[0] if roots else None


def _path_point(cfg: CobbDouglasConfig, scheme: PayoffScheme, size_a: int, size_b: int, xb_avg: float,
                tol: float, bloc: bool) -> PathPoint:
    xa_avg = _rational_average(cfg, scheme, size_a, size_b, xb_avg, bloc)
    game = CobbDouglasGame(cfg, scheme, symmetric_profile(size_a, size_b, xa_avg, xb_avg))
    a, b = split_masks(size_a, size_b)
    altruism = altruistic_contribution(game, a, b)
    competitive = competitive_contribution(game, a, b)
    marginal = total_marginal(game, a, b)
    point = CoopPoint(altruism=altruism, competitive=competitive, marginal=marginal, subset=a)
    return PathPoint(gamma=scheme.proportional_weight, theta=cfg.theta, beta=cfg.beta, sizeA=size_a, sizeB=size_b,
                     xA_avg=xa_avg, xB_avg=xb_avg, payoff=payoff(scheme, cfg, game.profile, a, a | b),
                     utility=game.utility(a, a | b), altruism=altruism, competitive=competitive,
                     marginal=marginal, quadrant=classify_quadrant(point, tol).value)


def cooperation_path(cfg: CobbDouglasConfig, scheme: PayoffScheme, size_a: int, size_b: int, samples: int,
                     threads: int = 1, tol: float = AnalysisConfig.tolerance, bloc: bool = False) -> list[PathPoint]:
    """
    Cooperation-space points of A's rational behaviour as B's average
    contribution runs over [0, 1]. Members of A play the symmetric unilateral
    best response, or the joint optimum of u_A with bloc.
    """
    if samples < 2:
        raise DomainError('a path needs at least 2 samples, got %d' % samples)
    xb_values = [float(x) for x in numpy.linspace(0.0, 1.0, samples)]
    _logger.debug('Tracing path gamma=%r |A|=%d |B|=%d over %d samples',
                  scheme.proportional_weight, size_a, size_b, samples)
    return ordered_map(lambda xb: _path_point(cfg, scheme, size_a, size_b, xb, tol, bloc), xb_values, threads)


def payoff_grid(cfg: CobbDouglasConfig, gammas: Sequence[float], size_a: int, size_b: int,
                xa_values: Sequence[float], xb_values: Sequence[float], threads: int = 1) -> list[PayoffCell]:
    """Payoffs and utilities of A inside A u B over a grid of average contributions, one block per gamma."""
    f = cfg.value_function()
    a, b = split_masks(size_a, size_b)

    def cell(key: tuple[float, float, float]) -> PayoffCell:
        gamma, xa_avg, xb_avg = key
        scheme = PayoffScheme.hybrid(gamma)
        profile = symmetric_profile(size_a, size_b, xa_avg, xb_avg)
        return PayoffCell(gamma=gamma, theta=cfg.theta, beta=cfg.beta, sizeA=size_a, sizeB=size_b,
                          xA_avg=xa_avg, xB_avg=xb_avg, value=f(profile.contributed(a | b)),
                          payoff=payoff(scheme, cfg, profile, a, a | b, f),
                          payoff_B=payoff(scheme, cfg, profile, b, a | b, f),
                          utility=cd_subset_utility(cfg, scheme, profile, a, a | b, f))

    keys = [(gamma, xa, xb) for gamma in gammas for xb in xb_values for xa in xa_values]
    return ordered_map(cell, keys, threads)


def frontier_grid(beta: float, gammas: Sequence[float], r_values: Sequence[float]) -> list[FrontierCell]:
    return [FrontierCell(gamma=gamma, r=r, beta=beta, bound=stable_size_bound(gamma, r, beta),
                         max_team_size=max_stable_team_size(gamma, r, beta))
            for gamma in gammas for r in r_values]


def rational_table(cfg: CobbDouglasConfig, gammas: Sequence[float], size_a: int, size_b: int,
                   xb_values: Sequence[float], threads: int = 1, bloc: bool = False) -> list[RationalRow]:
    """Rational average contribution of A and the zero-altruism contour against B's average contribution."""
    a, b = split_masks(size_a, size_b)

    def row(key: tuple[float, float]) -> RationalRow:
        gamma, xb_avg = key
        scheme = PayoffScheme.hybrid(gamma)
        xa_avg = _rational_average(cfg, scheme, size_a, size_b, xb_avg, bloc)
        game = CobbDouglasGame(cfg, scheme, symmetric_profile(size_a, size_b, xa_avg, xb_avg))
        return RationalRow(gamma=gamma, theta=cfg.theta, beta=cfg.beta, sizeA=size_a, sizeB=size_b,
                           xB_avg=xb_avg, xA_rational=xa_avg, utility=game.utility(a, a | b),
                           xA_zero_altruism=zero_altruism_contour(cfg, scheme, size_a, size_b, xb_avg),
                           altruism=altruistic_contribution(game, a, b))

    keys = [(gamma, xb) for gamma in gammas for xb in xb_values]
    return ordered_map(row, keys, threads)


def grids_for_figures(cfg: CobbDouglasConfig, axes: FigureAxes, threads: int = 1) -> list[SweepRow]:
    if axes.kind == 'frontier':
        return frontier_grid(cfg.beta, axes.gammas, axes.r_values)
    return payoff_grid(cfg, axes.gammas, axes.size_a, axes.size_b, axes.xa_values, axes.xb_values, threads)


def figure_axis(resolution: int, include_zero: bool = True) -> list[float]:
    """Evenly spaced samples of [0, 1]; without zero the axis starts at 1/(resolution-1)."""
    if resolution < 1:
        raise DomainError('resolution must be at least 1, got %d' % resolution)
    if resolution == 1:
        return [0.0] if include_zero else [1.0]
    values = [float(x) for x in numpy.linspace(0.0, 1.0, resolution)]
    return values if include_zero else values[1:]


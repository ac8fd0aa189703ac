import numpy
import pytest
from hypothesis import given, settings

from model.errors import DomainError, MissingUtilityError, ReductionRejected
from model.player_set import disjoint_pairs, members, nonempty_subsets
from model.st_game import CoopPoint, FunctionSTGame, Quadrant, TabulatedSTGame
from tests.strategies import seeds, st_games, tu_games
from util.additivity import is_additive
from util.st_metrics import (all_coop_points, altruistic_contribution, assessments_agree, classify_quadrant,
                             competitive_contribution, coop_point, from_ntu, in_st_core, is_cohesive,
                             is_fully_cooperative, is_fully_cooperative_complementary, is_sensible,
                             is_sensible_complementary, is_zero_altruism, is_zero_competition, reduce_to_tu,
                             stgame_from_tu, total_marginal)

A, B, AB = 0b01, 0b10, 0b11


def test_prisoners_dilemma_metrics(pd_game):
    for a, b in ((A, B), (B, A)):
        assert altruistic_contribution(pd_game, a, b) == 1.0
        assert competitive_contribution(pd_game, a, b) == 2.0
        assert total_marginal(pd_game, a, b) == 3.0
        assert classify_quadrant(coop_point(pd_game, a)) == Quadrant.I


def test_prisoners_dilemma_predicates(pd_game):
    assert is_sensible(pd_game)
    assert is_fully_cooperative(pd_game)
    assert is_cohesive(pd_game, AB)
    assert not is_zero_competition(pd_game)


def test_prisoners_dilemma_does_not_reduce(pd_game):
    with pytest.raises(ReductionRejected) as rejection:
        reduce_to_tu(pd_game)
    assert rejection.value.value == 2.0


def test_grand_coalition_point(pd_game):
    points = all_coop_points(pd_game)
    assert [p.subset for p in points] == [A, B, AB]
    grand = points[-1]
    assert grand.grand
    assert (grand.altruism, grand.competitive, grand.marginal) == (0.0, 4.0, 4.0)
    assert len(all_coop_points(pd_game, include_grand=False)) == 2


def test_empty_sets_follow_conventions(pd_game):
    assert pd_game.utility(0, AB) == 0.0
    assert pd_game.utility(A, 0) == 0.0
    assert competitive_contribution(pd_game, A, 0) == 1.0
    with pytest.raises(DomainError):
        altruistic_contribution(pd_game, A, 0)
    with pytest.raises(DomainError):
        total_marginal(pd_game, 0, B)
    with pytest.raises(DomainError):
        competitive_contribution(pd_game, AB, B)


@given(st_games())
@settings(max_examples=1000, deadline=None)
def test_decomposition_identity(game):
    for a, b in disjoint_pairs(game.n):
        m = total_marginal(game, a, b)
        assert abs(m - (altruistic_contribution(game, a, b) + competitive_contribution(game, a, b))) <= 1e-9


@given(st_games(max_players=4))
@settings(max_examples=200, deadline=None)
def test_full_predicates_imply_complementary(game):
    if is_sensible(game):
        assert is_sensible_complementary(game)
    if is_fully_cooperative(game):
        assert is_fully_cooperative_complementary(game)


@given(st_games(max_players=4))
@settings(max_examples=200, deadline=None)
def test_quadrant_one_matches_complementary_predicates(game):
    points = all_coop_points(game, include_grand=False)
    in_first = all(classify_quadrant(p, closed=True) == Quadrant.I for p in points)
    # the grand coalition's pair (T, empty) is the only complementary pair without a point
    grand_ok = competitive_contribution(game, game.grand_coalition, 0) >= -1e-9
    assert (in_first and grand_ok) == (is_sensible_complementary(game) and is_fully_cooperative_complementary(game))


def test_complementary_predicates_are_weaker():
    # player 2 alone dislikes {1,2}; only the pair ({1}, {2}) ever asks
    def utility(assessor, coalition):
        if assessor == 0b010 and coalition == 0b011:
            return -1.0
        return float(bin(coalition).count('1'))

    game = FunctionSTGame(3, utility)
    assert is_fully_cooperative_complementary(game)
    assert not is_fully_cooperative(game)


def test_quadrant_axes():
    def point(a, c):
        return CoopPoint(altruism=a, competitive=c, marginal=a + c, subset=1)

    assert classify_quadrant(point(0.0, 0.0)) == Quadrant.ORIGIN
    assert classify_quadrant(point(1.0, 0.0)) == Quadrant.AXIS_A
    assert classify_quadrant(point(0.0, -1.0)) == Quadrant.AXIS_C
    assert classify_quadrant(point(-1.0, 1.0)) == Quadrant.II
    assert classify_quadrant(point(-1.0, -1.0)) == Quadrant.III
    assert classify_quadrant(point(1.0, -1.0)) == Quadrant.IV
    assert classify_quadrant(point(0.0, 1.0), closed=True) == Quadrant.I
    assert classify_quadrant(point(-1.0, 0.0), closed=True) == Quadrant.II


def test_coop_point_rejects_broken_decomposition():
    with pytest.raises(ValueError):
        CoopPoint(altruism=1.0, competitive=1.0, marginal=3.0, subset=1)


@given(tu_games(max_players=5))
@settings(max_examples=50, deadline=None)
def test_tu_embedding_reduces_back(game):
    embedded = stgame_from_tu(game)
    assert is_zero_competition(embedded)
    assert assessments_agree(embedded)
    assert list(reduce_to_tu(embedded).values) == list(game.values)


def test_zero_altruism_game():
    game = FunctionSTGame(2, lambda assessor, coalition: float(bin(assessor & coalition).count('1')))
    assert is_zero_altruism(game)
    assert not is_zero_competition(game)


def test_ntu_import_sums_individuals():
    game = from_ntu(2, ['x', 'y'], {A: 'x', B: 'x', AB: 'y'}, [{'x': 1.0, 'y': 3.0}, {'x': 2.0, 'y': 0.5}])
    assert game.utility(AB, AB) == 3.5
    assert game.utility(A, B) == 1.0
    assert is_sensible(game)


@given(seeds)
@settings(max_examples=200, deadline=None)
def test_ntu_import_is_additive(seed):
    rng = numpy.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    outcomes = ['x%d' % k for k in range(int(rng.integers(1, 5)))]
    consequence = {s: outcomes[int(rng.integers(len(outcomes)))] for s in nonempty_subsets(n)}
    utilities = [{x: float(rng.uniform(-5.0, 5.0)) for x in outcomes} for _ in range(n)]
    game = from_ntu(n, outcomes, consequence, utilities)

    assert is_additive(game)
    for a, b in disjoint_pairs(n):
        reached = consequence[a | b]
        expected = sum(utilities[i][reached] for i in members(a))
        assert competitive_contribution(game, a, b) == pytest.approx(expected, abs=1e-9)


def test_ntu_import_needs_every_outcome():
    with pytest.raises(DomainError):
        from_ntu(2, ['x', 'y'], {A: 'x', B: 'x', AB: 'y'}, [{'x': 1.0}, {'x': 2.0, 'y': 0.5}])


def test_tabulated_game_totality(pd_game):
    table = dict(pd_game.table)
    del table[(A, 'AB')]
    with pytest.raises(MissingUtilityError):
        TabulatedSTGame(2, pd_game.outcomes, pd_game.consequences, table, pd_game.players)
    with pytest.raises(MissingUtilityError):
        pd_game.utility(A, B)


def test_st_core_membership_with_shared_outcome():
    n = 2
    consequence = {A: 'solo', B: 'solo', AB: 'team'}
    utility = {(A, 'solo'): 1.0, (B, 'solo'): 1.0, (AB, 'solo'): 2.0,
               (A, 'team'): 2.0, (B, 'team'): 0.5, (AB, 'team'): 3.0}
    assert not in_st_core(n, consequence, utility)
    utility[(B, 'team')] = 1.5
    assert in_st_core(n, consequence, utility)
    assert in_st_core(n, lambda s: s, lambda assessor, outcome: float(bin(outcome).count('1')))

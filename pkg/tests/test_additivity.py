import numpy
import pytest
from hypothesis import given, settings

from model.errors import MissingUtilityError
from model.player_set import disjoint_pairs, members, nonempty_subsets, submasks
from model.st_game import FunctionSTGame
from tests.strategies import additive_games, coadditive_games, perception_matrices
from util.additivity import (BiAdditiveMatrix, additive_predicates, coadditive_predicates, export_graph,
                             extract_matrix, fast_metrics, from_matrix, is_additive, is_biadditive, is_coadditive,
                             structure_name)
from util.st_metrics import (altruistic_contribution, competitive_contribution, is_fully_cooperative, is_sensible,
                             total_marginal)


def test_prisoners_dilemma_is_additive_only(pd_game):
    assert is_additive(pd_game)
    assert not is_coadditive(pd_game)
    assert structure_name(pd_game) == 'additive'
    # co-additivity needs u_A(V({B})), which the table leaves out
    with pytest.raises(MissingUtilityError):
        extract_matrix(pd_game)


@given(additive_games())
@settings(max_examples=500, deadline=None)
def test_additive_predicates_match_generic(game):
    assert is_additive(game)
    report = additive_predicates(game)
    assert report.sensible == is_sensible(game)
    assert report.fully_cooperative == is_fully_cooperative(game)
    if report.termwise_condition:
        assert report.fully_cooperative


@given(additive_games(nonnegative=True))
@settings(max_examples=100, deadline=None)
def test_positive_individual_utilities_are_sensible(game):
    assert additive_predicates(game).sensible
    assert is_sensible(game)


@given(coadditive_games())
@settings(max_examples=500, deadline=None)
def test_coadditive_predicates_match_generic(game):
    assert is_coadditive(game)
    report = coadditive_predicates(game)
    assert report.sensible == is_sensible(game)
    assert report.fully_cooperative == is_fully_cooperative(game)
    if report.termwise_condition:
        assert report.sensible


def test_termwise_condition_is_not_necessary():
    # player 2 values the grand coalition below {2,3}; player 3 more than makes up for it
    def utility(assessor, coalition):
        return sum(19.0 if (i, coalition) == (1, 0b111) else 10.0 * bin(coalition).count('1')
                   for i in members(assessor))

    game = FunctionSTGame(3, utility)
    report = additive_predicates(game)
    assert report.fully_cooperative
    assert is_fully_cooperative(game)
    assert not report.termwise_condition


@given(perception_matrices())
@settings(max_examples=500, deadline=None)
def test_fast_metrics_match_generic(matrix):
    game = from_matrix(matrix)
    for a, b in disjoint_pairs(matrix.n):
        fast = fast_metrics(matrix, a, b)
        assert abs(fast.altruism - altruistic_contribution(game, a, b)) <= 1e-9
        assert abs(fast.competitive - competitive_contribution(game, a, b)) <= 1e-9
        assert abs(fast.marginal - total_marginal(game, a, b)) <= 1e-9


@given(perception_matrices())
@settings(max_examples=200, deadline=None)
def test_matrix_round_trip(matrix):
    game = from_matrix(matrix)
    assert is_biadditive(game)
    numpy.testing.assert_array_equal(extract_matrix(game).matrix, matrix.matrix)


@given(perception_matrices(nonnegative=True))
@settings(max_examples=200, deadline=None)
def test_cooperative_nonnegative_diagonal_is_sensible(matrix):
    game = from_matrix(matrix)
    assert is_fully_cooperative(game)
    assert is_sensible(game)


def test_negative_cross_perception_breaks_cooperation():
    matrix = BiAdditiveMatrix([[1.0, 1.0], [-1.0, 1.0]])
    assert not is_fully_cooperative(from_matrix(matrix))


@given(perception_matrices())
@settings(max_examples=200, deadline=None)
def test_graph_weights_are_metrics(matrix):
    graph = export_graph(matrix)
    for a, b in disjoint_pairs(matrix.n):
        if a | b != (1 << matrix.n) - 1:
            continue
        point = fast_metrics(matrix, a, b)
        assert graph.weight_leaving(a) == pytest.approx(point.altruism, abs=1e-9)
        assert graph.weight_arriving(a) == pytest.approx(point.competitive, abs=1e-9)


def test_identity_matrix_graph_has_self_loops():
    graph = export_graph(BiAdditiveMatrix(numpy.eye(3)))
    assert graph.edges == [(0, 0, 1.0), (1, 1, 1.0), (2, 2, 1.0)]


def test_edge_orientation():
    # matrix[y][x] labels x -> y
    graph = export_graph(BiAdditiveMatrix([[0.0, 5.0], [0.0, 0.0]]))
    assert graph.edges == [(1, 0, 5.0)]


@given(additive_games(max_players=4))
@settings(max_examples=50, deadline=None)
def test_detectors_monotone_in_tolerance(game):
    assert is_additive(game, 1e-9)
    assert is_additive(game, 1e-3)


def test_detected_structure_names():
    game = from_matrix(BiAdditiveMatrix([[1.0, 2.0], [3.0, 4.0]]))
    assert structure_name(game) == 'bi-additive'
    assert extract_matrix(game).block(0b01, 0b11) == 3.0
    for s in nonempty_subsets(2):
        for a in submasks(s):
            if a:
                assert game.utility(a, s) == extract_matrix(game).block(a, s)

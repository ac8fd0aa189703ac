import logging

import numpy
from pydantic import BaseModel

from model.analysis_config import AnalysisConfig
from model.errors import DomainError, MissingUtilityError, StructureError
from model.player_set import PlayerSet, check_disjoint, format_set, members, nonempty_subsets, singleton, submasks
from model.st_game import CoopPoint, STGame, TabulatedSTGame

_logger = logging.getLogger(__name__)


class BiAdditiveMatrix:
    """Perception matrix: matrix[a][b] is the value player a sees in player b, u_a({b})."""
    n: int
    matrix: numpy.ndarray
    players: list[str]

    def __init__(self, matrix, players: list[str] | None = None):
        matrix = numpy.array(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
            raise DomainError('perception matrix must be square and nonempty, got shape %s' % (matrix.shape,))
        matrix.setflags(write=False)
        self.n = matrix.shape[0]
        self.matrix = matrix
        self.players = players if players else [str(i + 1) for i in range(self.n)]

    def block(self, assessors: PlayerSet, coalition: PlayerSet) -> float:
        rows, columns = members(assessors), members(coalition)
        if not rows or not columns:
            return 0.0
        return float(self.matrix[numpy.ix_(rows, columns)].sum())


class PerceptionGraph:
    """
    Weighted digraph of a perception matrix. The edge x -> y carries
    matrix[y][x], the value x provides as perceived by y, so the altruistic
    contribution of A is the weight leaving A and its competitive
    contribution the weight arriving in A. Zero entries have no edge.
    """
    vertices: list[str]
    edges: list[tuple[int, int, float]]

    def __init__(self, vertices: list[str], edges: list[tuple[int, int, float]]):
        self.vertices = vertices
        self.edges = edges

    def weight_leaving(self, a: PlayerSet) -> float:
        return sum(w for x, y, w in self.edges if a >> x & 1 and not a >> y & 1)

    def weight_arriving(self, a: PlayerSet) -> float:
        return sum(w for x, y, w in self.edges if a >> y & 1)


class StructureReport(BaseModel):
    structure: str
    sensible: bool
    fully_cooperative: bool
    # the per-player inequality of the structure theorem; sufficient, not necessary
    termwise_condition: bool


def coalition_outcome(coalition: PlayerSet, players: list[str]) -> str:
    return 'V' + format_set(coalition, players)


def _individual(g: STGame, player: int, coalition: PlayerSet) -> float:
    return g.utility(singleton(player), coalition)


def _additive_violation(g: STGame, tol: float) -> tuple[PlayerSet, PlayerSet, float, float] | None:
    for s in nonempty_subsets(g.n):
        for a in submasks(s):
            if a & (a - 1) == 0:
                continue
            expected = sum(_individual(g, i, s) for i in members(a))
            actual = g.utility(a, s)
            if abs(actual - expected) > tol:
                return a, s, expected, actual
    return None


def _coadditive_violation(g: STGame, tol: float) -> tuple[PlayerSet, PlayerSet, float, float] | None:
    for s in nonempty_subsets(g.n):
        if s & (s - 1) == 0:
            continue
        for a in submasks(s):
            if not a:
                continue
            expected = sum(g.utility(a, singleton(b)) for b in members(s))
            actual = g.utility(a, s)
            if abs(actual - expected) > tol:
                return a, s, expected, actual
    return None


def is_additive(g: STGame, tol: float = AnalysisConfig.tolerance) -> bool:
    return _additive_violation(g, tol) is None


def is_coadditive(g: STGame, tol: float = AnalysisConfig.tolerance) -> bool:
    """u_A(S) = sum over b in S of u_A({b}), for all A inside S. Missing cross assessments fail the check."""
    try:
        return _coadditive_violation(g, tol) is None
    except MissingUtilityError as exception:
        _logger.debug('Co-additivity undetermined: %s', exception)
        return False


def is_biadditive(g: STGame, tol: float = AnalysisConfig.tolerance) -> bool:
    return is_additive(g, tol) and is_coadditive(g, tol)


def structure_name(g: STGame, tol: float = AnalysisConfig.tolerance) -> str:
    additive = is_additive(g, tol)
    coadditive = is_coadditive(g, tol)
    if additive and coadditive:
        return 'bi-additive'
    if additive:
        return 'additive'
    if coadditive:
        return 'co-additive'
    return 'none'


def extract_matrix(g: STGame, tol: float = AnalysisConfig.tolerance) -> BiAdditiveMatrix:
    """Read matrix[a][b] = u_a({b}) from singleton assessments of a bi-additive game."""
    for structure, finder in (('additive', _additive_violation), ('co-additive', _coadditive_violation)):
        violation = finder(g, tol)
        if violation is not None:
            raise StructureError(structure, *violation)

    matrix = numpy.array([[g.utility(singleton(a), singleton(b)) for b in range(g.n)] for a in range(g.n)])
    extracted = BiAdditiveMatrix(matrix, g.players)
    for s in nonempty_subsets(g.n):
        for a in submasks(s):
            if a and abs(extracted.block(a, s) - g.utility(a, s)) > tol:
                raise StructureError('bi-additive', a, s, extracted.block(a, s), g.utility(a, s))
    return extracted


def from_matrix(matrix: BiAdditiveMatrix) -> TabulatedSTGame:
    """Bi-additive game u_A(S) = sum of matrix[a][b] over a in A, b in S; outcome of S is named after S."""
    n = matrix.n
    outcomes = [coalition_outcome(s, matrix.players) for s in nonempty_subsets(n)]
    consequences = {s: outcomes[s - 1] for s in nonempty_subsets(n)}
    table = {(a, consequences[s]): matrix.block(a, s) for a in nonempty_subsets(n) for s in nonempty_subsets(n)}
    return TabulatedSTGame(n, outcomes, consequences, table, matrix.players)


def fast_metrics(matrix: BiAdditiveMatrix, a: PlayerSet, b: PlayerSet) -> CoopPoint:
    """c_A(A u B) = u_A(A u B) and a_A(A u B) = u_B(A), straight from the matrix."""
    check_disjoint(a, b, matrix.n)
    competitive = matrix.block(a, a | b)
    altruism = matrix.block(b, a)
    return CoopPoint(altruism=altruism, competitive=competitive, marginal=altruism + competitive, subset=a)


def additive_predicates(g: STGame, tol: float = AnalysisConfig.tolerance) -> StructureReport:
    """
    Predicates of an additive game from individual utilities:
    sensible iff u_a(S) >= 0 for every a in S; altruism of A is
    sum over b in B of u_b(A u B) - u_b(B). The termwise condition
    u_b(A u B) >= u_b(B) for every b implies full cooperation.
    """
    violation = _additive_violation(g, tol)
    if violation is not None:
        raise StructureError('additive', *violation)

    sensible = all(_individual(g, i, s) >= -tol for s in nonempty_subsets(g.n) for i in members(s))
    fully_cooperative = True
    termwise = True
    for s in nonempty_subsets(g.n):
        for b in submasks(s):
            if not b or b == s:
                continue
            gains = [_individual(g, i, s) - _individual(g, i, b) for i in members(b)]
            if sum(gains) < -tol:
                fully_cooperative = False
            if any(gain < -tol for gain in gains):
                termwise = False
    return StructureReport(structure='additive', sensible=sensible, fully_cooperative=fully_cooperative,
                           termwise_condition=termwise)


def coadditive_predicates(g: STGame, tol: float = AnalysisConfig.tolerance) -> StructureReport:
    """
    Predicates of a co-additive game from perceived member values:
    fully-cooperative iff u_B({a}) >= 0 for every a outside B; competitive
    contribution of A is the sum over b in A u B of u_{A u B}({b}) - u_B({b}).
    The termwise condition u_{A u B}({b}) >= u_B({b}) implies sensibility.
    """
    violation = _coadditive_violation(g, tol)
    if violation is not None:
        raise StructureError('co-additive', *violation)

    full = g.grand_coalition
    fully_cooperative = all(g.utility(b, singleton(i)) >= -tol
                            for b in range(1, full) for i in members(full & ~b))
    sensible = True
    termwise = True
    for s in nonempty_subsets(g.n):
        for b in submasks(s):
            if b == s:
                continue
            gains = [g.utility(s, singleton(i)) - g.utility(b, singleton(i)) for i in members(s)]
            if sum(gains) < -tol:
                sensible = False
            if any(gain < -tol for gain in gains):
                termwise = False
    return StructureReport(structure='co-additive', sensible=sensible, fully_cooperative=fully_cooperative,
                           termwise_condition=termwise)


def export_graph(matrix: BiAdditiveMatrix) -> PerceptionGraph:
    edges = [(x, y, float(matrix.matrix[y][x]))
             for x in range(matrix.n) for y in range(matrix.n) if matrix.matrix[y][x] != 0.0]
    return PerceptionGraph(list(matrix.players), edges)

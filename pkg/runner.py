import argparse
import logging
import sys

import numpy

from model.analysis_config import AnalysisConfig
from model.cobb_douglas_config import CobbDouglasConfig, PayoffScheme
from model.errors import DomainError, GameError, ReductionRejected
from model.st_game import STGame
from model.sweep_rows import FrontierCell, PathPoint, PayoffCell, RationalRow
from model.tu_game import TUGame
from util.additivity import (additive_predicates, coadditive_predicates, export_graph, extract_matrix,
                             structure_name)
from util.cobb_douglas import (cooperation_path, figure_axis, frontier_grid, payoff_grid, rational_table,
                               sensibility_sweep)
from util.environment_loader import load_analysis_config
from util.game_core import (MAX_CORE_PLAYERS, MAX_PERMUTATION_PLAYERS, core_witness, in_core, is_convex, is_efficient,
                            is_individually_rational, is_superadditive, shapley_by_permutations, shapley_value)
from util.game_io import load_game, save_game, write_edges, write_table
from util.scenarios import SCENARIOS, scenario
from util.st_metrics import (all_coop_points, classify_quadrant, in_st_core, is_fully_cooperative, is_sensible,
                             reduce_to_tu)

COOP_COLUMNS = ['subset', 'altruism', 'competitive', 'marginal', 'quadrant']
SHAPLEY_COLUMNS = ['player', 'shapley', 'standalone']
SENSIBILITY_COLUMNS = ['scheme', 'gamma', 'samples', 'min_competitive', 'sign_disagreements']


def unit_interval(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError('%s is outside [0, 1]' % text)
    return value


def positive_float(text: str) -> float:
    value = float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError('%s is not positive' % text)
    return value


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError('%s is not a positive integer' % text)
    return value


def gamma_list(text: str) -> list[float]:
    return [unit_interval(part) for part in text.split(',') if part.strip()]


class Runner:
    _configs: AnalysisConfig
    _parser: argparse.ArgumentParser
    _logger: logging.Logger

    def __init__(self):
        self._logger = logging.getLogger(__name__)
        self._configs = load_analysis_config()
        self._parser = self._build_parser()

    def _build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog='subset-team-games',
                                         description='Cooperative and subset team game analysis.')
        parser.add_argument('--tolerance', type=positive_float, default=self._configs.tolerance)
        parser.add_argument('--threads', type=positive_int, default=self._configs.threads)
        parser.add_argument('--seed', type=int, default=self._configs.seed)
        commands = parser.add_subparsers(dest='command', required=True)

        metrics = commands.add_parser('metrics', help='cooperation-space point of every subset')
        metrics.add_argument('game')
        metrics.add_argument('-o', '--output', default='metrics.csv')
        metrics.add_argument('--include-grand', action='store_true')
        metrics.add_argument('--closed', action='store_true', help='fold axis points into closed quadrants')

        classify = commands.add_parser('classify', help='game-class predicates and solution concepts')
        classify.add_argument('game')

        shapley = commands.add_parser('shapley', help='Shapley value of a TU game')
        shapley.add_argument('game')
        shapley.add_argument('-o', '--output', default='shapley.csv')

        core = commands.add_parser('core', help='core nonemptiness with a witness allocation')
        core.add_argument('game')
        core.add_argument('-o', '--output', default='core.csv')

        reduce = commands.add_parser('reduce-tu', help='collapse a zero-competition ST game to a TU game')
        reduce.add_argument('game')
        reduce.add_argument('-o', '--output', default='reduced.game')

        graph = commands.add_parser('graph', help='perception graph of a bi-additive game')
        graph.add_argument('game')
        graph.add_argument('-o', '--output', default='perception.edges')

        scenario_parser = commands.add_parser('scenario', help='write a built-in game and classify it')
        scenario_parser.add_argument('name', choices=sorted(SCENARIOS))
        scenario_parser.add_argument('-o', '--output')

        cobb = commands.add_parser('cobb', help='Cobb-Douglas resource-contribution game sweeps')
        cobb_commands = cobb.add_subparsers(dest='cobb_command', required=True)
        for name, help_text in (('sweep', 'payoff and utility grids'),
                                ('path', 'cooperation-space paths of rational behaviour'),
                                ('frontier', 'maximum stable team sizes'),
                                ('rational', 'rational contributions and zero-altruism contours'),
                                ('check', 'random sensibility and cooperation sign check')):
            sub = cobb_commands.add_parser(name, help=help_text)
            sub.add_argument('--config', help='.game document with a cobb_douglas block')
            sub.add_argument('--theta', type=unit_interval)
            sub.add_argument('--alpha', type=positive_float)
            sub.add_argument('--beta', type=float)
            sub.add_argument('--gammas', '--gamma', dest='gammas', type=gamma_list)
            sub.add_argument('--sizeA', type=positive_int, default=2)
            sub.add_argument('--sizeB', type=positive_int, default=10)
            sub.add_argument('--resolution', type=positive_int, default=self._configs.resolution)
            sub.add_argument('--samples', type=positive_int)
            sub.add_argument('-o', '--output', default='cobb-%s.csv' % name)
            if name in ('path', 'rational'):
                sub.add_argument('--bloc', action='store_true',
                                 help='members of A maximize u_A jointly instead of best-responding alone')
        return parser

    def run(self, argv: list[str]) -> int:
        args = self._parser.parse_args(argv)
        handler = getattr(self, '_run_' + args.command.replace('-', '_'))
        self._logger.info('Running "%s" ...', args.command)
        try:
            handler(args)
        except GameError as exception:
            self._logger.error('Occur error in "%s": %s', args.command, repr(exception))
            print('error: %s' % exception, file=sys.stderr)
            return 1
        return 0

    def _load_st_game(self, path: str) -> STGame:
        game = load_game(path)
        if not isinstance(game, STGame):
            raise DomainError('%s does not hold a subset team game' % path)
        return game

    def _load_tu_game(self, path: str, tol: float) -> TUGame:
        game = load_game(path)
        if isinstance(game, STGame):
            game = reduce_to_tu(game, tol)
        if not isinstance(game, TUGame):
            raise DomainError('%s does not hold a TU game' % path)
        return game

    def _run_metrics(self, args):
        game = self._load_st_game(args.game)
        points = all_coop_points(game, include_grand=args.include_grand, threads=args.threads)
        rows = [{'subset': game.describe(point.subset), 'altruism': point.altruism,
                 'competitive': point.competitive, 'marginal': point.marginal,
                 'quadrant': classify_quadrant(point, args.tolerance, args.closed)} for point in points]
        write_table(rows, COOP_COLUMNS, args.output)
        print('%d cooperation points written to %s' % (len(rows), args.output))

    def _run_classify(self, args):
        self._classify(load_game(args.game), args.tolerance)

    def _classify(self, game, tol: float):
        if isinstance(game, TUGame):
            self._classify_tu(game, tol)
        elif isinstance(game, STGame):
            self._classify_st(game, tol)
        else:
            raise DomainError('classify needs an ST or TU game, got a %s block' % type(game).__name__)

    def _classify_st(self, game: STGame, tol: float):
        sensible = is_sensible(game, tol)
        cooperative = is_fully_cooperative(game, tol)
        structure = structure_name(game, tol)
        print('players: %s' % ', '.join(game.players))
        print('sensible: %s' % _flag(sensible))
        print('fully-cooperative: %s' % _flag(cooperative))
        print('in ST-core: %s' % _flag(in_st_core(game.n, game.consequence, game.assess, tol)))
        print('structure: %s' % structure)
        if structure in ('additive', 'bi-additive'):
            report = additive_predicates(game, tol)
            print('every player weakly gains from joiners: %s' % _flag(report.termwise_condition))
        if structure in ('co-additive', 'bi-additive'):
            report = coadditive_predicates(game, tol)
            print('every member valued weakly more by larger assessors: %s' % _flag(report.termwise_condition))
        if structure == 'bi-additive':
            matrix = extract_matrix(game, tol)
            print('perception matrix:')
            for name, row in zip(matrix.players, matrix.matrix):
                print('  %s: %s' % (name, ' '.join(repr(float(value)) for value in row)))
        try:
            tu = reduce_to_tu(game, tol)
            print('reduces to TU: yes')
            self._classify_tu(tu, tol)
        except ReductionRejected as rejection:
            print('reduces to TU: no (c_%s(%s) = %r)'
                  % (game.describe(rejection.a), game.describe(rejection.a | rejection.b), rejection.value))

    def _classify_tu(self, game: TUGame, tol: float):
        phi = shapley_value(game)
        witness = core_witness(game) if game.n <= MAX_CORE_PLAYERS else None
        print('players: %s' % ', '.join(game.players))
        print('convex: %s' % _flag(is_convex(game, tol)))
        print('superadditive: %s' % _flag(is_superadditive(game, tol)))
        print('shapley: (%s)' % ', '.join(repr(float(value)) for value in phi))
        print('shapley efficient: %s' % _flag(is_efficient(game, phi, tol)))
        print('shapley individually rational: %s' % _flag(is_individually_rational(game, phi, tol)))
        print('shapley in core: %s' % _flag(in_core(game, phi, tol)))
        if game.n <= MAX_CORE_PLAYERS:
            print('core nonempty: %s' % _flag(witness is not None))
            if witness is not None:
                print('core witness: (%s)' % ', '.join(repr(float(value)) for value in witness))

    def _run_shapley(self, args):
        game = self._load_tu_game(args.game, args.tolerance)
        phi = shapley_value(game)
        if game.n <= MAX_PERMUTATION_PLAYERS:
            oracle = shapley_by_permutations(game)
            if not numpy.allclose(phi, oracle, rtol=0.0, atol=1e-9):
                self._logger.warning('Shapley value disagrees with the permutation average: %s vs %s', phi, oracle)
        rows = [{'player': name, 'shapley': float(phi[i]), 'standalone': game.value(1 << i)}
                for i, name in enumerate(game.players)]
        write_table(rows, SHAPLEY_COLUMNS, args.output)
        print('shapley: (%s)' % ', '.join(repr(float(value)) for value in phi))

    def _run_core(self, args):
        game = self._load_tu_game(args.game, args.tolerance)
        witness = core_witness(game)
        rows = [] if witness is None else [{'player': name, 'allocation': float(witness[i])}
                                           for i, name in enumerate(game.players)]
        write_table(rows, ['player', 'allocation'], args.output)
        print('core nonempty: %s' % _flag(witness is not None))

    def _run_reduce_tu(self, args):
        game = self._load_st_game(args.game)
        save_game(reduce_to_tu(game, args.tolerance), args.output)
        print('TU game written to %s' % args.output)

    def _run_graph(self, args):
        game = self._load_st_game(args.game)
        graph = export_graph(extract_matrix(game, args.tolerance))
        write_edges(graph, args.output)
        print('%d edges written to %s' % (len(graph.edges), args.output))

    def _run_scenario(self, args):
        output = args.output or '%s.game' % args.name
        game = scenario(args.name)
        save_game(game, output)
        print('scenario %s written to %s' % (args.name, output))
        self._classify(load_game(output), args.tolerance)

    def _run_cobb(self, args):
        cfg, requested = self._cobb_config(args)
        gammas = requested if requested is not None else list(self._configs.gammas)
        command = args.cobb_command
        if command == 'sweep':
            axis = figure_axis(args.resolution)
            rows = payoff_grid(cfg, gammas, args.sizeA, args.sizeB, axis, axis, args.threads)
            columns = PayoffCell.columns()
        elif command == 'path':
            rows = []
            for gamma in gammas:
                rows += cooperation_path(cfg, PayoffScheme.hybrid(gamma), args.sizeA, args.sizeB,
                                         args.samples or args.resolution, args.threads, args.tolerance, args.bloc)
            columns = PathPoint.columns()
        elif command == 'frontier':
            if cfg.beta <= 1.0:
                raise DomainError('frontier needs beta > 1, got %r' % cfg.beta)
            frontier_gammas = requested if requested is not None else figure_axis(args.resolution)
            rows = frontier_grid(cfg.beta, frontier_gammas, figure_axis(args.resolution, include_zero=False))
            columns = FrontierCell.columns()
        elif command == 'rational':
            rows = rational_table(cfg, gammas, args.sizeA, args.sizeB, figure_axis(args.resolution), args.threads,
                                  args.bloc)
            columns = RationalRow.columns()
        else:
            schemes = [PayoffScheme.proportional(), PayoffScheme.equal()] + [PayoffScheme.hybrid(g) for g in gammas]
            rows = sensibility_sweep(schemes, args.samples or 10_000, numpy.random.default_rng(args.seed),
                                     cfg.alpha, args.tolerance)
            columns = SENSIBILITY_COLUMNS
        write_table(rows, columns, args.output)
        print('%d rows written to %s' % (len(rows), args.output))

    def _cobb_config(self, args) -> tuple[CobbDouglasConfig, list[float] | None]:
        """Model parameters and the requested gammas; gammas are None when neither document nor flag names one."""
        values = {'theta': self._configs.theta, 'alpha': self._configs.alpha, 'beta': self._configs.beta}
        gammas = None
        if args.config:
            document_cfg = load_game(args.config)
            if not isinstance(document_cfg, CobbDouglasConfig):
                raise DomainError('%s has no cobb_douglas block' % args.config)
            values = document_cfg.model_dump()
            if 'gamma' in document_cfg.model_fields_set:
                gammas = [document_cfg.gamma]
        for name in ('theta', 'alpha', 'beta'):
            flag = getattr(args, name)
            if flag is None:
                continue
            if args.config and values[name] != flag:
                self._logger.warning('Flag --%s=%r overrides %r from %s', name, flag, values[name], args.config)
            values[name] = flag
        if args.gammas is not None:
            if gammas is not None and gammas != args.gammas:
                self._logger.warning('Flag --gammas=%r overrides %r from %s', args.gammas, gammas, args.config)
            gammas = args.gammas
        return CobbDouglasConfig(**values), gammas


def _flag(value: bool) -> str:
    return 'true' if value else 'false'

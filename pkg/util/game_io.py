import csv
import io
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Sequence

import yaml
from pydantic import BaseModel, ValidationError

from model.cobb_douglas_config import CobbDouglasConfig
from model.errors import GameDocumentError, OutputError
from model.game_document import CoalitionOutcome, CoalitionValue, GameDocument, UtilityEntry
from model.player_set import PlayerSet, members, nonempty_subsets, submasks
from model.st_game import STGame, TabulatedSTGame
from model.tu_game import MAX_TU_PLAYERS, TUGame
from util.additivity import PerceptionGraph
from util.st_metrics import from_ntu

DOCUMENT_VERSION = 1

_logger = logging.getLogger(__name__)


def _locate(node: yaml.Node | None, loc: Sequence[Any]) -> int | None:
    """Line (1-based) of the YAML node addressed by a pydantic-style location path."""
    line = node.start_mark.line + 1 if node is not None else None
    for key in loc:
        if isinstance(node, yaml.MappingNode):
            node = next((value for name, value in node.value if name.value == key), None)
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            node = node.value[key]
        else:
            break
        if node is None:
            break
        line = node.start_mark.line + 1
    return line


def _field(loc: Sequence[Any]) -> str:
    text = ''
    for key in loc:
        text += '[%d]' % key if isinstance(key, int) else ('.' if text else '') + str(key)
    return text


class _DocumentReader:
    """Turns a validated GameDocument into a game, reporting problems with their field and line."""

    def __init__(self, document: GameDocument, root: yaml.Node | None):
        self.document = document
        self.root = root
        self.index = {}

    def fail(self, message: str, *loc: Any):
        raise GameDocumentError(message, _field(loc), _locate(self.root, loc))

    def players(self) -> int:
        names = self.document.players
        if not names:
            self.fail('at least one player is required', 'players')
        for i, name in enumerate(names):
            if name in self.index:
                self.fail('duplicate player %r' % name, 'players', i)
            self.index[name] = i
        return len(names)

    def subset(self, names: list[str], *loc: Any) -> PlayerSet:
        mask = 0
        for i, name in enumerate(names):
            if name not in self.index:
                self.fail('unknown player %r' % name, *loc, i)
            bit = 1 << self.index[name]
            if mask & bit:
                self.fail('player %r listed twice' % name, *loc, i)
            mask |= bit
        return mask

    def describe(self, mask: PlayerSet) -> str:
        return '{' + ','.join(self.document.players[i] for i in members(mask)) + '}'

    def consequences(self, n: int) -> dict[PlayerSet, str]:
        declared = set(self.document.outcomes)
        if len(declared) != len(self.document.outcomes):
            self.fail('duplicate outcome ids', 'outcomes')
        result = {}
        for k, entry in enumerate(self.document.consequence):
            mask = self.subset(entry.coalition, 'consequence', k, 'coalition')
            if not mask:
                self.fail('the empty coalition has the null outcome and cannot be mapped', 'consequence', k)
            if mask in result:
                self.fail('V%s given twice' % self.describe(mask), 'consequence', k)
            if entry.outcome not in declared:
                self.fail('undeclared outcome %r' % entry.outcome, 'consequence', k, 'outcome')
            result[mask] = entry.outcome
        for mask in nonempty_subsets(n):
            if mask not in result:
                self.fail('missing consequence V%s' % self.describe(mask), 'consequence')
        return result

    def st_game(self) -> TabulatedSTGame:
        n = self.players()
        consequences = self.consequences(n)
        declared = set(self.document.outcomes)
        table = {}
        for k, entry in enumerate(self.document.utilities):
            assessor = self.subset(entry.assessor, 'utilities', k, 'assessor')
            if not assessor:
                self.fail('the empty set cannot assess outcomes', 'utilities', k, 'assessor')
            if entry.outcome not in declared:
                self.fail('undeclared outcome %r' % entry.outcome, 'utilities', k, 'outcome')
            if (assessor, entry.outcome) in table:
                self.fail('duplicate utility u_%s(%s)' % (self.describe(assessor), entry.outcome), 'utilities', k)
            table[(assessor, entry.outcome)] = entry.value
        for coalition in nonempty_subsets(n):
            outcome = consequences[coalition]
            for assessor in submasks(coalition):
                if assessor and (assessor, outcome) not in table:
                    self.fail('missing utility u_%s(%s) for coalition %s'
                              % (self.describe(assessor), outcome, self.describe(coalition)), 'utilities')
        return TabulatedSTGame(n, self.document.outcomes, consequences, table, self.document.players)

    def ntu_game(self) -> TabulatedSTGame:
        n = self.players()
        consequences = self.consequences(n)
        declared = set(self.document.outcomes)
        utilities = [{} for _ in range(n)]
        for k, entry in enumerate(self.document.individual):
            if entry.player not in self.index:
                self.fail('unknown player %r' % entry.player, 'individual', k, 'player')
            if entry.outcome not in declared:
                self.fail('undeclared outcome %r' % entry.outcome, 'individual', k, 'outcome')
            own = utilities[self.index[entry.player]]
            if entry.outcome in own:
                self.fail('duplicate utility for %s on %s' % (entry.player, entry.outcome), 'individual', k)
            own[entry.outcome] = entry.value
        for i, own in enumerate(utilities):
            for outcome in self.document.outcomes:
                if outcome not in own:
                    self.fail('missing utility of %s on %s' % (self.document.players[i], outcome), 'individual')
        return from_ntu(n, self.document.outcomes, consequences, utilities, self.document.players)

    def tu_game(self) -> TUGame:
        n = self.players()
        if n > MAX_TU_PLAYERS:
            self.fail('TU games support at most %d players' % MAX_TU_PLAYERS, 'players')
        values = [None] * (1 << n)
        values[0] = 0.0
        for k, entry in enumerate(self.document.values):
            mask = self.subset(entry.coalition, 'values', k, 'coalition')
            if not mask:
                if entry.value != 0.0:
                    self.fail('u(empty set) must be 0, got %r' % entry.value, 'values', k, 'value')
                continue
            if values[mask] is not None:
                self.fail('u%s given twice' % self.describe(mask), 'values', k)
            values[mask] = entry.value
        for mask in nonempty_subsets(n):
            if values[mask] is None:
                self.fail('missing value u%s' % self.describe(mask), 'values')
        return TUGame(n, values, self.document.players)

    def cobb_douglas(self) -> CobbDouglasConfig:
        if self.document.cobb_douglas is None:
            self.fail('cobb_douglas block is required', 'cobb_douglas')
        return self.document.cobb_douglas


def read_document(text: str) -> tuple[GameDocument, yaml.Node | None]:
    try:
        data = yaml.safe_load(text)
        root = yaml.compose(text)
    except yaml.YAMLError as exception:
        mark = getattr(exception, 'problem_mark', None)
        raise GameDocumentError('malformed document: %s' % getattr(exception, 'problem', exception),
                                line=mark.line + 1 if mark else None) from None
    if not isinstance(data, dict):
        raise GameDocumentError('document must be a mapping', line=1)

    try:
        document = GameDocument.model_validate(data)
    except ValidationError as exception:
        error = exception.errors()[0]
        loc = list(error['loc'])
        raise GameDocumentError(error['msg'], _field(loc), _locate(root, loc)) from None
    if document.version != DOCUMENT_VERSION:
        raise GameDocumentError('unsupported version %d' % document.version, 'version', _locate(root, ['version']))
    return document, root


def load_game(source) -> STGame | TUGame | CobbDouglasConfig:
    if hasattr(source, 'read'):
        text = source.read()
        name = getattr(source, 'name', '<stream>')
    else:
        name = str(source)
        try:
            text = Path(source).read_text(encoding='utf-8')
        except OSError as exception:
            raise GameDocumentError('cannot read %s: %s' % (name, exception.strerror)) from None

    document, root = read_document(text)
    reader = _DocumentReader(document, root)
    _logger.debug('Loading %s game from %s', document.kind, name)
    if document.kind == 'tu':
        return reader.tu_game()
    if document.kind == 'ntu':
        return reader.ntu_game()
    if document.kind == 'cobb_douglas':
        return reader.cobb_douglas()
    return reader.st_game()


def _names(mask: PlayerSet, players: list[str]) -> list[str]:
    return [players[i] for i in members(mask)]


def to_document(game: TabulatedSTGame | TUGame | CobbDouglasConfig) -> GameDocument:
    if isinstance(game, CobbDouglasConfig):
        return GameDocument(kind='cobb_douglas', cobb_douglas=game)
    if isinstance(game, TUGame):
        values = [CoalitionValue(coalition=_names(mask, game.players), value=game.value(mask))
                  for mask in nonempty_subsets(game.n)]
        return GameDocument(kind='tu', players=game.players, values=values)

    order = {outcome: k for k, outcome in enumerate(game.outcomes)}
    consequence = [CoalitionOutcome(coalition=_names(mask, game.players), outcome=game.consequences[mask])
                   for mask in nonempty_subsets(game.n)]
    utilities = [UtilityEntry(assessor=_names(assessor, game.players), outcome=outcome, value=value)
                 for (assessor, outcome), value in sorted(game.table.items(),
                                                          key=lambda item: (item[0][0], order[item[0][1]]))]
    return GameDocument(kind='st', players=game.players, outcomes=game.outcomes, consequence=consequence,
                        utilities=utilities)


def dump_game(game: TabulatedSTGame | TUGame | CobbDouglasConfig) -> str:
    document = to_document(game)
    data = document.model_dump(mode='json', exclude_defaults=True)
    data = {'version': DOCUMENT_VERSION, 'kind': document.kind, **data}
    return yaml.safe_dump(data, sort_keys=False, allow_unicode=True)


def save_game(game: TabulatedSTGame | TUGame | CobbDouglasConfig, path) -> None:
    _write_text(path, dump_game(game))
    _logger.info('Game document written to %s', path)


def format_cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def table_text(rows: Iterable[BaseModel | dict], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        record = row.model_dump() if isinstance(row, BaseModel) else row
        writer.writerow([format_cell(record.get(column)) for column in columns])
    return buffer.getvalue()


def write_table(rows: Iterable[BaseModel | dict], columns: Sequence[str], path) -> None:
    _write_text(path, table_text(rows, columns))
    _logger.info('Table written to %s', path)


def write_edges(graph: PerceptionGraph, path) -> None:
    """One 'src dst weight' line per edge, zero-indexed vertices."""
    lines = ['%d %d %r\n' % (x, y, weight) for x, y, weight in graph.edges]
    _write_text(path, ''.join(lines))
    _logger.info('Graph with %d edges written to %s', len(graph.edges), path)


def _write_text(path, text: str):
    try:
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    except OSError as exception:
        raise OutputError(str(path), exception.strerror or repr(exception)) from None

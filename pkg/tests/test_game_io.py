import io

import pytest

from model.cobb_douglas_config import CobbDouglasConfig
from model.errors import GameDocumentError, OutputError
from model.st_game import TabulatedSTGame
from model.tu_game import TUGame
from tests.conftest import PD_DOCUMENT
from util.additivity import BiAdditiveMatrix, export_graph
from util.game_io import dump_game, format_cell, load_game, save_game, table_text, write_edges, write_table
from util.scenarios import SCENARIOS, scenario
from util.st_metrics import coop_point


def test_load_prisoners_dilemma(pd_path):
    game = load_game(pd_path)
    assert isinstance(game, TabulatedSTGame)
    assert game.players == ['A', 'B']
    point = coop_point(game, 0b01)
    assert (point.altruism, point.competitive, point.marginal) == (1.0, 2.0, 3.0)


def test_load_from_stream():
    game = load_game(io.StringIO(PD_DOCUMENT))
    assert game.utility(0b11, 0b11) == 4.0


def test_saved_scenarios_load_back(tmp_path):
    for name in SCENARIOS:
        path = tmp_path / ('%s.game' % name)
        save_game(scenario(name), path)
        assert dump_game(load_game(path)) == path.read_text()


def test_tu_document():
    game = load_game(io.StringIO(
        'version: 1\nkind: tu\nplayers: [x, y]\nvalues:\n'
        '  - {coalition: [x], value: 1}\n  - {coalition: [y], value: 0}\n  - {coalition: [x, y], value: 3}\n'))
    assert isinstance(game, TUGame)
    assert list(game.values) == [0.0, 1.0, 0.0, 3.0]


def test_ntu_document_sums_individuals():
    game = load_game(io.StringIO(
        'version: 1\nkind: ntu\nplayers: [A, B]\noutcomes: [x, y]\n'
        'consequence:\n  - {coalition: [A], outcome: x}\n  - {coalition: [B], outcome: x}\n'
        '  - {coalition: [A, B], outcome: y}\n'
        'individual:\n  - {player: A, outcome: x, value: 1}\n  - {player: A, outcome: y, value: 2}\n'
        '  - {player: B, outcome: x, value: 0.5}\n  - {player: B, outcome: y, value: 1}\n'))
    assert game.utility(0b11, 0b11) == 3.0
    assert game.utility(0b10, 0b01) == 0.5


def test_cobb_douglas_document():
    cfg = load_game(io.StringIO('version: 1\nkind: cobb_douglas\ncobb_douglas: {theta: 0.5, beta: 2}\n'))
    assert isinstance(cfg, CobbDouglasConfig)
    assert (cfg.theta, cfg.beta, cfg.alpha) == (0.5, 2.0, 1.0)


@pytest.mark.parametrize('text, field, line', [
    (PD_DOCUMENT.replace('value: 4', 'value: four'), 'utilities[0].value', 10),
    (PD_DOCUMENT.replace('{coalition: [A], outcome: A}', '{coalition: [C], outcome: A}'),
     'consequence[1].coalition[0]', 7),
    (PD_DOCUMENT.replace('  - {assessor: [A], outcome: AB, value: 2}\n', ''), 'utilities', 10),
    (PD_DOCUMENT.replace('{coalition: [B], outcome: B}', '{coalition: [B], outcome: Z}'),
     'consequence[2].outcome', 8),
    (PD_DOCUMENT.replace('players: [A, B]', 'players: [A, A]'), 'players[1]', 3),
    (PD_DOCUMENT + 'colour: red\n', 'colour', 15),
])
def test_document_errors_name_field_and_line(text, field, line):
    with pytest.raises(GameDocumentError) as error:
        load_game(io.StringIO(text))
    assert error.value.field == field
    assert error.value.line == line


def test_malformed_yaml_reports_line():
    with pytest.raises(GameDocumentError) as error:
        load_game(io.StringIO('version: 1\nplayers: [A, B\n'))
    assert error.value.line is not None


def test_unsupported_version():
    with pytest.raises(GameDocumentError) as error:
        load_game(io.StringIO(PD_DOCUMENT.replace('version: 1', 'version: 2')))
    assert error.value.field == 'version'


def test_missing_file(tmp_path):
    with pytest.raises(GameDocumentError):
        load_game(tmp_path / 'absent.game')


def test_format_cell():
    assert format_cell(0.1) == '0.1'
    assert format_cell(1 / 3) == repr(1 / 3)
    assert format_cell(None) == ''
    assert format_cell(True) == 'true'
    assert format_cell(float('inf')) == 'inf'


def test_table_text_keeps_row_order():
    text = table_text([{'a': 1, 'b': 0.5}, {'a': 2, 'b': None}], ['a', 'b'])
    assert text == 'a,b\n1,0.5\n2,\n'


def test_write_table_and_edges(tmp_path):
    write_table([{'x': 1.5}], ['x'], tmp_path / 'rows.csv')
    assert (tmp_path / 'rows.csv').read_text() == 'x\n1.5\n'
    write_edges(export_graph(BiAdditiveMatrix([[1.0, 0.0], [2.5, 0.0]])), tmp_path / 'g.edges')
    assert (tmp_path / 'g.edges').read_text() == '0 0 1.0\n0 1 2.5\n'


def test_unwritable_output(tmp_path):
    with pytest.raises(OutputError):
        write_table([], ['x'], tmp_path / 'missing' / 'rows.csv')

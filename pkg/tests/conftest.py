import pytest

from model.cobb_douglas_config import CobbDouglasConfig
from util.scenarios import glove, majority3, prisoners_dilemma


@pytest.fixture
def pd_game():
    return prisoners_dilemma()


@pytest.fixture
def glove_game():
    return glove()


@pytest.fixture
def majority_game():
    return majority3()


@pytest.fixture
def figure_config():
    return CobbDouglasConfig(theta=0.75, alpha=1.0, beta=1.5)


PD_DOCUMENT = """\
version: 1
kind: st
players: [A, B]
outcomes: [AB, A, B]
consequence:
  - {coalition: [A, B], outcome: AB}
  - {coalition: [A], outcome: A}
  - {coalition: [B], outcome: B}
utilities:
  - {assessor: [A, B], outcome: AB, value: 4}
  - {assessor: [A], outcome: AB, value: 2}
  - {assessor: [B], outcome: AB, value: 2}
  - {assessor: [A], outcome: A, value: 1}
  - {assessor: [B], outcome: B, value: 1}
"""


@pytest.fixture
def pd_path(tmp_path):
    path = tmp_path / 'pd.game'
    path.write_text(PD_DOCUMENT)
    return path

from typing import List, Literal

from pydantic import BaseModel, ConfigDict

from model.cobb_douglas_config import CobbDouglasConfig


class DocumentPart(BaseModel):
    model_config = ConfigDict(extra='forbid')


class CoalitionOutcome(DocumentPart):
    coalition: List[str]
    outcome: str


class UtilityEntry(DocumentPart):
    assessor: List[str]
    outcome: str
    value: float


class CoalitionValue(DocumentPart):
    coalition: List[str]
    value: float


class IndividualUtility(DocumentPart):
    player: str
    outcome: str
    value: float


class GameDocument(DocumentPart):
    """
    A .game document. Subsets are arrays of player names.

    kind st:  consequence + utilities (sparse, total over u_A(V(S)) with A inside S)
    kind ntu: consequence + individual utilities, summed over assessors
    kind tu:  values, one per nonempty coalition
    kind cobb_douglas: the cobb_douglas block only
    """
    version: int = 1
    kind: Literal['st', 'ntu', 'tu', 'cobb_douglas'] = 'st'
    players: List[str] = []
    outcomes: List[str] = []
    consequence: List[CoalitionOutcome] = []
    utilities: List[UtilityEntry] = []
    individual: List[IndividualUtility] = []
    values: List[CoalitionValue] = []
    cobb_douglas: CobbDouglasConfig | None = None

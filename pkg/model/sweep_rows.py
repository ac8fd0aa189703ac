from typing import List, Literal

from pydantic import BaseModel


class SweepRow(BaseModel):
    @classmethod
    def columns(cls) -> List[str]:
        return list(cls.model_fields)


class PayoffCell(SweepRow):
    gamma: float
    theta: float
    beta: float
    sizeA: int
    sizeB: int
    xA_avg: float
    xB_avg: float
    value: float
    payoff: float
    payoff_B: float
    utility: float


class FrontierCell(SweepRow):
    gamma: float
    r: float
    beta: float
    bound: float
    max_team_size: int | float


class RationalRow(SweepRow):
    gamma: float
    theta: float
    beta: float
    sizeA: int
    sizeB: int
    xB_avg: float
    xA_rational: float
    utility: float
    xA_zero_altruism: float | None
    altruism: float


class PathPoint(SweepRow):
    gamma: float
    theta: float
    beta: float
    sizeA: int
    sizeB: int
    xA_avg: float
    xB_avg: float
    payoff: float
    utility: float
    altruism: float
    competitive: float
    marginal: float
    quadrant: str


class FigureAxes(BaseModel):
    kind: Literal['payoff', 'frontier']
    gammas: List[float] = [0.0, 0.25, 0.5, 0.75, 1.0]
    size_a: int = 2
    size_b: int = 10
    xa_values: List[float] = []
    xb_values: List[float] = []
    r_values: List[float] = []

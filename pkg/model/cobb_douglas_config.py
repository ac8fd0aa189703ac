from enum import Enum
from typing import List, Literal

import numpy
from pydantic import BaseModel, Field, field_validator, model_validator


class PayoffKind(str, Enum):
    PROPORTIONAL = 'proportional'
    EQUAL = 'equal'
    HYBRID = 'hybrid'


class PayoffScheme(BaseModel):
    kind: PayoffKind = PayoffKind.HYBRID
    gamma: float = Field(default=0.5, ge=0.0, le=1.0)

    @classmethod
    def proportional(cls) -> 'PayoffScheme':
        return cls(kind=PayoffKind.PROPORTIONAL, gamma=1.0)

    @classmethod
    def equal(cls) -> 'PayoffScheme':
        return cls(kind=PayoffKind.EQUAL, gamma=0.0)

    @classmethod
    def hybrid(cls, gamma: float) -> 'PayoffScheme':
        return cls(kind=PayoffKind.HYBRID, gamma=gamma)

    # Weight on the proportional share; equal share gets the rest.
    @property
    def proportional_weight(self) -> float:
        if self.kind == PayoffKind.PROPORTIONAL:
            return 1.0
        if self.kind == PayoffKind.EQUAL:
            return 0.0
        return self.gamma


class CobbDouglasConfig(BaseModel):
    theta: float = Field(default=0.75, ge=0.0, le=1.0)
    gamma: float = Field(default=0.5, ge=0.0, le=1.0)
    alpha: float = Field(default=1.0, gt=0.0)
    beta: float = 1.5
    resources: List[float] = []
    value_mode: Literal['power', 'tabulated'] = 'power'
    # (x, f(x)) knots for the tabulated value function, x ascending from 0.
    value_table: List[List[float]] = []

    @field_validator('resources')
    @classmethod
    def _check_resources(cls, resources: List[float]) -> List[float]:
        if any(r < 0 for r in resources):
            raise ValueError('resources must be nonnegative')
        return resources

    @model_validator(mode='after')
    def _check_value_table(self) -> 'CobbDouglasConfig':
        if self.value_mode != 'tabulated':
            return self
        if len(self.value_table) < 2 or any(len(knot) != 2 for knot in self.value_table):
            raise ValueError('tabulated value function needs at least two (x, f) knots')
        xs = [knot[0] for knot in self.value_table]
        if xs[0] != 0.0 or self.value_table[0][1] != 0.0:
            raise ValueError('tabulated value function must start at f(0) = 0')
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError('tabulated value function knots must be strictly increasing in x')
        return self

    def scheme(self) -> PayoffScheme:
        return PayoffScheme.hybrid(self.gamma)

    def value_function(self) -> 'ValueFunction':
        if self.value_mode == 'tabulated':
            return TabulatedValue(self.value_table)
        return PowerValue(self.alpha, self.beta)


class ValueFunction:
    """Total value f(x) produced by a combined contribution x, with f(0) = 0."""

    def __call__(self, x: float) -> float:
        raise NotImplementedError


class PowerValue(ValueFunction):
    alpha: float
    beta: float

    def __init__(self, alpha: float = 1.0, beta: float = 1.5):
        self.alpha = alpha
        self.beta = beta

    def __call__(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return self.alpha * x ** self.beta


class TabulatedValue(ValueFunction):
    def __init__(self, knots: List[List[float]]):
        self._xs = numpy.array([knot[0] for knot in knots], dtype=float)
        self._fs = numpy.array([knot[1] for knot in knots], dtype=float)

    def __call__(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        if x > self._xs[-1]:
            # linear extension of the last segment
            slope = (self._fs[-1] - self._fs[-2]) / (self._xs[-1] - self._xs[-2])
            return float(self._fs[-1] + slope * (x - self._xs[-1]))
        return float(numpy.interp(x, self._xs, self._fs))


class ContributionProfile(BaseModel):
    contributions: List[float]
    resources: List[float]

    @model_validator(mode='after')
    def _check_bounds(self) -> 'ContributionProfile':
        if len(self.contributions) != len(self.resources):
            raise ValueError('%d contributions for %d players' % (len(self.contributions), len(self.resources)))
        for i, (x, cap) in enumerate(zip(self.contributions, self.resources)):
            if not 0.0 <= x <= cap:
                raise ValueError('contribution %r of player %d outside [0, %r]' % (x, i, cap))
        return self

    @property
    def n(self) -> int:
        return len(self.contributions)

    def contributed(self, mask: int) -> float:
        return sum(x for i, x in enumerate(self.contributions) if mask >> i & 1)

    def reserve(self, mask: int) -> float:
        return sum(cap - x for i, (x, cap) in enumerate(zip(self.contributions, self.resources)) if mask >> i & 1)

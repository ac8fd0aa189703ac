import logging
from typing import Callable

import numpy
from scipy.optimize import minimize_scalar, root_scalar

_logger = logging.getLogger(__name__)

SCAN_POINTS = 256
ROOT_SCAN_POINTS = 1024


def maximize_on_interval(fn: Callable[[float], float], lo: float, hi: float,
                         scan_points: int = SCAN_POINTS, xatol: float = 1e-10) -> tuple[float, float]:
    """
    Global-ish maximum of fn on [lo, hi]: a coarse scan picks the best cell,
    a bounded scalar search refines inside its neighbours. Ties go to the
    smaller argument, so boundary maxima at lo win over flat interiors.
    """
    if hi <= lo:
        return lo, fn(lo)

    xs = numpy.linspace(lo, hi, scan_points + 1)
    values = numpy.array([fn(float(x)) for x in xs])
    best = int(numpy.argmax(values))
    best_x, best_value = float(xs[best]), float(values[best])

    left = float(xs[max(best - 1, 0)])
    right = float(xs[min(best + 1, scan_points)])
    result = minimize_scalar(lambda x: -fn(x), bounds=(left, right), method='bounded', options={'xatol': xatol})
    refined_x = float(result.x)
    refined_value = fn(refined_x)
    if refined_value > best_value or (refined_value == best_value and refined_x < best_x):
        return refined_x, refined_value
    return best_x, best_value


def find_roots(fn: Callable[[float], float], lo: float, hi: float,
               scan_points: int = ROOT_SCAN_POINTS, xtol: float = 1e-8, zero: float = 1e-14) -> list[float]:
    """All roots fn seen on a scan of [lo, hi]: grid points where |fn| <= zero plus one bisection per sign change."""
    xs = numpy.linspace(lo, hi, scan_points + 1)
    values = numpy.array([fn(float(x)) for x in xs])
    signs = numpy.where(numpy.abs(values) <= zero, 0, numpy.sign(values))

    roots = [float(x) for x, sign in zip(xs, signs) if sign == 0]
    for i in range(scan_points):
        if signs[i] * signs[i + 1] < 0:
            result = root_scalar(fn, bracket=[float(xs[i]), float(xs[i + 1])], method='bisect', xtol=xtol)
            roots.append(float(result.root))
    roots.sort()
    _logger.debug('Found %d roots on [%r, %r]', len(roots), lo, hi)
    return roots

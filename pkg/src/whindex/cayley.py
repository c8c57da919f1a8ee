"""Dictionary between discrete-time and continuous-time realizations.

The maps below implement the change of variable z = (1-s)/(1+s) at the
realization level.  They are exact inverses of each other, take stable
unitary quadruples to stable dissipative ones and back, and map the state
matrix spectrum by lambda -> (1+lambda)/(1-lambda).
"""

from __future__ import annotations

import math

import numpy as np

from .core import CONTINUOUS, DISCRETE, Realization
from .equations import CONDITION_LIMIT
from .errors import EvaluationError, StructureError

_SQRT2 = math.sqrt(2.0)


def _check_shift(shift: np.ndarray, what: str) -> None:
    if shift.size and np.linalg.cond(shift) > CONDITION_LIMIT:
        raise EvaluationError(f"{what} is numerically singular; an eigenvalue sits at the map's pole")


def d2c(r: Realization) -> Realization:
    """Continuous-time realization of the same function under z = (1-s)/(1+s).

    a_c = (a - I)(I + a)^{-1}, b_c = sqrt(2) (I + a)^{-1} b,
    c_c = sqrt(2) c (I + a)^{-1}, d_c = d - c (I + a)^{-1} b.
    Stable unitary inputs give stable dissipative outputs.
    """
    if r.flavor != DISCRETE:
        raise StructureError("d2c expects a discrete realization")
    eye = np.eye(r.state_dim)
    shift = eye + r.a
    _check_shift(shift, "I + a")
    if r.state_dim == 0:
        return Realization(r.a, r.b, r.c, r.d, CONTINUOUS)
    a = np.linalg.solve(shift.T, (r.a - eye).T).T
    shifted_b = np.linalg.solve(shift, r.b)
    b = _SQRT2 * shifted_b
    c = _SQRT2 * np.linalg.solve(shift.T, r.c.T).T
    d = r.d - r.c @ shifted_b
    return Realization(a, b, c, d, CONTINUOUS)


def c2d(r: Realization) -> Realization:
    """Inverse dictionary of d2c.

    a_d = (I - a)^{-1}(a + I), b_d = sqrt(2) (I - a)^{-1} b,
    c_d = sqrt(2) c (I - a)^{-1}, d_d = d + c (I - a)^{-1} b.
    Stable dissipative inputs give stable unitary outputs.
    """
    if r.flavor != CONTINUOUS:
        raise StructureError("c2d expects a continuous realization")
    eye = np.eye(r.state_dim)
    shift = eye - r.a
    _check_shift(shift, "I - a")
    if r.state_dim == 0:
        return Realization(r.a, r.b, r.c, r.d, DISCRETE)
    a = np.linalg.solve(shift, r.a + eye)
    shifted_b = np.linalg.solve(shift, r.b)
    b = _SQRT2 * shifted_b
    c = _SQRT2 * np.linalg.solve(shift.T, r.c.T).T
    d = r.d + r.c @ shifted_b
    return Realization(a, b, c, d, DISCRETE)

"""Complex state-space realizations of rational inner functions.

A continuous realization ``(a, b, c, d)`` represents the transfer function
``d + c (sI - a)^{-1} b``; a discrete one represents
``d + z c (I - z a)^{-1} b``.  Zero-dimensional state spaces are legal and
give the constant transfer function ``d``.  All values are immutable after
construction and every operation here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import EvaluationError, StructureError

CONTINUOUS = "continuous"
DISCRETE = "discrete"

#: Default tolerance for validation verdicts.
VALIDATION_TOL = 1e-8

#: Realizations whose rightmost eigenvalue is closer to the axis than this
#: are flagged as near marginal (equation solving degrades there).
NEAR_MARGINAL_GAP = 1e-10


def opnorm(x: np.ndarray) -> float:
    """Spectral norm, with the empty matrix having norm zero."""
    if x.size == 0:
        return 0.0
    return float(np.linalg.norm(x, 2))


def hermitize(x: np.ndarray) -> np.ndarray:
    """Project onto the Hermitian part, (x + x*)/2."""
    return (x + x.conj().T) / 2.0


def _freeze(x) -> np.ndarray:
    out = np.array(x, dtype=complex)
    out = np.atleast_2d(out)
    out.setflags(write=False)
    return out


def _empty(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=complex)


@dataclass(frozen=True)
class Realization:
    """State-space quadruple with a continuous or discrete flavor.

    ``a`` is n x n, ``b`` is n x m, ``c`` is m x n and ``d`` is m x m for a
    single coefficient-space dimension m.  Arrays are copied and locked on
    construction, so instances are safe to share between threads.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    flavor: str = CONTINUOUS

    def __post_init__(self):
        if self.flavor not in (CONTINUOUS, DISCRETE):
            raise StructureError(f"unknown flavor {self.flavor!r}")
        a, b, c, d = (_freeze(m) for m in (self.a, self.b, self.c, self.d))
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise StructureError(f"d must be square, got shape {d.shape}")
        m = d.shape[0]
        # Empty inputs may arrive with ambiguous shapes such as (1, 0) or
        # (0, 0); normalize them against n and m before checking.
        n = a.shape[0] if a.size else 0
        if a.size == 0:
            a = _empty(0, 0)
        if b.size == 0:
            b = _empty(n, m) if n == 0 or m == 0 else b
        if c.size == 0:
            c = _empty(m, n) if n == 0 or m == 0 else c
        if a.shape != (n, n):
            raise StructureError(f"a must be square, got shape {a.shape}")
        if b.shape != (n, m):
            raise StructureError(f"b must be {n}x{m}, got shape {b.shape}")
        if c.shape != (m, n):
            raise StructureError(f"c must be {m}x{n}, got shape {c.shape}")
        a.setflags(write=False)
        b.setflags(write=False)
        c.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @property
    def state_dim(self) -> int:
        return self.a.shape[0]

    @property
    def output_dim(self) -> int:
        return self.d.shape[0]


def constant_realization(d, flavor: str = CONTINUOUS) -> Realization:
    """Zero-state realization of the constant matrix function ``d``."""
    d = np.atleast_2d(np.asarray(d, dtype=complex))
    m = d.shape[0]
    return Realization(_empty(0, 0), _empty(0, m), _empty(m, 0), d, flavor)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a stability/energy-balance validation.

    For continuous realizations the residuals are ``|a + a* + c*c|``,
    ``|d*d - I|`` and ``|b + c*d|``.  For discrete realizations they are the
    blocks of ``S*S - I`` for the stacked system matrix ``S = [[a, b], [c, d]]``
    (state, feedthrough and coupling block respectively), and
    ``system_unitarity_residual`` holds ``|S*S - I|`` itself.
    """

    stable: bool
    dissipative_residual: float
    feedthrough_unitarity_residual: float
    coupling_residual: float
    verdict: bool
    near_marginal: bool = False
    system_unitarity_residual: Optional[float] = None

    @property
    def max_residual(self) -> float:
        out = max(
            self.dissipative_residual,
            self.feedthrough_unitarity_residual,
            self.coupling_residual,
        )
        if self.system_unitarity_residual is not None:
            out = max(out, self.system_unitarity_residual)
        return out


@dataclass(frozen=True)
class SymbolPair:
    """Two continuous realizations (V-factor, W-factor) of a unimodular symbol V W*."""

    v: Realization
    w: Realization

    def __post_init__(self):
        if self.v.flavor != CONTINUOUS or self.w.flavor != CONTINUOUS:
            raise StructureError("both factors of a symbol pair must be continuous")
        if self.v.output_dim != self.w.output_dim:
            raise StructureError(
                f"factor output dimensions differ: {self.v.output_dim} vs {self.w.output_dim}"
            )

    @property
    def output_dim(self) -> int:
        return self.v.output_dim

    def swapped(self) -> "SymbolPair":
        return SymbolPair(self.w, self.v)


def validate_stable_dissipative(r: Realization, tol: float = VALIDATION_TOL) -> ValidationReport:
    """Check that a continuous realization is stable with the inner-function energy balance.

    Stability means every eigenvalue of ``a`` lies strictly in the open left
    half plane.  The three residuals measure ``a + a* + c*c = 0``, unitarity
    of ``d`` and the coupling ``b = -c*d``.
    """
    if r.flavor != CONTINUOUS:
        raise StructureError("validate_stable_dissipative expects a continuous realization")
    if r.state_dim == 0:
        stable, near_marginal = True, False
    else:
        re_parts = np.linalg.eigvals(r.a).real
        top = float(re_parts.max())
        stable = top < 0.0
        near_marginal = stable and top > -NEAR_MARGINAL_GAP
    eye = np.eye(r.output_dim)
    diss = opnorm(r.a + r.a.conj().T + r.c.conj().T @ r.c)
    feed = opnorm(r.d.conj().T @ r.d - eye)
    coup = opnorm(r.b + r.c.conj().T @ r.d)
    verdict = stable and diss <= tol and feed <= tol and coup <= tol
    return ValidationReport(stable, diss, feed, coup, verdict, near_marginal)


def validate_stable_unitary(r: Realization, tol: float = VALIDATION_TOL) -> ValidationReport:
    """Check that a discrete realization is stable with a unitary system matrix.

    Stability means all eigenvalues of ``a`` lie strictly inside the unit
    disk.  The governing residual is ``|S*S - I|`` for the stacked system
    matrix ``S = [[a, b], [c, d]]``; its diagonal and off-diagonal blocks are
    reported individually as well.
    """
    if r.flavor != DISCRETE:
        raise StructureError("validate_stable_unitary expects a discrete realization")
    if r.state_dim == 0:
        stable, near_marginal = True, False
    else:
        radii = np.abs(np.linalg.eigvals(r.a))
        top = float(radii.max())
        stable = top < 1.0
        near_marginal = stable and top > 1.0 - NEAR_MARGINAL_GAP
    n, m = r.state_dim, r.output_dim
    s = np.zeros((n + m, n + m), dtype=complex)
    s[:n, :n] = r.a
    s[:n, n:] = r.b
    s[n:, :n] = r.c
    s[n:, n:] = r.d
    defect = s.conj().T @ s - np.eye(n + m)
    full = opnorm(defect)
    state_block = opnorm(defect[:n, :n])
    coupling_block = opnorm(defect[:n, n:])
    feed_block = opnorm(defect[n:, n:])
    verdict = stable and full <= tol
    return ValidationReport(
        stable,
        state_block,
        feed_block,
        coupling_block,
        verdict,
        near_marginal,
        system_unitarity_residual=full,
    )


def eval_transfer(r: Realization, s: complex) -> np.ndarray:
    """Evaluate the transfer function of ``r`` at the point ``s``.

    Continuous: ``d + c (sI - a)^{-1} b``.  Discrete:
    ``d + s c (I - s a)^{-1} b``.  A zero-dimensional state returns ``d``.
    """
    if r.state_dim == 0:
        return r.d.copy()
    s = complex(s)
    eye = np.eye(r.state_dim)
    if r.flavor == CONTINUOUS:
        resolvent_arg = s * eye - r.a
    else:
        resolvent_arg = eye - s * r.a
    try:
        x = np.linalg.solve(resolvent_arg, r.b)
    except np.linalg.LinAlgError as exc:
        raise EvaluationError(f"transfer function evaluated at a pole (s = {s})") from exc
    if r.flavor == CONTINUOUS:
        return r.d + r.c @ x
    return r.d + s * (r.c @ x)


def _block_diag(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = np.zeros((x.shape[0] + y.shape[0], x.shape[1] + y.shape[1]), dtype=complex)
    out[: x.shape[0], : x.shape[1]] = x
    out[x.shape[0] :, x.shape[1] :] = y
    return out


def direct_sum(r1: Realization, r2: Realization) -> Realization:
    """Block-diagonal sum; the transfer function is the block diagonal of the two."""
    if r1.flavor != r2.flavor:
        raise StructureError("direct_sum requires matching flavors")
    return Realization(
        _block_diag(r1.a, r2.a),
        _block_diag(r1.b, r2.b),
        _block_diag(r1.c, r2.c),
        _block_diag(r1.d, r2.d),
        r1.flavor,
    )


def cascade(outer: Realization, inner: Realization) -> Realization:
    """Series interconnection realizing the product (outer transfer) * (inner transfer).

    Stability and the energy-balance identities survive the interconnection,
    so cascading valid factors yields a valid product realization.
    """
    if outer.flavor != inner.flavor:
        raise StructureError("cascade requires matching flavors")
    if outer.flavor != CONTINUOUS:
        raise StructureError("cascade is defined for continuous realizations")
    if outer.output_dim != inner.output_dim:
        raise StructureError(
            f"cascade output dimensions differ: {outer.output_dim} vs {inner.output_dim}"
        )
    n_o, n_i = outer.state_dim, inner.state_dim
    a = np.zeros((n_o + n_i, n_o + n_i), dtype=complex)
    a[:n_o, :n_o] = outer.a
    a[:n_o, n_o:] = outer.b @ inner.c
    a[n_o:, n_o:] = inner.a
    b = np.vstack([outer.b @ inner.d, inner.b])
    c = np.hstack([outer.c, outer.d @ inner.c])
    d = outer.d @ inner.d
    return Realization(a, b, c, d, outer.flavor)


def unitary_twist(r: Realization, u: np.ndarray, side: str, tol: float = VALIDATION_TOL) -> Realization:
    """Multiply the transfer function by a constant unitary: U*Theta (left) or Theta*U (right)."""
    u = np.atleast_2d(np.asarray(u, dtype=complex))
    m = r.output_dim
    if u.shape != (m, m):
        raise StructureError(f"twist matrix must be {m}x{m}, got {u.shape}")
    if opnorm(u.conj().T @ u - np.eye(m)) > tol:
        raise StructureError("twist matrix is not unitary within tolerance")
    if side == "left":
        return Realization(r.a, r.b, u @ r.c, u @ r.d, r.flavor)
    if side == "right":
        return Realization(r.a, r.b @ u, r.c, r.d @ u, r.flavor)
    raise StructureError(f"side must be 'left' or 'right', got {side!r}")

"""Dense solvers for the two matrix equations driving the index pipelines.

Both the continuous equation ``a x + x b + c = 0`` and the discrete equation
``x = a x b + c`` are solved by Kronecker vectorization: assemble the
(pq) x (pq) linear system and solve it densely through its SVD.  That is
cubic in pq, which is fine at the state dimensions this library targets
(tens, not thousands), and the SVD doubles as the conditioning gate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import hermitize, opnorm
from .errors import ContractionViolationError, EvaluationError, StructureError, UnsolvableEquationError

#: Relative residual the solvers are expected to reach.
SOLVE_TOL = 1e-10

#: Condition number of the vectorized system beyond which a solution is
#: refused; spectra this close to resonance make the result meaningless.
CONDITION_LIMIT = 1e12

#: Default clustering tolerance for counting unit eigenvalues.
CLUSTER_TOL = 1e-7


@dataclass(frozen=True)
class EquationSolution:
    """Solution matrix together with the operator norm of the defining residual."""

    x: np.ndarray
    residual: float


def _equation_inputs(a, b, c) -> tuple[np.ndarray, np.ndarray, np.ndarray, int, int]:
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    b = np.atleast_2d(np.asarray(b, dtype=complex))
    c = np.atleast_2d(np.asarray(c, dtype=complex))
    if a.size == 0:
        a = a.reshape(0, 0)
    if b.size == 0:
        b = b.reshape(0, 0)
    if a.shape[0] != a.shape[1] or b.shape[0] != b.shape[1]:
        raise StructureError(f"a and b must be square, got {a.shape} and {b.shape}")
    p, q = a.shape[0], b.shape[0]
    if c.size == 0 and (p == 0 or q == 0):
        c = np.zeros((p, q), dtype=complex)
    if c.shape != (p, q):
        raise StructureError(f"c must be {p}x{q}, got {c.shape}")
    return a, b, c, p, q


def _solve_vectorized(m: np.ndarray, rhs: np.ndarray, p: int, q: int) -> np.ndarray:
    """Solve m vec(x) = rhs through the SVD, refusing ill-conditioned systems."""
    u, sing, vh = np.linalg.svd(m)
    smallest = float(sing[-1]) if sing.size else 0.0
    if smallest == 0.0 or float(sing[0]) / smallest > CONDITION_LIMIT:
        raise UnsolvableEquationError(
            f"vectorized system is numerically singular "
            f"(smallest singular value {smallest:.3e})",
            smallest_singular_value=smallest,
        )
    vec = vh.conj().T @ ((u.conj().T @ rhs) / sing)
    return vec.reshape((p, q), order="F")


def solve_sylvester(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> EquationSolution:
    """Solve ``a x + x b + c = 0``.

    Unique solvability requires the spectra of ``a`` and ``-b`` to be
    disjoint, which holds in particular when both ``a`` and ``b`` are
    Hurwitz stable.  Either dimension may be zero, in which case the unique
    empty solution is returned.
    """
    a, b, c, p, q = _equation_inputs(a, b, c)
    if p == 0 or q == 0:
        return EquationSolution(np.zeros((p, q), dtype=complex), 0.0)
    m = np.kron(np.eye(q), a) + np.kron(b.T, np.eye(p))
    rhs = -c.reshape(-1, order="F")
    x = _solve_vectorized(m, rhs, p, q)
    residual = opnorm(a @ x + x @ b + c)
    return EquationSolution(x, residual)


def solve_stein(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> EquationSolution:
    """Solve ``x = a x b + c``.

    Unique solvability requires that no product of an eigenvalue of ``a``
    with an eigenvalue of ``b`` equals one; both factors being Schur stable
    guarantees this.
    """
    a, b, c, p, q = _equation_inputs(a, b, c)
    if p == 0 or q == 0:
        return EquationSolution(np.zeros((p, q), dtype=complex), 0.0)
    m = np.eye(p * q) - np.kron(b.T, a)
    rhs = c.reshape(-1, order="F")
    x = _solve_vectorized(m, rhs, p, q)
    residual = opnorm(x - a @ x @ b - c)
    return EquationSolution(x, residual)


def zeta_of_minus(a: np.ndarray) -> np.ndarray:
    """Evaluate the half-plane-to-disk map (1-s)/(1+s) at ``-a``.

    Returns ``(I + a)(I - a)^{-1}``.  For Hurwitz-stable ``a`` every
    eigenvalue lands strictly inside the unit disk.
    """
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    if a.size == 0:
        return np.zeros((0, 0), dtype=complex)
    if a.shape[0] != a.shape[1]:
        raise StructureError(f"expected a square matrix, got {a.shape}")
    eye = np.eye(a.shape[0])
    if np.linalg.cond(eye - a) > CONDITION_LIMIT:
        raise EvaluationError("an eigenvalue of a is too close to 1; the map has a pole there")
    # (I - a) and (I + a) commute, so this equals (I + a)(I - a)^{-1}.
    return np.linalg.solve(eye - a, eye + a)


def eigenvalue_one_multiplicity(
    h: np.ndarray, tol: float = CLUSTER_TOL
) -> tuple[int, np.ndarray]:
    """Count eigenvalues of a Hermitian contraction clustered at 1.

    ``h`` is symmetrized before the eigendecomposition; inputs further than
    1e-10 from Hermitian are rejected.  Returns the count of eigenvalues
    ``>= 1 - tol`` together with the full ascending eigenvalue list, and
    raises if any eigenvalue exceeds ``1 + tol`` (the input was not the
    contraction the pipeline promised).
    """
    h = np.atleast_2d(np.asarray(h, dtype=complex))
    if h.size == 0:
        return 0, np.zeros(0)
    if h.shape[0] != h.shape[1]:
        raise StructureError(f"expected a square matrix, got {h.shape}")
    asym = opnorm(h - h.conj().T)
    if asym > 1e-10 * (1.0 + opnorm(h)):
        raise StructureError(f"matrix is not Hermitian (asymmetry {asym:.3e})")
    evals = np.linalg.eigvalsh(hermitize(h))
    top = float(evals[-1])
    if top > 1.0 + tol:
        raise ContractionViolationError(
            f"eigenvalue {top!r} exceeds 1 beyond tolerance {tol}", eigenvalue=top
        )
    count = int(np.count_nonzero(evals >= 1.0 - tol))
    return count, evals


def unit_eigenvectors(h: np.ndarray, tol: float = CLUSTER_TOL) -> np.ndarray:
    """Orthonormal eigenvectors of a Hermitian matrix with eigenvalue in [1-tol, 1+tol].

    Columns of the returned matrix span the clustered unit eigenspace; the
    matrix has zero columns when the cluster is empty.
    """
    h = np.atleast_2d(np.asarray(h, dtype=complex))
    if h.size == 0:
        return np.zeros((0, 0), dtype=complex)
    evals, evecs = np.linalg.eigh(hermitize(h))
    keep = evals >= 1.0 - tol
    return evecs[:, keep]

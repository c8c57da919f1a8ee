"""Index pipelines: from realization pairs of a unimodular symbol to its partial indices.

Given stable dissipative realizations of the two inner factors of R = V W*,
the negative partial indices are read off a chain of kernel dimensions of a
positive contraction Q obtained from two coupled matrix equations:

    a_v omega + omega a_w* + b_v b_w* = 0
    c_circ = d_v b_w* + c_v omega
    a_w q + q a_w* + c_circ* c_circ = 0

The k-th kernel dimension is the unit-eigenvalue multiplicity of
M^k Q M*^k with M the disk map of -a_w; first differences give the
multiplicities mu_k, and the indices are recovered by counting
kappa_j = #{k : mu_k >= j}.  The positive indices come from the same
pipeline applied to the swapped pair (W, V).  A discrete-time variant
replaces the two continuous equations by their fixed-point forms and uses
a_w itself as the iteration map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import (
    DISCRETE,
    Realization,
    SymbolPair,
    hermitize,
    opnorm,
    validate_stable_dissipative,
    validate_stable_unitary,
)
from .equations import (
    CLUSTER_TOL,
    eigenvalue_one_multiplicity,
    solve_stein,
    solve_sylvester,
    zeta_of_minus,
)
from .errors import ContractionViolationError, InputValidationError, PipelineError


@dataclass(frozen=True)
class PipelineTrace:
    """Intermediate matrices and diagnostics of one pipeline run."""

    omega: np.ndarray
    c_circ: np.ndarray
    q: np.ndarray
    kernel_dims: tuple[int, ...]
    residuals: dict
    q_eigenvalues: np.ndarray


@dataclass(frozen=True)
class IndexProfile:
    """Complete partial-index profile of a unimodular symbol.

    ``negative`` and ``positive`` hold the index magnitudes kappa_j and
    omega_j in descending order; ``all_indices`` is the full m-element
    multiset in ascending order, negative entries reported as -kappa_j.
    """

    negative: tuple[int, ...]
    positive: tuple[int, ...]
    zeros: int
    mu: tuple[int, ...]
    nu: tuple[int, ...]
    all_indices: tuple[int, ...]
    negative_trace: PipelineTrace
    positive_trace: PipelineTrace
    diagnostics: dict = field(default_factory=dict)


def _validated(pair: SymbolPair) -> None:
    for name, r in (("v", pair.v), ("w", pair.w)):
        report = validate_stable_dissipative(r)
        if not report.verdict:
            raise InputValidationError(
                f"factor {name} is not stable dissipative "
                f"(stable={report.stable}, max residual={report.max_residual:.3e})"
            )


def _counts_from_mu(mu: list[int]) -> list[int]:
    if not mu:
        return []
    return [sum(1 for m in mu if m >= j) for j in range(1, mu[0] + 1)]


def _kernel_dimension_chain(
    q: np.ndarray, m: np.ndarray, tol: float, cap: int
) -> tuple[list[int], np.ndarray]:
    """Unit-eigenvalue multiplicities of M^k Q M*^k until they reach zero.

    The product is accumulated by repeated conjugation with re-Hermitization
    each step, which suppresses drift caused by the non-normality of M.
    The chain must be strictly decreasing; anything else means the input was
    not a genuine unimodular symbol pair at this tolerance.
    """
    count, eigenvalues = eigenvalue_one_multiplicity(q, tol)
    if eigenvalues.size and float(eigenvalues[0]) < -tol:
        raise ContractionViolationError(
            f"Q has a negative eigenvalue {float(eigenvalues[0])!r} beyond tolerance",
            eigenvalue=float(eigenvalues[0]),
        )
    dims = [count]
    current = q
    while dims[-1] > 0:
        if len(dims) > cap:
            raise PipelineError(
                f"kernel dimensions failed to reach zero within {cap} steps: {dims}"
            )
        current = hermitize(m @ current @ m.conj().T)
        next_count, _ = eigenvalue_one_multiplicity(current, tol)
        if next_count >= dims[-1]:
            raise PipelineError(
                f"kernel dimensions are not strictly decreasing: {dims + [next_count]}"
            )
        dims.append(next_count)
    return dims, eigenvalues


def negative_profile(
    pair: SymbolPair, tol: float = CLUSTER_TOL
) -> tuple[PipelineTrace, list[int], list[int]]:
    """Run the negative-index pipeline; returns (trace, mu, kappa)."""
    _validated(pair)
    v, w = pair.v, pair.w
    omega_sol = solve_sylvester(v.a, w.a.conj().T, v.b @ w.b.conj().T)
    c_circ = v.d @ w.b.conj().T + v.c @ omega_sol.x
    q_sol = solve_sylvester(w.a, w.a.conj().T, c_circ.conj().T @ c_circ)
    q = hermitize(q_sol.x)
    m = zeta_of_minus(w.a)
    dims, eigenvalues = _kernel_dimension_chain(q, m, tol, cap=w.state_dim + 1)
    mu = [dims[k - 1] - dims[k] for k in range(1, len(dims))]
    kappa = _counts_from_mu(mu)
    trace = PipelineTrace(
        omega=omega_sol.x,
        c_circ=c_circ,
        q=q,
        kernel_dims=tuple(dims),
        residuals={"omega": omega_sol.residual, "q": q_sol.residual},
        q_eigenvalues=eigenvalues,
    )
    return trace, mu, kappa


def positive_profile(
    pair: SymbolPair, tol: float = CLUSTER_TOL
) -> tuple[PipelineTrace, list[int], list[int]]:
    """Run the positive-index pipeline; returns (trace, nu, omega_counts).

    The positive indices of V W* are the negative indices of the adjoint
    symbol W V*, so this is the same pipeline applied to the swapped pair:
    omega_dual solves a_w x + x a_v* + b_w b_v* = 0, the dual c_circ is
    d_w b_v* + c_w omega_dual, and the dual Q lives on the V state space
    with iteration map built from -a_v.
    """
    return negative_profile(pair.swapped(), tol)


def discrete_negative_profile(
    v: Realization, w: Realization, tol: float = CLUSTER_TOL
) -> tuple[PipelineTrace, list[int], list[int]]:
    """Discrete-time negative-index pipeline for stable unitary realizations.

    The fixed-point equations are omega = a_v omega a_w* + b_v b_w* and
    q = a_w q a_w* + c_circ* c_circ with
    c_circ = d_v b_w* + c_v omega a_w*; the kernel chain iterates with
    a_w itself.
    """
    for name, r in (("v", v), ("w", w)):
        if r.flavor != DISCRETE:
            raise InputValidationError(f"factor {name} must be a discrete realization")
        report = validate_stable_unitary(r)
        if not report.verdict:
            raise InputValidationError(
                f"factor {name} is not stable unitary "
                f"(stable={report.stable}, max residual={report.max_residual:.3e})"
            )
    if v.output_dim != w.output_dim:
        raise InputValidationError(
            f"factor output dimensions differ: {v.output_dim} vs {w.output_dim}"
        )
    omega_sol = solve_stein(v.a, w.a.conj().T, v.b @ w.b.conj().T)
    c_circ = v.d @ w.b.conj().T + v.c @ omega_sol.x @ w.a.conj().T
    q_sol = solve_stein(w.a, w.a.conj().T, c_circ.conj().T @ c_circ)
    q = hermitize(q_sol.x)
    dims, eigenvalues = _kernel_dimension_chain(q, w.a, tol, cap=w.state_dim + 1)
    mu = [dims[k - 1] - dims[k] for k in range(1, len(dims))]
    kappa = _counts_from_mu(mu)
    trace = PipelineTrace(
        omega=omega_sol.x,
        c_circ=c_circ,
        q=q,
        kernel_dims=tuple(dims),
        residuals={"omega": omega_sol.residual, "q": q_sol.residual},
        q_eigenvalues=eigenvalues,
    )
    return trace, mu, kappa


def _cluster_margin(eigenvalues: np.ndarray, tol: float) -> Optional[float]:
    """Distance from the eigenvalue cloud to the clustering threshold 1 - tol."""
    if eigenvalues.size == 0:
        return None
    return float(np.min(np.abs(eigenvalues - (1.0 - tol))))


def _cross_check(
    mult_dual: int, dim_dual: int, dim_primal: int, mult_primal: int,
    eigenvalues_dual: np.ndarray, tol: float,
) -> tuple[dict, Optional[str]]:
    """Balance check: unit multiplicity of the dual Q against the primal corank.

    The rank of I - Q at the shared tolerance is the primal state dimension
    minus the primal unit multiplicity, and the dual unit multiplicity must
    equal the dual state dimension minus that rank.  A mismatch that
    disappears when the clustering tolerance is widened tenfold is reported
    as a warning; a persistent mismatch is a hard error.
    """
    expected = dim_dual - (dim_primal - mult_primal)
    detail = {"multiplicity": mult_dual, "expected": expected}
    if mult_dual == expected:
        return detail, None
    widened = int(np.count_nonzero(eigenvalues_dual >= 1.0 - 10.0 * tol)) if eigenvalues_dual.size else 0
    if widened == expected or abs(mult_dual - expected) <= _margin_slack(eigenvalues_dual, tol):
        return detail, (
            f"cross-check mismatch within clustering slack: multiplicity {mult_dual}, "
            f"expected {expected}"
        )
    raise PipelineError(
        f"cross-check failed: dual unit multiplicity {mult_dual}, expected {expected}"
    )


def _margin_slack(eigenvalues: np.ndarray, tol: float) -> int:
    """Number of eigenvalues sitting inside the widened clustering band."""
    if eigenvalues.size == 0:
        return 0
    band = (eigenvalues >= 1.0 - 10.0 * tol) & (eigenvalues < 1.0 - tol)
    return int(np.count_nonzero(band))


def full_profile(pair: SymbolPair, tol: float = CLUSTER_TOL) -> IndexProfile:
    """Run both pipelines and assemble the complete index profile.

    Cross-checks the two runs against each other: the dual trace must carry
    the conjugate transpose of omega, and the unit multiplicities must
    balance the state dimensions on both sides.
    """
    negative_trace, mu, kappa = negative_profile(pair, tol)
    positive_trace, nu, omegas = positive_profile(pair, tol)
    m = pair.output_dim
    p, q_count = len(kappa), len(omegas)
    if p + q_count > m:
        raise PipelineError(
            f"profile is inconsistent: {p} negative and {q_count} positive indices "
            f"exceed the output dimension {m}"
        )
    zeros = m - p - q_count
    all_indices = sorted([-k for k in kappa] + [0] * zeros + list(omegas))

    warnings = []
    mult_neg = negative_trace.kernel_dims[0]
    mult_pos = positive_trace.kernel_dims[0]
    dim_w, dim_v = pair.w.state_dim, pair.v.state_dim
    pos_detail, warn = _cross_check(
        mult_pos, dim_v, dim_w, mult_neg, positive_trace.q_eigenvalues, tol
    )
    if warn:
        warnings.append("positive side: " + warn)
    neg_detail, warn = _cross_check(
        mult_neg, dim_w, dim_v, mult_pos, negative_trace.q_eigenvalues, tol
    )
    if warn:
        warnings.append("negative side: " + warn)

    omega_mismatch = opnorm(positive_trace.omega - negative_trace.omega.conj().T)
    scale = 1.0 + opnorm(negative_trace.omega)
    if omega_mismatch > 1e-8 * scale:
        raise PipelineError(
            f"dual coupling solution is not the conjugate transpose of the primal one "
            f"(mismatch {omega_mismatch:.3e})"
        )
    if omega_mismatch > 1e-10 * scale:
        warnings.append(f"dual coupling mismatch {omega_mismatch:.3e} above target 1e-10")

    diagnostics = {
        "cross_checks": {"negative": neg_detail, "positive": pos_detail},
        "cross_check_margins": {
            "negative": _cluster_margin(negative_trace.q_eigenvalues, tol),
            "positive": _cluster_margin(positive_trace.q_eigenvalues, tol),
        },
        "omega_duality_mismatch": omega_mismatch,
        "warnings": warnings,
    }
    return IndexProfile(
        negative=tuple(kappa),
        positive=tuple(omegas),
        zeros=zeros,
        mu=tuple(mu),
        nu=tuple(nu),
        all_indices=tuple(all_indices),
        negative_trace=negative_trace,
        positive_trace=positive_trace,
        diagnostics=diagnostics,
    )

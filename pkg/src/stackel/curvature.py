"""Curvature of metrics that depend on a single coordinate.

The metrics handled here are 4x4, block-diagonal, and depend only on the
evolution variable tau (coordinate 0):

    ds^2 = g_tt(tau) dtau^2 + g_ab(tau) du^a du^b,      a, b = 1, 2, 3.

Two independent Ricci computations are provided:

* :func:`ricci_general` evaluates the textbook formula

      R_ij = d_l Gamma^l_ij - d_j Gamma^l_li
             + Gamma^l_ij Gamma^m_lm - Gamma^l_im Gamma^m_jl

  directly from a :class:`MetricJet` (metric plus first and second
  tau-derivatives); all Christoffel derivatives are analytic in the jet.

* :func:`ricci_kappa` uses the specialised mixed-index components for this
  metric class, written in terms of kappa = g^(-1) g' (the logarithmic
  derivative of the spatial block).  Agreement of the two paths is the
  package's main defence against transcription errors in either formula.

Index conventions: `ricci_general` returns covariant R_ij; the kappa path
returns mixed components (R^0_0, R^a_b).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateMetricError, EvaluationError, SingularVolumeError
from .numerics import Stencil, TauGrid, central_diff

DEGENERACY_RTOL = 1e-12


def _sym(m):
    return 0.5 * (m + m.T)


def _degenerate(g):
    """Degeneracy test scaled per row (Hadamard bound), not by the largest
    entry alone: strongly anisotropic metrics are invertible even when
    |det g| is far below (max entry)^n."""
    scale = float(np.prod(np.abs(g).max(axis=1)))
    det = float(np.linalg.det(g))
    return det, abs(det) <= DEGENERACY_RTOL * max(scale, 1e-300)


@dataclass(frozen=True)
class MetricJet:
    """Metric at one tau value together with its first two tau-derivatives.

    ``epsilon_time`` is +1 when coordinate 0 is timelike (g_00 = -1 in the
    privileged form) and -1 when it is spacelike.
    """

    g: np.ndarray
    dg: np.ndarray
    ddg: np.ndarray
    epsilon_time: int = 1

    def __post_init__(self):
        for name in ("g", "dg", "ddg"):
            m = np.asarray(getattr(self, name), dtype=float)
            object.__setattr__(self, name, m)
            if m.shape != (4, 4):
                raise ValueError(f"{name} must be 4x4, got {m.shape}")
            if not np.all(np.isfinite(m)):
                raise ValueError(f"{name} has non-finite entries")
            if not np.allclose(m, m.T, rtol=0, atol=1e-9 * max(1.0, np.abs(m).max())):
                raise ValueError(f"{name} must be symmetric")
        if self.epsilon_time not in (-1, 1):
            raise ValueError(f"epsilon_time must be +-1, got {self.epsilon_time}")
        det, bad = _degenerate(self.g)
        if bad:
            raise DegenerateMetricError(
                f"metric is degenerate (det={det:.3e})", det=det
            )
        # Lorentzian check: exactly one eigenvalue sign differs from the rest.
        negatives = int(np.sum(np.linalg.eigvalsh(self.g) < 0))
        if negatives not in (1, 3):
            raise ValueError(
                f"metric signature is not Lorentzian ({negatives} negative eigenvalues)"
            )


def invert_sym4(g):
    """Inverse of a symmetric 4x4 metric, guarding against degeneracy."""
    g = np.asarray(g, dtype=float)
    det, bad = _degenerate(g)
    if bad:
        raise DegenerateMetricError(f"metric is degenerate (det={det:.3e})", det=det)
    return _sym(np.linalg.inv(g))


def _partials(dg):
    """d_k g_ij as a (4,4,4) array; only the k=0 slice is nonzero."""
    p = np.zeros((4, 4, 4))
    p[0] = dg
    return p


def christoffel(jet):
    """Christoffel symbols Gamma^i_jk of a jet, symmetric in (j, k)."""
    ginv = invert_sym4(jet.g)
    p = _partials(jet.dg)
    # T[l,j,k] = d_k g_lj + d_j g_lk - d_l g_jk
    t = np.einsum("klj->ljk", p) + np.einsum("jlk->ljk", p) - np.einsum("ljk->ljk", p)
    return 0.5 * np.einsum("il,ljk->ijk", ginv, t)


def christoffel_dot(jet):
    """tau-derivative of the Christoffel symbols, analytic in the jet."""
    ginv = invert_sym4(jet.g)
    dginv = -ginv @ jet.dg @ ginv
    p = _partials(jet.dg)
    dp = _partials(jet.ddg)
    t = np.einsum("klj->ljk", p) + np.einsum("jlk->ljk", p) - np.einsum("ljk->ljk", p)
    dt = np.einsum("klj->ljk", dp) + np.einsum("jlk->ljk", dp) - np.einsum("ljk->ljk", dp)
    return 0.5 * (np.einsum("il,ljk->ijk", dginv, t) + np.einsum("il,ljk->ijk", ginv, dt))


def ricci_general(jet):
    """Covariant Ricci tensor R_ij from the general formula.

    Derivatives act only along coordinate 0, so the two derivative terms
    reduce to tau-derivatives of Gamma, available analytically from the jet.
    """
    gam = christoffel(jet)
    dgam = christoffel_dot(jet)
    r = dgam[0].copy()                       # d_l Gamma^l_ij -> l = 0 term only
    trace_dgam = np.einsum("lli->i", dgam)   # d/dtau of Gamma^l_li
    r[:, 0] -= trace_dgam                    # -d_j Gamma^l_li nonzero only for j = 0
    r += np.einsum("lij,mlm->ij", gam, gam)
    r -= np.einsum("lim,mjl->ij", gam, gam)
    return r


def ricci_mixed_u0(kappa, dkappa, epsilon_time):
    """Mixed Ricci components from the logarithmic spatial derivative, in the
    privileged coordinate u0 itself (g_00 = -epsilon constant).

    ``kappa``/``dkappa`` are kappa^a_b = g^(ac) g_cb' and its u0-derivative.
    The volume density drops out through (log l)' = tr(kappa)/2:

        R^0_0 = (eps/4) (2 tr kappa' + tr(kappa kappa))
        R^a_b = (eps/2) (kappa' + (tr kappa / 2) kappa)^a_b
    """
    kappa = np.asarray(kappa, dtype=float)
    dkappa = np.asarray(dkappa, dtype=float)
    r00 = 0.25 * epsilon_time * (2.0 * np.trace(dkappa) + np.trace(kappa @ kappa))
    rab = 0.5 * epsilon_time * (dkappa + 0.5 * np.trace(kappa) * kappa)
    return r00, rab


def ricci_kappa(spatial_g, spatial_dg, spatial_ddg, ell, epsilon_time):
    """Mixed Ricci components (R^0_0, R^a_b) in the tau parametrisation.

    ``spatial_*`` are the 3x3 spatial block and its tau-derivatives; ``ell``
    is the volume density (du0/dtau).  Converting the u0-form to tau brings
    in 1/ell^2 and replaces the connection term with tr(kappa)/2 via the
    determinant identity 2 l'/l = tr kappa:

        R^0_0 = (eps / 4 l^2) (2 tr kappa' - (tr kappa)^2 + tr kappa^2)
        R^a_b = (eps / 2 l^2) kappa'^a_b
    """
    if ell == 0 or not np.isfinite(ell):
        raise SingularVolumeError(f"volume density must be finite nonzero, got {ell}")
    g = np.asarray(spatial_g, dtype=float)
    dg = np.asarray(spatial_dg, dtype=float)
    ddg = np.asarray(spatial_ddg, dtype=float)
    det, bad = _degenerate(g)
    if bad:
        raise DegenerateMetricError(f"spatial block degenerate (det={det:.3e})", det=det)
    ginv = np.linalg.inv(g)
    kappa = ginv @ dg
    dkappa = ginv @ ddg - kappa @ kappa
    ell2 = float(ell) ** 2
    tk = np.trace(kappa)
    r00 = epsilon_time / (4.0 * ell2) * (
        2.0 * np.trace(dkappa) - tk * tk + np.trace(kappa @ kappa)
    )
    rab = epsilon_time / (2.0 * ell2) * dkappa
    return r00, rab


def ricci_mixed_from_jet(jet):
    """Index-raised Ricci R^i_j = g^(ik) R_kj from the general path."""
    return invert_sym4(jet.g) @ ricci_general(jet)


def fd_jet_provider(g_of_tau, epsilon_time=1, stencil=None):
    """Wrap a plain metric function tau -> 4x4 into a jet provider, building
    the derivatives by finite differences.

    Fallback path for metrics supplied without analytic derivatives; residual
    tolerances for it are correspondingly looser.
    """
    if stencil is None:
        stencil = Stencil()

    def provider(tau):
        g = np.asarray(g_of_tau(tau), dtype=float)
        dg = central_diff(g_of_tau, tau, stencil, order=1)
        ddg = central_diff(g_of_tau, tau, stencil, order=2)
        return MetricJet(g=_sym(g), dg=_sym(dg), ddg=_sym(ddg), epsilon_time=epsilon_time)

    return provider


@dataclass(frozen=True)
class ResidualReport:
    """Einstein-equation residuals |R_ij - Lambda g_ij| over a grid."""

    grid: TauGrid
    per_point_max: np.ndarray
    global_max: float
    ricci_scalar_dev: float
    failures: tuple = field(default_factory=tuple)

    def __post_init__(self):
        ppm = np.asarray(self.per_point_max, dtype=float)
        object.__setattr__(self, "per_point_max", ppm)
        if ppm.size and not np.all(np.isfinite(ppm)):
            raise ValueError("per-point residuals must be finite")
        if ppm.size and not np.isclose(self.global_max, float(ppm.max())):
            raise ValueError("global_max must equal the max of per_point_max")

    @property
    def passed_points(self):
        return len(self.per_point_max)


def einstein_residual(jet_provider, lam, grid):
    """Residual report for R_ij = Lambda g_ij over ``grid``.

    Per-point failures are collected rather than raised; the whole run only
    fails when more than 10% of the grid errors out.
    """
    per_point = []
    devs = []
    failures = []
    for tau in grid:
        try:
            jet = jet_provider(float(tau))
            r = ricci_general(jet)
            diff = r - lam * jet.g
            per_point.append(float(np.abs(diff).max()))
            scalar = float(np.trace(invert_sym4(jet.g) @ r))
            devs.append(abs(scalar - 4.0 * lam))
        except Exception as exc:  # noqa: BLE001 - collected per point by contract
            failures.append((float(tau), repr(exc)))
    if len(failures) > 0.10 * len(grid):
        raise EvaluationError(
            f"{len(failures)} of {len(grid)} grid points failed; first: {failures[0]}",
            tau=failures[0][0],
        )
    per_point = np.asarray(per_point)
    return ResidualReport(
        grid=grid,
        per_point_max=per_point,
        global_max=float(per_point.max()) if per_point.size else 0.0,
        ricci_scalar_dev=float(max(devs)) if devs else 0.0,
        failures=tuple(failures),
    )

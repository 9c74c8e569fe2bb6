"""Finite-difference derivatives and fixed-step ODE integration.

These are the only two numerical primitives the verification paths rely on:
central differences with Richardson extrapolation (used to cross-check
analytic derivatives and to build metric jets for user-supplied metrics),
and a classic fixed-step RK4 integrator (used to cross-check the closed-form
solutions of the linear subsystem).  Everything here is a pure function;
there is no shared state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EvaluationError, GridError, IntegrationBlowupError

DEFAULT_H = 1e-4
DEFAULT_RICHARDSON_LEVELS = 2
DEFAULT_EXCLUSION_MARGIN = 0.05


@dataclass(frozen=True)
class Stencil:
    """Step size and extrapolation depth for central differences.

    ``richardson_levels`` counts extrapolation passes: with L levels the
    truncation error of a smooth function is O(h^(2L+2)).
    """

    h: float = DEFAULT_H
    richardson_levels: int = DEFAULT_RICHARDSON_LEVELS

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"stencil step must be positive, got {self.h}")
        if self.richardson_levels not in (1, 2, 3):
            raise ValueError(
                f"richardson_levels must be 1, 2 or 3, got {self.richardson_levels}"
            )


@dataclass(frozen=True)
class TauGrid:
    """Strictly increasing evaluation points, kept clear of singular values.

    ``excluded`` lists the singular abscissae the grid was built against;
    every grid point must stay at least ``exclusion_margin`` away from each
    of them.
    """

    points: np.ndarray
    exclusion_margin: float = DEFAULT_EXCLUSION_MARGIN
    excluded: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size == 0:
            raise GridError("grid needs a non-empty 1-d array of points")
        if not np.all(np.isfinite(pts)):
            raise GridError("grid points must be finite")
        if pts.size > 1 and not np.all(np.diff(pts) > 0):
            raise GridError("grid points must be strictly increasing")
        if not self.exclusion_margin > 0:
            raise GridError(
                f"exclusion margin must be positive, got {self.exclusion_margin}"
            )
        for s in self.excluded:
            d = np.min(np.abs(pts - s))
            if d < self.exclusion_margin:
                raise GridError(
                    f"grid point at distance {d:.3g} from singular value {s:.6g} "
                    f"(margin {self.exclusion_margin:.3g})"
                )

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @classmethod
    def from_range(cls, a, b, n, excluded=(), margin=DEFAULT_EXCLUSION_MARGIN):
        """Build n equispaced points on [a, b], dropping any that sit within
        ``margin`` of an excluded value."""
        if n < 2:
            raise GridError(f"need at least 2 points, got {n}")
        pts = np.linspace(float(a), float(b), int(n))
        if excluded:
            keep = np.ones(len(pts), dtype=bool)
            for s in excluded:
                keep &= np.abs(pts - s) >= margin
            pts = pts[keep]
        if pts.size < 2:
            raise GridError("fewer than 2 grid points remain after exclusions")
        return cls(points=pts, exclusion_margin=margin, excluded=tuple(excluded))


def _eval_checked(f, tau):
    y = f(tau)
    if not np.all(np.isfinite(y)):
        raise EvaluationError(f"non-finite function value at tau={tau!r}", tau=tau)
    return y


def central_diff(f, tau0, stencil=None, order=1):
    """First or second derivative of ``f`` at ``tau0`` by central differences
    with Richardson extrapolation.

    Both base formulas have error series in even powers of h, so each
    extrapolation pass removes one power of h^2 (factor-4 Neville update).
    """
    if stencil is None:
        stencil = Stencil()
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")

    levels = stencil.richardson_levels
    f0 = _eval_checked(f, tau0) if order == 2 else None

    def base(h):
        fp = _eval_checked(f, tau0 + h)
        fm = _eval_checked(f, tau0 - h)
        if order == 1:
            return (fp - fm) / (2.0 * h)
        return (fp - 2.0 * f0 + fm) / (h * h)

    # Neville tableau over steps h, h/2, ..., h/2^levels.
    row = [base(stencil.h / 2.0**j) for j in range(levels + 1)]
    for m in range(1, levels + 1):
        fac = 4.0**m
        row = [
            (fac * row[j + 1] - row[j]) / (fac - 1.0)
            for j in range(len(row) - 1)
        ]
    return row[0]


def rk4_integrate(field_fn, y0, span, steps):
    """Integrate dy/dtau = field_fn(tau, y) with the classic RK4 scheme.

    Returns ``(taus, states)`` where ``taus`` has ``steps + 1`` entries
    (both endpoints included) and ``states[k]`` is the state at ``taus[k]``.
    ``y0`` may be any ndarray shape; matrix-valued systems integrate as-is.
    """
    if steps < 10:
        raise ValueError(f"need at least 10 steps, got {steps}")
    ta, tb = float(span[0]), float(span[1])
    y = np.array(y0, dtype=float)
    h = (tb - ta) / steps

    taus = np.empty(steps + 1)
    states = np.empty((steps + 1,) + y.shape)
    taus[0] = ta
    states[0] = y

    t = ta
    for k in range(1, steps + 1):
        k1 = np.asarray(field_fn(t, y))
        k2 = np.asarray(field_fn(t + h / 2.0, y + (h / 2.0) * k1))
        k3 = np.asarray(field_fn(t + h / 2.0, y + (h / 2.0) * k2))
        k4 = np.asarray(field_fn(t + h, y + h * k3))
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = ta + k * h
        if not np.all(np.isfinite(y)):
            raise IntegrationBlowupError(
                f"state became non-finite between tau={taus[k-1]:.6g} and tau={t:.6g}",
                last_tau=taus[k - 1],
            )
        taus[k] = t
        states[k] = y
    return taus, states

"""Closed-form solutions of the two autonomous subsystems.

First subsystem: the reduced spatial metric eta(tau) obeys the linear system

    deta/dtau = eta C        (eta symmetric, eta C symmetric),

with C the constant structure matrix.  In the canonical frames there are
three solution families, one per canonical variant:

* variant A (real-diagonal C): eta = diag(e_a exp(a_alpha tau)),
* variant B (scaled-rotation block): an exponential envelope times a
  rotating symmetric block with eigenvalues of opposite sign,
* variant C (Jordan block): a polynomial-times-exponential block with a
  vanishing (3,3) entry.

Second subsystem: the scalar phi = 3*gamma + tau*tr(C) + lam + k satisfies

    4 phi'' - 2 phi'^2 + 3 tr(C^2) - (tr C)^2 = 0,
    phi'' = 3 xi exp(phi),

whose solutions split into four branches (cos, cosh, sinh, power) selected
by the sign invariant (epsilon, xi).  The invariant pair comes from

    (tr C)^2 - 3 tr(C^2) = 2 epsilon p^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BranchError,
    DegenerateRotationError,
    DomainError,
)

EPSILON_P_RTOL = 1e-12

# Admissible (epsilon, xi) pairs and their conformal-factor branch.  The
# missing pair (+1, -1) has no real solution: the first integral forces
# phi'' = (phi'^2 + p^2)/2 > 0 while xi = -1 forces phi'' < 0.
BRANCH_TABLE = {
    (1, 1): "cos",
    (-1, -1): "cosh",
    (-1, 1): "sinh",
    (0, 1): "power",
}


def epsilon_p(C):
    """Sign and magnitude invariants (epsilon, p) of a structure matrix.

    Computes q = (tr C)^2 - 3 tr(C C); epsilon is the sign of q (values
    within 1e-12 of zero relative to ||C||^2 count as zero) and p =
    sqrt(|q|/2).
    """
    C = np.asarray(C, dtype=float)
    q = float(np.trace(C)) ** 2 - 3.0 * float(np.trace(C @ C))
    scale = float(np.sum(C * C))  # squared Frobenius norm, same units as q
    if abs(q) <= EPSILON_P_RTOL * max(scale, 1e-300):
        return 0, 0.0
    return (1 if q > 0 else -1), math.sqrt(abs(q) / 2.0)


def _check_signs(signs, variant):
    signs = tuple(int(s) for s in signs)
    if len(signs) != 3 or any(s not in (-1, 1) for s in signs):
        raise ValueError(f"signs must be three values from {{-1,+1}}, got {signs}")
    if variant == "B" and signs[1:] != (1, 1):
        raise ValueError(
            "variant B has sign freedom only in the first slot "
            "(the rotating block fixes the other two)"
        )
    if variant == "C" and signs[2] != 1:
        raise ValueError(
            "variant C has sign freedom only in the first two slots "
            "(the degenerate block entry is identically zero)"
        )
    return signs


@dataclass(frozen=True)
class SpatialSolution:
    """Closed-form eta(tau) for a canonical structure matrix.

    ``C`` is the canonical matrix the solution satisfies, ``det0`` the
    determinant of eta at tau = 0 (so det eta(tau) = det0 exp(tr C tau)).
    First and second derivatives come from the subsystem itself:
    eta' = eta C, eta'' = eta C C.
    """

    variant: str
    params: dict
    signs: tuple
    C: np.ndarray
    det0: float
    _eta_fn: callable = field(repr=False)

    def eta(self, tau):
        return self._eta_fn(float(tau))

    def deta(self, tau):
        return self._eta_fn(float(tau)) @ self.C

    def ddeta(self, tau):
        return self._eta_fn(float(tau)) @ self.C @ self.C

    def det_eta(self, tau):
        return self.det0 * math.exp(float(np.trace(self.C)) * float(tau))

    @property
    def det_sign(self):
        return 1 if self.det0 > 0 else -1


def _eta_variant_a(a1, a2, a3, signs):
    e = np.array(signs, dtype=float)
    a = np.array([a1, a2, a3])

    def eta(tau):
        return np.diag(e * np.exp(a * tau))

    return eta


def _eta_variant_b(slot1, mu, nu, e1):
    def eta(tau):
        env = math.exp(mu * tau)
        w = nu * tau
        m = np.zeros((3, 3))
        m[0, 0] = e1 * math.exp(slot1 * tau)
        m[1, 1] = env * math.sin(w)
        m[1, 2] = m[2, 1] = env * math.cos(w)
        m[2, 2] = -m[1, 1]
        return m

    return eta


def _eta_variant_c(c1, a, e1, e2):
    def eta(tau):
        env = math.exp(a * tau)
        m = np.zeros((3, 3))
        m[0, 0] = e1 * math.exp(c1 * tau)
        m[1, 1] = e2 * tau * env
        m[1, 2] = m[2, 1] = e2 * env
        return m

    return eta


def solve_eta(cls, signs=(1, 1, 1)):
    """Closed-form spatial solution for a classified structure matrix.

    ``cls`` is a CanonicalClass (module ``canonical``); the solution is in
    the canonical frame, i.e. it satisfies eta' = eta K with K =
    cls.canonical.  Sign factors flip the admissible components; variants B
    and C admit a reduced sign set.
    """
    signs = _check_signs(signs, cls.variant)
    e1, e2, e3 = signs
    p = cls.params
    if cls.variant == "A":
        a1, a2, a3 = p["a1"], p["a2"], p["a3"]
        eta = _eta_variant_a(a1, a2, a3, signs)
        det0 = float(e1 * e2 * e3)
    elif cls.variant == "B":
        r, ang = p["scale"], p["angle"]
        if not (0.0 < ang < math.pi) or r * math.sin(ang) <= 0:
            raise DegenerateRotationError(
                f"rotation rate vanishes for angle={ang}, scale={r}; "
                "the diagonal variant covers this case"
            )
        mu = r * math.cos(ang)
        nu = r * math.sin(ang)
        slot1 = r * p["c"] + mu
        eta = _eta_variant_b(slot1, mu, nu, e1)
        det0 = float(-e1)
    elif cls.variant == "C":
        c1, a = p["c1"], p["a"]
        eta = _eta_variant_c(c1, a, e1, e2)
        det0 = float(-e1 * e2 * e2)
    else:
        raise ValueError(f"unknown variant {cls.variant!r}")
    return SpatialSolution(
        variant=cls.variant,
        params=dict(p),
        signs=signs,
        C=np.array(cls.canonical, dtype=float),
        det0=det0,
        _eta_fn=eta,
    )


def transform_spatial(sol, S):
    """Carry a canonical-frame solution back to the frame of the original
    matrix C = S^-1 K S.

    If eta_K solves eta' = eta K, then S^T eta_K S solves eta' = eta C.  The
    result is rescaled by |det S|^(-2/3) so its determinant at tau = 0 keeps
    unit magnitude (the volume-density identity of the assembled metric
    needs that normalisation).
    """
    S = np.asarray(S, dtype=float)
    dets = float(np.linalg.det(S))
    if dets == 0:
        raise ValueError("transform must be invertible")
    scale = abs(dets) ** (-2.0 / 3.0)
    K = sol.C
    C_orig = np.linalg.solve(S, K @ S)  # S^-1 K S
    base = sol._eta_fn

    def eta(tau):
        return scale * (S.T @ base(tau) @ S)

    # det0 is unchanged: (det S)^2 from the congruence cancels the rescale.
    return SpatialSolution(
        variant=sol.variant,
        params=dict(sol.params),
        signs=sol.signs,
        C=C_orig,
        det0=sol.det0,
        _eta_fn=eta,
    )


@dataclass(frozen=True)
class PhiSolution:
    """One closed-form branch of the conformal-factor subsystem."""

    epsilon: int
    xi: int
    p: float
    branch: str

    def _u(self, tau):
        return 0.5 * tau * self.p

    def _guard(self, tau):
        d = self.nearest_singularity_distance(tau)
        if d is not None and d < 1e-12:
            raise DomainError(f"tau={tau} is singular for the {self.branch} branch", tau=tau)

    def exp_phi(self, tau):
        tau = float(tau)
        self._guard(tau)
        p = self.p
        if self.branch == "cos":
            return p * p / (6.0 * math.cos(self._u(tau)) ** 2)
        if self.branch == "cosh":
            return p * p / (6.0 * math.cosh(self._u(tau)) ** 2)
        if self.branch == "sinh":
            return p * p / (6.0 * math.sinh(self._u(tau)) ** 2)
        return 2.0 / (3.0 * tau * tau)

    def dphi(self, tau):
        tau = float(tau)
        self._guard(tau)
        p = self.p
        if self.branch == "cos":
            return p * math.tan(self._u(tau))
        if self.branch == "cosh":
            return -p * math.tanh(self._u(tau))
        if self.branch == "sinh":
            return -p / math.tanh(self._u(tau))
        return -2.0 / tau

    def ddphi(self, tau):
        tau = float(tau)
        self._guard(tau)
        p = self.p
        if self.branch == "cos":
            return 0.5 * p * p * (1.0 + math.tan(self._u(tau)) ** 2)
        if self.branch == "cosh":
            return -0.5 * p * p / math.cosh(self._u(tau)) ** 2
        if self.branch == "sinh":
            return 0.5 * p * p / math.sinh(self._u(tau)) ** 2
        return 2.0 / (tau * tau)

    def singularities(self, a, b):
        """Singular tau values inside [a, b]."""
        if self.branch == "cosh":
            return []
        if self.branch in ("sinh", "power"):
            return [0.0] if a <= 0.0 <= b else []
        # cos branch: odd multiples of pi/p
        step = math.pi / self.p
        out = []
        m = math.ceil((a - step) / (2.0 * step))
        while True:
            s = (2 * m + 1) * step
            if s > b:
                break
            if s >= a:
                out.append(s)
            m += 1
        return out

    def nearest_singularity_distance(self, tau):
        if self.branch == "cosh":
            return None
        if self.branch in ("sinh", "power"):
            return abs(tau)
        step = math.pi / self.p
        m = round((tau / step - 1.0) / 2.0)  # nearest odd multiple of step
        return abs(tau - (2 * m + 1) * step)

    def default_domain(self, margin_frac=0.05):
        """Default verification window, clear of the branch's singular set."""
        if self.branch == "cos":
            half = math.pi / self.p
            return (-half * (1.0 - margin_frac), half * (1.0 - margin_frac))
        return (0.2, 5.0)


def make_phi(epsilon, xi, p=None):
    """Construct the conformal-factor branch for the invariant pair.

    Rejects pairings outside the admissible table (there is no real branch
    with epsilon = +1, xi = -1, nor with epsilon = 0, xi = -1).
    """
    epsilon = int(epsilon)
    xi = int(xi)
    branch = BRANCH_TABLE.get((epsilon, xi))
    if branch is None:
        raise BranchError(
            f"no real branch for (epsilon, xi) = ({epsilon}, {xi}); "
            f"admissible pairs: {sorted(BRANCH_TABLE)}"
        )
    if epsilon == 0:
        p_val = 0.0
    else:
        if p is None or not p > 0:
            raise BranchError(f"p must be positive for epsilon = {epsilon}, got {p}")
        p_val = float(p)
    return PhiSolution(epsilon=epsilon, xi=xi, p=p_val, branch=branch)


def solve_phi(epsilon, xi, p, tau):
    """Value of exp(phi) at tau for the requested branch."""
    return make_phi(epsilon, xi, p).exp_phi(tau)


def phi_residuals(sol, C, grid):
    """Max residuals of the two conformal-factor equations over a grid.

    r1 checks 4 phi'' - 2 phi'^2 + 3 tr(C^2) - (tr C)^2 = 0,
    r2 checks phi'' = 3 xi exp(phi); derivatives are the analytic branch
    formulas.
    """
    C = np.asarray(C, dtype=float)
    trc = float(np.trace(C))
    trc2 = float(np.trace(C @ C))
    r1 = 0.0
    r2 = 0.0
    for tau in grid:
        dd = sol.ddphi(tau)
        d = sol.dphi(tau)
        r1 = max(r1, abs(4.0 * dd - 2.0 * d * d + 3.0 * trc2 - trc * trc))
        r2 = max(r2, abs(dd - 3.0 * sol.xi * sol.exp_phi(tau)))
    return r1, r2


def first_integral_check(sol, grid):
    """Max deviation from the differentiated first integral
    phi'' = (phi'^2 + epsilon p^2) / 2 over a grid."""
    dev = 0.0
    ep2 = sol.epsilon * sol.p * sol.p
    for tau in grid:
        dev = max(dev, abs(sol.ddphi(tau) - 0.5 * (sol.dphi(tau) ** 2 + ep2)))
    return dev


@dataclass(frozen=True)
class CosmologicalData:
    """Sign data and constants fixing the cosmological term.

    The cosmological constant is 2 Lambda = epsilon_time * xi * exp(lam),
    never zero; ``k`` is the residual integration constant of the volume
    density, absorbed to zero by a constant rescaling of the spatial
    coordinates.
    """

    epsilon_time: int
    xi: int
    lam: float
    k: float = 0.0

    def __post_init__(self):
        if self.epsilon_time not in (-1, 1):
            raise ValueError(f"epsilon_time must be +-1, got {self.epsilon_time}")
        if self.xi not in (-1, 1):
            raise ValueError(f"xi must be +-1, got {self.xi}")

    @property
    def lambda_cosmo(self):
        return 0.5 * self.epsilon_time * self.xi * math.exp(self.lam)

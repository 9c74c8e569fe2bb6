"""Canonical reduction of the constant structure matrix.

A 3x3 real structure matrix C drives the linear subsystem eta' = eta C.
Constant invertible transforms S of the three Killing coordinates act on it
by similarity, C -> S C S^-1.  Under that action every admissible C reduces
to a block form with an invariant first slot and a 2x2 residual block, and
the block falls into exactly one of three canonical variants:

* A - real-diagonalizable: canonical matrix diag(a1, a2, a3);
* B - complex-conjugate pair: canonical block is a scaled rotation
      [[mu, -nu], [nu, mu]] with nu > 0;
* C - defective (Jordan) pair: canonical block [[a, 0], [1, a]] with unit
      sub-diagonal coupling.

The only matrices that cannot be split are those with a single size-3
Jordan chain: their unique invariant line lies inside their unique
invariant plane, so no invariant complement exists.  These raise
:class:`NotSplittableError`.

Eigenvalues are computed from the characteristic cubic in closed form
(trigonometric / Cardano branches) with Newton polish for simple roots;
multiple roots are re-centred on the derivative's root, which stays well
conditioned where the closed form does not.  Rank and defectiveness
decisions use a relative tolerance of 1e-9, matching the discriminant
tolerance 1e-9 * ||block||^2 of the variant test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidTransformError, NotSplittableError, StackelError
from .solutions import epsilon_p

DISC_RTOL = 1e-9     # variant discriminant, relative to ||block||^2
RANK_RTOL = 1e-9     # rank / defectiveness decisions
SPLIT_ATOL = 1e-12   # "already split" entry test, relative to scale
PATTERN_RTOL = 1e-9  # canonical-pattern reproduction check


@dataclass(frozen=True)
class StructureMatrix:
    """Constant matrix of the first integrals, C^a_b stored as C[a, b].

    Admissibility means a symmetric nondegenerate eta0 with eta0 C symmetric
    exists; :func:`admissible_eta0` produces one (solving the linear system
    eta C - C^T eta = 0 over symmetric eta).
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", m)
        if m.shape != (3, 3):
            raise ValueError(f"structure matrix must be 3x3, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("structure matrix entries must be finite")

    @property
    def trace(self):
        return float(np.trace(self.matrix))

    def invariants(self):
        return epsilon_p(self.matrix)


@dataclass(frozen=True)
class CanonicalClass:
    """Result of classifying a structure matrix.

    ``transform`` is the invertible S with S C S^-1 equal to ``canonical``
    (the exact variant pattern rebuilt from ``params``).  ``epsilon`` and
    ``p`` are the sign/magnitude invariants of C.
    """

    variant: str
    params: dict
    transform: np.ndarray
    canonical: np.ndarray
    matrix: np.ndarray
    epsilon: int
    p: float

    @property
    def trace(self):
        return float(np.trace(self.canonical))


def _as_matrix(C):
    if isinstance(C, StructureMatrix):
        return C.matrix
    m = np.asarray(C, dtype=float)
    if m.shape != (3, 3) or not np.all(np.isfinite(m)):
        raise ValueError("structure matrix must be a finite 3x3 array")
    return m


def admissible_transform(C, S):
    """Similarity action of a coordinate transform: returns S C S^-1."""
    Cm = _as_matrix(C)
    S = np.asarray(S, dtype=float)
    if S.shape != (3, 3):
        raise InvalidTransformError(f"transform must be 3x3, got {S.shape}")
    scale = max(1e-300, float(np.abs(S).max()))
    if abs(np.linalg.det(S)) <= 1e-12 * scale**3:
        raise InvalidTransformError("transform matrix is singular")
    return S @ Cm @ np.linalg.inv(S)


def admissible_eta0(C, tries=32):
    """A symmetric nondegenerate eta0 with eta0 C symmetric, or None.

    The symmetry condition eta C = C^T eta is linear in the six independent
    components of eta and automatically antisymmetric, so the solution space
    is at least 3-dimensional; we search it for a nondegenerate element with
    a deterministic sequence of coefficient vectors.
    """
    Cm = _as_matrix(C)
    # Basis of symmetric matrices.
    idx = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)]
    cols = []
    for (i, j) in idx:
        e = np.zeros((3, 3))
        e[i, j] = e[j, i] = 1.0
        r = e @ Cm - Cm.T @ e  # antisymmetric residual
        cols.append([r[0, 1], r[0, 2], r[1, 2]])
    A = np.array(cols).T  # 3 equations x 6 unknowns
    _, s, vt = np.linalg.svd(A)
    tol = max(s[0] if s.size else 0.0, 1.0) * 1e-12
    null = vt[np.sum(s > tol):]  # rows spanning the solution space
    if null.size == 0:
        return None

    def build(coeffs):
        v = coeffs @ null
        eta = np.zeros((3, 3))
        for k, (i, j) in enumerate(idx):
            eta[i, j] = eta[j, i] = v[k]
        n = np.abs(eta).max()
        return eta / n if n > 0 else eta

    rng = np.random.default_rng(0)
    for t in range(tries):
        if t < null.shape[0]:
            coeffs = np.eye(null.shape[0])[t]
        else:
            coeffs = rng.standard_normal(null.shape[0])
        eta = build(coeffs)
        if abs(np.linalg.det(eta)) > 1e-9:
            return eta
    return None


# ---------------------------------------------------------------------------
# characteristic cubic
# ---------------------------------------------------------------------------

def _charpoly_coeffs(C):
    """(t1, t2, t3) with det(lam I - C) = lam^3 - t1 lam^2 + t2 lam - t3."""
    t1 = float(np.trace(C))
    t2 = 0.5 * (t1 * t1 - float(np.trace(C @ C)))
    t3 = float(np.linalg.det(C))
    return t1, t2, t3


def _newton_polish(lam, t1, t2, t3, steps=2):
    for _ in range(steps):
        f = ((lam - t1) * lam + t2) * lam - t3
        df = (3.0 * lam - 2.0 * t1) * lam + t2
        if abs(df) < 1e-30:
            break
        lam = lam - f / df
    return lam


def _double_root_recentre(lam, t1, t2):
    """Newton on the derivative: a double root of the cubic is a simple,
    well-conditioned root of 3 lam^2 - 2 t1 lam + t2."""
    for _ in range(2):
        f = (3.0 * lam - 2.0 * t1) * lam + t2
        df = 6.0 * lam - 2.0 * t1
        if abs(df) < 1e-30:
            break
        lam = lam - f / df
    return lam


def _cubic_roots(t1, t2, t3):
    """Roots of lam^3 - t1 lam^2 + t2 lam - t3 = 0.

    Returns ("real", [r1, r2, r3]) or ("complex", real_root, mu, nu) with
    nu > 0; the branch follows the exact sign of the Cardano discriminant.
    """
    s = t1 / 3.0
    p = t2 - t1 * t1 / 3.0
    q = -2.0 * t1**3 / 27.0 + t1 * t2 / 3.0 - t3
    D = 0.25 * q * q + p**3 / 27.0
    if D > 0.0:  # one real root, one complex pair
        sq = math.sqrt(D)
        t = -0.5 * q - math.copysign(sq, q) if q != 0.0 else -sq
        A = math.copysign(abs(t) ** (1.0 / 3.0), t) if t != 0.0 else 0.0
        B = 0.0 if A == 0.0 else -p / (3.0 * A)
        y1 = A + B
        lam1 = _newton_polish(y1 + s, t1, t2, t3)
        mu = 0.5 * (t1 - lam1)
        # lam2 lam3 = t2 - lam1 (lam2 + lam3)
        nu2 = (t2 - 2.0 * lam1 * mu) - mu * mu
        nu = math.sqrt(max(nu2, 0.0))
        return "complex", lam1, mu, nu
    if D < 0.0:  # three distinct real roots (p < 0 here)
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = min(1.0, max(-1.0, 3.0 * q / (p * m)))
        theta = math.acos(arg) / 3.0
        ys = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)]
        # Newton polish is safe here (simple roots); repeated roots go through
        # the derivative recentre instead.
        return "real", sorted((_newton_polish(y + s, t1, t2, t3) for y in ys),
                              reverse=True)
    # D == 0: repeated roots, exactly
    if p == 0.0:
        return "real", [s, s, s]
    yd = -1.5 * q / p
    return "real", sorted([yd + s, yd + s, -2.0 * yd + s], reverse=True)


# ---------------------------------------------------------------------------
# eigenvector machinery (3x3 only)
# ---------------------------------------------------------------------------

def _sign_fix(v):
    n = np.linalg.norm(v)
    if n == 0:
        return v
    v = v / n
    for x in v:
        if abs(x) > 1e-10:
            return -v if x < 0 else v
    return v


def _nullspace(M, rtol=RANK_RTOL):
    """Natural basis of the nullspace of a 3x3 matrix via full reduction.

    Free columns keep their identity embedding (the textbook basis), then
    the basis is orthonormalised in order and sign-fixed, so results are
    reproducible and as close to coordinate directions as the matrix allows.
    """
    R = np.array(M, dtype=float)
    scale = max(1e-300, float(np.abs(R).max()))
    pivots = []
    row = 0
    for col in range(3):
        i = int(np.argmax(np.abs(R[row:, col]))) + row if row < 3 else row
        if row >= 3 or abs(R[i, col]) <= rtol * scale:
            continue
        R[[row, i]] = R[[i, row]]
        R[row] = R[row] / R[row, col]
        for r in range(3):
            if r != row:
                R[r] = R[r] - R[r, col] * R[row]
        pivots.append(col)
        row += 1
    free = [c for c in range(3) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(3)
        v[fc] = 1.0
        for r_idx, pc in enumerate(pivots):
            v[pc] = -R[r_idx, fc]
        basis.append(v)
    # ordered Gram-Schmidt
    out = []
    for v in basis:
        for u in out:
            v = v - np.dot(v, u) * u
        n = np.linalg.norm(v)
        if n > 1e-12:
            out.append(v / n)
    return [_sign_fix(v) for v in out]


def _eigvec_simple(C, lam):
    """Unit eigenvector for a geometrically simple real eigenvalue."""
    M = C - lam * np.eye(3)
    rows = [M[0], M[1], M[2]]
    best = None
    best_n = -1.0
    for i in range(3):
        for j in range(i + 1, 3):
            cand = np.cross(rows[i], rows[j])
            n = float(np.linalg.norm(cand))
            if n > best_n:
                best, best_n = cand, n
    scale = max(1e-300, float(np.abs(M).max()) ** 2)
    if best_n <= 1e-12 * scale:
        ns = _nullspace(M)
        if not ns:
            raise StackelError(f"no eigenvector found for eigenvalue {lam}")
        return ns[0]
    return _sign_fix(best)


def _eigvec_complex(C, lam):
    """Nonzero complex null vector of C - lam I (lam not real)."""
    M = C.astype(complex) - lam * np.eye(3)
    best = None
    best_n = -1.0
    for i in range(3):
        for j in range(i + 1, 3):
            cand = np.cross(M[i], M[j])
            n = float(np.linalg.norm(cand))
            if n > best_n:
                best, best_n = cand, n
    if best is None or best_n == 0.0:
        raise StackelError(f"no eigenvector found for eigenvalue {lam}")
    k = int(np.argmax(np.abs(best)))
    return best / best[k]


# ---------------------------------------------------------------------------
# structural analysis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Structure:
    kind: str            # distinct | pair_diag | pair_jordan | scalar | triple_jordan | complex
    values: tuple        # eigenvalue data, kind-specific
    slot1: float = 0.0
    mu: float = 0.0
    nu: float = 0.0


def _analyze(C):
    """Eigenvalue structure of C with multiplicity and defectiveness resolved."""
    t1, t2, t3 = _charpoly_coeffs(C)
    scale = max(1.0, float(np.linalg.norm(C)))
    kind, *data = _cubic_roots(t1, t2, t3)

    if kind == "complex":
        lam1, mu, nu = data
        # Variant discriminant of the residual pair is -4 nu^2.
        if 4.0 * nu * nu > DISC_RTOL * scale * scale:
            return _Structure(kind="complex", values=(lam1, mu, nu), slot1=lam1, mu=mu, nu=nu)
        # Pair within tolerance of a real double root.
        return _classify_repeated(C, t1, t2, t3, lam_d=mu, scale=scale)

    r1, r2, r3 = data[0]
    g12, g23 = r1 - r2, r2 - r3
    tol_gap2 = DISC_RTOL * scale * scale
    if g12 * g12 > tol_gap2 and g23 * g23 > tol_gap2:
        return _Structure(kind="distinct", values=(r1, r2, r3))
    if g12 * g12 <= tol_gap2 and g23 * g23 <= tol_gap2:
        lam = _double_root_recentre(t1 / 3.0, t1, t2)
        return _classify_triple(C, lam, scale)
    lam_d = 0.5 * (r1 + r2) if g12 * g12 <= tol_gap2 else 0.5 * (r2 + r3)
    return _classify_repeated(C, t1, t2, t3, lam_d=lam_d, scale=scale)


def _classify_repeated(C, t1, t2, t3, lam_d, scale):
    """Double eigenvalue lam_d plus a simple one: diagonalizable or Jordan."""
    lam_d = _double_root_recentre(lam_d, t1, t2)
    lam_s = t1 - 2.0 * lam_d  # trace relation, well conditioned
    N = C - lam_d * np.eye(3)
    sv = np.linalg.svd(N, compute_uv=False)
    if sv[2] > RANK_RTOL * max(sv[0], scale):
        # No kernel at lam_d within tolerance: a barely-separated real pair.
        # Recover the split pair from the deflated quadratic factor.
        sum2 = t1 - lam_s
        prod2 = t2 - lam_s * sum2
        h = 0.5 * math.sqrt(max(0.0, sum2 * sum2 - 4.0 * prod2))
        roots = sorted([lam_s, 0.5 * sum2 + h, 0.5 * sum2 - h], reverse=True)
        return _Structure(kind="distinct", values=tuple(roots))
    if sv[1] <= RANK_RTOL * max(sv[0], scale):
        # 2-dimensional eigenspace: diagonalizable with an equal pair.
        return _Structure(kind="pair_diag", values=(lam_d, lam_s))
    return _Structure(kind="pair_jordan", values=(lam_d, lam_s))


def _classify_triple(C, lam, scale):
    N = C - lam * np.eye(3)
    sv = np.linalg.svd(N, compute_uv=False)
    if sv[0] <= RANK_RTOL * scale:
        return _Structure(kind="scalar", values=(lam,))
    if sv[1] <= RANK_RTOL * sv[0]:
        return _Structure(kind="triple_jordan", values=(lam,))
    raise NotSplittableError(
        "structure matrix has a single size-3 Jordan chain; its invariant "
        "line lies inside its invariant plane, so no invariant splitting exists"
    )


# ---------------------------------------------------------------------------
# splitting and classification
# ---------------------------------------------------------------------------

def _is_split(C, scale):
    off = max(abs(C[0, 1]), abs(C[0, 2]), abs(C[1, 0]), abs(C[2, 0]))
    return off <= SPLIT_ATOL * max(1.0, scale)


def _quadratic_kernel_plane(C, sum_pair, prod_pair):
    """Orthonormal natural basis of ker(C^2 - sum C + prod I), the invariant
    plane of the residual eigenvalue pair."""
    Q = C @ C - sum_pair * C + prod_pair * np.eye(3)
    basis = _nullspace(Q)
    if len(basis) < 2:
        raise StackelError("invariant plane extraction failed (ill-conditioned input)")
    return basis[0], basis[1]


def _split_data(C):
    """Slot-1 direction, invariant-plane basis and structure record for C."""
    st = _analyze(C)
    if st.kind == "scalar":
        lam = st.values[0]
        return st, np.array([1.0, 0.0, 0.0]), (np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]))
    if st.kind == "distinct":
        r1, r2, r3 = st.values
        v = _eigvec_simple(C, r1)
        w1, w2 = _quadratic_kernel_plane(C, r2 + r3, r2 * r3)
        return st, v, (w1, w2)
    if st.kind == "complex":
        lam1, mu, nu = st.values
        v = _eigvec_simple(C, lam1)
        w1, w2 = _quadratic_kernel_plane(C, 2.0 * mu, mu * mu + nu * nu)
        return st, v, (w1, w2)
    if st.kind in ("pair_diag", "pair_jordan"):
        lam_d, lam_s = st.values
        v = _eigvec_simple(C, lam_s)
        w1, w2 = _quadratic_kernel_plane(C, 2.0 * lam_d, lam_d * lam_d)
        return st, v, (w1, w2)
    # triple_jordan: kernel is 2-d and contains the image of N
    lam = st.values[0]
    N = C - lam * np.eye(3)
    kernel = _nullspace(N)
    if len(kernel) < 2:
        raise StackelError("triple-root kernel extraction failed")
    # generalized direction: the coordinate direction moved most by N
    cands = [np.eye(3)[k] for k in range(3)]
    v_gen = max(cands, key=lambda u: float(np.linalg.norm(N @ u)))
    v_eig = N @ v_gen
    v_eig_u = v_eig / np.linalg.norm(v_eig)
    # slot-1 vector: kernel direction independent of the eigen direction
    best = max(kernel, key=lambda u: float(np.linalg.norm(u - np.dot(u, v_eig_u) * v_eig_u)))
    v0 = _sign_fix(best - np.dot(best, v_eig_u) * v_eig_u)
    w1 = _sign_fix(v_gen - np.dot(v_gen, v_eig_u) * v_eig_u)
    return st, v0, (w1, v_eig_u)


def split_direction(C):
    """Transform to the split form with slot 1 invariant.

    Returns (S1, C1) with C1 = S1 C S1^-1 having zero off-diagonal entries
    in the first row and column.  The invariant plane keeps its natural
    (coordinate-like, orthonormalised) basis, so an already-split block is
    reproduced verbatim and S1 = identity when C is split on input.
    """
    Cm = _as_matrix(C)
    scale = float(np.linalg.norm(Cm))
    if _is_split(Cm, scale):
        return np.eye(3), Cm.copy()
    st, v, (w1, w2) = _split_data(Cm)
    P = np.column_stack([v, w1, w2])
    if abs(np.linalg.det(P)) < 1e-10:
        raise StackelError("splitting basis is ill-conditioned")
    S1 = np.linalg.inv(P)
    return S1, S1 @ Cm @ P


def classify(C):
    """Reduce C to its canonical variant.

    Returns a :class:`CanonicalClass` whose ``transform`` S satisfies
    S C S^-1 = ``canonical`` to within 1e-9 (relative); the canonical matrix
    itself is rebuilt exactly from the extracted parameters.
    """
    Cm = _as_matrix(C)
    scale = max(1.0, float(np.linalg.norm(Cm)))
    st, v, (w1, w2) = _split_data(Cm)

    if st.kind in ("distinct", "pair_diag", "scalar"):
        if st.kind == "distinct":
            vals = sorted(st.values, reverse=True)
        elif st.kind == "pair_diag":
            lam_d, lam_s = st.values
            vals = sorted([lam_d, lam_d, lam_s], reverse=True)
        else:
            vals = [st.values[0]] * 3
        P = _diag_basis(Cm, vals)
        variant = "A"
        params = {"a1": vals[0], "a2": vals[1], "a3": vals[2]}
        K = np.diag(vals)
    elif st.kind == "complex":
        lam1, mu, nu = st.values
        w = _eigvec_complex(Cm, complex(mu, nu))
        x = np.real(w)
        y = -np.imag(w)
        n = np.linalg.norm(x)
        if n < 1e-12:
            raise StackelError("degenerate complex eigenvector")
        x, y = x / n, y / n
        P = np.column_stack([v, x, y])
        r = math.hypot(mu, nu)
        angle = math.atan2(nu, mu)
        variant = "B"
        params = {"c": (lam1 - mu) / r, "angle": angle, "scale": r, "sense": 1.0}
        K = np.array([[lam1, 0.0, 0.0], [0.0, mu, -nu], [0.0, nu, mu]])
    else:  # pair_jordan or triple_jordan
        if st.kind == "pair_jordan":
            lam_d, lam_s = st.values
        else:
            lam_d = lam_s = st.values[0]
        N = Cm - lam_d * np.eye(3)
        v_gen = max((w1, w2), key=lambda u: float(np.linalg.norm(N @ u)))
        v_eig = N @ v_gen
        ne = float(np.linalg.norm(v_eig))
        if ne <= 1e-12 * max(1.0, float(np.linalg.norm(N))):
            raise StackelError("Jordan chain extraction failed (block not defective)")
        # orthogonalize the generalized vector against the chain bottom,
        # normalise it, and rebuild the bottom so the coupling is exactly 1
        u = v_eig / ne
        v_gen = v_gen - np.dot(v_gen, u) * u
        v_gen = _sign_fix(v_gen)
        v_eig = N @ v_gen
        P = np.column_stack([v, v_gen, v_eig])
        variant = "C"
        params = {"c1": lam_s, "a": lam_d, "b": 1.0}
        K = np.array([[lam_s, 0.0, 0.0], [0.0, lam_d, 0.0], [0.0, 1.0, lam_d]])

    if abs(np.linalg.det(P)) < 1e-10:
        raise StackelError("canonical basis is ill-conditioned")
    S = np.linalg.inv(P)
    K_raw = S @ Cm @ P
    if np.abs(K_raw - K).max() > PATTERN_RTOL * scale:
        raise StackelError(
            f"canonical pattern not reproduced to tolerance "
            f"(max deviation {np.abs(K_raw - K).max():.3e})"
        )
    eps, p = epsilon_p(Cm)
    return CanonicalClass(
        variant=variant,
        params=params,
        transform=S,
        canonical=K,
        matrix=Cm.copy(),
        epsilon=eps,
        p=p,
    )


def _diag_basis(C, vals):
    """Eigenbasis columns for variant A, descending eigenvalues.

    Equal eigenvalues (to working precision) share one nullspace extraction
    so the basis stays independent.
    """
    cols = []
    i = 0
    while i < 3:
        j = i
        while j + 1 < 3 and abs(vals[j + 1] - vals[i]) <= 1e-8 * max(1.0, abs(vals[i])):
            j += 1
        mult = j - i + 1
        if mult == 1:
            cols.append(_eigvec_simple(C, vals[i]))
        else:
            ns = _nullspace(C - vals[i] * np.eye(3))
            if len(ns) < mult:
                raise StackelError(
                    "repeated eigenvalue with deficient eigenspace reached the "
                    "diagonal branch; classification is inconsistent"
                )
            cols.extend(ns[:mult])
        i = j + 1
    P = np.column_stack(cols)
    return P

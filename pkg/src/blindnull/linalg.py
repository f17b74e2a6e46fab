"""Complex Hermitian matrix arithmetic and two-plane rotations.

Everything here operates on plain ``numpy`` arrays (dtype ``complex128``).
Indices ``l``, ``m`` are 0-based throughout the implementation; the
docstrings use whatever indices the caller passes.

This module also hosts a non-blind cyclic eigensolver that serves as the
correctness oracle for the blind path: it annihilates pivots with the
closed-form rotation angles instead of line searches.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RotationParams",
    "JacobiTrace",
    "check_finite",
    "check_hermitian",
    "hermitize",
    "build_rotation",
    "rotation_column",
    "rotate",
    "quadratic_form",
    "closed_form_rotation",
    "fold_theta",
    "off_diagonal_norm",
    "reference_cyclic_jacobi",
    "cyclic_pivots",
    "frobenius_norm",
]

#: Largest matrix dimension the dense routines are tuned for.
MAX_DIM = 16


@dataclass(frozen=True)
class RotationParams:
    """One two-plane rotation: pivot pair ``(l, m)`` plus angles.

    ``theta`` is the mixing angle, ``phi`` the relative phase.  After the
    fold into [-pi/4, pi/4] (see :func:`fold_theta`) ``theta`` is what the
    stopping rule of the blind algorithm monitors.
    """

    l: int
    m: int
    theta: float
    phi: float

    def __post_init__(self):
        if self.l >= self.m:
            raise ValueError(f"pivot requires l < m, got ({self.l}, {self.m})")
        if self.l < 0:
            raise ValueError(f"negative pivot index {self.l}")


def check_finite(a: np.ndarray) -> None:
    """Reject NaN/Inf entries; raises ValueError."""
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ValueError("matrix contains non-finite entries")


def check_hermitian(a: np.ndarray, tol: float = 1e-10) -> None:
    """Raise ValueError unless ``a`` is square and Hermitian within ``tol``."""
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    check_finite(a)
    scale = max(1.0, float(np.abs(a).max()))
    if np.abs(a - a.conj().T).max() > tol * scale:
        raise ValueError("matrix is not Hermitian")


def hermitize(a: np.ndarray) -> np.ndarray:
    """Return the Hermitian matrix defined by ``a``'s upper triangle.

    The strict upper triangle is mirrored (conjugated) onto the lower one
    and the diagonal is forced real.  Applied after every similarity
    transform so round-off never accumulates asymmetry over many sweeps.
    """
    upper = np.triu(a, 1)
    return np.diag(np.diag(a).real) + upper + upper.conj().T


def build_rotation(p: RotationParams, n_t: int) -> np.ndarray:
    """Dense ``n_t x n_t`` unitary rotation for the pivot pair of ``p``.

    Entry rule (l = p.l, m = p.m):

    ====================  =======================
    position              value
    ====================  =======================
    (l, l) and (m, m)     cos(theta)
    (l, m)                exp(-i phi) sin(theta)
    (m, l)                -exp(i phi) sin(theta)
    other diagonal        1
    elsewhere             0
    ====================  =======================
    """
    if n_t < 2:
        raise ValueError(f"rotation needs n_t >= 2, got {n_t}")
    if p.m >= n_t:
        raise ValueError(f"pivot ({p.l}, {p.m}) out of range for n_t={n_t}")
    r = np.eye(n_t, dtype=complex)
    c = math.cos(p.theta)
    s = math.sin(p.theta)
    e = cmath.exp(1j * p.phi)
    r[p.l, p.l] = c
    r[p.m, p.m] = c
    r[p.l, p.m] = s / e
    r[p.m, p.l] = -s * e
    return r


def rotation_column(n_t: int, l: int, m: int, theta: float, phi: float) -> np.ndarray:
    """Column ``l`` of :func:`build_rotation` without forming the matrix.

    These columns are exactly the unit-norm probe directions the blind
    algorithm transmits.
    """
    if not (0 <= l < m < n_t):
        raise ValueError(f"bad pivot ({l}, {m}) for n_t={n_t}")
    x = np.zeros(n_t, dtype=complex)
    x[l] = math.cos(theta)
    x[m] = -cmath.exp(1j * phi) * math.sin(theta)
    return x


def rotate(a: np.ndarray, p: RotationParams) -> np.ndarray:
    """Similarity transform of ``a`` by the rotation of ``p``.

    Returns ``R* a R`` with ``R = build_rotation(p)``, i.e. the congruence
    whose diagonal entry at ``l`` equals the quadratic form of ``a`` on
    ``R``'s l-th column.  With the angles from
    :func:`closed_form_rotation` the ``(l, m)`` entry of the result is
    annihilated.  The result is re-hermitized (upper triangle mirrored) so
    round-off cannot accumulate asymmetry over many sweeps.
    """
    check_hermitian(a)
    n = a.shape[0]
    if p.m >= n:
        raise ValueError(f"pivot ({p.l}, {p.m}) out of range for dim {n}")
    r = build_rotation(p, n)
    return hermitize(r.conj().T @ a @ r)


def quadratic_form(a: np.ndarray, x: np.ndarray) -> float:
    """Real value of ``x* a x`` for Hermitian ``a``.

    A residual imaginary part above ``1e-12 * ||a||_F * ||x||^2`` signals a
    symmetry bug in the caller and raises instead of being truncated.
    """
    if a.shape[0] != a.shape[1] or a.shape[0] != x.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} vs {x.shape}")
    s = complex(np.vdot(x, a @ x))
    scale = float(np.linalg.norm(a)) * float(np.vdot(x, x).real)
    if abs(s.imag) > 1e-12 * max(scale, 1e-300):
        raise ValueError(f"quadratic form has imaginary residue {s.imag:g}; input not Hermitian?")
    return s.real


def fold_theta(theta: float) -> float:
    """Map a mixing angle into [-pi/4, pi/4].

    Angles outside the band are shifted by half a period (pi/2), which
    swaps to the other extreme-point family of the same pivot; both
    families annihilate the pivot entry.
    """
    if theta > math.pi / 4:
        return theta - math.pi / 2
    if theta < -math.pi / 4:
        return theta + math.pi / 2
    return theta


def closed_form_rotation(a: np.ndarray, l: int, m: int) -> RotationParams:
    """Angles that annihilate ``a[l, m]``, computed from disclosed entries.

    ``phi`` is minus the phase of ``a[l, m]`` (zero when the entry
    vanishes).  ``theta`` is the minimizing branch: with
    ``chi = atan2(2 |a_lm|, a_ll - a_mm)`` the raw angle is
    ``(pi - chi) / 2``, then folded into [-pi/4, pi/4].  The two-argument
    arctangent realizes the equal-diagonal special case (theta = pi/4)
    continuously with no division.
    """
    check_hermitian(a)
    n = a.shape[0]
    if not (0 <= l < m < n):
        raise ValueError(f"bad pivot ({l}, {m}) for dim {n}")
    alm = complex(a[l, m])
    mag = abs(alm)
    if mag == 0.0:
        return RotationParams(l, m, 0.0, 0.0)
    phi = -cmath.phase(alm)
    diff = float(a[l, l].real - a[m, m].real)
    chi = math.atan2(2.0 * mag, diff)
    theta = fold_theta((math.pi - chi) / 2.0)
    return RotationParams(l, m, theta, phi)


def off_diagonal_norm(a: np.ndarray) -> float:
    """Root-sum-square of the strict upper-triangular entries."""
    check_hermitian(a)
    iu = np.triu_indices(a.shape[0], k=1)
    return float(np.sqrt(np.sum(np.abs(a[iu]) ** 2)))


def frobenius_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def cyclic_pivots(n_t: int) -> list[tuple[int, int]]:
    """Row-cyclic pivot order: (0,1), (0,2), ..., (0,n-1), (1,2), ..."""
    if n_t < 2:
        raise ValueError(f"need n_t >= 2, got {n_t}")
    return [(l, m) for l in range(n_t - 1) for m in range(l + 1, n_t)]


@dataclass
class JacobiTrace:
    """Per-sweep record of the reference eigensolver."""

    sweeps: int
    off_norms: list[float]
    pivots_used: int


def reference_cyclic_jacobi(
    g: np.ndarray,
    tol: float = 1e-12,
    max_sweeps: int = 30,
    pivot: str = "cyclic",
) -> tuple[np.ndarray, np.ndarray, JacobiTrace]:
    """Diagonalize Hermitian ``g`` with closed-form two-plane rotations.

    Returns ``(eigenvalues, v, trace)`` with ``g ~ v diag(eigenvalues) v*``.
    Eigenvalues come out in the order the sweeps leave them (no sorting).

    ``pivot="cyclic"`` sweeps every upper-triangular pair once per cycle in
    row order; ``pivot="classic"`` picks the largest off-diagonal entry
    each step (kept only as an optional mode here, the blind path never
    uses it).
    """
    check_hermitian(g)
    n = g.shape[0]
    if n > MAX_DIM:
        raise ValueError(f"dimension {n} above supported limit {MAX_DIM}")
    a = hermitize(np.array(g, dtype=complex))
    v = np.eye(n, dtype=complex)
    off_norms = [off_diagonal_norm(a)]
    pivots_used = 0
    if n == 1:
        return np.diag(a).real.copy(), v, JacobiTrace(0, off_norms, 0)

    if pivot not in ("cyclic", "classic"):
        raise ValueError(f"unknown pivot rule {pivot!r}")
    iu = np.triu_indices(n, k=1)
    for sweep in range(max_sweeps):
        if off_norms[-1] < tol:
            return np.diag(a).real.copy(), v, JacobiTrace(sweep, off_norms, pivots_used)
        for step in range(n * (n - 1) // 2):
            if pivot == "cyclic":
                l, m = cyclic_pivots(n)[step]
            else:
                flat = int(np.argmax(np.abs(a[iu])))
                l, m = int(iu[0][flat]), int(iu[1][flat])
            p = closed_form_rotation(a, l, m)
            a = rotate(a, p)
            v = v @ build_rotation(p, n)
            pivots_used += 1
        off_norms.append(off_diagonal_norm(a))

    if off_norms[-1] < tol:
        return np.diag(a).real.copy(), v, JacobiTrace(max_sweeps, off_norms, pivots_used)
    raise RuntimeError(
        f"cyclic sweeps did not reach tol={tol:g} within {max_sweeps} sweeps "
        f"(residual {off_norms[-1]:g}); input likely not Hermitian"
    )

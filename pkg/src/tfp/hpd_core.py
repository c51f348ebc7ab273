"""Dense complex Hermitian / positive definite matrix algebra.

Matrices are plain ``numpy`` arrays of ``complex128``.  Every operation
validates its input against the Hermitian tolerance and re-symmetrizes its
output with ``(M + M*) / 2`` so that round-off never accumulates into a
symmetry defect across long iteration runs.

The eigensolver is a cyclic Jacobi sweep specialised to complex Hermitian
matrices.  It is unconditionally stable and has no dependency beyond basic
array arithmetic, which keeps the whole algebra self-contained and easy to
cross-check against independent oracles.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NonHermitianInput,
    NotPositiveDefinite,
)

ComplexMatrix = NDArray[np.complex128]

_EPS = float(np.finfo(np.float64).eps)

# Off-diagonal convergence threshold of the Jacobi sweep, relative to the
# Frobenius norm of the input.
_JACOBI_OFF_TOL = 1e-14

# Sweep budget: 30 * n**2 full cyclic sweeps before giving up.
_JACOBI_SWEEP_FACTOR = 30


class EigenDecomposition(NamedTuple):
    """Spectral factorization M = V diag(eigenvalues) V*.

    ``eigenvalues`` are real and sorted ascending; ``vectors`` holds the
    corresponding orthonormal eigenvectors as columns.
    """

    eigenvalues: NDArray[np.float64]
    vectors: ComplexMatrix


def identity(n: int) -> ComplexMatrix:
    """The n-by-n identity as a complex matrix."""
    return np.eye(n, dtype=np.complex128)


def as_square_matrix(m, name: str = "matrix") -> ComplexMatrix:
    """Coerce to a square complex array with finite entries."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise NonHermitianInput(f"{name} contains non-finite entries")
    return arr


def frobenius_norm(m) -> float:
    """Frobenius norm of a matrix."""
    return float(np.linalg.norm(np.asarray(m, dtype=np.complex128)))


def hermitian_tolerance(m) -> float:
    """Symmetry tolerance: 1e-12 * max(1, ||M||_F)."""
    return 1e-12 * max(1.0, frobenius_norm(m))


def symmetrize(m) -> ComplexMatrix:
    """(M + M*) / 2, the Hermitian part of M."""
    arr = np.asarray(m, dtype=np.complex128)
    return 0.5 * (arr + arr.conj().T)


def require_hermitian(m, name: str = "matrix") -> ComplexMatrix:
    """Validate Hermitian symmetry and return the coerced array.

    Raises ``NonHermitianInput`` when any entry differs from the conjugate
    of its mirror by more than the relative tolerance (this also covers
    imaginary parts on the diagonal).
    """
    arr = as_square_matrix(m, name)
    defect = float(np.abs(arr - arr.conj().T).max()) if arr.size else 0.0
    tol = hermitian_tolerance(arr)
    if defect > tol:
        raise NonHermitianInput(
            f"{name} is not Hermitian: defect {defect:.3e} exceeds tolerance {tol:.3e}"
        )
    return arr


def _off_diagonal_norm(a: ComplexMatrix) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _rotate(a: ComplexMatrix, v: ComplexMatrix, p: int, q: int) -> None:
    """Zero the (p, q) entry of ``a`` by a unitary plane rotation.

    The rotation first absorbs the phase of a[p, q] so the 2x2 pivot block
    becomes real symmetric, then applies the stable Jacobi tangent formula.
    ``a`` and ``v`` are updated in place (``a`` stays Hermitian, ``v``
    accumulates the eigenvector basis).
    """
    apq = a[p, q]
    mag = abs(apq)
    phase = apq / mag
    tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    root = math.sqrt(1.0 + tau * tau)
    t = 1.0 / (tau + root) if tau >= 0.0 else -1.0 / (-tau + root)
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    cp = phase * c
    sp = phase * s

    colp = a[:, p].copy()
    colq = a[:, q].copy()
    a[:, p] = cp * colp - s * colq
    a[:, q] = sp * colp + c * colq
    rowp = a[p, :].copy()
    rowq = a[q, :].copy()
    a[p, :] = np.conj(cp) * rowp - s * rowq
    a[q, :] = np.conj(sp) * rowp + c * rowq
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vp = v[:, p].copy()
    vq = v[:, q].copy()
    v[:, p] = cp * vp - s * vq
    v[:, q] = sp * vp + c * vq


def eig_hermitian(m) -> EigenDecomposition:
    """Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi.

    Parameters
    ----------
    m : array_like
        Square Hermitian matrix (validated against the relative tolerance).

    Returns
    -------
    EigenDecomposition
        Eigenvalues ascending, eigenvectors as orthonormal columns.

    Raises
    ------
    NonHermitianInput
        If the symmetry tolerance is violated.
    ConvergenceFailure
        If the sweep budget is exhausted (does not happen for finite
        Hermitian input; kept as a hard safety net).
    """
    arr = require_hermitian(m)
    n = arr.shape[0]
    a = symmetrize(arr)
    v = identity(n)
    if n == 1:
        return EigenDecomposition(np.array([a[0, 0].real]), v)

    off_tol = _JACOBI_OFF_TOL * float(np.linalg.norm(a))
    skip_tol = off_tol / (2.0 * n)
    for _ in range(_JACOBI_SWEEP_FACTOR * n * n):
        if _off_diagonal_norm(a) <= off_tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > skip_tol:
                    _rotate(a, v, p, q)
    else:
        raise ConvergenceFailure(
            f"Jacobi eigensolver did not reach off-diagonal tolerance "
            f"{off_tol:.3e} within {_JACOBI_SWEEP_FACTOR * n * n} sweeps"
        )

    lam = np.diagonal(a).real.copy()
    order = np.argsort(lam, kind="stable")
    return EigenDecomposition(lam[order], np.ascontiguousarray(v[:, order]))


def pd_floor(eigenvalues: NDArray[np.float64]) -> float:
    """Relative positive-definiteness floor: n * eps * lambda_max."""
    lam_max = float(eigenvalues[-1]) if len(eigenvalues) else 0.0
    return len(eigenvalues) * _EPS * max(lam_max, 0.0)


def is_positive_definite(m) -> tuple[bool, float]:
    """Whether the smallest eigenvalue clears the relative floor.

    Returns the verdict together with the smallest eigenvalue, which is
    reported either way.
    """
    dec = eig_hermitian(m)
    min_eig = float(dec.eigenvalues[0])
    return min_eig > pd_floor(dec.eigenvalues), min_eig


def matrix_power(m, p: float) -> ComplexMatrix:
    """Real matrix power of a positive definite matrix.

    Computed as V diag(lambda_i ** p) V* from the eigendecomposition and
    re-symmetrized.  Any finite nonzero real exponent is accepted; the
    positivity of the spectrum makes them all well defined.

    Raises
    ------
    NotPositiveDefinite
        If the smallest eigenvalue does not clear the relative floor.
    ValueError
        If the exponent is zero or not finite.
    """
    p = float(p)
    if p == 0.0 or not math.isfinite(p):
        raise ValueError(f"exponent must be finite and nonzero, got {p}")
    dec = eig_hermitian(m)
    lam = dec.eigenvalues
    if lam[0] <= pd_floor(lam):
        raise NotPositiveDefinite(
            f"matrix_power requires a positive definite input "
            f"(min eigenvalue {lam[0]:.3e}, floor {pd_floor(lam):.3e})"
        )
    powered = (dec.vectors * lam**p) @ dec.vectors.conj().T
    return symmetrize(powered)


def congruence(a, m) -> ComplexMatrix:
    """The congruence A* M A, re-symmetrized.

    Preserves positive definiteness whenever A is nonsingular.
    """
    a_arr = as_square_matrix(a, "congruence factor")
    m_arr = require_hermitian(m, "congruence argument")
    if a_arr.shape[0] != m_arr.shape[0]:
        raise DimensionMismatch(
            f"congruence shapes differ: {a_arr.shape} vs {m_arr.shape}"
        )
    return symmetrize(a_arr.conj().T @ m_arr @ a_arr)


def add(m1, m2) -> ComplexMatrix:
    """Entrywise sum of two Hermitian matrices."""
    a = require_hermitian(m1, "left addend")
    b = require_hermitian(m2, "right addend")
    if a.shape != b.shape:
        raise DimensionMismatch(f"add shapes differ: {a.shape} vs {b.shape}")
    return symmetrize(a + b)


def subtract(m1, m2) -> ComplexMatrix:
    """Entrywise difference of two Hermitian matrices."""
    a = require_hermitian(m1, "minuend")
    b = require_hermitian(m2, "subtrahend")
    if a.shape != b.shape:
        raise DimensionMismatch(f"subtract shapes differ: {a.shape} vs {b.shape}")
    return symmetrize(a - b)


def scale(c: float, m) -> ComplexMatrix:
    """Real scalar multiple of a Hermitian matrix."""
    arr = require_hermitian(m, "scale argument")
    return symmetrize(float(c) * arr)


def matrix_from_literal(obj, name: str = "matrix") -> ComplexMatrix:
    """Parse the nested-array matrix literal shared with the problem files.

    Each entry is either a bare real number or an ``[re, im]`` pair; rows
    must be lists of equal length.
    """
    if not isinstance(obj, list) or not obj or not all(isinstance(row, list) for row in obj):
        raise DimensionMismatch(f"{name} must be a non-empty list of rows")
    n_rows = len(obj)
    out = np.zeros((n_rows, len(obj[0])), dtype=np.complex128)
    for i, row in enumerate(obj):
        if len(row) != len(obj[0]):
            raise DimensionMismatch(f"{name} row {i} has length {len(row)}, expected {len(obj[0])}")
        for j, entry in enumerate(row):
            if isinstance(entry, (int, float)) and not isinstance(entry, bool):
                out[i, j] = float(entry)
            elif (
                isinstance(entry, list)
                and len(entry) == 2
                and all(isinstance(part, (int, float)) and not isinstance(part, bool) for part in entry)
            ):
                out[i, j] = complex(float(entry[0]), float(entry[1]))
            else:
                raise DimensionMismatch(
                    f"{name} entry [{i}][{j}] must be a number or an [re, im] pair, got {entry!r}"
                )
    return out


def matrix_to_literal(m) -> list:
    """Serialize a matrix to the nested-array literal.

    Real matrices are written with bare numbers, complex ones with
    ``[re, im]`` pairs throughout; either form parses back to the exact
    same array.
    """
    arr = np.asarray(m, dtype=np.complex128)
    if np.all(arr.imag == 0.0):
        return [[float(entry.real) for entry in row] for row in arr]
    return [[[float(entry.real), float(entry.imag)] for entry in row] for row in arr]


def _haar_unitary(rng: np.random.Generator, n: int) -> ComplexMatrix:
    """Haar-distributed unitary: QR of a complex Gaussian draw with the
    diagonal phases of R fixed to one."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r).copy()
    d[d == 0] = 1.0
    return np.ascontiguousarray(q * (d / np.abs(d)))


def random_unitary(n: int, seed) -> ComplexMatrix:
    """Seeded random n-by-n unitary matrix.

    Deterministic for a fixed seed; ``seed`` may also be an existing
    ``numpy.random.Generator``.
    """
    if n < 1:
        raise DimensionMismatch(f"dimension must be positive, got {n}")
    return _haar_unitary(np.random.default_rng(seed), n)


def random_pd_in_ball(n: int, radius: float, seed) -> ComplexMatrix:
    """Seeded random positive definite matrix within a log-eigenvalue bound.

    Returns X = U diag(exp(t_1), ..., exp(t_n)) U* with each t_i uniform in
    [-radius, radius] and U a seeded random unitary, so every eigenvalue of
    X lies in [exp(-radius), exp(radius)] by construction.
    """
    if n < 1:
        raise DimensionMismatch(f"dimension must be positive, got {n}")
    radius = float(radius)
    if radius < 0.0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    rng = np.random.default_rng(seed)
    t = rng.uniform(-radius, radius, size=n)
    u = _haar_unitary(rng, n)
    return symmetrize((u * np.exp(t)) @ u.conj().T)

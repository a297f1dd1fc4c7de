"""Numerically controlled action of matrix exponentials on vectors.

Two generators are supported: Hermitian matrices driving unitary
Schroedinger evolution (``exp(-iHt) v``) and symmetric PSD Laplacians
driving classical diffusion (``exp(-Lt) p``).  Only the action on a
vector is ever formed, never the full exponential.

Backends
--------
dense
    Eigendecomposition of the dense matrix, cached on the
    :class:`SparseHermitian` wrapper.  Used for n <= ``DENSE_LIMIT``.
lanczos
    Restarted Lanczos (Krylov) action with full reorthogonalization and
    an adaptive subspace grown until the a-posteriori residual estimate
    drops below the tolerance.  Long evolutions are split into substeps
    bounded by ``norm(H) * dt <= SPLIT_BOUND``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .states import as_probability_vector

DENSE_LIMIT = 2000
DEFAULT_TOL = 1e-10
SPLIT_BOUND = 20.0
_MAX_KRYLOV = 120


class HermiticityError(ValueError):
    """Matrix is not Hermitian (or not real symmetric where required)."""


class ConvergenceError(RuntimeError):
    """Iterative kernel failed to reach the requested tolerance."""


@dataclass
class SparseHermitian:
    """Sparse Hermitian matrix with cached spectral data.

    The wrapped matrix is validated to be square, entrywise finite and
    Hermitian within 1e-12.  Instances are treated as immutable; the
    eigendecomposition and the spectral-norm estimate are computed once
    on demand and reused across evolutions.
    """

    matrix: sp.csr_matrix
    _eig: tuple[np.ndarray, np.ndarray] | None = field(
        default=None, repr=False, compare=False
    )
    _norm: float | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        m = sp.csr_matrix(self.matrix, dtype=np.complex128)
        if m.shape[0] != m.shape[1]:
            raise ValueError(f"matrix must be square, got shape {m.shape}")
        if m.nnz and not np.all(np.isfinite(m.data)):
            raise ValueError("matrix has non-finite entries")
        dev = m - m.getH()
        if dev.nnz and np.abs(dev.data).max() > 1e-12:
            raise HermiticityError(
                f"matrix deviates from Hermitian by {np.abs(dev.data).max():g}"
            )
        self.matrix = m

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_real(self) -> bool:
        return self.matrix.nnz == 0 or float(np.abs(self.matrix.data.imag).max()) == 0.0

    def eigendecomposition(self) -> tuple[np.ndarray, np.ndarray]:
        """Dense eigendecomposition (w, V) with H = V diag(w) V^dagger."""
        if self._eig is None:
            w, v = scipy.linalg.eigh(self.matrix.toarray())
            self._eig = (w, v)
        return self._eig

    def norm_estimate(self) -> float:
        """Spectral norm estimate from 20 power iterations."""
        if self._norm is None:
            if self.matrix.nnz == 0:
                self._norm = 0.0
            else:
                rng = np.random.default_rng(1905)
                v = rng.standard_normal(self.n) + 1j * rng.standard_normal(self.n)
                v /= np.linalg.norm(v)
                est = 0.0
                for _ in range(20):
                    w = self.matrix @ v
                    est = np.linalg.norm(w)
                    if est == 0.0:
                        break
                    v = w / est
                # modest inflation: power iteration only approaches the norm
                self._norm = 1.1 * float(est)
        return self._norm


def as_hermitian(matrix) -> SparseHermitian:
    """Wrap (and validate) a matrix as :class:`SparseHermitian`."""
    if isinstance(matrix, SparseHermitian):
        return matrix
    return SparseHermitian(sp.csr_matrix(matrix))


def _dense_apply(op: SparseHermitian, v: np.ndarray, scale: complex) -> np.ndarray:
    w, vec = op.eigendecomposition()
    return vec @ (np.exp(scale * w) * (vec.conj().T @ v))


def _lanczos_apply(
    a: sp.csr_matrix, v: np.ndarray, scale: complex, tol: float
) -> np.ndarray | None:
    """One Lanczos solve of exp(scale * A) v; None if the subspace cap is hit.

    A is Hermitian so the projected matrix is a real symmetric tridiagonal;
    full reorthogonalization keeps the basis usable at tight tolerances.
    """
    v = np.asarray(v, dtype=np.complex128)
    n = v.shape[0]
    beta0 = np.linalg.norm(v)
    m_max = min(n, _MAX_KRYLOV)
    q = np.empty((n, m_max + 1), dtype=np.complex128)
    q[:, 0] = v / beta0
    alphas: list[float] = []
    betas: list[float] = []
    coef_prev: np.ndarray | None = None
    for j in range(m_max):
        w = a @ q[:, j]
        alphas.append(float(np.real(np.vdot(q[:, j], w))))
        w = w - alphas[j] * q[:, j]
        if j > 0:
            w = w - betas[j - 1] * q[:, j - 1]
        for _ in range(2):  # reorthogonalize twice for stability
            w = w - q[:, : j + 1] @ (q[:, : j + 1].conj().T @ w)
        beta = float(np.linalg.norm(w))
        betas.append(beta)
        ew, ev = scipy.linalg.eigh_tridiagonal(alphas, betas[:-1])
        coef = ev @ (np.exp(scale * ew) * ev[0])
        err = beta0 * beta * abs(coef[-1])
        if coef_prev is not None:
            delta = coef.copy()
            delta[: coef_prev.shape[0]] -= coef_prev
            err = max(err, beta0 * float(np.linalg.norm(delta)))
        happy = beta <= 1e-14 * max(beta0, 1.0)
        if happy or err <= tol * max(beta0, 1.0):
            return beta0 * (q[:, : j + 1] @ coef)
        coef_prev = coef
        q[:, j + 1] = w / beta
    return None


def _krylov_action(
    op: SparseHermitian, v: np.ndarray, unit: complex, t: float, tol: float
) -> np.ndarray:
    """Split exp(unit * t * H) v into substeps with norm(H) * dt bounded."""
    rho = op.norm_estimate() * abs(t)
    n_sub = max(1, int(np.ceil(rho / SPLIT_BOUND)))
    for _ in range(4):
        sub_tol = max(tol / n_sub, 1e-14)
        dt = t / n_sub
        cur = v
        ok = True
        for _step in range(n_sub):
            nxt = _lanczos_apply(op.matrix, cur, unit * dt, sub_tol)
            if nxt is None:
                ok = False
                break
            cur = nxt
        if ok:
            return cur
        n_sub *= 2
    raise ConvergenceError(
        f"Lanczos action did not converge (n={op.n}, t={t}, tol={tol})"
    )


def _check_tol(tol: float) -> None:
    if not (0.0 < tol <= 1e-4):
        raise ValueError(f"tol must lie in (0, 1e-4], got {tol}")


def expm_action(
    hamiltonian,
    v,
    t: float,
    tol: float = DEFAULT_TOL,
    backend: str = "auto",
) -> np.ndarray:
    """Apply the unitary propagator: return ``exp(-i H t) v``.

    Parameters
    ----------
    hamiltonian : SparseHermitian or matrix-like
        Hermitian generator; matrix-like input is validated on the fly.
    v : array-like
        Nonzero complex vector.
    t : float
        Evolution time (may be negative).
    tol : float
        Accuracy target in (0, 1e-4]; the returned vector matches the
        exact action within ~tol and preserves the 2-norm within 10*tol.
    backend : {"auto", "dense", "lanczos"}
        "auto" uses the cached dense eigendecomposition up to
        ``DENSE_LIMIT`` nodes and the Lanczos action beyond.
    """
    _check_tol(tol)
    op = as_hermitian(hamiltonian)
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    if v.shape[0] != op.n:
        raise ValueError(f"vector length {v.shape[0]} does not match n={op.n}")
    if not np.all(np.isfinite(v)):
        raise ValueError("state vector has non-finite entries")
    if np.linalg.norm(v) == 0.0:
        raise ValueError("state vector must be nonzero")
    if t == 0.0 or op.matrix.nnz == 0:
        return v.copy()
    if backend == "auto":
        backend = "dense" if op.n <= DENSE_LIMIT else "lanczos"
    if backend == "dense":
        return _dense_apply(op, v, -1j * t)
    if backend == "lanczos":
        return _krylov_action(op, v, -1j, t, tol)
    raise ValueError(f"unknown backend {backend!r}")


def real_expm_action(
    generator,
    p,
    t: float,
    tol: float = DEFAULT_TOL,
    backend: str = "auto",
) -> np.ndarray:
    """Apply the diffusion kernel: return ``exp(-L t) p``.

    ``generator`` must be real symmetric with zero row sums (a graph
    Laplacian) and ``p`` a probability vector.  The result is clipped of
    sub-1e-12 negative round-off and keeps unit sum to ~1e-10.
    """
    _check_tol(tol)
    op = as_hermitian(generator)
    if not op.is_real:
        raise HermiticityError("diffusion generator must be a real symmetric matrix")
    if t < 0:
        raise ValueError("diffusion time must be >= 0")
    p = as_probability_vector(p, n=op.n)
    if t == 0.0 or op.matrix.nnz == 0:
        return p.copy()
    if backend == "auto":
        backend = "dense" if op.n <= DENSE_LIMIT else "lanczos"
    if backend == "dense":
        out = _dense_apply(op, p.astype(np.complex128), -t)
    elif backend == "lanczos":
        out = _krylov_action(op, p.astype(np.complex128), -1.0, t, tol)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    out = np.ascontiguousarray(out.real)
    if out.min() < -1e-6:
        raise ConvergenceError(
            f"diffusion produced a negative probability {out.min():g}"
        )
    return np.clip(out, 0.0, None)

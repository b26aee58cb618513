"""Dense symmetric linear algebra at small sizes.

Everything here is deterministic: the eigensolver is cyclic Jacobi with a
fixed sweep order, and random sampling uses a counter-based generator
(Philox) keyed by the caller's seed, so independent streams are derived by
distinct seeds rather than shared mutable state.
"""

import numpy as np

from .errors import ConvergenceError, InvalidInputError

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        return wrap

SYMMETRY_TOL = 1e-12
JACOBI_REL_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
CLUSTER_REL_TOL = 1e-7

_SEED_MASK = (1 << 64) - 1


def seeded_stream(seed):
    """Counter-based random stream for a 64-bit seed."""
    return np.random.Generator(np.random.Philox(key=int(seed) & _SEED_MASK))


@njit(cache=True)
def _jacobi_sweeps(a, v, tol, max_sweeps):  # pragma: no cover - exercised via jacobi_eigen
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * a[i, j] * a[i, j]
        off = np.sqrt(off)
        if off <= tol:
            return sweep, off, True
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                app = a[p, p]
                aqq = a[q, q]
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[p, k] = a[k, p]
                        a[k, q] = s * akp + c * akq
                        a[q, k] = a[k, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    off = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            off += 2.0 * a[i, j] * a[i, j]
    off = np.sqrt(off)
    return max_sweeps, off, off <= tol


def jacobi_eigen(m):
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, q)`` with ``w`` ascending and the columns of ``q`` the
    matching orthonormal eigenvectors, so ``q @ diag(w) @ q.T`` reconstructs
    the input. Convergence: off-diagonal Frobenius norm below
    ``1e-13 * max(1, ||m||_F)`` within 100 sweeps, else ConvergenceError.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n < 1:
        raise InvalidInputError("matrix dimension must be at least 1")
    scale = max(1.0, float(np.abs(a).max()))
    if float(np.abs(a - a.T).max()) > SYMMETRY_TOL * scale:
        raise InvalidInputError("matrix is asymmetric beyond 1e-12")
    a = (a + a.T) / 2.0
    v = np.eye(n)
    tol = JACOBI_REL_TOL * max(1.0, float(np.linalg.norm(a)))
    sweeps, off, converged = _jacobi_sweeps(a, v, tol, JACOBI_MAX_SWEEPS)
    if not converged:
        raise ConvergenceError(
            f"Jacobi eigensolver did not converge: n={n}, sweeps={sweeps}, "
            f"off-diagonal norm={off:.3e}, tolerance={tol:.3e}"
        )
    w = np.diagonal(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def random_orthonormal_family(ambient_dim, count, seed):
    """Orthonormalization of ``count`` independent standard normal vectors.

    Rows of the returned ``(count, ambient_dim)`` array are the family
    vectors; the distribution is invariant under orthogonal maps and the
    output is identical for identical seeds.
    """
    if ambient_dim < 1:
        raise InvalidInputError("ambient dimension must be positive")
    if not 1 <= count <= ambient_dim:
        raise InvalidInputError(
            f"count must satisfy 1 <= count <= ambient_dim, got count={count}, "
            f"ambient_dim={ambient_dim}"
        )
    rng = seeded_stream(seed)
    g = rng.standard_normal((ambient_dim, count))
    q, r = np.linalg.qr(g)
    # sign fix makes the columns agree with Gram-Schmidt on the draws
    signs = np.sign(np.diagonal(r))
    signs[signs == 0.0] = 1.0
    return (q * signs).T


def cluster_spectrum(values, rel_tol=CLUSTER_REL_TOL):
    """Group an ascending list into (value, multiplicity) clusters.

    Consecutive entries closer than ``rel_tol * max(1, |previous|)`` join the
    current cluster; the reported value is the cluster mean.
    """
    vals = [float(v) for v in values]
    for a, b in zip(vals, vals[1:]):
        if b < a:
            raise InvalidInputError("values must be sorted ascending")
    clusters = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > rel_tol * max(1.0, abs(vals[i - 1])):
            chunk = vals[start:i]
            clusters.append((sum(chunk) / len(chunk), len(chunk)))
            start = i
    return clusters

"""The curvature operator on traceless symmetric two-tensors, as a finite
symmetric matrix: assembly, spectra, weighted partial eigenvalue sums,
fractional nonnegativity classification, and a definition-level random-basis
oracle for the classification.
"""

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .numerics import cluster_spectrum, jacobi_eigen, random_orthonormal_family
from .sym2 import standard_basis, sym2_dim

CLASSIFY_TOL = 1e-9
CLUSTER_TOL = 1e-7

_SEED_MASK = (1 << 64) - 1

VERDICT_NONNEGATIVE = "nonnegative"
VERDICT_NONPOSITIVE = "nonpositive"
VERDICT_BOTH = "both"
VERDICT_NEITHER = "neither"


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues of the projected operator, with clusters."""

    n: int
    eigenvalues: np.ndarray
    clusters: tuple

    def __post_init__(self):
        w = np.ascontiguousarray(np.asarray(self.eigenvalues, dtype=float))
        if w.ndim != 1:
            raise InvalidInputError("eigenvalues must be a flat list")
        if np.any(np.diff(w) < 0):
            raise InvalidInputError("eigenvalues must be ascending")
        if len(w) != sym2_dim(self.n):
            raise InvalidInputError(
                f"expected {sym2_dim(self.n)} eigenvalues for ambient dimension {self.n}, "
                f"got {len(w)}"
            )
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "clusters", tuple((float(v), int(m)) for v, m in self.clusters))

    @property
    def N(self):
        return len(self.eigenvalues)


def operator_matrix(r, basis):
    """Matrix of the operator in a basis: entry [a, b] is
    ``sum R[i,j,k,l] b_a[i,l] b_b[j,k]``."""
    if basis.dim != r.dim:
        raise InvalidInputError(
            f"dimension mismatch: tensor has dim {r.dim}, basis has dim {basis.dim}"
        )
    if basis.count != sym2_dim(r.dim):
        raise InvalidInputError("basis does not span the traceless symmetric two-tensors")
    t = np.einsum("ail,ijkl->ajk", basis.tensors, r.components, optimize=True)
    mat = np.einsum("ajk,bjk->ab", t, basis.tensors, optimize=True)
    return (mat + mat.T) / 2.0


def spectrum(r, cluster_tol=CLUSTER_TOL):
    """Spectrum of the operator of a curvature tensor, dim >= 2."""
    if r.dim < 2:
        raise InvalidInputError("spectra need ambient dimension at least 2")
    w, _ = jacobi_eigen(operator_matrix(r, standard_basis(r.dim)))
    return Spectrum(n=r.dim, eigenvalues=w, clusters=tuple(cluster_spectrum(list(w), cluster_tol)))


def spectrum_from_eigenvalues(n, values, cluster_tol=CLUSTER_TOL):
    """Build a Spectrum from known eigenvalues (sorted internally)."""
    w = np.sort(np.asarray(list(values), dtype=float))
    return Spectrum(n=n, eigenvalues=w, clusters=tuple(cluster_spectrum(list(w), cluster_tol)))


def negate_spectrum(s):
    """Spectrum of the negated tensor: eigenvalues flipped and re-sorted."""
    return spectrum_from_eigenvalues(s.n, -s.eigenvalues)


def _split_alpha(alpha, n_values):
    if not 1.0 <= alpha <= n_values:
        raise InvalidInputError(f"alpha must lie in [1, {n_values}], got {alpha}")
    k = int(math.floor(alpha))
    frac = alpha - k
    if k == n_values:
        return n_values, 0.0
    return k, frac


def alpha_sum(s, alpha):
    """Weighted partial sum g(alpha) over ascending eigenvalues: the full
    floor(alpha) smallest plus the fractional part times the next one.

    Piecewise linear and convex in alpha, with slopes the eigenvalues.
    """
    k, frac = _split_alpha(float(alpha), s.N)
    w = s.eigenvalues
    total = float(w[:k].sum())
    if frac > 0.0:
        total += frac * float(w[k])
    return total


def classify(r, alpha, tol=CLASSIFY_TOL):
    """Fractional-alpha verdict: nonnegative / nonpositive / both / neither.

    Nonnegative means g(alpha) >= -tol on the spectrum; nonpositive is the
    same test after negating the tensor. Flat tensors report both.
    """
    s = spectrum(r)
    nonneg = alpha_sum(s, alpha) >= -tol
    nonpos = alpha_sum(negate_spectrum(s), alpha) >= -tol
    if nonneg and nonpos:
        return VERDICT_BOTH
    if nonneg:
        return VERDICT_NONNEGATIVE
    if nonpos:
        return VERDICT_NONPOSITIVE
    return VERDICT_NEITHER


def nonneg_threshold(s):
    """Least alpha in [1, N] with g(alpha) >= 0, using the exact root of the
    crossing linear segment; 1.0 when the least eigenvalue is nonnegative,
    None when even g(N) is negative."""
    w = s.eigenvalues
    if w[0] >= 0.0:
        return 1.0
    c = np.cumsum(w)
    for idx in range(1, len(w)):
        if c[idx] >= 0.0:
            return float(idx + (-c[idx - 1]) / w[idx])
    return None


def nonpos_threshold(s):
    """Least alpha making the negated tensor's sum nonnegative."""
    return nonneg_threshold(negate_spectrum(s))


def _digest(array):
    return hashlib.sha256(np.ascontiguousarray(array).tobytes()).hexdigest()[:16]


@dataclass(frozen=True)
class OracleResult:
    """Outcome of random-basis minimization; sample 0 is the eigenbasis."""

    min_value: float
    argmin_sample: int
    argmin_digest: str
    sample_values: tuple


def bruteforce_min_alpha_sum(r, alpha, samples, seed):
    """Minimize the weighted diagonal sum over sampled orthonormal bases.

    Rotates the standard coefficient basis by Haar-distributed orthogonal
    matrices (one per sample, seeded by seed XOR sample index), sorts the
    diagonal operator values ascending and applies the weights
    (1, ..., 1, alpha - floor(alpha)). The eigenvector basis is always
    evaluated as sample 0, so the returned minimum equals g(alpha) up to
    rounding whenever the sampling is consistent with the spectrum route.
    """
    if samples < 1:
        raise InvalidInputError("at least one sample is required")
    basis = standard_basis(r.dim)
    mat = operator_matrix(r, basis)
    n_dim = basis.count
    k, frac = _split_alpha(float(alpha), n_dim)

    def weighted(diag_values):
        d = np.sort(diag_values)
        total = float(d[:k].sum())
        if frac > 0.0:
            total += frac * float(d[k])
        return total

    w, vecs = jacobi_eigen(mat)
    values = [weighted(w)]
    digests = [_digest(vecs)]
    for s in range(1, samples + 1):
        q = random_orthonormal_family(n_dim, n_dim, (int(seed) ^ s) & _SEED_MASK)
        diag = np.einsum("ai,ij,aj->a", q, mat, q, optimize=True)
        values.append(weighted(diag))
        digests.append(_digest(q))
    argmin = int(np.argmin(values))
    return OracleResult(
        min_value=values[argmin],
        argmin_sample=argmin,
        argmin_digest=digests[argmin],
        sample_values=tuple(values),
    )

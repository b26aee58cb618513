"""Algebraic curvature tensors: model spaces, products, contractions,
structure detectors, and seeded random generation.

Sign convention: ``R[i, j, i, j]`` is the sectional curvature of the
coordinate plane spanned by ``e_i`` and ``e_j``; the Ricci contraction
``Ric[j, l] = sum_i R[i, j, i, l]`` then gives ``(n-1)c * Id`` on a space of
constant curvature ``c``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .numerics import seeded_stream

SYMMETRY_TOL = 1e-12
DETECTOR_TOL = 1e-6

_KAHLER_PROJECTION_TOL = 1e-14
_KAHLER_PROJECTION_MAX_ITERS = 500


def _cyclic_part(t):
    return (t + np.einsum("jkil->ijkl", t) + np.einsum("kijl->ijkl", t)) / 3.0


@dataclass(frozen=True)
class CurvatureTensor:
    """Rank-4 tensor with all Riemann curvature symmetries, at one point."""

    components: np.ndarray

    def __post_init__(self):
        c = np.ascontiguousarray(np.asarray(self.components, dtype=float))
        if c.ndim != 4 or len(set(c.shape)) != 1:
            raise InvalidInputError(f"components must have shape (n, n, n, n), got {c.shape}")
        tol = SYMMETRY_TOL * max(1.0, float(np.abs(c).max()))
        if float(np.abs(c + np.einsum("jikl->ijkl", c)).max()) > tol:
            raise InvalidInputError("components are not antisymmetric in the first index pair")
        if float(np.abs(c + np.einsum("ijlk->ijkl", c)).max()) > tol:
            raise InvalidInputError("components are not antisymmetric in the second index pair")
        if float(np.abs(c - np.einsum("klij->ijkl", c)).max()) > tol:
            raise InvalidInputError("components are not symmetric under index-pair exchange")
        if float(np.abs(_cyclic_part(c)).max()) > tol:
            raise InvalidInputError("components violate the first Bianchi identity")
        object.__setattr__(self, "components", c)

    @property
    def dim(self):
        return self.components.shape[0]

    def __neg__(self):
        return CurvatureTensor(-self.components)

    def scaled(self, factor):
        return CurvatureTensor(float(factor) * self.components)


@dataclass(frozen=True)
class ComplexStructure:
    """Orthogonal endomorphism squaring to minus the identity."""

    matrix: np.ndarray

    def __post_init__(self):
        j = np.ascontiguousarray(np.asarray(self.matrix, dtype=float))
        if j.ndim != 2 or j.shape[0] != j.shape[1]:
            raise InvalidInputError(f"expected a square matrix, got shape {j.shape}")
        n = j.shape[0]
        if n % 2 != 0 or n == 0:
            raise InvalidInputError("a complex structure needs even positive dimension")
        eye = np.eye(n)
        if float(np.abs(j @ j + eye).max()) > SYMMETRY_TOL:
            raise InvalidInputError("matrix does not square to minus the identity")
        if float(np.abs(j.T @ j - eye).max()) > SYMMETRY_TOL:
            raise InvalidInputError("matrix is not orthogonal")
        object.__setattr__(self, "matrix", j)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def m(self):
        return self.matrix.shape[0] // 2


def standard_complex_structure(m):
    """J sending e_i to e_{m+i} and e_{m+i} to -e_i, for 0-based i < m."""
    if m < 1:
        raise InvalidInputError("complex dimension must be at least 1")
    j = np.zeros((2 * m, 2 * m))
    for i in range(m):
        j[m + i, i] = 1.0
        j[i, m + i] = -1.0
    return ComplexStructure(j)


def space_form(n, c):
    """Constant sectional curvature c in dimension n >= 2."""
    if n < 2:
        raise InvalidInputError("space forms need dimension at least 2")
    d = np.eye(n)
    comp = float(c) * (np.einsum("ik,jl->ijkl", d, d) - np.einsum("il,jk->ijkl", d, d))
    return CurvatureTensor(comp)


def flat_tensor(n):
    """Zero curvature tensor; dimension 1 models a line factor."""
    if n < 1:
        raise InvalidInputError("dimension must be positive")
    return CurvatureTensor(np.zeros((n, n, n, n)))


def kahler_model_tensor(j, kappa):
    """Constant holomorphic sectional curvature ``4 * kappa`` adapted to j."""
    jm = j.matrix
    d = np.eye(j.dim)
    comp = float(kappa) * (
        np.einsum("ik,jl->ijkl", d, d)
        - np.einsum("il,jk->ijkl", d, d)
        + np.einsum("ki,lj->ijkl", jm, jm)
        - np.einsum("li,kj->ijkl", jm, jm)
        + 2.0 * np.einsum("ji,lk->ijkl", jm, jm)
    )
    return CurvatureTensor(comp)


def kahler_space_form(m, kappa):
    """Complex space form of complex dimension m, holomorphic curvature 4*kappa.

    Returns the curvature tensor together with the standard complex
    structure it is adapted to.
    """
    if m < 1:
        raise InvalidInputError("complex dimension must be at least 1")
    j = standard_complex_structure(m)
    return kahler_model_tensor(j, kappa), j


def product(r1, r2):
    """Block curvature tensor of a Riemannian product.

    Components with all indices inside one factor equal that factor's
    components; every mixed component is zero.
    """
    n1 = r1.dim
    n = n1 + r2.dim
    comp = np.zeros((n, n, n, n))
    comp[:n1, :n1, :n1, :n1] = r1.components
    comp[n1:, n1:, n1:, n1:] = r2.components
    return CurvatureTensor(comp)


def ricci(r):
    """Ricci contraction as a symmetric matrix."""
    return np.einsum("ijil->jl", r.components)


def scalar(r):
    """Scalar curvature (trace of Ricci)."""
    return float(np.einsum("ijij->", r.components))


def einstein_constant(r, tol=DETECTOR_TOL):
    """Return rho with Ric = rho * Id, or None when Ricci is not proportional.

    The deviation threshold is ``tol * max(1, ||Ric||_inf)``.
    """
    if tol <= 0:
        raise InvalidInputError("tolerance must be positive")
    ric = ricci(r)
    rho = scalar(r) / r.dim
    dev = float(np.abs(ric - rho * np.eye(r.dim)).max())
    if dev <= tol * max(1.0, float(np.abs(ric).max())):
        return rho
    return None


def constant_sectional(r, tol=DETECTOR_TOL):
    """Return c when r equals the constant-curvature model, else None."""
    if tol <= 0:
        raise InvalidInputError("tolerance must be positive")
    n = r.dim
    if n < 2:
        return 0.0
    c = scalar(r) / (n * (n - 1))
    dev = float(np.abs(r.components - space_form(n, c).components).max())
    if dev <= tol * max(1.0, float(np.abs(r.components).max())):
        return c
    return None


def constant_holomorphic(r, j, tol=DETECTOR_TOL):
    """Return the holomorphic sectional curvature c when r is the complex
    space form adapted to j, else None."""
    if tol <= 0:
        raise InvalidInputError("tolerance must be positive")
    if j.dim != r.dim:
        raise InvalidInputError(
            f"dimension mismatch: tensor has dim {r.dim}, complex structure {j.dim}"
        )
    m = j.m
    c = 4.0 * scalar(r) / (2 * m * (2 * m + 2))
    dev = float(np.abs(r.components - kahler_model_tensor(j, c / 4.0).components).max())
    if dev <= tol * max(1.0, float(np.abs(r.components).max())):
        return c
    return None


def random_curvature(n, seed, scale=1.0):
    """Seeded random algebraic curvature tensor.

    Draws a symmetric bilinear form on antisymmetric index pairs, then
    removes its cyclic part so the first Bianchi identity holds exactly to
    rounding. Identical seeds give identical components.
    """
    if n < 2:
        raise InvalidInputError("random curvature tensors need dimension at least 2")
    rng = seeded_stream(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    p = len(pairs)
    w = rng.standard_normal((p, p)) * float(scale)
    w = (w + w.T) / 2.0
    t = np.zeros((n, n, n, n))
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            v = w[a, b]
            t[i, j, k, l] = v
            t[j, i, k, l] = -v
            t[i, j, l, k] = -v
            t[j, i, l, k] = v
    return CurvatureTensor(t - _cyclic_part(t))


def _j_pair_average(t, jm):
    t12 = np.einsum("ai,bj,abkl->ijkl", jm, jm, t, optimize=True)
    t34 = np.einsum("ck,dl,ijcd->ijkl", jm, jm, t, optimize=True)
    tboth = np.einsum("ck,dl,abcd->abkl", jm, jm, t12, optimize=True)
    return (t + t12 + t34 + tboth) / 4.0


def random_kahler_curvature(m, seed, scale=1.0):
    """Seeded random curvature tensor invariant under the standard J.

    Alternates orthogonal projections onto the Bianchi-correct subspace and
    the J-invariant subspace until both residuals drop below 1e-14.
    Returns the tensor together with the complex structure.
    """
    if m < 1:
        raise InvalidInputError("complex dimension must be at least 1")
    j = standard_complex_structure(m)
    jm = j.matrix
    n = 2 * m
    rng = seeded_stream(seed)
    t = rng.standard_normal((n, n, n, n)) * float(scale)
    t = (t - np.einsum("jikl->ijkl", t)) / 2.0
    t = (t - np.einsum("ijlk->ijkl", t)) / 2.0
    t = (t + np.einsum("klij->ijkl", t)) / 2.0
    tol = _KAHLER_PROJECTION_TOL * max(1.0, float(np.abs(t).max()))
    for _ in range(_KAHLER_PROJECTION_MAX_ITERS):
        t = _j_pair_average(t, jm)
        t = t - _cyclic_part(t)
        bianchi_res = float(np.abs(_cyclic_part(t)).max())
        j_res = float(np.abs(t - _j_pair_average(t, jm)).max())
        if bianchi_res <= tol and j_res <= tol:
            break
    return CurvatureTensor(t), j

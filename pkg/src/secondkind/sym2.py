"""Traceless symmetric two-tensors and the orthonormal bases used to
organize the curvature operator: a standard basis, the product-adapted
basis, and the basis adapted to a complex structure.

The inner product throughout is the Frobenius pairing
``<u, v> = sum_ij u[i, j] v[i, j]``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

LABEL_FACTOR1 = "factor1"
LABEL_FACTOR2 = "factor2"
LABEL_XI = "xi"
LABEL_ZETA = "zeta"
LABEL_PLUS = "plus"
LABEL_MINUS = "minus"
LABEL_ALPHA = "alpha"
LABEL_ETA = "eta"
LABEL_GENERIC = "generic"


def sym2_dim(n):
    """Dimension (n-1)(n+2)/2 of the traceless symmetric two-tensors."""
    return (n - 1) * (n + 2) // 2


def sym_product(u, v):
    """Symmetric product: (u o v)[i, j] = u_i v_j + u_j v_i."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.outer(u, v) + np.outer(v, u)


@dataclass(frozen=True)
class Sym2Basis:
    """Ordered orthonormal family of traceless symmetric matrices.

    ``tensors`` has shape (count, dim, dim); ``labels`` tags each tensor by
    its role in an adapted decomposition.
    """

    dim: int
    tensors: np.ndarray
    labels: tuple

    def __post_init__(self):
        t = np.ascontiguousarray(np.asarray(self.tensors, dtype=float))
        if t.ndim != 3 or t.shape[1] != self.dim or t.shape[2] != self.dim:
            raise InvalidInputError(f"tensors must have shape (count, {self.dim}, {self.dim})")
        if len(self.labels) != t.shape[0]:
            raise InvalidInputError("one label per tensor is required")
        object.__setattr__(self, "tensors", t)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def count(self):
        return self.tensors.shape[0]

    def gram(self):
        return np.einsum("aij,bij->ab", self.tensors, self.tensors)

    def indices_with_label(self, label):
        return [a for a, lab in enumerate(self.labels) if lab == label]


def empty_basis(dim):
    """The basis of the zero space; used for dimension-1 factors."""
    return Sym2Basis(dim, np.zeros((0, dim, dim)), ())


def standard_basis(n):
    """Orthonormal basis of the traceless symmetric two-tensors on R^n.

    Off-diagonal tensors ``(1/sqrt(2)) e_i o e_j`` for i < j, followed by the
    n-1 diagonal traceless tensors with k leading ones and -k in slot k.
    """
    if n < 2:
        raise InvalidInputError("the traceless symmetric basis needs dimension at least 2")
    e = np.eye(n)
    tensors = []
    for i in range(n):
        for j in range(i + 1, n):
            tensors.append(sym_product(e[i], e[j]) / np.sqrt(2.0))
    for k in range(1, n):
        t = np.zeros((n, n))
        for i in range(k):
            t[i, i] = 1.0
        t[k, k] = -float(k)
        tensors.append(t / np.sqrt(k * (k + 1.0)))
    tensors = np.array(tensors)
    return Sym2Basis(n, tensors, (LABEL_GENERIC,) * len(tensors))


def _embed(tensor, n, offset):
    out = np.zeros((n, n))
    d = tensor.shape[0]
    out[offset:offset + d, offset:offset + d] = tensor
    return out


def product_adapted_basis(n1, n2, b1, b2):
    """Basis of the product space ordered as [factor1 | factor2 | xi | zeta].

    The factor bases are zero-extended; the mixed tensors are
    ``(1/sqrt(2)) e_p o e_q`` with p in the first factor and q in the second,
    ordered lexicographically; zeta is the normalized trace-difference
    ``(n2 g1 - n1 g2) / sqrt(n1 n2 (n1 + n2))``.
    """
    if n1 < 1 or n2 < 1:
        raise InvalidInputError("factor dimensions must be positive")
    if b1.dim != n1 or b2.dim != n2:
        raise InvalidInputError("factor basis dimensions do not match n1, n2")
    if b1.count != sym2_dim(n1) or b2.count != sym2_dim(n2):
        raise InvalidInputError("factor bases must span the factor traceless tensors")
    n = n1 + n2
    e = np.eye(n)
    tensors = []
    labels = []
    for t in b1.tensors:
        tensors.append(_embed(t, n, 0))
        labels.append(LABEL_FACTOR1)
    for t in b2.tensors:
        tensors.append(_embed(t, n, n1))
        labels.append(LABEL_FACTOR2)
    for p in range(n1):
        for q in range(n1, n):
            tensors.append(sym_product(e[p], e[q]) / np.sqrt(2.0))
            labels.append(LABEL_XI)
    zeta = np.zeros((n, n))
    for i in range(n1):
        zeta[i, i] = float(n2)
    for i in range(n1, n):
        zeta[i, i] = -float(n1)
    tensors.append(zeta / np.sqrt(n1 * n2 * (n1 + n2)))
    labels.append(LABEL_ZETA)
    return Sym2Basis(n, np.array(tensors), tuple(labels))


def kahler_basis(m, j):
    """Orthonormal basis of the traceless symmetric two-tensors on R^{2m}
    adapted to a complex structure.

    Families, in order: the J-anti-invariant and J-invariant combinations of
    off-diagonal symmetric products (labels ``plus``/``minus``), the 2m
    diagonal-type tensors built from e_i and J e_i (``alpha``), and the m-1
    invariant diagonal telescoping tensors (``eta``).
    """
    if m < 1:
        raise InvalidInputError("complex dimension must be at least 1")
    if j.dim != 2 * m:
        raise InvalidInputError(
            f"complex structure dimension {j.dim} does not match 2m = {2 * m}"
        )
    n = 2 * m
    e = np.eye(n)
    je = (j.matrix @ e.T).T
    tensors = []
    labels = []
    for i in range(m):
        for k in range(i + 1, m):
            tensors.append(0.5 * (sym_product(e[i], e[k]) - sym_product(je[i], je[k])))
            labels.append(LABEL_PLUS)
    for i in range(m):
        for k in range(i + 1, m):
            tensors.append(0.5 * (sym_product(e[i], e[k]) + sym_product(je[i], je[k])))
            labels.append(LABEL_MINUS)
    for i in range(m):
        for k in range(i + 1, m):
            tensors.append(0.5 * (sym_product(e[i], je[k]) + sym_product(je[i], e[k])))
            labels.append(LABEL_PLUS)
    for i in range(m):
        for k in range(i + 1, m):
            tensors.append(0.5 * (sym_product(e[i], je[k]) - sym_product(je[i], e[k])))
            labels.append(LABEL_MINUS)
    for i in range(m):
        tensors.append((sym_product(e[i], e[i]) - sym_product(je[i], je[i])) / (2.0 * np.sqrt(2.0)))
        labels.append(LABEL_ALPHA)
    for i in range(m):
        tensors.append(sym_product(e[i], je[i]) / np.sqrt(2.0))
        labels.append(LABEL_ALPHA)
    for k in range(1, m):
        t = float(k) * (sym_product(e[k], e[k]) + sym_product(je[k], je[k]))
        for i in range(k):
            t -= sym_product(e[i], e[i]) + sym_product(je[i], je[i])
        tensors.append(t / np.sqrt(8.0 * k * (k + 1.0)))
        labels.append(LABEL_ETA)
    return Sym2Basis(n, np.array(tensors), tuple(labels))

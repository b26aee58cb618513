"""Model-space descriptors: JSON schema, tensor construction, and
closed-form spectra.

A descriptor is a JSON object with a ``kind`` and kind-specific fields:

* ``sphere`` / ``hyperbolic``: ``dim >= 2``, ``kappa > 0`` (the sign of the
  curvature is applied internally for the hyperbolic kind);
* ``euclidean``: ``dim >= 1``;
* ``cp`` / ``ch``: complex dimension ``m >= 1``, ``kappa > 0`` (holomorphic
  sectional curvature ``4 kappa`` resp. ``-4 kappa``);
* ``complex_euclidean``: ``m >= 1``;
* ``product``: ``factors`` list of at least two descriptors;
* ``custom``: ``dim`` and ``components``, a flat list of ``dim**4`` reals
  with the last index fastest; all curvature identities are re-checked.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .curvature import (
    CurvatureTensor,
    flat_tensor,
    kahler_space_form,
    product,
    space_form,
    standard_complex_structure,
)
from .errors import InvalidInputError
from .sym2 import sym2_dim

SINGLE_KINDS = ("sphere", "hyperbolic", "euclidean", "cp", "ch", "complex_euclidean")
KINDS = SINGLE_KINDS + ("product", "custom")

_MERGE_TOL = 1e-9


@dataclass(frozen=True)
class ManifoldDescriptor:
    kind: str
    dim: int = 0
    m: int = 0
    kappa: float = 0.0
    factors: tuple = ()
    components: tuple = ()


class DescriptorError(InvalidInputError):
    """Descriptor JSON violates the schema or an invariant."""


def _fail(path, message):
    raise DescriptorError(f"{path}: {message}")


def _require_int(obj, key, path):
    if key not in obj:
        _fail(path, f"missing required field '{key}'")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(f"{path}.{key}", "expected an integer")
    return value


def _require_positive_real(obj, key, path):
    if key not in obj:
        _fail(path, f"missing required field '{key}'")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(f"{path}.{key}", "expected a number")
    if not value > 0:
        _fail(f"{path}.{key}", "must be strictly positive")
    return float(value)


def _check_keys(obj, allowed, path):
    extra = sorted(set(obj) - set(allowed))
    if extra:
        _fail(path, f"unknown field(s) {extra}; allowed: {sorted(allowed)}")


def _from_obj(obj, path):
    if not isinstance(obj, dict):
        _fail(path, "descriptor must be a JSON object")
    kind = obj.get("kind")
    if kind not in KINDS:
        _fail(f"{path}.kind", f"expected one of {list(KINDS)}, got {kind!r}")
    if kind in ("sphere", "hyperbolic"):
        _check_keys(obj, ("kind", "dim", "kappa"), path)
        dim = _require_int(obj, "dim", path)
        if dim < 2:
            _fail(f"{path}.dim", "sphere/hyperbolic dimension must be at least 2")
        return ManifoldDescriptor(kind=kind, dim=dim,
                                  kappa=_require_positive_real(obj, "kappa", path))
    if kind == "euclidean":
        _check_keys(obj, ("kind", "dim"), path)
        dim = _require_int(obj, "dim", path)
        if dim < 1:
            _fail(f"{path}.dim", "euclidean dimension must be at least 1")
        return ManifoldDescriptor(kind=kind, dim=dim)
    if kind in ("cp", "ch"):
        _check_keys(obj, ("kind", "m", "kappa"), path)
        m = _require_int(obj, "m", path)
        if m < 1:
            _fail(f"{path}.m", "complex dimension must be at least 1")
        return ManifoldDescriptor(kind=kind, m=m, dim=2 * m,
                                  kappa=_require_positive_real(obj, "kappa", path))
    if kind == "complex_euclidean":
        _check_keys(obj, ("kind", "m"), path)
        m = _require_int(obj, "m", path)
        if m < 1:
            _fail(f"{path}.m", "complex dimension must be at least 1")
        return ManifoldDescriptor(kind=kind, m=m, dim=2 * m)
    if kind == "product":
        _check_keys(obj, ("kind", "factors"), path)
        factors = obj.get("factors")
        if not isinstance(factors, list) or len(factors) < 2:
            _fail(f"{path}.factors", "a product needs a list of at least two factors")
        parsed = tuple(_from_obj(f, f"{path}.factors[{i}]") for i, f in enumerate(factors))
        return ManifoldDescriptor(kind=kind, dim=sum(f.dim for f in parsed), factors=parsed)
    # custom
    _check_keys(obj, ("kind", "dim", "components"), path)
    dim = _require_int(obj, "dim", path)
    if dim < 1:
        _fail(f"{path}.dim", "dimension must be at least 1")
    comp = obj.get("components")
    if not isinstance(comp, list):
        _fail(f"{path}.components", "expected a flat list of numbers")
    if len(comp) != dim ** 4:
        _fail(f"{path}.components", f"expected {dim ** 4} entries, got {len(comp)}")
    values = []
    for i, v in enumerate(comp):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            _fail(f"{path}.components[{i}]", "expected a number")
        values.append(float(v))
    return ManifoldDescriptor(kind=kind, dim=dim, components=tuple(values))


def parse_descriptor(text):
    """Parse and validate a descriptor from JSON text."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"invalid JSON: {exc}") from exc
    return _from_obj(obj, "$")


def descriptor_to_obj(desc):
    """Canonical JSON-ready form; parsing it back gives an equal descriptor."""
    if desc.kind in ("sphere", "hyperbolic"):
        return {"kind": desc.kind, "dim": desc.dim, "kappa": desc.kappa}
    if desc.kind == "euclidean":
        return {"kind": desc.kind, "dim": desc.dim}
    if desc.kind in ("cp", "ch"):
        return {"kind": desc.kind, "m": desc.m, "kappa": desc.kappa}
    if desc.kind == "complex_euclidean":
        return {"kind": desc.kind, "m": desc.m}
    if desc.kind == "product":
        return {"kind": "product", "factors": [descriptor_to_obj(f) for f in desc.factors]}
    return {"kind": "custom", "dim": desc.dim, "components": list(desc.components)}


def build_tensor(desc):
    """Curvature tensor of a descriptor; custom components are re-validated."""
    if desc.kind == "sphere":
        return space_form(desc.dim, desc.kappa)
    if desc.kind == "hyperbolic":
        return space_form(desc.dim, -desc.kappa)
    if desc.kind == "euclidean":
        return flat_tensor(desc.dim)
    if desc.kind == "cp":
        return kahler_space_form(desc.m, desc.kappa)[0]
    if desc.kind == "ch":
        return kahler_space_form(desc.m, -desc.kappa)[0]
    if desc.kind == "complex_euclidean":
        return flat_tensor(2 * desc.m)
    if desc.kind == "product":
        tensor = build_tensor(desc.factors[0])
        for f in desc.factors[1:]:
            tensor = product(tensor, build_tensor(f))
        return tensor
    comp = np.array(desc.components, dtype=float).reshape((desc.dim,) * 4)
    try:
        return CurvatureTensor(comp)
    except InvalidInputError as exc:
        raise DescriptorError(f"$.components: {exc}") from exc


def build_complex_structure(desc):
    """Standard complex structure for a single complex kind, else None."""
    if desc.kind in ("cp", "ch", "complex_euclidean"):
        return standard_complex_structure(desc.m)
    return None


def _leaf_rho(desc):
    if desc.kind == "sphere":
        return (desc.dim - 1) * desc.kappa
    if desc.kind == "hyperbolic":
        return -(desc.dim - 1) * desc.kappa
    if desc.kind == "cp":
        return 2 * (desc.m + 1) * desc.kappa
    if desc.kind == "ch":
        return -2 * (desc.m + 1) * desc.kappa
    if desc.kind in ("euclidean", "complex_euclidean"):
        return 0.0
    return None


def _leaf_eigenvalues(desc):
    if desc.kind == "sphere":
        return [(desc.kappa, sym2_dim(desc.dim))]
    if desc.kind == "hyperbolic":
        return [(-desc.kappa, sym2_dim(desc.dim))]
    if desc.kind == "euclidean":
        return [(0.0, sym2_dim(desc.dim))]
    if desc.kind == "complex_euclidean":
        return [(0.0, sym2_dim(2 * desc.m))]
    if desc.kind == "cp":
        m, k = desc.m, desc.kappa
        return [(-2.0 * k, (m - 1) * (m + 1)), (4.0 * k, m * (m + 1))]
    if desc.kind == "ch":
        m, k = desc.m, desc.kappa
        return [(2.0 * k, (m - 1) * (m + 1)), (-4.0 * k, m * (m + 1))]
    return None


def _closed_form_fold(desc):
    """Return (eigenvalue list, rho, dim) or None when no closed form applies.

    Product spectra come from the Einstein product rule: factor eigenvalues,
    zero with multiplicity n1*n2, and the single trace-difference eigenvalue
    -(n2 rho1 + n1 rho2) / (n1 + n2); it applies as long as every partial
    product along the fold is Einstein.
    """
    if desc.kind in SINGLE_KINDS:
        return _leaf_eigenvalues(desc), _leaf_rho(desc), desc.dim
    if desc.kind != "product":
        return None
    parts = [_closed_form_fold(f) for f in desc.factors]
    if any(p is None for p in parts):
        return None
    eigs, rho, n = parts[0]
    for eigs2, rho2, n2 in parts[1:]:
        if rho is None or rho2 is None:
            return None
        zeta = -(n2 * rho + n * rho2) / (n + n2)
        eigs = list(eigs) + list(eigs2) + [(0.0, n * n2), (zeta, 1)]
        rho = rho if abs(rho - rho2) <= _MERGE_TOL else None
        n = n + n2
    return eigs, rho, n


def closed_form_clusters(desc):
    """Ascending (value, multiplicity) clusters predicted in closed form.

    Covers the single model spaces and every product of them whose partial
    products are Einstein; returns None otherwise (custom tensors, products
    of mismatched factors).
    """
    folded = _closed_form_fold(desc)
    if folded is None:
        return None
    eigs = [(v, m) for v, m in folded[0] if m > 0]
    eigs.sort()
    merged = []
    for value, mult in eigs:
        if merged and value - merged[-1][0] <= _MERGE_TOL * max(1.0, abs(merged[-1][0])):
            prev_v, prev_m = merged[-1]
            total = prev_m + mult
            merged[-1] = ((prev_v * prev_m + value * mult) / total, total)
        else:
            merged.append((value, mult))
    return merged

"""k-tensors: sparse multilinear maps, evaluation, tensor product, Alt.

A KTensor of arity k on R^n is a sparse sum of basis products
phi_{i1} x ... x phi_{ik}; its key set is unrestricted (any positive
indices, repeats allowed).  Evaluation takes an n-by-k frame whose
columns are the k argument vectors.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .sparse import ArityError, DimensionError, SparseMap

__all__ = [
    "KTensor",
    "ktensor_from_rows",
    "perm_sign",
    "evaluate_tensor",
    "tensor_product",
    "alt",
    "ALT_MAX_ARITY",
]

# alt enumerates k! permutations; beyond this the call is refused outright
ALT_MAX_ARITY = 10


class KTensor(SparseMap):
    """Sparse k-tensor; keys are unrestricted multi-indices."""

    _header = "ktensor"

    def __call__(self, frame):
        return evaluate_tensor(self, frame)


def ktensor_from_rows(rows, coeffs=None) -> KTensor:
    """Build a KTensor from index rows and matching coefficients.

    Duplicate rows accumulate.  With coeffs omitted every row gets 1.
    """
    rows = [tuple(int(i) for i in r) for r in rows]
    if not rows:
        raise ValueError("need at least one row to infer arity")
    k = len(rows[0])
    if any(len(r) != k for r in rows):
        raise ArityError("ragged rows: all index rows must share one arity")
    if coeffs is None:
        coeffs = [1.0] * len(rows)
    coeffs = [float(c) for c in coeffs]
    if len(coeffs) != len(rows):
        raise ValueError(f"{len(rows)} rows but {len(coeffs)} coefficients")
    return KTensor(k, zip(rows, coeffs))


def perm_sign(p) -> int:
    """Sign of a permutation of 1..k given in one-line notation."""
    p = tuple(int(i) for i in p)
    k = len(p)
    if sorted(p) != list(range(1, k + 1)):
        raise ValueError(f"{p} is not a permutation of 1..{k}")
    inv = sum(1 for i in range(k) for j in range(i + 1, k) if p[i] > p[j])
    return -1 if inv % 2 else 1


def as_frame(E, arity: int, min_rows: int) -> np.ndarray:
    """Coerce E to a float (n, arity) frame with n >= min_rows."""
    E = np.asarray(E, dtype=float)
    if arity == 1 and E.ndim == 1:
        E = E[:, None]
    if E.ndim != 2:
        raise DimensionError(f"frame must be a 2-D array, got shape {E.shape}")
    if E.shape[1] != arity:
        raise DimensionError(
            f"frame has {E.shape[1]} columns but the object has arity {arity}"
        )
    if E.shape[0] < min_rows:
        raise DimensionError(
            f"frame has {E.shape[0]} rows but indices reach {min_rows}"
        )
    return E


def evaluate_tensor(S: KTensor, E) -> float:
    """Evaluate S on the frame E (columns are the k argument vectors).

    Rows of E beyond the implied dimension are ignored.
    """
    if S.arity == 0:
        return S.terms.get((), 0.0)
    E = as_frame(E, S.arity, S.dimension)
    total = 0.0
    for key, c in S.terms.items():
        p = c
        for j, i in enumerate(key):
            p *= E[i - 1, j]
        total += p
    return total


def tensor_product(S: SparseMap, T: SparseMap) -> KTensor:
    """Tensor product: keys concatenate, coefficients multiply."""
    acc: dict[tuple, float] = {}
    for ka, ca in S.terms.items():
        for kb, cb in T.terms.items():
            key = ka + kb
            c = acc.get(key, 0.0) + ca * cb
            if c == 0.0:
                acc.pop(key, None)
            else:
                acc[key] = c
    return KTensor(S.arity + T.arity, acc)


def _perm_parity(perm) -> int:
    # parity of a 0-based permutation tuple, +1/-1
    inv = 0
    k = len(perm)
    for i in range(k):
        pi = perm[i]
        for j in range(i + 1, k):
            if pi > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def alt(T: SparseMap) -> KTensor:
    """Alternating part: alt(T) = (1/k!) sum_sigma sign(sigma) T o sigma.

    An exact k!-term enumeration.  This is the definitional route, kept
    as a correctness oracle rather than a hot path, so arities above
    ALT_MAX_ARITY are refused with a cost error.
    """
    k = T.arity
    if k < 1:
        raise ArityError("alt needs arity >= 1")
    if k > ALT_MAX_ARITY:
        raise ValueError(
            f"alt on arity {k} would enumerate {k}! = {math.factorial(k)} "
            "permutations; refusing"
        )
    fact = float(math.factorial(k))
    acc: dict[tuple, float] = {}
    for key, c in T.terms.items():
        for perm in itertools.permutations(range(k)):
            sign = _perm_parity(perm)
            new = tuple(key[i] for i in perm)
            v = acc.get(new, 0.0) + sign * c / fact
            if v == 0.0:
                acc.pop(new, None)
            else:
                acc[new] = v
    return KTensor(k, acc)

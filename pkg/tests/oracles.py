"""Independent second routes used by the tests.

These deliberately avoid the code paths they check: dense k-dimensional
arrays instead of sparse maps, explicit signed permutation expansion
instead of key merges or determinant calls, and closed-form integrals
instead of quadrature.
"""

import itertools

import numpy as np


def perm_parity(perm) -> int:
    perm = list(perm)
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inv % 2 else 1


def dense_from_terms(terms: dict, k: int, n: int) -> np.ndarray:
    """Materialize sparse terms as a dense n^k coefficient array."""
    A = np.zeros((n,) * k)
    for key, c in terms.items():
        A[tuple(i - 1 for i in key)] += c
    return A


def dense_tensor_value(terms: dict, k: int, E) -> float:
    """Evaluate a k-tensor by brute-force dense contraction."""
    E = np.asarray(E, dtype=float)
    n = E.shape[0]
    A = dense_from_terms(terms, k, n)
    total = 0.0
    for idx in itertools.product(range(n), repeat=k):
        a = A[idx]
        if a == 0.0:
            continue
        p = a
        for col, i in enumerate(idx):
            p *= E[i, col]
        total += p
    return total


def form_value_by_expansion(terms: dict, k: int, E) -> float:
    """Evaluate a k-form by expanding every key into k! signed products.

    No determinant routine is involved: each increasing key I becomes
    sum_sigma sign(sigma) prod_col E[I[sigma(col)] - 1, col].
    """
    E = np.asarray(E, dtype=float)
    total = 0.0
    for key, c in terms.items():
        for perm in itertools.permutations(range(k)):
            p = c * perm_parity(perm)
            for col, pos in enumerate(perm):
                p *= E[key[pos] - 1, col]
            total += p
    return total


def monomial_integral(p: int, a: float) -> float:
    """Exact integral of x^p over [0, a]."""
    return a ** (p + 1) / (p + 1)

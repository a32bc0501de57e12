"""Alternating k-forms with canonical strictly increasing keys.

A KForm stores one coefficient per strictly increasing multi-index, so
the alternating structure lives in the keys instead of in k!-fold
redundant tensor storage.  Construction from arbitrary rows sorts each
row, picks up the permutation sign, and drops rows with repeated
indices; after that every operation preserves the canonical key order.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .sparse import ArityError, DimensionError, SparseMap, format_coefficient
from .tensors import KTensor, alt, as_frame, tensor_product

__all__ = [
    "KForm",
    "kform_from_rows",
    "elementary",
    "kform_general",
    "evaluate_form",
    "wedge",
    "wedge_definitional",
    "form_to_tensor",
    "alternating_tensor_to_form",
    "contract",
    "contract_matrix",
    "pullback",
    "symbolic",
    "rform",
    "SplitMix64",
]


class KForm(SparseMap):
    """Sparse alternating k-form; every key is strictly increasing.

    The constructor validates canonical keys; to build a form from
    unsorted or repeated index rows use kform_from_rows, which applies
    the sign bookkeeping.  `a ^ b` is the wedge product (note Python's
    `^` binds looser than `+`: parenthesize mixed expressions).
    """

    _header = "kform"

    def __init__(self, arity, terms=()):
        super().__init__(arity, terms)
        for key in self.terms:
            if any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(
                    f"form keys must be strictly increasing, got {key}; "
                    "use kform_from_rows to canonicalize raw rows"
                )

    def __call__(self, frame):
        return evaluate_form(self, frame)

    def __xor__(self, other):
        if isinstance(other, KForm):
            return wedge(self, other)
        return NotImplemented


def _canonical_row(row):
    # -> (sorted_key, sign) or None for a repeated index
    row = tuple(int(i) for i in row)
    if len(set(row)) != len(row):
        return None
    inv = sum(
        1
        for i in range(len(row))
        for j in range(i + 1, len(row))
        if row[i] > row[j]
    )
    return tuple(sorted(row)), (-1 if inv % 2 else 1)


def kform_from_rows(rows, coeffs=None) -> KForm:
    """Build a KForm from arbitrary index rows and coefficients.

    Each row is sorted into increasing order with its coefficient
    multiplied by the sort permutation's sign; rows with a repeated
    index are dropped; identical canonical keys accumulate.
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
    acc: dict[tuple, float] = {}
    for row, c in zip(rows, coeffs):
        canon = _canonical_row(row)
        if canon is None:
            continue
        key, sign = canon
        v = acc.get(key, 0.0) + sign * c
        if v == 0.0:
            acc.pop(key, None)
        else:
            acc[key] = v
    return KForm(k, acc)


def elementary(i: int) -> KForm:
    """The elementary 1-form dx_i."""
    i = int(i)
    if i < 1:
        raise ValueError("indices are 1-based and positive")
    return KForm(1, {(i,): 1.0})


def kform_general(indices, k: int, coeffs=None) -> KForm:
    """General k-form over all k-subsets of the given index set.

    Subsets are ordered colexicographically ((1,2), (1,3), (2,3),
    (1,4), ...) and coefficients are assigned in that order; omitted
    coeffs default to all ones.  `indices` may be an int n, meaning
    1..n.
    """
    if isinstance(indices, (int, np.integer)):
        indices = range(1, int(indices) + 1)
    idx = sorted(int(i) for i in indices)
    if len(set(idx)) != len(idx):
        raise ValueError("index set must be distinct")
    if any(i < 1 for i in idx):
        raise ValueError("indices are 1-based and positive")
    subsets = sorted(itertools.combinations(idx, k), key=lambda t: t[::-1])
    if coeffs is None:
        coeffs = [1.0] * len(subsets)
    coeffs = [float(c) for c in coeffs]
    if len(coeffs) != len(subsets):
        raise ValueError(
            f"need {len(subsets)} coefficients for C({len(idx)},{k}) subsets, "
            f"got {len(coeffs)}"
        )
    return KForm(k, zip(subsets, coeffs))


def _det(A: np.ndarray) -> float:
    # direct formulas at sizes 0..3 keep small integer minors exact
    m = A.shape[0]
    if m == 0:
        return 1.0
    if m == 1:
        return float(A[0, 0])
    if m == 2:
        return float(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0])
    if m == 3:
        return float(
            A[0, 0] * (A[1, 1] * A[2, 2] - A[1, 2] * A[2, 1])
            - A[0, 1] * (A[1, 0] * A[2, 2] - A[1, 2] * A[2, 0])
            + A[0, 2] * (A[1, 0] * A[2, 1] - A[1, 1] * A[2, 0])
        )
    return float(np.linalg.det(A))


def evaluate_form(w: KForm, E) -> float:
    """Evaluate the form on a frame: sum of coeff * det(E[key rows])."""
    if w.arity == 0:
        return w.terms.get((), 0.0)
    E = as_frame(E, w.arity, w.dimension)
    total = 0.0
    for key, c in w.terms.items():
        rows = np.fromiter((i - 1 for i in key), dtype=int, count=len(key))
        total += c * _det(E[rows, :])
    return total


def _merge_signed(a: tuple, b: tuple):
    # merge two strictly increasing tuples; None on shared index,
    # else (merged, sign) with sign = parity of the block shuffle
    out = []
    i = j = 0
    inv = 0
    la = len(a)
    while i < la and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
            inv += la - i
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), (-1 if inv % 2 else 1)


def wedge(w: KForm, e: KForm) -> KForm:
    """Wedge product by sorted key merge with inversion-count signs."""
    acc: dict[tuple, float] = {}
    for ka, ca in w.terms.items():
        for kb, cb in e.terms.items():
            merged = _merge_signed(ka, kb)
            if merged is None:
                continue
            key, sign = merged
            v = acc.get(key, 0.0) + sign * ca * cb
            if v == 0.0:
                acc.pop(key, None)
            else:
                acc[key] = v
    return KForm(w.arity + e.arity, acc)


def form_to_tensor(w: KForm) -> KTensor:
    """Expand a k-form into its alternating k-tensor.

    Each increasing key I with coefficient c becomes the k! signed
    terms sign(sigma) * c on the permuted keys sigma(I).
    """
    k = w.arity
    acc: dict[tuple, float] = {}
    for key, c in w.terms.items():
        for perm in itertools.permutations(range(k)):
            inv = sum(
                1
                for i in range(k)
                for j in range(i + 1, k)
                if perm[i] > perm[j]
            )
            sign = -1 if inv % 2 else 1
            acc[tuple(key[i] for i in perm)] = sign * c
    return KTensor(k, acc)


def alternating_tensor_to_form(T: KTensor) -> KForm:
    """Read a k-form off an alternating tensor's increasing keys."""
    acc = {
        key: c
        for key, c in T.terms.items()
        if all(a < b for a, b in zip(key, key[1:]))
    }
    return KForm(T.arity, acc)


def wedge_definitional(w: KForm, e: KForm) -> KForm:
    """Wedge by the definition: C(k+l, k) * alt(w x e).

    Exponentially slower than `wedge`; exists as the independent
    second route for verification.
    """
    k, l = w.arity, e.arity
    prod = tensor_product(form_to_tensor(w), form_to_tensor(e))
    if k + l == 0:
        return KForm(0, prod.terms)
    scaled = alt(prod).scale(float(math.comb(k + l, k)))
    return alternating_tensor_to_form(scaled)


def contract(w: KForm, v) -> KForm:
    """Interior product: plug v into the first slot.

    (dx_I)_v = sum_j (-1)^(j-1) v[i_j] dx_{I minus i_j}; contracting a
    1-form gives a 0-form.
    """
    if w.arity == 0:
        raise ArityError("cannot contract a 0-form")
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise DimensionError(f"contraction vector must be 1-D, got shape {v.shape}")
    if v.shape[0] < w.dimension:
        raise DimensionError(
            f"vector has length {v.shape[0]} but indices reach {w.dimension}"
        )
    acc: dict[tuple, float] = {}
    for key, c in w.terms.items():
        for j, i in enumerate(key):
            vi = v[i - 1]
            if vi == 0.0:
                continue
            sub = key[:j] + key[j + 1 :]
            term = (-vi if j % 2 else vi) * c
            val = acc.get(sub, 0.0) + term
            if val == 0.0:
                acc.pop(sub, None)
            else:
                acc[sub] = val
    return KForm(w.arity - 1, acc)


def contract_matrix(w: KForm, V, lose: bool = True):
    """Left-fold contraction over the columns of V.

    With lose (the default) a fully contracted result is returned as a
    plain float instead of a 0-form.
    """
    V = np.asarray(V, dtype=float)
    if V.ndim == 1:
        V = V[:, None]
    if V.ndim != 2:
        raise DimensionError(f"expected a vector or matrix, got shape {V.shape}")
    if V.shape[1] > w.arity:
        raise ArityError(
            f"cannot contract arity {w.arity} form with {V.shape[1]} vectors"
        )
    out = w
    for j in range(V.shape[1]):
        out = contract(out, V[:, j])
    if out.arity == 0 and lose:
        return out.terms.get((), 0.0)
    return out


def pullback(w: KForm, M) -> KForm:
    """Pull back along dx_i = sum_r M[i, r] dy_r.

    Each key I maps onto every increasing target J with the minor
    determinant det(M[I, J]) as weight.  Near-zero accumulations are
    kept; zap explicitly if wanted.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"transformation matrix must be square, got {M.shape}")
    n = M.shape[0]
    if n < w.dimension:
        raise DimensionError(
            f"matrix is {n}x{n} but form indices reach {w.dimension}"
        )
    k = w.arity
    acc: dict[tuple, float] = {}
    for key, a in w.terms.items():
        rows = np.fromiter((i - 1 for i in key), dtype=int, count=k)
        sub = M[rows, :]
        for target in itertools.combinations(range(1, n + 1), k):
            cols = np.fromiter((j - 1 for j in target), dtype=int, count=k)
            d = _det(sub[:, cols])
            if d == 0.0:
                continue
            val = acc.get(target, 0.0) + a * d
            if val == 0.0:
                acc.pop(target, None)
            else:
                acc[target] = val
    return KForm(k, acc)


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def symbolic(x: SparseMap, style: str = "letters", symbols=None) -> str:
    """Render a tensor or form as one line of signed symbolic terms.

    style "letters" names index i by its letter (a, b, c, ...) or by
    symbols[i-1]; style "d" (alias "d-names") names it dx<i>, or
    d<symbols[i-1]> when symbols are given.  Factors join with "*" for
    tensors and "^" for forms; a unit coefficient is omitted, -1 prints
    as a bare minus, and terms are separated by single spaces with a
    leading + on a positive first term.
    """
    if style not in ("letters", "d", "d-names"):
        raise ValueError(f"unknown style {style!r}")
    if not x.terms:
        return "0"

    def factor(i: int) -> str:
        if style == "letters":
            sym = symbols if symbols is not None else _LETTERS
            if i > len(sym):
                raise ValueError(f"index {i} exceeds the {len(sym)} symbols supplied")
            return sym[i - 1]
        if symbols is not None:
            if i > len(symbols):
                raise ValueError(f"index {i} exceeds the {len(symbols)} symbols supplied")
            return "d" + symbols[i - 1]
        return f"dx{i}"

    joiner = "^" if isinstance(x, KForm) else "*"
    parts = []
    for key, c in x.terms.items():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = joiner.join(factor(i) for i in key)
        if not body:
            parts.append(f"{sign} {format_coefficient(mag)}")
        elif mag == 1.0:
            parts.append(f"{sign} {body}")
        else:
            parts.append(f"{sign}{format_coefficient(mag)} {body}")
    return " ".join(parts)


_M64 = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 stream: a tiny seedable 64-bit generator.

    next() advances state by 0x9E3779B97F4A7C15 mod 2^64 and returns
    z = state; z = (z ^ z>>30) * 0xBF58476D1CE4B9FB; z = (z ^ z>>27) *
    0x94D049BB133111EB; z ^ z>>31, all mod 2^64.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = int(seed) & _M64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _M64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4B9FB) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        return z ^ (z >> 31)


def _unrank_subset(r: int, n: int, k: int) -> tuple:
    # r-th k-subset of 1..n in lexicographic order
    out = []
    x = 1
    for slots in range(k, 0, -1):
        while math.comb(n - x, slots - 1) <= r:
            r -= math.comb(n - x, slots - 1)
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def rform(seed: int = 1, k: int = 3, n: int = 7, terms: int = 8) -> KForm:
    """Deterministic random k-form on R^n with `terms` distinct keys.

    The stream is SplitMix64(seed).  Keys: draw r = next() mod C(n,k)
    repeatedly, discarding ranks already taken, until `terms` distinct
    ranks are collected; each accepted rank is unranked to the r-th
    k-subset of 1..n in lexicographic order, and its coefficient is
    drawn immediately afterwards as v = next() mod 24, mapped to v-12
    for v < 12 (giving -12..-1) and to v-11 otherwise (giving 1..12).
    Equal seeds give equal forms on every platform.
    """
    total = math.comb(n, k)
    if terms > total:
        raise ValueError(f"cannot place {terms} distinct keys among C({n},{k})={total}")
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    g = SplitMix64(seed)
    acc: dict[tuple, float] = {}
    seen: set[int] = set()
    while len(acc) < terms:
        r = g.next() % total
        if r in seen:
            continue
        seen.add(r)
        v = g.next() % 24
        c = float(v - 12 if v < 12 else v - 11)
        acc[_unrank_subset(r, n, k)] = c
    return KForm(k, acc)

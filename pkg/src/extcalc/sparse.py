"""Sparse coefficient stores keyed by 1-based multi-indices.

A multi-index (i1, ..., ik) addresses one basis product inside a rank-k
multilinear object; a SparseMap is a finite map from such keys to float
coefficients, every key sharing one arity k.  Three hygiene rules hold
everywhere:

* a coefficient that becomes exactly 0.0 is deleted, never stored;
* iteration, comparison, and printing follow lexicographic key order, so
  any construction order of the same object yields identical storage;
* the implied dimension is the largest index used (0 for the empty map).

Instances are immutable by convention: every operation returns a new map
and never touches its operands, so values can be shared freely between
threads.
"""

from __future__ import annotations

__all__ = [
    "ArityError",
    "DimensionError",
    "SparseMap",
    "DEFAULT_TOL",
    "format_coefficient",
]

DEFAULT_TOL = 1e-11


class ArityError(ValueError):
    """Keys or operands disagree about the arity k."""


class DimensionError(ValueError):
    """An evaluation frame or matrix is too small for the object."""


def format_coefficient(c: float) -> str:
    """Render a coefficient as its shortest exact decimal form.

    Integral values come out bare ("113", not "113.0"); everything else
    uses the shortest representation that parses back to the identical
    float, so serialized objects round-trip through text exactly.
    """
    c = float(c)
    if c.is_integer() and abs(c) < 1e16:
        return str(int(c))
    return repr(c)


def _check_key(key, arity: int) -> tuple:
    key = tuple(int(i) for i in key)
    if len(key) != arity:
        raise ArityError(f"key {key} has arity {len(key)}, expected {arity}")
    if any(i < 1 for i in key):
        raise ValueError(f"indices are 1-based positive integers, got {key}")
    return key


class SparseMap:
    """Arity-k sparse map from multi-indices to float coefficients."""

    # subclasses that have a canonical text form set this to their header word
    _header: str | None = None

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms=()):
        arity = int(arity)
        if arity < 0:
            raise ArityError(f"arity must be nonnegative, got {arity}")
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[tuple, float] = {}
        for key, c in items:
            key = _check_key(key, arity)
            c = acc.get(key, 0.0) + float(c)
            if c == 0.0:
                acc.pop(key, None)
            else:
                acc[key] = c
        self.arity = arity
        self.terms = dict(sorted(acc.items()))

    # -- basic queries -------------------------------------------------

    @property
    def dimension(self) -> int:
        """Largest index appearing in any key; 0 for the empty map."""
        return max((max(k) for k in self.terms if k), default=0)

    def coefficient(self, key) -> float:
        return self.terms.get(tuple(int(i) for i in key), 0.0)

    def items(self):
        """Yield (key, coefficient) pairs in lexicographic key order."""
        return self.terms.items()

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- construction of modified copies --------------------------------

    def insert_accumulate(self, key, c: float) -> "SparseMap":
        """Return a copy with c added onto key (exact zeros vanish)."""
        key = _check_key(key, self.arity)
        acc = dict(self.terms)
        new = acc.get(key, 0.0) + float(c)
        if new == 0.0:
            acc.pop(key, None)
        else:
            acc[key] = new
        return type(self)(self.arity, acc)

    def scale(self, s: float) -> "SparseMap":
        s = float(s)
        return type(self)(self.arity, {k: s * c for k, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, SparseMap):
            return NotImplemented
        if self.arity != other.arity:
            raise ArityError(
                f"cannot add arity {self.arity} and arity {other.arity} maps"
            )
        acc = dict(self.terms)
        for key, c in other.terms.items():
            new = acc.get(key, 0.0) + c
            if new == 0.0:
                acc.pop(key, None)
            else:
                acc[key] = new
        return type(self)(self.arity, acc)

    def __sub__(self, other):
        if not isinstance(other, SparseMap):
            return NotImplemented
        return self.__add__(other.scale(-1.0))

    def __neg__(self):
        return self.scale(-1.0)

    def __mul__(self, s):
        if isinstance(s, (int, float)):
            return self.scale(s)
        return NotImplemented

    __rmul__ = __mul__

    def zap(self, tol: float = DEFAULT_TOL) -> "SparseMap":
        """Drop every term with |coefficient| <= tol."""
        tol = float(tol)
        return type(self)(
            self.arity, {k: c for k, c in self.terms.items() if abs(c) > tol}
        )

    # -- comparison ------------------------------------------------------

    def equals(self, other: "SparseMap", tol: float = DEFAULT_TOL) -> bool:
        """Termwise equality within tol.

        An empty map is the zero map and compares equal to any other
        empty (or everywhere-below-tol) map regardless of recorded arity.
        """
        if not isinstance(other, SparseMap):
            raise TypeError(f"cannot compare SparseMap with {type(other).__name__}")
        tol = float(tol)
        if self.terms and other.terms and self.arity != other.arity:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(
            abs(self.terms.get(k, 0.0) - other.terms.get(k, 0.0)) <= tol
            for k in keys
        )

    def __eq__(self, other):
        if not isinstance(other, SparseMap):
            return NotImplemented
        return self.equals(other, 0.0)

    __hash__ = None

    # -- text form ---------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text: one `i1 ... ik : coeff` line per term, lex order.

        The empty map serializes as `zero k=<arity>`.  Subclasses with a
        `_header` prepend their `<header> k=<arity>` line.
        """
        lines = []
        if self._header is not None:
            lines.append(f"{self._header} k={self.arity}")
        if not self.terms:
            lines.append(f"zero k={self.arity}")
        else:
            for key, c in self.terms.items():
                idx = " ".join(str(i) for i in key)
                lines.append(f"{idx} : {format_coefficient(c)}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        body = ", ".join(
            f"{key}: {format_coefficient(c)}" for key, c in self.terms.items()
        )
        return f"{type(self).__name__}(k={self.arity}, {{{body}}})"

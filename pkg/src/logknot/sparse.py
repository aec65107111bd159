"""Column-major sparse matrices over arbitrary scalar objects.

Entries are anything with ``+``, ``*`` and truthiness (``CyclotomicNumber`` or
mpmath ``mpc``); exact zeros are dropped.
"""

from __future__ import annotations

import numpy as np

__all__ = ["SparseMatrix"]


class SparseMatrix:
    """Matrix stored as ``cols[j] = {i: value}``."""

    __slots__ = ("shape", "cols")

    def __init__(self, shape, cols=None):
        self.shape = (int(shape[0]), int(shape[1]))
        self.cols = {}
        if cols:
            for j, col in cols.items():
                kept = {i: v for i, v in col.items() if v}
                if kept:
                    self.cols[j] = kept

    @classmethod
    def from_entries(cls, shape, entries):
        """Build from ``(row, col, value)`` triples; duplicates are summed."""
        cols: dict[int, dict[int, object]] = {}
        for i, j, v in entries:
            col = cols.setdefault(j, {})
            col[i] = col[i] + v if i in col else v
        return cls(shape, cols)

    @classmethod
    def identity(cls, n, one):
        return cls((n, n), {j: {j: one} for j in range(n)})

    @classmethod
    def diagonal(cls, values):
        return cls((len(values), len(values)), {j: {j: v} for j, v in enumerate(values)})

    @classmethod
    def from_dense(cls, array):
        array = np.asarray(array, dtype=object)
        cols = {}
        for j in range(array.shape[1]):
            cols[j] = {i: array[i, j] for i in range(array.shape[0])}
        return cls(array.shape, cols)

    def col(self, j) -> dict:
        return self.cols.get(j, {})

    def __getitem__(self, ij):
        i, j = ij
        return self.cols.get(j, {}).get(i, 0)

    def entries(self):
        for j, col in self.cols.items():
            for i, v in col.items():
                yield i, j, v

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse vector given as ``{index: value}``."""
        out: dict[int, object] = {}
        for j, x in vec.items():
            for i, v in self.cols.get(j, {}).items():
                t = v * x
                out[i] = out[i] + t if i in out else t
        return {i: v for i, v in out.items() if v}

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatrix((self.shape[0], other.shape[1]), {j: self.apply(c) for j, c in other.cols.items()})

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, c in other.cols.items():
            dst = cols.setdefault(j, {})
            for i, v in c.items():
                dst[i] = dst[i] + v if i in dst else v
        return SparseMatrix(self.shape, cols)

    def __neg__(self):
        return SparseMatrix(self.shape, {j: {i: -v for i, v in c.items()} for j, c in self.cols.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> SparseMatrix:
        return SparseMatrix(self.shape, {j: {i: s * v for i, v in c.items()} for j, c in self.cols.items()})

    def map_rows(self, factors) -> SparseMatrix:
        """Left-multiply by ``diag(factors)``."""
        return SparseMatrix(self.shape, {j: {i: factors[i] * v for i, v in c.items()} for j, c in self.cols.items()})

    def kron(self, other: SparseMatrix) -> SparseMatrix:
        m, n = other.shape
        cols: dict[int, dict[int, object]] = {}
        for j1, c1 in self.cols.items():
            for j2, c2 in other.cols.items():
                cols[j1 * n + j2] = {i1 * m + i2: v1 * v2 for i1, v1 in c1.items() for i2, v2 in c2.items()}
        return SparseMatrix((self.shape[0] * m, self.shape[1] * n), cols)

    def transpose(self) -> SparseMatrix:
        return SparseMatrix.from_entries((self.shape[1], self.shape[0]), ((j, i, v) for i, j, v in self.entries()))

    def to_dense(self, zero=0) -> np.ndarray:
        out = np.empty(self.shape, dtype=object)
        out.fill(zero)
        for i, j, v in self.entries():
            out[i, j] = v
        return out

    def max_abs(self) -> float:
        return max((abs(complex(v)) for _, _, v in self.entries()), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).nnz == 0

    __hash__ = None

    def __repr__(self):
        return f"SparseMatrix(shape={self.shape}, nnz={self.nnz})"

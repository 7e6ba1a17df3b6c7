"""Sparse Boolean matrices with bit-packed rows.

Rows are stored as compressed bitmaps (:class:`pyroaring.BitMap`), so the
union/intersection/difference of two rows runs over machine words rather than
element by element.  Only nonzero rows are materialized, which keeps huge but
sparse product matrices proportional to their number of nonzeros.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from pyroaring import BitMap

# roaring bitmaps index with unsigned 32-bit integers
MAX_DIM = 2**32


class DimensionError(ValueError):
    """Operands have incompatible dimensions."""


class InputTooLargeError(ValueError):
    """A product dimension does not fit the index range of a row bitmap."""


def _check_dim(dim: int) -> int:
    if dim < 0:
        raise ValueError(f"dimension must be non-negative, got {dim}")
    if dim > MAX_DIM:
        raise InputTooLargeError(f"dimension {dim} exceeds {MAX_DIM}")
    return int(dim)


class BoolVector:
    """A set of indices below ``dim``."""

    __slots__ = ("dim", "bits")

    def __init__(self, dim: int, bits: Iterable[int] | BitMap = ()):
        self.dim = _check_dim(dim)
        self.bits = bits.copy() if isinstance(bits, BitMap) else BitMap(bits)
        if self.bits and self.bits.max() >= self.dim:
            raise IndexError(f"index {self.bits.max()} out of range for dim {dim}")

    def __contains__(self, i: int) -> bool:
        return i in self.bits

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoolVector):
            return NotImplemented
        return self.dim == other.dim and self.bits == other.bits

    def __repr__(self) -> str:
        return f"BoolVector({self.dim}, {list(self.bits)})"

    def _same(self, other: BoolVector) -> None:
        if self.dim != other.dim:
            raise DimensionError(f"vector dims differ: {self.dim} != {other.dim}")

    def __or__(self, other: BoolVector) -> BoolVector:
        self._same(other)
        return BoolVector(self.dim, self.bits | other.bits)

    def __and__(self, other: BoolVector) -> BoolVector:
        self._same(other)
        return BoolVector(self.dim, self.bits & other.bits)

    def __sub__(self, other: BoolVector) -> BoolVector:
        self._same(other)
        return BoolVector(self.dim, self.bits - other.bits)

    def add(self, i: int) -> None:
        if not 0 <= i < self.dim:
            raise IndexError(f"index {i} out of range for dim {self.dim}")
        self.bits.add(i)

    def indices(self) -> list[int]:
        return list(self.bits)


class BoolMatrix:
    """Square Boolean matrix; ``rows`` maps a row index to its column bitmap.

    Equality compares nonzero coordinate sets, independent of how the rows
    happen to be stored.
    """

    __slots__ = ("dim", "rows")

    def __init__(self, dim: int, rows: Mapping[int, BitMap] | None = None):
        self.dim = _check_dim(dim)
        self.rows: dict[int, BitMap] = {}
        if rows:
            for r, bits in rows.items():
                if bits:
                    self._check_index(r)
                    if bits.max() >= self.dim:
                        raise IndexError(f"column {bits.max()} out of range for dim {dim}")
                    self.rows[r] = bits.copy()

    @classmethod
    def from_coords(cls, dim: int, coords: Iterable[tuple[int, int]]) -> BoolMatrix:
        m = cls(dim)
        for i, j in coords:
            m.set(i, j)
        return m

    @classmethod
    def identity(cls, dim: int) -> BoolMatrix:
        return cls.from_coords(dim, ((i, i) for i in range(dim)))

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.dim:
            raise IndexError(f"index {i} out of range for dim {self.dim}")

    def __getitem__(self, ij: tuple[int, int]) -> bool:
        i, j = ij
        self._check_index(i)
        self._check_index(j)
        row = self.rows.get(i)
        return row is not None and j in row

    def set(self, i: int, j: int) -> bool:
        """Set bit (i, j); return True if it was previously clear."""
        self._check_index(i)
        self._check_index(j)
        row = self.rows.get(i)
        if row is None:
            self.rows[i] = BitMap([j])
            return True
        if j in row:
            return False
        row.add(j)
        return True

    def row(self, i: int) -> BitMap:
        """Column bitmap of row ``i``; the returned bitmap must not be mutated."""
        return self.rows.get(i) or BitMap()

    def row_vector(self, i: int) -> BoolVector:
        self._check_index(i)
        return BoolVector(self.dim, self.row(i))

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def __bool__(self) -> bool:
        return bool(self.rows)

    def coords(self) -> Iterator[tuple[int, int]]:
        """Nonzero coordinates in (row, column) order."""
        for i in sorted(self.rows):
            for j in self.rows[i]:
                yield i, j

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return self.coords()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    def __repr__(self) -> str:
        return f"BoolMatrix({self.dim}, nnz={self.nnz})"

    def copy(self) -> BoolMatrix:
        return BoolMatrix(self.dim, self.rows)

    def transpose(self) -> BoolMatrix:
        t = BoolMatrix(self.dim)
        for i, row in self.rows.items():
            for j in row:
                r = t.rows.get(j)
                if r is None:
                    t.rows[j] = BitMap([i])
                else:
                    r.add(i)
        return t

    def difference(self, other: BoolMatrix) -> BoolMatrix:
        """Bits set here but not in ``other``."""
        _same_dim(self, other)
        out = BoolMatrix(self.dim)
        for i, row in self.rows.items():
            o = other.rows.get(i)
            d = row - o if o is not None else row.copy()
            if d:
                out.rows[i] = d
        return out

    def __or__(self, other: BoolMatrix) -> BoolMatrix:
        out = self.copy()
        union_into(out, other)
        return out

    def to_dense(self):
        import numpy as np

        dense = np.zeros((self.dim, self.dim), dtype=bool)
        for i, row in self.rows.items():
            dense[i, row.to_array()] = True
        return dense


def _same_dim(a: BoolMatrix, b: BoolMatrix) -> None:
    if a.dim != b.dim:
        raise DimensionError(f"matrix dims differ: {a.dim} != {b.dim}")


class MatrixSet:
    """Label-indexed family of same-sized Boolean matrices.

    A label without an entry stands for the all-zero matrix.
    """

    def __init__(self, dim: int, by_label: Mapping[str, BoolMatrix] | None = None):
        self.dim = _check_dim(dim)
        self.by_label: dict[str, BoolMatrix] = {}
        for label, m in (by_label or {}).items():
            if m.dim != self.dim:
                raise DimensionError(
                    f"matrix for {label!r} has dim {m.dim}, expected {self.dim}"
                )
            self.by_label[label] = m

    def __getitem__(self, label: str) -> BoolMatrix:
        m = self.by_label.get(label)
        return m if m is not None else BoolMatrix(self.dim)

    def __contains__(self, label: str) -> bool:
        m = self.by_label.get(label)
        return m is not None and bool(m)

    def matrix(self, label: str) -> BoolMatrix:
        """The stored matrix for ``label``, created empty on first access."""
        m = self.by_label.get(label)
        if m is None:
            m = self.by_label[label] = BoolMatrix(self.dim)
        return m

    def set(self, label: str, i: int, j: int) -> bool:
        return self.matrix(label).set(i, j)

    def labels(self) -> list[str]:
        """Labels with at least one nonzero, sorted."""
        return sorted(l for l, m in self.by_label.items() if m)

    def items(self) -> Iterator[tuple[str, BoolMatrix]]:
        for label in self.labels():
            yield label, self.by_label[label]

    @property
    def nnz(self) -> int:
        return sum(m.nnz for m in self.by_label.values())

    def __bool__(self) -> bool:
        return any(self.by_label.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixSet):
            return NotImplemented
        if self.dim != other.dim or self.labels() != other.labels():
            return False
        return all(self.by_label[l] == other.by_label[l] for l in self.labels())

    def __repr__(self) -> str:
        inner = ", ".join(f"{l}: {m.nnz}" for l, m in self.items())
        return f"MatrixSet({self.dim}, {{{inner}}})"

    def copy(self) -> MatrixSet:
        return MatrixSet(self.dim, {l: m.copy() for l, m in self.by_label.items()})

    def union(self) -> BoolMatrix:
        """Element-wise OR over all labels."""
        out = BoolMatrix(self.dim)
        for m in self.by_label.values():
            union_into(out, m)
        return out


def kron(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """Boolean Kronecker product.

    ``result[u*b.dim + v, p*b.dim + q] = a[u, p] and b[v, q]``.
    """
    nb = b.dim
    dim = a.dim * nb
    if dim > MAX_DIM:
        raise InputTooLargeError(f"kron dimension {a.dim}*{nb} exceeds {MAX_DIM}")
    out = BoolMatrix(dim)
    if not a.rows or not b.rows:
        return out
    rows = out.rows
    for u, arow in a.rows.items():
        offsets = [p * nb for p in arow]
        for v, brow in b.rows.items():
            if len(offsets) == 1:
                rows[u * nb + v] = brow.shift(offsets[0])
            else:
                rows[u * nb + v] = BitMap.union(*(brow.shift(o) for o in offsets))
    return out


def kron_set(machine: MatrixSet, graph_delta: MatrixSet) -> BoolMatrix:
    """OR of ``kron(machine[l], graph_delta[l])`` over labels present in both."""
    dim = machine.dim * graph_delta.dim
    if dim > MAX_DIM:
        raise InputTooLargeError(
            f"kron dimension {machine.dim}*{graph_delta.dim} exceeds {MAX_DIM}"
        )
    out = BoolMatrix(dim)
    shared = set(machine.labels()) & set(graph_delta.labels())
    for label in sorted(shared):
        union_into(out, kron(machine.by_label[label], graph_delta.by_label[label]))
    return out


def vec_mat_mul(v: BoolVector, m: BoolMatrix) -> BoolVector:
    """One-step successors of the index set ``v`` under ``m``."""
    if v.dim != m.dim:
        raise DimensionError(f"vector dim {v.dim} != matrix dim {m.dim}")
    rows = [m.rows[i] for i in v.bits if i in m.rows]
    return BoolVector(m.dim, BitMap.union(*rows) if rows else BitMap())


def union_into(acc: BoolMatrix, other: BoolMatrix) -> bool:
    """``acc |= other`` in place; report whether any bit went from 0 to 1."""
    _same_dim(acc, other)
    changed = False
    for i, row in other.rows.items():
        mine = acc.rows.get(i)
        if mine is None:
            acc.rows[i] = row.copy()
            changed = True
        elif not row.issubset(mine):
            mine |= row
            changed = True
    return changed

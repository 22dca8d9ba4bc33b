"""Sparse square matrices with Cyclotomic entries.

Every matrix in this engine is a sum of a few monomial blocks, so a
dictionary of nonzero entries keeps products cheap.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from algebra.cyclotomic import ONE, ZERO, Cyclotomic
from errors import DomainError

Entries = dict[tuple[int, int], Cyclotomic]


@dataclass
class ExactMatrix:
    size: int
    entries: Entries = field(default_factory=dict)

    @classmethod
    def identity(cls, size: int) -> ExactMatrix:
        return cls(size, {(i, i): ONE for i in range(size)})

    @classmethod
    def unit(cls, size: int, i: int, j: int, value: Cyclotomic = ONE) -> ExactMatrix:
        return cls(size, {(i, j): value})

    @classmethod
    def from_rows(cls, rows) -> ExactMatrix:
        entries = {}
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                value = Cyclotomic._coerce(value)
                if value:
                    entries[(i, j)] = value
        return cls(len(rows), entries)

    def __getitem__(self, key: tuple[int, int]) -> Cyclotomic:
        return self.entries.get(key, ZERO)

    # ── Arithmetic ──

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.size != other.size:
            raise DomainError(f"size mismatch {self.size} vs {other.size}")
        by_row: dict[int, list[tuple[int, Cyclotomic]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: Entries = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                key = (i, j)
                out[key] = out[key] + a * b if key in out else a * b
        return ExactMatrix(self.size, {k: v for k, v in out.items() if v})

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        out = dict(self.entries)
        for key, v in other.entries.items():
            out[key] = out[key] + v if key in out else v
        return ExactMatrix(self.size, {k: v for k, v in out.items() if v})

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix(self.size, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def scale(self, c) -> ExactMatrix:
        c = Cyclotomic._coerce(c)
        if not c:
            return ExactMatrix(self.size)
        return ExactMatrix(self.size, {k: c * v for k, v in self.entries.items()})

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self.size, {(j, i): v for (i, j), v in self.entries.items()})

    def kron(self, other: ExactMatrix) -> ExactMatrix:
        n = other.size
        out: Entries = {}
        for (i, j), a in self.entries.items():
            for (k, l), b in other.entries.items():
                out[(i * n + k, j * n + l)] = a * b
        return ExactMatrix(self.size * n, out)

    def block(self, bi: int, bj: int, width: int) -> ExactMatrix:
        """The (bi, bj) block of a block matrix with square blocks of the given width."""
        out = {}
        for (i, j), v in self.entries.items():
            if i // width == bi and j // width == bj:
                out[(i % width, j % width)] = v
        return ExactMatrix(width, out)

    @classmethod
    def block_diagonal(cls, blocks: list[ExactMatrix]) -> ExactMatrix:
        out: Entries = {}
        offset = 0
        for b in blocks:
            for (i, j), v in b.entries.items():
                out[(offset + i, offset + j)] = v
            offset += b.size
        return cls(offset, out)

    @classmethod
    def from_blocks(cls, blocks: dict[tuple[int, int], ExactMatrix], count: int, width: int) -> ExactMatrix:
        out: Entries = {}
        for (bi, bj), b in blocks.items():
            for (i, j), v in b.entries.items():
                out[(bi * width + i, bj * width + j)] = v
        return cls(count * width, out)

    # ── Predicates ──

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.size == other.size and (self - other).is_zero()

    def is_monomial(self) -> bool:
        rows = [i for i, _ in self.entries]
        cols = [j for _, j in self.entries]
        return len(set(rows)) == len(rows) == self.size and len(set(cols)) == len(cols)

    def ratio_to(self, other: ExactMatrix) -> Cyclotomic | None:
        """The scalar c with self == c * other, or None."""
        if other.is_zero():
            return None
        key, v = next(iter(other.entries.items()))
        c = self[key] / v
        return c if self == other.scale(c) else None

    def trace(self) -> Cyclotomic:
        total = ZERO
        for (i, j), v in self.entries.items():
            if i == j:
                total = total + v
        return total

    # ── Inversion ──

    def inverse(self) -> ExactMatrix:
        if self.is_monomial():
            return ExactMatrix(self.size, {(j, i): v.inverse() for (i, j), v in self.entries.items()})
        return _gauss_jordan_inverse(self)

    def __repr__(self) -> str:
        rows = []
        for i in range(self.size):
            rows.append("[" + ", ".join(repr(self[i, j]) for j in range(self.size)) + "]")
        return "ExactMatrix(" + ", ".join(rows) + ")"


def _gauss_jordan_inverse(m: ExactMatrix) -> ExactMatrix:
    n = m.size
    rows = [[m[i, j] for j in range(n)] + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            raise DomainError("matrix is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [v * inv for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return ExactMatrix.from_rows([row[n:] for row in rows])


def rank(vectors: list[list[Cyclotomic]]) -> int:
    """Rank of a list of vectors over the cyclotomic field."""
    rows = [list(v) for v in vectors]
    rank_ = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        pivot = next((r for r in range(rank_, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank_], rows[pivot] = rows[pivot], rows[rank_]
        inv = rows[rank_][col].inverse()
        for r in range(len(rows)):
            if r != rank_ and rows[r][col]:
                factor = rows[r][col] * inv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank_])]
        rank_ += 1
    return rank_

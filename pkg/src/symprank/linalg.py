"""Exact rank over GF(2) (rows packed into Python ints) and over GF(q).

GF(2) rows are integers whose bit ``j`` is column ``j``.  The streaming
engine keeps only a pivot-indexed echelon basis, so memory scales with
``rank * ncols`` bits no matter how many rows are fed in.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, TextIO

import numpy as np

from .field import FieldCtx


class EchelonBasisGF2:
    """Pivot map ``column -> row``; each row's highest set bit is its pivot."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _check(self, row: int) -> None:
        if row < 0 or row >> self.ncols:
            raise ValueError(f"row has bits beyond column {self.ncols - 1}")

    def reduce(self, row: int) -> int:
        piv = self.pivots
        while row:
            p = piv.get(row.bit_length() - 1)
            if p is None:
                return row
            row ^= p
        return 0

    def add(self, row: int) -> bool:
        """Insert ``row``; return True if it enlarged the span."""
        self._check(row)
        piv = self.pivots
        while row:
            lead = row.bit_length() - 1
            p = piv.get(lead)
            if p is None:
                piv[lead] = row
                return True
            row ^= p
        return False

    def __contains__(self, row: int) -> bool:
        return self.reduce(row) == 0

    def rows(self) -> list[int]:
        return [self.pivots[c] for c in sorted(self.pivots)]


class FourRussiansBasisGF2(EchelonBasisGF2):
    """Echelon basis with 8-bit lookup tables over a frozen reduced part.

    The frozen rows are kept fully reduced (zero in every other frozen pivot
    column), so the bits of an incoming row at the frozen pivot columns pick
    one precomputed XOR combination per block of ``k`` pivots.  New pivots go
    to a small pending echelon and are folded into the frozen part in bulk.
    """

    def __init__(self, ncols: int, k: int = 8, min_pending: int = 64):
        self.ncols = ncols
        self.k = k
        self.min_pending = min_pending
        self.frozen: dict[int, int] = {}
        self.pending: dict[int, int] = {}
        self._cols = np.zeros(0, dtype=np.intp)
        self._tables: list[list[int]] = []
        # one spare bit: padded table slots read column ``ncols``, always zero
        self._nbytes = (ncols + 8) // 8

    @property
    def rank(self) -> int:
        return len(self.frozen) + len(self.pending)

    @property
    def pivots(self) -> dict[int, int]:
        return {**self.frozen, **self.pending}

    def _table_reduce(self, row: int) -> int:
        if not self._tables:
            return row
        raw = np.frombuffer(row.to_bytes(self._nbytes, "little"), dtype=np.uint8)
        bits = np.unpackbits(raw, bitorder="little")[self._cols]
        idx = np.packbits(bits, bitorder="little")
        for i, table in zip(idx.tolist(), self._tables):
            if i:
                row ^= table[i]
        return row

    def reduce(self, row: int) -> int:
        row = self._table_reduce(row)
        piv = self.pending
        while row:
            p = piv.get(row.bit_length() - 1)
            if p is None:
                return row
            row ^= p
        return 0

    def add(self, row: int) -> bool:
        self._check(row)
        row = self.reduce(row)
        if not row:
            return False
        self.pending[row.bit_length() - 1] = row
        if len(self.pending) >= max(self.min_pending, len(self.frozen) // 4):
            self.flush()
        return True

    def flush(self) -> None:
        """Fold pending rows into the frozen reduced basis and rebuild tables."""
        if not self.pending:
            return
        pend = self.pending
        pmask = 0
        for c in sorted(pend):
            # lower pending rows are already reduced, so each XOR clears one bit
            row = pend[c]
            x = row & pmask
            while x:
                b = x.bit_length() - 1
                row ^= pend[b]
                x ^= 1 << b
            pend[c] = row
            pmask |= 1 << c
        for c, row in self.frozen.items():
            x = row & pmask
            while x:
                b = x.bit_length() - 1
                row ^= pend[b]
                x ^= 1 << b
            self.frozen[c] = row
        self.frozen.update(pend)
        self.pending = {}
        self._rebuild()

    def _rebuild(self) -> None:
        cols = sorted(self.frozen)
        self._tables = []
        for start in range(0, len(cols), self.k):
            block = cols[start:start + self.k]
            table = [0] * (1 << self.k)
            for i in range(1, 1 << len(block)):
                low = (i & -i).bit_length() - 1
                table[i] = table[i & (i - 1)] ^ self.frozen[block[low]]
            self._tables.append(table)
        pad = (-len(cols)) % self.k
        self._cols = np.array(cols + [self.ncols] * pad, dtype=np.intp)

    def rows(self) -> list[int]:
        piv = self.pivots
        return [piv[c] for c in sorted(piv)]


def pmask_iter(mask: int) -> Iterator[int]:
    while mask:
        b = mask.bit_length() - 1
        yield b
        mask ^= 1 << b


def _new_basis(ncols: int, four_russians: bool) -> EchelonBasisGF2:
    return FourRussiansBasisGF2(ncols) if four_russians else EchelonBasisGF2(ncols)


def _prereduce(job: tuple[dict[int, int], list[int]]) -> list[int]:
    snapshot, batch = job
    out = []
    for row in batch:
        while row:
            p = snapshot.get(row.bit_length() - 1)
            if p is None:
                out.append(row)
                break
            row ^= p
    return out


def rank_gf2_stream(
    rows: Iterable[int],
    ncols: int,
    *,
    four_russians: bool = False,
    threads: int = 1,
    batch_size: int = 2048,
) -> int:
    """GF(2) rank of a stream of packed rows.

    With ``threads > 1`` disjoint row batches are pre-reduced in worker
    processes against a frozen snapshot of the basis and the survivors are
    merged serially, which leaves the span (hence the rank) unchanged.
    """
    basis = _new_basis(ncols, four_russians)
    if threads <= 1:
        for row in rows:
            basis.add(row)
        return basis.rank
    it = iter(rows)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        while True:
            chunk = list(itertools.islice(it, threads * batch_size))
            if not chunk:
                break
            for row in chunk:
                basis._check(row)
            snapshot = dict(basis.pivots)
            jobs = [(snapshot, chunk[i:i + batch_size]) for i in range(0, len(chunk), batch_size)]
            for survivors in pool.map(_prereduce, jobs):
                for row in survivors:
                    basis.add(row)
    return basis.rank


def rank_gf2(rows: Sequence[int], ncols: int, **kw) -> int:
    return rank_gf2_stream(rows, ncols, **kw)


@dataclass
class BitMatrix:
    nrows: int
    ncols: int
    rows: list[int]

    def __post_init__(self) -> None:
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError("set bit beyond ncols")

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row_sums(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def col_sums(self) -> list[int]:
        sums = [0] * self.ncols
        for r in self.rows:
            for j in pmask_iter(r):
                sums[j] += 1
        return sums

    def transpose(self) -> BitMatrix:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in pmask_iter(r):
                cols[j] |= 1 << i
        return BitMatrix(self.ncols, self.nrows, cols)

    def rank(self, **kw) -> int:
        return rank_gf2_stream(self.rows, self.ncols, **kw)


# ---------------------------------------------------------------- GF(q)

@dataclass
class QMatrix:
    ctx: FieldCtx
    nrows: int
    ncols: int
    entries: list[list[int]]

    def __post_init__(self) -> None:
        if len(self.entries) != self.nrows or any(len(r) != self.ncols for r in self.entries):
            raise ValueError("shape mismatch")
        q = self.ctx.q
        if any(not 0 <= x < q for r in self.entries for x in r):
            raise ValueError(f"entry outside GF({q})")


class EchelonBasisGFq:
    """Incremental echelon form over GF(q); rows normalized to a leading 1.

    Stored rows are reduced against all earlier rows, so reducing an incoming
    vector in insertion order never reintroduces a cleared pivot column.
    """

    def __init__(self, ctx: FieldCtx, ncols: int):
        self.ctx = ctx
        self.ncols = ncols
        self._mul = ctx.mul_table() if ctx.q <= 256 else None
        self.basis: list[tuple[int, list[int]]] = []

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _axpy(self, v: list[int], c: int, row: list[int]) -> None:
        if self._mul is not None:
            mc = self._mul[c]
            for k, x in enumerate(row):
                if x:
                    v[k] ^= mc[x]
        else:
            mul = self.ctx.mul
            for k, x in enumerate(row):
                if x:
                    v[k] ^= mul(c, x)

    def reduce(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        v = list(vec)
        for col, row in self.basis:
            c = v[col]
            if c:
                self._axpy(v, c, row)
        return v

    def add(self, vec: Sequence[int]) -> bool:
        v = self.reduce(vec)
        for col, x in enumerate(v):
            if x:
                inv = self.ctx.inv(x)
                if inv != 1:
                    v = [self.ctx.mul(inv, y) for y in v]
                self.basis.append((col, v))
                return True
        return False

    def __contains__(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))


def rank_gfq(M: QMatrix) -> int:
    basis = EchelonBasisGFq(M.ctx, M.ncols)
    for row in M.entries:
        basis.add(row)
    return basis.rank


def rref_gfq(ctx: FieldCtx, rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Reduced row-echelon form (pivot = leftmost nonzero, pivots increasing)."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    out: list[list[int]] = []
    for col in range(ncols):
        piv = next((i for i, r in enumerate(mat) if r[col]), None)
        if piv is None:
            continue
        prow = mat.pop(piv)
        inv = ctx.inv(prow[col])
        prow = [ctx.mul(inv, x) for x in prow]
        for r in itertools.chain(out, mat):
            c = r[col]
            if c:
                for k in range(col, ncols):
                    if prow[k]:
                        r[k] ^= ctx.mul(c, prow[k])
        out.append(prow)
        if not mat:
            break
    return tuple(tuple(r) for r in out)


# ---------------------------------------------------------------- SMS files

def write_sms(mat: BitMatrix, fh: TextIO) -> None:
    """``nrows ncols M`` header, 1-based ``i j 1`` triples, ``0 0 0`` trailer."""
    fh.write(f"{mat.nrows} {mat.ncols} M\n")
    for i, row in enumerate(mat.rows, start=1):
        j = 0
        while row:
            if row & 1:
                fh.write(f"{i} {j + 1} 1\n")
            row >>= 1
            j += 1
    fh.write("0 0 0\n")


def read_sms(fh: TextIO) -> BitMatrix:
    """Parse an SMS file, reducing entries mod 2."""
    header = fh.readline().split()
    if len(header) < 2:
        raise ValueError("missing SMS header")
    nrows, ncols = int(header[0]), int(header[1])
    rows = [0] * nrows
    for lineno, line in enumerate(fh, start=2):
        parts = line.split()
        if not parts:
            continue
        i, j, v = (int(x) for x in parts[:3])
        if i == 0 and j == 0 and v == 0:
            break
        if not (1 <= i <= nrows and 1 <= j <= ncols):
            raise ValueError(f"line {lineno}: index ({i}, {j}) outside {nrows}x{ncols}")
        if v % 2:
            rows[i - 1] ^= 1 << (j - 1)
    else:
        raise ValueError("SMS file lacks the 0 0 0 terminator")
    return BitMatrix(nrows, ncols, rows)

"""The symplectic space GF(q)^(2m), its points, and the sets I_r.

Coordinates are ordered ``x_1, ..., x_m, y_m, ..., y_1``, so coordinate
``k`` pairs with coordinate ``2m - 1 - k`` under the alternating form and
``b(u, v) = sum_k u[k] * v[2m-1-k]`` (characteristic 2, no signs).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .field import FieldCtx, make_field
from .linalg import BitMatrix, rref_gfq

ProjPoint = tuple[int, ...]
Vector = Sequence[int]


@dataclass(frozen=True, order=True)
class Subspace:
    """Row space of ``basis``, which is in reduced row-echelon form."""

    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(k for k, x in enumerate(row) if x) for row in self.basis)


@dataclass(frozen=True)
class SympSpace:
    m: int
    ctx: FieldCtx

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be positive")

    @classmethod
    def over(cls, m: int, t: int) -> SympSpace:
        return cls(m, make_field(t))

    @property
    def dim(self) -> int:
        return 2 * self.m

    @property
    def q(self) -> int:
        return self.ctx.q

    def x(self, i: int) -> int:
        """Coordinate index of x_i (1-based i)."""
        return i - 1

    def y(self, i: int) -> int:
        """Coordinate index of y_i (1-based i)."""
        return 2 * self.m - i

    def unit(self, k: int) -> tuple[int, ...]:
        return tuple(int(j == k) for j in range(self.dim))

    def form(self, u: Vector, v: Vector) -> int:
        n = self.dim
        if len(u) != n or len(v) != n:
            raise ValueError(f"vectors must have length {n}")
        mul = self.ctx.mul
        acc = 0
        for k in range(n):
            if u[k]:
                acc ^= mul(u[k], v[n - 1 - k])
        return acc

    # ------------------------------------------------------------ points

    @cached_property
    def points(self) -> list[ProjPoint]:
        """Normalized representatives (first nonzero = 1), sorted."""
        n, q = self.dim, self.q
        pts = []
        for lead in range(n):
            for tail in itertools.product(range(q), repeat=n - 1 - lead):
                pts.append((0,) * lead + (1,) + tail)
        pts.sort()
        return pts

    @cached_property
    def point_index(self) -> dict[ProjPoint, int]:
        return {p: i for i, p in enumerate(self.points)}

    def normalize(self, v: Vector) -> ProjPoint:
        for x in v:
            if x:
                inv = self.ctx.inv(x)
                return tuple(self.ctx.mul(inv, y) for y in v)
        raise ValueError("zero vector has no projective point")

    def scale(self, c: int, v: Vector) -> tuple[int, ...]:
        return tuple(self.ctx.mul(c, x) for x in v)

    def span_points(self, W: Subspace) -> Iterator[ProjPoint]:
        """Normalized vectors of W: combos whose first nonzero coefficient is 1."""
        rows = W.basis
        k = len(rows)
        if k == 0:
            return
        n, q = self.dim, self.q
        # multiples[i][c] = c * rows[i]
        multiples = [[self.scale(c, r) for c in range(q)] for r in rows]
        for i0 in range(k):
            for coeffs in itertools.product(range(q), repeat=k - 1 - i0):
                v = list(rows[i0])
                for j, c in enumerate(coeffs, start=i0 + 1):
                    if c:
                        mj = multiples[j][c]
                        for a in range(n):
                            v[a] ^= mj[a]
                yield tuple(v)

    # ------------------------------------------------------------ subspaces

    def subspace(self, vectors: Sequence[Vector]) -> Subspace:
        return Subspace(rref_gfq(self.ctx, vectors))

    def is_isotropic(self, W: Subspace) -> bool:
        return all(self.form(u, v) == 0 for u, v in itertools.combinations(W.basis, 2))

    def _nullspace(self, rows: Sequence[Vector]) -> list[tuple[int, ...]]:
        n = self.dim
        R = rref_gfq(self.ctx, rows)
        piv = [next(k for k, x in enumerate(r) if x) for r in R]
        free = [k for k in range(n) if k not in piv]
        out = []
        for f in free:
            v = [0] * n
            v[f] = 1
            for r, p in zip(R, piv):
                v[p] = r[f]  # -r[f] in characteristic 2
            out.append(tuple(v))
        return out

    def perp(self, W: Subspace) -> Subspace:
        n = self.dim
        functionals = [tuple(w[n - 1 - k] for k in range(n)) for w in W.basis]
        if not functionals:
            return self.subspace([self.unit(k) for k in range(n)])
        return self.subspace(self._nullspace(functionals))

    def _extensions(self, W: Subspace) -> Iterator[Subspace]:
        """Isotropic (k+1)-spaces whose RREF has W's RREF as its first k rows.

        The added row has pivot ``c`` beyond W's last pivot, column ``c`` of W
        must vanish, and the row is ``e_c + u`` with ``u`` supported after
        ``c`` and orthogonal to W.  Every isotropic (k+1)-space arises from
        exactly one parent this way, so no deduplication is required.
        """
        n, ctx = self.dim, self.ctx
        rows = W.basis
        last = W.pivots[-1] if rows else -1
        for c in range(last + 1, n):
            if any(r[c] for r in rows):
                continue
            free = list(range(c + 1, n))
            # b(e_c + u, w) = 0  <=>  sum_j u_j w[n-1-j] = w[n-1-c]
            eqs = [[w[n - 1 - j] for j in free] + [w[n - 1 - c]] for w in rows]
            sol = _solve_affine(ctx, eqs, len(free))
            if sol is None:
                continue
            part, null = sol
            mults = [[tuple(ctx.mul(a, x) for x in z) for a in range(ctx.q)] for z in null]
            for coeffs in itertools.product(range(ctx.q), repeat=len(null)):
                u = list(part)
                for z, a in zip(mults, coeffs):
                    if a:
                        za = z[a]
                        for i in range(len(u)):
                            u[i] ^= za[i]
                v = (0,) * c + (1,) + tuple(u)
                yield Subspace(rows + (v,))

    def isotropic_subspaces(self, k: int) -> list[Subspace]:
        """All totally isotropic k-subspaces, sorted by RREF basis."""
        if not 0 <= k <= self.m:
            raise ValueError(f"isotropic dimension must be in [0, {self.m}]")
        level = [Subspace(())]
        for _ in range(k):
            level = [X for W in level for X in self._extensions(W)]
        level.sort()
        return level

    def enumerate_Ir(self, r: int) -> list[Subspace]:
        """I_r: isotropic r-spaces (r <= m) or perps of isotropic (2m-r)-spaces."""
        if not 1 <= r <= 2 * self.m - 1:
            raise ValueError(f"r must be in [1, {2 * self.m - 1}], got {r}")
        if r <= self.m:
            return self.isotropic_subspaces(r)
        out = [self.perp(W) for W in self.isotropic_subspaces(2 * self.m - r)]
        out.sort()
        return out

    # ------------------------------------------------------------ incidence

    def incidence_row(self, X: Subspace) -> int:
        idx = self.point_index
        row = 0
        for p in self.span_points(X):
            row |= 1 << idx[p]
        return row

    def incidence_rows(self, r: int) -> Iterator[int]:
        """Rows of B_{r,1} in enumeration order, one packed int at a time."""
        for X in self.enumerate_Ir(r):
            yield self.incidence_row(X)

    def incidence_matrix(self, r: int) -> BitMatrix:
        rows = list(self.incidence_rows(r))
        return BitMatrix(len(rows), len(self.points), rows)


def _pivot_of(row: Sequence[int]) -> int:
    return next(k for k, x in enumerate(row) if x)


def _solve_affine(ctx: FieldCtx, aug: list[list[int]], nvars: int):
    """Solve ``A u = b`` given augmented rows; return (particular, null basis)."""
    if not aug:
        return (0,) * nvars, [tuple(int(i == j) for j in range(nvars)) for i in range(nvars)]
    R = rref_gfq(ctx, aug)
    pivots = []
    for r in R:
        p = _pivot_of(r)
        if p == nvars:
            return None
        pivots.append(p)
    part = [0] * nvars
    for r, p in zip(R, pivots):
        part[p] = r[nvars]
    null = []
    for f in range(nvars):
        if f in pivots:
            continue
        z = [0] * nvars
        z[f] = 1
        for r, p in zip(R, pivots):
            z[p] = r[f]
        null.append(tuple(z))
    return tuple(part), null


def polar_space_count(m: int, r: int, q: int) -> int:
    """|I_r| from the Gaussian binomial formula; an independent count oracle."""
    k = min(r, 2 * m - r)
    num = den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    out = num // den
    for i in range(m - k + 1, m + 1):
        out *= q ** i + 1
    return out

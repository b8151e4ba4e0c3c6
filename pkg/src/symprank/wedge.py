"""Level filtration of the exterior powers S^lam of V* in characteristic 2.

Square-free monomials in X_1..X_m, Y_1..Y_m are bitmasks using the same
coordinate order as points (X_i is bit i-1, Y_i is bit 2m-i), so the
truncation X_i^2 = Y_i^2 = 0 is a mask-overlap test.  Index sets are
1-based throughout, matching W_i = X_i Y_i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .field import FieldCtx
from .htypes import binom
from .linalg import EchelonBasisGFq

WedgeElem = dict[int, int]  # monomial mask -> nonzero coefficient


def xbit(m: int, i: int) -> int:
    return 1 << (i - 1)


def ybit(m: int, i: int) -> int:
    return 1 << (2 * m - i)


def wbit(m: int, i: int) -> int:
    return xbit(m, i) | ybit(m, i)


@dataclass(frozen=True)
class ClassSig:
    rho: int
    sigma: int
    tau: int
    upsilon: int

    @property
    def degree(self) -> int:
        return 2 * self.rho + 2 * self.sigma + self.tau

    @property
    def level(self) -> int:
        return self.sigma

    @property
    def m(self) -> int:
        return 2 * self.rho + self.sigma + self.tau + self.upsilon


@dataclass(frozen=True)
class IndexedPoly:
    """prod_i (W_{r_i} + W_{r'_i}) * prod_{S} W_i * prod_{T} Z_i."""

    m: int
    pairs: tuple[tuple[int, int], ...] = ()
    S: tuple[int, ...] = ()
    T: tuple[int, ...] = ()
    zchoice: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        used = [i for p in self.pairs for i in p] + list(self.S) + list(self.T)
        if len(set(used)) != len(used) or any(not 1 <= i <= self.m for i in used):
            raise ValueError("index sets must be disjoint subsets of 1..m")
        if len(self.zchoice) != len(self.T) or any(z not in "XY" for z in self.zchoice):
            raise ValueError("one X/Y marker per index of T")

    @property
    def used(self) -> frozenset[int]:
        return frozenset(i for p in self.pairs for i in p) | frozenset(self.S) | frozenset(self.T)

    @property
    def U(self) -> tuple[int, ...]:
        used = self.used
        return tuple(i for i in range(1, self.m + 1) if i not in used)

    @property
    def class_sig(self) -> ClassSig:
        rho, sigma, tau = len(self.pairs), len(self.S), len(self.T)
        return ClassSig(rho, sigma, tau, self.m - 2 * rho - sigma - tau)

    @property
    def degree(self) -> int:
        return self.class_sig.degree

    @property
    def level(self) -> int:
        return len(self.S)

    def masks(self) -> frozenset[int]:
        """Square-free monomials of the expansion, each with coefficient 1."""
        return _expand(self)

    def wedge(self) -> WedgeElem:
        return {mask: 1 for mask in self.masks()}


@lru_cache(maxsize=None)
def _expand(f: IndexedPoly) -> frozenset[int]:
    m = f.m
    base = 0
    for i in f.S:
        base |= wbit(m, i)
    for i, z in zip(f.T, f.zchoice):
        base |= xbit(m, i) if z == "X" else ybit(m, i)
    out = {base}
    for r, rp in f.pairs:
        out = {x | wbit(m, r) for x in out} | {x | wbit(m, rp) for x in out}
    return frozenset(out)


def monomial_class(mask: int, m: int) -> ClassSig:
    """Class of a square-free monomial (no paired factors)."""
    sigma = tau = 0
    for i in range(1, m + 1):
        hx, hy = bool(mask & xbit(m, i)), bool(mask & ybit(m, i))
        sigma += hx and hy
        tau += hx != hy
    return ClassSig(0, sigma, tau, m - sigma - tau)


# ------------------------------------------------------------ dimensions

def dim_S(m: int, lam: int, ell: int) -> int:
    """dim S^lam_ell = C(2m, lam) - C(2m, lam - 2 ell - 2), ell clamped to lam // 2."""
    if not 0 <= lam <= 2 * m:
        raise ValueError(f"degree must be in [0, {2 * m}], got {lam}")
    ell = min(ell, lam // 2)
    if ell < 0 or ell < lam - m:
        return 0
    return binom(2 * m, lam) - binom(2 * m, lam - 2 * ell - 2)


# ------------------------------------------------------------ bases

def _pairings(avail: tuple[int, ...], count: int, last: int) -> Iterator[tuple[tuple[int, int], ...]]:
    # r is forced to be the smallest free index; r' ranges over later ones
    if count == 0:
        yield ()
        return
    if len(avail) < 2:
        return
    r = avail[0]
    for k in range(1, len(avail)):
        rp = avail[k]
        if rp <= last:
            continue
        rest = avail[1:k] + avail[k + 1:]
        for tail in _pairings(rest, count - 1, rp):
            yield ((r, rp),) + tail


@lru_cache(maxsize=None)
def weyl_basis(m: int, lam: int) -> tuple[IndexedPoly, ...]:
    """Level-0 basis of S^lam_0 (requires lam <= m)."""
    if not 0 <= lam <= m:
        raise ValueError(f"level-0 basis needs 0 <= lam <= m, got lam={lam}, m={m}")
    out = []
    indices = range(1, m + 1)
    for rho in range(lam // 2 + 1):
        tau = lam - 2 * rho
        if 2 * rho + tau > m:
            continue
        for T in itertools.combinations(indices, tau):
            avail = tuple(i for i in indices if i not in T)
            for pairs in _pairings(avail, rho, 0):
                for zc in itertools.product("XY", repeat=tau):
                    out.append(IndexedPoly(m, pairs, (), T, zc))
    return tuple(out)


def alpha_lift(f: IndexedPoly, ell: int) -> IndexedPoly:
    """Multiply by W_s over the ``ell`` smallest indices unused by ``f``."""
    unused = f.U
    if len(unused) < ell:
        raise ValueError("not enough unused indices")
    return replace(f, S=tuple(sorted(f.S + unused[:ell])))


@lru_cache(maxsize=None)
def filtration_basis(m: int, lam: int, ell: int) -> tuple[IndexedPoly, ...]:
    """Basis B^lam_ell of S^lam_ell: alpha-lifts of level-0 bases of lower degree."""
    lo = max(0, lam - m)
    if not 0 <= lam <= 2 * m or not lo <= ell <= lam // 2:
        raise ValueError(f"level {ell} outside [{lo}, {lam // 2}] for lam={lam}, m={m}")
    return tuple(
        alpha_lift(f, k) for k in range(lo, ell + 1) for f in weyl_basis(m, lam - 2 * k)
    )


def delta_dual(f: IndexedPoly) -> IndexedPoly:
    """The duality S^lam -> S^(2m-lam); on index sets it swaps S and U."""
    return replace(f, S=f.U)


def delta_mask(mask: int, m: int) -> int:
    """X_I Y_J -> X_{M minus J} Y_{M minus I} on a single monomial."""
    out = 0
    for i in range(1, m + 1):
        if not mask & ybit(m, i):
            out |= xbit(m, i)
        if not mask & xbit(m, i):
            out |= ybit(m, i)
    return out


# ------------------------------------------------------------ Sp(V) generators

@dataclass(frozen=True)
class Generator:
    """One of: ``diag`` (alpha), ``perm`` (perm), ``swap``, ``g1`` (alpha), ``g2`` (alpha)."""

    kind: str
    alpha: int = 1
    perm: tuple[int, ...] = ()

    def substitution(self, m: int, ctx: FieldCtx) -> list[dict[int, int]]:
        """Image of each coordinate function as a linear form {bit index: coeff}."""
        X = lambda i: i - 1  # noqa: E731
        Y = lambda i: 2 * m - i  # noqa: E731
        sub = [{k: 1} for k in range(2 * m)]
        a = self.alpha
        if self.kind in ("diag", "g1", "g2") and not 0 < a < ctx.q:
            raise ValueError("alpha must be a nonzero field element")
        if self.kind == "diag":
            sub[X(1)] = {X(1): a}
            sub[Y(1)] = {Y(1): ctx.inv(a)}
        elif self.kind == "perm":
            if sorted(self.perm) != list(range(1, m + 1)):
                raise ValueError("perm must be a permutation of 1..m")
            for k, pk in enumerate(self.perm, start=1):
                sub[X(k)] = {X(pk): 1}
                sub[Y(k)] = {Y(pk): 1}
        elif self.kind == "swap":
            sub[X(1)] = {Y(1): 1}
            sub[Y(1)] = {X(1): 1}
        elif self.kind == "g1":
            sub[X(1)] = {X(1): 1, Y(1): a}
        elif self.kind == "g2":
            if m < 2:
                raise ValueError("g2 needs m >= 2")
            sub[X(1)] = {X(1): 1, X(2): a}
            sub[Y(2)] = {Y(1): a, Y(2): 1}
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        return sub


def all_generators(m: int, ctx: FieldCtx) -> list[Generator]:
    nonzero = range(1, ctx.q)
    gens = [Generator("diag", a) for a in nonzero]
    gens += [Generator("perm", perm=p) for p in itertools.permutations(range(1, m + 1))]
    gens.append(Generator("swap"))
    gens += [Generator("g1", a) for a in nonzero]
    if m >= 2:
        gens += [Generator("g2", a) for a in nonzero]
    return gens


def sp_generator_action(g: Generator, e: WedgeElem, ctx: FieldCtx, m: int) -> WedgeElem:
    """Substitute and expand, dropping every monomial with a squared variable."""
    sub = g.substitution(m, ctx)
    mul = ctx.mul
    out: WedgeElem = {}
    for mask, coeff in e.items():
        terms = {0: coeff}
        k, rest = 0, mask
        while rest:
            if rest & 1:
                new: dict[int, int] = {}
                for mono, c in terms.items():
                    for k2, c2 in sub[k].items():
                        bit = 1 << k2
                        if mono & bit:
                            continue
                        nm = mono | bit
                        new[nm] = new.get(nm, 0) ^ mul(c, c2)
                terms = {x: c for x, c in new.items() if c}
            rest >>= 1
            k += 1
        for mono, c in terms.items():
            v = out.get(mono, 0) ^ c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    return out


def degree_masks(m: int, lam: int) -> list[int]:
    """All square-free monomials of degree lam, ascending."""
    return sorted(
        sum(1 << k for k in ks) for ks in itertools.combinations(range(2 * m), lam)
    )


def coordinate_vector(e: WedgeElem, index: dict[int, int]) -> list[int]:
    v = [0] * len(index)
    for mask, c in e.items():
        v[index[mask]] = c
    return v


def first_escape(
    elements: Sequence[WedgeElem], m: int, lam: int, ctx: FieldCtx, gens: Iterable[Generator]
) -> tuple[Generator, int] | None:
    """First (generator, element position) whose image leaves the span of ``elements``."""
    index = {mask: i for i, mask in enumerate(degree_masks(m, lam))}
    span = EchelonBasisGFq(ctx, len(index))
    for e in elements:
        span.add(coordinate_vector(e, index))
    for g in gens:
        for pos, e in enumerate(elements):
            image = sp_generator_action(g, e, ctx, m)
            if any(mask not in index for mask in image):
                return g, pos
            if coordinate_vector(image, index) not in span:
                return g, pos
    return None


def check_stability(
    m: int, lam: int, ell: int, ctx: FieldCtx, gens: Iterable[Generator] | None = None
) -> tuple[Generator, IndexedPoly] | None:
    """First (generator, basis element) whose image leaves S^lam_ell, else None."""
    basis = filtration_basis(m, lam, ell)
    if gens is None:
        gens = all_generators(m, ctx)
    hit = first_escape([f.wedge() for f in basis], m, lam, ctx, gens)
    return None if hit is None else (hit[0], basis[hit[1]])


def span_rank(polys: Sequence[IndexedPoly], m: int, lam: int, ctx: FieldCtx) -> int:
    index = {mask: i for i, mask in enumerate(degree_masks(m, lam))}
    span = EchelonBasisGFq(ctx, len(index))
    for f in polys:
        span.add(coordinate_vector(f.wedge(), index))
    return span.rank

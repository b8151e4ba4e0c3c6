"""Symplectic basis functions and a numerical check that the r-admissible
ones form a basis of the incidence submodule C_r of k[P].
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

from .field import FieldCtx
from .formulas import admissible_level
from .geometry import ProjPoint, SympSpace
from .htypes import enumerate_htypes_leq, htype_to_type, twisted_degree
from .linalg import EchelonBasisGF2, EchelonBasisGFq
from .wedge import IndexedPoly, filtration_basis

POINT_LIMIT = 50_000


@dataclass(frozen=True)
class SBF:
    """f = f_0 * f_1^2 * ... * f_{t-1}^(2^(t-1)) with square-free digits."""

    htype: tuple[int, ...]
    digits: tuple[IndexedPoly, ...]

    @property
    def type(self) -> tuple[int, ...]:
        return tuple(d.degree for d in self.digits)


def digit_bases(m: int, r: int, s: tuple[int, ...]) -> list[tuple[IndexedPoly, ...]]:
    """Per-digit bases for H-type ``s``; an empty basis means no admissible SBFs."""
    lams = htype_to_type(s, m, len(s))
    out = []
    for lam, sj in zip(lams, s):
        ell = min(admissible_level(m, r, sj), lam // 2)
        if ell < max(0, lam - m):
            out.append(())
        else:
            out.append(filtration_basis(m, lam, ell))
    return out


def _admissible_htypes(m: int, r: int, t: int) -> list[tuple[int, ...]]:
    if not 1 <= r <= 2 * m - 1:
        raise ValueError(f"r must be in [1, {2 * m - 1}], got {r}")
    return enumerate_htypes_leq((2 * m - r,) * t, m, t)


def iter_admissible_sbfs(m: int, r: int, t: int) -> Iterator[SBF]:
    """Non-constant r-admissible SBFs, grouped by H-type in lexicographic order."""
    for s in _admissible_htypes(m, r, t):
        for digits in itertools.product(*digit_bases(m, r, s)):
            yield SBF(s, digits)


def enumerate_admissible_sbfs(m: int, r: int, t: int) -> list[SBF]:
    return list(iter_admissible_sbfs(m, r, t))


def count_admissible_sbfs(m: int, r: int, t: int) -> int:
    """Size of the admissible set, from the constructed digit bases (not from formulas)."""
    return sum(
        math.prod(len(b) for b in digit_bases(m, r, s)) for s in _admissible_htypes(m, r, t)
    )


def eval_digit(f: IndexedPoly, p: ProjPoint, ctx: FieldCtx) -> int:
    mul = ctx.mul
    acc = 0
    for mask in f.masks():
        v, k = 1, 0
        while mask and v:
            if mask & 1:
                v = mul(v, p[k])
            mask >>= 1
            k += 1
        acc ^= v
    return acc


def evaluate_sbf(f: SBF, p: ProjPoint, ctx: FieldCtx) -> int:
    out = 1
    for j, d in enumerate(f.digits):
        out = ctx.mul(out, ctx.pow(eval_digit(d, p, ctx), 1 << j))
        if not out:
            break
    return out


def degree_is_scalar_invariant(f: SBF, q: int) -> bool:
    """Total degree sum_j 2^j lam_j is a multiple of q - 1."""
    return twisted_degree(f.type, 0) % (q - 1) == 0


def evaluation_row(f: SBF, space: SympSpace) -> list[int]:
    return [evaluate_sbf(f, p, space.ctx) for p in space.points]


@dataclass
class Check:
    name: str
    passed: bool
    witness: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "witness": self.witness}


@dataclass
class BasisReport:
    m: int
    r: int
    t: int
    sbf_count: int = 0
    rank_sbf: int = 0
    rank_incidence: int = 0
    rank_stacked: int = 0
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_basis_theorem(m: int, r: int, t: int, *, force: bool = False) -> BasisReport:
    """Independence, dimension and containment checks for the admissible SBFs.

    Builds the evaluation matrix of {1} and every admissible SBF on P over
    GF(2^t), then streams the rows of B_{r,1} into the same echelon form.
    """
    space = SympSpace.over(m, t)
    npts = (space.q ** (2 * m) - 1) // (space.q - 1)
    if npts > POINT_LIMIT and not force:
        raise ValueError(f"{npts} points exceeds the {POINT_LIMIT} guard; pass force=True")
    ctx = space.ctx
    report = BasisReport(m, r, t)
    span = EchelonBasisGFq(ctx, npts)
    span.add([1] * npts)
    dependent = None
    degree_bad = None
    for f in iter_admissible_sbfs(m, r, t):
        report.sbf_count += 1
        if degree_bad is None and not degree_is_scalar_invariant(f, ctx.q):
            degree_bad = f
        if not span.add(evaluation_row(f, space)) and dependent is None:
            dependent = f
    report.rank_sbf = span.rank
    report.checks.append(Check(
        "scalar-invariant degree", degree_bad is None, "" if degree_bad is None else repr(degree_bad)
    ))
    report.checks.append(Check(
        "independence", dependent is None and span.rank == report.sbf_count + 1,
        "" if dependent is None else f"dependent SBF {dependent!r}",
    ))

    gf2 = EchelonBasisGF2(npts)
    outside = None
    for i, row in enumerate(space.incidence_rows(r)):
        gf2.add(row)
        vec = [(row >> j) & 1 for j in range(npts)]
        if span.add(vec) and outside is None:
            outside = i
    report.rank_incidence = gf2.rank
    report.rank_stacked = span.rank
    report.checks.append(Check(
        "dimension", report.rank_sbf == report.rank_incidence,
        "" if report.rank_sbf == report.rank_incidence
        else f"SBF rank {report.rank_sbf} vs incidence rank {report.rank_incidence}",
    ))
    report.checks.append(Check(
        "containment", outside is None,
        "" if outside is None else f"incidence row {outside} not in the SBF span",
    ))
    return report


def sbf_span(space: SympSpace, r: int) -> EchelonBasisGFq:
    """Echelon form of the constant plus all r-admissible SBF evaluations."""
    npts = len(space.points)
    span = EchelonBasisGFq(space.ctx, npts)
    span.add([1] * npts)
    for f in iter_admissible_sbfs(space.m, r, space.ctx.t):
        span.add(evaluation_row(f, space))
    return span

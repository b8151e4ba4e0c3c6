"""Closed-form 2-ranks of B_{r,1} and the odd-characteristic comparison model."""

from __future__ import annotations

from functools import lru_cache

from .htypes import BigMat, binom, enumerate_htypes_leq, htype_to_type, mat_pow_trace
from .wedge import dim_S


def _check_job(m: int, r: int, t: int = 1) -> None:
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    if not 1 <= r <= 2 * m - 1:
        raise ValueError(f"need 1 <= r <= {2 * m - 1}, got {r}")
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")


def level_offset(m: int, r: int) -> int:
    """(m - r) if r <= m else 0."""
    return m - r if r <= m else 0


def admissible_level(m: int, r: int, s_j: int) -> int:
    """Digit level bound l_j = (m-r)[r<=m] + (2m - r - s_j)."""
    return level_offset(m, r) + 2 * m - r - s_j


@lru_cache(maxsize=None)
def build_A(m: int, r: int) -> BigMat:
    """(2m-r)x(2m-r) matrix a_ij = C(2m, 2j-i) - C(2m, 2j+i+2r-4m-2-2(m-r)[r<=m])."""
    _check_job(m, r)
    n = 2 * m - r
    off = 2 * level_offset(m, r)
    return tuple(
        tuple(
            binom(2 * m, 2 * j - i) - binom(2 * m, 2 * j + i + 2 * r - 4 * m - 2 - off)
            for j in range(1, n + 1)
        )
        for i in range(1, n + 1)
    )


def rank_closed_form(m: int, r: int, t: int) -> int:
    """rank_2 B_{r,1}(t) = 1 + Trace(A^t)."""
    _check_job(m, r, t)
    return 1 + mat_pow_trace(build_A(m, r), t)


def htype_term(m: int, r: int, s: tuple[int, ...]) -> int:
    """prod_j dim S^{lam_j}_{l_j} for one H-type."""
    t = len(s)
    lams = htype_to_type(s, m, t)
    out = 1
    for lam, sj in zip(lams, s):
        out *= dim_S(m, lam, admissible_level(m, r, sj))
        if not out:
            break
    return out


def rank_via_htypes(m: int, r: int, t: int) -> int:
    """1 + sum over H-types s <= (2m-r, ..., 2m-r) of the digit dimension products."""
    _check_job(m, r, t)
    bound = (2 * m - r,) * t
    return 1 + sum(htype_term(m, r, s) for s in enumerate_htypes_leq(bound, m, t))


# ------------------------------------------------------------ odd-characteristic model

def d_lambda(p: int, m: int, lam: int) -> int:
    """sum_k (-1)^k C(2m, k) C(2m-1+lam-kp, 2m-1), k = 0..floor(lam/p)."""
    if lam < 0:
        return 0
    return sum(
        (-1) ** k * binom(2 * m, k) * binom(2 * m - 1 + lam - k * p, 2 * m - 1)
        for k in range(lam // p + 1)
    )


@lru_cache(maxsize=None)
def build_A_prime(p: int, m: int) -> BigMat:
    """m x m matrix of d_{pj-i}, with (d + p^m)/2 in the (m, m) corner."""
    rows = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, m + 1):
            d = d_lambda(p, m, p * j - i)
            if i == j == m:
                if (d + p ** m) % 2:
                    raise ArithmeticError(f"(d + p^m) odd for p={p}, m={m}")
                d = (d + p ** m) // 2
            row.append(d)
        rows.append(tuple(row))
    return tuple(rows)


def rank_odd_model(p: int, m: int, t: int) -> int:
    """1 + Trace(A'^t), the rank the odd-characteristic formula predicts."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return 1 + mat_pow_trace(build_A_prime(p, m), t)

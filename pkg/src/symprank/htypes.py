"""Types, H-types, twisted degrees, and exact integer matrix helpers.

A type is a t-tuple ``(lam_0, ..., lam_{t-1})`` of digit degrees; its
H-type ``(s_0, ..., s_{t-1})`` satisfies ``lam_j = 2 s_{j+1} - s_j`` with
indices mod t.  The constant function has the all-zero H-type, which is
kept out of every enumeration here.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

BigMat = tuple[tuple[int, ...], ...]


def binom(n: int, k: int) -> int:
    """C(n, k), extended by zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


# ------------------------------------------------------------ H-types

def is_htype(s: Sequence[int], m: int) -> bool:
    """Membership in H (the zero tuple is not in H)."""
    t = len(s)
    return all(
        1 <= s[j] <= 2 * m - 1 and 0 <= 2 * s[(j + 1) % t] - s[j] <= 2 * m
        for j in range(t)
    )


def htype_to_type(s: Sequence[int], m: int, t: int) -> tuple[int, ...]:
    if len(s) != t:
        raise ValueError(f"H-type must have length {t}")
    if any(s) and not is_htype(s, m):
        raise ValueError(f"{tuple(s)} is not an H-type for m={m}")
    return tuple(2 * s[(j + 1) % t] - s[j] for j in range(t))


def twisted_degree(lams: Sequence[int], e: int) -> int:
    """deg_e = sum_j 2^[(j - e) mod t] * lam_j."""
    t = len(lams)
    return sum(lam << ((j - e) % t) for j, lam in enumerate(lams))


def type_to_htype(lams: Sequence[int], m: int, t: int) -> tuple[int, ...] | None:
    """Invert ``htype_to_type`` via (2^t - 1) s_e = deg_e; None if not an H-type."""
    if len(lams) != t or any(not 0 <= lam <= 2 * m for lam in lams):
        return None
    den = (1 << t) - 1
    s = []
    for e in range(t):
        d = twisted_degree(lams, e)
        if d % den:
            return None
        s.append(d // den)
    if not any(s):
        return tuple(s)
    return tuple(s) if is_htype(s, m) else None


def enumerate_htypes_leq(bound: Sequence[int], m: int, t: int) -> list[tuple[int, ...]]:
    """All s in H with s <= bound componentwise, in lexicographic order."""
    if len(bound) != t:
        raise ValueError(f"bound must have length {t}")
    ranges = [range(1, min(b, 2 * m - 1) + 1) for b in bound]
    return [s for s in itertools.product(*ranges) if is_htype(s, m)]


def htype_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_type(exponents: Sequence[int], t: int) -> tuple[int, ...]:
    """Type of ``prod x_i^{b_i}``: lam_j counts the i with bit j of b_i set."""
    return tuple(sum((b >> j) & 1 for b in exponents) for j in range(t))


# ------------------------------------------------------------ integer matrices

def identity(n: int) -> BigMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(A: BigMat, B: BigMat) -> BigMat:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def mat_pow(A: BigMat, t: int) -> BigMat:
    if t < 0:
        raise ValueError("negative power")
    out = identity(len(A))
    while t:
        if t & 1:
            out = mat_mul(out, A)
        A = mat_mul(A, A)
        t >>= 1
    return out


def trace(A: BigMat) -> int:
    return sum(A[i][i] for i in range(len(A)))


def mat_pow_trace(A: BigMat, t: int) -> int:
    if t < 1:
        raise ValueError("t must be >= 1")
    return trace(mat_pow(A, t))


def charpoly(A: BigMat) -> tuple[int, ...]:
    """Coefficients of det(xI - A), leading first (Faddeev-LeVerrier).

    Every division here is exact for integer matrices.
    """
    n = len(A)
    coeffs = [1]
    M = identity(n)
    for k in range(1, n + 1):
        AM = mat_mul(A, M)
        c = -trace(AM)
        assert c % k == 0
        c //= k
        coeffs.append(c)
        M = tuple(
            tuple(AM[i][j] + (c if i == j else 0) for j in range(n)) for i in range(n)
        )
    return tuple(coeffs)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def poly_eval(p: Sequence[int], x: int) -> int:
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc

import pytest

from symprank.formulas import (
    admissible_level,
    build_A,
    build_A_prime,
    d_lambda,
    rank_closed_form,
    rank_odd_model,
    rank_via_htypes,
)
from symprank.htypes import binom, charpoly, mat_pow_trace, poly_mul
from symprank.wedge import dim_S


def test_printed_matrices():
    assert build_A(2, 2) == ((4, 4), (1, 5))
    assert build_A(3, 3) == ((6, 20, 6), (1, 15, 14), (0, 6, 14))
    assert build_A_prime(2, 3) == ((6, 20, 6), (1, 15, 15), (0, 6, 14))
    assert build_A_prime(2, 2)[1][1] == 5 == build_A(2, 2)[1][1]


def test_charpoly_of_A33():
    # (x - 8)(x^2 - 27x + 64): 27^2 - 473 = 4 * 64
    assert (27 ** 2 - 473) % 4 == 0
    expected = poly_mul((1, -8), (1, -27, (27 ** 2 - 473) // 4))
    assert charpoly(build_A(3, 3)) == expected == (1, -35, 280, -512)


def test_printed_ranks():
    assert [rank_closed_form(3, 3, t) for t in (1, 2, 3)] == [36, 666, 15012]
    assert rank_closed_form(2, 2, 1) == 10


def test_m2_recurrence():
    A = build_A(2, 2)
    assert charpoly(A) == (1, -9, 16)
    tr = {t: rank_closed_form(2, 2, t) - 1 for t in range(1, 11)}
    tr[0] = 2
    for t in range(2, 11):
        assert tr[t] == 9 * tr[t - 1] - 16 * tr[t - 2]


@pytest.mark.parametrize("m", range(2, 6))
def test_entries_are_filtration_dimensions(m):
    for r in range(1, 2 * m):
        A = build_A(m, r)
        n = 2 * m - r
        assert len(A) == n
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                lam = 2 * j - i
                if 0 <= lam <= 2 * m:
                    assert A[i - 1][j - 1] == dim_S(m, lam, admissible_level(m, r, i))
                else:
                    assert A[i - 1][j - 1] == 0


@pytest.mark.parametrize("m", range(2, 6))
def test_htype_sum_equals_trace(m):
    for r in range(1, 2 * m):
        for t in range(1, 5):
            assert rank_via_htypes(m, r, t) == rank_closed_form(m, r, t)


def test_htype_sum_small_example():
    # H-types (1) and (2) contribute 4 and 5
    assert rank_via_htypes(2, 2, 1) == 1 + 4 + 5


@pytest.mark.parametrize("m", range(2, 6))
def test_r1_gives_point_count(m):
    for t in range(1, 4):
        q = 1 << t
        assert rank_closed_form(m, 1, t) == (q ** (2 * m) - 1) // (q - 1)


@pytest.mark.parametrize("m", range(2, 5))
def test_strictly_decreasing_in_r(m):
    for t in range(1, 5):
        ranks = [rank_closed_form(m, r, t) for r in range(1, 2 * m)]
        assert all(a > b for a, b in zip(ranks, ranks[1:]))


def test_argument_validation():
    for args in [(1, 1, 1), (2, 0, 1), (2, 4, 1), (2, 2, 0)]:
        with pytest.raises(ValueError):
            rank_closed_form(*args)


def test_d_lambda_examples():
    for m in range(1, 6):
        assert [d_lambda(2, m, lam) for lam in range(2 * m + 1)] == [
            binom(2 * m, lam) for lam in range(2 * m + 1)
        ]
    assert d_lambda(3, 2, 0) == 1
    assert d_lambda(3, 2, 1) == 4
    assert d_lambda(5, 3, -1) == 0


def test_d_lambda_generating_function():
    """d_lambda is the coefficient of x^lam in ((1 - x^p) / (1 - x))^(2m)."""
    for p in (3, 5):
        for m in (2, 3):
            n = 2 * m * (p - 1)
            poly = [1]
            for _ in range(2 * m):
                poly = list(poly_mul(poly, [1] * p))
            assert [d_lambda(p, m, lam) for lam in range(n + 3)] == poly + [0, 0]


def test_A_prime_odd_examples():
    assert build_A_prime(3, 2) == ((10, 16), (4, (d_lambda(3, 2, 4) + 9) // 2))
    assert rank_odd_model(3, 2, 1) == 1 + 10 + 14


def test_m2_even_and_odd_models_agree():
    for t in range(1, 7):
        assert rank_closed_form(2, 2, t) == rank_odd_model(2, 2, t)


def test_m3_models_diverge():
    assert rank_closed_form(3, 3, 1) == rank_odd_model(2, 3, 1) == 36
    for t in range(2, 7):
        assert rank_closed_form(3, 3, t) < rank_odd_model(2, 3, t)


def test_A_and_A_prime_differ_at_one_entry():
    A, Ap = build_A(3, 3), build_A_prime(2, 3)
    diff = [(i + 1, j + 1) for i in range(3) for j in range(3) if A[i][j] != Ap[i][j]]
    assert diff == [(2, 3)]
    assert (A[1][2], Ap[1][2]) == (14, 15)


@pytest.mark.parametrize("m", range(2, 7))
def test_corner_inequality(m):
    A, Ap = build_A(m, m), build_A_prime(2, m)
    assert A[m - 1][m - 1] <= Ap[m - 1][m - 1]
    assert mat_pow_trace(A, 1) <= mat_pow_trace(Ap, 1)
    # observed for m <= 6: the odd model dominates entrywise
    assert all(a <= b for ra, rb in zip(A, Ap) for a, b in zip(ra, rb))

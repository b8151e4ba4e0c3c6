"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import time

from symprank.field import make_field
from symprank.formulas import (
    build_A,
    build_A_prime,
    rank_closed_form,
    rank_odd_model,
    rank_via_htypes,
)
from symprank.geometry import SympSpace
from symprank.htypes import binom, charpoly, poly_mul
from symprank.linalg import rank_gf2_stream
from symprank.sbf import count_admissible_sbfs, verify_basis_theorem
from symprank.wedge import (
    all_generators,
    check_stability,
    dim_S,
    filtration_basis,
    span_rank,
    weyl_basis,
)


def best_of(fn, repeats=5, clear=()):
    best, value = float("inf"), None
    for _ in range(repeats):
        for c in clear:
            c.cache_clear()
        start = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - start)
    return value, best


def test_criterion_1_golden_ranks(record_criterion):
    ok, parts = True, []
    for t, expected in [(1, 36), (2, 666), (3, 15012)]:
        got, secs = best_of(lambda: rank_closed_form(3, 3, t), clear=[build_A])
        ok &= got == expected and secs < 1e-3
        parts.append(f"t={t}:{got} ({secs * 1e3:.3f} ms)")
    record_criterion(1, "golden ranks", ok, ", ".join(parts))
    assert ok


def test_criterion_2_golden_matrices(record_criterion):
    def compute():
        return build_A(2, 2), build_A(3, 3), build_A_prime(2, 3), charpoly(build_A(3, 3))

    (A22, A33, Ap, cp), secs = best_of(compute, clear=[build_A, build_A_prime])
    quad = (1, -27, (27 ** 2 - 473) // 4)
    ok = (
        A22 == ((4, 4), (1, 5))
        and A33 == ((6, 20, 6), (1, 15, 14), (0, 6, 14))
        and Ap == ((6, 20, 6), (1, 15, 15), (0, 6, 14))
        and (27 ** 2 - 473) % 4 == 0
        and cp == poly_mul((1, -8), quad)
        and secs < 1e-3
    )
    record_criterion(2, "golden matrices", ok, f"charpoly {cp} ({secs * 1e3:.3f} ms)")
    assert ok


def test_criterion_3_bruteforce_equals_formula(record_criterion):
    jobs = [(2, 1, r) for r in range(1, 4)] + [(2, 2, r) for r in range(1, 4)]
    jobs += [(3, 1, r) for r in range(1, 6)] + [(3, 2, 3)]
    start = time.perf_counter()
    bad = []
    for m, t, r in jobs:
        space = SympSpace.over(m, t)
        rank = rank_gf2_stream(space.incidence_rows(r), len(space.points))
        if rank != rank_closed_form(m, r, t):
            bad.append((m, t, r, rank))
    secs = time.perf_counter() - start
    ok = not bad and secs < 300
    record_criterion(3, "bruteforce == formula", ok, f"{len(jobs)} jobs, {secs:.1f} s, mismatches {bad}")
    assert ok


def test_criterion_4_htype_sum(record_criterion):
    start = time.perf_counter()
    count, bad = 0, []
    for m in range(2, 6):
        for r in range(1, 2 * m):
            for t in range(1, 5):
                count += 1
                if rank_via_htypes(m, r, t) != rank_closed_form(m, r, t):
                    bad.append((m, r, t))
    secs = time.perf_counter() - start
    ok = not bad and secs < 10
    record_criterion(4, "H-type sum == trace formula", ok, f"{count} triples, {secs:.2f} s, mismatches {bad}")
    assert ok


def test_criterion_5_sbf_basis(record_criterion):
    start = time.perf_counter()
    bad, count = [], 0
    for m, t in [(2, 1), (2, 2), (3, 1)]:
        for r in range(1, 2 * m):
            count += 1
            rep = verify_basis_theorem(m, r, t)
            formula = rank_closed_form(m, r, t)
            good = (
                count_admissible_sbfs(m, r, t) + 1 == formula
                and rep.sbf_count + 1 == formula
                and rep.rank_sbf == rep.sbf_count + 1
                and rep.rank_stacked == rep.rank_sbf
                and rep.ok
            )
            if not good:
                bad.append((m, 1 << t, r))
    secs = time.perf_counter() - start
    ok = not bad and secs < 120
    record_criterion(5, "SBF basis", ok, f"{count} (m,q,r) cases, {secs:.1f} s, failures {bad}")
    assert ok


def test_criterion_6_filtration_dimensions(record_criterion):
    start = time.perf_counter()
    gf2 = make_field(1)
    bad = []
    for m in range(1, 7):
        for lam in range(m + 1):
            if len(weyl_basis(m, lam)) != binom(2 * m, lam) - binom(2 * m, lam - 2):
                bad.append(("weyl", m, lam))
    for m in range(1, 4):
        for lam in range(2 * m + 1):
            for ell in range(max(0, lam - m), lam // 2 + 1):
                basis = filtration_basis(m, lam, ell)
                if span_rank(basis, m, lam, gf2) != dim_S(m, lam, ell) or len(basis) != dim_S(m, lam, ell):
                    bad.append(("rank", m, lam, ell))
    for m in range(1, 6):
        for lam in range(m, 2 * m + 1):
            for ell in range(lam - m, lam // 2 + 1):
                if dim_S(m, lam, ell) != dim_S(m, 2 * m - lam, ell - (lam - m)):
                    bad.append(("dual", m, lam, ell))
    secs = time.perf_counter() - start
    ok = not bad and secs < 30
    record_criterion(6, "filtration dimensions", ok, f"{secs:.2f} s, failures {bad}")
    assert ok


def test_criterion_7_stability(record_criterion):
    start = time.perf_counter()
    bad, checked = [], 0
    for m in range(1, 4):
        for t in (1, 2):
            F = make_field(t)
            gens = all_generators(m, F)
            for lam in range(2 * m + 1):
                for ell in range(max(0, lam - m), lam // 2 + 1):
                    checked += 1
                    hit = check_stability(m, lam, ell, F, gens)
                    if hit is not None:
                        bad.append((m, F.q, lam, ell, hit[0]))
    secs = time.perf_counter() - start
    ok = not bad and secs < 120
    record_criterion(7, "Sp-stability", ok, f"{checked} filtration pieces, {secs:.2f} s, escapes {bad}")
    assert ok


def test_criterion_8_comparisons(record_criterion):
    start = time.perf_counter()
    agree = all(rank_closed_form(2, 2, t) == rank_odd_model(2, 2, t) for t in range(1, 7))
    equal_t1 = rank_closed_form(3, 3, 1) == rank_odd_model(2, 3, 1)
    strict = all(rank_closed_form(3, 3, t) < rank_odd_model(2, 3, t) for t in range(2, 7))
    A, Ap = build_A(3, 3), build_A_prime(2, 3)
    diff = [(i + 1, j + 1) for i in range(3) for j in range(3) if A[i][j] != Ap[i][j]]
    secs = time.perf_counter() - start
    ok = agree and equal_t1 and strict and diff == [(2, 3)] and secs < 1
    record_criterion(
        8, "even/odd comparisons", ok,
        f"m=2 agree {agree}, m=3 t=1 equal {equal_t1}, strict {strict}, diff {diff}, {secs * 1e3:.1f} ms",
    )
    assert ok

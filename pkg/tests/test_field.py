import itertools

import pytest

from symprank.field import make_field


def schoolbook_mul(a, b, modulus):
    # independent oracle: multiply coefficient lists, then long-divide
    pa = [(a >> i) & 1 for i in range(8)]
    pb = [(b >> i) & 1 for i in range(8)]
    prod = [0] * 16
    for i, x in enumerate(pa):
        for j, y in enumerate(pb):
            prod[i + j] ^= x & y
    deg = modulus.bit_length() - 1
    mod = [(modulus >> i) & 1 for i in range(deg + 1)]
    for k in range(15, deg - 1, -1):
        if prod[k]:
            for i in range(deg + 1):
                prod[k - deg + i] ^= mod[i]
    return sum(bit << i for i, bit in enumerate(prod[:deg]))


def reducible_polys(t):
    out = set()
    for d in range(1, t // 2 + 1):
        for a in range(1 << d, 1 << (d + 1)):
            for b in range(1 << (t - d), 1 << (t - d + 1)):
                acc = 0
                for i in range(t - d + 1):
                    if (b >> i) & 1:
                        acc ^= a << i
                out.add(acc)
    return out


def test_t1_prime_field():
    F = make_field(1)
    assert (F.q, F.modulus) == (2, 0b11)


def test_t2_modulus_and_product():
    F = make_field(2)
    assert F.q == 4 and F.modulus == 0b111
    assert F.mul(0b10, 0b10) == 0b11  # x*x = x+1


@pytest.mark.parametrize("t", range(2, 9))
def test_modulus_is_smallest_irreducible(t):
    F = make_field(t)
    reducible = reducible_polys(t)
    first = min(p for p in range(1 << t, 1 << (t + 1)) if p not in reducible)
    assert F.modulus == first


def test_gf8_multiplicative_order():
    F = make_field(3)
    assert all(F.pow(e, 7) == 1 for e in range(1, 8))


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_axioms_exhaustive(t):
    F = make_field(t)
    q = F.q
    for a, b in itertools.product(range(q), repeat=2):
        assert F.mul(a, b) == F.mul(b, a) == schoolbook_mul(a, b, F.modulus)
        assert F.add(a, b) == a ^ b
    for a, b, c in itertools.product(range(q), repeat=3):
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
    for a in range(q):
        assert F.add(a, a) == 0
        assert F.mul(1, a) == a
        assert F.pow(a, q) == a
        if a:
            assert F.mul(F.inv(a), a) == 1
            assert F.pow(a, q - 1) == 1


def test_untabled_field_agrees_with_power_rules():
    F = make_field(10)
    assert F._exp is None
    for a in (1, 2, 3, 517, 1023):
        assert F.mul(F.inv(a), a) == 1
        assert F.pow(a, F.q) == a


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        make_field(3).inv(0)


@pytest.mark.parametrize("t", [0, 17, -1])
def test_degree_out_of_range(t):
    with pytest.raises(ValueError):
        make_field(t)

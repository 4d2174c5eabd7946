import random
from fractions import Fraction

import pytest
import sympy
from sympy.abc import x as sx

from symtrace.errors import (
    BadCharacteristic,
    ContextMismatch,
    EvenInput,
    NoRootOfUnity,
    NotPrime,
    Unsupported,
)
from symtrace.fields import (
    ctx_from_json,
    cyclo_create,
    cyclotomic_polynomial,
    elem_from_json,
    gauss_sum_prime,
    gf_create,
    has_exact_order,
    is_square,
    legendre,
    level,
    primitive_root_of_unity,
    signed_n,
    square_root_of_signed_n,
)


# --- contexts


def test_gf_create_valid():
    ctx = gf_create(13, 3)
    assert ctx.p == 13 and ctx.n == 3


def test_gf_create_seven_three_is_valid():
    # 7 = 1 mod 3, so a primitive cube root exists
    ctx = gf_create(7, 3)
    assert has_exact_order(primitive_root_of_unity(ctx), 3)


@pytest.mark.parametrize(
    "p, n, exc",
    [(5, 3, NoRootOfUnity), (3, 3, BadCharacteristic), (2, 1, BadCharacteristic), (9, 1, NotPrime), (15, 1, NotPrime)],
)
def test_gf_create_errors(p, n, exc):
    with pytest.raises(exc):
        gf_create(p, n)


@pytest.mark.parametrize("n, coeffs", [(1, (-1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1))])
def test_cyclotomic_small(n, coeffs):
    assert cyclotomic_polynomial(n) == coeffs


@pytest.mark.parametrize("n", range(1, 41))
def test_cyclotomic_matches_sympy(n):
    expected = sympy.Poly(sympy.cyclotomic_poly(n, sx), sx).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in expected]
    assert cyclo_create(n).degree == sympy.totient(n)


def test_cyclo_create_rejects_zero():
    with pytest.raises(ValueError):
        cyclo_create(0)


# --- arithmetic


def test_gf_mul():
    ctx = gf_create(13, 3)
    assert ctx(4) * ctx(4) == 3


def test_cyclo_zeta4_squared():
    z = cyclo_create(4).gen
    assert z * z == -1


def test_cyclo_inverse_of_one_plus_zeta3():
    ctx = cyclo_create(3)
    z = ctx.gen
    assert (1 + z) ** -1 == -z
    assert (1 + z) * (-z) == 1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        gf_create(7).one / 0
    with pytest.raises(ZeroDivisionError):
        cyclo_create(5).zero.inverse()


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        gf_create(7).one + gf_create(13).one
    with pytest.raises(ContextMismatch):
        cyclo_create(3).one * cyclo_create(5).one


def test_negative_powers():
    ctx = gf_create(11)
    assert ctx(3) ** -2 * 9 == 1
    c = cyclo_create(7)
    u = c([1, 2, 0, Fraction(1, 3), 0, -1])
    assert u ** -3 * u**3 == 1


def test_json_roundtrip():
    for ctx in (gf_create(13, 3), cyclo_create(6)):
        assert ctx_from_json(ctx.to_json()) == ctx
        u = ctx([2, Fraction(-1, 3)]) if ctx.kind == "cyclo" else ctx(5)
        assert elem_from_json(ctx, u.to_json()) == u
    assert cyclo_create(3).gen.to_json() == ["0/1", "1/1"]


# --- roots of unity


def test_root_gf13():
    # smallest primitive root of 13 is 2, and 2^4 = 3
    assert primitive_root_of_unity(gf_create(13, 3)) == 3


def test_root_gf5_order4():
    w = primitive_root_of_unity(gf_create(5, 4))
    assert w == 2
    assert [int(w**k) for k in range(1, 5)] == [2, 4, 3, 1]


def test_root_cyclo_is_generator():
    ctx = cyclo_create(3)
    w = primitive_root_of_unity(ctx)
    assert w == ctx.gen and w**3 == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8, 12])
def test_root_exact_order(n):
    for ctx in (gf_create(_prime_1_mod(n), n), cyclo_create(n)):
        w = primitive_root_of_unity(ctx)
        assert w**n == 1
        assert all(w**k != 1 for k in range(1, n))
        if n % 2 == 0:
            assert w ** (n // 2) == -1


def _prime_1_mod(n):
    p = n + 1
    while not (sympy.isprime(p) and (p - 1) % n == 0 and p > 2):
        p += 1
    return p


# --- squares and level


@pytest.mark.parametrize("p, u, sq", [(7, 2, True), (7, 3, False), (13, -1, True), (7, 0, True)])
def test_is_square(p, u, sq):
    assert is_square(gf_create(p)(u)) is sq


def test_is_square_unsupported_over_cyclo():
    with pytest.raises(Unsupported):
        is_square(cyclo_create(3).one)


@pytest.mark.parametrize("i, p, s", [(2, 7, 1), (3, 7, -1), (7, 7, 0), (14, 7, 0), (-1, 13, 1)])
def test_legendre(i, p, s):
    assert legendre(i, p) == s


@pytest.mark.parametrize("p", list(sympy.primerange(3, 200)))
def test_square_classes_partition(p):
    ctx = gf_create(p)
    squares = {(u * u) % p for u in range(1, p)}
    ns = next(u for u in range(2, p) if u not in squares)
    for u in range(1, p):
        assert is_square(ctx(u)) == (u in squares)
        assert is_square(ctx(u)) != is_square(ctx(u * ns))
        assert legendre(u, p) == sympy.legendre_symbol(u, p)
    assert len(squares) == (p - 1) // 2


@pytest.mark.parametrize("p", list(sympy.primerange(3, 200)))
def test_level_gf(p):
    lv = level(gf_create(p))
    brute = 1 if any((u * u + 1) % p == 0 for u in range(p)) else 2
    assert lv.value == brute
    assert (lv.value == 1) == (p % 4 == 1)
    if lv.witness is not None:
        assert sum(w * w for w in lv.witness) % p == p - 1


def test_level_examples():
    assert level(gf_create(13)).value == 1
    lv = level(gf_create(7))
    assert lv.value == 2
    assert sum(w * w for w in lv.witness) % 7 == 6


@pytest.mark.parametrize("n", [3, 11, 19, 5, 13, 21])
def test_level_cyclo_rule(n):
    # n = 3 or 5 mod 8 has a prime divisor that is 3 or 5 mod 8
    lv = level(cyclo_create(n))
    assert lv.value == 2 and lv.source == "rule-derived"


def test_level_cyclo_other_rules():
    assert level(cyclo_create(4)).value == 1
    assert level(cyclo_create(12)).value == 1
    assert level(cyclo_create(2)).value == float("inf")
    lv = level(cyclo_create(7))
    assert lv.value is None and lv.upper == 4


# --- Gauss sums


def test_gauss_sum_three_cyclo():
    ctx = cyclo_create(3)
    z = ctx.gen
    tau = gauss_sum_prime(3, ctx)
    assert tau == z - z * z
    assert tau * tau == -3


def test_gauss_sum_five_cyclo():
    tau = gauss_sum_prime(5, cyclo_create(5))
    assert tau * tau == 5


def test_gauss_sum_three_gf13():
    ctx = gf_create(13, 3)
    tau = gauss_sum_prime(3, ctx, ctx(3))
    assert tau == 7
    assert tau * tau == -3


def test_gauss_sum_needs_root():
    with pytest.raises(NoRootOfUnity):
        gauss_sum_prime(3, gf_create(13, 3), gf_create(13, 3)(1))


@pytest.mark.parametrize("q", list(sympy.primerange(3, 24)))
def test_gauss_sum_squared(q):
    assert gauss_sum_prime(q, cyclo_create(q)) ** 2 == signed_n(q)
    p = _prime_1_mod(q)
    assert gauss_sum_prime(q, gf_create(p, q)) ** 2 == signed_n(q)


def test_square_root_of_signed_n_examples():
    assert square_root_of_signed_n(3, cyclo_create(3)) ** 2 == -3
    ctx = cyclo_create(9)
    t = square_root_of_signed_n(9, ctx)
    tau = gauss_sum_prime(3, ctx, ctx.gen**3)
    assert t == tau * tau and t**2 == 9
    assert square_root_of_signed_n(15, cyclo_create(15)) ** 2 == -15


@pytest.mark.parametrize("n", range(1, 22, 2))
def test_square_root_of_signed_n(n):
    assert square_root_of_signed_n(n, cyclo_create(n)) ** 2 == signed_n(n)


def test_square_root_even_input():
    with pytest.raises(EvenInput):
        square_root_of_signed_n(4, cyclo_create(4))


# --- randomized cyclotomic arithmetic


@pytest.mark.parametrize("n", [3, 4, 5, 7, 8, 9, 12])
def test_cyclo_field_axioms(n):
    ctx = cyclo_create(n)
    rng = random.Random(n)
    assert ctx.gen**n == 1
    for _ in range(40):
        u, v, w = (ctx.random_element(rng) for _ in range(3))
        assert (u * v) * w == u * (v * w)
        assert u * (v + w) == u * v + u * w
        if u:
            assert u * u.inverse() == 1

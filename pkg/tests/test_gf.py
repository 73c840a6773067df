import random

import pytest

from macbeath import gf
from macbeath.gf import (
    FieldCtx,
    chi,
    degree_pattern,
    find_irreducible,
    is_irreducible,
    reduce_and_factor,
    sqrt_in_field,
)
from macbeath.intpoly import IntPoly, doubled, s_polynomial
from macbeath.numkit import is_prime, primes_upto


F1_37 = s_polynomial(3, 7)
F2_37 = doubled(F1_37)


def test_factor_f2_mod_13_paper_example():
    fl = reduce_and_factor(F2_37, 13)
    assert fl.squarefree
    # (x-2)(x+2)(x^2-6)(x^2-7), canonically ordered
    assert [list(f) for f, m in fl.factors] == [[2, 1], [11, 1], [6, 0, 1], [7, 0, 1]]
    assert all(m == 1 for _, m in fl.factors)


def test_factor_bad_reduction_mod_7():
    fl = reduce_and_factor(F1_37, 7)
    assert not fl.squarefree
    assert fl.factors == (((1, 1), 3),)


def test_factor_f1_mod_13():
    fl = reduce_and_factor(F1_37, 13)
    assert fl.squarefree
    # roots 4, 6, 7 -> factors s-4, s-6, s-7
    assert [list(f) for f, m in fl.factors] == [[6, 1], [7, 1], [9, 1]]


def test_degree_patterns():
    assert degree_pattern(F2_37, 13) == (1, 1, 2, 2)
    assert degree_pattern(F2_37, 181) == (1, 1, 1, 1, 1, 1)
    assert degree_pattern(F1_37, 2) == (3,)
    assert degree_pattern(F1_37, 7) == (1, 1, 1)  # triple root counted thrice


def test_degree_pattern_agrees_with_full_factorization():
    rng = random.Random(7)
    for _ in range(60):
        p = rng.choice([2, 3, 5, 13, 101])
        deg = rng.randrange(1, 9)
        coeffs = [rng.randrange(-30, 30) for _ in range(deg)] + [1]
        f = IntPoly(coeffs)
        pat = degree_pattern(f, p)
        assert sum(pat) == f.degree
        assert pat == reduce_and_factor(f, p).pattern()


def test_factorization_reconstructs_and_is_deterministic():
    rng = random.Random(11)
    for _ in range(40):
        p = rng.choice([2, 3, 5, 17, 97, 9871])
        deg = rng.randrange(1, 10)
        coeffs = [rng.randrange(-50, 50) for _ in range(deg)] + [rng.randrange(1, 50)]
        f = IntPoly(coeffs)
        if f.coeffs[-1] % p == 0:
            continue
        first = reduce_and_factor(f, p)
        again = reduce_and_factor(f, p)
        salted = reduce_and_factor(f, p, salt=123)
        assert first == again == salted
        for g, _ in first.factors:
            assert is_irreducible(list(g), p)


def test_reduce_rejects_vanishing_lead():
    with pytest.raises(ValueError):
        reduce_and_factor(IntPoly([1, 0, 7]), 7)
    with pytest.raises(ValueError):
        reduce_and_factor(IntPoly([7, 14]), 7)


def test_field_ops_examples():
    # x^2-2 splits mod 7 (2 = 3^2), so use p = 5 where it is irreducible
    ctx = FieldCtx(5, [-2, 0, 1])  # F_25 as F_5[x]/(x^2-2)
    x = ctx.gen()
    assert (x * x) == ctx.elem(2)
    f41 = FieldCtx(41, [0, 1])
    assert f41.elem(2).inverse() == f41.elem(21)
    with pytest.raises(ZeroDivisionError):
        f41.zero().inverse()


def test_frobenius_fixes_exactly_the_prime_field():
    ctx = FieldCtx(3, find_irreducible(3, 3))
    fixed = [i for i in range(27) if (e := ctx.element_at(i)).frobenius() == e]
    assert len(fixed) == 3
    # and a^(p^e) = a for everything
    assert all(ctx.element_at(i) ** 27 == ctx.element_at(i) for i in range(27))


def test_element_min_poly():
    ctx = FieldCtx(2, [1, 1, 0, 1])  # F_8 = F_2[x]/(x^3+x+1)
    x = ctx.gen()
    assert x.min_poly() == (1, 1, 0, 1)
    assert ctx.one().min_poly() == (1, 1)  # y - 1 = y + 1 over F_2


def test_chi_prime_field_examples():
    f13 = FieldCtx(13, [0, 1])
    assert chi(f13.elem(4)) == 1
    assert chi(f13.elem(6)) == -1
    assert chi(f13.zero()) == 0


def test_chi_characteristic_two():
    ctx = FieldCtx(2, [1, 1, 0, 1], ambient_d=3)
    assert all(chi(ctx.element_at(i)) == 1 for i in range(1, 8))


def test_chi_ambient_parity_rule():
    # a non-square of F_19 becomes a square in the ambient F_19^2
    f19 = FieldCtx(19, [0, 1])
    nonsquare = next(a for a in range(2, 19) if chi(f19.elem(a)) == -1)
    ambient = FieldCtx(19, [0, 1], ambient_d=2)
    assert chi(ambient.elem(nonsquare)) == 1
    # odd ambient index keeps the subfield verdict
    ambient3 = FieldCtx(19, [0, 1], ambient_d=3)
    assert chi(ambient3.elem(nonsquare)) == -1


def brute_square_table(ctx):
    q = ctx.order
    squares = set()
    for i in range(q):
        b = ctx.element_at(i)
        squares.add((b * b).coeffs)
    return squares


def test_chi_against_exhaustive_squares_small_fields():
    for q in (3, 5, 9, 25, 8, 27, 49, 121, 128):
        p = next(pp for pp in primes_upto(q) if q % pp == 0 and is_prime(pp))
        e = 0
        qq = q
        while qq > 1:
            qq //= p
            e += 1
        ctx = FieldCtx(p, find_irreducible(p, e))
        squares = brute_square_table(ctx)
        for i in range(q):
            a = ctx.element_at(i)
            expected = 0 if a.is_zero() else (1 if a.coeffs in squares else -1)
            if p == 2:
                expected = 0 if a.is_zero() else 1
            assert chi(a) == expected


def test_chi_multiplicative_all_fields():
    rng = random.Random(17)
    fields = 0
    for p in primes_upto(2000):
        e = 1
        while p**e <= 2000:
            ctx = FieldCtx(p, [0, 1] if e == 1 else find_irreducible(p, e))
            q = p**e
            for _ in range(1000):
                a = ctx.element_at(rng.randrange(q))
                b = ctx.element_at(rng.randrange(q))
                assert chi(a * b) == chi(a) * chi(b)
            fields += 1
            e += 1
    assert fields == 333


def test_sqrt_examples():
    f13 = FieldCtx(13, [0, 1])
    assert sqrt_in_field(f13.elem(4)) == f13.elem(2)
    assert sqrt_in_field(f13.elem(6)) is None
    f41 = FieldCtx(41, [0, 1])
    assert sqrt_in_field(f41.elem(5)) == f41.elem(13)


def test_sqrt_in_extension_fields():
    for p, e in ((3, 2), (5, 3), (7, 2), (2, 4), (13, 2)):
        ctx = FieldCtx(p, find_irreducible(p, e))
        hits = 0
        for i in range(ctx.order):
            a = ctx.element_at(i)
            r = sqrt_in_field(a)
            if r is not None:
                assert r * r == a
                hits += 1
        expected = ctx.order if p == 2 else (ctx.order - 1) // 2 + 1
        assert hits == expected


def test_sqrt_ambient_square_may_have_no_represented_root():
    f19 = FieldCtx(19, [0, 1], ambient_d=2)
    nonsquare = next(a for a in range(2, 19)
                     if sqrt_in_field(FieldCtx(19, [0, 1]).elem(a)) is None)
    elem = f19.elem(nonsquare)
    assert chi(elem) == 1
    assert sqrt_in_field(elem) is None


def test_equal_degree_factors_of_s_polynomial():
    # abelian Galois consequence: all irreducible factors share one degree
    for n in range(7, 31):
        f1 = s_polynomial(3, n)
        for p in primes_upto(300):
            try:
                fl = reduce_and_factor(f1, p)
            except ValueError:
                continue
            if not fl.squarefree:
                continue
            degs = {len(g) - 1 for g, _ in fl.factors}
            assert len(degs) == 1, (n, p, fl.factors)


def test_field_ctx_validation():
    with pytest.raises(ValueError):
        FieldCtx(10, [0, 1])
    with pytest.raises(ValueError):
        FieldCtx(3, [2, 0, 1])  # x^2+2 = (x+1)(x+2) mod 3
    with pytest.raises(ValueError):
        FieldCtx(3, [1, 0, 1], ambient_d=3)  # 2 does not divide 3
    with pytest.raises(ValueError):
        FieldCtx(5, [2])  # degree 0


def test_mixed_context_arithmetic_rejected():
    a = FieldCtx(5, [0, 1]).elem(2)
    b = FieldCtx(7, [0, 1]).elem(2)
    with pytest.raises(ValueError):
        _ = a + b


def test_find_irreducible():
    g = find_irreducible(2, 8)
    assert is_irreducible(list(g), 2)
    assert len(g) == 9
    assert find_irreducible(13, 1) == (0, 1)

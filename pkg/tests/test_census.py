import pytest

from macbeath import gf
from macbeath.census import (
    cps_discriminant,
    field_data,
    map_census,
    matrix_oracle,
    parity_verdict,
    record_from_json,
    record_to_csv_rows,
    record_to_json,
    route_product,
)
from macbeath.errors import BadReduction, Inadmissible
from macbeath.numkit import primes_upto


def s_values(record):
    return sorted(tuple(c.s.coeffs) for c in record.classes)


def test_field_data_examples():
    assert field_data(3, 7, 13).d == 1 and field_data(3, 7, 13).q == 13
    fd = field_data(3, 7, 2)
    assert (fd.d, fd.q) == (3, 8)
    fd = field_data(4, 5, 7)
    assert (fd.d, fd.q) == (2, 49)
    fd = field_data(3, 14, 3)
    assert (fd.d, fd.q) == (3, 27)
    assert fd.n_modulus == 28


def test_field_data_errors():
    with pytest.raises(Inadmissible):
        field_data(3, 7, 7)  # p divides n
    with pytest.raises(Inadmissible):
        field_data(3, 8, 2)  # p divides 2n
    with pytest.raises(Inadmissible):
        field_data(4, 5, 2)  # no order-4 elements in char 2
    with pytest.raises(Inadmissible):
        field_data(6, 7, 3)  # no order-6 elements in char 3
    with pytest.raises(Inadmissible):
        field_data(3, 6, 5)  # not hyperbolic


def test_census_3_7_13():
    r = map_census(3, 7, 13)
    assert (r.k, r.l) == (1, 2)
    assert s_values(r) == [(4,), (6,), (7,)]
    inner = [c for c in r.classes if c.regularity == "inner"]
    assert len(inner) == 1 and inner[0].s.coeffs == (4,)
    assert r.genus == 14
    # classes are ordered by least root
    assert [c.s.coeffs for c in r.classes] == [(4,), (6,), (7,)]


def test_census_3_7_43():
    r = map_census(3, 7, 43)
    assert r.k == 2
    assert s_values(r) == [(25,), (29,), (36,)]
    outer = [c for c in r.classes if c.regularity == "outer"]
    assert outer[0].s.coeffs == (29,)


def test_census_3_9_19_outer_class():
    r = map_census(3, 9, 19)
    assert (r.k, r.l) == (2, 1)
    outer = [c for c in r.classes if c.regularity == "outer"]
    assert outer[0].s.coeffs == (13,)


def test_census_3_13_3_all_outer():
    r = map_census(3, 13, 3)
    assert (r.field.d, r.field.q) == (3, 27)
    assert len(r.classes) == 2 and r.k == 0
    assert all(c.e == 3 for c in r.classes)


def test_census_3_8_31():
    r = map_census(3, 8, 31)
    assert (r.k, r.l) == (1, 1)
    assert s_values(r) == [(9,), (24,)]  # 24 = -7 mod 31


def test_census_bad_reduction():
    with pytest.raises(BadReduction):
        map_census(3, 7, 7)


def test_census_char2_everything_inner():
    r = map_census(3, 7, 2)
    assert (r.field.q, r.genus, r.k, r.l) == (8, 7, 1, 0)
    assert r.classes[0].chi == 1
    assert r.classes[0].t is not None  # every element of F_8 has a square root


def test_census_t_repr_squares_back():
    for (m, n, p) in [(3, 7, 13), (3, 9, 17), (4, 5, 31), (3, 13, 5)]:
        r = map_census(m, n, p)
        shift = {3: 3, 4: 2, 6: 1}[m]
        for c in r.classes:
            if c.t is None:
                continue
            ctx = c.t.ctx
            assert c.t * c.t == ctx.elem(shift) - ctx.gen()


def test_census_count_flag_for_folded_even_case():
    # (3,8,7): d=2 but f1 splits into linears; factor count 2 exceeds phi(n)/2d=1
    r = map_census(3, 8, 7)
    assert r.field.d == 2
    assert len(r.classes) == 2
    assert r.closed_form_count == 1
    assert r.count_flag
    # all classes are ambient squares since d/e is even
    assert r.k == 2
    # normal case: no flag
    assert not map_census(3, 7, 13).count_flag


def test_parity_examples():
    r = map_census(3, 7, 13)
    v = parity_verdict(r)
    assert v.applicable and v.predicted == "even" and v.observed == "even" and v.consistent
    v = parity_verdict(map_census(3, 12, 23))
    assert v.applicable and v.predicted == "odd" and v.consistent
    v = parity_verdict(map_census(3, 9, 19))
    assert v.applicable and v.predicted == "odd" and v.consistent
    # d even: the theorem is silent
    v = parity_verdict(map_census(3, 13, 5))
    assert not v.applicable and v.predicted is None and v.consistent is None
    # m = 4: not the theorem's setting
    assert not parity_verdict(map_census(4, 5, 31)).applicable


def test_cps_discriminant():
    ctx = gf.FieldCtx(13, [0, 1])
    t = ctx.elem(5)
    val, character = cps_discriminant(t, ctx.zero(), ctx.one())
    assert val == ctx.elem(3) - t * t
    assert character == gf.chi(val)
    val, _ = cps_discriminant(ctx.zero(), ctx.zero(), ctx.zero())
    assert val == ctx.elem(4)
    # with w^2 = 2 adjoined: (t, 0, w) evaluates to 2 - t^2
    ext = gf.FieldCtx(5, [-2, 0, 1])
    w = ext.gen()
    t5 = ext.elem(3)
    val, _ = cps_discriminant(t5, ext.zero(), w)
    assert val == ext.elem(2) - t5 * t5


def test_cps_discriminant_mixed_contexts():
    a = gf.FieldCtx(13, [0, 1]).elem(1)
    b = gf.FieldCtx(11, [0, 1]).elem(1)
    with pytest.raises(ValueError):
        cps_discriminant(a, a, b)


def test_matrix_oracle_3_7_13():
    r = map_census(3, 7, 13)
    verdicts = {}
    for c in r.classes:
        w = matrix_oracle(7, 13, c, r.field.d)
        verdicts[c.s.coeffs] = (w.verdict, w.degenerate)
    assert verdicts[(4,)][0] == "inner"
    assert verdicts[(6,)][0] == "outer"
    # at least one degenerate beta = 0 branch occurs here (s=4: -s = 9 = 3^2)
    assert verdicts[(4,)][1] is True


def test_matrix_oracle_rejects_char2():
    r = map_census(3, 7, 2)
    with pytest.raises(Inadmissible):
        matrix_oracle(7, 2, r.classes[0], r.field.d)


def test_matrix_oracle_agrees_on_extension_fields():
    r = map_census(3, 7, 5)  # d = 3, one class over F_125
    assert len(r.classes) == 1
    w = matrix_oracle(7, 5, r.classes[0], r.field.d)
    assert w.verdict == r.classes[0].regularity == "inner"  # 5 = 1 mod 4
    r = map_census(3, 7, 3)  # 3 = -1 mod 4: outer
    w = matrix_oracle(7, 3, r.classes[0], r.field.d)
    assert w.verdict == "outer"


def test_matrix_oracle_extension_branch():
    # (3,8,7): d=2 but the s-values live in F_7, and 3-s is a non-square
    # there, so the trace field F_49 must be adjoined via T^2 = 3 - s
    r = map_census(3, 8, 7)
    assert r.field.d == 2 and all(c.e == 1 for c in r.classes)
    for c in r.classes:
        w = matrix_oracle(8, 7, c, r.field.d)
        assert w.verdict == c.regularity == "inner"
        assert len(w.field_modulus) - 1 == 2  # worked in the quadratic extension


def test_census_m6():
    # no tabulated records for m=6; check internal consistency instead
    from macbeath.gf import degree_pattern
    from macbeath.intpoly import doubled, s_polynomial
    assert s_polynomial(6, 7).coeffs == (-1, -1, 2, 1)
    r = map_census(6, 7, 13)
    assert (r.field.d, r.field.q, r.genus) == (1, 13, 105)
    assert (r.k, r.l) == (1, 2)
    assert s_values(r) == [(2,), (4,), (5,)]
    # inner count agrees with the linear factors of f1(x^2)
    f2 = doubled(s_polynomial(6, 7))
    for p in primes_upto(150):
        try:
            rec = map_census(6, 7, p)
        except (BadReduction, Inadmissible):
            continue
        if rec.field.d == 1:
            assert degree_pattern(f2, p).count(1) == 2 * rec.k


def test_route_product_m4_and_m6():
    from macbeath.census import route_product
    for m, n_values in ((4, (5, 7, 8)), (6, (7, 8, 9))):
        for n in n_values:
            for p in primes_upto(80):
                try:
                    left, right = route_product(m, n, p)
                except (BadReduction, Inadmissible):
                    continue
                assert left == right, (m, n, p)


def test_genus_integral_for_admissible_types():
    from macbeath.numkit import genus
    for m, n_range in ((3, range(7, 21)), (4, range(5, 13)), (6, range(4, 11))):
        for n in n_range:
            if (m - 2) * (n - 2) <= 4:
                continue
            for p in primes_upto(500):
                try:
                    fd = field_data(m, n, p)
                except Inadmissible:
                    continue
                genus(m, n, fd.q)  # raises if not an integer


def test_route_product_small():
    for n in (7, 8, 9, 10, 12):
        for p in primes_upto(40):
            try:
                left, right = route_product(3, n, p)
            except (Inadmissible, BadReduction):
                continue
            assert left == right, (n, p)


def test_json_round_trip():
    for args in [(3, 7, 13), (3, 13, 5), (4, 5, 7), (3, 8, 7)]:
        r = map_census(*args)
        assert record_from_json(record_to_json(r)) == r
        # bit-stable serialization
        assert record_to_json(r) == record_to_json(map_census(*args))
    # records without trace representatives round-trip too
    r = map_census(3, 11, 23, traces=False)
    assert all(c.t is None for c in r.classes)
    assert record_from_json(record_to_json(r)) == r


def test_csv_rows():
    r = map_census(3, 7, 13)
    rows = record_to_csv_rows(r)
    assert len(rows) == 3
    assert rows[0][:3] == (3, 7, 13)
    assert {row[13] for row in rows} == {"inner", "outer"}

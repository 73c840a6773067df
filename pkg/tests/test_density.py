from fractions import Fraction

import pytest

from macbeath.density import (
    EVEN_SUBGROUP,
    FULL_WREATH,
    UNKNOWN,
    default_stream,
    galois_model,
    negative_root_count,
    pattern_census,
    predicted_sigma_densities,
    sweep,
    sweep_csv_rows,
    tally_to_dict,
    wreath_cycle_distribution,
)
from macbeath.numkit import PrimeStream


def test_sweep_first_400_counts_and_split():
    res = sweep(3, 7, default_stream(3, 7, first=400))
    assert res.tally.total == 400
    assert tuple(res.tally.counts[k] for k in range(4)) == (48, 154, 151, 47)
    split = {f"{k}{s}": v for (k, s), v in res.tally.split.items()}
    assert (split["0+"], split["0-"]) == (22, 26)
    assert (split["1+"], split["1-"]) == (78, 76)
    assert (split["2+"], split["2-"]) == (78, 73)
    assert (split["3+"], split["3-"]) == (24, 23)
    assert res.tally.skipped == ()
    assert res.tally.max_abs_deviation == pytest.approx(0.01)


def test_sweep_membership_spot_checks():
    res = sweep(3, 7, default_stream(3, 7, first=60))
    by_p = {rec.p: rec for rec in res.records}
    assert by_p[167].k == 0
    assert by_p[181].k == 3
    first4 = [rec.k for rec in res.records[:4]]
    assert [rec.p for rec in res.records[:4]] == [13, 29, 41, 43]
    assert first4 == [1, 1, 1, 2]


def test_sweep_worker_determinism():
    one = sweep(3, 9, default_stream(3, 9, first=50), workers=1)
    two = sweep(3, 9, default_stream(3, 9, first=50), workers=2)
    assert one.records == two.records
    assert one.tally == two.tally


def test_sweep_reports_bad_reduction():
    # a residue filter that lets the ramified prime 7 through
    stream = PrimeStream.up_to(2, {1}, 50)  # all odd primes <= 50
    res = sweep(3, 7, stream)
    skipped = dict(res.tally.skipped)
    assert 7 in skipped and "bad-reduction" in skipped[7]
    assert all(rec.p != 7 for rec in res.records)


def test_sweep_cache_round_trip(tmp_path):
    cache = tmp_path / "cache.jsonl"
    stream = default_stream(3, 7, first=20)
    first = sweep(3, 7, stream, cache_path=str(cache))
    size = cache.stat().st_size
    again = sweep(3, 7, stream, cache_path=str(cache))
    assert cache.stat().st_size == size  # nothing recomputed or appended
    assert first.records == again.records
    longer = sweep(3, 7, default_stream(3, 7, first=25), cache_path=str(cache))
    assert cache.stat().st_size > size
    assert longer.records[:20] == first.records


def test_negative_root_count_examples():
    assert negative_root_count(7) == 1
    assert negative_root_count(13) == 2
    assert negative_root_count(20) == 2
    assert negative_root_count(19) == 3
    for n in (8, 10, 12, 14, 16, 18):
        assert negative_root_count(n) == 1
    with pytest.raises(Exception):
        negative_root_count(6)


def test_negative_root_count_matches_real_roots():
    # independent check: count sign changes of the actual real roots
    import mpmath
    from macbeath.intpoly import s_polynomial
    mpmath.mp.dps = 40
    for n in range(7, 26):
        f1 = s_polynomial(3, n)
        roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(f1.coeffs)],
                                 maxsteps=200, extraprec=200)
        negatives = sum(1 for r in roots
                        if abs(mpmath.im(r)) < mpmath.mpf("1e-20") and mpmath.re(r) < 0)
        assert negative_root_count(n) == negatives, n


def test_galois_model_table():
    assert galois_model(3, 7).structure == FULL_WREATH
    assert galois_model(3, 7).r == 3
    assert galois_model(3, 13).structure == EVEN_SUBGROUP
    assert galois_model(3, 13).r == 6
    assert galois_model(3, 17).structure == UNKNOWN
    assert galois_model(3, 17).r == 8
    assert galois_model(4, 5).structure == FULL_WREATH
    assert galois_model(3, 21).structure == UNKNOWN
    assert galois_model(3, 17, override=FULL_WREATH).structure == FULL_WREATH


def test_full_wreath_entries_have_one_negative_root_below_19():
    for n in range(7, 19):
        if galois_model(3, n).structure == FULL_WREATH:
            assert negative_root_count(n) == 1
    assert negative_root_count(19) == 3  # the tabled exception


def test_predicted_sigma_densities():
    assert predicted_sigma_densities(galois_model(3, 7)) == [
        Fraction(1, 8), Fraction(3, 8), Fraction(3, 8), Fraction(1, 8)]
    d11 = predicted_sigma_densities(galois_model(3, 11))
    assert d11 == [Fraction(c, 32) for c in (1, 5, 10, 10, 5, 1)]
    assert predicted_sigma_densities(galois_model(4, 5)) == [
        Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)]
    d13 = predicted_sigma_densities(galois_model(3, 13))
    assert d13[1] == d13[3] == d13[5] == 0
    assert d13[0] == d13[6] == Fraction(1, 32)
    assert d13[2] == d13[4] == Fraction(15, 32)
    assert sum(d13) == 1
    with pytest.raises(ValueError):
        predicted_sigma_densities(galois_model(3, 17))


def test_wreath_cycle_distribution_n7():
    dist = wreath_cycle_distribution(7)
    assert dist == {
        (1, 1, 1, 1, 1, 1): Fraction(1, 24),
        (2, 2, 2): Fraction(1, 24),
        (1, 1, 1, 1, 2): Fraction(1, 8),
        (1, 1, 2, 2): Fraction(1, 8),
        (3, 3): Fraction(1, 3),
        (6,): Fraction(1, 3),
    }


def test_wreath_cycle_distribution_properties():
    for n in (7, 8, 9, 11, 12, 13, 15, 16):
        dist = wreath_cycle_distribution(n)
        r = galois_model(3, n).r
        assert sum(dist.values()) == 1
        identity = tuple([1] * (2 * r))
        assert dist[identity] == Fraction(1, r * 2**r)
        assert all(sum(pat) == 2 * r for pat in dist)


def test_wreath_cycle_distribution_bound():
    with pytest.raises(ValueError):
        wreath_cycle_distribution(37)  # phi/2 = 18 > 16


def test_pattern_census_small():
    res = pattern_census(3, 7, 3000)
    assert res.skipped == (2, 7)
    assert set(res.counts) <= set(res.predicted)
    assert res.bridge_violations == 0
    assert res.bridge_checked > 100
    assert res.total == sum(res.counts.values())
    assert res.max_abs_deviation < 0.05
    # the k=1 bridge example: p=13 has pattern (1,1,2,2)
    assert res.counts[(1, 1, 2, 2)] > 0


def test_pattern_census_worker_determinism():
    one = pattern_census(3, 7, 1500, workers=1)
    two = pattern_census(3, 7, 1500, workers=2)
    assert one == two


def test_pattern_census_without_prediction():
    res = pattern_census(3, 13, 500)
    assert res.predicted is None and res.max_abs_deviation is None
    assert res.total > 0


def test_sweep_csv_and_json_shapes():
    res = sweep(3, 7, default_stream(3, 7, first=5))
    rows = sweep_csv_rows(res)
    assert len(rows) == 5
    assert rows[0][0] == 13 and rows[0][7] == "True"
    blob = tally_to_dict(res.tally)
    assert blob["counts"] == {"0": 0, "1": 3, "2": 2, "3": 0}

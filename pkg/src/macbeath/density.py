"""Prime sweeps and density statistics for the inner/outer classification.

Partitions primes into the classes Sigma_k by the number k of inner regular
maps, compares empirical frequencies with the densities predicted by the
Galois-structure model (full wreath product or its even subgroup), computes
wreath-product cycle statistics by brute enumeration, and runs degree-pattern
censuses of f1(x^2) mod p against those predictions.
"""

from __future__ import annotations

import json
import math
import multiprocessing
import os
from dataclasses import dataclass
from fractions import Fraction

from . import census, gf
from .errors import BadReduction, Inadmissible
from .intpoly import discriminant, doubled, s_polynomial
from .numkit import PrimeStream, euler_phi, primes_in_classes

FULL_WREATH = "full_wreath"
EVEN_SUBGROUP = "even_subgroup"
UNKNOWN = "unknown"

# Galois structure of the doubled polynomial, as far as it is settled: the
# full wreath product is forced by a unique negative root for n <= 18, n = 19
# is known full by direct search, and n = 13, 15 drop to the even subgroup.
_STRUCTURE_TABLE_M3 = {
    7: FULL_WREATH, 8: FULL_WREATH, 9: FULL_WREATH, 10: FULL_WREATH,
    11: FULL_WREATH, 12: FULL_WREATH, 14: FULL_WREATH, 16: FULL_WREATH,
    18: FULL_WREATH, 19: FULL_WREATH,
    13: EVEN_SUBGROUP, 15: EVEN_SUBGROUP,
}


def default_workers() -> int:
    env = os.environ.get("MACBEATH_WORKERS")
    if env:
        return max(1, int(env))
    return 1


# ---------------------------------------------------------------------------
# sigma sweeps


@dataclass(frozen=True)
class PrimeSummary:
    p: int
    residue: int  # +1 or -1: the sign of p mod the relevant modulus
    k: int
    l: int
    d: int
    q: int
    genus: int


@dataclass(frozen=True)
class SigmaTally:
    m: int
    n: int
    stream: PrimeStream | None
    total: int
    counts: dict[int, int]
    split: dict[tuple[int, str], int]
    frequencies: dict[int, Fraction]
    predicted: tuple[Fraction, ...] | None
    max_abs_deviation: float | None
    skipped: tuple[tuple[int, str], ...]


@dataclass(frozen=True)
class SweepResult:
    m: int
    n: int
    records: tuple[PrimeSummary, ...]
    tally: SigmaTally


def default_stream(m: int, n: int, first: int | None = None,
                   bound: int | None = None) -> PrimeStream:
    """Primes p = +-1 mod N, the ones carrying PSL(2,p) maps of type {m,n}."""
    modulus = n if n % 2 else 2 * n
    return PrimeStream.plus_minus_one(modulus, first=first, bound=bound)


def _summarize(m: int, n: int, p: int) -> PrimeSummary | tuple[int, str]:
    modulus = n if n % 2 else 2 * n
    try:
        record = census.map_census(m, n, p, traces=False)
    except BadReduction as exc:
        return (p, f"bad-reduction: {exc}")
    except Inadmissible as exc:
        return (p, f"inadmissible: {exc}")
    residue = 1 if p % modulus == 1 else -1
    return PrimeSummary(p, residue, record.k, record.l, record.field.d,
                        record.field.q, record.genus)


def _sweep_chunk(args) -> list:
    m, n, chunk = args
    return [_summarize(m, n, p) for p in chunk]


def _parallel_flatmap(func, args_list, workers: int) -> list:
    if workers <= 1 or len(args_list) <= 1:
        out = []
        for args in args_list:
            out.extend(func(args))
        return out
    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:  # platform without fork: fall back to serial
        return _parallel_flatmap(func, args_list, 1)
    with ctx.Pool(workers) as pool:
        parts = pool.map(func, args_list)
    out = []
    for part in parts:
        out.extend(part)
    return out


def _chunked(items, pieces: int) -> list:
    if pieces <= 1:
        return [list(items)]
    size = max(1, math.ceil(len(items) / (4 * pieces)))
    return [list(items[i:i + size]) for i in range(0, len(items), size)]


def sweep(m: int, n: int, stream: PrimeStream | None = None, *,
          workers: int | None = None, cache_path: str | None = None) -> SweepResult:
    """Classify every prime admitted by the stream and tally the k values.

    Bad-reduction (and otherwise inadmissible) primes are skipped and
    reported in the tally.  Partitioning the work over several workers does
    not change the result.
    """
    if stream is None:
        stream = default_stream(m, n, first=400)
    primes = primes_in_classes(stream)
    cached: dict[int, PrimeSummary] = {}
    if cache_path and os.path.exists(cache_path):
        cached = _read_cache(cache_path, m, n)
    todo = [p for p in primes if p not in cached]
    workers = default_workers() if workers is None else workers
    chunks = _chunked(todo, workers)
    outcomes = _parallel_flatmap(_sweep_chunk, [(m, n, c) for c in chunks], workers)
    fresh = {}
    skipped = []
    for item in outcomes:
        if isinstance(item, PrimeSummary):
            fresh[item.p] = item
        else:
            skipped.append(item)
    if cache_path and fresh:
        _append_cache(cache_path, m, n, [fresh[p] for p in todo if p in fresh])
    records = tuple(cached.get(p) or fresh[p] for p in primes
                    if p in cached or p in fresh)
    return SweepResult(m, n, records,
                       _tally(m, n, stream, records, tuple(skipped)))


def _tally(m: int, n: int, stream: PrimeStream | None,
           records: tuple[PrimeSummary, ...],
           skipped: tuple[tuple[int, str], ...]) -> SigmaTally:
    r = euler_phi(n) // 2
    counts = {k: 0 for k in range(r + 1)}
    split = {(k, sign): 0 for k in range(r + 1) for sign in "+-"}
    for rec in records:
        counts[rec.k] = counts.get(rec.k, 0) + 1
        key = (rec.k, "+" if rec.residue == 1 else "-")
        split[key] = split.get(key, 0) + 1
    total = len(records)
    frequencies = {k: Fraction(c, total) if total else Fraction(0)
                   for k, c in counts.items()}
    model = galois_model(m, n)
    predicted = None
    deviation = None
    if model.structure != UNKNOWN:
        predicted = tuple(predicted_sigma_densities(model))
        if total:
            deviation = float(max(abs(frequencies.get(k, Fraction(0)) - predicted[k])
                                  for k in range(r + 1)))
    return SigmaTally(m, n, stream, total, counts, split, frequencies,
                      predicted, deviation, skipped)


def _read_cache(path: str, m: int, n: int) -> dict[int, PrimeSummary]:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            data = json.loads(line)
            if data["m"] != m or data["n"] != n:
                continue
            out[data["p"]] = PrimeSummary(data["p"], data["residue"], data["k"],
                                          data["l"], data["d"], int(data["q"]),
                                          int(data["genus"]))
    return out


def _append_cache(path: str, m: int, n: int, records: list[PrimeSummary]) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps({
                "m": m, "n": n, "p": rec.p, "residue": rec.residue,
                "k": rec.k, "l": rec.l, "d": rec.d,
                "q": str(rec.q), "genus": str(rec.genus)}) + "\n")


# ---------------------------------------------------------------------------
# negative roots and Galois models


def negative_root_count(n: int, m: int = 3) -> int:
    """Number of negative roots of the s-polynomial, by exact integer inequalities.

    A root s_j = (4 - w^2) - 2cos(theta_j) - ... is negative exactly when the
    corresponding trace satisfies t^2 > 4 - w^2, which for m = 3 means
    |cos(theta)| > sqrt(3)/2; the cutoffs below are that condition cleared of
    irrationals.
    """
    if n < 7:
        raise ValueError("n must be >= 7")
    # (low, high) multipliers: theta/pi < 1/low or theta/pi > high part
    if m == 3:
        odd_low, odd_high = 12, 5   # 12j < n or 12j > 5n
        even_low = 6                # 6j < n
    elif m == 4:
        odd_low, odd_high = 8, 3
        even_low = 4
    elif m == 6:
        odd_low, odd_high = 6, 2
        even_low = 3
    else:
        raise ValueError(f"unsupported m={m}")
    count = 0
    if n % 2:
        for j in range(1, (n + 1) // 2):
            if math.gcd(j, n) == 1 and (odd_low * j < n or odd_low * j > odd_high * n):
                count += 1
    else:
        for j in range(1, n // 2):
            if math.gcd(j, 2 * n) == 1 and even_low * j < n:
                count += 1
    return count


@dataclass(frozen=True)
class GaloisModel:
    m: int
    n: int
    r: int              # phi(n)/2, the number of root pairs
    structure: str      # full_wreath | even_subgroup | unknown
    negative_roots: int


def galois_model(m: int, n: int, override: str | None = None) -> GaloisModel:
    """Curated Galois-structure assignment for the doubled polynomial.

    The table is not computed here; `override` substitutes a structure for
    n outside it (or forces one for experiments).
    """
    r = euler_phi(n) // 2
    if override is not None:
        if override not in (FULL_WREATH, EVEN_SUBGROUP, UNKNOWN):
            raise ValueError(f"unknown structure override {override!r}")
        structure = override
    elif m == 3:
        structure = _STRUCTURE_TABLE_M3.get(n, UNKNOWN)
    elif m == 4 and n == 5:
        structure = FULL_WREATH
    else:
        structure = UNKNOWN
    negative = negative_root_count(n, m) if n >= 7 else 1
    return GaloisModel(m, n, r, structure, negative)


def predicted_sigma_densities(model: GaloisModel) -> list[Fraction]:
    """Relative densities of Sigma_0..Sigma_r under the structure model."""
    if model.structure == UNKNOWN:
        raise ValueError(f"no prediction: Galois structure unknown for n={model.n}")
    r = model.r
    if model.structure == FULL_WREATH:
        out = [Fraction(math.comb(r, k), 2**r) for k in range(r + 1)]
    else:
        out = [Fraction(math.comb(r, k), 2 ** (r - 1)) if (r - k) % 2 == 0
               else Fraction(0) for k in range(r + 1)]
    if sum(out) != 1:
        raise AssertionError("density table does not sum to 1")
    return out


# ---------------------------------------------------------------------------
# wreath-product cycle statistics


def _half_group(n: int) -> list[int]:
    return [j for j in range(1, n // 2 + 1)
            if math.gcd(j, n) == 1 and 2 * j != n]


def wreath_cycle_distribution(n: int) -> dict[tuple[int, ...], Fraction]:
    """Cycle-type densities of C2 wr (Z_n*/{+-1}) acting on the phi(n) roots.

    Brute enumeration over all (sign vector, group element) pairs; densities
    are exact and sum to 1.
    """
    reps = _half_group(n)
    r = len(reps)
    if r > 16:
        raise ValueError("phi(n)/2 > 16: enumeration bound exceeded")
    index = {j: i for i, j in enumerate(reps)}

    def canon(x: int) -> int:
        x %= n
        return min(x, n - x)

    # orbit decomposition of multiplication by a on the pair indices
    tallies: dict[tuple[int, ...], int] = {}
    for a in reps:
        orbits = []
        seen = [False] * r
        for start in range(r):
            if seen[start]:
                continue
            orbit = []
            j = start
            while not seen[j]:
                seen[j] = True
                orbit.append(j)
                j = index[canon(reps[j] * a)]
            orbits.append(orbit)
        for signs in range(1 << r):
            pattern = []
            for orbit in orbits:
                flips = sum((signs >> j) & 1 for j in orbit)
                if flips % 2:
                    pattern.append(2 * len(orbit))
                else:
                    pattern.extend([len(orbit)] * 2)
            key = tuple(sorted(pattern))
            tallies[key] = tallies.get(key, 0) + 1
    total = r * (1 << r)
    out = {pat: Fraction(c, total) for pat, c in sorted(tallies.items())}
    if sum(out.values()) != 1:
        raise AssertionError("cycle-type densities do not sum to 1")
    return out


# ---------------------------------------------------------------------------
# degree-pattern census


@dataclass(frozen=True)
class PatternCensus:
    m: int
    n: int
    bound: int
    total: int
    counts: dict[tuple[int, ...], int]
    frequencies: dict[tuple[int, ...], Fraction]
    predicted: dict[tuple[int, ...], Fraction] | None
    max_abs_deviation: float | None
    skipped: tuple[int, ...]          # bad-reduction primes, excluded
    bridge_checked: int               # primes where 2*k_p was verified
    bridge_violations: int


def _pattern_chunk(args) -> list:
    m, n, chunk = args
    f2 = doubled(s_polynomial(m, n))
    modulus = n if n % 2 else 2 * n
    out = []
    for p in chunk:
        try:
            pattern = gf.degree_pattern(f2, p)
        except ValueError:
            out.append((p, None, None))
            continue
        linear = 0
        for d in pattern:
            if d == 1:
                linear += 1
            else:
                break
        k_census = None
        if p % modulus in (1, modulus - 1):
            try:
                k_census = census.map_census(m, n, p, traces=False).k
            except (BadReduction, Inadmissible):
                out.append((p, None, None))
                continue
        out.append((p, pattern, (linear, k_census)))
    return out


def pattern_census(m: int, n: int, bound: int, *,
                   workers: int | None = None) -> PatternCensus:
    """Degree patterns of f1(x^2) mod p over all good primes <= bound.

    Primes dividing the discriminant of the doubled polynomial are excluded
    and reported.  For primes p = +-1 mod N the linear-factor count is
    cross-checked against twice the census count k_p.
    """
    f2 = doubled(s_polynomial(m, n))
    disc = discriminant(f2)
    workers = default_workers() if workers is None else workers
    primes = primes_in_classes(PrimeStream.up_to(1, {0}, bound))
    chunks = _chunked(primes, workers)
    rows = _parallel_flatmap(_pattern_chunk, [(m, n, c) for c in chunks], workers)
    counts: dict[tuple[int, ...], int] = {}
    skipped = []
    checked = violations = 0
    for p, pattern, bridge in rows:
        if pattern is None or disc % p == 0:
            skipped.append(p)
            continue
        counts[pattern] = counts.get(pattern, 0) + 1
        if bridge is not None and bridge[1] is not None:
            checked += 1
            if bridge[0] != 2 * bridge[1]:
                violations += 1
    total = sum(counts.values())
    freqs = {pat: Fraction(c, total) for pat, c in sorted(counts.items())}
    model = galois_model(m, n)
    predicted = None
    deviation = None
    if model.structure == FULL_WREATH:
        predicted = wreath_cycle_distribution(n)
        if total:
            keys = set(freqs) | set(predicted)
            deviation = float(max(abs(freqs.get(k, Fraction(0))
                                      - predicted.get(k, Fraction(0)))
                                  for k in keys))
    return PatternCensus(m, n, bound, total, dict(sorted(counts.items())), freqs,
                         predicted, deviation, tuple(sorted(skipped)),
                         checked, violations)


# ---------------------------------------------------------------------------
# CSV / JSON emission for sweeps

SWEEP_CSV_HEADER = ("p", "residue_class", "d", "q", "genus", "k", "l",
                    "parity_ok", "class_details")


def sweep_csv_rows(result: SweepResult) -> list[tuple]:
    rows = []
    for rec in result.records:
        # map_census raises on any parity violation, so odd-d records that
        # reach a sweep row are consistent by construction (m = 3 only)
        parity_ok = "True" if (result.m == 3 and rec.d % 2) else ""
        rows.append((rec.p, rec.residue, rec.d, str(rec.q), str(rec.genus),
                     rec.k, rec.l, parity_ok, f"k={rec.k};l={rec.l}"))
    return rows


def tally_to_dict(tally: SigmaTally) -> dict:
    return {
        "m": tally.m,
        "n": tally.n,
        "stream": None if tally.stream is None else {
            "modulus": tally.stream.modulus,
            "residues": sorted(tally.stream.residues),
            "first": tally.stream.first,
            "bound": tally.stream.bound,
        },
        "total": tally.total,
        "counts": {str(k): v for k, v in sorted(tally.counts.items())},
        "split": {f"{k}{sign}": v for (k, sign), v in sorted(tally.split.items())},
        "frequencies": {str(k): [v.numerator, v.denominator]
                        for k, v in sorted(tally.frequencies.items())},
        "predicted": None if tally.predicted is None else
                     [[f.numerator, f.denominator] for f in tally.predicted],
        "max_abs_deviation": tally.max_abs_deviation,
        "skipped": list(tally.skipped),
    }

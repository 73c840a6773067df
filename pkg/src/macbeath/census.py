"""Classification of Macbeath maps of type {m,n} over PSL(2, p^d).

One isomorphism class of maps corresponds to one irreducible factor of the
s-polynomial mod p; the class is inner regular exactly when its s-value is a
square in the ambient field F_q.  This module builds the census records,
checks the parity prediction, evaluates the general three-trace discriminant,
and provides an independent matrix-witness oracle for the criterion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd, lcm

from . import gf
from .errors import BadReduction, Inadmissible, IntegrityError, OracleError
from .intpoly import IntPoly, psi, s_polynomial
from .numkit import divisors, euler_phi, genus, moebius, mult_order_signed

# modulus that controls existence of order-m rotations in PSL(2,q)
_M_MODULUS = {3: 3, 4: 8, 6: 12}
# 4 - w_m^2 where +-w_m is the order-m rotation trace; t^2 = this - s
_T_SQUARE_SHIFT = {3: 3, 4: 2, 6: 1}

INNER = "inner"
OUTER = "outer"


@dataclass(frozen=True)
class FieldData:
    m: int
    n: int
    p: int
    n_modulus: int  # n for odd n, 2n for even n
    m_modulus: int  # 3, 8 or 12
    d: int          # degree of the map's field over F_p
    q: int          # p**d


def field_data(m: int, n: int, p: int) -> FieldData:
    """Degree and order of the field F_q carrying the type-{m,n} maps in char p."""
    if m not in _M_MODULUS:
        raise Inadmissible(f"m={m} is unsupported")
    if (m - 2) * (n - 2) <= 4:
        raise Inadmissible(f"type {{{m},{n}}} is not hyperbolic")
    n_mod = n if n % 2 else 2 * n
    if gcd(p, n_mod) != 1:
        raise Inadmissible(f"p={p} divides {n_mod}")
    if m == 4 and p == 2:
        raise Inadmissible("PSL(2,2^d) has no elements of order 4")
    if m == 6 and p in (2, 3):
        raise Inadmissible(f"no order-6 rotations in characteristic {p}")
    d = mult_order_signed(p, n_mod)
    if m != 3:
        d = lcm(d, mult_order_signed(p, _M_MODULUS[m]))
    # m = 3 needs no side condition: p = 3 gives unipotent order-3 elements,
    # and any other p already has p = +-1 mod 3.
    return FieldData(m, n, p, n_mod, _M_MODULUS[m], d, p**d)


@dataclass(frozen=True)
class TraceClass:
    """One isomorphism class: an irreducible factor of f1 mod p with its verdict."""

    factor: tuple[int, ...]  # monic irreducible over F_p, ascending coefficients
    e: int                   # its degree
    s: gf.FieldElem          # the class parameter, a root of f1
    chi: int                 # quadratic character of s in the AMBIENT field
    regularity: str          # "inner" iff chi == +1
    t: gf.FieldElem | None   # a trace with t^2 = shift - s, when representable


@dataclass(frozen=True)
class ParityVerdict:
    applicable: bool          # the parity theorem speaks only for m=3, d odd
    predicted: str | None     # "even" / "odd" parity of l
    observed: str
    consistent: bool | None


@dataclass(frozen=True)
class CensusRecord:
    m: int
    n: int
    p: int
    field: FieldData
    genus: int
    classes: tuple[TraceClass, ...]
    k: int  # inner regular classes
    l: int  # outer regular classes
    parity: ParityVerdict
    closed_form_count: int     # phi(n)/2d, the generic isomorphism-class count
    count_flag: bool           # True when the factor count differs from it


def _class_sort_key(factor: tuple[int, ...], p: int):
    # degree first, then the root for linear factors (x - r has key (r,)),
    # extended to higher degree by the negated non-leading coefficients
    return (len(factor) - 1, tuple((-c) % p for c in factor[:-1]))


def map_census(m: int, n: int, p: int, *, traces: bool = True) -> CensusRecord:
    """Full classification of the type-{m,n} Macbeath maps in characteristic p.

    `traces=False` skips the optional square-root representative t on each
    class (the expensive part of a record); everything else is unchanged.
    """
    f1 = s_polynomial(m, n)
    factored = gf.reduce_and_factor(f1, p)
    if not factored.squarefree:
        raise BadReduction(f"f1 for type {{{m},{n}}} is not squarefree mod {p}")
    fd = field_data(m, n, p)
    degrees = {len(g) - 1 for g, _ in factored.factors}
    if len(degrees) != 1:
        raise IntegrityError(f"unequal factor degrees {degrees} for ({m},{n},{p})")
    e = degrees.pop()
    if fd.d % e:
        raise IntegrityError(f"factor degree {e} does not divide d={fd.d}")
    shift = _T_SQUARE_SHIFT[m]
    classes = []
    for factor, _ in sorted(factored.factors,
                            key=lambda fm: _class_sort_key(fm[0], p)):
        ctx = gf.FieldCtx(p, factor, ambient_d=fd.d, validate=False)
        s = ctx.gen()
        character = gf.chi(s)
        if character == 0:
            raise BadReduction(
                f"s = 0 occurs for ({m},{n},{p}); no generating triple has t^2 = {shift}")
        t = gf.sqrt_in_field(ctx.elem(shift) - s) if traces else None
        classes.append(TraceClass(factor, e, s, character,
                                  INNER if character == 1 else OUTER, t))
    k = sum(1 for c in classes if c.regularity == INNER)
    l = len(classes) - k
    half_phi = euler_phi(n) // 2
    if k + l != half_phi // e:
        raise IntegrityError(f"class count {k + l} != phi(n)/2e for ({m},{n},{p})")
    closed_form = half_phi // fd.d if half_phi % fd.d == 0 else -1
    record = CensusRecord(
        m, n, p, fd, genus(m, n, fd.q), tuple(classes), k, l,
        _parity(m, n, p, fd.d, l),
        closed_form, closed_form != k + l)
    return record


def _chi_of_integer(value: int, p: int, d: int) -> int:
    """Character of an integer inside F_{p^d} (it lives in the prime field)."""
    if p == 2:
        return 1 if value % 2 else 0
    v = value % p
    if v == 0:
        return 0
    if d % 2 == 0:
        return 1
    return 1 if pow(v, (p - 1) // 2, p) == 1 else -1


def _chi_shortcut(n: int, p: int) -> int:
    # section-free restatement of the tabulated chi(b_e) cases; valid for odd
    # n and q = p odd, where every b_e is +-1 or +-2
    sign = 1
    for e in divisors(n):
        if moebius(n // e) == 0:
            continue
        r = e % 12
        if r in (7, 11):
            ce = 1
        elif r in (1, 5):
            ce = 1 if p % 4 == 1 else -1
        elif r == 9:
            ce = 1 if p % 8 in (1, 7) else -1
        else:  # r == 3, the chi(-2) case
            ce = 1 if p % 8 in (1, 3) else -1
        sign *= ce
    return sign


def _parity(m: int, n: int, p: int, d: int, l: int) -> ParityVerdict:
    observed = "even" if l % 2 == 0 else "odd"
    if m != 3 or d % 2 == 0:
        return ParityVerdict(False, None, observed, None)
    psi_one = psi(n)(1)
    character = _chi_of_integer(psi_one, p, d)
    if character == 0:
        raise IntegrityError(f"Psi_{n}(1) = {psi_one} vanishes mod {p} on a good prime")
    if d == 1 and n % 2 and p != 2:
        if _chi_shortcut(n, p) != character:
            raise IntegrityError(f"chi(b_e) shortcut disagrees for n={n}, p={p}")
    predicted = "even" if character == 1 else "odd"
    verdict = ParityVerdict(True, predicted, observed, predicted == observed)
    if not verdict.consistent:
        raise IntegrityError(
            f"parity prediction falsified at ({m},{n},{p}): predicted l {predicted}, "
            f"observed l={l}")
    return verdict


def parity_verdict(record: CensusRecord) -> ParityVerdict:
    """The parity check attached to a census record (recomputed on demand)."""
    return _parity(record.m, record.n, record.p, record.field.d, record.l)


def cps_discriminant(a: gf.FieldElem, b: gf.FieldElem,
                     c: gf.FieldElem) -> tuple[gf.FieldElem, int]:
    """-D = 4 + abc - a^2 - b^2 - c^2 for a triple of rotation traces.

    Inner regularity of the corresponding hypermap is equivalent to -D being
    a square in the ambient field; the character is returned alongside.
    """
    if a.ctx != b.ctx or a.ctx != c.ctx:
        raise ValueError("trace elements from mixed field contexts")
    value = a.ctx.elem(4) + a * b * c - a * a - b * b - c * c
    return value, gf.chi(value)


# ---------------------------------------------------------------------------
# matrix witness oracle


@dataclass(frozen=True)
class OracleWitness:
    verdict: str
    degenerate: bool           # the beta = 0, r = v branch was taken
    field_modulus: tuple[int, ...]
    x_matrix: tuple[tuple[int, ...], ...]   # (r, s', u, v) coefficient tuples
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    det_w: tuple[int, ...]


def _proportional(A, B, zero) -> bool:
    # projective equality of 2x2 matrices: all 2x2 cross determinants vanish
    for i in range(4):
        for j in range(i + 1, 4):
            if A[i] * B[j] - A[j] * B[i] != zero:
                return False
    return True


def _conjugation_inverts(w, M, zero) -> bool:
    # w M w^{-1} = M^{-1} projectively, i.e. w*M proportional to adj(M)*w
    wa, wb, wc, wd = w
    a, b, c, d = M
    left = (wa * a + wb * c, wa * b + wb * d, wc * a + wd * c, wc * b + wd * d)
    right = (d * wa - b * wc, d * wb - b * wd, -c * wa + a * wc, -c * wb + a * wd)
    return _proportional(left, right, zero)


def matrix_oracle(n: int, p: int, cls: TraceClass,
                  ambient_d: int | None = None) -> OracleWitness:
    """Re-derive the inner/outer verdict of a type-{3,n} class from matrices.

    Constructs z of order 2 and x of order 3 in SL(2) with tr(zx) = t, then
    the involution w = [[alpha, beta], [beta, -alpha]] that inverts both by
    conjugation, and reads the verdict off det w = -alpha^2 - beta^2.  The
    conjugation identities are checked literally, and the result must agree
    with the character criterion.
    """
    if p == 2:
        raise Inadmissible("the witness construction needs invertible 2")
    d = ambient_d if ambient_d is not None else field_data(3, n, p).d
    e = cls.e
    base_ctx = gf.FieldCtx(p, cls.factor, ambient_d=d, validate=False)
    s_base = base_ctx.gen()
    t = gf.sqrt_in_field(base_ctx.elem(3) - s_base)
    if t is not None:
        K = base_ctx
    else:
        # adjoin t via T^2 = 3 - s: the minimal polynomial of t over F_p is
        # (-1)^e * factor(3 - T^2), irreducible of degree 2e here
        if d % (2 * e):
            raise OracleError(f"trace of class {cls.factor} does not live in F_q")
        comp = IntPoly(cls.factor).compose(IntPoly([3, 0, -1]))
        if e % 2:
            comp = -comp
        K = gf.FieldCtx(p, [c % p for c in comp.coeffs], ambient_d=d, validate=False)
        t = K.gen()
    one, zero = K.one(), K.zero()
    s_val = K.elem(3) - t * t
    if s_val.is_zero():
        raise OracleError("degenerate class with t^2 = 3")
    half = K.elem((p + 1) // 2)
    inv2 = K.elem(2).inverse()

    x_mat = None
    tried = 0
    index = 0
    candidate = half  # try r = 1/2 first so the beta = 0 branch gets exercised
    while tried < 4000:
        r = candidate
        v = one - r
        disc = t * t - K.elem(4) * (one - r + r * r)
        root = gf.sqrt_in_field(disc)
        if root is not None:
            sp = (root - t) * inv2
            u = t + sp
            if r * v - sp * u != one:
                raise IntegrityError("constructed x does not have determinant 1")
            if u - sp != t:
                raise IntegrityError("constructed x has the wrong zx trace")
            x_mat = (r, sp, u, v)
            break
        tried += 1
        candidate = K.element_at(index)
        index += 1
        if candidate == half:
            candidate = K.element_at(index)
            index += 1
    if x_mat is None:
        raise OracleError(f"no solvable x found for class {cls.factor} mod {p}")

    r, sp, u, v = x_mat
    z_mat = (zero, one, -one, zero)
    # x^3 = -I: order 3 in PSL(2,q)
    x2 = _mat_mul(x_mat, x_mat)
    x3 = _mat_mul(x2, x_mat)
    if x3 != (-one, zero, zero, -one):
        raise IntegrityError("x is not of order 3")
    # nonsingularity determinant for the trace triple (0, 1, t): equals 3 - t^2
    nonsing, _ = cps_discriminant(zero, one, u - sp)
    if nonsing != s_val or nonsing.is_zero():
        raise OracleError("nonsingularity determinant check failed")

    alpha = sp + u
    beta_options = [-(r - v), r - v]
    w_mat = None
    for beta in beta_options:
        if alpha.is_zero() and beta.is_zero():
            continue
        cand = (alpha, beta, beta, -alpha)
        if _conjugation_inverts(cand, z_mat, zero) and _conjugation_inverts(cand, x_mat, zero):
            w_mat = cand
            break
    if w_mat is None:
        raise OracleError("no sign choice of w inverts both z and x")
    alpha, beta = w_mat[0], w_mat[1]
    degenerate = beta.is_zero()
    det_w = -(alpha * alpha) - beta * beta
    if det_w.is_zero():
        raise OracleError("w is singular")
    verdict = INNER if gf.chi(det_w) == 1 else OUTER
    if degenerate:
        # in this branch 3 - t^2 is a square iff -1 is
        if gf.chi(s_val) != gf.chi(-one):
            raise IntegrityError("degenerate-branch rule chi(3-t^2) = chi(-1) failed")
    if verdict != cls.regularity:
        raise IntegrityError(
            f"matrix oracle verdict {verdict} contradicts character verdict "
            f"{cls.regularity} for factor {cls.factor} mod {p}")
    return OracleWitness(verdict, degenerate, K.modulus, tuple(m.coeffs for m in x_mat),
                         alpha.coeffs, beta.coeffs, det_w.coeffs)


def _mat_mul(A, B):
    a, b, c, d = A
    e, f, g, h = B
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


# ---------------------------------------------------------------------------
# trace-route oracle: recover the s-values from the trace polynomial instead


def route_product(m: int, n: int, p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two routes to the s-value multiset, as polynomial products mod p.

    Left: product over irreducible factors G of Psi_N mod p (N = n or 2n) of
    the minimal polynomial of shift - t^2, with multiplicity deg G / deg M.
    Right: f1 mod p, squared for even n where traces come in +- pairs.
    Both are returned as ascending coefficient tuples for comparison.
    """
    fd = field_data(m, n, p)
    trace_poly = psi(fd.n_modulus)
    factored = gf.reduce_and_factor(trace_poly, p)
    if not factored.squarefree:
        raise BadReduction(f"Psi_{fd.n_modulus} is not squarefree mod {p}")
    shift = _T_SQUARE_SHIFT[m]
    left: tuple[int, ...] = (1,)
    for factor, _ in factored.factors:
        ctx = gf.FieldCtx(p, factor, validate=False)
        troot = ctx.gen()
        s_elem = ctx.elem(shift) - troot * troot
        minpoly = s_elem.min_poly()
        mult = (len(factor) - 1) // (len(minpoly) - 1)
        for _ in range(mult):
            left = gf.poly_mul(left, minpoly, p)
    right: tuple[int, ...] = tuple(gf.reduce_polynomial(s_polynomial(m, n), p))
    if n % 2 == 0:
        right = gf.poly_mul(right, right, p)
    return left, right


# ---------------------------------------------------------------------------
# serialization


def record_to_dict(record: CensusRecord) -> dict:
    return {
        "m": record.m,
        "n": record.n,
        "p": record.p,
        "d": record.field.d,
        "q": str(record.field.q),
        "genus": str(record.genus),
        "classes": [
            {
                "factor": list(c.factor),
                "e": c.e,
                "s": list(c.s.coeffs),
                "chi": c.chi,
                "regularity": c.regularity,
                "t": list(c.t.coeffs) if c.t is not None else None,
            }
            for c in record.classes
        ],
        "k": record.k,
        "l": record.l,
        "parity": {
            "applicable": record.parity.applicable,
            "predicted": record.parity.predicted,
            "observed": record.parity.observed,
            "consistent": record.parity.consistent,
        },
        "closed_form_count": record.closed_form_count,
        "count_flag": record.count_flag,
    }


def record_to_json(record: CensusRecord) -> str:
    return json.dumps(record_to_dict(record), sort_keys=True)


def record_from_json(text: str) -> CensusRecord:
    data = json.loads(text)
    m, n, p = data["m"], data["n"], data["p"]
    fd = field_data(m, n, p)
    if fd.d != data["d"] or str(fd.q) != data["q"]:
        raise ValueError("serialized field data is inconsistent")
    classes = []
    for c in data["classes"]:
        ctx = gf.FieldCtx(p, tuple(c["factor"]), ambient_d=fd.d, validate=False)
        t = ctx.elem(c["t"]) if c["t"] is not None else None
        classes.append(TraceClass(tuple(c["factor"]), c["e"], ctx.elem(c["s"]),
                                  c["chi"], c["regularity"], t))
    parity = ParityVerdict(data["parity"]["applicable"], data["parity"]["predicted"],
                           data["parity"]["observed"], data["parity"]["consistent"])
    return CensusRecord(m, n, p, fd, int(data["genus"]), tuple(classes),
                        data["k"], data["l"], parity,
                        data["closed_form_count"], data["count_flag"])


CSV_CLASS_HEADER = ("m", "n", "p", "d", "q", "genus", "k", "l", "parity_ok",
                    "class_index", "factor", "s", "chi", "regularity")


def record_to_csv_rows(record: CensusRecord) -> list[tuple]:
    parity_ok = "" if record.parity.consistent is None else str(record.parity.consistent)
    rows = []
    for i, c in enumerate(record.classes):
        rows.append((record.m, record.n, record.p, record.field.d, str(record.field.q),
                     str(record.genus), record.k, record.l, parity_ok, i,
                     " ".join(map(str, c.factor)), " ".join(map(str, c.s.coeffs)),
                     c.chi, c.regularity))
    return rows

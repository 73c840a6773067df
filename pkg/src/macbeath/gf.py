"""Finite fields F_p[x]/(g) and polynomial factorization mod p.

Polynomials over F_p are coefficient lists, constant term first, with
coefficients reduced to 0..p-1 and no trailing zeros ([] is the zero
polynomial).  Factorization runs squarefree decomposition, then distinct
degree factorization with a precomputed Frobenius power table, then
Cantor-Zassenhaus equal degree splitting (a trace-map variant in
characteristic 2).  The splitting PRNG is seeded from the input polynomial
and p, so results are reproducible run to run.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import IntegrityError
from .intpoly import IntPoly
from .numkit import is_prime


# ---------------------------------------------------------------------------
# coefficient-list arithmetic over F_p


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def _sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _trim([c % p for c in out])


def _mul_scalar(a, s, p):
    s %= p
    if s == 0:
        return []
    return _trim([c * s % p for c in a])


def _divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    rem = list(a)
    quo = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(rem) - len(b), -1, -1):
        c = rem[i + len(b) - 1] * inv % p
        if c:
            quo[i] = c
            for j, d in enumerate(b):
                rem[i + j] = (rem[i + j] - c * d) % p
    return _trim(quo), _trim(rem)


def _rem(a, b, p):
    # remainder only; avoids building the quotient on the modexp hot path
    lb = len(b)
    if lb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if lb == 1:
        return []
    if len(a) < lb:
        return _trim(list(a))
    inv = 1 if b[-1] == 1 else pow(b[-1], -1, p)
    rem = list(a)
    for i in range(len(rem) - lb, -1, -1):
        c = rem[i + lb - 1]
        if c:
            if inv != 1:
                c = c * inv % p
            for j in range(lb - 1):
                if b[j]:
                    rem[i + j] = (rem[i + j] - c * b[j]) % p
            rem[i + lb - 1] = 0
    return _trim(rem)


def _quo(a, b, p):
    return _divmod(a, b, p)[0]


def _monic(a, p):
    if not a or a[-1] == 1:
        return list(a)
    return _mul_scalar(a, pow(a[-1], -1, p), p)


def _gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _rem(a, b, p)
    return _monic(a, p)


def _deriv(a, p):
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def _pow_mod(base, exp, mod, p):
    result = [1]
    base = _rem(base, mod, p)
    while exp:
        if exp & 1:
            result = _rem(_mul(result, base, p), mod, p)
        base = _rem(_mul(base, base, p), mod, p)
        exp >>= 1
    return result


def _frobenius_base(f, p):
    """Table of x**(p*j) mod f for j < deg f, to apply Frobenius in one pass."""
    xp = _pow_mod([0, 1], p, f, p)
    base = [[1]]
    for _ in range(len(f) - 2):
        base.append(_rem(_mul(base[-1], xp, p), f, p))
    return base


def _frobenius_map(h, base, f, p):
    """h(x)**p mod f given the precomputed power table."""
    out: list[int] = []
    for j, c in enumerate(h):
        if c:
            out = _add(out, _mul_scalar(base[j], c, p), p)
    return out


# ---------------------------------------------------------------------------
# factorization


def _pth_root(f, p):
    # valid only for f in F_p[x**p]; coefficients are fixed by Frobenius
    if any(c for i, c in enumerate(f) if i % p):
        raise IntegrityError("polynomial is not a p-th power")
    return _trim([f[i] for i in range(0, len(f), p)])


def _sqf_list(f, p):
    """Squarefree decomposition of monic f: list of (monic factor, multiplicity)."""
    out = []
    df = _deriv(f, p)
    if not df:
        # f is a polynomial in x**p, i.e. a p-th power of its de-interleaving
        return [(g, m * p) for g, m in _sqf_list(_pth_root(f, p), p)]
    g = _gcd(f, df, p)
    w = _quo(f, g, p)
    i = 1
    while len(w) > 1:
        y = _gcd(w, g, p)
        z = _quo(w, y, p)
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        g = _quo(g, y, p)
    if len(g) > 1:
        # what survives the peeling has every multiplicity divisible by p
        out.extend((h, m * p) for h, m in _sqf_list(_pth_root(g, p), p))
    return out


def _ddf(f, p):
    """Distinct-degree split of monic squarefree f: list of (product, degree)."""
    if len(f) <= 2:
        return [(f, 1)] if len(f) == 2 else []
    out = []
    base = _frobenius_base(f, p)
    h = base[1] if len(base) > 1 else _pow_mod([0, 1], p, f, p)
    i = 1
    while 2 * i <= len(f) - 1:
        g = _gcd(_sub(h, [0, 1], p), f, p)
        if len(g) > 1:
            out.append((g, i))
            f = _quo(f, g, p)
            if len(f) == 1:
                return out
            base = _frobenius_base(f, p)
            h = _rem(h, f, p)
        h = _frobenius_map(h, base, f, p)
        i += 1
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _edf(f, d, p, rng):
    """Split monic squarefree f into its irreducible factors, all of degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = _trim(a)
        if len(a) <= (1 if p > 2 else 0):
            continue
        if p == 2:
            # trace map sum a^(2^i), i < d
            t, cur = list(a), list(a)
            for _ in range(d - 1):
                cur = _pow_mod(cur, 2, f, p)
                t = _add(t, cur, p)
            g = _gcd(t, f, p)
        else:
            g = _gcd(a, f, p)
            if len(g) <= 1:
                b = _pow_mod(a, (p**d - 1) // 2, f, p)
                g = _gcd(_sub(b, [1], p), f, p)
        if 1 < len(g) < len(f):
            return _edf(g, d, p, rng) + _edf(_quo(f, g, p), d, p, rng)


def _splitting_seed(coeffs, p, salt=0):
    seed = (p * 0x9E3779B97F4A7C15 + salt) & (1 << 64) - 1
    for c in coeffs:
        seed = (seed * 1000003 + c + 1) & (1 << 64) - 1
    return seed


def _factor_monic(f, p, salt=0):
    rng = random.Random(_splitting_seed(f, p, salt))
    out = []
    for g, mult in _sqf_list(f, p):
        for h, d in _ddf(g, p):
            for irr in _edf(h, d, p, rng):
                out.append((tuple(irr), mult))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return out


@dataclass(frozen=True)
class FactorList:
    """Complete factorization of a monic reduction mod p."""

    p: int
    lead: int                                # unit factored out of the input
    factors: tuple[tuple[tuple[int, ...], int], ...]  # (monic irreducible, mult)
    squarefree: bool = field(default=True)

    def pattern(self) -> tuple[int, ...]:
        degs: list[int] = []
        for f, m in self.factors:
            degs.extend([len(f) - 1] * m)
        return tuple(sorted(degs))


def poly_mul(a, b, p: int) -> tuple[int, ...]:
    """Product of two coefficient-list polynomials over F_p."""
    return tuple(_mul(list(a), list(b), p))


def reduce_polynomial(f: IntPoly, p: int) -> list[int]:
    """Coefficientwise reduction of f mod p; errors if the leading term dies."""
    coeffs = [c % p for c in f.coeffs]
    if not any(coeffs):
        raise ValueError("polynomial reduces to zero mod p")
    if coeffs[-1] == 0:
        raise ValueError("leading coefficient vanishes mod p; normalize first")
    return coeffs


def reduce_and_factor(f: IntPoly, p: int, salt: int = 0) -> FactorList:
    """Fully factor f mod p into monic irreducibles with multiplicities.

    Output ordering is canonical (degree, then coefficient tuple), and the
    product of the factors is re-checked against the input on every call.
    """
    coeffs = reduce_polynomial(f, p)
    lead = coeffs[-1]
    monic = _monic(coeffs, p)
    factors = _factor_monic(monic, p, salt)
    check = [1]
    for g, m in factors:
        for _ in range(m):
            check = _mul(check, list(g), p)
    if check != monic:
        raise IntegrityError("factor product does not reproduce the input")
    return FactorList(p, lead, tuple(factors),
                      squarefree=all(m == 1 for _, m in factors))


def degree_pattern(f: IntPoly, p: int) -> tuple[int, ...]:
    """Partition of deg f given by the irreducible factor degrees mod p.

    Uses only squarefree decomposition plus distinct-degree factorization,
    so it is cheap enough for million-prime sweeps.
    """
    coeffs = reduce_polynomial(f, p)
    monic = _monic(coeffs, p)
    degs: list[int] = []
    for g, mult in _sqf_list(monic, p):
        for h, d in _ddf(g, p):
            degs.extend([d] * ((len(h) - 1) // d * mult))
    return tuple(sorted(degs))


def find_irreducible(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible of degree e over F_p in the enumeration order."""
    if e == 1:
        return (0, 1)
    index = 0
    while True:
        digits = []
        k = index
        for _ in range(e):
            k, d = divmod(k, p)
            digits.append(d)
        if k:
            raise IntegrityError(f"no irreducible of degree {e} found mod {p}")
        g = digits + [1]
        if is_irreducible(g, p):
            return tuple(g)
        index += 1


def is_irreducible(g: list[int], p: int) -> bool:
    """Rabin irreducibility test for monic g over F_p."""
    e = len(g) - 1
    if e < 1 or g[-1] != 1:
        return False
    if e == 1:
        return True
    x = [0, 1]
    if _pow_mod(x, p**e, g, p) != _rem(x, g, p):
        return False
    rem, r = e, 2
    prime_divs = []
    while r * r <= rem:
        if rem % r == 0:
            prime_divs.append(r)
            while rem % r == 0:
                rem //= r
        r += 1
    if rem > 1:
        prime_divs.append(rem)
    for r in prime_divs:
        h = _sub(_pow_mod(x, p ** (e // r), g, p), x, p)
        if len(_gcd(h, g, p)) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# field contexts and elements


class FieldCtx:
    """The field F_p[x]/(g) of degree e, inside an ambient F_{p^ambient_d}.

    The ambient degree only matters for squareness decisions: chi answers
    "is this a square in the ambient field", which the subfield-parity rule
    reduces to a computation inside F_{p^e}.
    """

    __slots__ = ("p", "modulus", "degree", "ambient_d")

    def __init__(self, p: int, modulus, ambient_d: int | None = None, *,
                 validate: bool = True):
        modulus = tuple(int(c) % p for c in modulus)
        while modulus and modulus[-1] == 0:
            modulus = modulus[:-1]
        e = len(modulus) - 1
        self.p = p
        self.modulus = modulus
        self.degree = e
        self.ambient_d = e if ambient_d is None else ambient_d
        if validate:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if e < 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree >= 1")
            if self.ambient_d % e:
                raise ValueError("field degree must divide the ambient degree")
            if not is_irreducible(list(modulus), p):
                raise ValueError("modulus is not irreducible mod p")

    @property
    def order(self) -> int:
        return self.p**self.degree

    @property
    def ambient_order(self) -> int:
        return self.p**self.ambient_d

    def elem(self, coeffs) -> FieldElem:
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        reduced = _rem([c % self.p for c in coeffs], list(self.modulus), self.p)
        return FieldElem(self, tuple(reduced))

    def zero(self) -> FieldElem:
        return FieldElem(self, ())

    def one(self) -> FieldElem:
        return FieldElem(self, (1,))

    def gen(self) -> FieldElem:
        """The residue class of x."""
        return self.elem([0, 1])

    def element_at(self, index: int) -> FieldElem:
        """Deterministic enumeration of field elements by base-p digits."""
        digits = []
        while index:
            index, d = divmod(index, self.p)
            digits.append(d)
        return self.elem(digits)

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.p == other.p
                and self.modulus == other.modulus
                and self.ambient_d == other.ambient_d)

    def __hash__(self):
        return hash((self.p, self.modulus, self.ambient_d))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, modulus={list(self.modulus)}, ambient_d={self.ambient_d})"


class FieldElem:
    """A residue class in a FieldCtx; immutable value semantics."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def _wrap(self, coeffs) -> FieldElem:
        return FieldElem(self.ctx, tuple(coeffs))

    def _check(self, other: FieldElem):
        if self.ctx != other.ctx:
            raise ValueError("elements from different field contexts")

    def __add__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return self._wrap(_add(list(self.coeffs), list(other.coeffs), self.ctx.p))

    def __sub__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return self._wrap(_sub(list(self.coeffs), list(other.coeffs), self.ctx.p))

    def __neg__(self) -> FieldElem:
        return self._wrap(_mul_scalar(list(self.coeffs), -1, self.ctx.p))

    def __mul__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        prod = _mul(list(self.coeffs), list(other.coeffs), self.ctx.p)
        return self._wrap(_rem(prod, list(self.ctx.modulus), self.ctx.p))

    def inverse(self) -> FieldElem:
        if self.is_zero():
            raise ZeroDivisionError("inverting zero field element")
        # extended Euclid in F_p[x]
        p = self.ctx.p
        a, b = list(self.coeffs), list(self.ctx.modulus)
        s0, s1 = [1], []
        while b:
            q, r = _divmod(a, b, p)
            a, b = b, r
            s0, s1 = s1, _sub(s0, _mul(q, s1, p), p)
        inv_lead = pow(a[-1], -1, p)
        return self._wrap(_rem(_mul_scalar(s0, inv_lead, p), list(self.ctx.modulus), p))

    def __truediv__(self, other: FieldElem) -> FieldElem:
        return self * other.inverse()

    def __pow__(self, exp: int) -> FieldElem:
        if exp < 0:
            return self.inverse() ** (-exp)
        out = _pow_mod(list(self.coeffs), exp, list(self.ctx.modulus), self.ctx.p)
        return self._wrap(out)

    def frobenius(self) -> FieldElem:
        return self**self.ctx.p

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not in the prime field")
        return self.coeffs[0] if self.coeffs else 0

    def min_poly(self) -> tuple[int, ...]:
        """Minimal polynomial over F_p, ascending coefficients, monic."""
        conjugates = [self]
        cur = self.frobenius()
        while cur != self:
            conjugates.append(cur)
            cur = cur.frobenius()
        poly = [self.ctx.one()]
        for c in conjugates:
            nxt = [self.ctx.zero()] * (len(poly) + 1)
            for i, coeff in enumerate(poly):
                nxt[i + 1] = nxt[i + 1] + coeff
                nxt[i] = nxt[i] - c * coeff
            poly = nxt
        out = []
        for coeff in poly:
            if not coeff.is_constant():
                raise IntegrityError("minimal polynomial coefficients left the prime field")
            out.append(coeff.constant_value())
        return tuple(out)

    def __eq__(self, other):
        return (isinstance(other, FieldElem) and self.ctx == other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        return f"FieldElem({list(self.coeffs)} over {self.ctx!r})"


def _norm_to_prime(a: FieldElem) -> int:
    """Norm from F_{p^e} down to F_p: the resultant of the (monic) modulus
    with a representative of a, by a Euclidean remainder sequence."""
    p = a.ctx.p
    f = list(a.ctx.modulus)
    g = list(a.coeffs)
    res = 1
    while True:
        if not g:
            return 0
        if len(g) == 1:
            return res * pow(g[0], len(f) - 1, p) % p
        r = _rem(f, g, p)
        if ((len(f) - 1) * (len(g) - 1)) % 2:
            res = -res
        if g[-1] != 1:
            res = res * pow(g[-1], (len(f) - 1) - max(len(r) - 1, 0), p)
        res %= p
        f, g = g, r


def _euler_sign(a: FieldElem) -> int:
    """Character of a in its own field F_{p^e}, via the norm to F_p.

    chi_{p^e}(a) = chi_p(Norm(a)) since a^((q-1)/2) = Norm(a)^((p-1)/2).
    """
    p = a.ctx.p
    if a.ctx.degree == 1:
        v = pow(a.coeffs[0], (p - 1) // 2, p)
        return 1 if v == 1 else -1
    norm = _norm_to_prime(a)
    if norm == 0:
        raise IntegrityError("norm of a nonzero field element vanished")
    return 1 if pow(norm, (p - 1) // 2, p) == 1 else -1


def chi(a: FieldElem) -> int:
    """Quadratic residue character of the AMBIENT field F_{p^ambient_d}.

    For a in the subfield F_{p^e}: decided by the Euler criterion inside
    F_{p^e} when ambient_d/e is odd; every nonzero subfield element is an
    ambient square when ambient_d/e is even.  In characteristic 2 every
    element is a square.
    """
    if a.is_zero():
        return 0
    ctx = a.ctx
    if ctx.p == 2:
        return 1
    if (ctx.ambient_d // ctx.degree) % 2 == 0:
        return 1
    return _euler_sign(a)


def sqrt_in_field(a: FieldElem) -> FieldElem | None:
    """A square root of a inside its own field F_{p^e}, or None.

    Note chi may still be +1 when this returns None: the root then lives only
    in the larger ambient field and is not represented here.  The returned
    root is the lexicographically smaller of the pair +-r.
    """
    ctx = a.ctx
    if a.is_zero():
        return a
    if ctx.p == 2:
        return a ** (2 ** (ctx.degree - 1))
    if _euler_sign(a) != 1:
        return None
    q = ctx.order
    if q % 4 == 3:
        r = a ** ((q + 1) // 4)
    else:
        r = _tonelli_shanks(a)
    if (r * r) != a:
        raise IntegrityError("square root verification failed")
    return min(r, -r, key=lambda e: e.coeffs)


def _tonelli_shanks(a: FieldElem) -> FieldElem:
    ctx = a.ctx
    q = ctx.order
    big_q, s = q - 1, 0
    while big_q % 2 == 0:
        big_q //= 2
        s += 1
    index = 2
    while True:
        z = ctx.element_at(index)
        if not z.is_zero() and _euler_sign(z) == -1:
            break
        index += 1
    c = z**big_q
    r = a ** ((big_q + 1) // 2)
    t = a**big_q
    m = s
    one = ctx.one()
    while t != one:
        i, temp = 0, t
        while temp != one:
            temp = temp * temp
            i += 1
            if i == m:
                raise IntegrityError("Tonelli-Shanks walked past the 2-part order")
        b = c ** (1 << (m - i - 1))
        r = r * b
        t = t * b * b
        c = b * b
        m = i
    return r

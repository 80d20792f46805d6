"""Exact arithmetic over Q(zeta_N)(q, u, w).

Every scalar in the engine lives in the fraction field of Laurent
polynomials in three invertible variables q, u, w with coefficients in the
cyclotomic field Q(zeta_N).  The variables carry the highest weight:
u = q^(lambda,alpha) and w = q^(lambda,beta), so weight-dependent
q-exponentials become Laurent monomials and divisibility questions become
polynomial ones.

The default cyclotomic order is 12, which contains +-1, +-i, zeta_3 and
zeta_6 — all root-of-unity values the torus-point tables need.
"""

from __future__ import annotations

import random as _random
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, HalvingError, PoleError

__all__ = [
    "CyclotomicField",
    "Cyclotomic",
    "LaurentScalar",
    "ExactScalar",
    "ExponentForm",
    "field",
    "ring",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# dense rational polynomial helpers (coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    out = [_ZERO] * (len(p) + len(q) - 1) if p and q else []
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod(p, q):
    p = list(p)
    qd = len(q) - 1
    lead = q[-1]
    quo = [_ZERO] * max(len(p) - qd, 0)
    while len(p) - 1 >= qd and p:
        c = p[-1] / lead
        k = len(p) - 1 - qd
        quo[k] = c
        for i, b in enumerate(q):
            p[k + i] -= c * b
        _poly_trim(p)
    return quo, p


@lru_cache(maxsize=None)
def _cyclotomic_poly(n):
    """Coefficients of the n-th cyclotomic polynomial over Q."""
    p = [-_ONE] + [_ZERO] * (n - 1) + [_ONE]  # z^n - 1
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(p, _cyclotomic_poly(d))
            assert not r
            p = q
    return tuple(p)


class CyclotomicField:
    """Q(zeta_N) presented as Q[z]/(Phi_N(z))."""

    _cache = {}

    def __new__(cls, order=12):
        if order in cls._cache:
            return cls._cache[order]
        self = super().__new__(cls)
        self.order = order
        self.modulus = list(_cyclotomic_poly(order))
        self.degree = len(self.modulus) - 1
        # reduction rows: z^(degree+i) expressed in the power basis
        rows = []
        top = [-c / self.modulus[-1] for c in self.modulus[:-1]]
        rows.append(tuple(top))
        for _ in range(self.degree - 1):
            prev = rows[-1]
            shifted = [_ZERO] + list(prev[:-1])
            carry = prev[-1]
            if carry:
                shifted = [a + carry * b for a, b in zip(shifted, top)]
            rows.append(tuple(shifted))
        self._red = rows
        self.zero = Cyclotomic(self, (_ZERO,) * self.degree)
        self.one = Cyclotomic(self, (_ONE,) + (_ZERO,) * (self.degree - 1))
        self.zeta = self.zeta_power(1)
        cls._cache[order] = self
        return self

    def from_rational(self, r):
        r = Fraction(r)
        return Cyclotomic(self, (r,) + (_ZERO,) * (self.degree - 1))

    def zeta_power(self, k):
        """zeta_N^k as a field element."""
        k %= self.order
        coeffs = [_ZERO] * self.degree
        if k < self.degree:
            coeffs[k] = _ONE
            return Cyclotomic(self, tuple(coeffs))
        # reduce z^k
        vec = [_ZERO] * self.degree
        vec[self.degree - 1] = _ONE
        for _ in range(k - self.degree + 1):
            carry = vec[-1]
            vec = [_ZERO] + vec[:-1]
            if carry:
                vec = [a + carry * b for a, b in zip(vec, self._red[0])]
        return Cyclotomic(self, tuple(vec))

    def reduce(self, coeffs):
        """Reduce a coefficient list of length <= 2*degree-1."""
        d = self.degree
        base = list(coeffs[:d]) + [_ZERO] * max(0, d - len(coeffs))
        for i, c in enumerate(coeffs[d:]):
            if c:
                row = self._red[i]
                for j in range(d):
                    if row[j]:
                        base[j] += c * row[j]
        return Cyclotomic(self, tuple(base))

    def __repr__(self):
        return f"CyclotomicField({self.order})"


class Cyclotomic:
    """An element of Q(zeta_N), immutable."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- predicates ---------------------------------------------------------
    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        return Cyclotomic(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self._coerce(other)
        return Cyclotomic(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Cyclotomic(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        # fast paths: rational factors
        if all(c == 0 for c in a[1:]):
            r = a[0]
            if r == 0:
                return self.field.zero
            return Cyclotomic(self.field, tuple(r * c for c in b))
        if all(c == 0 for c in b[1:]):
            r = b[0]
            if r == 0:
                return self.field.zero
            return Cyclotomic(self.field, tuple(r * c for c in a))
        n = len(a)
        conv = [_ZERO] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return self.field.reduce(conv)

    def inverse(self):
        """Field inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero cyclotomic")
        if self.is_rational():
            return self.field.from_rational(1 / self.coeffs[0])
        r0, r1 = list(self.field.modulus), _poly_trim(list(self.coeffs))
        s0, s1 = [], [_ONE]
        while True:
            q, r = _poly_divmod(r0, r1)
            if not r:
                break
            s = [a - b for a, b in zip(s0 + [_ZERO] * max(0, len(s1) + len(q) - 1 - len(s0)),
                                       _poly_mul(q, s1) + [_ZERO] * max(0, len(s0) - (len(s1) + len(q) - 1)))]
            r0, r1, s0, s1 = r1, r, s1, _poly_trim(s)
        # r1 is the gcd: a nonzero constant since Phi_N is irreducible
        assert len(r1) == 1
        c = 1 / r1[0]
        inv = [a * c for a in s1]
        return self.field.reduce(inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            return other
        return self.field.from_rational(other)

    __radd__ = __add__
    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return isinstance(other, Cyclotomic) and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"Cyclotomic({self})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                sign = "-" if c < 0 else ""
                var = "z" if i == 1 else f"z^{i}"
                terms.append(f"{sign}{mag}{var}" if not terms else f"{'+' if c > 0 else '-'} {mag}{var}")
        if not terms:
            return "0"
        return " ".join(terms)

    def sqrt(self):
        """A square root within the field, or None.

        Handles the root-of-unity-times-rational values the torus tables
        produce: tries zeta^j * r for rational square roots r.
        """
        if self.is_zero():
            return self.field.zero
        for j in range(self.field.order):
            cand = self.field.zeta_power(j)
            quot = self * cand.inverse() * cand.inverse()
            if quot.is_rational():
                r = quot.rational_value()
                if r > 0:
                    num, den = r.numerator, r.denominator
                    sn, sd = _isqrt_exact(num), _isqrt_exact(den)
                    if sn is not None and sd is not None:
                        return cand * Fraction(sn, sd)
        return None


def _isqrt_exact(n):
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


# ---------------------------------------------------------------------------
# Laurent polynomials in (q, u, w)
# ---------------------------------------------------------------------------

NVARS = 3
VAR_NAMES = ("q", "u", "w")


class LaurentScalar:
    """A Laurent polynomial: finitely supported map (a,b,c) -> Cyclotomic.

    The exponent triple (a, b, c) encodes the monomial q^a u^b w^c.
    Zero coefficients are never stored.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------------
    @classmethod
    def monomial(cls, field, exps, coeff=None):
        c = field.one if coeff is None else coeff
        if isinstance(c, (int, Fraction)):
            c = field.from_rational(c)
        if c.is_zero():
            return cls(field, {})
        return cls(field, {tuple(exps): c})

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def one_(cls, field):
        return cls(field, {(0, 0, 0): field.one})

    # -- predicates ---------------------------------------------------------
    def is_zero(self):
        return not self.coeffs

    def is_monomial(self):
        return len(self.coeffs) == 1

    def is_one(self):
        if len(self.coeffs) != 1:
            return False
        ((e, c),) = self.coeffs.items()
        return e == (0, 0, 0) and c == 1

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return LaurentScalar(self.field, out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            if s is None:
                out[e] = -c
            else:
                s = s - c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return LaurentScalar(self.field, out)

    def __neg__(self):
        return LaurentScalar(self.field, {e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            if isinstance(other, (int, Fraction)):
                other = self.field.from_rational(other)
            if other.is_zero():
                return LaurentScalar(self.field, {})
            return LaurentScalar(self.field, {e: c * other for e, c in self.coeffs.items()})
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LaurentScalar(self.field, {})
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                c = c1 * c2
                s = out.get(e)
                if s is None:
                    out[e] = c
                else:
                    s = s + c
                    if s.is_zero():
                        del out[e]
                    else:
                        out[e] = s
        return LaurentScalar(self.field, out)

    __rmul__ = __mul__

    def shift(self, exps):
        a, b, c = exps
        return LaurentScalar(self.field, {(e[0] + a, e[1] + b, e[2] + c): v for e, v in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, LaurentScalar) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # -- structure ----------------------------------------------------------
    def min_exponents(self):
        its = iter(self.coeffs)
        first = next(its)
        lo = list(first)
        for e in its:
            for i in range(NVARS):
                if e[i] < lo[i]:
                    lo[i] = e[i]
        return tuple(lo)

    def leading_key(self):
        return max(self.coeffs)

    def leading_coeff(self):
        return self.coeffs[self.leading_key()]

    def degrees(self, var):
        exps = [e[var] for e in self.coeffs]
        return min(exps), max(exps)

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentScalar({self})"

    def substitute(self, images):
        """Ring homomorphism sending variable i to ExactScalar images[i].

        images: dict var-index -> ExactScalar; missing variables map to
        themselves.
        """
        ring_ = ExactScalar
        field = self.field
        base = {}
        for i in range(NVARS):
            if i not in images:
                mono = [0, 0, 0]
                mono[i] = 1
                base[i] = ring_.from_laurent(LaurentScalar.monomial(field, tuple(mono)))
            else:
                base[i] = images[i]
        out = ring_.zero_(field)
        pow_cache = {}

        def power(i, n):
            key = (i, n)
            if key not in pow_cache:
                v = base[i]
                if n < 0:
                    v = v.inverse()
                    n = -n
                acc = ring_.one(field)
                for _ in range(n):
                    acc = acc * v
                pow_cache[key] = acc
            return pow_cache[key]

        for e, c in self.coeffs.items():
            term = ring_.from_laurent(LaurentScalar.monomial(field, (0, 0, 0), c))
            for i in range(NVARS):
                if e[i]:
                    term = term * power(i, e[i])
            out = out + term
        return out


def format_laurent(p):
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p.coeffs):
        c = p.coeffs[e]
        mono = []
        for name, k in zip(VAR_NAMES, e):
            if k == 1:
                mono.append(name)
            elif k != 0:
                mono.append(f"{name}^{k}")
        cs = str(c)
        if ("+" in cs[1:]) or ("- " in cs) or (" " in cs):
            cs = f"({cs})"
        parts.append(f"{cs} {' '.join(mono)}".strip() if mono else cs)
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# gcd machinery (multivariate, primitive PRS over the cyclotomic field)
# ---------------------------------------------------------------------------

def _as_nested(coeffs, var):
    """Convert a shifted (non-negative) dict poly to a dense list in `var`
    whose entries are dict polys in the remaining variables."""
    deg = max(e[var] for e in coeffs)
    out = [dict() for _ in range(deg + 1)]
    for e, c in coeffs.items():
        rest = e[:var] + e[var + 1:]
        out[e[var]][rest] = c
    return out


def _from_nested(levels, var):
    out = {}
    for k, d in enumerate(levels):
        for rest, c in d.items():
            e = rest[:var] + (k,) + rest[var:]
            out[e] = c
    return out


def _dict_is_zero(d):
    return not d


def _dict_mul(a, b, field):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            c = c1 * c2
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
    return out


def _dict_sub(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = -c
        else:
            s = s - c
            if s.is_zero():
                del out[e]
            else:
                out[e] = s
    return out


def _dict_scale(a, c):
    if c.is_zero():
        return {}
    return {e: v * c for e, v in a.items()}


def _dict_exact_div(num, den, field):
    """Exact division of multivariate non-negative dict polys; None if inexact."""
    if not num:
        return {}
    if len(den) == 1:
        ((e0, c0),) = den.items()
        inv = c0.inverse()
        out = {}
        for e, c in num.items():
            t = tuple(x - y for x, y in zip(e, e0))
            if any(x < 0 for x in t):
                return None
            out[t] = c * inv
        return out
    rem = dict(num)
    quo = {}
    lead = max(den)
    lead_c_inv = den[lead].inverse()
    while rem:
        e = max(rem)
        t = tuple(x - y for x, y in zip(e, lead))
        if any(x < 0 for x in t):
            return None
        c = rem[e] * lead_c_inv
        quo[t] = c
        rem = _dict_sub(rem, _dict_mul({t: c}, den, field))
    return quo


def _eval_univariate(coeffs, var, values, field):
    """Evaluate all variables except `var` at rational values.

    values: a full tuple of Fractions, entry at `var` ignored.
    Returns a dense Cyclotomic coefficient list in `var`.
    """
    deg = max(e[var] for e in coeffs)
    out = [field.zero] * (deg + 1)
    for e, c in coeffs.items():
        scale = _ONE
        for i, v in enumerate(values):
            if i != var and e[i]:
                scale *= v ** e[i]
        if scale:
            out[e[var]] = out[e[var]] + c * scale
    while out and out[-1].is_zero():
        out.pop()
    return out


def _euclid_univariate(a, b, field):
    """Monic gcd of dense Cyclotomic coefficient lists."""
    while b:
        inv = b[-1].inverse()
        bm = [c * inv for c in b]
        r = list(a)
        while len(r) >= len(bm):
            lead = r[-1]
            if not lead.is_zero():
                off = len(r) - len(bm)
                for i, c in enumerate(bm):
                    r[off + i] = r[off + i] - lead * c
            r.pop()
            while r and r[-1].is_zero():
                r.pop()
        a, b = bm, r
    if a:
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def _gcd_dict(a, b, field):
    """GCD of multivariate non-negative dict polys over Q(zeta), monic-lead."""
    if not a:
        return _monic(b, field)
    if not b:
        return _monic(a, field)
    nvars = len(next(iter(a)))
    if nvars == 0:
        return {(): field.one}
    if len(a) == 1 or len(b) == 1:
        # monomial gcd: a monomial divides a polynomial iff it divides
        # every term
        lo = None
        for d in (a, b):
            m = [min(e[i] for e in d) for i in range(nvars)]
            lo = m if lo is None else [min(x, y) for x, y in zip(lo, m)]
        return {tuple(lo): field.one}

    degs_a = [max(e[i] for e in a) for i in range(nvars)]
    degs_b = [max(e[i] for e in b) for i in range(nvars)]

    # variables absent from one side cannot occur in the gcd: replace the
    # other side by its content with respect to that variable
    for i in range(nvars):
        if degs_a[i] == 0 and degs_b[i] > 0:
            return _gcd_dict(a, _content(_as_nested_keep(b, i), field), field)
        if degs_b[i] == 0 and degs_a[i] > 0:
            return _gcd_dict(_content(_as_nested_keep(a, i), field), b, field)

    active = [i for i in range(nvars) if degs_a[i] > 0]
    if not active:
        return {(0,) * nvars: field.one}

    if len(active) == 1:
        var = active[0]
        # dense univariate gcd (coefficients of other vars are constants here)
        fa = _as_nested(a, var)
        fb = _as_nested(b, var)
        da = [next(iter(d.values())) if d else field.zero for d in fa]
        db = [next(iter(d.values())) if d else field.zero for d in fb]
        g = _euclid_univariate(da, db, field)
        rest = (0,) * (nvars - 1)
        out = {}
        for k, c in enumerate(g):
            if not c.is_zero():
                out[rest[:var] + (k,) + rest[var:]] = c
        return out

    # evaluation shortcut: if a specialization with non-vanishing leading
    # coefficient gives a degree-0 univariate gcd, the main variable cannot
    # occur in the gcd at all, which removes it deterministically
    rng = _random.Random(0x5EED)
    order = sorted(active, key=lambda i: min(degs_a[i], degs_b[i]))
    for var in order:
        fa = _as_nested(a, var)
        lead = fa[-1]
        for _ in range(6):
            values = tuple(Fraction(rng.randint(2, 19)) for _ in range(nvars))
            # the shortcut is only sound when the leading coefficient of the
            # larger input survives the specialization
            lead_c = field.zero
            for e, c in lead.items():
                s = _ONE
                for i, v in enumerate(values[:var] + values[var + 1:]):
                    if e[i]:
                        s *= v ** e[i]
                lead_c = lead_c + c * s
            if lead_c.is_zero():
                continue
            ia = _eval_univariate(a, var, values, field)
            ib = _eval_univariate(b, var, values, field)
            if not ia or not ib:
                continue
            g = _euclid_univariate(ia, ib, field)
            if len(g) == 1:
                ca = _content(_as_nested_keep(a, var), field)
                cb = _content(_as_nested_keep(b, var), field)
                return _monic(_gcd_dict(ca, cb, field), field)
            break

    # fallback: primitive PRS in the lowest-degree active variable
    var = order[0]
    fa = _as_nested(a, var)
    fb = _as_nested(b, var)
    ca = _content(fa, field)
    cb = _content(fb, field)
    fa = [_dict_exact_div(c, ca, field) if c else {} for c in fa]
    fb = [_dict_exact_div(c, cb, field) if c else {} for c in fb]
    cont = _gcd_dict(ca, cb, field)
    g = _prs_gcd(fa, fb, field)
    out = {}
    for k, d in enumerate(g):
        for rest, c in _dict_mul(d, cont, field).items():
            e = rest[:var] + (k,) + rest[var:]
            out[e] = c
    return _monic(out, field)


def _as_nested_keep(coeffs, var):
    """Content of `coeffs` with respect to `var`, keeping full arity keys
    with a zero in the `var` slot (so recursion stays at fixed arity)."""
    levels = {}
    for e, c in coeffs.items():
        rest = e[:var] + (0,) + e[var + 1:]
        levels.setdefault(e[var], {})[rest] = c
    return [levels.get(k, {}) for k in range(max(levels) + 1)]


def _monic(d, field):
    if not d:
        return d
    c = d[max(d)]
    if c == 1:
        return d
    inv = c.inverse()
    return {e: v * inv for e, v in d.items()}


def _content(levels, field):
    cont = {}
    for d in levels:
        if d:
            cont = _gcd_dict(cont, d, field)
            if len(cont) == 1 and not any(max(cont)):
                break
    return cont


def _primitive(levels, field):
    cont = _content(levels, field)
    return [_dict_exact_div(d, cont, field) if d else {} for d in levels]


def _poly_pseudo_rem(f, g, field):
    """Pseudo-remainder of dense coefficient-dict lists in the main var."""
    f = [dict(d) for d in f]
    dg = len(g) - 1
    lc = g[-1]
    while len(f) - 1 >= dg and any(f):
        while f and _dict_is_zero(f[-1]):
            f.pop()
        if not f or len(f) - 1 < dg:
            break
        df = len(f) - 1
        head = f[-1]
        # f := lc*f - head * x^(df-dg) * g
        f = [_dict_mul(lc, d, field) for d in f]
        shift = df - dg
        for i, d in enumerate(g):
            f[shift + i] = _dict_sub(f[shift + i], _dict_mul(head, d, field))
        while f and _dict_is_zero(f[-1]):
            f.pop()
    return f


def _prs_gcd(f, g, field):
    """Primitive PRS gcd for dense lists with dict-poly coefficients."""
    while f and _dict_is_zero(f[-1]):
        f.pop()
    while g and _dict_is_zero(g[-1]):
        g.pop()
    if not f:
        return g
    if not g:
        return f
    if len(f) < len(g):
        f, g = g, f
    f = _primitive(f, field)
    g = _primitive(g, field)
    while True:
        r = _poly_pseudo_rem(f, g, field)
        if not any(r):
            return g
        r = _primitive(r, field)
        f, g = g, r
        if len(g) == 1:
            return [{(0,) * len(next(iter(g[0]))): field.one}] if g[0] else g


def laurent_gcd(p1, p2):
    """GCD of two Laurent polynomials, defined up to a unit monomial.

    The result is a genuine (non-negative exponent) polynomial with monic
    leading coefficient and zero minimum exponents.
    """
    field = p1.field
    if p1.is_zero():
        return _laurent_normal_poly(p2)
    if p2.is_zero():
        return _laurent_normal_poly(p1)
    a = _laurent_normal_poly(p1).coeffs
    b = _laurent_normal_poly(p2).coeffs
    g = _gcd_dict(a, b, field)
    out = LaurentScalar(field, g)
    return _laurent_normal_poly(out)


def _laurent_normal_poly(p):
    """Shift so that minimum exponents are zero (a unit-monomial move)."""
    if p.is_zero():
        return p
    lo = p.min_exponents()
    if any(lo):
        p = p.shift(tuple(-x for x in lo))
    return p


def laurent_exact_div(num, den):
    """num/den when den divides num in the Laurent ring, else None."""
    if den.is_zero():
        raise DivisionByZero("division by zero Laurent scalar")
    if num.is_zero():
        return LaurentScalar(num.field, {})
    lo_n = num.min_exponents()
    lo_d = den.min_exponents()
    a = num.shift(tuple(-x for x in lo_n)).coeffs
    b = den.shift(tuple(-x for x in lo_d)).coeffs
    q = _dict_exact_div(a, b, num.field)
    if q is None:
        return None
    shift = tuple(x - y for x, y in zip(lo_n, lo_d))
    return LaurentScalar(num.field, q).shift(shift)


# ---------------------------------------------------------------------------
# the fraction field
# ---------------------------------------------------------------------------

class ExactScalar:
    """Element of Q(zeta_N)(q, u, w), stored as a reduced fraction.

    The canonical form makes equality structural:
      * numerator and denominator share no polynomial factor,
      * the denominator has zero minimum exponents and monic leading
        coefficient (leading = maximal exponent triple in tuple order).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den, *, _normalized=False):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if not _normalized:
            num, den = _normalize_fraction(num, den)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_laurent(cls, p):
        return cls(p, LaurentScalar.one_(p.field), _normalized=True)

    @classmethod
    def from_rational(cls, field, r):
        return cls.from_laurent(LaurentScalar.monomial(field, (0, 0, 0), Fraction(r)))

    @classmethod
    def monomial(cls, field, exps, coeff=None):
        return cls.from_laurent(LaurentScalar.monomial(field, exps, coeff))

    @classmethod
    def zero_(cls, field):
        return cls.from_laurent(LaurentScalar.zero(field))

    @classmethod
    def one(cls, field):
        return cls.from_laurent(LaurentScalar.one_(field))

    @property
    def field(self):
        return self.num.field

    # -- predicates ---------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num == self.den

    def is_laurent(self):
        """True when the reduced denominator is a unit monomial."""
        return self.den.is_monomial()

    def as_laurent(self):
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        ((e, c),) = self.den.coeffs.items()
        inv = c.inverse()
        return self.num.shift(tuple(-x for x in e)) * inv

    def is_unit_monomial(self):
        return self.is_laurent() and self.num.is_monomial()

    def is_weight_regular(self):
        """True when the reduced denominator involves q only.

        Coefficients of regularized singular vectors are Laurent polynomial
        in the weight variables u, w but may keep lambda-free q-denominators
        such as powers of (q - q^-1)."""
        return all(e[1] == 0 and e[2] == 0 for e in self.den.coeffs)

    def is_weight_free(self):
        """No dependence on u or w at all."""
        return (all(e[1] == 0 and e[2] == 0 for e in self.num.coeffs)
                and all(e[1] == 0 and e[2] == 0 for e in self.den.coeffs))

    def sqrt(self):
        """Square root of a unit monomial, or None.

        Only monomials c * q^2a u^2b w^2c with c a square in Q(zeta_N) have
        roots in the working field; this is all the torus tables need."""
        if self.is_zero():
            return ExactScalar.zero_(self.field)
        if not self.is_unit_monomial():
            return None
        ((e, c),) = self.as_laurent().coeffs.items()
        if any(x % 2 for x in e):
            return None
        root = c.sqrt()
        if root is None:
            return None
        half = tuple(x // 2 for x in e)
        return ExactScalar.monomial(self.field, half, root)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return ExactScalar(self.num + other.num, self.den)
        return ExactScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return ExactScalar(self.num - other.num, self.den)
        return ExactScalar(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return ExactScalar(-self.num, self.den, _normalized=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero scalar")
        return ExactScalar(self.num * other.den, self.den * other.num)

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return ExactScalar(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        acc = ExactScalar.one(self.field)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def _coerce(self, other):
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, LaurentScalar):
            return ExactScalar.from_laurent(other)
        if isinstance(other, (int, Fraction)):
            return ExactScalar.from_rational(self.field, other)
        if isinstance(other, Cyclotomic):
            return ExactScalar.from_laurent(LaurentScalar.monomial(self.field, (0, 0, 0), other))
        return NotImplemented

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentScalar, Cyclotomic)):
            other = self._coerce(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return format_laurent(self.num)
        return f"({format_laurent(self.num)}) / ({format_laurent(self.den)})"

    def __repr__(self):
        return f"ExactScalar({self})"

    # -- substitution -------------------------------------------------------
    def substitute(self, images):
        """Substitute ExactScalar images for variables {index: value}."""
        num = self.num.substitute(images)
        den = self.den.substitute(images)
        if den.is_zero():
            raise PoleError(f"denominator {self.den} vanishes under substitution",
                            factor=format_laurent(self.den))
        return num / den

    def evaluate(self, u=None, w=None, q=None):
        """Specialize u, w and optionally q; raises PoleError on a vanishing
        denominator."""
        images = {}
        if q is not None:
            images[0] = q if isinstance(q, ExactScalar) else ExactScalar.from_laurent(q)
        if u is not None:
            images[1] = u if isinstance(u, ExactScalar) else ExactScalar.from_laurent(u)
        if w is not None:
            images[2] = w if isinstance(w, ExactScalar) else ExactScalar.from_laurent(w)
        for v in images.values():
            if v.is_zero():
                raise ValueError("substituted values must be invertible")
        return self.substitute(images)


def _normalize_fraction(num, den):
    field = num.field
    if num.is_zero():
        return num, LaurentScalar.one_(field)
    if den.is_monomial():
        ((e, c),) = den.coeffs.items()
        num = num.shift(tuple(-x for x in e)) * c.inverse()
        return num, LaurentScalar.one_(field)
    g = laurent_gcd(num, den)
    if not (g.is_monomial() and not any(g.leading_key())):
        num2 = laurent_exact_div(num, g)
        den2 = laurent_exact_div(den, g)
        # gcd is defined up to a unit; division must succeed
        assert num2 is not None and den2 is not None
        num, den = num2, den2
        if den.is_monomial():
            ((e, c),) = den.coeffs.items()
            num = num.shift(tuple(-x for x in e)) * c.inverse()
            return num, LaurentScalar.one_(field)
    lo = den.min_exponents()
    if any(lo):
        den = den.shift(tuple(-x for x in lo))
        num = num.shift(tuple(-x for x in lo))
    c = den.leading_coeff()
    if c != 1:
        inv = c.inverse()
        den = den * inv
        num = num * inv
    return num, den


# ---------------------------------------------------------------------------
# exponent forms  c0 + c_alpha (lambda,alpha) + c_beta (lambda,beta)
# ---------------------------------------------------------------------------

class ExponentForm:
    """Affine form in the weight pairings, the exponent language of the
    eta/xi tables and eigenvalues."""

    __slots__ = ("c0", "ca", "cb")

    def __init__(self, c0=0, ca=0, cb=0):
        self.c0 = Fraction(c0)
        self.ca = Fraction(ca)
        self.cb = Fraction(cb)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExponentForm(other)
        return ExponentForm(self.c0 + other.c0, self.ca + other.ca, self.cb + other.cb)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExponentForm(other)
        return ExponentForm(self.c0 - other.c0, self.ca - other.ca, self.cb - other.cb)

    def __neg__(self):
        return ExponentForm(-self.c0, -self.ca, -self.cb)

    def __rmul__(self, r):
        r = Fraction(r)
        return ExponentForm(self.c0 * r, self.ca * r, self.cb * r)

    __mul__ = __rmul__

    def halve(self):
        h = ExponentForm(self.c0 / 2, self.ca / 2, self.cb / 2)
        if h.ca.denominator != 1 or h.cb.denominator != 1 or h.c0.denominator != 1:
            raise HalvingError(f"half of {self} is not integral")
        return h

    def is_constant(self):
        return self.ca == 0 and self.cb == 0

    def __eq__(self, other):
        return (isinstance(other, ExponentForm)
                and (self.c0, self.ca, self.cb) == (other.c0, other.ca, other.cb))

    def __hash__(self):
        return hash((self.c0, self.ca, self.cb))

    def __repr__(self):
        return f"ExponentForm({self.c0}, {self.ca}, {self.cb})"

    def __str__(self):
        bits = []
        if self.c0 or (not self.ca and not self.cb):
            bits.append(str(self.c0))
        if self.ca:
            bits.append(f"{self.ca}*(l,a)")
        if self.cb:
            bits.append(f"{self.cb}*(l,b)")
        return " + ".join(bits)


class ScalarRing:
    """Convenience handle bundling the coefficient field with constructors."""

    def __init__(self, order=12):
        self.field = CyclotomicField(order)

    # frequently used elements
    def zero(self):
        return ExactScalar.zero_(self.field)

    def one(self):
        return ExactScalar.one(self.field)

    def rational(self, r):
        return ExactScalar.from_rational(self.field, r)

    def cyclotomic(self, coeffs_or_power):
        if isinstance(coeffs_or_power, int):
            c = self.field.zeta_power(coeffs_or_power)
        else:
            c = coeffs_or_power
        return ExactScalar.monomial(self.field, (0, 0, 0), c)

    def q(self, n=1):
        return ExactScalar.monomial(self.field, (n, 0, 0))

    def u(self, n=1):
        return ExactScalar.monomial(self.field, (0, n, 0))

    def w(self, n=1):
        return ExactScalar.monomial(self.field, (0, 0, n))

    def monomial(self, a, b, c, coeff=None):
        return ExactScalar.monomial(self.field, (a, b, c), coeff)

    # -- the spec operations -------------------------------------------------
    def q_power(self, e):
        """q^e as a Laurent monomial; e must have integral coefficients."""
        if e.c0.denominator != 1 or e.ca.denominator != 1 or e.cb.denominator != 1:
            raise HalvingError(f"exponent form {e} has non-integral coefficients")
        return self.monomial(int(e.c0), int(e.ca), int(e.cb))

    def q_int(self, e):
        """The symmetric q-integer [e]_q = (q^e - q^-e)/(q - q^-1)."""
        num = self.q_power(e) - self.q_power(-e)
        den = self.q(1) - self.q(-1)
        return num / den

    def q_bracket_int(self, n):
        return self.q_int(ExponentForm(n))

    def q_factorial(self, n):
        acc = self.one()
        for k in range(2, n + 1):
            acc = acc * self.q_bracket_int(k)
        return acc

    def divides(self, d, p):
        """True iff p/d is a Laurent polynomial."""
        if d.is_zero():
            raise DivisionByZero("divisibility by zero")
        if p.is_zero():
            return True
        quot = p / d
        return quot.is_laurent()

    def exact_div(self, p, d):
        """p/d asserted to be a Laurent polynomial."""
        quot = p / d
        if not quot.is_laurent():
            from .errors import RegularityError

            raise RegularityError(f"{p} is not divisible by {d}")
        return quot

    def weight_divides(self, d, p):
        """True iff p/d is Laurent polynomial in the weight variables,
        allowing lambda-free q-denominators."""
        if d.is_zero():
            raise DivisionByZero("divisibility by zero")
        if p.is_zero():
            return True
        return (p / d).is_weight_regular()


@lru_cache(maxsize=None)
def ring(order=12):
    return ScalarRing(order)


def field(order=12):
    return CyclotomicField(order)

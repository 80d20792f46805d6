"""Normal forms in the lowering subalgebra of the quantum group.

Words are tuples over the letters "a" (the alpha lowering generator) and
"b" (the raw beta lowering generator; the rescaled one is [3]_q times it).
The quotient by the two q-Serre relations is presented through a PBW basis
built on six root vectors in a convex order; straightening data for every
out-of-order pair is derived once by linear algebra on small word slices
and certified against a Kostant-count dimension check.

An independent faithfulness oracle is provided by a bilinear form on the
free algebra defined through skew derivations; the form's radical is the
Serre ideal, so Gram ranks of basis candidates certify linear independence
without trusting the rewriting machinery.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .config import DEFAULT, Config
from .errors import ContradictionError, DepthError
from .linalg import Span, express
from .rootdata import ALPHA, BETA, POSITIVE_ROOTS, Weight, inner
from .scalars import ExactScalar, ExponentForm, ring

__all__ = [
    "AlgebraElement",
    "WeightSpaceBasis",
    "engine",
    "kostant_count",
    "serre_reduce",
    "weight_space_basis",
    "qcomm",
    "appendix_f",
    "reduce_mod_J",
]

LETTER_ROOT = {"a": ALPHA, "b": BETA}

# root spelling blocks, in the convex order used for PBW monomials
ROOT_SPELLING = ("a", "baaa", "baa", "bbaaa", "ba", "b")


def word_weight(word):
    na = sum(1 for x in word if x == "a")
    nb = len(word) - na
    return Weight(na, nb)


def kostant_count(mu):
    """Number of multisets of positive roots summing to mu (brute force)."""
    if not mu.is_nonnegative():
        return 0
    return _kostant(int(mu.a), int(mu.b), 0)


@lru_cache(maxsize=None)
def _kostant(a, b, idx):
    if a == 0 and b == 0:
        return 1
    if idx >= len(POSITIVE_ROOTS):
        return 0
    r = POSITIVE_ROOTS[idx]
    total = 0
    k = 0
    while k * r.a <= a and k * r.b <= b:
        total += _kostant(a - int(k * r.a), b - int(k * r.b), idx + 1)
        k += 1
    return total


class AlgebraElement:
    """Finite scalar-weighted sum of words in the lowering generators."""

    __slots__ = ("terms", "order")

    def __init__(self, terms, order=12):
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}
        self.order = order

    @classmethod
    def zero(cls, order=12):
        return cls({}, order)

    @classmethod
    def generator(cls, letter, order=12):
        R = ring(order)
        return cls({(letter,): R.one()}, order)

    @classmethod
    def from_word(cls, word, coeff=None, order=12):
        R = ring(order)
        return cls({tuple(word): R.one() if coeff is None else coeff}, order)

    def is_zero(self):
        return not self.terms

    def weight(self):
        """Common weight of all words; None for 0, error if inhomogeneous."""
        wts = {word_weight(w) for w in self.terms}
        if not wts:
            return None
        if len(wts) > 1:
            raise ValueError("inhomogeneous element")
        return wts.pop()

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return AlgebraElement(out, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement({w: -c for w, c in self.terms.items()}, self.order)

    def __mul__(self, other):
        if isinstance(other, ExactScalar):
            return AlgebraElement({w: c * other for w, c in self.terms.items()}, self.order)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return AlgebraElement(out, self.order)

    def __rmul__(self, scalar):
        return self * scalar

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms):
            bits.append(f"({self.terms[w]})*{''.join(w) or '1'}")
        return " + ".join(bits)


def q_commutator(x, y, c):
    """[x, y]_c = x*y - c*y*x."""
    return x * y - (y * x) * c


class WeightSpaceBasis:
    """Normal basis of one weight slice, with reduction onto it."""

    def __init__(self, weight, monomials, engine):
        self.weight = weight
        self.monomials = monomials
        self.normal_words = engine.normal_word_data(weight)[0]
        self._engine = engine
        assert len(set(self.normal_words)) == len(self.normal_words)

    @property
    def dimension(self):
        return len(self.monomials)

    def reduce_word(self, word):
        """The word expressed as an element supported on normal_words."""
        el = AlgebraElement.from_word(word, order=self._engine.order)
        return self._engine.to_normal_element(self._engine.reduce_element(el))

    def pbw_coordinates(self, word):
        """Coordinates of a word in the PBW monomial basis."""
        return self._engine.reduce_word(word)


def spell_monomial(mono):
    return tuple(itertools.chain.from_iterable(
        ROOT_SPELLING[i] * n for i, n in enumerate(mono)))


def monomials_of_weight(mu):
    """PBW exponent tuples of a given weight, lexicographically sorted."""
    out = []
    a, b = int(mu.a), int(mu.b)

    def rec(idx, ra, rb, acc):
        if idx == len(POSITIVE_ROOTS):
            if ra == 0 and rb == 0:
                out.append(tuple(acc))
            return
        r = POSITIVE_ROOTS[idx]
        k = 0
        while k * r.a <= ra and k * r.b <= rb:
            rec(idx + 1, ra - int(k * r.a), rb - int(k * r.b), acc + [k])
            k += 1

    rec(0, a, b, [])
    return sorted(out)


class LoweringEngine:
    """Straightening machinery for one (order, depth) configuration."""

    def __init__(self, config=DEFAULT):
        self.config = config
        self.R = ring(config.cyclotomic_order)
        self.order = config.cyclotomic_order
        self._root_elems = None
        self._straighten = {}
        self._mul_memo = {}
        self._word_memo = {}
        self._pair_memo = {}
        self._serre = None

    # -- Serre relations ------------------------------------------------------
    def serre_elements(self):
        """The two q-Serre relators as free-algebra elements."""
        if self._serre is not None:
            return self._serre
        R = self.R
        fa = AlgebraElement.generator("a", self.order)
        fb = AlgebraElement.generator("b", self.order)
        q3 = R.q(3) + R.q(-3)
        cubic = fb * fb * fa - q3 * (fb * fa * fb) + fa * fb * fb
        c4 = R.q_bracket_int(4)
        c3 = R.q_bracket_int(3) * (R.q(2) + R.q(-2))
        fa2 = fa * fa
        fa3 = fa2 * fa
        fa4 = fa3 * fa
        quartic = (fa4 * fb - c4 * (fa3 * fb * fa) + c3 * (fa2 * fb * fa2)
                   - c4 * (fa * fb * fa3) + fb * fa4)
        self._serre = (cubic, quartic)
        return self._serre

    # -- root vectors ----------------------------------------------------------
    def root_elements(self):
        """Word expansions of the six root vectors, convex order."""
        if self._root_elems is not None:
            return self._root_elems
        R = self.R
        fa = AlgebraElement.generator("a", self.order)
        fb = AlgebraElement.generator("b", self.order)
        f13 = q_commutator(fb, fa, R.q(3))
        f14 = q_commutator(fa, f13, R.q(3))
        f15 = q_commutator(fa, f14, R.q(1))
        f16 = q_commutator(fb, f15, R.q(3))
        self._root_elems = (fa, f15, f14, f16, f13, fb)
        for i, el in enumerate(self._root_elems):
            assert el.weight() == POSITIVE_ROOTS[i]
        return self._root_elems

    # -- ideal slices -----------------------------------------------------------
    def ideal_slice_span(self, mu):
        """Span of all two-sided multiples of the relators in one slice."""
        span = Span()
        for row in self.ideal_slice_rows(mu):
            span.add(row)
        return span

    def ideal_slice_rows(self, mu):
        rows = []
        for rel in self.serre_elements():
            rw = rel.weight()
            rest = mu - rw
            if not rest.is_nonnegative():
                continue
            ra, rb = int(rest.a), int(rest.b)
            for la in range(ra + 1):
                for lb in range(rb + 1):
                    for left in words_of_content(la, lb):
                        for right in words_of_content(ra - la, rb - lb):
                            row = {}
                            for w, c in rel.terms.items():
                                key = left + w + right
                                s = row.get(key)
                                s = c if s is None else s + c
                                if s.is_zero():
                                    row.pop(key, None)
                                else:
                                    row[key] = s
                            rows.append(row)
        return rows

    # -- straightening ----------------------------------------------------------
    def straightening(self, j, i):
        """PBW coordinates of F_j F_i for j > i in convex position.

        Solved once per pair by linear algebra modulo the Serre ideal on
        the weight slice of the product; correctness is certified by the
        Kostant-count rank check of that slice."""
        key = (j, i)
        if key in self._straighten:
            return self._straighten[key]
        roots = POSITIVE_ROOTS
        elems = self.root_elements()
        mu = roots[i] + roots[j]
        target = elems[j] * elems[i]
        monos = monomials_of_weight(mu)
        coeffs = self._express_mod_ideal(target, monos, mu)
        if coeffs is None:
            raise ContradictionError(f"straightening failed for pair {(j, i)}")
        data = {m: co for m, co in zip(monos, coeffs) if not co.is_zero()}
        self._straighten[key] = data
        return data

    def _express_mod_ideal(self, elem, monos, mu):
        span = self.ideal_slice_span(mu)
        cols = []
        for m in monos:
            cols.append(span.reduce(self.monomial_words(m).terms))
        tgt = span.reduce(elem.terms)
        return express(cols, tgt, self.R.field)

    @lru_cache(maxsize=None)
    def _mono_words_cached(self, mono):
        elems = self.root_elements()
        acc = AlgebraElement.from_word((), order=self.order)
        for idx, n in enumerate(mono):
            for _ in range(n):
                acc = acc * elems[idx]
        return acc

    def monomial_words(self, mono):
        """Free-word expansion of a PBW monomial."""
        return self._mono_words_cached(tuple(mono))

    # -- products in PBW coordinates ---------------------------------------------
    def mul_root(self, j, mono):
        """F_j * (PBW monomial) in PBW coordinates."""
        key = (j, mono)
        hit = self._mul_memo.get(key)
        if hit is not None:
            return hit
        first = next((idx for idx, n in enumerate(mono) if n), None)
        if first is None or j <= first:
            out = {_bump(mono, j): self.R.one()}
        else:
            i = first
            rest = _bump(mono, i, -1)
            out = {}
            for corr_m, corr_c in self.straightening(j, i).items():
                for m2, c2 in self.mul_monomial(corr_m, rest).items():
                    _acc(out, m2, c2 * corr_c)
        out = {m: c for m, c in out.items() if not c.is_zero()}
        self._mul_memo[key] = out
        return out

    def mul_monomial(self, m1, m2):
        """(PBW monomial m1) * (PBW monomial m2) in PBW coordinates."""
        letters = []
        for idx, n in enumerate(m1):
            letters.extend([idx] * n)
        out = {m2: self.R.one()}
        for idx in reversed(letters):
            nxt = {}
            for m, c in out.items():
                for m3, c3 in self.mul_root(idx, m).items():
                    _acc(nxt, m3, c * c3)
            out = {m: c for m, c in nxt.items() if not c.is_zero()}
        return out

    # -- word reduction ------------------------------------------------------------
    def reduce_word(self, word):
        """Coordinates of a word in the PBW basis of its weight slice."""
        hit = self._word_memo.get(word)
        if hit is not None:
            return hit
        wt = word_weight(word)
        if wt.a > self.config.depth_a or wt.b > self.config.depth_b:
            raise DepthError(f"word weight {wt} beyond configured depth")
        if not word:
            out = {(0,) * 6: self.R.one()}
        else:
            head = 0 if word[0] == "a" else 5
            out = {}
            for m, c in self.reduce_word(word[1:]).items():
                for m2, c2 in self.mul_root(head, m).items():
                    _acc(out, m2, c * c2)
            out = {m: c for m, c in out.items() if not c.is_zero()}
        self._word_memo[word] = out
        return out

    def reduce_element(self, elem):
        out = {}
        for w, c in elem.terms.items():
            for m, c2 in self.reduce_word(w).items():
                _acc(out, m, c * c2)
        return {m: c for m, c in out.items() if not c.is_zero()}

    @lru_cache(maxsize=None)
    def normal_word_data(self, mu):
        """Chosen word representatives whose classes form a slice basis.

        The canonical monomial spellings are tried first, then the other
        words of the slice; each accepted word must grow the span of
        PBW-coordinate vectors."""
        monos = monomials_of_weight(mu)
        need = len(monos)
        chosen, cols = [], []
        span = Span()
        candidates = [spell_monomial(m) for m in monos]
        candidates += [w for w in words_of_content(int(mu.a), int(mu.b))
                       if w not in set(candidates)]
        for w in candidates:
            if len(chosen) == need:
                break
            coords = self.reduce_word(w)
            if span.add(dict(coords)):
                chosen.append(w)
                cols.append(coords)
        if len(chosen) != need:
            raise ContradictionError(f"no word basis found for slice {mu}")
        return tuple(chosen), tuple(cols)

    def to_normal_element(self, coords):
        """Rewrite PBW coordinates as a combination of normal words."""
        if not coords:
            return AlgebraElement.zero(self.order)
        by_weight = {}
        for m, c in coords.items():
            mu = Weight(sum(n * r.a for n, r in zip(m, POSITIVE_ROOTS)),
                        sum(n * r.b for n, r in zip(m, POSITIVE_ROOTS)))
            by_weight.setdefault(mu, {})[m] = c
        terms = {}
        for mu, part in by_weight.items():
            words, cols = self.normal_word_data(mu)
            coeffs = express(list(cols), part, self.R.field)
            if coeffs is None:
                raise ContradictionError(f"normal word basis failed on {mu}")
            for w, c in zip(words, coeffs):
                if not c.is_zero():
                    terms[w] = c
        return AlgebraElement(terms, self.order)

    # -- the bilinear form (independence oracle) -------------------------------------
    def skew_derivative(self, letter, word):
        """D_letter(word): list of (word, scalar) with
        D_i(x_j w) = delta_ij w + q^{-(a_i,a_j)} x_j D_i(w)."""
        out = []
        scale = self.R.one()
        ri = LETTER_ROOT[letter]
        for pos, x in enumerate(word):
            if x == letter:
                out.append((word[:pos] + word[pos + 1:], scale))
            scale = scale * self.R.q_power(ExponentForm(-inner(ri, LETTER_ROOT[x])))
        return out

    def pairing(self, w1, w2):
        """The bilinear form on words whose radical is the Serre ideal."""
        key = (w1, w2)
        hit = self._pair_memo.get(key)
        if hit is not None:
            return hit
        if not w1:
            val = self.R.one() if not w2 else self.R.zero()
        elif len(w1) != len(w2):
            val = self.R.zero()
        else:
            val = self.R.zero()
            for rest, c in self.skew_derivative(w1[0], w2):
                val = val + c * self.pairing(w1[1:], rest)
        self._pair_memo[key] = val
        return val

    def pairing_elements(self, e1, e2):
        val = self.R.zero()
        for u, cu in e1.terms.items():
            for v, cv in e2.terms.items():
                p = self.pairing(u, v)
                if not p.is_zero():
                    val = val + cu * cv * p
        return val

    # -- certification -----------------------------------------------------------------
    def certify_slice(self, mu, check_ideal=True, check_gram=True):
        """Check the slice against both oracles.

        Returns a report dict; raises nothing (tests assert on the report).
        """
        monos = monomials_of_weight(mu)
        report = {"weight": mu, "dimension": len(monos),
                  "kostant": kostant_count(mu)}
        if check_ideal:
            rows = self.ideal_slice_rows(mu)
            span = Span()
            for r in rows:
                span.add(r)
            words = list(words_of_content(int(mu.a), int(mu.b)))
            report["ideal_rank"] = span.rank()
            report["word_count"] = len(words)
            report["rank_matches"] = span.rank() == len(words) - len(monos)
            # the rewriting must kill every ideal element
            ok = True
            for r in rows:
                red = {}
                for w, c in r.items():
                    for m, c2 in self.reduce_word(w).items():
                        _acc(red, m, c * c2)
                if any(not c.is_zero() for c in red.values()):
                    ok = False
                    break
            report["ideal_reduces_to_zero"] = ok
        if check_gram:
            gram_span = Span()
            for m in monos:
                row = {}
                for m2 in monos:
                    val = self.pairing_elements(self.monomial_words(m),
                                                self.monomial_words(m2))
                    if not val.is_zero():
                        row[m2] = val
                gram_span.add(row)
            report["gram_rank"] = gram_span.rank()
            report["gram_full"] = gram_span.rank() == len(monos)
        return report


def _bump(mono, idx, by=1):
    out = list(mono)
    out[idx] += by
    return tuple(out)


def _acc(out, key, val):
    if val.is_zero():
        return
    s = out.get(key)
    s = val if s is None else s + val
    if s.is_zero():
        out.pop(key, None)
    else:
        out[key] = s


@lru_cache(maxsize=None)
def words_of_content(na, nb):
    """All words with na letters a and nb letters b."""
    if na == 0 and nb == 0:
        return ((),)
    out = []
    if na:
        out.extend(("a",) + w for w in words_of_content(na - 1, nb))
    if nb:
        out.extend(("b",) + w for w in words_of_content(na, nb - 1))
    return tuple(out)


@lru_cache(maxsize=None)
def engine(config=DEFAULT):
    return LoweringEngine(config)


# ---------------------------------------------------------------------------
# module-level operations in the build contract
# ---------------------------------------------------------------------------

def serre_reduce(x, config=DEFAULT):
    """Canonical representative of x supported on normal words."""
    eng = engine(config)
    return eng.to_normal_element(eng.reduce_element(x))


def weight_space_basis(mu, config=DEFAULT):
    if mu.a < 0 or mu.b < 0:
        raise ValueError(f"{mu} is not in the positive cone")
    if mu.a > config.depth_a or mu.b > config.depth_b:
        raise DepthError(f"{mu} beyond configured depth")
    eng = engine(config)
    return WeightSpaceBasis(mu, monomials_of_weight(mu), eng)


def qcomm(a, b, c, config=DEFAULT):
    """[a, b]_c = a b - c b a, serre-reduced."""
    return serre_reduce(q_commutator(a, b, c), config)


# Appendix bracket recipes for the reduced Shapovalov-inverse matrix.
def _build_appendix(order):
    R = ring(order)
    fa = AlgebraElement.generator("a", order)
    fb = AlgebraElement.generator("b", order)
    q = R.q
    three = R.q_bracket_int(3)
    two = R.q_bracket_int(2)
    inv2 = two.inverse()
    inv22 = inv2 * inv2
    C = q_commutator
    f13 = C(fb, fa, q(3))
    f24 = C(fa, fb, q(3))
    entries = {
        (1, 2): fa, (3, 4): fa, (4, 5): fa, (6, 7): fa,
        (2, 3): three * fb, (5, 6): three * fb,
        (1, 3): f13,
        (2, 4): f24,
        (3, 5): (q(-2) * inv2) * C(fa, fa, q(2)),
        (4, 6): C(fb, fa, q(3)),
        (5, 7): C(fa, fb, q(3)),
        (1, 4): (q(-1) * inv2) * C(fa, f13, q(3)),
        (2, 5): inv22 * C(fa, C(fa, fb, q(1)), q(3)),
        (3, 6): inv22 * C(C(fb, fa, q(1)), fa, q(3)),
        (4, 7): (q(-1) * inv2) * C(C(fa, fb, q(3)), fa, q(3)),
        (1, 5): (q(-2) * inv22) * C(fa, C(fa, f13, q(3)), q(1)),
        (2, 6): (q(-3) * inv22) * C(fb, C(fa, C(fa, fb, q(1)), q(3)), q(6)),
        (3, 7): (q(-2) * inv22) * C(C(C(fa, fb, q(3)), fa, q(3)), fa, q(1)),
        (1, 6): (q(-2) * inv22) * C(fb, C(fa, C(fa, f13, q(3)), q(1)), q(3)),
        (2, 7): (q(-2) * inv22) * C(C(C(C(fa, fb, q(3)), fa, q(3)), fa, q(1)), fb, q(3)),
        (1, 7): (q(-2) * inv22) * C(fa, C(fb, C(fa, C(fa, f13, q(3)), q(1)), q(3)), q(1)),
    }
    return entries


@lru_cache(maxsize=None)
def _appendix_table(order):
    return _build_appendix(order)


def appendix_f(i, j, config=DEFAULT):
    """Entry (i, j) of the reduced Shapovalov-inverse matrix F.

    Unlisted entries with i < j are zero; i >= j is out of range here.
    """
    if not (1 <= i < j <= 8 - 1):
        raise IndexError(f"indices out of range: {(i, j)}")
    table = _appendix_table(config.cyclotomic_order)
    el = table.get((i, j))
    if el is None:
        return AlgebraElement.zero(config.cyclotomic_order)
    return el


def reduce_mod_J(x, config=DEFAULT):
    """Image in the quotient by the ideal generated by fa fb = q^-3 fb fa.

    The normal order puts every b left of every a."""
    R = ring(config.cyclotomic_order)
    out = {}
    for w, c in x.terms.items():
        # each adjacent swap ab -> ba contributes q^{-3}
        inversions = 0
        seen_a = 0
        for ch in w:
            if ch == "a":
                seen_a += 1
            else:
                inversions += seen_a
        nb = sum(1 for ch in w if ch == "b")
        na = len(w) - nb
        key = ("b",) * nb + ("a",) * na
        val = c * R.q(-3 * inversions)
        s = out.get(key)
        s = val if s is None else s + val
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    return AlgebraElement(out, config.cyclotomic_order)

"""Verma modules, parabolic quotients, and tensor modules with the
7-dimensional representation.

Vectors in a weight slice of M are dicts {pbw-monomial: scalar}; vectors
of V (x) M are dicts {(i, pbw-monomial): scalar}, where i indexes the
representation basis.  All slices are labelled by the weight drop kappa,
meaning weight lambda - kappa for M and lambda + nu_1 - kappa for the
tensor module.

The highest weight stays symbolic through u = q^(lambda,alpha) and
w = q^(lambda,beta); specialized modules substitute monomial images for u
and w, so every computation is a cheap homomorphic image of the symbolic
one.
"""

from __future__ import annotations

from functools import lru_cache

from .config import DEFAULT
from .errors import DepthError
from .linalg import Span
from .rootdata import ALPHA, BETA, NU, Weight, inner
from .scalars import ExactScalar, ExponentForm, ring
from . import repmin, uqg

__all__ = ["VermaModule", "ParabolicQuotient", "TensorModule", "TensorVector"]

LETTER_WEIGHT = {"a": ALPHA, "b": BETA}
LETTER_INDEX = {"a": 0, "b": 5}
TOP_DROP = NU[0] - NU[6]  # 4a + 2b, the deepest singular-vector drop


def vec_acc(out, key, val):
    if val.is_zero():
        return
    s = out.get(key)
    s = val if s is None else s + val
    if s.is_zero():
        out.pop(key, None)
    else:
        out[key] = s


class SymbolicCore:
    """Shared symbolic raising matrices, computed once per config."""

    def __init__(self, config=DEFAULT):
        self.config = config
        self.eng = uqg.engine(config)
        self.R = ring(config.cyclotomic_order)
        self._raise_memo = {}

    def cartan_bracket(self, letter, kappa):
        """[e_letter, f_letter] eigenvalue on the weight lambda - kappa."""
        R = self.R
        root = LETTER_WEIGHT[letter]
        e = ExponentForm(-inner(kappa, root), root.a, root.b)
        num = R.q_power(e) - R.q_power(-e)
        if letter == "a":
            den = R.q(1) - R.q(-1)
        else:
            den = R.q(3) - R.q(-3)
        return num / den

    def raise_word(self, letter, word):
        """Coordinates of e_letter . (word v_lambda), symbolic lambda."""
        key = (letter, word)
        hit = self._raise_memo.get(key)
        if hit is not None:
            return hit
        if not word:
            out = {}
        else:
            head, rest = word[0], word[1:]
            out = {}
            for m, c in self.raise_word(letter, rest).items():
                for m2, c2 in self.eng.mul_root(LETTER_INDEX[head], m).items():
                    vec_acc(out, m2, c * c2)
            if head == letter:
                scalar = self.cartan_bracket(letter, uqg.word_weight(rest))
                for m, c in self.eng.reduce_word(rest).items():
                    vec_acc(out, m, c * scalar)
        self._raise_memo[key] = out
        return out

    @lru_cache(maxsize=None)
    def raising_matrix(self, letter, kappa):
        """Columns of e_letter on the slice at drop kappa, symbolic."""
        # raise every chosen normal word, then change basis back to
        # monomial coordinates through the word-basis column data
        words, wcols = self.eng.normal_word_data(kappa)
        from .linalg import express

        monos = uqg.monomials_of_weight(kappa)
        raised_words = {w: self.raise_word(letter, w) for w in words}
        out = {}
        for mono in monos:
            target = {mono: self.R.one()}
            coeffs = express(list(wcols), target, self.R.field)
            col = {}
            for w, c in zip(words, coeffs):
                if c.is_zero():
                    continue
                for m2, c2 in raised_words[w].items():
                    vec_acc(col, m2, c * c2)
            out[mono] = col
        return out


@lru_cache(maxsize=None)
def core(config=DEFAULT):
    return SymbolicCore(config)


class VermaModule:
    """Weight slices of a Verma module, symbolic or specialized.

    subst: None for symbolic lambda, else {1: u_image, 2: w_image}."""

    def __init__(self, config=DEFAULT, subst=None):
        self.config = config
        self.core = core(config)
        self.eng = self.core.eng
        self.R = self.core.R
        self.subst = subst
        self._raise_cache = {}

    # -- scalars -------------------------------------------------------------
    def scalar(self, s):
        if self.subst is None:
            return s
        return s.substitute(self.subst)

    def weight_monomial(self, e):
        """q^e for an exponent form, specialized to this module's weight."""
        return self.scalar(self.R.q_power(e))

    # -- slices ----------------------------------------------------------------
    def check_depth(self, kappa):
        if kappa.a > self.config.depth_a or kappa.b > self.config.depth_b:
            raise DepthError(f"slice {kappa} beyond configured depth")
        if kappa.a < 0 or kappa.b < 0:
            raise DepthError(f"{kappa} is not a weight drop")

    def slice_monomials(self, kappa):
        self.check_depth(kappa)
        return uqg.monomials_of_weight(kappa)

    def dimension(self, kappa):
        if kappa.a < 0 or kappa.b < 0 or kappa.a.denominator != 1 or kappa.b.denominator != 1:
            return 0
        return len(self.slice_monomials(kappa))

    def basis_vectors(self, kappa):
        one = self.R.one()
        return [{m: one} for m in self.slice_monomials(kappa)]

    def project(self, vec, kappa):
        """Identity on the Verma module (quotients override)."""
        return vec

    # -- actions ---------------------------------------------------------------
    def lower(self, letter, vec, kappa):
        """f_letter . vec, from drop kappa to kappa + root."""
        self.check_depth(kappa + LETTER_WEIGHT[letter])
        out = {}
        for m, c in vec.items():
            for m2, c2 in self.eng.mul_root(LETTER_INDEX[letter], m).items():
                vec_acc(out, m2, c * c2)
        return out

    def lower_element_coords(self, coords, vec):
        """Left-multiply vec by an element given in PBW coordinates."""
        out = {}
        for m1, c1 in coords.items():
            for m, c in vec.items():
                for m2, c2 in self.eng.mul_monomial(m1, m).items():
                    vec_acc(out, m2, c * c1 * c2)
        return out

    def raise_(self, letter, vec, kappa):
        """e_letter . vec, from drop kappa to kappa - root; kills v_lambda."""
        target = kappa - LETTER_WEIGHT[letter]
        if target.a < 0 or target.b < 0:
            return {}
        mat = self._raising(letter, kappa)
        out = {}
        for m, c in vec.items():
            for m2, c2 in mat[m].items():
                vec_acc(out, m2, c * c2)
        return self.project(out, target)

    def _raising(self, letter, kappa):
        key = (letter, kappa)
        hit = self._raise_cache.get(key)
        if hit is None:
            sym = self.core.raising_matrix(letter, kappa)
            if self.subst is None:
                hit = sym
            else:
                hit = {m: {m2: self.scalar(c) for m2, c in col.items()
                           if not self.scalar(c).is_zero()}
                       for m, col in sym.items()}
            self._raise_cache[key] = hit
        return hit


class ParabolicQuotient(VermaModule):
    """Quotient of a Verma module by submodules generated by singular
    vectors; the kernel slice is computed by explicit spans and rank."""

    def __init__(self, config=DEFAULT, subst=None, generators=()):
        super().__init__(config, subst)
        # generators: tuple of (drop Weight, coords dict)
        self.generators = tuple(generators)
        self._kernel_cache = {}
        self._slice_cache = {}

    def kernel_span(self, kappa):
        hit = self._kernel_cache.get(kappa)
        if hit is not None:
            return hit
        span = Span()
        for drop, coords in self.generators:
            rest = kappa - drop
            if rest.a < 0 or rest.b < 0 or rest.a.denominator != 1 or rest.b.denominator != 1:
                continue
            for mono in uqg.monomials_of_weight(rest):
                vec = {}
                for m1, c1 in coords.items():
                    for m2, c2 in self.eng.mul_monomial(mono, m1).items():
                        vec_acc(vec, m2, c1 * c2)
                span.add(vec)
        self._kernel_cache[kappa] = span
        return span

    def slice_monomials(self, kappa):
        """Quotient basis: monomials that are not kernel pivots."""
        hit = self._slice_cache.get(kappa)
        if hit is None:
            self.check_depth(kappa)
            pivots = self.kernel_span(kappa).pivots
            hit = tuple(m for m in uqg.monomials_of_weight(kappa) if m not in pivots)
            self._slice_cache[kappa] = hit
        return hit

    def project(self, vec, kappa):
        return self.kernel_span(kappa).reduce(vec)

    def kernel_dimension(self, kappa):
        self.kernel_span(kappa)
        return self.kernel_span(kappa).rank()

    def lower(self, letter, vec, kappa):
        out = super().lower(letter, vec, kappa)
        return self.project(out, kappa + LETTER_WEIGHT[letter])

    def lower_element_coords(self, coords, vec):
        raise NotImplementedError("use generator-by-generator lowering in quotients")


class TensorVector:
    """Element of a weight slice of V (x) Z, keys (i, pbw-monomial)."""

    __slots__ = ("drop", "terms")

    def __init__(self, drop, terms):
        self.drop = drop
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        assert self.drop == other.drop
        out = dict(self.terms)
        for k, v in other.terms.items():
            vec_acc(out, k, v)
        return TensorVector(self.drop, out)

    def __sub__(self, other):
        return self + other.scale(_minus(other))

    def scale(self, c):
        return TensorVector(self.drop, {k: v * c for k, v in self.terms.items()})

    def component(self, i):
        return {m: c for (j, m), c in self.terms.items() if j == i}

    def __repr__(self):
        bits = [f"w{i}(x){m}: {c}" for (i, m), c in sorted(self.terms.items())]
        return "TensorVector(" + "; ".join(bits) + ")"


def _minus(tv):
    for v in tv.terms.values():
        return ExactScalar.from_rational(v.field, -1)
    raise ValueError("zero vector")


class TensorModule:
    """V (x) Z for Z a Verma module or parabolic quotient.

    The drop of a slice is measured from the top weight lambda + nu_1:
    the component at w_i holds Z-monomials of weight drop - (nu_1 - nu_i).
    """

    def __init__(self, module):
        self.module = module
        self.R = module.R
        self.rep = repmin.minrep(module.config.cyclotomic_order)

    def top_vector(self, i=1):
        """w_i (x) v_lambda, a vector at drop nu_1 - nu_i."""
        drop = NU[0] - NU[i - 1]
        return TensorVector(drop, {(i, (0,) * 6): self.R.one()})

    def zero(self, drop):
        return TensorVector(drop, {})

    def slice_keys(self, drop):
        keys = []
        for i in range(1, 8):
            rest = drop - (NU[0] - NU[i - 1])
            if rest.a < 0 or rest.b < 0:
                continue
            for m in self.module.slice_monomials(rest):
                keys.append((i, m))
        return keys

    def dimension(self, drop):
        return len(self.slice_keys(drop))

    def project(self, vec):
        out = {}
        parts = {}
        for (i, m), c in vec.terms.items():
            parts.setdefault(i, {})[m] = c
        for i, comp in parts.items():
            kappa = vec.drop - (NU[0] - NU[i - 1])
            for m, c in self.module.project(comp, kappa).items():
                out[(i, m)] = c
        return TensorVector(vec.drop, out)

    def act(self, gen, vec):
        """Apply a generator through the coproduct.

        gen: one of 'ea', 'eb', 'fa', 'fb' (raw letters on the module side)
        or 'qha', 'qhb', 'qha_inv', 'qhb_inv'."""
        R = self.R
        mod = self.module
        if gen in ("qha", "qhb", "qha_inv", "qhb_inv"):
            root = ALPHA if gen.startswith("qha") else BETA
            sign = -1 if gen.endswith("_inv") else 1
            out = {}
            for (i, m), c in vec.terms.items():
                kappa = vec.drop - (NU[0] - NU[i - 1])
                mono_wt = uqg_weight_of(m)
                e = ExponentForm(sign * inner(root, NU[i - 1] - mono_wt),
                                 sign * root.a, sign * root.b)
                out[(i, m)] = c * mod.weight_monomial(e)
            return TensorVector(vec.drop, out)

        letter = gen[1]
        root = LETTER_WEIGHT[letter]
        lowering = gen[0] == "f"
        new_drop = vec.drop + root if lowering else vec.drop - root
        out = {}
        by_i = {}
        for (i, m), c in vec.terms.items():
            by_i.setdefault(i, {})[m] = c
        for i, comp in by_i.items():
            kappa = vec.drop - (NU[0] - NU[i - 1])
            if lowering:
                # Delta(f) = 1 (x) f + f (x) q^{-h}
                lowered = mod.lower(letter, comp, kappa)
                for m, c in lowered.items():
                    vec_acc(out, (i, m), c)
                shift = mod.weight_monomial(
                    ExponentForm(inner(root, kappa), -root.a, -root.b))
                for (i2, rc) in self.rep.act(letter, i):
                    for m, c in comp.items():
                        vec_acc(out, (i2, m), c * rc * shift)
            else:
                # Delta(e) = e (x) 1 + q^{h} (x) e
                col = self.rep.act("e" + letter, i)
                for (i2, rc) in col:
                    for m, c in comp.items():
                        vec_acc(out, (i2, m), c * rc)
                raised = mod.raise_(letter, comp, kappa)
                scale = self.R.q(int(inner(root, NU[i - 1])))
                for m, c in raised.items():
                    vec_acc(out, (i, m), c * scale)
        result = TensorVector(new_drop, out)
        return self.project(result)


def uqg_weight_of(mono):
    from .rootdata import POSITIVE_ROOTS

    a = sum(n * r.a for n, r in zip(mono, POSITIVE_ROOTS))
    b = sum(n * r.b for n, r in zip(mono, POSITIVE_ROOTS))
    return Weight(a, b)

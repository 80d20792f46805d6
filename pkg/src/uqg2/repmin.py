"""The 7-dimensional representation, its weights, pair sets and path
monomials.

Matrices are sparse dicts {(row, col): scalar}, 1-based.  The letter "b"
of the word algebra is the raw beta lowering generator, whose matrix is
e32 + e65; the rescaled generator is [3]_q times that, which is what makes
the commutator [e_beta, f_beta] come out with the (q - 1/q) denominator.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import PathError
from .rootdata import ALPHA, BETA, NU, Weight, inner
from .scalars import ExactScalar, ring

__all__ = [
    "MinRep",
    "minrep",
    "act",
    "pair_set",
    "psi_monomial",
    "check_defining_relations",
]

# letter of the lowering step from w_k to w_{k+1}, k = 1..6
STEP_LETTERS = ("a", "b", "a", "a", "b", "a")


def mat_mul(a, b):
    out = {}
    by_row = {}
    for (r, c), v in b.items():
        by_row.setdefault(r, []).append((c, v))
    for (r, c), v in a.items():
        for c2, v2 in by_row.get(c, ()):
            key = (r, c2)
            s = out.get(key)
            s = v * v2 if s is None else s + v * v2
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return out


def mat_add(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        s = v if s is None else s + v
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def mat_scale(a, c):
    if c.is_zero():
        return {}
    return {k: v * c for k, v in a.items()}


def mat_sub(a, b):
    if not b:
        return dict(a)
    minus = ExactScalar.from_rational(next(iter(b.values())).field, -1)
    return mat_add(a, mat_scale(b, minus))


class MinRep:
    """Generator matrices of the minimal representation."""

    def __init__(self, order=12):
        self.order = order
        R = ring(order)
        self.R = R
        one = R.one()
        two = R.q_bracket_int(2)
        three = R.q_bracket_int(3)
        self.ea = {(1, 2): one, (3, 4): one, (4, 5): one, (6, 7): one}
        self.eb = {(2, 3): one, (5, 6): one}
        self.fa = {(2, 1): one, (4, 3): two, (5, 4): two, (7, 6): one}
        # raw beta lowering letter; the rescaled f_beta is [3]_q times it
        self.fb_raw = {(3, 2): one, (6, 5): one}
        self.fb = mat_scale(self.fb_raw, three)
        self.qha = {(i, i): R.q(int(inner(ALPHA, NU[i - 1]))) for i in range(1, 8)}
        self.qhb = {(i, i): R.q(int(inner(BETA, NU[i - 1]))) for i in range(1, 8)}
        self.qha_inv = {(i, i): v.inverse() for (i, _), v in self.qha.items()}
        self.qhb_inv = {(i, i): v.inverse() for (i, _), v in self.qhb.items()}
        self._by_name = {
            "ea": self.ea, "eb": self.eb, "fa": self.fa, "fb": self.fb,
            "b": self.fb_raw, "a": self.fa,
            "qha": self.qha, "qhb": self.qhb,
            "qha_inv": self.qha_inv, "qhb_inv": self.qhb_inv,
        }

    def matrix(self, name):
        return self._by_name[name]

    def act(self, name, i):
        """Column i of the generator's matrix as a list of (row, scalar)."""
        m = self._by_name[name]
        return sorted(((r, v) for (r, c), v in m.items() if c == i))

    def word_matrix(self, word):
        """Matrix of a word over the letters a, b (raw generators)."""
        out = {(i, i): self.R.one() for i in range(1, 8)}
        for letter in word:
            out = mat_mul(out, self._by_name[letter])
        return out

    def element_matrix(self, elem):
        """Matrix of a word-algebra element (letters a, b)."""
        out = {}
        for w, c in elem.terms.items():
            out = mat_add(out, mat_scale(self.word_matrix(w), c))
        return out

    def mirror_matrix(self, elem):
        """Matrix of the mirrored element: reverse words, map letters to
        the raising side (a -> ea, b -> eb)."""
        out = {}
        flip = {"a": "ea", "b": "eb"}
        for w, c in elem.terms.items():
            acc = {(i, i): self.R.one() for i in range(1, 8)}
            for letter in reversed(w):
                acc = mat_mul(acc, self._by_name[flip[letter]])
            out = mat_add(out, mat_scale(acc, c))
        return out

    # -- relations ----------------------------------------------------------
    def check_defining_relations(self):
        """Evaluate every defining relation as a 7x7 identity in q.

        Returns a list of dicts with keys name, passed, residual.
        """
        R = self.R
        one = R.one()

        def bracket(x, y):
            return mat_sub(mat_mul(x, y), mat_mul(y, x))

        def conj(h, h_inv, x):
            return mat_mul(mat_mul(h, x), h_inv)

        qq = R.q(1) - R.q(-1)
        q3 = R.q(3) - R.q(-3)
        cartan_a = mat_scale(mat_sub(self.qha, self.qha_inv), qq.inverse())
        cartan_b_raw = mat_scale(mat_sub(self.qhb, self.qhb_inv), q3.inverse())
        cartan_b = mat_scale(mat_sub(self.qhb, self.qhb_inv), qq.inverse())

        checks = []

        def add(name, lhs, rhs):
            residual = mat_sub(lhs, rhs) if rhs else lhs
            checks.append({"name": name, "passed": not residual,
                           "residual": residual})

        add("qha ea qha^-1 = q^2 ea", conj(self.qha, self.qha_inv, self.ea),
            mat_scale(self.ea, R.q(2)))
        add("qha fa qha^-1 = q^-2 fa", conj(self.qha, self.qha_inv, self.fa),
            mat_scale(self.fa, R.q(-2)))
        add("qha eb qha^-1 = q^-3 eb", conj(self.qha, self.qha_inv, self.eb),
            mat_scale(self.eb, R.q(-3)))
        add("qha fb qha^-1 = q^3 fb", conj(self.qha, self.qha_inv, self.fb),
            mat_scale(self.fb, R.q(3)))
        add("qhb ea qhb^-1 = q^-3 ea", conj(self.qhb, self.qhb_inv, self.ea),
            mat_scale(self.ea, R.q(-3)))
        add("qhb fa qhb^-1 = q^3 fa", conj(self.qhb, self.qhb_inv, self.fa),
            mat_scale(self.fa, R.q(3)))
        add("qhb eb qhb^-1 = q^6 eb", conj(self.qhb, self.qhb_inv, self.eb),
            mat_scale(self.eb, R.q(6)))
        add("qhb fb qhb^-1 = q^-6 fb", conj(self.qhb, self.qhb_inv, self.fb),
            mat_scale(self.fb, R.q(-6)))
        add("[ea, fa] = (qha - qha^-1)/(q - 1/q)", bracket(self.ea, self.fa), cartan_a)
        add("[eb, e_-b] = (qhb - qhb^-1)/(q^3 - 1/q^3)",
            bracket(self.eb, self.fb_raw), cartan_b_raw)
        add("[eb, fb] = (qhb - qhb^-1)/(q - 1/q)", bracket(self.eb, self.fb), cartan_b)
        add("[ea, fb] = 0", bracket(self.ea, self.fb), {})
        add("[eb, fa] = 0", bracket(self.eb, self.fa), {})

        def serre_quartic(x, y):
            x2 = mat_mul(x, x)
            x3 = mat_mul(x2, x)
            x4 = mat_mul(x3, x)
            c4 = R.q_bracket_int(4)
            c3 = R.q_bracket_int(3) * (R.q(2) + R.q(-2))
            term = mat_mul(x4, y)
            term = mat_sub(term, mat_scale(mat_mul(mat_mul(x3, y), x), c4))
            term = mat_add(term, mat_scale(mat_mul(mat_mul(x2, y), x2), c3))
            term = mat_sub(term, mat_scale(mat_mul(mat_mul(x, y), x3), c4))
            return mat_add(term, mat_mul(y, x4))

        def serre_cubic(y, x):
            y2 = mat_mul(y, y)
            c = R.q(3) + R.q(-3)
            term = mat_mul(y2, x)
            term = mat_sub(term, mat_scale(mat_mul(mat_mul(y, x), y), c))
            return mat_add(term, mat_mul(x, y2))

        add("quartic serre (ea, eb)", serre_quartic(self.ea, self.eb), {})
        add("quartic serre (fa, fb)", serre_quartic(self.fa, self.fb), {})
        add("cubic serre (eb, ea)", serre_cubic(self.eb, self.ea), {})
        add("cubic serre (fb, fa)", serre_cubic(self.fb, self.fa), {})
        add("qha qha^-1 = 1", mat_mul(self.qha, self.qha_inv),
            {(i, i): one for i in range(1, 8)})
        add("qha qhb = qhb qha", mat_mul(self.qha, self.qhb),
            mat_mul(self.qhb, self.qha))
        return checks

    def weights_consistent(self):
        """q^{h_mu} acts on w_i by q^{(mu, nu_i)} for both simple mu."""
        R = self.R
        for i in range(1, 8):
            if self.qha[(i, i)] != R.q(int(inner(ALPHA, NU[i - 1]))):
                return False
            if self.qhb[(i, i)] != R.q(int(inner(BETA, NU[i - 1]))):
                return False
        return True


@lru_cache(maxsize=None)
def minrep(order=12):
    return MinRep(order)


def act(name, i, order=12):
    return minrep(order).act(name, i)


def pair_set(nu):
    """All pairs (i, j) with nu_i - nu_j = nu."""
    out = []
    for i in range(1, 8):
        for j in range(1, 8):
            if NU[i - 1] - NU[j - 1] == nu:
                out.append((i, j))
    return tuple(out)


def psi_monomial(i, j, order=12):
    """The path monomial from w_i to w_j with reversed factor order.

    Returns (word, scalar): the word is the reversal of the monomial that
    maps w_i to w_j, and the scalar is the product of matrix coefficients
    collected along the path (powers of [2]_q).
    """
    if not (1 <= i < j <= 7):
        raise PathError(f"no path from {i} to {j}")
    R = ring(order)
    two = R.q_bracket_int(2)
    letters = []
    scalar = R.one()
    for k in range(i, j):
        letters.append(STEP_LETTERS[k - 1])
        if STEP_LETTERS[k - 1] == "a" and k in (3, 4):
            scalar = scalar * two
    # composition order is right to left, so the raw monomial is the path
    # reversed; reversing factors again returns the forward path sequence
    return tuple(letters), scalar


def check_defining_relations(order=12):
    return minrep(order).check_defining_relations()

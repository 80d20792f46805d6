"""Small exact linear algebra over the scalar fraction field.

Vectors are dicts mapping hashable, mutually comparable keys to
ExactScalar values; zero entries are never stored.  The incremental Span
keeps a triangular set of pivot vectors, enough for rank, membership and
coordinate extraction without ever building dense matrices.
"""

from __future__ import annotations

from .scalars import ExactScalar

__all__ = ["vec_add", "vec_scale", "vec_sub_scaled", "Span", "express"]


def vec_add(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        if s is None:
            out[k] = v
        else:
            s = s + v
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
    return out


def vec_scale(a, c):
    if c.is_zero():
        return {}
    return {k: v * c for k, v in a.items()}


def vec_sub_scaled(a, b, c):
    """a - c*b."""
    out = dict(a)
    for k, v in b.items():
        t = v * c
        if t.is_zero():
            continue
        s = out.get(k)
        s = -t if s is None else s - t
        if s.is_zero():
            del out[k]
        else:
            out[k] = s
    return out


class Span:
    """Incremental row space with leading-key pivoting (largest key wins)."""

    def __init__(self):
        self.pivots = {}

    def rank(self):
        return len(self.pivots)

    def reduce(self, vec):
        """Fully reduce vec against the pivot set.

        Keys are consumed in descending order; pivot rows only touch keys
        below their lead, so every key lands in the residue exactly once.
        """
        vec = dict(vec)
        residue = {}
        while vec:
            k = max(vec)
            c = vec.pop(k)
            if c.is_zero():
                continue
            piv = self.pivots.get(k)
            if piv is None:
                residue[k] = c
                continue
            for pk, pv in piv.items():
                if pk == k:
                    continue
                t = pv * c
                s = vec.get(pk)
                s = -t if s is None else s - t
                if s.is_zero():
                    vec.pop(pk, None)
                else:
                    vec[pk] = s
        return residue

    def add(self, vec):
        """Insert vec; returns True when the span grew."""
        r = self.reduce(vec)
        if not r:
            return False
        lead = max(r)
        inv = r[lead].inverse()
        self.pivots[lead] = {k: v * inv for k, v in r.items()}
        return True

    def contains(self, vec):
        return not self.reduce(vec)


def express(vectors, target, field):
    """Coefficients c_i with target = sum c_i vectors[i], or None.

    Span keys are (1, key) for genuine coordinates and (0, i) for
    bookkeeping tags, so elimination always pivots on coordinates first.
    """
    one = ExactScalar.one(field)
    zero = ExactScalar.zero_(field)
    span = Span()
    for i, v in enumerate(vectors):
        aug = {(1, k): val for k, val in v.items()}
        aug[(0, i)] = one
        span.add(aug)
    residue = span.reduce({(1, k): val for k, val in target.items()})
    if any(k[0] == 1 for k in residue):
        return None
    return [-residue[(0, i)] if (0, i) in residue else zero
            for i in range(len(vectors))]

"""The G2 root system, torus points, their classification, and weights.

Torus points are stored through their first three diagonal entries
(d1, d2, d3) in the 7-dimensional realization, with d1 = d2*d3; the full
diagonal is (d1, d2, d3, 1, 1/d2, 1/d3, 1/d1).  The simple-root characters
are alpha(t) = d3 and beta(t) = d2/d3.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .errors import BranchError, MalformedPoint
from .scalars import ExactScalar, ExponentForm, ring

__all__ = [
    "Weight",
    "ALPHA",
    "BETA",
    "RHO",
    "POSITIVE_ROOTS",
    "NU",
    "inner",
    "TorusPoint",
    "StabilizerTag",
    "StabilizerType",
    "weyl_orbit",
    "classify",
    "minimal_polynomial",
    "lambda_coords",
    "stabilizer_data",
]


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Weight:
    """Element a*alpha + b*beta of the root lattice (rational coefficients)."""

    a: Fraction
    b: Fraction

    def __init__(self, a, b):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __add__(self, other):
        return Weight(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return Weight(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return Weight(-self.a, -self.b)

    def __rmul__(self, r):
        return Weight(Fraction(r) * self.a, Fraction(r) * self.b)

    __mul__ = __rmul__

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def is_nonnegative(self):
        return self.a >= 0 and self.b >= 0

    def dominates(self, other):
        """self - other has non-negative coordinates."""
        return self.a >= other.a and self.b >= other.b

    def __str__(self):
        return f"{self.a}a+{self.b}b"

    def exponent_form(self, const=0):
        """The pairing (lambda, self) + const as an ExponentForm."""
        return ExponentForm(const, self.a, self.b)


# Gram matrix of the inner product in the (alpha, beta) basis.
_GRAM = ((Fraction(2), Fraction(-3)), (Fraction(-3), Fraction(6)))

ALPHA = Weight(1, 0)
BETA = Weight(0, 1)
RHO = Weight(5, 3)

# positive roots in a convex order (simple roots at the ends)
POSITIVE_ROOTS = (
    ALPHA,
    Weight(3, 1),
    Weight(2, 1),
    Weight(3, 2),
    Weight(1, 1),
    BETA,
)

HIGHEST_ROOT = Weight(3, 2)

# weights of the 7-dimensional representation
NU = (
    Weight(2, 1),
    Weight(1, 1),
    Weight(1, 0),
    Weight(0, 0),
    Weight(-1, 0),
    Weight(-1, -1),
    Weight(-2, -1),
)


def inner(mu, nu):
    """Symmetric bilinear form with (a,a)=2, (a,b)=-3, (b,b)=6."""
    return (mu.a * nu.a * _GRAM[0][0]
            + (mu.a * nu.b + mu.b * nu.a) * _GRAM[0][1]
            + mu.b * nu.b * _GRAM[1][1])


def rho_pairing(mu):
    return inner(RHO, mu)


# ---------------------------------------------------------------------------
# torus points
# ---------------------------------------------------------------------------

class TorusPoint:
    """A torus point via its first three diagonal entries."""

    __slots__ = ("d1", "d2", "d3")

    def __init__(self, d1, d2, d3):
        if d1.is_zero() or d2.is_zero() or d3.is_zero():
            raise MalformedPoint("diagonal entries must be invertible")
        if d1 != d2 * d3:
            raise MalformedPoint("d1 = d2*d3 violated")
        self.d1 = d1
        self.d2 = d2
        self.d3 = d3

    @classmethod
    def from_xy(cls, x, y):
        return cls(x * y, x, y)

    def diagonal(self):
        one = ExactScalar.one(self.d1.field)
        return (self.d1, self.d2, self.d3, one,
                self.d2.inverse(), self.d3.inverse(), self.d1.inverse())

    def root_value(self, root):
        """The character value root(t); alpha -> d3, beta -> d2/d3."""
        a, b = root.a, root.b
        assert a.denominator == 1 and b.denominator == 1
        return (self.d2 ** int(b)) * (self.d3 ** int(a - b))

    def triple(self):
        return (self.d1, self.d2, self.d3)

    def __eq__(self, other):
        return isinstance(other, TorusPoint) and self.triple() == other.triple()

    def __hash__(self):
        return hash(self.triple())

    def __repr__(self):
        return f"TorusPoint({self.d1}, {self.d2}, {self.d3})"


def weyl_orbit(t):
    """Closure of {t} under the two simple reflections on diagonal triples.

    sigma_beta swaps d2 and d3; sigma_alpha sends (d1,d2,d3) to
    (d2, d1, 1/d3).  Orbit sizes divide 12.
    """
    seen = {t}
    frontier = [t]
    while frontier:
        s = frontier.pop()
        images = (
            TorusPoint(s.d1, s.d3, s.d2),
            TorusPoint(s.d2, s.d1, s.d3.inverse()),
        )
        for im in images:
            if im not in seen:
                seen.add(im)
                frontier.append(im)
        if len(seen) > 12:
            raise MalformedPoint("orbit exceeded 12 points; entries inconsistent")
    return seen


# ---------------------------------------------------------------------------
# stabilizer classification
# ---------------------------------------------------------------------------

class StabilizerTag(Enum):
    H_REG = "H_reg"
    H_BORD = "H_bord"
    S_A = "S_a"
    S_AB = "S_ab"
    S_2AB = "S_2ab"
    L_B_REG = "L_b_reg"
    L_3AB_REG = "L_3ab_reg"
    L_3A2B_REG = "L_3a2b_reg"
    L_B_BORD = "L_b_bord"
    L_3AB_BORD = "L_3ab_bord"
    L_3A2B_BORD = "L_3a2b_bord"
    SL_A_3A2B = "SL_a_3a2b"
    SL_AB_3AB = "SL_ab_3ab"
    SL_2AB_B = "SL_2ab_b"
    LL = "LL"
    CENTRAL = "central"


# simple root systems of the centralizer per tag
_PI = {
    StabilizerTag.H_REG: (),
    StabilizerTag.H_BORD: (),
    StabilizerTag.S_A: (ALPHA,),
    StabilizerTag.S_AB: (Weight(1, 1),),
    StabilizerTag.S_2AB: (Weight(2, 1),),
    StabilizerTag.L_B_REG: (BETA,),
    StabilizerTag.L_3AB_REG: (Weight(3, 1),),
    StabilizerTag.L_3A2B_REG: (Weight(3, 2),),
    StabilizerTag.L_B_BORD: (BETA,),
    StabilizerTag.L_3AB_BORD: (Weight(3, 1),),
    StabilizerTag.L_3A2B_BORD: (Weight(3, 2),),
    StabilizerTag.SL_A_3A2B: (ALPHA, Weight(3, 2)),
    StabilizerTag.SL_AB_3AB: (Weight(1, 1), Weight(3, 1)),
    StabilizerTag.SL_2AB_B: (Weight(2, 1), BETA),
    StabilizerTag.LL: (BETA, Weight(3, 1)),
    StabilizerTag.CENTRAL: (ALPHA, BETA),
}


@dataclass
class StabilizerType:
    """Classification outcome: tag, simple roots of the centralizer, and the
    spectral parameters extracted from the matching shape."""

    tag: StabilizerTag
    pi_k: tuple
    x: ExactScalar | None = None
    y: ExactScalar | None = None
    shape: str | None = None

    @property
    def is_borderline(self):
        return self.tag in (StabilizerTag.H_BORD, StabilizerTag.L_B_BORD,
                            StabilizerTag.L_3AB_BORD, StabilizerTag.L_3A2B_BORD)

    @property
    def family(self):
        """Coarse class (H/S/L/SL/LL/central + regular/borderline), the
        invariant of the Weyl orbit; reflections permute the root bases
        within one family."""
        name = self.tag.value
        if name.startswith("H_") or name.startswith("L_"):
            kind = name.split("_")[0]
            return f"{kind}_bord" if self.is_borderline else f"{kind}_reg"
        if name.startswith("SL"):
            return "SL"
        if name.startswith("S_"):
            return "S"
        return name


def positive_root_closure(pi):
    """All positive roots that are non-negative integer combinations of pi."""
    out = []
    for gamma in POSITIVE_ROOTS:
        if _in_span(gamma, pi):
            out.append(gamma)
    return tuple(out)


def _in_span(gamma, pi):
    if not pi:
        return False
    if len(pi) == 1:
        p = pi[0]
        for k in range(0, 4):
            if Weight(k * p.a, k * p.b) == gamma:
                return k > 0
        return False
    p, r = pi
    det = p.a * r.b - p.b * r.a
    if det == 0:
        return _in_span(gamma, (p,)) or _in_span(gamma, (r,))
    c1 = Fraction(gamma.a * r.b - gamma.b * r.a, det)
    c2 = Fraction(p.a * gamma.b - p.b * gamma.a, det)
    return (c1.denominator == 1 and c2.denominator == 1
            and c1 >= 0 and c2 >= 0 and (c1 > 0 or c2 > 0))


def rho_k(pi):
    acc = Weight(0, 0)
    for gamma in positive_root_closure(pi):
        acc = acc + gamma
    return Fraction(1, 2) * acc


def classify(t):
    """Classify a torus point by its centralizer type."""
    R = ring(t.d1.field.order)
    one = R.one()
    vanishing = tuple(g for g in POSITIVE_ROOTS if t.root_value(g) == one)
    vanish_set = set(vanishing)

    if len(vanishing) == 6:
        return StabilizerType(StabilizerTag.CENTRAL, _PI[StabilizerTag.CENTRAL])

    if not vanishing:
        minus_one = R.rational(-1)
        for d, shape, x in ((t.d2, "(-x,-1,x)", t.d3),
                            (t.d3, "(-x,x,-1)", t.d2),
                            (t.d1, "(-1,x,-1/x)", t.d2)):
            if d == minus_one:
                return StabilizerType(StabilizerTag.H_BORD, (), x=x, shape=shape)
        return StabilizerType(StabilizerTag.H_REG, (), x=t.d2, y=t.d3)

    if len(vanishing) == 1:
        gamma = vanishing[0]
        if inner(gamma, gamma) == 2:
            if gamma == ALPHA:
                return StabilizerType(StabilizerTag.S_A, vanishing, x=t.d2, shape="(x,x,1)")
            if gamma == Weight(1, 1):
                return StabilizerType(StabilizerTag.S_AB, vanishing, x=t.d3, shape="(x,1,x)")
            return StabilizerType(StabilizerTag.S_2AB, vanishing, x=t.d2, shape="(1,x,1/x)")
        # long-root Levi: regular unless the diagonal degenerates
        if gamma == BETA:
            x, shape = t.d2, "(x^2,x,x)"
            reg_tag, bord_tag = StabilizerTag.L_B_REG, StabilizerTag.L_B_BORD
        elif gamma == Weight(3, 1):
            x, shape = t.d3, "(1/x,1/x^2,x)"
            reg_tag, bord_tag = StabilizerTag.L_3AB_REG, StabilizerTag.L_3AB_BORD
        else:
            x, shape = t.d2, "(1/x,x,1/x^2)"
            reg_tag, bord_tag = StabilizerTag.L_3A2B_REG, StabilizerTag.L_3A2B_BORD
        if x ** 4 == one:
            return StabilizerType(bord_tag, vanishing, x=x, shape=shape)
        return StabilizerType(reg_tag, vanishing, x=x, shape=shape)

    if vanish_set == {BETA, Weight(3, 1), Weight(3, 2)}:
        return StabilizerType(StabilizerTag.LL, _PI[StabilizerTag.LL], x=t.d2)
    if vanish_set == {ALPHA, Weight(3, 2)}:
        return StabilizerType(StabilizerTag.SL_A_3A2B, _PI[StabilizerTag.SL_A_3A2B])
    if vanish_set == {Weight(1, 1), Weight(3, 1)}:
        return StabilizerType(StabilizerTag.SL_AB_3AB, _PI[StabilizerTag.SL_AB_3AB])
    if vanish_set == {Weight(2, 1), BETA}:
        return StabilizerType(StabilizerTag.SL_2AB_B, _PI[StabilizerTag.SL_2AB_B])
    raise MalformedPoint(f"inconsistent vanishing set {vanishing}")


def minimal_polynomial(t):
    """Distinct eigenvalues of t in the basic representation with their
    multiplicities, sorted by string form for determinism."""
    diag = t.diagonal()
    roots = []
    for d in diag:
        for i, (val, mult) in enumerate(roots):
            if val == d:
                roots[i] = (val, mult + 1)
                break
        else:
            roots.append((d, 1))
    return sorted(roots, key=lambda p: str(p[0]))


# ---------------------------------------------------------------------------
# the t -> lambda correspondence
# ---------------------------------------------------------------------------

def lambda_coords(t, stab):
    """Solve q^{2 lambda} = t q^{2 rho_k - 2 rho} for (u, w) branch pairs.

    Returns a list of (u, w) ExactScalar pairs; u^2 = q^{2(lambda,alpha)} and
    w^2 = q^{2(lambda,beta)} are branch-independent.
    """
    R = ring(t.d1.field.order)
    rk = rho_k(stab.pi_k)
    shift = rk - RHO
    u_sq = t.root_value(ALPHA) * R.q_power(ExponentForm(2 * inner(shift, ALPHA)))
    w_sq = t.root_value(BETA) * R.q_power(ExponentForm(2 * inner(shift, BETA)))
    u0 = u_sq.sqrt()
    if u0 is None:
        raise BranchError(f"q^(2(lambda,alpha)) = {u_sq} has no square root in the field")
    w0 = w_sq.sqrt()
    if w0 is None:
        raise BranchError(f"q^(2(lambda,beta)) = {w_sq} has no square root in the field")
    minus = R.rational(-1)
    pairs = []
    for su in (R.one(), minus):
        for sw in (R.one(), minus):
            pairs.append((su * u0, sw * w0))
    return pairs


# ---------------------------------------------------------------------------
# per-class module data (index sets, theta parameterization)
# ---------------------------------------------------------------------------

def pair_set_indices(nu):
    """P(nu): all (i, j) with nu_i - nu_j = nu (1-based indices)."""
    out = []
    for i in range(7):
        for j in range(7):
            if NU[i] - NU[j] == nu:
                out.append((i + 1, j + 1))
    return tuple(out)


@lru_cache(maxsize=None)
def index_sets(pi_k):
    """(I_k, Ibar_k) as 1-based tuples; j is excluded iff some i < j has
    nu_i - nu_j in Pi_k."""
    excluded = []
    for j in range(1, 8):
        if any(NU[i - 1] - NU[j - 1] in pi_k for i in range(1, j)):
            excluded.append(j)
    included = tuple(j for j in range(1, 8) if j not in excluded)
    return included, tuple(excluded)


@dataclass(frozen=True)
class ThetaChart:
    """Symbolic parameterization of Theta^k for rank-one stabilizers.

    u and w are replaced by monomial images in the surviving variable (kept
    in the u slot); theta_root tells which pairing (lambda, root) the
    variable carries, and theta_scale relates q^theta to the variable:
    q^theta = variable ** theta_scale (scale 2 only for the 3a+2b type).
    """

    u_image: tuple
    w_image: tuple
    theta_root: Weight
    theta_scale: int = 1


def theta_chart(tag, order=12, branch=0):
    """Substitution images realizing Theta^k for rank-one stabilizers.

    branch selects the finite ambiguity (a sign, or a fourth root of unity
    for the 3a+2b type).  Returns (u_image, w_image, chart), or None for
    types whose weights are fully numeric (pseudo-Levi, H).
    """
    R = ring(order)
    sign = R.rational(-1) ** (branch % 2)
    if tag == StabilizerTag.S_A:
        return sign * R.one(), R.w(), ThetaChart((0, 0, 0), (0, 0, 1), BETA)
    if tag == StabilizerTag.S_AB:
        return R.u(), sign * R.monomial(-3, -1, 0), ThetaChart((0, 1, 0), (-3, -1, 0), ALPHA)
    if tag == StabilizerTag.S_2AB:
        return R.u(), sign * R.monomial(-4, -2, 0), ThetaChart((0, 1, 0), (-4, -2, 0), ALPHA)
    if tag in (StabilizerTag.L_B_REG, StabilizerTag.L_B_BORD):
        return R.u(), sign * R.one(), ThetaChart((0, 1, 0), (0, 0, 0), ALPHA)
    if tag in (StabilizerTag.L_3AB_REG, StabilizerTag.L_3AB_BORD):
        return R.u(), sign * R.monomial(-3, -3, 0), ThetaChart((0, 1, 0), (-3, -3, 0), ALPHA)
    if tag in (StabilizerTag.L_3A2B_REG, StabilizerTag.L_3A2B_BORD):
        # u is re-parameterized as v^2 so the w image stays monomial
        zeta4 = R.cyclotomic(3 * (branch % 4))
        return R.u(2), zeta4 * R.monomial(-3, -3, 0), ThetaChart((0, 2, 0), (-3, -3, 0), ALPHA, 2)
    return None


def stabilizer_data(tag):
    """Pi_k, its positive closure, rho_k and the index sets for a tag."""
    pi = _PI[tag]
    return {
        "pi_k": pi,
        "closure": positive_root_closure(pi),
        "rho_k": rho_k(pi),
        "I_k": index_sets(pi)[0],
        "Ibar_k": index_sets(pi)[1],
    }

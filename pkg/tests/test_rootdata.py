import pytest

from uqg2 import rootdata as rd
from uqg2.errors import BranchError, MalformedPoint
from uqg2.scalars import ring

R = ring(12)


def pt(x, y):
    return rd.TorusPoint.from_xy(x, y)


def test_inner_products():
    assert rd.inner(rd.ALPHA, rd.ALPHA) == 2
    assert rd.inner(rd.ALPHA, rd.BETA) == -3
    assert rd.inner(rd.BETA, rd.BETA) == 6
    assert rd.inner(rd.RHO, rd.ALPHA) == 1
    assert rd.inner(rd.RHO, rd.BETA) == 3
    assert rd.inner(rd.RHO, rd.Weight(2, 1)) == 5
    assert rd.inner(rd.Weight(0, 0), rd.BETA) == 0


def test_nu_weights():
    assert rd.NU[0] == rd.Weight(2, 1)
    assert rd.NU[3].is_zero()
    for i in range(7):
        assert rd.NU[7 - i - 1] == -rd.NU[i]


def test_malformed_point():
    with pytest.raises(MalformedPoint):
        rd.TorusPoint(R.one(), R.rational(-1), R.one())
    with pytest.raises(MalformedPoint):
        rd.TorusPoint(R.zero(), R.one(), R.one())


def test_weyl_orbit_identity():
    t = pt(R.one(), R.one())
    assert rd.weyl_orbit(t) == {t}


def test_weyl_orbit_long_class_symbolic():
    x = R.u()
    t = rd.TorusPoint(x * x, x, x)
    orb = rd.weyl_orbit(t)
    assert len(orb) == 6
    xb = x.inverse()
    assert rd.TorusPoint(xb, xb * xb, x) in orb
    assert rd.TorusPoint(xb, x, xb * xb) in orb


def test_weyl_orbit_pseudo_levi():
    m = R.rational(-1)
    t = pt(m, m)  # (1,-1,-1)
    orb = rd.weyl_orbit(t)
    assert orb == {rd.TorusPoint(R.one(), m, m), rd.TorusPoint(m, R.one(), m),
                   rd.TorusPoint(m, m, R.one())}


def test_weyl_orbit_generic_size_twelve():
    t = pt(R.q(2), R.q(10))
    assert len(rd.weyl_orbit(t)) == 12


def test_classify_h_regular():
    # x = q^3, y = 5: distinct non-units with x^i y^j != 1
    t = pt(R.q(3), R.rational(5))
    c = rd.classify(t)
    assert c.tag == rd.StabilizerTag.H_REG
    assert c.pi_k == ()


def test_classify_h_borderline():
    x = R.q(2)
    t = rd.TorusPoint(-x, R.rational(-1), x)
    c = rd.classify(t)
    assert c.tag == rd.StabilizerTag.H_BORD
    assert c.x == x


def test_classify_short_types():
    x = R.q(2)
    assert rd.classify(rd.TorusPoint(x, x, R.one())).tag == rd.StabilizerTag.S_A
    assert rd.classify(rd.TorusPoint(x, R.one(), x)).tag == rd.StabilizerTag.S_AB
    assert rd.classify(rd.TorusPoint(R.one(), x, x.inverse())).tag == rd.StabilizerTag.S_2AB


def test_classify_long_types():
    x = R.q(2)
    xb = x.inverse()
    assert rd.classify(rd.TorusPoint(x * x, x, x)).tag == rd.StabilizerTag.L_B_REG
    assert rd.classify(rd.TorusPoint(xb, xb * xb, x)).tag == rd.StabilizerTag.L_3AB_REG
    assert rd.classify(rd.TorusPoint(xb, x, xb * xb)).tag == rd.StabilizerTag.L_3A2B_REG
    i = R.cyclotomic(3)
    ib = i.inverse()
    assert rd.classify(rd.TorusPoint(-R.one(), i, i)).tag == rd.StabilizerTag.L_B_BORD
    assert rd.classify(rd.TorusPoint(ib, -R.one(), i)).tag == rd.StabilizerTag.L_3AB_BORD
    assert rd.classify(rd.TorusPoint(ib, i, -R.one())).tag == rd.StabilizerTag.L_3A2B_BORD


def test_classify_pseudo_levi():
    m = R.rational(-1)
    one = R.one()
    assert rd.classify(rd.TorusPoint(one, m, m)).tag == rd.StabilizerTag.SL_2AB_B
    assert rd.classify(rd.TorusPoint(m, one, m)).tag == rd.StabilizerTag.SL_AB_3AB
    assert rd.classify(rd.TorusPoint(m, m, one)).tag == rd.StabilizerTag.SL_A_3A2B
    z3 = R.cyclotomic(4)
    z3b = z3.inverse()
    c = rd.classify(rd.TorusPoint(z3b, z3, z3))
    assert c.tag == rd.StabilizerTag.LL
    assert rd.classify(rd.TorusPoint(R.one(), R.one(), R.one())).tag == rd.StabilizerTag.CENTRAL


def test_classify_constant_on_orbit():
    # reflections permute the long-root bases, so constancy holds at the
    # family level; the orbit of a (x^2,x,x) point meets all three L shapes
    x = R.q(2)
    t = rd.TorusPoint(x * x, x, x)
    orbit = rd.weyl_orbit(t)
    assert {rd.classify(s).family for s in orbit} == {"L_reg"}
    assert {rd.classify(s).tag for s in orbit} == {
        rd.StabilizerTag.L_B_REG, rd.StabilizerTag.L_3AB_REG, rd.StabilizerTag.L_3A2B_REG}
    t2 = pt(R.q(3), R.rational(5))
    assert {rd.classify(s).tag for s in rd.weyl_orbit(t2)} == {rd.StabilizerTag.H_REG}
    m = R.rational(-1)
    assert {rd.classify(s).family for s in rd.weyl_orbit(pt(m, m))} == {"SL"}


def test_minimal_polynomial_examples():
    m = R.rational(-1)
    mp = rd.minimal_polynomial(rd.TorusPoint(R.one(), m, m))
    assert sorted(mult for _, mult in mp) == [3, 4]
    assert any(val == m and mult == 4 for val, mult in mp)
    z3 = R.cyclotomic(4)
    mp = rd.minimal_polynomial(rd.TorusPoint(z3.inverse(), z3, z3))
    assert len(mp) == 3
    assert sorted(mult for _, mult in mp) == [1, 3, 3]
    assert rd.minimal_polynomial(pt(R.one(), R.one())) == [(R.one(), 7)]
    # borderline H: (t^2-x^2)(t^2-1)(t^2-1/x^2) with mlt(-1)=2
    x = R.q(2)
    mp = rd.minimal_polynomial(rd.TorusPoint(-x, m, x))
    assert len(mp) == 6
    assert any(val == m and mult == 2 for val, mult in mp)
    # degrees drop from regular to borderline within the long family
    i = R.cyclotomic(3)
    reg = rd.minimal_polynomial(rd.TorusPoint(R.q(4), R.q(2), R.q(2)))
    bord = rd.minimal_polynomial(rd.TorusPoint(-R.one(), i, i))
    assert len(reg) == 5 and len(bord) == 4


def test_lambda_coords_pseudo_levi_row():
    z3 = R.cyclotomic(4)
    t = rd.TorusPoint(z3, z3.inverse(), z3.inverse())
    c = rd.classify(t)
    assert c.tag == rd.StabilizerTag.LL
    pairs = rd.lambda_coords(t, c)
    u0, w0 = pairs[0]
    # u^2 = e^{-2pi i/3} q^{-2}, w^2 = 1
    assert u0 * u0 == z3.inverse() * R.q(-2)
    assert w0 * w0 == R.one()
    assert len(pairs) == 4


def test_lambda_coords_theta_condition_s_ab():
    # for the a+b type the product u^2 w^2 must be q^-6
    x = R.q(3)
    t = rd.TorusPoint(x, R.one(), x)
    c = rd.classify(t)
    assert c.tag == rd.StabilizerTag.S_AB
    for u0, w0 in rd.lambda_coords(t, c):
        assert (u0 * w0) ** 2 == R.q(-6)


def test_lambda_coords_identity():
    t = pt(R.one(), R.one())
    c = rd.classify(t)
    us = {str(u) for u, _ in rd.lambda_coords(t, c)}
    assert us == {"1", "-1"}


def test_lambda_coords_branch_error():
    t = pt(R.q(5), R.q(7))
    c = rd.classify(t)
    with pytest.raises(BranchError):
        rd.lambda_coords(t, c)


def test_index_sets():
    I_k, Ibar = rd.index_sets((rd.ALPHA,))
    assert I_k == (1, 3, 6) and Ibar == (2, 4, 5, 7)
    I_k, _ = rd.index_sets((rd.BETA,))
    assert I_k == (1, 2, 4, 5, 7)
    I_k, _ = rd.index_sets((rd.Weight(3, 2),))
    assert I_k == (1, 2, 3, 4, 5)
    I_k, _ = rd.index_sets((rd.Weight(3, 1),))
    assert I_k == (1, 2, 3, 4, 6)
    I_k, _ = rd.index_sets((rd.BETA, rd.Weight(3, 1)))
    assert I_k == (1, 2, 4)
    I_k, _ = rd.index_sets((rd.Weight(2, 1), rd.BETA))
    assert I_k == (1, 2)
    I_k, _ = rd.index_sets((rd.ALPHA, rd.Weight(3, 2)))
    assert I_k == (1, 3)
    I_k, _ = rd.index_sets((rd.Weight(1, 1), rd.Weight(3, 1)))
    assert I_k == (1, 2)


def test_rho_k_pseudo_levi():
    # for the long A2 subsystem rho_k = 3a+2b, giving (rho_k, beta) = 3
    rk = rd.rho_k((rd.BETA, rd.Weight(3, 1)))
    assert rk == rd.Weight(3, 2)
    assert rd.positive_root_closure((rd.BETA, rd.Weight(3, 1))) == (
        rd.Weight(3, 1), rd.Weight(3, 2), rd.BETA)


def test_pair_sets():
    assert rd.pair_set_indices(rd.ALPHA) == ((1, 2), (3, 4), (4, 5), (6, 7))
    assert rd.pair_set_indices(rd.BETA) == ((2, 3), (5, 6))
    assert rd.pair_set_indices(rd.Weight(0, 0)) == tuple((i, i) for i in range(1, 8))


def test_theta_chart_consistency():
    # each chart must satisfy its defining Theta^k condition
    cases = [
        (rd.StabilizerTag.S_AB, rd.Weight(1, 1), -6),
        (rd.StabilizerTag.S_2AB, rd.Weight(2, 1), -8),
        (rd.StabilizerTag.L_3AB_REG, rd.Weight(3, 1), -6),
        (rd.StabilizerTag.L_3A2B_REG, rd.Weight(3, 2), -12),
        (rd.StabilizerTag.L_B_REG, rd.BETA, 0),
        (rd.StabilizerTag.S_A, rd.ALPHA, 0),
    ]
    for tag, gamma, c in cases:
        for branch in range(4):
            u_img, w_img, chart = rd.theta_chart(tag, 12, branch)
            val = (u_img ** (2 * int(gamma.a))) * (w_img ** (2 * int(gamma.b)))
            assert val == R.q(c), (tag, branch)

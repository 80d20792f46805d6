import pytest

from uqg2 import uqg
from uqg2.config import Config
from uqg2.errors import DepthError
from uqg2.rootdata import NU, Weight
from uqg2.scalars import ring

R = ring(12)
ENG = uqg.engine()


def gen(letter):
    return uqg.AlgebraElement.generator(letter)


def test_kostant_counts():
    assert uqg.kostant_count(Weight(1, 0)) == 1
    assert uqg.kostant_count(Weight(2, 1)) == 3
    assert uqg.kostant_count(Weight(3, 1)) == 4
    # brute-force enumeration gives 7 multisets for the highest root
    assert uqg.kostant_count(Weight(3, 2)) == 7
    assert uqg.kostant_count(Weight(4, 2)) == 9
    assert uqg.kostant_count(Weight(0, 0)) == 1
    assert uqg.kostant_count(Weight(-1, 0)) == 0


def test_serre_relators_reduce_to_zero():
    cubic, quartic = ENG.serre_elements()
    assert uqg.serre_reduce(cubic).is_zero()
    assert uqg.serre_reduce(quartic).is_zero()


def test_serre_reduce_identity_on_generators():
    fa = gen("a")
    assert uqg.serre_reduce(fa) == fa
    fb = gen("b")
    assert uqg.serre_reduce(fb) == fb


def test_serre_reduce_is_projection():
    fa, fb = gen("a"), gen("b")
    x = fb * fa * fb * fa + R.q(2) * (fa * fa * fb * fb)
    once = uqg.serre_reduce(x)
    assert uqg.serre_reduce(once) == once


def test_weight_space_basis_dimensions():
    for a, b in [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3)]:
        basis = uqg.weight_space_basis(Weight(a, b))
        assert basis.dimension == uqg.kostant_count(Weight(a, b))
        assert len(set(basis.normal_words)) == basis.dimension
    with pytest.raises(DepthError):
        uqg.weight_space_basis(Weight(10, 1))


def test_certification_representative_slices():
    for a, b in [(2, 1), (1, 2), (4, 1), (3, 2), (2, 2)]:
        rep = ENG.certify_slice(Weight(a, b))
        assert rep["rank_matches"], rep
        assert rep["ideal_reduces_to_zero"], rep
        assert rep["gram_full"], rep


def test_qcomm_examples():
    fa, fb = gen("a"), gen("b")
    got = uqg.qcomm(fa, fa, R.q(2))
    expect = uqg.serre_reduce((R.one() - R.q(2)) * (fa * fa))
    assert got == expect
    f13 = uqg.qcomm(fb, fa, R.q(3))
    assert f13.weight() == Weight(1, 1)
    x = fa * fb
    assert uqg.qcomm(x, x, R.one()).is_zero()


def test_appendix_entries_first_row():
    assert uqg.appendix_f(1, 2) == gen("a")
    three = R.q_bracket_int(3)
    assert uqg.appendix_f(2, 3) == three * gen("b")
    assert uqg.appendix_f(3, 4) == gen("a")
    assert uqg.appendix_f(5, 6) == three * gen("b")


def test_appendix_weights():
    for i in range(1, 8):
        for j in range(i + 1, 8):
            el = uqg.appendix_f(i, j)
            if el.is_zero():
                continue
            assert el.weight() == NU[i - 1] - NU[j - 1], (i, j)
    with pytest.raises(IndexError):
        uqg.appendix_f(0, 3)
    with pytest.raises(IndexError):
        uqg.appendix_f(3, 8)


def test_appendix_nonzero_entries_reduce_nonzero():
    # every listed bracket must survive serre reduction
    for (i, j), el in uqg._appendix_table(12).items():
        assert not uqg.serre_reduce(el).is_zero(), (i, j)


def test_mod_j_relation():
    fa, fb = gen("a"), gen("b")
    got = uqg.reduce_mod_J(fa * fb)
    assert got == R.q(-3) * (fb * fa)
    assert uqg.reduce_mod_J(fb) == fb


def _word_el(s, coeff):
    return uqg.AlgebraElement.from_word(tuple(s), coeff)


def test_mod_j_table():
    """The ten nonzero entries of the F matrix modulo the ordering ideal."""
    q = R.q
    two = R.q_bracket_int(2)
    three = R.q_bracket_int(3)
    expected = {
        (1, 2): _word_el("a", R.one()),
        (2, 3): _word_el("b", three),
        (3, 4): _word_el("a", R.one()),
        (4, 5): _word_el("a", R.one()),
        (5, 6): _word_el("b", three),
        (6, 7): _word_el("a", R.one()),
        (2, 4): _word_el("ba", q(-3) - q(3)),
        (3, 5): _word_el("aa", (q(-2) - R.one()) / two),
        (5, 7): _word_el("ba", q(-3) - q(3)),
        (2, 5): _word_el("baa", (q(-3) - q(1)) * (q(-3) - q(3)) / (two * two)),
    }
    for i in range(1, 8):
        for j in range(i + 1, 8):
            el = uqg.appendix_f(i, j)
            got = uqg.reduce_mod_J(el)
            want = expected.get((i, j))
            if want is None:
                assert got.is_zero(), (i, j, got)
            else:
                assert got == want, (i, j)


def test_pairing_is_independence_oracle():
    # the pairing must vanish on the whole ideal slice, not only relators
    mu = Weight(2, 2)
    for row in ENG.ideal_slice_rows(mu):
        el = uqg.AlgebraElement(row)
        for word in uqg.words_of_content(2, 2):
            probe = uqg.AlgebraElement.from_word(word)
            assert ENG.pairing_elements(el, probe).is_zero()

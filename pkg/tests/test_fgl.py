from fractions import Fraction

import pytest

from stemcharts.fgl import (FGLAxiomError, additive_fgl, fgl_series,
                            hazewinkel_lambdas, multiplicative_fgl,
                            p_typical_reduction, truncate_fgl, universal_fgl,
                            universal_model)
from stemcharts.series import compose_univariate, reversion


def nu(k: int) -> int:
    """p when k is a p-power, else 1."""
    for p in range(2, k + 1):
        if k % p == 0:
            kk = k
            while kk % p == 0:
                kk //= p
            return p if kk == 1 else 1
    return 1


def test_universal_bound1():
    pres, law = universal_fgl(1)
    assert [d for _, d in pres.generators] == [1]
    c = law.coefficient(1, 1)
    # F = x + y + c*xy with c a unit multiple of x_1
    assert c.terms in ({((0, 1),): 1}, {((0, 1),): -1})


def test_unitality_and_commutativity():
    pres, law = universal_fgl(3)
    assert law.coefficient(1, 0).terms == {(): 1}
    assert law.coefficient(2, 0).is_zero()
    assert law.coefficient(1, 2) == law.coefficient(2, 1)


@pytest.mark.parametrize("bound", range(1, 7))
def test_axioms_all_bounds(bound):
    # construction verifies unitality, commutativity, associativity
    universal_fgl(bound)


def test_lazard_generator_leading_coefficients():
    # x_n = +-nu(n+1) m_n modulo decomposables
    u = universal_model(6)
    for n in range(1, 7):
        xn = u.x_generator(n)
        lead = Fraction(xn.coefficient(((n - 1, 1),)))
        assert abs(lead) == nu(n + 1), (n, lead)


def test_truncation_consistency():
    _, law6 = universal_fgl(6)
    for smaller in (1, 2, 3, 4):
        _, law_small = universal_fgl(smaller)
        trunc = truncate_fgl(law6, smaller)
        assert trunc.series.keys() == law_small.series.keys()
        for key in trunc.series:
            assert trunc.series[key].terms == law_small.series[key].terms


def test_log_exp_roundtrip():
    m = multiplicative_fgl(5)
    log = fgl_series(m, "log")
    exp = fgl_series(m, "exp")
    comp = compose_univariate(exp, log)
    assert comp.terms == {(1,): m.presentation.ring().one()}


def test_multiplicative_log():
    m = multiplicative_fgl(6)
    log = fgl_series(m, "log")
    for n in range(1, 7):
        c = log.coefficient((n,)).constant_term()
        assert c == Fraction((-1) ** (n + 1), n)


def test_additive_inverse():
    inv = fgl_series(additive_fgl(4), "inverse")
    assert {e: c.constant_term() for e, c in inv.terms.items()} == {(1,): -1}


def test_multiplicative_inverse_series():
    # for x + y + xy the inverse is -x + x^2 - x^3 + ... (to order bound+1)
    inv = fgl_series(multiplicative_fgl(5), "inverse")
    vals = {e[0]: c.constant_term() for e, c in inv.terms.items()}
    assert vals == {n: (-1) ** n for n in range(1, 7)}


def test_log_requires_rational_base():
    _, law = universal_fgl(2)
    with pytest.raises(ValueError):
        fgl_series(law, "log")


def test_universal_log_linearizes():
    # the Q-base change of the universal law is isomorphic via log to the
    # additive law: log F(x, y) = log x + log y
    u = universal_model(5)
    from stemcharts.series import Series
    order = 6
    x = Series.variable(u.mring, 2, order, 0)
    y = Series.variable(u.mring, 2, order, 1)
    lx = compose_univariate(u.log, x)
    ly = compose_univariate(u.log, y)
    lhs = Series.zero(u.mring, 2, order)
    fpow = {0: Series(u.mring, 2, order, {(0, 0): u.mring.one()})}

    def fp(n):
        if n not in fpow:
            fpow[n] = fp(n - 1) * u.F
        return fpow[n]

    for (n,), c in u.log.terms.items():
        lhs = lhs + fp(n).scale_poly(c)
    assert lhs == lx + ly


@pytest.mark.parametrize("p,bound,expected_degrees", [
    (2, 1, [1]),
    (3, 8, [2, 8]),
    (2, 7, [1, 3, 7]),
    (5, 4, [4]),
])
def test_p_typical_generator_degrees(p, bound, expected_degrees):
    _, law = universal_fgl(1)
    pres, _ = p_typical_reduction(law, p, bound)
    assert [d for _, d in pres.generators] == expected_degrees


def test_p_typical_log_leading_term():
    # log coefficient of x^p is v_1 / p exactly (Hazewinkel recursion)
    from stemcharts.fgl import p_typical_log
    for p in (2, 3, 5):
        pres, log = p_typical_log(p, p * p)
        ring = pres.ring()
        lam1 = log.coefficient((p,))
        assert lam1.terms == {((0, 1),): Fraction(1, p)}


def test_p_typical_axioms_verified():
    _, law = universal_fgl(1)
    for p in (2, 3):
        _, bp = p_typical_reduction(law, p, 6)
        bp.verify_axioms()


def test_hazewinkel_recursion_degrees():
    from stemcharts.poly import PolyRing, mon_deg
    ring = PolyRing(["v1", "v2"], [2, 8], 10)
    lams = hazewinkel_lambdas(ring, 3, 2)
    for n, lam in enumerate(lams):
        for m in lam.terms:
            assert mon_deg(m, ring.degrees) == 3 ** n - 1


def test_p_typical_classifying_images():
    from fractions import Fraction as Fr
    # additive law p-typifies with all v-images zero
    _, law = p_typical_reduction(additive_fgl(8), 3, 8)
    assert all(img.is_zero() for img in law.classifying_images)
    # multiplicative law: v_1 goes to a unit, v_2 to zero (odd p)
    _, law = p_typical_reduction(multiplicative_fgl(8), 3, 8)
    img1, img2 = law.classifying_images
    assert img1.terms == {(): 1}
    assert img2.is_zero()
    # multiplicative at p = 2: v_1 image is the unit -1
    _, law2 = p_typical_reduction(multiplicative_fgl(3), 2, 3)
    assert law2.classifying_images[0].terms == {(): -1}
    # universal law at p = 2: v_1 classifies to the Lazard generator x_1
    _, uni = universal_fgl(3)
    _, lawu = p_typical_reduction(uni, 2, 3)
    assert lawu.classifying_images[0].terms == {((0, 1),): 1}
    # image of v_2 is 2-integral of algebraic degree 3
    from stemcharts.poly import mon_deg
    img = lawu.classifying_images[1]
    ring = uni.presentation.ring()
    for mon, c in img.terms.items():
        assert Fr(c).denominator % 2 != 0
        assert mon_deg(mon, ring.degrees) == 3

import pytest

from pptrinomial.gf import ExtElem
from pptrinomial.mpoly import (MultiPoly, X0, X1, Y0, Y1, Y2, constant,
                               equal_on_random_points, monomial, variable)


def rnd_poly(tw, rng, nterms=5, maxdeg=3):
    terms = {}
    for _ in range(nterms):
        exps = tuple(rng.randrange(maxdeg) for _ in range(6))
        terms[exps] = rng.randrange(tw.n)
    return MultiPoly.from_terms(tw, terms)


def test_ring_laws(tower2, rng):
    for _ in range(80):
        a, b, c = (rnd_poly(tower2, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a + a).is_zero()  # characteristic 2


def test_freshmans_dream(tower2):
    x0, y0 = variable(tower2, X0), variable(tower2, Y0)
    assert (x0 + y0) ** 2 == x0 ** 2 + y0 ** 2
    assert (x0 + y0).square() == x0 * x0 + y0 * y0


def test_product_degree_with_eval_oracle(tower3, rng):
    # deg(a*b) = deg a + deg b, and the product provably does not vanish:
    # witness a nonzero value at some random point
    for _ in range(40):
        a, b = rnd_poly(tower3, rng, 4), rnd_poly(tower3, rng, 4)
        if a.is_zero() or b.is_zero():
            continue
        prod = a * b
        assert prod.degree() == a.degree() + b.degree()
        witnessed = any(prod.eval_at([rng.randrange(tower3.n) for _ in range(6)])
                        for _ in range(40))
        assert witnessed or not prod.is_zero()


def test_substitute_identity_and_power(tower2, rng):
    x0 = variable(tower2, X0)
    y0 = variable(tower2, Y0)
    y1 = variable(tower2, Y1)
    n_, d_ = rnd_poly(tower2, rng), rnd_poly(tower2, rng)
    while d_.is_zero():
        d_ = rnd_poly(tower2, rng)
    num, den = x0.substitute(X0, n_, d_)
    assert num == n_ and den == d_
    num, den = (x0 ** 2).substitute(X0, y0, y1)
    assert num == y0 ** 2 and den == y1 ** 2
    # polynomial without the variable is untouched
    num, den = y0.substitute(X0, n_, d_)
    assert num == y0 and den == constant(tower2, 1)
    with pytest.raises(ZeroDivisionError):
        x0.substitute(X0, n_, MultiPoly.zero(tower2))


def test_exact_div_roundtrip(tower2, rng):
    for _ in range(80):
        b, c = rnd_poly(tower2, rng, 4), rnd_poly(tower2, rng, 4)
        if b.is_zero() or c.is_zero():
            continue
        assert (b * c).exact_div(b) == c
    x0 = variable(tower2, X0)
    y1 = variable(tower2, Y1)
    assert (x0 * y1 + constant(tower2, 1)).exact_div(x0) is None
    with pytest.raises(ZeroDivisionError):
        x0.exact_div(MultiPoly.zero(tower2))


def test_twist_is_cube_root_of_identity(tower2, rng):
    for _ in range(50):
        a, b = rnd_poly(tower2, rng), rnd_poly(tower2, rng)
        assert a.frobenius_twist().frobenius_twist().frobenius_twist() == a
        assert (a + b).frobenius_twist() == a.frobenius_twist() + b.frobenius_twist()
        assert (a * b).frobenius_twist() == a.frobenius_twist() * b.frobenius_twist()
        assert a.swap_xy().swap_xy() == a


def test_twist_sends_tilde_n_to_tilde_m(tower3, rng):
    # B^(1+q^2) Y0Y1 + B^(q^2) Y0Y2 + Y1Y2  |->  B Y0Y1 + Y0Y2 + B^(1+q) Y1Y2
    from pptrinomial.surface import tilde_m, tilde_n
    for _ in range(20):
        B = ExtElem(tower3, rng.randrange(1, tower3.n))
        mt = tilde_n(tower3, B).frobenius_twist()
        y0, y1, y2 = (variable(tower3, v) for v in (Y0, Y1, Y2))
        literal = (B * (y0 * y1) + y0 * y2
                   + (B * B.frobenius()) * (y1 * y2))
        assert mt == literal
        assert tilde_m(tower3, B) == literal


def test_coeff_of_and_dehomog(tower2, rng):
    y2 = variable(tower2, Y2)
    one = constant(tower2, 1)
    assert (y2 ** 3).at_y2_one() == one
    z = MultiPoly.zero(tower2)
    assert z.coeff_of((1, 0, 0, 0, 0, 0)).v == 0
    p = rnd_poly(tower2, rng)
    x1_poly = variable(tower2, X1) * p
    if not x1_poly.is_zero():
        with pytest.raises(ValueError):
            x1_poly.at_y2_one()


def test_eval_at_is_homomorphism(tower2, rng):
    for _ in range(50):
        a, b = rnd_poly(tower2, rng), rnd_poly(tower2, rng)
        pt = [rng.randrange(tower2.n) for _ in range(6)]
        assert (a * b).eval_at(pt) == a.eval_at(pt) * b.eval_at(pt)
        assert (a + b).eval_at(pt) == a.eval_at(pt) + b.eval_at(pt)


def test_eval_char2_cancellation(tower2, rng):
    x0, y0 = variable(tower2, X0), variable(tower2, Y0)
    a = rng.randrange(tower2.n)
    assert (x0 + y0).eval_at([a, 0, 0, a, 0, 0]).v == 0


def test_identity_testing_helper(tower2, rng):
    a = rnd_poly(tower2, rng, 5)
    b = a + constant(tower2, 1)
    assert equal_on_random_points(a, a, rng)
    assert not equal_on_random_points(a, b, rng)


def test_exponent_overflow_guard(tower2):
    with pytest.raises(ValueError):
        monomial(tower2, 1, (64, 0, 0, 0, 0, 0))
    big = monomial(tower2, 1, (40, 0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        big.square()


def test_canonical_text_and_json(tower2):
    p = (variable(tower2, X0) * variable(tower2, Y1)
         + constant(tower2, 1)
         + variable(tower2, X0) ** 2)
    txt = p.to_text()
    assert txt.index("X0^2") < txt.index("X0 Y1")
    assert txt.endswith("+ (1,0,0)")  # the constant term prints last
    assert p.terms_json()[0][0] == [2, 0, 0, 0, 0, 0]

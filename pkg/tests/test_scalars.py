"""Scalar tower: frozen example values, oracle cross-checks, properties."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import sympy

from covquant.scalars import (
    GaussianRational,
    LaurentPoly,
    PiScalar,
    RationalFn,
    PS_ONE,
    PS_PI,
    PS_T,
    PS_ZERO,
    parse_scalar,
    qbinomial,
    qfactorial,
    qinteger,
    qinteger_signed,
    render_scalar,
)

import oracles

V = oracles.V


def PS(plus, minus):
    """Shorthand: PiScalar from {exp: rational} component dicts."""
    return PiScalar(
        RationalFn(LaurentPoly({e: GaussianRational(c) for e, c in plus.items()})),
        RationalFn(LaurentPoly({e: GaussianRational(c) for e, c in minus.items()})),
    )


# --- quantum integers -------------------------------------------------------

def test_qinteger_trivial():
    assert qinteger(0, 1) == PS_ZERO
    assert qinteger(1, 1) == PS_ONE


def test_qinteger_2_frozen():
    # <2> = pi v + v^-1: components (v + v^-1, -v + v^-1)
    assert qinteger(2, 1) == PS({1: 1, -1: 1}, {1: -1, -1: 1})
    assert oracles.scalar_equals(qinteger(2, 1),
                                 oracles.qinteger_oracle(2, 1, 1),
                                 oracles.qinteger_oracle(2, 1, -1))


def test_qinteger_3_frozen():
    # <3> = v^2 + pi + v^-2
    assert qinteger(3, 1) == PS({2: 1, 0: 1, -2: 1}, {2: 1, 0: -1, -2: 1})
    assert oracles.scalar_equals(qinteger(3, 1),
                                 oracles.qinteger_oracle(3, 1, 1),
                                 oracles.qinteger_oracle(3, 1, -1))


@pytest.mark.parametrize("k,d", [(0, 1), (1, 2), (2, 2), (4, 1), (5, 3), (3, 2)])
def test_qinteger_matches_oracle(k, d):
    assert oracles.scalar_equals(qinteger(k, d),
                                 oracles.qinteger_oracle(k, d, 1),
                                 oracles.qinteger_oracle(k, d, -1))


def test_qinteger_signed():
    for k in range(1, 5):
        for d in (1, 2):
            # <-k> = -pi^(dk) <k>
            assert qinteger_signed(-k, d) == -(PiScalar.pi_power(d * k) * qinteger(k, d))
    assert qinteger_signed(3, 2) == qinteger(3, 2)


def test_qfactorial():
    assert qfactorial(2, 1) == qinteger(2, 1)
    assert oracles.scalar_equals(qfactorial(4, 1),
                                 oracles.qfactorial_oracle(4, 1, 1),
                                 oracles.qfactorial_oracle(4, 1, -1))


def test_qbinomial_trivial_and_frozen():
    assert qbinomial(5, 0, 1) == PS_ONE
    assert qbinomial(-3, 0, 2) == PS_ONE
    assert qbinomial(2, 1, 1) == qinteger(2, 1)


@pytest.mark.parametrize("n,k,d", [
    (2, 1, 1), (4, 2, 1), (3, 3, 2), (-1, 2, 1), (-3, 2, 1), (0, 2, 2),
    (-4, 3, 3), (6, 3, 1),
])
def test_qbinomial_matches_oracle(n, k, d):
    assert oracles.scalar_equals(qbinomial(n, k, d),
                                 oracles.qbinomial_oracle(n, k, d, 1),
                                 oracles.qbinomial_oracle(n, k, d, -1))


def test_qbinomial_denominator_free_sweep():
    # laurentness for |n| <= 8, k <= 8, d <= 3 is asserted inside qbinomial
    for d in (1, 2, 3):
        for n in range(-8, 9):
            for k in range(0, 9):
                qbinomial(n, k, d)


def test_qbinomial_bar_invariant():
    for (n, k, d) in [(4, 2, 1), (-3, 2, 2), (5, 3, 1)]:
        b = qbinomial(n, k, d)
        assert b.bar() == b


# --- bar and twist ----------------------------------------------------------

def test_bar_of_v():
    v = PiScalar.v_power(1)
    assert v.bar() == PS({-1: 1}, {-1: -1})  # pi v^-1


def test_bar_fixes_qintegers():
    for n in range(0, 7):
        q = qinteger(n, 1)
        assert q.bar() == q


def test_twist_of_pi():
    assert PS_PI.twist() == -PS_PI


def test_twist_qinteger_t_power():
    for n in range(0, 7):
        assert qinteger(n, 1).twist() == PiScalar.t_power(n - 1) * qinteger(n, 1)


def test_twisted_qbinomial_identity():
    # [b k] at (t^-1 v, -pi) = t^(k(b-k)d) [b k] at (v, pi)
    for (b, k, d) in [(2, 1, 2), (3, 1, 1), (3, 2, 1), (4, 2, 2), (5, 3, 1)]:
        lhs = qbinomial(b, k, d).twist()
        rhs = PiScalar.t_power(k * (b - k) * d) * qbinomial(b, k, d)
        assert lhs == rhs


def test_twist_inverse():
    x = PS({2: Fraction(3, 2), -1: 1}, {0: 2})
    assert x.twist().twist_inv() == x
    assert x.twist_inv().twist() == x


# --- valuation and lattice --------------------------------------------------

def test_valuation_examples():
    x = PiScalar.v_power(2) + PS_PI  # v^2 + pi
    assert x.valuation() == (0, 0)
    assert not PiScalar.v_power(-1).in_lattice()
    one_minus_v = PS_ONE - PiScalar.v_power(1)
    assert (PS_ONE / one_minus_v).in_lattice()
    assert PS_ZERO.valuation() == (float("inf"), float("inf"))
    assert PS_ZERO.in_lattice()


def test_evaluate0():
    x = PS_ONE / (PS_ONE - PiScalar.v_power(1)) + PiScalar.v_power(1) * PS_PI
    p, m = x.evaluate0()
    assert p == GaussianRational(1) and m == GaussianRational(1)
    with pytest.raises(ZeroDivisionError):
        PiScalar.v_power(-1).evaluate0()


# --- randomized properties --------------------------------------------------

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def laurent_polys(draw):
    n = draw(st.integers(0, 3))
    d = {}
    for _ in range(n):
        e = draw(st.integers(-3, 3))
        re = draw(rationals)
        im = draw(rationals)
        if re or im:
            d[e] = GaussianRational(re, im)
    return LaurentPoly(d)


@st.composite
def pi_scalars(draw):
    nump = draw(laurent_polys())
    numm = draw(laurent_polys())
    denp = draw(laurent_polys())
    denm = draw(laurent_polys())
    if not denp:
        denp = LaurentPoly({0: GaussianRational(1)})
    if not denm:
        denm = LaurentPoly({0: GaussianRational(1)})
    return PiScalar(RationalFn(nump, denp), RationalFn(numm, denm))


@settings(max_examples=100, deadline=None)
@given(pi_scalars(), pi_scalars(), pi_scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=50, deadline=None)
@given(pi_scalars())
def test_bar_involution(a):
    assert a.bar().bar() == a


@settings(max_examples=50, deadline=None)
@given(pi_scalars())
def test_twist_order_four(a):
    assert a.twist().twist().twist().twist() == a


@settings(max_examples=100, deadline=None)
@given(pi_scalars())
def test_bar_twist_commute(a):
    assert a.bar().twist() == a.twist().bar()


@settings(max_examples=50, deadline=None)
@given(pi_scalars(), pi_scalars())
def test_bar_and_twist_are_ring_maps(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()
    assert (a * b).twist() == a.twist() * b.twist()
    assert (a + b).twist() == a.twist() + b.twist()


@settings(max_examples=60, deadline=None)
@given(pi_scalars(), pi_scalars())
def test_normalization_canonical(a, b):
    # equal values have identical stored representations
    if b.plus and b.minus:
        q = a / b
        r = q * b
        assert r == a
        assert (r.plus.num == a.plus.num and r.plus.den == a.plus.den
                and r.minus.num == a.minus.num and r.minus.den == a.minus.den)


@settings(max_examples=80, deadline=None)
@given(pi_scalars())
def test_render_parse_roundtrip(a):
    assert parse_scalar(render_scalar(a)) == a


def test_render_golden():
    x = (PiScalar.v_power(-2) * PS_T * PiScalar.from_rational(Fraction(3, 2))
         + PS_ONE)
    assert render_scalar(x) == {"plus": "(3/2)*t*v^-2 + 1",
                                "minus": "(3/2)*t*v^-2 + 1"}


def test_specialize():
    q = qinteger(2, 1)
    plus = q.specialize(1)
    minus = q.specialize(-1)
    assert sympy.simplify(oracles.ratfn_to_sympy(plus) - (V + 1 / V)) == 0
    assert sympy.simplify(oracles.ratfn_to_sympy(minus) - (1 / V - V)) == 0

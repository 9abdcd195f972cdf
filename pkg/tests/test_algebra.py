"""Exact-algebra arithmetic, normal forms, hypergeometric elements, evaluation."""

import random
from fractions import Fraction

import pytest

from catsum.algebra import (
    H1,
    H2,
    ONE,
    SQRT_1_4T,
    ZERO,
    AlgebraElement,
    Laurent,
    PiPoly,
    catalan_gf,
    eval_quarter,
    gauss_value_hk,
    hypergeom_hk,
)
from catsum.series import generator_series, hypergeom_series, series_expand

S_EQ0_NUM = H1 - ONE  # numerator of the two-vertex equality sum


def quarter_t2(k):
    return AlgebraElement.from_laurent(Laurent.t_power(k, Fraction(1, 4)))


def test_additive_inverse_and_identity():
    assert H1 + (-H1) == ZERO
    assert (H1 - ONE).shift_t(-2).scale(Fraction(1, 4)) + (ONE - H1).shift_t(-2).scale(
        Fraction(1, 4)
    ) == ZERO
    assert ONE + (H1 - ONE) == H1


def test_mul_reduces_square_root():
    assert SQRT_1_4T * SQRT_1_4T == AlgebraElement.from_laurent(Laurent({0: 1, 1: -4}))
    assert H1 * ONE == H1


def test_catalan_gf_square_matches_expanded_form():
    c = catalan_gf()
    expected = AlgebraElement(
        {
            (0, 0, 0): Laurent({-2: Fraction(1, 2), -1: -1}),
            (0, 0, 1): Laurent({-2: Fraction(-1, 2)}),
        }
    )
    assert c * c == expected  # (2 - 4t - 2s)/(4 t^2)


def test_degree():
    assert H1.degree() == 2
    assert SQRT_1_4T.degree() == 1
    assert (H1 - ONE).shift_t(-2).degree() == 2
    assert ZERO.degree() is None
    assert (H1 * H2 * SQRT_1_4T).degree() == 5


def test_hypergeom_hk_base_cases_and_contiguity():
    assert hypergeom_hk(0) == H1
    assert hypergeom_hk(1) == H2
    z = Laurent({2: 16})
    one_plus_z = Laurent({0: 1, 2: 16})
    expected = (H2.mul_laurent(one_plus_z) - H1).scale(Fraction(8, 5)).shift_t(-2).scale(
        Fraction(1, 16)
    )
    assert hypergeom_hk(2) == expected
    with pytest.raises(ValueError):
        hypergeom_hk(-1)
    # the three-term relation holds as an exact identity for all computed K
    for k in range(19):
        lhs = hypergeom_hk(k + 2).mul_laurent(z).scale(
            Fraction(2 * k + 1, 2) * Fraction(2 * k + 5, 2) / (k + 2)
        )
        rhs = hypergeom_hk(k + 1).mul_laurent(one_plus_z).scale(k + 1) - hypergeom_hk(k).scale(
            k + 1
        )
        assert lhs == rhs, k


def test_hypergeom_hk_series_against_direct_formula():
    for k in range(21):
        via_algebra = series_expand(hypergeom_hk(k), 16)
        direct_z = hypergeom_series(Fraction(-1, 2), Fraction(2 * k - 1, 2), Fraction(k + 1), 8)
        # substitute z = 16 t^2
        coeffs = [Fraction(0)] * 17
        for n, c in enumerate(direct_z.coeffs):
            if 2 * n <= 16:
                coeffs[2 * n] = c * 16**n
        assert via_algebra.coeffs == coeffs, k


def test_gauss_values():
    assert eval_quarter(H1) == PiPoly({1: 4})
    assert eval_quarter(H2) == PiPoly({1: Fraction(8, 3)})
    for k in range(21):
        assert eval_quarter(hypergeom_hk(k)) == gauss_value_hk(k), k


def test_eval_quarter_examples():
    s_eq0 = S_EQ0_NUM.shift_t(-2).scale(Fraction(1, 4))
    assert eval_quarter(s_eq0) == PiPoly({1: 16, 0: -4})
    assert eval_quarter(SQRT_1_4T) == PiPoly()
    assert eval_quarter(catalan_gf()) == PiPoly({0: 2})


def _random_laurent(rng):
    return Laurent(
        {rng.randint(-3, 3): Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3)}
    )


def _random_element(rng):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        key = (rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 1))
        terms[key] = _random_laurent(rng)
    return AlgebraElement(terms)


def test_ring_axioms_randomized():
    rng = random.Random(1)
    for _ in range(60):
        x, y, z = (_random_element(rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert x + y == y + x
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        assert (x * y).degree() is None or (x * y).degree() <= (x.degree() + y.degree())


def test_normalization_idempotent_randomized():
    rng = random.Random(2)
    for _ in range(40):
        x = _random_element(rng) * _random_element(rng)
        # re-normalizing the stored association changes nothing
        assert AlgebraElement(dict(x.terms)) == x
        assert all(c in (0, 1) for (_, _, c) in x.terms)
        assert not any(p.is_zero() for p in x.terms.values())


def test_eval_quarter_is_ring_morphism():
    rng = random.Random(3)
    for _ in range(40):
        x, y = _random_element(rng), _random_element(rng)
        assert eval_quarter(x * y) == eval_quarter(x) * eval_quarter(y)
        assert eval_quarter(x + y) == eval_quarter(x) + eval_quarter(y)


def test_division():
    third = AlgebraElement.from_laurent(Laurent.t_power(2, 3))
    assert (H1 * third) / third == H1
    assert (H1.scale(6)) / 3 == H1.scale(2)
    with pytest.raises(ValueError):
        H1 / (H1 + ONE)
    with pytest.raises(ZeroDivisionError):
        H1 / 0


def test_catalan_gf_series_and_value():
    c = catalan_gf()
    assert series_expand(c, 4).coeffs == [1, 1, 2, 5, 14]
    assert eval_quarter(c) == PiPoly({0: 2})


def test_substitute_sqrt_t():
    x = (H1 - ONE).shift_t(-2)
    assert x.substitute_sqrt_t() == (H1 - ONE).shift_t(-1)
    with pytest.raises(ValueError):
        catalan_gf().substitute_sqrt_t()


def test_rendering():
    s_eq0 = (H1 - ONE).shift_t(-2).scale(Fraction(1, 4))
    assert str(s_eq0) == "1/4*t^-2*H1 - 1/4*t^-2"
    assert s_eq0.pretty() == "(H1 - 1)/(4*t^2)"
    assert catalan_gf().pretty() == "(-s + 1)/(2*t)"
    value = PiPoly({1: 16, 0: -4})
    assert str(value) == "-4 + 16*pi^-1"
    assert value.pretty() == "16/pi - 4"
    assert value.to_decimal(6) == "1.092958"
    assert PiPoly({1: Fraction(-2, 3), 0: Fraction(1, 4)}).pretty() == "-2/(3*pi) + 1/4"
    assert ZERO.pretty() == "0"


def test_json_shapes():
    s_eq0 = (H1 - ONE).shift_t(-2).scale(Fraction(1, 4))
    blob = s_eq0.to_json()
    assert blob == {
        "terms": [
            {"h1": 1, "h2": 0, "s": 0, "coeff": {"-2": "1/4"}},
            {"h1": 0, "h2": 0, "s": 0, "coeff": {"-2": "-1/4"}},
        ]
    }
    assert PiPoly({1: 16, 0: -4}).to_json() == [[1, "16"], [0, "-4"]]


def test_pipoly_decimal_truncates():
    # 1/pi = 0.3183098861837906..., truncation keeps 12 exact digits
    assert PiPoly({1: 1}).to_decimal(12) == "0.318309886183"
    assert PiPoly({0: Fraction(-1, 8)}).to_decimal(3) == "-0.125"


def test_generator_series_match_algebra_generators():
    for name, elt in (("H1", H1), ("H2", H2), ("s", SQRT_1_4T), ("C", catalan_gf())):
        assert generator_series(name, 12) == series_expand(elt, 12)

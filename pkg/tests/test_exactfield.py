import random
from fractions import Fraction

import pytest

from liederiv.exactfield import (
    FIELD_Q,
    FIELD_QI,
    FieldMismatchError,
    GaussianRational,
    I,
    coerce_scalar,
    embed_rational,
    format_scalar,
    inv,
    one,
    parse_scalar,
    zero,
)
from conftest import rand_fraction, rand_gauss


def test_fraction_arithmetic_examples():
    assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)
    assert inv(Fraction(2, 3)) == Fraction(3, 2)
    assert inv(Fraction(1)) == Fraction(1)


def test_imaginary_unit_squares_to_minus_one():
    assert I * I == GaussianRational(-1)
    assert I * I == -1


def test_gaussian_inverse_example():
    x = GaussianRational(2, 1)
    assert inv(x) == GaussianRational(Fraction(2, 5), Fraction(-1, 5))
    assert x * inv(x) == GaussianRational(1)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        inv(Fraction(0))
    with pytest.raises(ZeroDivisionError):
        inv(GaussianRational(0))


def test_field_axioms_randomized():
    rng = random.Random(101)
    for _ in range(120):
        a, b, c = (rand_gauss(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        assert a + zero(FIELD_QI) == a
        assert a * one(FIELD_QI) == a
        if a:
            assert a * inv(a) == one(FIELD_QI)


def test_embedding_is_ring_homomorphism():
    rng = random.Random(55)
    assert embed_rational(Fraction(1, 2)) == GaussianRational(Fraction(1, 2))
    assert embed_rational(Fraction(0)) == zero(FIELD_QI)
    for _ in range(120):
        a, b = rand_fraction(rng), rand_fraction(rng)
        assert embed_rational(a + b) == embed_rational(a) + embed_rational(b)
        assert embed_rational(a * b) == embed_rational(a) * embed_rational(b)
        # injectivity on this sample
        if a != b:
            assert embed_rational(a) != embed_rational(b)


def test_conjugate_and_norm():
    rng = random.Random(7)
    for _ in range(60):
        x = rand_gauss(rng)
        assert x.conjugate().conjugate() == x
        assert x * x.conjugate() == GaussianRational(x.norm_sq())
        assert (x.norm_sq() == 0) == (not x)


def test_canonical_form_is_structural_equality():
    assert Fraction(2, 4) == Fraction(1, 2)
    assert Fraction(-1, -2) == Fraction(1, 2)
    x = GaussianRational(Fraction(2, 4), Fraction(-3, -6))
    assert (x.re.numerator, x.re.denominator) == (1, 2)
    assert (x.im.numerator, x.im.denominator) == (1, 2)


@pytest.mark.parametrize(
    "text,field,expected",
    [
        ("1/2", FIELD_Q, Fraction(1, 2)),
        ("-7/3", FIELD_Q, Fraction(-7, 3)),
        ("5", FIELD_Q, Fraction(5)),
        ("i", FIELD_QI, GaussianRational(0, 1)),
        ("-i", FIELD_QI, GaussianRational(0, -1)),
        ("0/1+1/1*i", FIELD_QI, GaussianRational(0, 1)),
        ("1/2-3/4*i", FIELD_QI, GaussianRational(Fraction(1, 2), Fraction(-3, 4))),
        ("-2/3+i", FIELD_QI, GaussianRational(Fraction(-2, 3), 1)),
        ("3/4*i", FIELD_QI, GaussianRational(0, Fraction(3, 4))),
        ("-1/1", FIELD_QI, GaussianRational(-1)),
    ],
)
def test_parse_scalar_examples(text, field, expected):
    assert parse_scalar(text, field) == expected


@pytest.mark.parametrize(
    "text,field",
    [
        ("", FIELD_Q),
        ("1.5", FIELD_Q),
        ("i", FIELD_Q),
        ("1/2+", FIELD_QI),
        ("2i", FIELD_QI),
        ("i*i", FIELD_QI),
        ("1/0x", FIELD_Q),
        ("1/2*i*i", FIELD_QI),
        ("+*i", FIELD_QI),
    ],
)
def test_parse_scalar_rejects_malformed(text, field):
    with pytest.raises(ValueError):
        parse_scalar(text, field)


def test_format_parse_round_trip_randomized():
    rng = random.Random(99)
    for _ in range(200):
        a = rand_fraction(rng, -50, 50, 12)
        assert parse_scalar(format_scalar(a), FIELD_Q) == a
        x = rand_gauss(rng, -50, 50, 12)
        assert parse_scalar(format_scalar(x), FIELD_QI) == x
    # purely real and purely imaginary edge cases
    for x in (GaussianRational(0), GaussianRational(3), GaussianRational(0, -2)):
        assert parse_scalar(format_scalar(x), FIELD_QI) == x


def test_coerce_scalar_field_mismatch():
    with pytest.raises(FieldMismatchError):
        coerce_scalar(GaussianRational(0, 1), FIELD_Q)
    assert coerce_scalar(GaussianRational(3, 0), FIELD_Q) == Fraction(3)
    assert coerce_scalar(Fraction(1, 2), FIELD_QI) == GaussianRational(Fraction(1, 2))

from fractions import Fraction

import pytest

from germ_forge.scalars import (
    COMPLEX, REAL, I, QQi, FieldError, field_sqrt, format_scalar, gaussian, parse_scalar,
    rational_sqrt, to_scalar,
)


def test_gaussian_collapses_to_rational():
    assert gaussian(3, 0) == Fraction(3)
    assert isinstance(gaussian(3, 0), Fraction)
    assert isinstance(gaussian(0, 1), QQi)


def test_gaussian_field_arithmetic():
    z = QQi(Fraction(1, 2), 2)
    w = QQi(-3, Fraction(1, 3))
    assert (z * w) / w == z
    assert z - z == 0
    assert I * I == -1
    assert 1 / I == -I
    assert (z ** 3) * z == z ** 4


def test_to_scalar_refuses_complex_in_real_mode():
    with pytest.raises(FieldError):
        to_scalar(I, REAL)
    assert to_scalar("3/6") == Fraction(1, 2)


@pytest.mark.parametrize("c", [Fraction(0), Fraction(-7, 3), I, -I, QQi(1, -2), QQi(Fraction(1, 2), Fraction(3, 4)), QQi(0, 5)])
def test_format_parse_roundtrip(c):
    assert parse_scalar(format_scalar(c)) == c


def test_square_roots():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(2) is None
    assert field_sqrt(-4, REAL) is None
    assert field_sqrt(-4, COMPLEX) == QQi(0, 2)
    r = field_sqrt(QQi(3, 4), COMPLEX)
    assert r * r == QQi(3, 4)

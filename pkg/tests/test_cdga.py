from fractions import Fraction

import pytest

from oracles import poincare_counts
from ratmodels import catalog
from ratmodels.cdga import (
    Generator, ModelError, Polynomial, SullivanModel, apply_differential,
    basis_in_degree, check_endomorphism, format_polynomial, identity_map, multiply, power,
    scaling, truncate,
)

x, y, yp = Generator("x", 2), Generator("y", 3), Generator("yp", 3)
X, Y, YP = (Polynomial.generator(g) for g in (x, y, yp))


def test_odd_square_vanishes():
    assert not (Y * Y)


def test_odd_anticommute():
    assert Y * YP == -(YP * Y)


def test_even_commute():
    assert X * Y == Y * X


def test_power_and_format():
    assert format_polynomial(power(X, 3)) == "x^3"
    assert format_polynomial(power(X, 0)) == "1"
    assert format_polynomial(Polynomial()) == "0"


def test_polynomial_equals_zero():
    assert Polynomial() == 0
    assert (X - X) == 0


def test_parser_rejects_non_minimal():
    with pytest.raises(ModelError) as e:
        SullivanModel([x, Generator("z", 2)], {"z": X.scale(0) + Polynomial.generator(Generator("x", 2))})
    assert e.value.generator == "z"


def test_rejects_degree_one():
    with pytest.raises(ModelError):
        SullivanModel([Generator("a", 1)], {})


def test_rejects_wrong_degree():
    with pytest.raises(ModelError):
        SullivanModel([x, y], {"y": power(X, 3)})


def test_d_squared_failure_names_generator():
    a, e, b, c = Generator("a", 2), Generator("e", 3), Generator("b", 3), Generator("c", 5)
    A, E, B = (Polynomial.generator(g) for g in (a, e, b))
    # d(e b) = -e a^2, so d c = e b is not closed
    m = SullivanModel([a, e, b, c], {"b": power(A, 2), "c": E * B})
    with pytest.raises(ModelError) as err:
        m.check_d_squared()
    assert err.value.generator == "c"


def test_leibniz_on_sphere():
    m = catalog.sphere_model(4)
    xx = m.gen_poly("x")
    yy = m.gen_poly("y")
    lhs = apply_differential(m, xx * yy)
    assert lhs == xx * power(xx, 2)
    assert apply_differential(m, yy * yy) == 0


def test_arkowitz_lupton_dz_closed():
    m = catalog.arkowitz_lupton_model()
    assert len(m.differential["z"]) == 5
    assert apply_differential(m, m.differential["z"]) == 0


@pytest.mark.parametrize("name", sorted(catalog.sullivan_catalog()))
def test_basis_counts_match_series(name):
    m = catalog.sullivan_catalog()[name]
    k_max = 60
    series = poincare_counts([g.degree for g in m.generators], k_max)
    for k in range(k_max + 1):
        assert len(basis_in_degree(m, k)) == series[k]


def test_truncate():
    m = catalog.sphere_model(4)
    t = truncate(m, 6)
    assert [g.name for g in t.generators] == ["x"]
    assert truncate(m, 7) == m
    assert truncate(m, 1).generators == ()


def test_endomorphism_check():
    m = catalog.kernel_witness_model()
    check_endomorphism(m, identity_map(m))
    check_endomorphism(m, scaling(m, {"x": 2, "y": 4, "yp": 7}))
    with pytest.raises(ModelError) as e:
        check_endomorphism(m, scaling(m, {"x": 2, "y": 3}))
    assert e.value.generator == "y"


def test_multiply_coefficients():
    p = X.scale(Fraction(1, 2)) + Y
    q = multiply(p, p)
    assert q == power(X, 2).scale(Fraction(1, 4)) + (X * Y)

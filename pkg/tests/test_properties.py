"""Hypothesis-driven variants of the algebraic laws (the seeded 1000-case runs live in acceptance)."""
from fractions import Fraction

from hypothesis import given, settings, strategies as st

import properties
from ratmodels import catalog
from ratmodels.cdga import Polynomial, apply_differential, basis_in_degree

M = catalog.costoya_viruel_model(catalog.Graph(["1"]))
DEGREES = [k for k in range(0, 80) if basis_in_degree(M, k)]


@st.composite
def homogeneous(draw):
    k = draw(st.sampled_from(DEGREES))
    words = basis_in_degree(M, k)
    picks = draw(st.lists(st.tuples(st.sampled_from(words), st.integers(-4, 4)), min_size=1, max_size=3))
    return k, Polynomial((w, Fraction(c)) for w, c in picks)


@settings(max_examples=150, deadline=None)
@given(homogeneous(), homogeneous())
def test_graded_commutative(a, b):
    (du, u), (dv, v) = a, b
    assert u * v == (v * u).scale(-1 if du * dv % 2 else 1)


@settings(max_examples=150, deadline=None)
@given(homogeneous(), homogeneous())
def test_leibniz(a, b):
    (du, u), (_, v) = a, b
    d = lambda p: apply_differential(M, p)  # noqa: E731
    assert d(u * v) == d(u) * v + (u * d(v)).scale(-1 if du % 2 else 1)
    assert d(d(u)) == 0


def test_seeded_suites_small():
    for name, suite in properties.SUITES.items():
        assert suite(50) == [], name

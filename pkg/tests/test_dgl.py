from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import necklace_count
from ratmodels import catalog
from ratmodels.cdga import ModelError
from ratmodels.dgl import (
    FreeLieModel, LieGenerator, b_lie, check_skeleton_square, lie_basis_in_degree, lie_homology_dim,
    shift_scan, index_shift_check, whitehead_lie_table, witt_dimensions,
)
from ratmodels.exactla import RationalMatrix

L3 = catalog.lie_sphere_model(4)   # L(w_3)
L2 = catalog.lie_sphere_model(3)   # L(w_2)
ABC = catalog.lie_abc_model()


def test_basis_examples():
    assert lie_basis_in_degree(L3, 3).dim == 1
    assert lie_basis_in_degree(L3, 6).dim == 1
    assert lie_basis_in_degree(L2, 4).dim == 0


def test_homology_spheres():
    assert [lie_homology_dim(L3, k) for k in range(2, 13)] == [0, 1, 0, 0, 1] + [0] * 6
    assert [lie_homology_dim(L2, k) for k in range(2, 11)] == [1] + [0] * 8


def test_abc_h6():
    assert lie_homology_dim(ABC, 6) == 2
    assert lie_homology_dim(ABC, 7) == 0


def test_b7_abc():
    b = b_lie(ABC, 7)
    assert b.shape == (3, 1) and b.rank() == 1
    assert b_lie(L3, 6).shape == (0, 0)


@pytest.mark.parametrize("m", [L2, L3, ABC])
def test_whitehead_exact(m):
    rows = whitehead_lie_table(m, 10)
    assert [r.q for r in rows] == list(range(3, 11))


def test_whitehead_empty():
    assert whitehead_lie_table(FreeLieModel([], {}), 8) == []


def test_rejects_linear_and_bad_degree():
    with pytest.raises(ModelError):
        FreeLieModel([LieGenerator("a", 2), LieGenerator("b", 3)], {"b": [(1, "a")]})
    with pytest.raises(ModelError):
        FreeLieModel([LieGenerator("a", 3), LieGenerator("c", 6)], {"c": [(1, ("a", "a"))]})
    with pytest.raises(ModelError):
        FreeLieModel([LieGenerator("a", 1)], {})


def test_delta_squared():
    ABC.check_d_squared()
    # delta e = [a, c] has delta^2 e = [a, [a, b]] != 0
    m = FreeLieModel([LieGenerator("a", 3), LieGenerator("b", 3), LieGenerator("c", 7),
                      LieGenerator("e", 11)],
                     {"c": [(1, ("a", "b"))], "e": [(1, ("a", "c"))]})
    with pytest.raises(ModelError):
        m.check_d_squared()


@pytest.mark.parametrize("n_gens,deg", [(1, 2), (2, 2), (3, 2), (2, 4)])
def test_witt_classical(n_gens, deg):
    # all generators of one even degree: free Lie dims are necklace counts
    dims = witt_dimensions([deg] * n_gens, 5 * deg)
    for length in range(1, 6):
        assert dims[length * deg] == necklace_count(n_gens, length)


tree_st = st.recursive(st.sampled_from(["a", "b", "c"]), lambda t: st.tuples(t, t), max_leaves=4)
FREE3 = FreeLieModel([LieGenerator("a", 2), LieGenerator("b", 3), LieGenerator("c", 5)], {})


def _neg(t):
    return {w: -c for w, c in t.items()}


def _add(*ts):
    out = {}
    for t in ts:
        for w, c in t.items():
            out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


@settings(max_examples=200, deadline=None)
@given(tree_st, tree_st)
def test_antisymmetry(s, t):
    m, ds, dt = FREE3, FREE3.tree_degree(s), FREE3.tree_degree(t)
    lhs = m.bracket(m.expand(s), ds, m.expand(t), dt)
    rhs = m.bracket(m.expand(t), dt, m.expand(s), ds)
    koszul = -1 if (ds * dt) % 2 else 1
    assert lhs == {w: -koszul * c for w, c in rhs.items()}


@settings(max_examples=200, deadline=None)
@given(tree_st, tree_st, tree_st)
def test_jacobi(x, y, z):
    m = FREE3
    X, Y, Z = m.expand(x), m.expand(y), m.expand(z)
    a, b, c = m.tree_degree(x), m.tree_degree(y), m.tree_degree(z)

    def br(u, du, v, dv):
        return m.bracket(u, du, v, dv)

    t1 = br(X, a, br(Y, b, Z, c), b + c)
    t2 = br(br(X, a, Y, b), a + b, Z, c)
    t3 = br(Y, b, br(X, a, Z, c), a + c)
    sign = -1 if (a * b) % 2 else 1
    assert _add(t1, _neg(t2), {w: -sign * v for w, v in t3.items()}) == {}


def test_skeleton_square():
    one = RationalMatrix.identity(1)
    assert check_skeleton_square(ABC, 7, 3, one, {}).commutes
    # scaling a, b by 2 multiplies [a, b] by 4; multiplying c by 4 makes the square commute
    assert check_skeleton_square(ABC, 7, 3, RationalMatrix.from_rows([[4]]), {"a": 2, "b": 2}).commutes
    assert not check_skeleton_square(ABC, 7, 3, one, {"a": 2, "b": 2}).commutes
    with pytest.raises(ValueError):
        check_skeleton_square(ABC, 3, 3, one, {})


def test_index_shift_s4():
    pair = catalog.paired_models()["S4"]
    ok = index_shift_check(pair.sullivan, pair.lie, range(2, 11), -1)
    assert ok["all_pass"]
    bad = index_shift_check(pair.sullivan, pair.lie, range(2, 11), 0)
    assert bad["failing_k"] == [7]
    assert shift_scan(pair.sullivan, pair.lie, list(range(2, 11)), [-1, 0])["valid_shifts"] == [-1]


def test_index_shift_s3_vacuous():
    pair = catalog.paired_models()["S3"]
    for shift in (-1, 0):
        assert index_shift_check(pair.sullivan, pair.lie, range(3, 9), shift)["all_pass"]


def test_fraction_coefficients():
    m = FreeLieModel([LieGenerator("a", 3), LieGenerator("b", 3), LieGenerator("c", 7)],
                     {"c": [(Fraction(1, 2), ("a", "b")), (Fraction(3), ("a", "a"))]})
    m.check_d_squared()
    assert lie_homology_dim(m, 6) == 2

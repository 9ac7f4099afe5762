import itertools
from fractions import Fraction

import pytest

from ratmodels import catalog
from ratmodels.cdga import Generator, ModelError, SullivanModel, identity_map, scaling
from ratmodels.exactla import RationalMatrix
from ratmodels.selfequiv import (
    brute_force_monomials, check_truncation_square, commutes_strictly, compose_monomial, infiniteness_criteria,
    inverse_monomial, kernel_term_dim, monomial_group, monomial_map, monomial_system, rational_root,
    reduction_chain, self_closeness_bound, skeleton_chain_report, solve_monomial_system,
    verify_certificate,
)

GRID = [Fraction(x) for x in (1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3, -3)]


def snf_solutions_on_grid(m, perm):
    system, _ = monomial_system(m, perm)
    if system is None or solve_monomial_system(system) is None:
        return set()
    out = set()
    for vals in itertools.product(GRID, repeat=len(system.variables)):
        assign = dict(zip(system.variables, vals))
        if system.satisfied_by(assign):
            full = dict(assign)
            full.update(system.expand(assign))
            out.add(tuple(sorted(full.items())))
    return out


def test_arkowitz_lupton_group():
    res = monomial_group(catalog.arkowitz_lupton_model())
    assert res.finite and res.order == 2
    scal = {(e["x1"], e["x2"]) for _, e in res.elements()}
    assert scal == {(1, 1), (1, -1)}
    (br,) = res.solution_branches
    assert [list(r) for r in br.system.relations.entries] == [[-7, 6], [12, -10]]


@pytest.mark.parametrize("name", ["arkowitz_lupton", "two_stage_p1_a2", "two_stage_p1_a3", "kernel_witness", "S4",
                                  "costoya_viruel_1v"])
def test_brute_force_matches_smith_route(name):
    m = catalog.sullivan_catalog()[name]
    res = monomial_group(m)
    for br in res.branches:
        brute = {tuple(sorted(s.items())) for s in brute_force_monomials(m, br.permutation, GRID)}
        assert brute == snf_solutions_on_grid(m, br.permutation)
        for s in brute:
            assert commutes_strictly(m, monomial_map(m, br.permutation, dict(s)))


def test_costoya_viruel_p3_branches():
    m = catalog.costoya_viruel_model(catalog.path_graph(3))
    res = monomial_group(m)
    assert len(res.branches) == 144
    assert len(res.solution_branches) == len(catalog.graph_automorphisms(catalog.path_graph(3))) == 2
    assert res.order == 2
    swaps = [b.nontrivial_permutation for b in res.solution_branches]
    assert {} in swaps and {"x_1": "x_3", "x_3": "x_1", "z_1": "z_3", "z_3": "z_1"} in swaps


@pytest.mark.parametrize("p,a", [(1, 2), (1, 3), (2, 2)])
def test_two_stage_infinite(p, a):
    m = catalog.two_stage_model(p, a)
    res = monomial_group(m)
    assert res.free_rank == 1 and not res.finite and res.order is None
    (br,) = res.solution_branches
    assert br.system.determined["y"][1] == (a,)
    el = br.element({0: Fraction(5)})
    assert el == {"x": 5, "y": 5 ** a}
    with pytest.raises(ValueError):
        res.elements()


def test_incompatible_constants_branch_empty():
    # d z = x^3 + 2 x^3 collapses; use two free gens of equal degree with asymmetric d
    a, b, c = Generator("a", 2), Generator("b", 2), Generator("c", 5)
    from ratmodels.cdga import Polynomial, power
    A, B = Polynomial.generator(a), Polynomial.generator(b)
    m = SullivanModel([a, b, c], {"c": power(A, 3) + power(A, 2) * B})
    res = monomial_group(m)
    assert len(res.branches) == 2
    assert len(res.solution_branches) == 1


def test_rational_root():
    assert rational_root(Fraction(4, 9), 2) == Fraction(2, 3)
    assert rational_root(Fraction(-8), 3) == -2
    assert rational_root(Fraction(2), 2) is None
    assert rational_root(Fraction(-4), 2) is None


def test_compose_inverse():
    m = catalog.arkowitz_lupton_model()
    (br,) = monomial_group(m).solution_branches
    e = (br.permutation, br.group.sample_elements[1])
    sq = compose_monomial(e, e)
    assert all(v == 1 for v in sq[1].values())
    inv = inverse_monomial(e)
    ident = compose_monomial(e, inv)
    assert all(v == 1 for v in ident[1].values())


@pytest.mark.parametrize("p,a", [(1, 2), (1, 3), (2, 2)])
def test_reduction_chain_two_stage(p, a):
    m = catalog.two_stage_model(p, a)
    cert = reduction_chain(m)
    assert cert.complete
    assert cert.stages[-1] == 2 * (a - 1) * p
    assert verify_certificate(m, cert.to_dict())
    n, c2 = self_closeness_bound(m)
    assert n == cert.n and c2.complete


def test_reduction_chain_fails_on_kernel_term():
    cert = reduction_chain(catalog.kernel_witness_model())
    # n = 3 + 3 - 1 = 5 > top degree 3, nothing to reduce
    assert cert.steps == [] and cert.complete


def test_certificate_tamper_detected():
    m = catalog.two_stage_model(1, 3)
    d = reduction_chain(m).to_dict()
    d["steps"][0]["b_rank"] = 0
    assert not verify_certificate(m, d)


def test_even_generator_step_fails():
    x, y, u = Generator("x", 2), Generator("y", 3), Generator("u", 6)
    from ratmodels.cdga import power
    X = SullivanModel([x], {}).gen_poly("x")
    m = SullivanModel([x, y, u], {"y": power(X, 2)})
    cert = reduction_chain(m)
    assert not cert.complete and cert.failed_at == 6


def test_kernel_term():
    m = catalog.sphere_model(4)
    assert kernel_term_dim(m, 7, 6) == 0
    with pytest.raises(ValueError):
        kernel_term_dim(m, 4, 6)


def test_truncation_square_identity_and_scaling():
    m = catalog.sphere_model(4)
    one = RationalMatrix.identity(1)
    assert check_truncation_square(m, 4, 7, one, identity_map(m)).commutes
    doubled = scaling(m, {"x": 2})
    assert not check_truncation_square(m, 4, 7, one, doubled).commutes
    assert check_truncation_square(m, 4, 7, RationalMatrix.from_rows([[4]]), doubled).commutes
    with pytest.raises(ValueError):
        check_truncation_square(m, 4, 7, RationalMatrix.from_rows([[0]]), doubled)
    x, y, w = Generator("x", 2), Generator("y", 3), Generator("w", 5)
    from ratmodels.cdga import Polynomial, power
    m2 = SullivanModel([x, y, w], {"y": power(Polynomial.generator(x), 2)})
    with pytest.raises(ModelError):
        check_truncation_square(m2, 3, 5, one, scaling(m2, {"x": 2, "y": 3}))
    with pytest.raises(ValueError):
        check_truncation_square(m, 7, 7, one, identity_map(m))


def test_infiniteness_kernel_witness():
    v = infiniteness_criteria(catalog.kernel_witness_model())
    assert v.verdict == "infinite"
    hit = v.hits[0]
    assert hit.criterion == "b_kernel" and hit.witness["kernel_vector"] == {"yp": "1"}
    assert hit.witness["square_commutes_at_a=2"]


def test_infiniteness_two_stage():
    names = {h.criterion for h in infiniteness_criteria(catalog.two_stage_model(2, 2)).hits}
    assert "top_degree_homotopy" in names


def test_no_criterion_is_not_finite():
    d = infiniteness_criteria(catalog.arkowitz_lupton_model()).to_dict()
    assert d["verdict"] == "no criterion fired" and d["finiteness_claimed"] is False


def test_skeleton_report_uncertified():
    rep = skeleton_chain_report(catalog.sphere_model(3))
    assert rep["certified"] is False

import pytest

from ratmodels import catalog
from ratmodels.cdga import apply_differential


@pytest.mark.parametrize("name", sorted(catalog.sullivan_catalog()))
def test_sullivan_well_formed(name):
    catalog.sullivan_catalog()[name].check_d_squared()


@pytest.mark.parametrize("name", sorted(catalog.lie_catalog()))
def test_lie_well_formed(name):
    catalog.lie_catalog()[name].check_d_squared()


def test_costoya_viruel_names_and_degrees():
    m = catalog.costoya_viruel_model(catalog.path_graph(2))
    deg = {g.name: g.degree for g in m.generators}
    assert deg["x_1"] == 40 and deg["z_2"] == 119 and deg["z"] == 119
    assert len(m.differential["z_1"]) == 2
    assert apply_differential(m, m.differential["z"]) == 0


def test_graph_validation():
    with pytest.raises(ValueError):
        catalog.Graph(["1"], [("1", "1")])
    with pytest.raises(ValueError):
        catalog.Graph(["1"], [("1", "2")])
    with pytest.raises(ValueError):
        catalog.costoya_viruel_model(catalog.Graph([]))


def test_automorphisms():
    assert len(catalog.graph_automorphisms(catalog.path_graph(3))) == 2
    assert len(catalog.graph_automorphisms(catalog.complete_graph(3))) == 6
    assert len(catalog.graph_automorphisms(catalog.Graph(["a", "b", "c"]))) == 6
    with pytest.raises(catalog.GraphTooLarge):
        catalog.graph_automorphisms(catalog.path_graph(10))


def test_duplicate_edges_collapse():
    g = catalog.Graph(["1", "2"], [("1", "2"), ("2", "1")])
    assert len(g.edges) == 1


def test_two_stage_bounds():
    with pytest.raises(ValueError):
        catalog.two_stage_model(1, 1)
    with pytest.raises(ValueError):
        catalog.sphere_model(1)

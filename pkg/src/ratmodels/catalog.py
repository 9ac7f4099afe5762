"""Example models, paired Sullivan/Quillen models, graphs and their automorphisms.

Naming: the graph-realisation model uses ``x_<v>`` and ``z_<v>`` for the
per-vertex generators; the overall generator ``z`` of degree 119 is included.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from ratmodels.cdga import Generator, Polynomial, SullivanModel
from ratmodels.dgl import FreeLieModel, LieGenerator


class GraphTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __init__(self, vertices, edges=()):
        vs = tuple(str(v) for v in vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex")
        es = []
        seen = set()
        for a, b in edges:
            a, b = str(a), str(b)
            if a == b:
                raise ValueError(f"self-loop at {a}")
            if a not in vs or b not in vs:
                raise ValueError(f"edge ({a}, {b}) references a missing vertex")
            key = frozenset((a, b))
            if key not in seen:
                seen.add(key)
                es.append((a, b))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", tuple(es))

    def edge_set(self) -> set[frozenset]:
        return {frozenset(e) for e in self.edges}

    def neighbours(self, v: str) -> list[str]:
        return [b if a == v else a for a, b in self.edges if v in (a, b)]


def path_graph(n: int) -> Graph:
    vs = [str(i) for i in range(1, n + 1)]
    return Graph(vs, list(zip(vs, vs[1:])))


def complete_graph(n: int) -> Graph:
    vs = [str(i) for i in range(1, n + 1)]
    return Graph(vs, list(itertools.combinations(vs, 2)))


def graph_automorphisms(g: Graph, max_vertices: int = 9) -> list[dict[str, str]]:
    """All edge-preserving vertex permutations, by exhaustive search."""
    if len(g.vertices) > max_vertices:
        raise GraphTooLarge(f"{len(g.vertices)} vertices exceed the brute-force limit {max_vertices}")
    edges = g.edge_set()
    out = []
    for image in itertools.permutations(g.vertices):
        p = dict(zip(g.vertices, image))
        if all(frozenset((p[a], p[b])) in edges for a, b in g.edges):
            out.append(p)
    return out


def _poly(*terms) -> Polynomial:
    """Build a polynomial from (coeff, [(gen, exp), ...]) with gens as Generator."""
    from ratmodels.cdga import power

    acc = Polynomial()
    for coeff, factors in terms:
        t = Polynomial.one()
        for g, e in factors:
            t = t * power(Polynomial.generator(g), e)
        acc = acc + t.scale(coeff)
    return acc


def _model(gens, diff, name):
    m = SullivanModel(gens, {k: v for k, v in diff.items()}, name=name)
    m.check_d_squared()
    return m


def costoya_viruel_model(g: Graph) -> SullivanModel:
    if not g.vertices:
        raise ValueError("graph must have at least one vertex")
    x1, x2 = Generator("x1", 8), Generator("x2", 10)
    y1, y2, y3 = Generator("y1", 33), Generator("y2", 35), Generator("y3", 37)
    z = Generator("z", 119)
    xv = {v: Generator(f"x_{v}", 40) for v in g.vertices}
    zv = {v: Generator(f"z_{v}", 119) for v in g.vertices}
    diff = {
        "y1": _poly((1, [(x1, 3), (x2, 1)])),
        "y2": _poly((1, [(x1, 2), (x2, 2)])),
        "y3": _poly((1, [(x1, 1), (x2, 3)])),
        "z": _poly((1, [(y1, 1), (y2, 1), (x1, 4), (x2, 2)]),
                   (-1, [(y1, 1), (y3, 1), (x1, 5), (x2, 1)]),
                   (1, [(y2, 1), (y3, 1), (x1, 6)]),
                   (1, [(x1, 15)]),
                   (1, [(x2, 12)])),
    }
    for v in g.vertices:
        terms = [(1, [(xv[v], 3)])]
        terms += [(1, [(xv[v], 1), (xv[w], 1), (x2, 4)]) for w in g.neighbours(v)]
        diff[zv[v].name] = _poly(*terms)
    gens = [x1, x2, y1, y2, y3, z, *xv.values(), *zv.values()]
    return _model(gens, diff, f"costoya_viruel_{len(g.vertices)}v")


def arkowitz_lupton_model() -> SullivanModel:
    x1, x2 = Generator("x1", 10), Generator("x2", 12)
    y1, y2, y3 = Generator("y1", 41), Generator("y2", 43), Generator("y3", 45)
    z = Generator("z", 119)
    diff = {
        "y1": _poly((1, [(x1, 3), (x2, 1)])),
        "y2": _poly((1, [(x1, 2), (x2, 2)])),
        "y3": _poly((1, [(x1, 1), (x2, 3)])),
        "z": _poly((1, [(y1, 1), (y2, 1), (x2, 3)]),
                   (-1, [(y1, 1), (y3, 1), (x1, 1), (x2, 2)]),
                   (1, [(y2, 1), (y3, 1), (x1, 2), (x2, 1)]),
                   (1, [(x1, 12)]),
                   (1, [(x2, 10)])),
    }
    return _model([x1, x2, y1, y2, y3, z], diff, "arkowitz_lupton")


# value printed alongside the model in the literature; the degree formula gives 228
ARKOWITZ_LUPTON_PUBLISHED_DIMENSION = 188


def two_stage_model(p: int, a: int) -> SullivanModel:
    """Lambda(x, y) with |x| = 2p and dy = x^a."""
    if p < 1 or a < 2:
        raise ValueError("need p >= 1 and a >= 2")
    x = Generator("x", 2 * p)
    y = Generator("y", 2 * p * a - 1)
    return _model([x, y], {"y": _poly((1, [(x, a)]))}, f"two_stage_p{p}_a{a}")


def sphere_model(n: int) -> SullivanModel:
    if n < 2:
        raise ValueError("simply connected spheres only")
    if n % 2:
        return _model([Generator("x", n)], {}, f"S{n}")
    return two_stage_model(n // 2, 2)


def kernel_witness_model() -> SullivanModel:
    """Lambda(x_2, y_3, y'_3; dy = x^2, dy' = 0): b^3 kills y'."""
    x, y, yp = Generator("x", 2), Generator("y", 3), Generator("yp", 3)
    return _model([x, y, yp], {"y": _poly((1, [(x, 2)]))}, "kernel_witness")


def lie_sphere_model(n: int) -> FreeLieModel:
    """L(w) with |w| = n - 1."""
    m = FreeLieModel([LieGenerator("w", n - 1)], {}, name=f"L_S{n}")
    return m


def lie_abc_model() -> FreeLieModel:
    m = FreeLieModel([LieGenerator("a", 3), LieGenerator("b", 3), LieGenerator("c", 7)],
                     {"c": [(Fraction(1), ("a", "b"))]}, name="L_abc")
    m.check_d_squared()
    return m


@dataclass(frozen=True)
class PairedModels:
    label: str
    sullivan: SullivanModel
    lie: FreeLieModel
    notes: str = field(default="", compare=False)


def paired_models() -> dict[str, PairedModels]:
    return {
        "S3": PairedModels("S3", sphere_model(3), lie_sphere_model(3)),
        "S4": PairedModels("S4", sphere_model(4), lie_sphere_model(4)),
    }


def sullivan_catalog() -> dict[str, SullivanModel]:
    """Every named Sullivan model shipped with the package."""
    out = {
        "arkowitz_lupton": arkowitz_lupton_model(),
        "two_stage_p1_a2": two_stage_model(1, 2),
        "two_stage_p1_a3": two_stage_model(1, 3),
        "two_stage_p2_a2": two_stage_model(2, 2),
        "S2": sphere_model(2),
        "S3": sphere_model(3),
        "S4": sphere_model(4),
        "kernel_witness": kernel_witness_model(),
        "costoya_viruel_1v": costoya_viruel_model(Graph(["1"])),
        "costoya_viruel_P2": costoya_viruel_model(path_graph(2)),
        "costoya_viruel_P3": costoya_viruel_model(path_graph(3)),
    }
    return out


def lie_catalog() -> dict[str, FreeLieModel]:
    return {"L_S3": lie_sphere_model(3), "L_S4": lie_sphere_model(4), "L_abc": lie_abc_model()}


# per-model vanishing window above the formal dimension for corroboration tests
CATALOG_WINDOWS = {"two_stage_p1_a2": 6, "two_stage_p1_a3": 6, "two_stage_p2_a2": 8, "S3": 6, "arkowitz_lupton": 12}

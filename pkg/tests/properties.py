"""Seeded randomized property suites.

Each ``suite_*`` runs ``cases`` independent random checks and returns the
list of failing case descriptions (empty on success).
"""
import random
from fractions import Fraction
from functools import lru_cache

from ratmodels import catalog
from ratmodels.cdga import (
    Generator, Polynomial, SullivanModel, apply_differential, apply_endomorphism, basis_in_degree,
    check_endomorphism,
)
from ratmodels.cohomology import induced_map
from ratmodels.dgl import FreeLieModel, LieGenerator, lie_basis_in_degree, witt_dimensions
from ratmodels.selfequiv import commutes_strictly, compose_monomial, monomial_group, monomial_map

SEEDS = {"koszul": 101, "leibniz": 202, "functoriality": 303, "witt": 404, "closure": 505}


def _rand_fraction(rng, nonzero=True):
    while True:
        f = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        if f or not nonzero:
            return f


def _rand_homogeneous(rng, m, degree, terms=3):
    words = basis_in_degree(m, degree)
    if not words:
        return Polynomial()
    return Polynomial((rng.choice(words), _rand_fraction(rng)) for _ in range(rng.randint(1, terms)))


def _rand_degree(rng, m, top):
    """A degree <= top in which the algebra is nonzero."""
    options = [k for k in range(top + 1) if basis_in_degree(m, k)]
    return rng.choice(options)


def _rand_free_model(rng):
    n = rng.randint(2, 5)
    gens = [Generator(f"g{i}", rng.randint(2, 7)) for i in range(n)]
    return SullivanModel(gens, {})


def suite_koszul(cases=1000):
    rng = random.Random(SEEDS["koszul"])
    bad = []
    for i in range(cases):
        m = _rand_free_model(rng)
        du, dv, dw = (_rand_degree(rng, m, 14) for _ in range(3))
        u, v, w = (_rand_homogeneous(rng, m, d) for d in (du, dv, dw))
        sign = -1 if (du * dv) % 2 else 1
        if u * v != (v * u).scale(sign) or (u * v) * w != u * (v * w):
            bad.append(f"case {i}: {m.generators} {u} {v}")
    return bad


@lru_cache(maxsize=None)
def _leibniz_models():
    return (catalog.sphere_model(4), catalog.kernel_witness_model(), catalog.two_stage_model(1, 3),
            catalog.arkowitz_lupton_model(), catalog.costoya_viruel_model(catalog.Graph(["1"])))


def suite_leibniz(cases=1000):
    rng = random.Random(SEEDS["leibniz"])
    bad = []
    for i in range(cases):
        m = rng.choice(_leibniz_models())
        top = min(90, 2 * m.max_degree)
        du, dv = _rand_degree(rng, m, top), _rand_degree(rng, m, top)
        u, v = _rand_homogeneous(rng, m, du, 2), _rand_homogeneous(rng, m, dv, 2)
        lhs = apply_differential(m, u * v)
        rhs = apply_differential(m, u) * v + (u * apply_differential(m, v)).scale(-1 if du % 2 else 1)
        if lhs != rhs or apply_differential(m, apply_differential(m, u)):
            bad.append(f"case {i}: {m.name} {u} {v}")
    return bad


def _witness_map(m, rng):
    s, t, c = _rand_fraction(rng), _rand_fraction(rng), _rand_fraction(rng, nonzero=False)
    x, y, yp = (m.gen_poly(n) for n in ("x", "y", "yp"))
    return {"x": x.scale(s), "y": y.scale(s * s) + yp.scale(c), "yp": yp.scale(t)}


def _two_stage_map(m, rng, a):
    s = _rand_fraction(rng)
    return {"x": m.gen_poly("x").scale(s), "y": m.gen_poly("y").scale(s ** a)}


def suite_functoriality(cases=1000):
    rng = random.Random(SEEDS["functoriality"])
    kw, cp2 = catalog.kernel_witness_model(), catalog.two_stage_model(1, 3)
    bad = []
    for i in range(cases):
        if rng.random() < 0.6:
            m, f, g = kw, _witness_map(kw, rng), _witness_map(kw, rng)
        else:
            m, f, g = cp2, _two_stage_map(cp2, rng, 3), _two_stage_map(cp2, rng, 3)
        fg = {name: apply_endomorphism(f, img) for name, img in g.items()}
        k = rng.randint(0, 8)
        try:
            check_endomorphism(m, fg)
            ok = induced_map(m, fg, k) == induced_map(m, f, k) @ induced_map(m, g, k)
        except Exception as exc:  # noqa: BLE001 - any error is a failed case
            ok = False
            k = f"{k} ({exc})"
        if not ok:
            bad.append(f"case {i}: {m.name} k={k}")
    return bad


def suite_witt(cases=1000):
    rng = random.Random(SEEDS["witt"])
    bad = []
    for i in range(cases):
        degs = tuple(rng.randint(2, 6) for _ in range(rng.randint(1, 2)))
        k = rng.randint(2, 10)
        m = FreeLieModel([LieGenerator(n, d) for n, d in zip("ab", degs)], {})
        if lie_basis_in_degree(m, k).dim != witt_dimensions(list(degs), 10)[k]:
            bad.append(f"case {i}: degrees {degs} k={k}")
    return bad


@lru_cache(maxsize=None)
def _closure_models():
    out = []
    for m in (catalog.arkowitz_lupton_model(), catalog.two_stage_model(1, 2), catalog.two_stage_model(2, 2),
              catalog.kernel_witness_model(), catalog.costoya_viruel_model(catalog.path_graph(2))):
        out.append((m, monomial_group(m).solution_branches))
    return tuple(out)


def _random_element(rng, br):
    params = {j: _rand_fraction(rng) for j in range(br.group.free_rank)}
    signs = [rng.choice((1, -1)) for _ in range(br.group.torsion_2)]
    return br.permutation, br.element(params, signs)


def _member(m, branches, elem):
    perm, scal = elem
    for br in branches:
        if br.permutation == perm:
            free = {v: scal[v] for v in br.system.variables}
            if not br.system.satisfied_by(free):
                return False
            return all(scal[g] == c for g, c in br.system.expand(free).items())
    return False


def suite_closure(cases=1000):
    rng = random.Random(SEEDS["closure"])
    bad = []
    for i in range(cases):
        m, branches = rng.choice(_closure_models())
        first = _random_element(rng, rng.choice(branches))
        second = _random_element(rng, rng.choice(branches))
        comp = compose_monomial(first, second)
        for e in (first, second, comp):
            if not commutes_strictly(m, monomial_map(m, *e)) or not _member(m, branches, e):
                bad.append(f"case {i}: {m.name}")
                break
    return bad


SUITES = {
    "Koszul commutativity": suite_koszul,
    "Leibniz rule": suite_leibniz,
    "functoriality of induced maps": suite_functoriality,
    "free Lie Witt dimensions": suite_witt,
    "monomial group closure": suite_closure,
}

"""Self-equivalence machinery on the Sullivan side.

* commutation of the b-map square for a pair (gen_map, alg_map),
* the Hom kernel term of the extension by one generator degree,
* certified reduction chains E(LV) = E(LV^{<=n}) for elliptic models,
* the group of strict monomial automorphisms (permutation x scalars),
* infiniteness criteria and the self-closeness bound.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ratmodels.cdga import (
    ModelError,
    Polynomial,
    SullivanModel,
    apply_differential,
    apply_endomorphism,
    check_endomorphism,
    truncate,
    word_product,
)
from ratmodels.cohomology import cohomology_basis, cohomology_dim, map_matrix
from ratmodels.elliptic import check_structure, formal_dimension
from ratmodels.exactla import IntegerMatrix, RationalMatrix, row_reduce, smith_normal_form
from ratmodels.whitehead import b_map, classify_b

# ---------------------------------------------------------------- b-map square


@dataclass(frozen=True)
class TruncationSquare:
    q: int
    n: int
    gen_map: RationalMatrix
    alg_map: Mapping[str, Polynomial]
    commutes: bool
    residual: RationalMatrix


def check_truncation_square(m: SullivanModel, n: int, q: int, gen_map: RationalMatrix,
                            alg_map: Mapping[str, Polynomial]) -> TruncationSquare:
    """Decide ``b^q gen_map = H^{q+1}(alg_map) b^q`` with b^q landing in H^{q+1}(LV^{<=n})."""
    if q <= n:
        raise ValueError("need q > n")
    low = truncate(m, n)
    alg_map = {g.name: alg_map[g.name] for g in low.generators}
    check_endomorphism(low, alg_map)
    vq = len(m.in_degree(q))
    if gen_map.shape != (vq, vq):
        raise ValueError(f"gen_map must be {vq}x{vq}")
    if gen_map.rank() != vq:
        raise ValueError("gen_map is not invertible")
    b = b_map(m, q, trunc=n)
    h = cohomology_basis(low, q + 1)
    hq = map_matrix(alg_map, h, h)
    residual = b @ gen_map - hq @ b
    return TruncationSquare(q, n, gen_map, alg_map, residual.is_zero(), residual)


def kernel_term_dim(m: SullivanModel, q: int, trunc_at: int) -> int:
    """dim Hom(V^q, H^q(LV^{<=trunc_at}))."""
    if q <= trunc_at:
        raise ValueError("need q > trunc_at")
    v = len(m.in_degree(q))
    if not v:
        return 0
    return v * cohomology_dim(truncate(m, trunc_at), q)


# ---------------------------------------------------------------- reduction chain


@dataclass
class ReductionStep:
    q: int
    evidence: str
    ok: bool
    v_dim: int
    b_shape: tuple[int, int] | None = None
    b_rank: int | None = None
    kernel_term_dim: int | None = None
    kernel_trunc: int | None = None

    def to_dict(self) -> dict:
        return {
            "q": self.q, "evidence": self.evidence, "ok": self.ok, "v_dim": self.v_dim,
            "b_shape": list(self.b_shape) if self.b_shape else None, "b_rank": self.b_rank,
            "kernel_term_dim": self.kernel_term_dim, "kernel_trunc": self.kernel_trunc,
        }


@dataclass
class ReductionCertificate:
    n: int
    top: int
    steps: list[ReductionStep]

    @property
    def complete(self) -> bool:
        return all(s.ok for s in self.steps)

    @property
    def failed_at(self) -> int | None:
        return next((s.q for s in self.steps if not s.ok), None)

    @property
    def stages(self) -> list[int]:
        """Truncation degrees linked by certified isomorphisms, top first."""
        out = [self.top]
        for s in self.steps:
            if not s.ok:
                break
            out.append(s.q - 1)
        return out if self.top > self.n else [self.n]

    @property
    def conclusion(self) -> str:
        if not self.complete:
            return f"incomplete: step q={self.failed_at} failed"
        return f"E(LV) = E(LV^<={self.n})"

    def to_dict(self) -> dict:
        return {
            "formal_dimension": self.n, "top_degree": self.top, "complete": self.complete,
            "conclusion": self.conclusion, "stages": self.stages,
            "steps": [s.to_dict() for s in self.steps],
        }


def _step(m: SullivanModel, n: int, q: int) -> ReductionStep:
    v = len(m.in_degree(q))
    if not v:
        return ReductionStep(q, "V^q = 0", True, 0)
    if q % 2 == 0:
        return ReductionStep(q, "even generator above n", False, v)
    cls = classify_b(m, n, q)
    kd = kernel_term_dim(m, q, q - 1)
    ok = cls.actual == "iso" and kd == 0
    return ReductionStep(q, "b^q iso + kernel term dim 0" if ok else f"b^q {cls.actual}, kernel term {kd}",
                         ok, v, cls.b_matrix.shape, cls.b_matrix.rank(), kd, q - 1)


def reduction_chain(m: SullivanModel, n: int | None = None) -> ReductionCertificate:
    n = formal_dimension(m) if n is None else n
    top = m.max_degree
    steps = [_step(m, n, q) for q in range(top, n, -1)]
    return ReductionCertificate(n, top, steps)


def verify_certificate(m: SullivanModel, cert: Mapping) -> bool:
    """Recompute every step of a serialized certificate."""
    fresh = reduction_chain(m, cert["formal_dimension"]).to_dict()
    return fresh == dict(cert)


def self_closeness_bound(m: SullivanModel) -> tuple[int, ReductionCertificate]:
    n = formal_dimension(m)
    return n, reduction_chain(m, n)


def skeleton_chain_report(m: SullivanModel, lie=None) -> dict:
    """Skeleton chain E(X) = E(X^{n-1}) = ... = E(X^{m+1}) for n > m = top degree of V.

    Reported, not certified: the argument runs through the Quillen side.
    """
    n = formal_dimension(m)
    top = m.max_degree
    rep = {"formal_dimension": n, "top_homotopy_degree": top, "applies": n > top, "certified": False}
    if n > top:
        rep["chain"] = list(range(n - 1, top, -1))
    if lie is not None and n > top:
        from ratmodels.dgl import b_lie

        checks = []
        for k in range(top + 1, n):
            b = b_lie(lie, k, k - 2) if k >= 3 else None
            checks.append({"k": k, "b_shape": list(b.shape) if b else None,
                           "b_rank": b.rank() if b else None})
        rep["lie_b_maps"] = checks
    return rep


# ---------------------------------------------------------------- monomial automorphisms


def _iroot(x: int, d: int) -> int | None:
    if x < 0:
        return None
    if x < 2:
        return x
    r = int(round(x ** (1.0 / d))) if x.bit_length() < 1000 else 1 << (x.bit_length() // d + 1)
    # Newton from above
    r = max(r, 1)
    while r ** d > x:
        r = ((d - 1) * r + x // r ** (d - 1)) // d
    while (r + 1) ** d <= x:
        r += 1
    return r if r ** d == x else None


def rational_root(x: Fraction, d: int) -> Fraction | None:
    """A d-th root of x in Q (positive when d is even), or None."""
    if d == 1:
        return x
    neg = x < 0
    if neg and d % 2 == 0:
        return None
    a = _iroot(abs(x.numerator), d)
    b = _iroot(x.denominator, d)
    if a is None or b is None:
        return None
    r = Fraction(a, b)
    return -r if neg else r


@dataclass
class MonomialSystem:
    variables: list[str]
    relations: IntegerMatrix
    constants: list[Fraction]
    provenance: list[str]
    determined: dict[str, tuple[Fraction, tuple[int, ...]]]

    def satisfied_by(self, values: Mapping[str, Fraction]) -> bool:
        for row, c in zip(self.relations.entries, self.constants):
            acc = Fraction(1)
            for v, e in zip(self.variables, row):
                acc *= Fraction(values[v]) ** e
            if acc != c:
                return False
        return True

    def expand(self, values: Mapping[str, Fraction]) -> dict[str, Fraction]:
        """Scalars for every generator from the free-variable values."""
        out = {}
        for g, (k, exps) in self.determined.items():
            acc = k
            for v, e in zip(self.variables, exps):
                acc *= Fraction(values[v]) ** e
            out[g] = acc
        return out

    def describe(self) -> list[str]:
        lines = []
        for row, c, src in zip(self.relations.entries, self.constants, self.provenance):
            mono = " ".join(f"{v}^{e}" for v, e in zip(self.variables, row) if e) or "1"
            lines.append(f"{mono} = {c}   [{src}]")
        return lines


@dataclass
class MonomialSolutionGroup:
    free_rank: int
    torsion_2: int
    particular: dict[str, Fraction]
    generators_free: list[dict[str, int]]
    torsion_signs: list[dict[str, int]]
    sample_elements: list[dict[str, Fraction]] = field(default_factory=list)

    @property
    def description(self) -> str:
        return f"(Q*)^{self.free_rank} x (Z/2)^{self.torsion_2}"

    @property
    def finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return 2 ** self.torsion_2 if self.finite else None


@dataclass
class Branch:
    index: int
    permutation: dict[str, str]
    system: MonomialSystem | None
    group: MonomialSolutionGroup | None
    reason: str = ""

    @property
    def nonempty(self) -> bool:
        return self.group is not None

    @property
    def nontrivial_permutation(self) -> dict[str, str]:
        return {a: b for a, b in self.permutation.items() if a != b}

    def element(self, params: Mapping[str, Fraction] | None = None, signs: Sequence[int] | None = None):
        """Generator scalars of one branch element; ``params`` feed the free directions."""
        g = self.group
        vals = dict(g.particular)
        for i, dirn in enumerate(g.generators_free):
            t = Fraction((params or {}).get(i, 1))
            for v, e in dirn.items():
                vals[v] *= t ** e
        for s, dirn in zip(signs or [], g.torsion_signs):
            if s < 0:
                for v, e in dirn.items():
                    vals[v] *= -1 if e % 2 else 1
        full = dict(vals)
        full.update(self.system.expand(vals))
        return full


@dataclass
class MonomialGroupResult:
    branches: list[Branch]

    @property
    def solution_branches(self) -> list[Branch]:
        return [b for b in self.branches if b.nonempty]

    @property
    def free_rank(self) -> int:
        """Free rank of the identity component (0 when every branch is finite)."""
        return max((b.group.free_rank for b in self.solution_branches), default=0)

    @property
    def finite(self) -> bool:
        return all(b.group.finite for b in self.solution_branches)

    @property
    def order(self) -> int | None:
        if not self.finite:
            return None
        return sum(b.group.order for b in self.solution_branches)

    def elements(self) -> list[tuple[dict[str, str], dict[str, Fraction]]]:
        if not self.finite:
            raise ValueError("infinite group has no element list")
        return [(b.permutation, e) for b in self.solution_branches for e in b.group.sample_elements]


def monomial_map(m: SullivanModel, permutation: Mapping[str, str],
                 scalars: Mapping[str, Fraction]) -> dict[str, Polynomial]:
    """Algebra map ``g -> scalars[g] * permutation[g]``."""
    return {g.name: m.gen_poly(permutation.get(g.name, g.name)).scale(scalars[g.name])
            for g in m.generators}


def compose_monomial(first: tuple[Mapping[str, str], Mapping[str, Fraction]],
                     second: tuple[Mapping[str, str], Mapping[str, Fraction]]):
    """``second o first`` as (permutation, scalars)."""
    pa, ca = first
    pb, cb = second
    perm = {g: pb[pa[g]] for g in pa}
    scal = {g: Fraction(ca[g]) * Fraction(cb[pa[g]]) for g in pa}
    return perm, scal


def inverse_monomial(elem: tuple[Mapping[str, str], Mapping[str, Fraction]]):
    p, c = elem
    inv = {b: a for a, b in p.items()}
    return inv, {b: 1 / Fraction(c[a]) for a, b in p.items()}


def _block_permutations(m: SullivanModel, limit: int):
    blocks = [[g.name for g in grp] for _, grp in itertools.groupby(m.generators, key=lambda g: g.degree)]
    total = math.prod(math.factorial(len(b)) for b in blocks)
    if total > limit:
        raise ValueError(f"{total} block permutations exceed the limit {limit}")
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = {}
        for names, image in zip(blocks, choice):
            perm.update(zip(names, image))
        yield perm


def _permuted_word(m: SullivanModel, w, perm):
    out, sign = (), 1
    for deg, name, e in w:
        r = word_product(out, ((deg, perm[name], e),))
        if r is None:
            return None
        out, s = r
        sign *= s
    return out, sign


def monomial_system(m: SullivanModel, perm: Mapping[str, str]):
    """Constraints of ``d(alg_map g) = alg_map(d g)`` for ``alg_map(g) = c_g perm(g)``.

    Scalars of generators with nonzero differential are eliminated through the
    first word of their differential. Returns ``(system, None)`` or
    ``(None, reason)`` when the branch is empty.
    """
    free = [g.name for g in m.generators if not m.differential[g.name]]
    nfree = len(free)
    expr: dict[str, tuple[Fraction, tuple[int, ...]]] = {}
    for i, v in enumerate(free):
        expr[v] = (Fraction(1), tuple(int(i == j) for j in range(nfree)))
    rows, consts, prov = [], [], []
    determined = {}
    for g in m.generators:
        dg = m.differential[g.name]
        target = m.differential[perm[g.name]]
        if not dg:
            if target:
                return None, f"d({g.name}) = 0 but d({perm[g.name]}) != 0"
            continue
        if len(target) != len(dg):
            return None, f"d({g.name}) and d({perm[g.name]}) have different word counts"
        vals = []
        for w, a in dg:
            r = _permuted_word(m, w, perm)
            bw = target.terms.get(r[0]) if r else None
            if bw is None:
                return None, f"image of a word of d({g.name}) is missing from d({perm[g.name]})"
            k = a * r[1] / bw
            exps = [0] * nfree
            for _, name, e in w:
                kf, ef = expr[name]
                k *= kf ** e
                for j in range(nfree):
                    exps[j] += e * ef[j]
            vals.append((k, tuple(exps)))
        expr[g.name] = vals[0]
        determined[g.name] = vals[0]
        for i in range(len(vals) - 1):
            (k1, e1), (k2, e2) = vals[i], vals[i + 1]
            row = tuple(x - y for x, y in zip(e1, e2))
            c = k2 / k1
            if not any(row):
                if c != 1:
                    return None, f"d({g.name}): words {i + 1},{i + 2} force incompatible constants"
                continue
            rows.append(row)
            consts.append(c)
            prov.append(f"d({g.name}) words {i + 1}/{i + 2}")
    system = MonomialSystem(free, IntegerMatrix.from_rows(rows, nfree), consts, prov, determined)
    return system, None


def solve_monomial_system(system: MonomialSystem) -> MonomialSolutionGroup | None:
    """Solutions in (Q*)^vars of prod v^row = const, via Smith normal form."""
    nvar = len(system.variables)
    nrel = system.relations.rows
    snf = smith_normal_form(system.relations)
    d, r = snf.invariants, snf.rank
    u = snf.left.entries
    vmat = snf.right.entries
    lam = []
    for i in range(nrel):
        acc = Fraction(1)
        for j in range(nrel):
            if u[i][j]:
                acc *= system.constants[j] ** u[i][j]
        lam.append(acc)
    if any(lam[i] != 1 for i in range(r, nrel)):
        return None
    w = []
    for i in range(r):
        root = rational_root(lam[i], d[i])
        if root is None:
            return None
        w.append(root)
    w += [Fraction(1)] * (nvar - r)
    particular = {}
    for a, v in enumerate(system.variables):
        acc = Fraction(1)
        for i in range(nvar):
            if vmat[a][i]:
                acc *= w[i] ** vmat[a][i]
        particular[v] = acc
    free_dirs = [{v: vmat[a][i] for a, v in enumerate(system.variables) if vmat[a][i]}
                 for i in range(r, nvar)]
    tors = [{v: vmat[a][i] for a, v in enumerate(system.variables) if vmat[a][i]}
            for i in range(r) if d[i] % 2 == 0]
    return MonomialSolutionGroup(nvar - r, len(tors), particular, free_dirs, tors)


def monomial_group(m: SullivanModel, limit: int = 200_000) -> MonomialGroupResult:
    """Strict monomial automorphisms, one branch per block permutation.

    This is a subgroup of the self-equivalences; it is not claimed to be all of them.
    """
    branches = []
    for idx, perm in enumerate(_block_permutations(m, limit)):
        system, reason = monomial_system(m, perm)
        group = solve_monomial_system(system) if system is not None else None
        if system is not None and group is None:
            reason = "monomial system has no solution over Q*"
        br = Branch(idx, perm, system, group, reason)
        if group is not None and group.finite:
            for signs in itertools.product((1, -1), repeat=group.torsion_2):
                group.sample_elements.append(br.element(signs=signs))
        branches.append(br)
    return MonomialGroupResult(branches)


def commutes_strictly(m: SullivanModel, images: Mapping[str, Polynomial]) -> bool:
    try:
        check_endomorphism(m, images)
    except ModelError:
        return False
    return True


def brute_force_monomials(m: SullivanModel, perm: Mapping[str, str], grid: Sequence[Fraction]):
    """All strict monomial automorphisms over ``perm`` whose free scalars lie in ``grid``.

    Independent of the Smith-form route: scalars of generators with nonzero
    differential are read off ``alg_map(d g) = c_g d(perm g)`` directly.
    """
    gens = list(m.generators)
    free = [g.name for g in gens if not m.differential[g.name]]
    deps = {g.name: m.differential[g.name].generators() for g in gens}
    pending = [g.name for g in gens if m.differential[g.name]]
    found = []

    def drop(names, images, assigned, scalars):
        for n_ in names:
            assigned.discard(n_)
            images.pop(n_, None)
            scalars.pop(n_, None)

    def settle(images, assigned, scalars):
        # determine every pending generator whose dependencies are assigned
        newly = []
        progress = True
        while progress:
            progress = False
            for name in pending:
                if name in assigned or not deps[name] <= assigned:
                    continue
                lhs = apply_endomorphism(images, m.differential[name])
                target = m.differential[perm[name]]
                c = Fraction(0)
                if target:
                    w0, b0 = next(iter(target))
                    c = lhs.terms.get(w0, Fraction(0)) / b0
                if not c or lhs != target.scale(c):
                    drop(newly, images, assigned, scalars)
                    return None
                scalars[name] = c
                images[name] = m.gen_poly(perm[name]).scale(c)
                assigned.add(name)
                newly.append(name)
                progress = True
        return newly

    def rec(i, images, assigned, scalars):
        if i == len(free):
            if len(assigned) == len(gens):
                found.append(dict(scalars))
            return
        name = free[i]
        if m.differential[perm[name]]:
            return
        for x in grid:
            images[name] = m.gen_poly(perm[name]).scale(x)
            scalars[name] = Fraction(x)
            assigned.add(name)
            newly = settle(images, assigned, scalars)
            if newly is not None:
                rec(i + 1, images, assigned, scalars)
                drop(newly, images, assigned, scalars)
            drop([name], images, assigned, scalars)

    images: dict = {}
    assigned: set = set()
    scalars: dict = {}
    initial = settle(images, assigned, scalars)
    if initial is None:
        return []
    rec(0, images, assigned, scalars)
    return found


# ---------------------------------------------------------------- infiniteness


@dataclass
class CriterionHit:
    criterion: str
    degree: int
    detail: str
    witness: dict = field(default_factory=dict)


@dataclass
class InfinitenessVerdict:
    hits: list[CriterionHit]

    @property
    def verdict(self) -> str:
        if not self.hits:
            return "no criterion fired"
        return "infinite"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "finiteness_claimed": False,
            "hits": [{"criterion": h.criterion, "degree": h.degree, "detail": h.detail,
                      "witness": h.witness} for h in self.hits],
        }


def _b_kernel_hit(m: SullivanModel, q: int, via: str) -> CriterionHit | None:
    gens = m.in_degree(q)
    if not gens:
        return None
    b = b_map(m, q)
    red = row_reduce(b)
    if not red.kernel.dim:
        return None
    v = red.kernel.vectors[0]
    vec = {g.name: str(c) for g, c in zip(gens, v) if c}
    # scale_a multiplies v by a and fixes a complement; with the identity below, the square commutes
    basis = [list(v)] + [[Fraction(int(i == j)) for i in range(len(gens))] for j in range(len(gens))]
    rr = row_reduce(RationalMatrix.from_columns(basis, len(gens)))
    cols = [basis[p] for p in rr.pivots]
    pmat = RationalMatrix.from_columns(cols, len(gens))
    a = Fraction(2)
    dmat = RationalMatrix.from_rows(
        [[a if (i == j == 0) else Fraction(int(i == j)) for j in range(len(gens))] for i in range(len(gens))])
    inv = _inverse(pmat)
    gen_map = pmat @ dmat @ inv
    ok = (b @ gen_map - b).is_zero()
    return CriterionHit(
        "b_kernel", q,
        f"b^{q} has a {red.kernel.dim}-dimensional kernel; scale_a(v) = a v with the identity on the truncation commutes for all a != 0"
        + (f" ({via})" if via else ""),
        {"kernel_vector": vec, "family": "scale_a: v -> a*v on the kernel line, identity on a complement", "square_commutes_at_a=2": ok},
    )


def _inverse(p: RationalMatrix) -> RationalMatrix:
    n = p.rows
    aug = RationalMatrix.from_rows([list(r) + [Fraction(int(i == j)) for j in range(n)]
                                    for i, r in enumerate(p.entries)])
    rr = row_reduce(aug).rref
    return RationalMatrix.from_rows([r[n:] for r in rr.entries], n)


def infiniteness_criteria(m: SullivanModel) -> InfinitenessVerdict:
    hits = []
    top = m.max_degree
    hit = _b_kernel_hit(m, top, "top generator degree, so LV^{<=q} = LV")
    if hit:
        hits.append(hit)
    n = formal_dimension(m)
    structure_ok = check_structure(m).verdict == "consistent"
    if structure_ok and 2 <= n < top:
        hit = _b_kernel_hit(m, n, "at the formal dimension; E(LV) = E(LV^{<=n}) for elliptic models")
        if hit:
            hits.append(hit)
    if structure_ok and min(g.degree for g in m.generators) >= 3 and m.in_degree(n):
        hits.append(CriterionHit(
            "top_degree_homotopy", n,
            f"2-connected, structurally elliptic, V^{n} != 0 at the formal dimension",
            {"generators": [g.name for g in m.in_degree(n)]},
        ))
    return InfinitenessVerdict(hits)

"""Free differential graded Lie algebras, represented inside the tensor algebra.

A Lie element is expanded into the free associative algebra on the
generators via ``[a, b] = ab - (-1)^{|a||b|} ba``; a tensor vector is a dict
from words (tuples of generator names) to rationals. Degrees are homological
and the differential lowers degree by one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence

from ratmodels.cdga import ModelError
from ratmodels.exactla import QuotientSpace, RationalMatrix, SubspaceBasis, kernel_from_rref
from ratmodels.kernels import echelon

Tree = object  # str leaf or (Tree, Tree)
Tensor = dict  # dict[tuple[str, ...], Fraction]


class LieGenerator(NamedTuple):
    name: str
    degree: int


def _add_into(acc: Tensor, t: Tensor, c=1) -> None:
    for w, v in t.items():
        s = acc.get(w, 0) + c * v
        if s:
            acc[w] = s
        else:
            acc.pop(w, None)


def tensor_product(a: Tensor, b: Tensor) -> Tensor:
    out: Tensor = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            s = out.get(w, 0) + c1 * c2
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def format_tree(t: Tree) -> str:
    if isinstance(t, str):
        return t
    return f"[{format_tree(t[0])}, {format_tree(t[1])}]"


def format_lie_element(terms: Sequence[tuple[Fraction, Tree]]) -> str:
    if not terms:
        return "0"
    parts = []
    for i, (c, t) in enumerate(terms):
        c = Fraction(c)
        neg = c < 0
        a = -c if neg else c
        body = format_tree(t) if a == 1 else f"{a} * {format_tree(t)}"
        parts.append((("-" if neg else "") if i == 0 else ("- " if neg else "+ ")) + body)
    return " ".join(parts)


class FreeLieModel:
    """Free dgl (L(W), delta) with generators of degree >= 2.

    ``differential`` maps a generator name to a list of ``(coefficient, tree)``.
    Linear terms in a differential are rejected (minimal models only), which is
    what makes the Whitehead sequence's projection to W well defined.
    """

    def __init__(self, generators: Iterable[LieGenerator], differential: Mapping[str, Sequence[tuple]],
                 name: str | None = None):
        gens = sorted((LieGenerator(g[0], int(g[1])) for g in generators), key=lambda g: (g.degree, g.name))
        self.generators: tuple[LieGenerator, ...] = tuple(gens)
        self.name = name
        self._deg: dict[str, int] = {}
        for g in gens:
            if g.name in self._deg:
                raise ModelError(f"duplicate generator {g.name!r}", g.name)
            if g.degree < 2:
                raise ModelError(f"generator {g.name!r} has degree {g.degree} < 2", g.name)
            self._deg[g.name] = g.degree
        unknown = set(differential) - set(self._deg)
        if unknown:
            n = sorted(unknown)[0]
            raise ModelError(f"differential given for unknown generator {n!r}", n)
        self.expressions: dict[str, list[tuple[Fraction, Tree]]] = {}
        self.differential: dict[str, Tensor] = {}
        for g in gens:
            terms = [(Fraction(c), t) for c, t in differential.get(g.name, [])]
            for _, t in terms:
                if isinstance(t, str):
                    raise ModelError(f"delta({g.name}) has linear term {t}; model is not minimal", g.name)
                if self.tree_degree(t) != g.degree - 1:
                    raise ModelError(f"delta({g.name}) has a term {format_tree(t)} of degree "
                                     f"{self.tree_degree(t)}, expected {g.degree - 1}", g.name)
            self.expressions[g.name] = terms
            acc: Tensor = {}
            for c, t in terms:
                _add_into(acc, self.expand(t), c)
            self.differential[g.name] = acc

    def __eq__(self, other) -> bool:
        return (isinstance(other, FreeLieModel) and self.generators == other.generators
                and self.differential == other.differential)

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self) -> str:
        return f"<FreeLieModel {', '.join(f'{g.name}_{g.degree}' for g in self.generators)}>"

    def degree(self, name: str) -> int:
        return self._deg[name]

    def in_degree(self, k: int) -> list[LieGenerator]:
        return [g for g in self.generators if g.degree == k]

    def tree_degree(self, t: Tree) -> int:
        if isinstance(t, str):
            return self._deg[t]
        return self.tree_degree(t[0]) + self.tree_degree(t[1])

    def word_degree(self, w: tuple[str, ...]) -> int:
        return sum(self._deg[x] for x in w)

    def bracket(self, a: Tensor, da: int, b: Tensor, db: int) -> Tensor:
        out = tensor_product(a, b)
        _add_into(out, tensor_product(b, a), -1 if (da * db) % 2 == 0 else 1)
        return out

    def expand(self, t: Tree) -> Tensor:
        if isinstance(t, str):
            return {(t,): Fraction(1)}
        return self.bracket(self.expand(t[0]), self.tree_degree(t[0]),
                            self.expand(t[1]), self.tree_degree(t[1]))

    def skeleton(self, k: int) -> "FreeLieModel":
        """Sub-dgl on generators of degree <= k."""
        kept = [g for g in self.generators if g.degree <= k]
        names = {g.name for g in kept}
        diff = {}
        for g in kept:
            for _, t in self.expressions[g.name]:
                if not _leaves(t) <= names:
                    raise ModelError(f"delta({g.name}) leaves the skeleton at {k}", g.name)
            diff[g.name] = self.expressions[g.name]
        return FreeLieModel(kept, diff, name=f"{self.name}<={k}" if self.name else None)

    def d(self, t: Tensor) -> Tensor:
        """Extend delta to tensors as a degree -1 derivation."""
        out: Tensor = {}
        for w, c in t.items():
            sign = 1
            for i, x in enumerate(w):
                dx = self.differential[x]
                if dx:
                    pre, post = w[:i], w[i + 1:]
                    for u, v in dx.items():
                        key = pre + u + post
                        s = out.get(key, 0) + sign * c * v
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
                if self._deg[x] % 2:
                    sign = -sign
        return out

    def check_d_squared(self) -> None:
        for g in self.generators:
            dd = self.d(self.differential[g.name])
            if dd:
                raise ModelError(f"delta^2({g.name}) != 0", g.name)


def _leaves(t: Tree) -> set[str]:
    if isinstance(t, str):
        return {t}
    return _leaves(t[0]) | _leaves(t[1])


# ---------------------------------------------------------------- degreewise bases


def tensor_words(m: FreeLieModel, k: int) -> list[tuple[str, ...]]:
    """All words of total degree k in the free associative algebra."""
    gens = [(g.name, g.degree) for g in m.generators]
    out = []

    def rec(rem, acc):
        if rem == 0:
            if acc:
                out.append(tuple(acc))
            return
        for n, d in gens:
            if d <= rem:
                acc.append(n)
                rec(rem - d, acc)
                acc.pop()

    rec(k, [])
    return out


def _vector(t: Tensor, index: Mapping) -> list[Fraction]:
    v = [Fraction(0)] * len(index)
    for w, c in t.items():
        v[index[w]] = c
    return v


@dataclass(frozen=True)
class LieDegree:
    """Basis of L_k(W) as echelonised vectors over the degree-k tensor words."""

    degree: int
    words: tuple[tuple[str, ...], ...]
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self) -> dict:
        return {w: i for i, w in enumerate(self.words)}

    def tensor(self, i: int) -> Tensor:
        return {w: c for w, c in zip(self.words, self.basis[i]) if c}

    def as_subspace(self) -> SubspaceBasis:
        return SubspaceBasis(len(self.words), self.basis)


def right_normed(m: FreeLieModel, seq: Sequence[str]) -> Tensor:
    t: Tensor = {(seq[-1],): Fraction(1)}
    deg = m.degree(seq[-1])
    for x in reversed(seq[:-1]):
        dx = m.degree(x)
        t = m.bracket({(x,): Fraction(1)}, dx, t, deg)
        deg += dx
    return t


_lie_cache: dict = {}


def lie_degree(m: FreeLieModel, k: int) -> LieDegree:
    key = (m.generators, k)
    hit = _lie_cache.get(key)
    if hit is not None:
        return hit
    words = tensor_words(m, k)
    index = {w: i for i, w in enumerate(words)}
    spanning = [_vector(right_normed(m, w), index) for w in words]
    rows, _ = echelon(spanning, len(words))
    ld = LieDegree(k, tuple(words), tuple(tuple(r) for r in rows))
    _lie_cache[key] = ld
    return ld


def lie_basis_in_degree(m: FreeLieModel, k: int) -> SubspaceBasis:
    return lie_degree(m, k).as_subspace()


def witt_dimensions(degrees: Sequence[int], k_max: int) -> list[int]:
    """dim L_k of the free graded Lie algebra on generators of the given degrees.

    Solves prod_k (1+t^k)^{l_k} (k odd) prod_k (1-t^k)^{-l_k} (k even) = 1/(1 - sum t^{d_i}).
    """
    tensor = [Fraction(0)] * (k_max + 1)
    tensor[0] = Fraction(1)
    for k in range(1, k_max + 1):
        tensor[k] = sum((tensor[k - d] for d in degrees if d <= k), Fraction(0))
    dims = [0] * (k_max + 1)
    series = [Fraction(0)] * (k_max + 1)
    series[0] = Fraction(1)
    for k in range(1, k_max + 1):
        lk = int(tensor[k] - series[k])
        dims[k] = lk
        for _ in range(lk):
            new = list(series)
            if k % 2:
                for i in range(k_max, k - 1, -1):
                    new[i] = series[i] + series[i - k]
            else:
                for i in range(k, k_max + 1):
                    new[i] = new[i] + new[i - k]
            series = new
    return dims


# ---------------------------------------------------------------- homology


@dataclass(frozen=True)
class LieHomology:
    degree: int
    words: tuple[tuple[str, ...], ...]
    quotient: QuotientSpace

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def representatives(self) -> list[Tensor]:
        return [{w: c for w, c in zip(self.words, r) if c} for r in self.quotient.representatives]

    def reduction(self, t: Tensor) -> list[Fraction]:
        index = {w: i for i, w in enumerate(self.words)}
        for w in t:
            if w not in index:
                raise ValueError("tensor outside this degree")
        return self.quotient.reduce(_vector(t, index))


def lie_homology(m: FreeLieModel, k: int) -> LieHomology:
    """H_k(L(W), delta) with cycles and boundaries in tensor coordinates."""
    cur = lie_degree(m, k)
    below = tensor_words(m, k - 1)
    bindex = {w: i for i, w in enumerate(below)}
    imgs = [_vector(m.d(cur.tensor(i)), bindex) for i in range(cur.dim)]
    # combinations of basis vectors killed by delta
    rows = [[imgs[j][i] for j in range(cur.dim)] for i in range(len(below))]
    rref, piv = echelon(rows, cur.dim)
    combos = kernel_from_rref(rref, piv, cur.dim)
    nw = len(cur.words)
    cycles = []
    for c in combos:
        v = [Fraction(0)] * nw
        for j, a in enumerate(c):
            if a:
                for i, x in enumerate(cur.basis[j]):
                    if x:
                        v[i] += a * x
        cycles.append(v)
    up = lie_degree(m, k + 1)
    index = cur.index()
    boundaries = [_vector(m.d(up.tensor(i)), index) for i in range(up.dim)]
    return LieHomology(k, cur.words, QuotientSpace(nw, cycles, boundaries))


def lie_homology_dim(m: FreeLieModel, k: int) -> int:
    return lie_homology(m, k).dim


def b_lie(m: FreeLieModel, q: int, k: int | None = None) -> RationalMatrix:
    """Matrix of ``w -> [delta w]`` from W_q into H_{q-1}(L(W_{<=k})), default k = q-1."""
    if q < 3:
        raise ValueError("b_q needs q >= 3")
    k = q - 1 if k is None else k
    skel = m.skeleton(k)
    h = lie_homology(skel, q - 1)
    cols = []
    for g in m.in_degree(q):
        dg = m.differential[g.name]
        names = {x.name for x in skel.generators}
        if any(not set(w) <= names for w in dg):
            raise ValueError(f"delta({g.name}) leaves the skeleton at {k}")
        cols.append(h.reduction(dg))
    return RationalMatrix.from_columns(cols, h.dim)


# ---------------------------------------------------------------- Whitehead sequence


class LieExactnessError(RuntimeError):
    def __init__(self, message: str, degree: int):
        super().__init__(f"degree {degree}: {message}")
        self.degree = degree


@dataclass(frozen=True)
class LieWhiteheadRow:
    q: int
    w_dim: int
    b_matrix: RationalMatrix
    h_skel_dim: int
    h_full_dim: int


def _inclusion(m: FreeLieModel, n: int) -> RationalMatrix:
    """H_n(L(W_{<=n-1})) -> H_n(L(W))."""
    src = lie_homology(m.skeleton(n - 1), n)
    tgt = lie_homology(m, n)
    cols = [tgt.reduction(r) for r in src.representatives]
    return RationalMatrix.from_columns(cols, tgt.dim)


def _projection(m: FreeLieModel, n: int) -> RationalMatrix:
    """H_n(L(W)) -> W_n, the coefficient of each length-one word."""
    h = lie_homology(m, n)
    gens = m.in_degree(n)
    cols = [[r.get((g.name,), Fraction(0)) for g in gens] for r in h.representatives]
    return RationalMatrix.from_columns(cols, len(gens))


def _exact(name: str, q: int, first: RationalMatrix, second: RationalMatrix) -> None:
    if not (second @ first).is_zero():
        raise LieExactnessError(f"composite through {name} is nonzero", q)
    if first.rank() != second.cols - second.rank():
        raise LieExactnessError(f"image != kernel at {name}", q)


def whitehead_lie_table(m: FreeLieModel, k_max: int) -> list[LieWhiteheadRow]:
    """Rows W_q -> H_{q-1}(L(W_{<=q-2})) -> H_{q-1}(L(W)) -> W_{q-1} for 3 <= q <= k_max.

    Exactness is verified at all three inner junctions of each row.
    """
    if k_max < 3:
        raise ValueError("k_max must be at least 3")
    if not m.generators:
        return []
    rows = []
    for q in range(3, k_max + 1):
        b = b_lie(m, q, q - 2)
        inc = _inclusion(m, q - 1)
        proj = _projection(m, q - 1)
        b_prev = b_lie(m, q - 1, q - 3) if q - 1 >= 3 else RationalMatrix.zeros(0, len(m.in_degree(q - 1)))
        _exact("H_{q-1}(skeleton)", q, b, inc)
        _exact("H_{q-1}(L(W))", q, inc, proj)
        _exact("W_{q-1}", q, proj, b_prev)
        rows.append(LieWhiteheadRow(q, len(m.in_degree(q)), b, b.rows, inc.rows))
    return rows


# ---------------------------------------------------------------- dgl maps


def apply_lie_map(images: Mapping[str, Tensor], t: Tensor) -> Tensor:
    """Degree-0 algebra map on tensors determined by generator images."""
    out: Tensor = {}
    for w, c in t.items():
        acc: Tensor = {(): Fraction(1)}
        for x in w:
            acc = tensor_product(acc, images[x])
        _add_into(out, acc, c)
    return out


def lie_images(m: FreeLieModel, assignment: Mapping[str, object]) -> dict[str, Tensor]:
    """Normalise an assignment (scalar, tensor, or list of (coeff, tree)) to tensors."""
    out = {}
    for g in m.generators:
        v = assignment.get(g.name, 1)
        if isinstance(v, dict):
            out[g.name] = dict(v)
        elif isinstance(v, (list, tuple)):
            acc: Tensor = {}
            for c, t in v:
                _add_into(acc, m.expand(t), Fraction(c))
            out[g.name] = acc
        else:
            out[g.name] = {(g.name,): Fraction(v)} if Fraction(v) else {}
    return out


def check_lie_map(m: FreeLieModel, images: Mapping[str, Tensor]) -> None:
    for g in m.generators:
        img = images[g.name]
        if any(m.word_degree(w) != g.degree for w in img):
            raise ModelError(f"image of {g.name!r} has wrong degree", g.name)
        if m.d(img) != apply_lie_map(images, m.differential[g.name]):
            raise ModelError(f"map does not commute with delta on {g.name!r}", g.name)


@dataclass(frozen=True)
class SkeletonSquare:
    q: int
    k: int
    commutes: bool
    residual: RationalMatrix


def check_skeleton_square(m: FreeLieModel, q: int, k: int, gen_map: RationalMatrix,
                            alg_map: Mapping[str, object]) -> SkeletonSquare:
    """Decide ``b_q gen_map = H_{q-1}(alg_map) b_q`` on the skeleton L(W_{<=k})."""
    if q <= k:
        raise ValueError("need q > k")
    skel = m.skeleton(k)
    images = lie_images(skel, alg_map)
    check_lie_map(skel, images)
    wq = len(m.in_degree(q))
    if gen_map.shape != (wq, wq) or gen_map.rank() != wq:
        raise ValueError(f"gen_map must be an invertible {wq}x{wq} matrix")
    b = b_lie(m, q, k)
    h = lie_homology(skel, q - 1)
    hmap = RationalMatrix.from_columns([h.reduction(apply_lie_map(images, r)) for r in h.representatives],
                                       h.dim)
    residual = b @ gen_map - hmap @ b
    return SkeletonSquare(q, k, residual.is_zero(), residual)


# ---------------------------------------------------------------- paired-model index check


def index_shift_check(sullivan, lie: FreeLieModel, k_range: Iterable[int], shift: int) -> dict:
    """Compare dim H^{k+1}(LV^{<=k+shift}) with dim H_{k-1}(L(W_{<=k-2})) for each k."""
    from ratmodels.cdga import truncate
    from ratmodels.cohomology import cohomology_dim

    rows = []
    for k in k_range:
        left = cohomology_dim(truncate(sullivan, k + shift), k + 1)
        right = lie_homology_dim(lie.skeleton(k - 2), k - 1) if k >= 3 else 0
        rows.append({"k": k, "sullivan_dim": left, "lie_dim": right, "pass": left == right})
    return {"shift": shift, "rows": rows, "all_pass": all(r["pass"] for r in rows),
            "failing_k": [r["k"] for r in rows if not r["pass"]]}


def shift_scan(sullivan, lie: FreeLieModel, k_range: Sequence[int], shifts: Iterable[int]) -> dict:
    reports = [index_shift_check(sullivan, lie, k_range, s) for s in shifts]
    return {"reports": reports, "valid_shifts": [r["shift"] for r in reports if r["all_pass"]]}

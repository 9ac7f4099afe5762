"""Degreewise cohomology of Sullivan models and induced maps."""
from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ratmodels.cdga import (
    Polynomial,
    SullivanModel,
    Word,
    apply_endomorphism,
    basis_in_degree,
    check_endomorphism,
)
from ratmodels.exactla import QuotientSpace, RationalMatrix, kernel_from_rref
from ratmodels.kernels import echelon


@dataclass(frozen=True)
class CohomologySpace:
    degree: int
    basis_words: tuple[Word, ...]
    representatives: tuple[Polynomial, ...]
    quotient: QuotientSpace

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coordinates(self, p: Polynomial) -> list[Fraction]:
        """Coordinates of p restricted to this degree's word basis."""
        index = {w: i for i, w in enumerate(self.basis_words)}
        v = [Fraction(0)] * len(self.basis_words)
        for w, c in p:
            if w not in index:
                raise ValueError(f"word outside degree {self.degree} basis")
            v[index[w]] = c
        return v

    def reduction(self, cocycle: Polynomial) -> list[Fraction]:
        """Coordinate vector of the class of ``cocycle`` in the chosen basis."""
        if not cocycle:
            return [Fraction(0)] * self.dim
        return self.quotient.reduce(self.coordinates(cocycle))


def differential_columns(m: SullivanModel, k: int):
    """Images of the degree-k basis as coordinate vectors in degree k+1."""
    src = basis_in_degree(m, k)
    tgt = basis_in_degree(m, k + 1)
    index = {w: i for i, w in enumerate(tgt)}
    cols = []
    for w in src:
        v = [Fraction(0)] * len(tgt)
        for u, c in m.d_word(w):
            v[index[u]] = c
        cols.append(v)
    return src, tgt, cols


_memo: "weakref.WeakKeyDictionary[SullivanModel, dict[int, CohomologySpace]]" = weakref.WeakKeyDictionary()
_memo_lock = threading.Lock()


def _compute(m: SullivanModel, k: int) -> CohomologySpace:
    words, _, dcols = differential_columns(m, k)
    n = len(words)
    # kernel of d_k: solve A x = 0 where A has the images as columns
    ntgt = len(dcols[0]) if dcols else 0
    rows = [[dcols[j][i] for j in range(n)] for i in range(ntgt)]
    rref, piv = echelon(rows, n)
    cycles = kernel_from_rref(rref, piv, n)
    _, _, bcols = differential_columns(m, k - 1) if k >= 1 else ([], [], [])
    q = QuotientSpace(n, cycles, bcols)
    reps = tuple(
        Polynomial((words[i], c) for i, c in enumerate(r) if c) for r in q.representatives
    )
    return CohomologySpace(k, tuple(words), reps, q)


def cohomology_basis(m: SullivanModel, k: int) -> CohomologySpace:
    if k < 0:
        raise ValueError("negative degree")
    with _memo_lock:
        per = _memo.get(m)
        if per is None:
            per = _memo[m] = {}
        hit = per.get(k)
    if hit is not None:
        return hit
    space = _compute(m, k)
    with _memo_lock:
        return per.setdefault(k, space)


def cohomology_dim(m: SullivanModel, k: int) -> int:
    return cohomology_basis(m, k).dim


def map_matrix(images: Mapping[str, Polynomial], source: CohomologySpace,
               target: CohomologySpace) -> RationalMatrix:
    cols = [target.reduction(apply_endomorphism(images, r)) for r in source.representatives]
    return RationalMatrix.from_columns(cols, target.dim)


def induced_map(m: SullivanModel, endo: Mapping[str, Polynomial], k: int) -> RationalMatrix:
    """Matrix of H^k(endo) in the basis of :func:`cohomology_basis`."""
    check_endomorphism(m, endo)
    h = cohomology_basis(m, k)
    return map_matrix(endo, h, h)

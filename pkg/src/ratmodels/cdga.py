"""Free graded-commutative algebras over Q with a degree +1 differential.

Words are tuples of ``(degree, name, exponent)`` triples in canonical order
(ascending degree, then name). Odd generators carry exponent 1.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from ratmodels.kernels import word_product

Word = tuple  # tuple[tuple[int, str, int], ...]
ONE: Word = ()


class ModelError(ValueError):
    """A model violates a structural invariant; ``generator`` names the culprit."""

    def __init__(self, message: str, generator: str | None = None):
        super().__init__(message)
        self.generator = generator


class NonHomogeneousError(ValueError):
    pass


class TruncationError(ModelError):
    pass


class Generator(NamedTuple):
    name: str
    degree: int

    @property
    def key(self) -> tuple[int, str]:
        return (self.degree, self.name)

    @property
    def odd(self) -> bool:
        return bool(self.degree & 1)


def word_degree(w: Word) -> int:
    return sum(d * e for d, _, e in w)


def word_length(w: Word) -> int:
    return sum(e for _, _, e in w)


def word_str(w: Word) -> str:
    if not w:
        return "1"
    return "*".join(n if e == 1 else f"{n}^{e}" for _, n, e in w)


def normalize_word(factors: Sequence[Generator]):
    """Canonical word of an ordered product of generators.

    Returns ``(word, sign)``, or ``None`` when an odd generator repeats.
    """
    w, sign = ONE, 1
    for g in factors:
        r = word_product(w, ((g.degree, g.name, 1),))
        if r is None:
            return None
        w, s = r
        sign *= s
    return w, sign


class Polynomial:
    """Finite rational combination of words; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction] | Iterable[tuple[Word, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        t: dict[Word, Fraction] = {}
        for w, c in items:
            c = t.get(w, 0) + Fraction(c)
            if c:
                t[w] = c
            else:
                t.pop(w, None)
        self.terms = t

    @classmethod
    def word(cls, w: Word, coeff=1) -> "Polynomial":
        return cls({w: Fraction(coeff)})

    @classmethod
    def generator(cls, g: Generator, coeff=1) -> "Polynomial":
        return cls({((g.degree, g.name, 1),): Fraction(coeff)})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls({ONE: Fraction(1)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self.terms
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w, 0) + c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        return _raw(t)

    def __neg__(self) -> "Polynomial":
        return _raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial()
        return _raw({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return multiply(self, other)

    def degrees(self) -> set[int]:
        return {word_degree(w) for w in self.terms}

    def homogeneous_degree(self) -> int | None:
        """Common degree of all words; ``None`` for zero. Raises if mixed."""
        ds = self.degrees()
        if len(ds) > 1:
            raise NonHomogeneousError(f"polynomial mixes degrees {sorted(ds)}")
        return ds.pop() if ds else None

    def generators(self) -> set[str]:
        return {n for w in self.terms for _, n, _ in w}

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)})"


def _raw(t: dict) -> Polynomial:
    p = Polynomial.__new__(Polynomial)
    p.terms = t
    return p


def format_polynomial(p: Polynomial) -> str:
    if not p:
        return "0"
    parts = []
    for i, (w, c) in enumerate(p):
        neg = c < 0
        a = -c if neg else c
        body = word_str(w)
        if a != 1 or not w:
            body = f"{a}*{body}" if w else str(a)
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    out: dict[Word, Fraction] = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            r = word_product(w1, w2)
            if r is None:
                continue
            w, s = r
            v = out.get(w, 0) + (c1 * c2 if s > 0 else -c1 * c2)
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return _raw(out)


def power(p: Polynomial, e: int) -> Polynomial:
    r = Polynomial.one()
    for _ in range(e):
        r = multiply(r, p)
    return r


class SullivanModel:
    """Minimal Sullivan algebra (Lambda V, d) given by generators and differential images.

    Construction checks degrees, homogeneity, minimality and that differentials
    only mention generators of the model. ``d^2 = 0`` is checked by
    :meth:`check_d_squared` (run by loaders and ``validate``).
    """

    def __init__(self, generators: Iterable[Generator], differential: Mapping[str, Polynomial],
                 name: str | None = None):
        gens = sorted((Generator(g[0], int(g[1])) for g in generators), key=lambda g: g.key)
        seen = set()
        for g in gens:
            if g.name in seen:
                raise ModelError(f"duplicate generator {g.name!r}", g.name)
            seen.add(g.name)
            if g.degree < 2:
                raise ModelError(f"generator {g.name!r} has degree {g.degree} < 2", g.name)
        unknown = set(differential) - seen
        if unknown:
            n = sorted(unknown)[0]
            raise ModelError(f"differential given for unknown generator {n!r}", n)
        self.generators: tuple[Generator, ...] = tuple(gens)
        self.name = name
        self._by_name = {g.name: g for g in gens}
        self.differential: dict[str, Polynomial] = {}
        for g in gens:
            dg = differential.get(g.name) or Polynomial()
            for w, _ in dg:
                for d, n, _ in w:
                    h = self._by_name.get(n)
                    if h is None or h.degree != d:
                        raise ModelError(f"d({g.name}) mentions unknown generator {n!r}", g.name)
                if word_degree(w) != g.degree + 1:
                    raise ModelError(
                        f"d({g.name}) has a word {word_str(w)} of degree {word_degree(w)},"
                        f" expected {g.degree + 1}", g.name)
                if word_length(w) < 2:
                    raise ModelError(f"d({g.name}) has linear term {word_str(w)}; model is not minimal",
                                     g.name)
            self.differential[g.name] = dg
        self._dword: dict[Word, Polynomial] = {}
        self._bases: dict[int, tuple[Word, ...]] = {}
        self._lock = threading.Lock()

    # -- structure

    def __getitem__(self, name: str) -> Generator:
        return self._by_name[name]

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __eq__(self, other) -> bool:
        return (isinstance(other, SullivanModel) and self.generators == other.generators
                and self.differential == other.differential)

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<SullivanModel{label}: {', '.join(f'{g.name}_{g.degree}' for g in self.generators)}>"

    def in_degree(self, k: int) -> list[Generator]:
        return [g for g in self.generators if g.degree == k]

    @property
    def max_degree(self) -> int:
        return max((g.degree for g in self.generators), default=0)

    def gen_poly(self, name: str) -> Polynomial:
        return Polynomial.generator(self._by_name[name])

    # -- differential

    def d_word(self, w: Word) -> Polynomial:
        cached = self._dword.get(w)
        if cached is not None:
            return cached
        result = Polynomial()
        sign = 1
        for i, (deg, nm, e) in enumerate(w):
            dg = self.differential[nm]
            if dg:
                tail = (((deg, nm, e - 1),) if e > 1 else ()) + w[i + 1:]
                term = multiply(Polynomial.word(w[:i]), multiply(dg, Polynomial.word(tail)))
                result = result + term.scale(sign * e)
            if deg & 1:
                sign = -sign
        with self._lock:
            self._dword.setdefault(w, result)
        return result

    def check_d_squared(self) -> None:
        for g in self.generators:
            dd = apply_differential(self, self.differential[g.name])
            if dd:
                raise ModelError(f"d^2({g.name}) = {format_polynomial(dd)} != 0", g.name)


def apply_differential(m: SullivanModel, p: Polynomial) -> Polynomial:
    p.homogeneous_degree()
    out = Polynomial()
    for w, c in p:
        out = out + m.d_word(w).scale(c)
    return out


def basis_in_degree(m: SullivanModel, k: int) -> list[Word]:
    """All canonical words of total degree ``k``; degree 0 gives ``[()]``."""
    if k < 0:
        return []
    hit = m._bases.get(k)
    if hit is None:
        hit = tuple(_enumerate_words(m, k))
        with m._lock:
            m._bases.setdefault(k, hit)
    return list(hit)


def _enumerate_words(m: SullivanModel, k: int) -> list[Word]:
    gens = [g for g in m.generators if g.degree <= k]
    out: list[Word] = []

    def rec(i: int, remaining: int, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            return
        if i == len(gens):
            return
        g = gens[i]
        top = 1 if g.odd else remaining // g.degree
        for e in range(top, -1, -1):
            r = remaining - e * g.degree
            if r < 0:
                continue
            if e:
                acc.append((g.degree, g.name, e))
            rec(i + 1, r, acc)
            if e:
                acc.pop()

    rec(0, k, [])
    return out


def truncate(m: SullivanModel, k: int) -> SullivanModel:
    kept = [g for g in m.generators if g.degree <= k]
    names = {g.name for g in kept}
    diff = {}
    for g in kept:
        dg = m.differential[g.name]
        escaped = dg.generators() - names
        if escaped:
            raise TruncationError(
                f"d({g.name}) involves {sorted(escaped)} outside the truncation at {k}", g.name)
        diff[g.name] = dg
    return SullivanModel(kept, diff, name=f"{m.name}<={k}" if m.name else None)


# ---------------------------------------------------------------- endomorphisms


def apply_endomorphism(images: Mapping[str, Polynomial], p: Polynomial) -> Polynomial:
    """Image of ``p`` under the algebra map sending each generator to ``images[name]``."""
    out = Polynomial()
    for w, c in p:
        acc = Polynomial.one()
        for _, n, e in w:
            acc = multiply(acc, power(images[n], e))
        out = out + acc.scale(c)
    return out


def check_endomorphism(m: SullivanModel, images: Mapping[str, Polynomial]) -> None:
    """Raise ``ModelError`` naming the first generator where the map is not a dga map."""
    for g in m.generators:
        img = images.get(g.name)
        if img is None:
            raise ModelError(f"no image given for {g.name!r}", g.name)
        if img and img.homogeneous_degree() != g.degree:
            raise ModelError(f"image of {g.name!r} has wrong degree", g.name)
        lhs = apply_differential(m, img)
        rhs = apply_endomorphism(images, m.differential[g.name])
        if lhs != rhs:
            raise ModelError(f"endomorphism does not commute with d on {g.name!r}", g.name)


def scaling(m: SullivanModel, scalars: Mapping[str, object]) -> dict[str, Polynomial]:
    """Generator assignment ``g -> scalars[g] * g`` (missing names map to themselves)."""
    return {g.name: m.gen_poly(g.name).scale(scalars.get(g.name, 1)) for g in m.generators}


def identity_map(m: SullivanModel) -> dict[str, Polynomial]:
    return {g.name: m.gen_poly(g.name) for g in m.generators}

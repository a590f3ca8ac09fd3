"""Exact arithmetic in the Leavitt path algebra of a one-vertex loop graph.

The algebra, usually written W(l), is generated by the vertex v, the loop
edges e_1 .. e_l and their duals e_1* .. e_l*, subject to

    v being a two-sided unit,
    e_i* e_j = delta_ij v,
    e_1 e_1* + ... + e_l e_l* = v.

Word letters are encoded as small ints: 0 is the vertex, +i the edge e_i,
-i the dual edge e_i*.  The empty word denotes v.

Every element has a unique normal form: a rational linear combination of
basis monomials w.h*, where w and h are (possibly empty) paths stored as
tuples of edge indices and h* means "reverse h and star each letter".
When both parts are nonempty their junction edges may not both be the
special edge e_1; the word e_1 e_1* is exactly the one that rewrites, to
v - sum_{k>=2} e_k e_k*.  The classes vertex / path / dual path / mixed
correspond to (w, h) being (empty, empty), (w, empty), (empty, h) and
(w, h) with both nonempty.

Coefficients are `fractions.Fraction`, so equality of elements is exact
and decidable; the test suites rely on that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator

VERTEX = 0

Word = tuple  # tuple of int letters

_CLASS_RANK = {"vertex": 0, "path": 1, "dual": 2, "mixed": 3}


@dataclass(frozen=True, slots=True)
class AlgebraConfig:
    """Shape of the algebra: number of loops, with e_1 fixed as special."""

    loops: int
    special_index: int = 1

    def __post_init__(self):
        if self.loops < 1:
            raise ValueError(f"need at least one loop edge, got {self.loops}")
        if self.special_index != 1:
            raise ValueError("the special edge is fixed to e1")

    def edge_indices(self) -> range:
        return range(1, self.loops + 1)

    def generators(self) -> tuple[int, ...]:
        """All non-vertex generator letters: e_1..e_l, then e_1*..e_l*."""
        return tuple(self.edge_indices()) + tuple(-i for i in self.edge_indices())

    def check_word(self, word: Iterable[int]) -> tuple[int, ...]:
        word = tuple(word)
        for g in word:
            if g != VERTEX and not (1 <= abs(g) <= self.loops):
                raise ValueError(
                    f"letter {g!r} out of range for an algebra with {self.loops} loops"
                )
        return word


def generator_name(g: int) -> str:
    """Surface-syntax name of a generator letter: v, e3, e3'."""
    if g == VERTEX:
        return "v"
    return f"e{g}" if g > 0 else f"e{-g}'"


@dataclass(frozen=True, slots=True)
class BasisMonomial:
    """Normal-form monomial w.h*; both paths stored forward."""

    w: tuple[int, ...] = ()
    h: tuple[int, ...] = ()

    @property
    def kind(self) -> str:
        if not self.w:
            return "dual" if self.h else "vertex"
        return "mixed" if self.h else "path"

    @property
    def length(self) -> int:
        return len(self.w) + len(self.h)

    def spelled(self) -> tuple[int, ...]:
        """The word spelling: edges of w, then reversed starred h."""
        return self.w + tuple(-f for f in reversed(self.h))

    def sort_key(self):
        return (self.length, _CLASS_RANK[self.kind], self.w, self.h)

    def __str__(self) -> str:
        if not self.w and not self.h:
            return "v"
        return " ".join(generator_name(g) for g in self.spelled())


VERTEX_MONOMIAL = BasisMonomial()


def _monomial_ok(cfg: AlgebraConfig, m: BasisMonomial) -> bool:
    if any(not 1 <= i <= cfg.loops for i in m.w + m.h):
        return False
    if m.w and m.h and m.w[-1] == cfg.special_index and m.h[-1] == cfg.special_index:
        return False
    return True


class Element:
    """Finitely supported rational combination of basis monomials.

    Immutable by convention: no method mutates an existing instance, so
    elements may be shared freely (including across threads).
    """

    __slots__ = ("cfg", "terms")

    def __init__(self, cfg: AlgebraConfig, terms=()):
        data: dict[BasisMonomial, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for mono, coeff in items:
            coeff = Fraction(coeff)
            if coeff:
                acc = data.get(mono, 0) + coeff
                if acc:
                    data[mono] = acc
                else:
                    del data[mono]
        self.cfg = cfg
        self.terms = data

    @classmethod
    def zero(cls, cfg: AlgebraConfig) -> "Element":
        return cls(cfg)

    @classmethod
    def unit(cls, cfg: AlgebraConfig) -> "Element":
        return cls(cfg, [(VERTEX_MONOMIAL, 1)])

    @classmethod
    def monomial(cls, cfg: AlgebraConfig, mono: BasisMonomial, coeff=1) -> "Element":
        return cls(cfg, [(mono, coeff)])

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: BasisMonomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def support(self) -> list[BasisMonomial]:
        return sorted(self.terms, key=BasisMonomial.sort_key)

    def items(self) -> Iterator[tuple[BasisMonomial, Fraction]]:
        return iter(self.terms.items())

    def max_word_length(self) -> int:
        return max((m.length for m in self.terms), default=0)

    def __iter__(self):
        return iter(self.terms.items())

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.cfg == other.cfg and self.terms == other.terms

    def __hash__(self):
        return hash((self.cfg, frozenset(self.terms.items())))

    def __add__(self, other: "Element") -> "Element":
        self._check_peer(other)
        data = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = data.get(mono, 0) + coeff
            if acc:
                data[mono] = acc
            else:
                del data[mono]
        return self._wrap(data)

    def __sub__(self, other: "Element") -> "Element":
        self._check_peer(other)
        data = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = data.get(mono, 0) - coeff
            if acc:
                data[mono] = acc
            else:
                del data[mono]
        return self._wrap(data)

    def __neg__(self) -> "Element":
        return self._wrap({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check_peer(other)
            data: dict[BasisMonomial, Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    c12 = c1 * c2
                    for mono, coeff in _monomial_product(self.cfg, m1, m2).terms.items():
                        acc = data.get(mono, 0) + c12 * coeff
                        if acc:
                            data[mono] = acc
                        else:
                            del data[mono]
            return self._wrap(data)
        if isinstance(other, Rational):
            return self._scaled(Fraction(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self._scaled(Fraction(other))
        return NotImplemented

    def _scaled(self, c: Fraction) -> "Element":
        if not c:
            return Element(self.cfg)
        return self._wrap({m: c * x for m, x in self.terms.items()})

    def _wrap(self, data: dict) -> "Element":
        out = Element.__new__(Element)
        out.cfg = self.cfg
        out.terms = data
        return out

    def _check_peer(self, other: "Element"):
        if self.cfg != other.cfg:
            raise ValueError(f"mixed algebra configs: {self.cfg} vs {other.cfg}")

    def __repr__(self):
        if not self.terms:
            return "<Element 0>"
        body = " + ".join(f"({c})*{m}" for m, c in sorted(
            self.terms.items(), key=lambda t: t[0].sort_key()))
        return f"<Element {body}>"


def reduce_word(cfg: AlgebraConfig, word: Iterable[int]) -> Element:
    """Normal form of a free word, as an Element.

    Deterministic strategy: drop vertex letters (the empty word is v);
    cancel the leftmost dual-then-edge pair via e_i* e_j -> delta_ij;
    once the word is edges-then-duals, expand the junction
    e_1 e_1* -> v - sum_{k>=2} e_k e_k* and recurse on the shorter
    v-branch (the other branches are already normal).
    """
    word = cfg.check_word(word)
    return _reduce_spelled(cfg, tuple(g for g in word if g != VERTEX))


@lru_cache(maxsize=None)
def _reduce_spelled(cfg: AlgebraConfig, word: tuple[int, ...]) -> Element:
    letters = list(word)
    t = 0
    while t < len(letters) - 1:
        if letters[t] < 0 < letters[t + 1]:
            if letters[t] != -letters[t + 1]:
                return Element.zero(cfg)
            del letters[t:t + 2]
            t = max(t - 1, 0)
        else:
            t += 1
    split = next((k for k, g in enumerate(letters) if g < 0), len(letters))
    edges = tuple(letters[:split])
    duals = tuple(letters[split:])
    if edges and duals and edges[-1] == 1 and duals[0] == -1:
        data = dict(_reduce_spelled(cfg, edges[:-1] + duals[1:]).terms)
        for k in range(2, cfg.loops + 1):
            mono = BasisMonomial(edges[:-1] + (k,), _dual_letters_to_path((-k,) + duals[1:]))
            acc = data.get(mono, 0) - 1
            if acc:
                data[mono] = acc
            else:
                del data[mono]
        return Element(cfg, data)
    return Element.monomial(cfg, BasisMonomial(edges, _dual_letters_to_path(duals)))


def _dual_letters_to_path(duals: tuple[int, ...]) -> tuple[int, ...]:
    # (-j1, ..., -jm) spells (jm ... j1)*; return the path read forward.
    return tuple(-d for d in reversed(duals))


@lru_cache(maxsize=None)
def _monomial_product(cfg: AlgebraConfig, a: BasisMonomial, b: BasisMonomial) -> Element:
    return _reduce_spelled(cfg, a.spelled() + b.spelled())


def multiply(cfg: AlgebraConfig, a: Element, b: Element) -> Element:
    if a.cfg != cfg or b.cfg != cfg:
        raise ValueError("elements do not belong to the given config")
    return a * b


def add(a: Element, b: Element) -> Element:
    return a + b


def scale(c, a: Element) -> Element:
    return Fraction(c) * a


def is_basis_monomial(cfg: AlgebraConfig, word: Iterable[int]) -> bool:
    """True iff the word spells v, a path, a dual path, or a valid w.h*."""
    word = cfg.check_word(word)
    if word in ((), (VERTEX,)):
        return True
    if VERTEX in word:
        return False
    split = next((k for k, g in enumerate(word) if g < 0), len(word))
    if any(g < 0 for g in word[:split]) or any(g > 0 for g in word[split:]):
        return False
    edges, duals = word[:split], word[split:]
    if edges and duals and edges[-1] == cfg.special_index and duals[0] == -cfg.special_index:
        return False
    return True


def enumerate_basis(cfg: AlgebraConfig, max_len: int) -> list[BasisMonomial]:
    """All basis monomials of length <= max_len, in canonical order.

    Order: by (length, class vertex < path < dual < mixed, then index-wise
    lexicographic on the stored paths, e_1 first).
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    out = [VERTEX_MONOMIAL]
    idx = range(1, cfg.loops + 1)
    for n in range(1, max_len + 1):
        for p in itertools.product(idx, repeat=n):
            out.append(BasisMonomial(w=p))
            out.append(BasisMonomial(h=p))
    for total in range(2, max_len + 1):
        for wlen in range(1, total):
            for w in itertools.product(idx, repeat=wlen):
                for h in itertools.product(idx, repeat=total - wlen):
                    if w[-1] == cfg.special_index and h[-1] == cfg.special_index:
                        continue
                    out.append(BasisMonomial(w, h))
    out.sort(key=BasisMonomial.sort_key)
    return out


def element_from_words(cfg: AlgebraConfig, weighted_words) -> Element:
    """Sum of coeff * reduce_word(word) over (coeff, word) pairs."""
    total = Element.zero(cfg)
    for coeff, word in weighted_words:
        total = total + Fraction(coeff) * reduce_word(cfg, word)
    return total

"""Ring models and their graded pieces.

Three kinds of model share one shape of ambient algebra:

* ``free``        -- H^*(BT x T^m), optionally with the t block of B Z^m;
* ``su``          -- the SU(n) torus: x_1 + ... + x_n = 0, y_1^j + ... + y_n^j = 0;
* ``coinvariant`` -- H^*(G/T x T^m): the basic invariants of W in the x's
  (plus the SU relations for SU(n)).

Quotients are computed piece by piece with linear algebra.  All relations
are homogeneous for the multigrading

    (x-degree, number of y's in each column j, set of t's)

and W preserves it, so everything is organised in multidegree blocks.  When
every relation lives purely in the x's or purely in the odd generators (true
for all three kinds) the quotient of a block is the tensor product of an
x-quotient and an odd quotient; otherwise a generic path handles whole
degree pieces.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from math import comb
from typing import NamedTuple, Sequence

from gmpy2 import mpq

from .algebra import AlgebraShape, Element, Monomial, mul
from .linalg import Echelon
from .weyl import BudgetExceeded, Family

__all__ = [
    "Multidegree",
    "RingModel",
    "DegreeBasis",
    "free_model",
    "su_quotient",
    "coinvariant_model",
    "basic_invariants",
    "bg_generators",
    "elementary_symmetric",
    "power_sum",
    "degree_basis",
    "multidegrees",
    "degree_budget",
]

DEFAULT_DEGREE_BUDGET = 200_000


def degree_budget() -> int:
    return int(os.environ.get("THETACOH_DEGREE_BUDGET", DEFAULT_DEGREE_BUDGET))


class Multidegree(NamedTuple):
    xdeg: int
    cols: tuple[int, ...]
    tmask: int

    @property
    def degree(self) -> int:
        return 2 * self.xdeg + sum(self.cols) + self.tmask.bit_count()

    def __sub__(self, other: Multidegree) -> Multidegree | None:
        if self.xdeg < other.xdeg or other.tmask & ~self.tmask:
            return None
        cols = tuple(a - b for a, b in zip(self.cols, other.cols))
        if any(c < 0 for c in cols):
            return None
        return Multidegree(self.xdeg - other.xdeg, cols, self.tmask & ~other.tmask)

    def is_zero(self) -> bool:
        return self.xdeg == 0 and not any(self.cols) and not self.tmask


@lru_cache(maxsize=None)
def x_monomials(n: int, a: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree ``a`` in n variables, lex-descending."""
    out = []
    for combo in combinations_with_replacement(range(n), a):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(sorted(set(out), reverse=True))


@lru_cache(maxsize=None)
def odd_masks(n: int, m: int, cols: tuple[int, ...], tmask: int) -> tuple[int, ...]:
    """Odd bitmasks with ``cols[j]`` y's in column j and t part ``tmask``, descending."""
    per_col = []
    for j, c in enumerate(cols):
        per_col.append([sum(1 << (i * m + j) for i in rows) for rows in combinations(range(n), c)])
    tbits = tmask << (n * m)
    masks = [sum(choice) | tbits for choice in product(*per_col)]
    return tuple(sorted(masks, reverse=True))


def multidegrees(shape: AlgebraShape, d: int) -> list[Multidegree]:
    """All multidegrees of total degree ``d`` with nonempty ambient block."""
    n, m = shape.n, shape.m
    out = []
    tmasks = range(1 << m) if shape.with_t else (0,)
    for a in range(d // 2 + 1):
        k = d - 2 * a
        for T in tmasks:
            rest = k - T.bit_count()
            if rest < 0:
                continue
            for cols in _compositions(rest, m, n):
                out.append(Multidegree(a, cols, T))
    return out


def _compositions(total: int, parts: int, cap: int) -> list[tuple[int, ...]]:
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(min(total, cap), -1, -1):
        for rest in _compositions(total - first, parts - 1, cap):
            out.append((first,) + rest)
    return out


def multidegree_of(mono: Monomial, shape: AlgebraShape) -> Multidegree:
    m = shape.m
    cols = [0] * m
    for r in mono.y_rows(shape):
        for j in range(m):
            if r >> j & 1:
                cols[j] += 1
    return Multidegree(sum(mono.x), tuple(cols), mono.t_part(shape))


def ambient_dimension(shape: AlgebraShape, d: int) -> int:
    total = 0
    for a in range(d // 2 + 1):
        total += comb(shape.n + a - 1, a) * comb(shape.num_odd, d - 2 * a)
    return total


# -- polynomial helpers in the x variables ------------------------------------
def _x_element(shape: AlgebraShape, poly: dict) -> Element:
    return Element(shape, {Monomial(e, 0): c for e, c in poly.items()})


def elementary_symmetric(shape: AlgebraShape, k: int, power: int = 1) -> Element:
    """e_k(x_1^p, ..., x_n^p)."""
    n = shape.n
    poly = {}
    for idx in combinations(range(n), k):
        e = [0] * n
        for i in idx:
            e[i] = power
        poly[tuple(e)] = 1
    return _x_element(shape, poly)


def power_sum(shape: AlgebraShape, k: int) -> Element:
    n = shape.n
    poly = {}
    for i in range(n):
        e = [0] * n
        e[i] = k
        poly[tuple(e)] = 1
    return _x_element(shape, poly)


def basic_invariants(family: Family, shape: AlgebraShape | None = None) -> list[Element]:
    """Generators of the positive-degree W-invariants of Q[x].

    U: e_1..e_n;  SU: e_2..e_n (e_1 is an SU relation);  Sp, SO(2n+1):
    p_1..p_n with p_i = e_i(x^2);  SO(2n): p_1..p_{n-1} and x_1...x_n.
    """
    shape = shape or AlgebraShape(family.n, 0)
    n = family.n
    if shape.n != n:
        raise ValueError("shape rank does not match the family")
    tag = family.tag
    if tag == "U":
        return [elementary_symmetric(shape, k) for k in range(1, n + 1)]
    if tag == "SU":
        return [elementary_symmetric(shape, k) for k in range(2, n + 1)]
    if tag in ("Sp", "SO_odd"):
        return [elementary_symmetric(shape, k, 2) for k in range(1, n + 1)]
    return [elementary_symmetric(shape, k, 2) for k in range(1, n)] + [elementary_symmetric(shape, n)]


def bg_generators(family: Family, shape: AlgebraShape | None = None) -> list[tuple[int, int, Element]]:
    """(i, |z_i|, j^*(z_i)) for the chosen polynomial generators of H^*(BG).

    U: sum x^i (i = 1..n); SU: the same with i >= 2; Sp, SO(2n+1): sum x^{2i};
    SO(2n): p_1..p_{n-1} as i = 1..n-1, and the Euler class e as i = n.
    """
    shape = shape or AlgebraShape(family.n, 0)
    n = family.n
    tag = family.tag
    if tag == "U":
        return [(i, 2 * i, power_sum(shape, i)) for i in range(1, n + 1)]
    if tag == "SU":
        return [(i, 2 * i, power_sum(shape, i)) for i in range(2, n + 1)]
    if tag in ("Sp", "SO_odd"):
        return [(i, 4 * i, power_sum(shape, 2 * i)) for i in range(1, n + 1)]
    out = [(i, 4 * i, elementary_symmetric(shape, i, 2)) for i in range(1, n)]
    out.append((n, 2 * n, elementary_symmetric(shape, n)))
    return out


def su_relations(shape: AlgebraShape) -> list[Element]:
    n = shape.n
    rels = [power_sum(shape, 1)]
    for j in range(1, shape.m + 1):
        acc = Element.zero(shape)
        for i in range(1, n + 1):
            acc = acc + Element.y(shape, i, j)
        rels.append(acc)
    return rels


def _is_pure_x(r: Element) -> bool:
    return all(mono.odd == 0 for mono in r.terms)


def _is_pure_odd(r: Element) -> bool:
    return all(not any(mono.x) for mono in r.terms)


@dataclass(eq=False)
class RingModel:
    """Ambient algebra modulo homogeneous relations (an ideal).

    ``kind`` is ``"free"``, ``"su"`` or ``"coinvariant"``; coinvariant models
    carry their family.  Objects are treated as immutable; ``_cache`` only
    memoises derived data.
    """

    shape: AlgebraShape
    relations: tuple[Element, ...]
    kind: str
    family: Family | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.relations = tuple(r for r in self.relations if r)
        for r in self.relations:
            if r.shape != self.shape:
                raise ValueError("relation shape differs from the model shape")
            if not r.is_homogeneous():
                raise ValueError(f"relation {r} is not homogeneous")
        self._x_rels = [r for r in self.relations if _is_pure_x(r)]
        self._odd_rels = [r for r in self.relations if _is_pure_odd(r) and not _is_pure_x(r)]
        self.separable = len(self._x_rels) + len(self._odd_rels) == len(self.relations)

    def __repr__(self) -> str:
        fam = f", {self.family}" if self.family else ""
        return f"RingModel({self.kind}{fam}, n={self.shape.n}, m={self.shape.m}, t={self.shape.with_t})"

    @property
    def description(self) -> str:
        if self.kind == "coinvariant":
            return f"Coinvariant({self.family})"
        return {"free": "Free", "su": "SUQuotient"}.get(self.kind, self.kind)

    # -- x quotient ---------------------------------------------------------
    def _x_piece(self, a: int):
        key = ("x", a)
        if key in self._cache:
            return self._cache[key]
        n = self.shape.n
        mons = x_monomials(n, a)
        if not self._x_rels:
            piece = (mons, None)
            self._cache[key] = piece
            return piece
        if len(mons) > degree_budget():
            raise BudgetExceeded(f"{len(mons)} x-monomials in degree {a} exceed the budget")
        pos = {e: k for k, e in enumerate(mons)}
        ech = Echelon()
        for r in self._x_rels:
            ra = sum(next(iter(r.terms)).x)
            if ra > a:
                continue
            for e in x_monomials(n, a - ra):
                vec = {}
                for mono, c in r.terms.items():
                    k = pos[tuple(u + v for u, v in zip(mono.x, e))]
                    vec[k] = vec.get(k, 0) + c
                ech.add({k: v for k, v in vec.items() if v})
        rows = ech.reduced_rows()
        std = tuple(e for k, e in enumerate(mons) if k not in rows)
        nf = {}
        for k, e in enumerate(mons):
            if k in rows:
                nf[e] = {mons[c]: -v for c, v in rows[k].items() if c != k}
            else:
                nf[e] = {e: mpq(1)}
        piece = (std, nf)
        self._cache[key] = piece
        return piece

    # -- odd quotient -------------------------------------------------------
    def _odd_piece(self, cols: tuple[int, ...], tmask: int):
        key = ("odd", cols, tmask)
        if key in self._cache:
            return self._cache[key]
        shape = self.shape
        masks = odd_masks(shape.n, shape.m, cols, tmask)
        if not self._odd_rels:
            piece = (masks, None)
            self._cache[key] = piece
            return piece
        pos = {mk: k for k, mk in enumerate(masks)}
        zero_x = (0,) * shape.n
        ech = Echelon()
        target = Multidegree(0, cols, tmask)
        for r in self._odd_rels:
            rmd = multidegree_of(next(iter(r.terms)), shape)
            rest = target - rmd
            if rest is None:
                continue
            for mk in odd_masks(shape.n, shape.m, rest.cols, rest.tmask):
                prod_ = mul(r, Element._raw(shape, {Monomial(zero_x, mk): mpq(1)}))
                ech.add({pos[mono.odd]: c for mono, c in prod_.terms.items()})
        rows = ech.reduced_rows()
        std = tuple(mk for k, mk in enumerate(masks) if k not in rows)
        nf = {}
        for k, mk in enumerate(masks):
            if k in rows:
                nf[mk] = {masks[c]: -v for c, v in rows[k].items() if c != k}
            else:
                nf[mk] = {mk: mpq(1)}
        piece = (std, nf)
        self._cache[key] = piece
        return piece

    # -- blocks -------------------------------------------------------------
    def multidegree(self, mono: Monomial) -> Multidegree:
        return multidegree_of(mono, self.shape)

    def block_monomials(self, md: Multidegree) -> tuple[Monomial, ...]:
        """Standard monomials (quotient basis) of one multidegree block."""
        key = ("block", md)
        if key in self._cache:
            return self._cache[key]
        if not self.separable:
            d = md.degree
            out = tuple(mono for mono in self._generic_piece(d)[0] if self.multidegree(mono) == md)
        else:
            xs = self._x_piece(md.xdeg)[0]
            odds = self._odd_piece(md.cols, md.tmask)[0]
            if len(xs) * len(odds) > degree_budget():
                raise BudgetExceeded(f"block {md} has {len(xs) * len(odds)} monomials")
            out = tuple(Monomial(x, o) for x in xs for o in odds)
        self._cache[key] = out
        return out

    def orbit_key(self, mono: Monomial):
        """A label constant on W-orbits and preserved by normal forms.

        Normal forms of relation-free parts keep row data, so the key can be
        as fine as the relations allow.
        """
        md = self.multidegree(mono)
        if self._odd_rels or not self.separable:
            return md
        rows = mono.y_rows(self.shape)
        if self._x_rels:
            return (md, tuple(sorted(rows)))
        return (md, tuple(sorted(zip(mono.x, rows))))

    # -- normal forms -------------------------------------------------------
    def _x_nf(self, x: tuple[int, ...]) -> dict:
        nf = self._x_piece(sum(x))[1]
        return {x: mpq(1)} if nf is None else nf[x]

    def _odd_nf(self, odd: int) -> dict:
        if not self._odd_rels:
            return {odd: mpq(1)}
        md = self.multidegree(Monomial((0,) * self.shape.n, odd))
        return self._odd_piece(md.cols, md.tmask)[1][odd]

    def normal_form(self, a: Element) -> Element:
        """Canonical representative: a combination of standard monomials."""
        if a.shape != self.shape:
            raise ValueError(f"element of shape {a.shape} in model of shape {self.shape}")
        if not self.relations:
            return a
        if not self.separable:
            return self._generic_normal_form(a)
        out: dict = {}
        for mono, c in a.terms.items():
            xn = self._x_nf(mono.x)
            on = self._odd_nf(mono.odd)
            for x, cx in xn.items():
                for o, co in on.items():
                    k = Monomial(x, o)
                    v = out.get(k, 0) + c * cx * co
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return Element._raw(self.shape, out)

    project = normal_form

    # -- generic path -------------------------------------------------------
    def ambient_monomials(self, d: int) -> list[Monomial]:
        shape = self.shape
        if ambient_dimension(shape, d) > degree_budget():
            raise BudgetExceeded(f"degree {d} piece has {ambient_dimension(shape, d)} ambient monomials")
        out = []
        for md in multidegrees(shape, d):
            for x in x_monomials(shape.n, md.xdeg):
                for o in odd_masks(shape.n, shape.m, md.cols, md.tmask):
                    out.append(Monomial(x, o))
        return out

    def _generic_piece(self, d: int):
        """Quotient of the whole degree-d piece by span{r * mu}."""
        key = ("generic", d)
        if key in self._cache:
            return self._cache[key]
        shape = self.shape
        mons = self.ambient_monomials(d)
        pos = {mono: k for k, mono in enumerate(mons)}
        ech = Echelon()
        for r in self.relations:
            rd = r.degree
            if rd > d:
                continue
            for mu in self.ambient_monomials(d - rd):
                p = mul(r, Element._raw(shape, {mu: mpq(1)}))
                ech.add({pos[k]: c for k, c in p.terms.items()})
        rows = ech.reduced_rows()
        std = tuple(mono for k, mono in enumerate(mons) if k not in rows)
        nf = {}
        for k, mono in enumerate(mons):
            if k in rows:
                nf[mono] = {mons[c]: -v for c, v in rows[k].items() if c != k}
            else:
                nf[mono] = {mono: mpq(1)}
        piece = (std, nf)
        self._cache[key] = piece
        return piece

    def _generic_normal_form(self, a: Element) -> Element:
        out: dict = {}
        for mono, c in a.terms.items():
            for k, v in self._generic_piece(mono.degree())[1][mono].items():
                nv = out.get(k, 0) + c * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return Element._raw(self.shape, out)

    def generic_ideal_piece(self, d: int) -> list[Element]:
        """Spanning set {r * mu} of the ideal in degree d (for checking)."""
        shape = self.shape
        out = []
        for r in self.relations:
            if r.degree > d:
                continue
            for mu in self.ambient_monomials(d - r.degree):
                p = mul(r, Element._raw(shape, {mu: mpq(1)}))
                if p:
                    out.append(p)
        return out


def free_model(n: int, m: int, with_t: bool = False) -> RingModel:
    return RingModel(AlgebraShape(n, m, with_t), (), "free")


def su_quotient(n: int, m: int) -> RingModel:
    shape = AlgebraShape(n, m)
    return RingModel(shape, tuple(su_relations(shape)), "su")


def coinvariant_model(family: Family, m: int, with_t: bool = False) -> RingModel:
    """H^*(G/T x T^m): Q[x]/(basic invariants) (x) exterior part."""
    shape = AlgebraShape(family.n, m, with_t)
    rels = []
    if family.tag == "SU":
        rels.extend(su_relations(shape))
    rels.extend(basic_invariants(family, shape))
    return RingModel(shape, tuple(rels), "coinvariant", family)


@dataclass(frozen=True, eq=False)
class DegreeBasis:
    """Standard-monomial basis of one graded piece of a model."""

    model: RingModel
    degree: int
    monomials: tuple[Monomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "index", {mono: k for k, mono in enumerate(self.monomials)})

    @property
    def dimension(self) -> int:
        return len(self.monomials)

    def project(self, a: Element) -> Element:
        if not a.is_homogeneous(self.degree):
            raise ValueError(f"element is not homogeneous of degree {self.degree}")
        return self.model.normal_form(a)

    def coordinates(self, a: Element) -> list:
        vec = [mpq(0)] * self.dimension
        for mono, c in self.project(a).terms.items():
            vec[self.index[mono]] = c
        return vec

    def element(self, coords: Sequence) -> Element:
        if len(coords) != self.dimension:
            raise ValueError("coordinate vector has the wrong length")
        return Element(self.model.shape, {mono: c for mono, c in zip(self.monomials, coords)})

    def to_json(self) -> dict:
        shape = self.model.shape
        return {"degree": self.degree, "dimension": self.dimension,
                "monomials": [mono.render(shape) for mono in self.monomials]}


def degree_basis(model: RingModel, d: int) -> DegreeBasis:
    if d < 0:
        raise ValueError("degree must be non-negative")
    key = ("basis", d)
    if key in model._cache:
        return model._cache[key]
    amb = ambient_dimension(model.shape, d)
    if amb > degree_budget():
        raise BudgetExceeded(f"degree {d} piece has {amb} ambient monomials (budget {degree_budget()})")
    mons = []
    for md in multidegrees(model.shape, d):
        mons.extend(model.block_monomials(md))
    basis = DegreeBasis(model, d, tuple(mons))
    model._cache[key] = basis
    return basis

"""W-invariants of a ring model, decomposables and generated subalgebras.

Invariants of a block are the joint kernel of (g - 1) over the Coxeter
generators, computed orbit block by orbit block (see ``RingModel.orbit_key``).
Everything is organised by multidegree; products add multidegrees, so the
decomposables of a block only involve smaller blocks.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product
from typing import Iterable

from gmpy2 import mpq

from .algebra import Element, mul
from .linalg import Echelon
from .rings import Multidegree, RingModel, degree_basis, multidegrees
from .weyl import Family, act_monomial, coxeter_generators, weyl_elements

__all__ = [
    "invariant_block",
    "invariant_basis",
    "is_invariant_in",
    "reynolds_span_dimension",
    "sub_multidegrees",
    "decomposable_echelon",
    "indecomposable_block",
    "decomposables_span",
    "indecomposable_dimension",
    "Subalgebra",
]


def _check(model: RingModel, family: Family):
    if model.shape.n != family.n:
        raise ValueError(f"{family} has rank {family.n} but the model has rank {model.shape.n}")
    if model.family is not None and model.family.weyl_type != family.weyl_type:
        raise ValueError(f"model built for {model.family} cannot carry the action of {family}")


def invariant_block(model: RingModel, family: Family, md: Multidegree) -> list[Element]:
    """Basis (normal forms) of the W-fixed part of one multidegree block."""
    _check(model, family)
    key = ("inv", family.weyl_type, md)
    if key in model._cache:
        return model._cache[key]
    shape = model.shape
    mons = model.block_monomials(md)
    gens = coxeter_generators(family)
    groups: dict = defaultdict(list)
    for mono in mons:
        groups[model.orbit_key(mono)].append(mono)
    out = []
    for group in groups.values():
        members = set(group)
        pos = {mono: k for k, mono in enumerate(group)}
        ech = Echelon()
        for g in gens:
            # row r of (g - 1): coefficient of basis monomial r in g(mu) - mu
            rows: dict = defaultdict(dict)
            for mono in group:
                s, img = act_monomial(g, mono, shape)
                col = pos[mono]
                image = model.normal_form(Element._raw(shape, {img: mpq(s)}))
                for tgt, c in image.terms.items():
                    if tgt not in members:
                        raise AssertionError(f"orbit key not W-stable: {mono} -> {tgt}")
                    rows[tgt][col] = rows[tgt].get(col, 0) + c
                rows[mono][col] = rows[mono].get(col, 0) - 1
            for row in rows.values():
                row = {k: v for k, v in row.items() if v}
                if row:
                    ech.add(row)
        for vec in ech.nullspace(range(len(group))):
            out.append(Element._raw(shape, {group[k]: c for k, c in vec.items()}))
    model._cache[key] = out
    return out


def invariant_basis(model: RingModel, family: Family, d: int) -> list[Element]:
    """Basis of the W-fixed subspace of the degree-d piece of ``model``."""
    degree_basis(model, d)  # budget check for the whole piece
    out = []
    for md in multidegrees(model.shape, d):
        out.extend(invariant_block(model, family, md))
    return out


def is_invariant_in(model: RingModel, family: Family, a: Element) -> bool:
    base = model.normal_form(a)
    shape = model.shape
    for g in coxeter_generators(family):
        terms: dict = {}
        for mono, c in a.terms.items():
            s, img = act_monomial(g, mono, shape)
            terms[img] = terms.get(img, 0) + (c if s > 0 else -c)
        if model.normal_form(Element(shape, terms)) != base:
            return False
    return True


def reynolds_span_dimension(model: RingModel, family: Family, d: int) -> int:
    """dim span{pi(mu) : mu standard monomial of degree d}: the full-orbit oracle."""
    basis = degree_basis(model, d)
    ech = Echelon()
    elements = weyl_elements(family)
    shape = model.shape
    for mono in basis.monomials:
        total: dict = {}
        for w in elements:
            s, img = act_monomial(w, mono, shape)
            total[img] = total.get(img, 0) + s
        image = model.normal_form(Element(shape, total))
        ech.add(dict(image.terms))
    return ech.rank


def sub_multidegrees(md: Multidegree) -> list[Multidegree]:
    """Nonzero multidegrees strictly below ``md`` (componentwise)."""
    out = []
    cols_ranges = [range(c + 1) for c in md.cols]
    tbits = [1 << j for j in range(md.tmask.bit_length()) if md.tmask >> j & 1]
    tsubs = [0]
    for b in tbits:
        tsubs += [t | b for t in tsubs]
    for a in range(md.xdeg + 1):
        for cols in product(*cols_ranges):
            for T in tsubs:
                sub = Multidegree(a, tuple(cols), T)
                if sub.is_zero() or sub == md:
                    continue
                out.append(sub)
    return out


def _product_nf(model: RingModel, u: Element, v: Element) -> dict:
    return model.normal_form(mul(u, v)).terms


def decomposable_echelon(model: RingModel, family: Family, md: Multidegree) -> Echelon:
    """Echelon of products u*v of positive-degree invariants landing in ``md``.

    Uses Dec = sum_g g * Inv over chosen indecomposable representatives g,
    which spans the same space as all products of invariants.
    """
    key = ("dec", family.weyl_type, md)
    if key in model._cache:
        return model._cache[key]
    ech = Echelon()
    for sub in sub_multidegrees(md):
        reps = indecomposable_block(model, family, sub)
        if not reps:
            continue
        rest = md - sub
        others = invariant_block(model, family, rest)
        for g in reps:
            for v in others:
                p = _product_nf(model, g, v)
                if p:
                    ech.add(dict(p))
    model._cache[key] = ech
    return ech


def indecomposable_block(model: RingModel, family: Family, md: Multidegree) -> list[Element]:
    """Invariants of ``md`` completing the decomposables to all invariants."""
    key = ("indec", family.weyl_type, md)
    if key in model._cache:
        return model._cache[key]
    inv = invariant_block(model, family, md)
    out = []
    if inv:
        dec = decomposable_echelon(model, family, md)
        probe = Echelon()
        for v in dec.basis():
            probe.add(v)
        for u in inv:
            if probe.add(dict(u.terms)):
                out.append(u)
    model._cache[key] = out
    return out


def decomposables_span(model: RingModel, family: Family, d: int) -> list[list]:
    """Coordinate vectors (in ``degree_basis(model, d)``) spanning the decomposables."""
    basis = degree_basis(model, d)
    out = []
    for md in multidegrees(model.shape, d):
        for row in decomposable_echelon(model, family, md).basis():
            vec = [mpq(0)] * basis.dimension
            for mono, c in row.items():
                vec[basis.index[mono]] = c
            out.append(vec)
    return out


def indecomposable_dimension(model: RingModel, family: Family, d: int) -> int:
    return sum(len(indecomposable_block(model, family, md)) for md in multidegrees(model.shape, d))


class Subalgebra:
    """The subalgebra generated by multihomogeneous elements of a model."""

    def __init__(self, model: RingModel, generators: Iterable[Element]):
        self.model = model
        self.generators = []
        for g in generators:
            g = model.normal_form(g)
            if not g:
                continue
            mds = {model.multidegree(mono) for mono in g.terms}
            if len(mds) != 1:
                raise ValueError("subalgebra generators must be multihomogeneous")
            self.generators.append((mds.pop(), g))
        self._spans: dict = {}

    def span(self, md: Multidegree) -> Echelon:
        """Echelon of the subalgebra's piece in ``md``."""
        if md in self._spans:
            return self._spans[md]
        ech = Echelon()
        if md.is_zero():
            ech.add(dict(Element.one(self.model.shape).terms))
        else:
            for gmd, g in self.generators:
                rest = md - gmd
                if rest is None:
                    continue
                for v in self.span(rest).basis():
                    p = _product_nf(self.model, g, Element._raw(self.model.shape, v))
                    if p:
                        ech.add(dict(p))
        self._spans[md] = ech
        return ech

    def dimension(self, d: int) -> int:
        return sum(self.span(md).rank for md in multidegrees(self.model.shape, d))

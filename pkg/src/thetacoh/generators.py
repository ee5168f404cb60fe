"""The generator families z(d, I), w(d, I) and z_{i,I}, and generation checks.

    z(d, I) = sum_k x_k^{d-1} y_k^I                     |z(d,I)| = 2d + |I| - 2
    w(d, I) = sum_k x_k^{2d + eps(|I|) - 2} y_k^I        |w(d,I)| = 4d + |I| + 2 eps(|I|) - 4

with eps(k) = k mod 2 and y_k^I = y_k^{i_1} ... y_k^{i_r} for I = {i_1 < ... < i_r}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from gmpy2 import mpq

from .algebra import AlgebraShape, Element, Monomial
from .invariants import (
    Subalgebra,
    decomposable_echelon,
    invariant_block,
)
from .linalg import Echelon
from .rings import RingModel, bg_generators, coinvariant_model, multidegrees
from .weyl import Family

__all__ = [
    "GeneratorLabel",
    "eps",
    "z_gen",
    "w_gen",
    "build_S",
    "build_Smap",
    "map_labels",
    "realize",
    "low_dimension_bound",
    "free_algebra_dims",
    "verify_generation",
    "UnsupportedFamily",
]


class UnsupportedFamily(ValueError):
    """The requested construction does not exist for this family."""


def eps(k: int) -> int:
    return k & 1


@dataclass(frozen=True, order=True)
class GeneratorLabel:
    """``hom_z(d, I)``, ``hom_w(d, I)`` or ``map_z(i, I)``.

    ``zdeg`` is |z_i| for map labels (it depends on the family) and 0 otherwise.
    """

    kind: str
    index: int
    cols: tuple[int, ...]
    zdeg: int = 0

    def __post_init__(self):
        if self.kind not in ("hom_z", "hom_w", "map_z"):
            raise ValueError(f"unknown label kind {self.kind!r}")
        if self.index < 1 or not self.cols:
            raise ValueError("labels need a positive index and a nonempty I")
        if list(self.cols) != sorted(set(self.cols)):
            raise ValueError("I must be a strictly increasing tuple")
        if self.kind == "map_z" and self.zdeg <= len(self.cols):
            raise ValueError("map_z(i, I) requires |z_i| > |I|")

    @property
    def degree(self) -> int:
        k = len(self.cols)
        if self.kind == "hom_z":
            return 2 * self.index + k - 2
        if self.kind == "hom_w":
            return 4 * self.index + k + 2 * eps(k) - 4
        return self.zdeg - k

    def __str__(self) -> str:
        I = "{" + ",".join(map(str, self.cols)) + "}"
        if self.kind == "hom_z":
            return f"z({self.index},{I})"
        if self.kind == "hom_w":
            return f"w({self.index},{I})"
        return f"z_{{{self.index},{I}}}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": self.index, "I": list(self.cols),
                "degree": self.degree, "name": str(self)}


def _power_y_sum(shape: AlgebraShape, xpow: int, cols) -> Element:
    n, m = shape.n, shape.m
    terms = {}
    for k in range(n):
        x = [0] * n
        x[k] = xpow
        mask = 0
        for j in cols:
            if not 1 <= j <= m:
                raise ValueError(f"column {j} outside [1, {m}]")
            mask |= 1 << (k * m + j - 1)
        terms[Monomial(tuple(x), mask)] = mpq(1)
    return Element(shape, terms)


def z_gen(d: int, cols, n: int, m: int, shape: AlgebraShape | None = None) -> Element:
    if d < 1 or not cols:
        raise ValueError("z(d, I) needs d >= 1 and I nonempty")
    return _power_y_sum(shape or AlgebraShape(n, m), d - 1, tuple(cols))


def w_gen(d: int, cols, n: int, m: int, shape: AlgebraShape | None = None) -> Element:
    if d < 1 or not cols:
        raise ValueError("w(d, I) needs d >= 1 and I nonempty")
    return _power_y_sum(shape or AlgebraShape(n, m), 2 * d + eps(len(cols)) - 2, tuple(cols))


def _subsets(m: int):
    for k in range(1, m + 1):
        yield from combinations(range(1, m + 1), k)


def _sort(labels: list[GeneratorLabel]) -> list[GeneratorLabel]:
    return sorted(labels, key=lambda lb: (lb.degree, lb.index, len(lb.cols), lb.cols))


def build_S(family: Family, m: int) -> list[GeneratorLabel]:
    """The minimal generating set S(m, G) as labels."""
    n = family.n
    out = []
    if family.tag in ("U", "SU"):
        for I in _subsets(m):
            for d in range(1, n + 2 - len(I)):
                if family.tag == "SU" and d == 1 and len(I) == 1:
                    continue
                out.append(GeneratorLabel("hom_z", d, I))
    elif family.tag in ("Sp", "SO_odd"):
        for I in _subsets(m):
            d = 1
            while 2 * d + len(I) + eps(len(I)) - 2 <= 2 * n:
                out.append(GeneratorLabel("hom_w", d, I))
                d += 1
    else:
        raise UnsupportedFamily(f"no generating set is known for {family}")
    return _sort(out)


def map_labels(family: Family, m: int) -> list[GeneratorLabel]:
    """Free generators z_{i,I} of H^*(map_*(B Z^m, BG)_0), every family.

    For SO(2n) index i < n refers to p_i and i = n to the Euler class.
    """
    out = []
    for i, zdeg, _ in bg_generators(family):
        for I in _subsets(m):
            if zdeg > len(I):
                out.append(GeneratorLabel("map_z", i, I, zdeg))
    return _sort(out)


def build_Smap(family: Family, m: int) -> list[GeneratorLabel]:
    if family.tag == "SO_even":
        raise UnsupportedFamily("build_Smap covers U, SU, Sp and SO(2n+1)")
    return map_labels(family, m)


def realize(label: GeneratorLabel, shape: AlgebraShape) -> Element:
    if label.kind == "hom_z":
        return z_gen(label.index, label.cols, shape.n, shape.m, shape)
    if label.kind == "hom_w":
        return w_gen(label.index, label.cols, shape.n, shape.m, shape)
    raise ValueError("map labels are realized through theta")


def low_dimension_bound(family: Family, m: int) -> int:
    """d(m, G): 2n - m for U, SU and 2n + 1 for Sp, SO(2n+1)."""
    if family.tag in ("U", "SU"):
        return 2 * family.n - m
    if family.tag in ("Sp", "SO_odd"):
        return 2 * family.n + 1
    raise UnsupportedFamily(f"d(m, G) is not defined for {family}")


def free_algebra_dims(degrees: list[int], top: int) -> list[int]:
    """Dimensions of the free graded-commutative algebra on generators of the given degrees."""
    series = [1] + [0] * top
    for g in degrees:
        if g < 1:
            raise ValueError("generator degrees must be positive")
        new = list(series)
        if g % 2:
            for d in range(top, g - 1, -1):
                new[d] += series[d - g]
        else:
            for d in range(g, top + 1):
                new[d] += new[d - g]
        series = new
    return series


def verify_generation(family: Family, m: int, max_degree: int, model: RingModel | None = None) -> dict:
    """Per-degree check that S(m, G) generates, freely up to d(m, G), and minimally."""
    labels = build_S(family, m)
    model = model or coinvariant_model(family, m)
    shape = model.shape
    gens = [(lb, model.normal_form(realize(lb, shape))) for lb in labels]
    sub = Subalgebra(model, [g for lb, g in gens if lb.degree <= max_degree])
    bound = low_dimension_bound(family, m)
    free = free_algebra_dims([lb.degree for lb in labels], max_degree)
    rows = []
    for d in range(1, max_degree + 1):
        inv_dim = sub_dim = 0
        minimal = True
        for md in multidegrees(shape, d):
            inv = invariant_block(model, family, md)
            inv_dim += len(inv)
            sub_dim += sub.span(md).rank
            here = [g for lb, g in gens if lb.degree == d and model.multidegree(next(iter(g.terms))) == md]
            if here:
                probe = Echelon()
                for v in decomposable_echelon(model, family, md).basis():
                    probe.add(v)
                for g in here:
                    if not probe.add(dict(g.terms)):
                        minimal = False
        n_labels = sum(1 for lb in labels if lb.degree == d)
        in_range = d <= bound
        rows.append({
            "degree": d,
            "invariant_dim": inv_dim,
            "subalgebra_dim": sub_dim,
            "free_dim": free[d],
            "labels": n_labels,
            "generation": sub_dim == inv_dim,
            "freeness": (free[d] == inv_dim) if in_range else None,
            "minimal": minimal,
        })
    return {
        "family": str(family),
        "n": family.n,
        "m": m,
        "d_bound": bound,
        "labels": [lb.to_json() for lb in labels],
        "degrees": rows,
    }

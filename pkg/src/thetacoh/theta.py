"""Images of the free generators z_{i,I} under Theta^*.

The normative computation substitutes

    x_k -> x_k + y_k^1 t_1 + ... + y_k^m t_m

into a class of H^*(BG) (restricted to the torus), expands, and reads off the
coefficient of t_I (t's written on the right).  Closed forms are checked
against this.  Reading off in the canonical order y...y t...t costs the sign

    s(r) = (-1)^{r(r-1)/2},   r = |I|,

because every t_{j_a} must pass the y's of the later factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .algebra import AlgebraShape, Element, Monomial, extract_t_coefficient, mul, subsets
from .generators import (
    GeneratorLabel,
    UnsupportedFamily,
    eps,
    map_labels,
    w_gen,
    z_gen,
)
from .invariants import Subalgebra, decomposable_echelon, invariant_block
from .linalg import Echelon
from .rings import RingModel, bg_generators, coinvariant_model, multidegrees
from .weyl import Family, reynolds

__all__ = [
    "extraction_sign",
    "theta_expand",
    "theta_closed",
    "ThetaImage",
    "theta_image",
    "theta_images",
    "check_surjectivity",
    "parity_split",
    "witness_monomial",
    "so_even_witness",
]


def extraction_sign(r: int) -> int:
    return -1 if (r * (r - 1) // 2) % 2 else 1


@lru_cache(maxsize=None)
def _shifted_power(n: int, m: int, k: int, e: int) -> Element:
    """(x_k + sum_j y_k^j t_j)^e in the algebra with t (k is 1-based)."""
    shape = AlgebraShape(n, m, True)
    if e == 0:
        return Element.one(shape)
    if e == 1:
        base = Element.x(shape, k)
        for j in range(1, m + 1):
            base = base + mul(Element.y(shape, k, j), Element.t(shape, j))
        return base
    return mul(_shifted_power(n, m, k, e - 1), _shifted_power(n, m, k, 1))


def _substitute(bg_class: Element, m: int) -> Element:
    n = bg_class.shape.n
    shape = AlgebraShape(n, m, True)
    total: dict = {}
    for mono, c in bg_class.terms.items():
        if mono.odd:
            raise ValueError("theta_expand takes a class in the x variables only")
        prod = Element.one(shape)
        for k, e in enumerate(mono.x, 1):
            if e:
                prod = mul(prod, _shifted_power(n, m, k, e))
        for key, v in prod.terms.items():
            s = total.get(key, 0) + c * v
            if s:
                total[key] = s
            else:
                total.pop(key, None)
    return Element._raw(shape, total)


def theta_expand(bg_class: Element, m: int) -> dict[tuple[int, ...], Element]:
    """All t_I-coefficients of the substituted class, keyed by I (including ())."""
    if m < 1:
        raise ValueError("theta_expand needs m >= 1")
    if not bg_class.is_homogeneous():
        raise ValueError("theta_expand takes a homogeneous class")
    full = _substitute(bg_class, m)
    plain = AlgebraShape(bg_class.shape.n, m)
    out = {}
    for I in [()] + subsets(m):
        part = extract_t_coefficient(full, I)
        out[I] = Element._raw(plain, dict(part.terms))
    return out


def _falling(a: int, b: int) -> int:
    """a!/(a-b)!, zero when b > a."""
    if b > a:
        return 0
    return factorial(a) // factorial(a - b)


def _label_m(label: GeneratorLabel, m: int | None) -> int:
    m = max(label.cols) if m is None else m
    if max(label.cols) > m:
        raise ValueError(f"label {label} does not fit m = {m}")
    return m


def theta_closed(label: GeneratorLabel, family: Family, m: int | None = None,
                 model: RingModel | None = None) -> Element:
    """Closed-form image of map_z(i, I), sign-calibrated, in the coinvariant model."""
    if label.kind != "map_z":
        raise ValueError("theta_closed takes map_z labels")
    m = _label_m(label, m)
    n, i, I, r = family.n, label.index, label.cols, len(label.cols)
    shape = AlgebraShape(n, m)
    if family.tag in ("U", "SU"):
        coeff = _falling(i, r)
        raw = z_gen(i - r + 1, I, n, m, shape) if coeff else Element.zero(shape)
    elif family.tag in ("Sp", "SO_odd"):
        coeff = _falling(2 * i, r)
        raw = w_gen(i - (r + eps(r)) // 2 + 1, I, n, m, shape) if coeff else Element.zero(shape)
    else:
        raise UnsupportedFamily(f"no closed form for {family}; use theta_expand")
    raw = raw.scale(extraction_sign(r) * coeff)
    model = model or coinvariant_model(family, m)
    return model.normal_form(raw)


def _bg_class(family: Family, i: int, m: int) -> Element:
    for idx, _, cls in bg_generators(family, AlgebraShape(family.n, m)):
        if idx == i:
            return cls
    raise ValueError(f"{family} has no generator z_{i}")


@dataclass(frozen=True)
class ThetaImage:
    label: GeneratorLabel
    image: Element
    provenance: str  # "closed_form" or "expansion"

    def to_json(self) -> dict:
        shape = self.image.shape
        return {
            "label": self.label.to_json(),
            "provenance": self.provenance,
            "image": str(self.image),
            "monomials": [mono.render(shape) for mono, _ in self.image.sorted_terms()],
            "coefficients": [str(c) for _, c in self.image.sorted_terms()],
        }


def theta_image(label: GeneratorLabel, family: Family, m: int, provenance: str = "expansion",
                model: RingModel | None = None) -> ThetaImage:
    model = model or coinvariant_model(family, m)
    if provenance == "closed_form":
        img = theta_closed(label, family, m, model)
    elif provenance == "expansion":
        parts = theta_expand(_bg_class(family, label.index, m), m)
        img = model.normal_form(parts[label.cols])
    else:
        raise ValueError(f"unknown provenance {provenance!r}")
    return ThetaImage(label, img, provenance)


def theta_images(family: Family, m: int, model: RingModel | None = None,
                 max_degree: int | None = None) -> list[ThetaImage]:
    """Expansion images of every map label (every family), in label order."""
    model = model or coinvariant_model(family, m)
    out = []
    cache = {}
    for lb in map_labels(family, m):
        if max_degree is not None and lb.degree > max_degree:
            continue
        if lb.index not in cache:
            cache[lb.index] = theta_expand(_bg_class(family, lb.index, m), m)
        out.append(ThetaImage(lb, model.normal_form(cache[lb.index][lb.cols]), "expansion"))
    return out


def _contained(small: Echelon, big: Echelon) -> bool:
    return all(big.contains(v) for v in small.basis())


def check_surjectivity(family: Family, m: int, max_degree: int,
                       model: RingModel | None = None) -> dict:
    """Does the subalgebra generated by the theta images fill the invariants, degree by degree?"""
    model = model or coinvariant_model(family, m)
    images = theta_images(family, m, model, max_degree)
    sub = Subalgebra(model, [im.image for im in images])
    rows = []
    for d in range(1, max_degree + 1):
        inv_dim = img_dim = 0
        ok = True
        for md in multidegrees(model.shape, d):
            inv = invariant_block(model, family, md)
            span = sub.span(md)
            inv_dim += len(inv)
            img_dim += span.rank
            if span.rank != len(inv):
                ok = False
            elif inv:
                ech = Echelon()
                for u in inv:
                    ech.add(dict(u.terms))
                if not _contained(span, ech):
                    raise AssertionError(f"theta image leaves the invariants in block {md}")
        rows.append({"degree": d, "invariant_dim": inv_dim, "image_dim": img_dim, "surjective": ok})
    return {
        "family": str(family),
        "n": family.n,
        "m": m,
        "max_degree": max_degree,
        "images": len(images),
        "degrees": rows,
    }


def parity_split(a: Element, family: Family | None = None) -> tuple[Element, Element, Element]:
    """(even part, odd part, residual) by the parity pattern of d(monomial).

    A monomial is even (odd) when every entry of its d-vector is even (odd);
    everything else goes to the residual.
    """
    shape = a.shape
    parts = ({}, {}, {})
    for mono, c in a.terms.items():
        par = {v & 1 for v in mono.d_vector(shape)}
        slot = 2 if len(par) > 1 else (0 if par == {0} else 1)
        parts[slot][mono] = c
    return tuple(Element._raw(shape, p) for p in parts)


def witness_monomial(n: int, m: int) -> Element:
    """x_1...x_{n-4} y_{n-3}^1 y_{n-2}^2 y_{n-1}^3 y_n^1 y_n^2 y_n^3."""
    if n < 4 or m < 3:
        raise ValueError("the witness needs n >= 4 and m >= 3")
    shape = AlgebraShape(n, m)
    x = tuple(1 if k < n - 4 else 0 for k in range(n))
    odd = 0
    for i, j in ((n - 3, 1), (n - 2, 2), (n - 1, 3), (n, 1), (n, 2), (n, 3)):
        odd |= 1 << shape.y_bit(i, j)
    return Element._raw(shape, {Monomial(x, odd): mpq(1)})


def _separating_functional(span: Echelon, target: dict, columns) -> dict | None:
    """A linear form vanishing on ``span`` but not on ``target`` (None if target is in the span)."""
    if span.contains(target):
        return None
    for phi in span.nullspace(columns):
        if sum((c * target.get(k, 0) for k, c in phi.items()), mpq(0)):
            return phi
    raise AssertionError("no separating functional although target is outside the span")


def _render_form(phi: dict, shape: AlgebraShape) -> dict:
    return {mono.render(shape): str(c) for mono, c in sorted(phi.items())}


def so_even_witness(n: int, m: int, model: RingModel | None = None) -> dict:
    """Build a = reynolds(a_bar) for SO(2n) and test it against decomposables and the image."""
    family = Family("SO_even", n)
    model = model or coinvariant_model(family, m)
    shape = model.shape
    abar = witness_monomial(n, m)
    mono = next(iter(abar.terms))
    a_raw = reynolds(abar, family)
    coeff = a_raw.coefficient(mono)
    a = model.normal_form(a_raw)
    md = model.multidegree(mono)
    columns = model.block_monomials(md)
    target = dict(a.terms)

    dec = decomposable_echelon(model, family, md)
    dec_form = _separating_functional(dec, target, columns) if a else None

    images = theta_images(family, m, model, md.degree)
    sub = Subalgebra(model, [im.image for im in images])
    both = Echelon()
    for v in dec.basis():
        both.add(v)
    for v in sub.span(md).basis():
        both.add(v)
    img_form = _separating_functional(both, target, columns) if a else None

    odd_part = parity_split(abar)[1]
    return {
        "n": n,
        "m": m,
        "degree": md.degree,
        "witness": str(abar),
        "coefficient": str(coeff),
        "expected_coefficient": str(2 ** (n - 1) * factorial(n - 4)),
        "witness_is_odd": odd_part == abar,
        "block_dimension": len(columns),
        "nonzero": bool(a),
        "indecomposable": bool(a) and dec_form is not None,
        "in_image": not a or img_form is None,
        "decomposables_rank": dec.rank,
        "image_plus_decomposables_rank": both.rank,
        "certificate": {
            "kind": "separating linear form on the block of the witness",
            "against_decomposables": None if dec_form is None else _render_form(dec_form, shape),
            "against_image": None if img_form is None else _render_form(img_form, shape),
        },
    }

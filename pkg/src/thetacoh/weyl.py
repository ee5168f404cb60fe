"""Weyl groups of the classical families acting on the algebra.

A Weyl element is a signed permutation ``(sigma, signs)`` acting by

    x_i -> s_i x_{sigma(i)},   y_i^j -> s_i y_{sigma(i)}^j,   t_j -> t_j.

Indices are 0-based internally (``sigma`` is a tuple of images).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import NamedTuple

from gmpy2 import mpq

from .algebra import AlgebraShape, Element, Monomial, bits

__all__ = [
    "BudgetExceeded",
    "Family",
    "WeylElement",
    "act",
    "act_monomial",
    "weyl_elements",
    "coxeter_generators",
    "reynolds",
    "is_invariant",
    "molien_dims",
    "group_budget",
]

DEFAULT_GROUP_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured resource budget."""


def group_budget() -> int:
    return int(os.environ.get("THETACOH_GROUP_BUDGET", DEFAULT_GROUP_BUDGET))


_TAGS = ("U", "SU", "Sp", "SO_odd", "SO_even")
_CLI_NAMES = {"u": "U", "su": "SU", "sp": "Sp", "so-odd": "SO_odd", "so-even": "SO_even"}


@dataclass(frozen=True)
class Family:
    """A classical group of rank ``n``.

    ``SO_odd`` with rank n is SO(2n+1); ``SO_even`` with rank n is SO(2n).
    """

    tag: str
    n: int

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown family {self.tag!r}; expected one of {_TAGS}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"rank must be a positive integer, got {self.n!r}")
        if self.tag == "SO_even" and self.n < 2:
            raise ValueError("SO(2n) needs n >= 2")

    @classmethod
    def parse(cls, name: str, n: int) -> Family:
        key = name.strip().lower().replace("_", "-")
        if key not in _CLI_NAMES:
            raise ValueError(f"unknown family {name!r}; expected one of {sorted(_CLI_NAMES)}")
        return cls(_CLI_NAMES[key], n)

    @property
    def cli_name(self) -> str:
        return {v: k for k, v in _CLI_NAMES.items()}[self.tag]

    @property
    def weyl_type(self) -> str:
        return {"U": "A", "SU": "A", "Sp": "B", "SO_odd": "B", "SO_even": "D"}[self.tag]

    @property
    def order(self) -> int:
        n = self.n
        return {"A": math.factorial(n),
                "B": math.factorial(n) * 2**n,
                "D": math.factorial(n) * 2 ** (n - 1)}[self.weyl_type]

    def contains(self, w: WeylElement) -> bool:
        if len(w.sigma) != self.n:
            return False
        if self.weyl_type == "A":
            return all(s == 1 for s in w.signs)
        if self.weyl_type == "D":
            return math.prod(w.signs) == 1
        return True

    def __str__(self) -> str:
        n = self.n
        return {"U": f"U({n})", "SU": f"SU({n})", "Sp": f"Sp({n})",
                "SO_odd": f"SO({2 * n + 1})", "SO_even": f"SO({2 * n})"}[self.tag]


class WeylElement(NamedTuple):
    sigma: tuple[int, ...]
    signs: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> WeylElement:
        return cls(tuple(range(n)), (1,) * n)

    def compose(self, other: WeylElement) -> WeylElement:
        """self o other (apply ``other`` first)."""
        sigma = tuple(self.sigma[other.sigma[i]] for i in range(len(self.sigma)))
        signs = tuple(other.signs[i] * self.signs[other.sigma[i]] for i in range(len(self.sigma)))
        return WeylElement(sigma, signs)

    def inverse(self) -> WeylElement:
        n = len(self.sigma)
        sigma = [0] * n
        signs = [1] * n
        for i, j in enumerate(self.sigma):
            sigma[j] = i
            signs[j] = self.signs[i]
        return WeylElement(tuple(sigma), tuple(signs))


@lru_cache(maxsize=1 << 20)
def _odd_image(w: WeylElement, mask: int, n: int, m: int) -> tuple[int, int]:
    """Image bitmask and sign (row signs times reordering sign) of an odd part."""
    ny = n * m
    seq = []
    sign = 1
    for b in bits(mask):
        if b < ny:
            i, j = divmod(b, m)
            seq.append(w.sigma[i] * m + j)
            sign *= w.signs[i]
        else:
            seq.append(b)
    inv = 0
    for a in range(len(seq)):
        sa = seq[a]
        for b in range(a + 1, len(seq)):
            if seq[b] < sa:
                inv += 1
    if inv & 1:
        sign = -sign
    new = 0
    for b in seq:
        new |= 1 << b
    return new, sign


def act_monomial(w: WeylElement, mono: Monomial, shape: AlgebraShape) -> tuple[int, Monomial]:
    n = shape.n
    odd, sign = _odd_image(w, mono.odd, n, shape.m)
    x = [0] * n
    for i, e in enumerate(mono.x):
        if e:
            x[w.sigma[i]] = e
            if e & 1 and w.signs[i] < 0:
                sign = -sign
    return sign, Monomial(tuple(x), odd)


def act(w: WeylElement, a: Element, family: Family | None = None) -> Element:
    """Apply ``w`` as an algebra automorphism."""
    if len(w.sigma) != a.shape.n:
        raise ValueError(f"Weyl element of rank {len(w.sigma)} acting on {a.shape}")
    if family is not None and not family.contains(w):
        raise ValueError(f"{w} is not an element of the Weyl group of {family}")
    shape = a.shape
    terms = {}
    for mono, c in a.terms.items():
        s, img = act_monomial(w, mono, shape)
        terms[img] = c if s > 0 else -c
    return Element._raw(shape, terms)


def weyl_elements(family: Family, budget: int | None = None) -> list[WeylElement]:
    """All elements once each: permutations (lex) outer, sign vectors inner."""
    budget = group_budget() if budget is None else budget
    if family.order > budget:
        raise BudgetExceeded(f"|W({family})| = {family.order} exceeds group budget {budget}")
    n = family.n
    kind = family.weyl_type
    if kind == "A":
        sign_vectors = [(1,) * n]
    else:
        sign_vectors = [tuple(-1 if b else 1 for b in bs) for bs in product((0, 1), repeat=n)]
        if kind == "D":
            sign_vectors = [s for s in sign_vectors if math.prod(s) == 1]
    return [WeylElement(p, s) for p in permutations(range(n)) for s in sign_vectors]


def coxeter_generators(family: Family) -> list[WeylElement]:
    """Adjacent transpositions, plus the B/C sign flip at n or the D element
    swapping n-1, n with both signs flipped."""
    n = family.n
    gens = []
    for i in range(n - 1):
        sigma = list(range(n))
        sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
        gens.append(WeylElement(tuple(sigma), (1,) * n))
    if family.weyl_type == "B":
        gens.append(WeylElement(tuple(range(n)), (1,) * (n - 1) + (-1,)))
    elif family.weyl_type == "D":
        sigma = list(range(n))
        sigma[n - 2], sigma[n - 1] = sigma[n - 1], sigma[n - 2]
        gens.append(WeylElement(tuple(sigma), (1,) * (n - 2) + (-1, -1)))
    return gens


def reynolds(a: Element, family: Family, budget: int | None = None) -> Element:
    """Unnormalized average: sum over all w in W of w(a)."""
    if a.shape.n != family.n:
        raise ValueError(f"{family} has rank {family.n}, element has rank {a.shape.n}")
    shape = a.shape
    out: dict = {}
    for w in weyl_elements(family, budget):
        for mono, c in a.terms.items():
            s, img = act_monomial(w, mono, shape)
            v = out.get(img, 0) + (c if s > 0 else -c)
            if v:
                out[img] = v
            else:
                out.pop(img, None)
    return Element._raw(shape, out)


def is_invariant(a: Element, family: Family, project=None) -> bool:
    """Fixed by every Coxeter generator (after ``project`` if given)."""
    base = project(a) if project else a
    for g in coxeter_generators(family):
        img = act(g, a)
        if project:
            img = project(img)
        if img != base:
            return False
    return True


def _cycles(w: WeylElement) -> list[tuple[int, int]]:
    """(length, product of signs) for each cycle of the signed permutation."""
    seen = [False] * len(w.sigma)
    out = []
    for start in range(len(w.sigma)):
        if seen[start]:
            continue
        length, sgn, i = 0, 1, start
        while not seen[i]:
            seen[i] = True
            sgn *= w.signs[i]
            i = w.sigma[i]
            length += 1
        out.append((length, sgn))
    return out


def _series_mul(a: list, b: list, top: int) -> list:
    out = [0] * (top + 1)
    for i, u in enumerate(a):
        if u:
            for j in range(0, top + 1 - i):
                if j < len(b) and b[j]:
                    out[i + j] += u * b[j]
    return out


def molien_dims(family: Family, m: int, max_degree: int, budget: int | None = None) -> list[int]:
    """Invariant dimensions of Q[x] (x) L(y^1..y^m) per degree via Molien's formula.

    Coefficient of q^d in (1/|W|) sum_w det(1 + q w)^m / det(1 - q^2 w); a
    signed cycle of length L and sign product s contributes 1 - s(-q)^L to
    det(1 + q w) and 1 - s q^{2L} to det(1 - q^2 w).
    """
    if m < 0 or max_degree < 0:
        raise ValueError("m and max_degree must be non-negative")
    top = max_degree
    total = [0] * (top + 1)
    for w in weyl_elements(family, budget):
        series = [1] + [0] * top
        for length, s in _cycles(w):
            num = [0] * (top + 1)
            num[0] = 1
            if length <= top:
                num[length] += -s * (-1) ** length
            for _ in range(m):
                series = _series_mul(series, num, top)
            inv = [0] * (top + 1)
            k = 0
            while 2 * length * k <= top:
                inv[2 * length * k] = s**k
                k += 1
            series = _series_mul(series, inv, top)
        total = [u + v for u, v in zip(total, series)]
    out = []
    for c in total:
        q = mpq(c, family.order)
        if q.denominator != 1:
            raise ArithmeticError(f"non-integral Molien coefficient {q}")
        out.append(int(q))
    return out

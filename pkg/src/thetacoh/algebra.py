"""Graded-commutative algebra Q[x_1..x_n] (x) L(y_i^j) (x) L(t_1..t_m).

Degrees: |x_i| = 2, |y_i^j| = 1, |t_j| = 1.  A monomial is stored as a pair
``(x, odd)``: ``x`` is the exponent tuple and ``odd`` a bitmask over the odd
generators in the canonical order

    y_1^1, y_1^2, ..., y_1^m, y_2^1, ..., y_n^m, t_1, ..., t_m

Every monomial is understood with its odd factors written in that order;
all Koszul signs are relative to it.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Mapping, NamedTuple

from gmpy2 import mpq

Q = mpq

__all__ = [
    "Q",
    "AlgebraShape",
    "Monomial",
    "Element",
    "mul",
    "power",
    "extract_t_coefficient",
    "parse_element",
    "format_rational",
    "parse_rational",
    "odd_sign",
    "bits",
]


@dataclass(frozen=True)
class AlgebraShape:
    """Rank ``n`` (rows of x and y), ``m`` columns of y, optional t block.

    ``m = 0`` is accepted so that pure polynomial (coinvariant) rings can be
    modelled; everything topological needs ``m >= 1``.
    """

    n: int
    m: int
    with_t: bool = False

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"rank n must be a positive integer, got {self.n!r}")
        if not isinstance(self.m, int) or self.m < 0:
            raise ValueError(f"m must be a non-negative integer, got {self.m!r}")
        if self.with_t and self.m < 1:
            raise ValueError("t generators need m >= 1")

    @property
    def num_y(self) -> int:
        return self.n * self.m

    @property
    def num_odd(self) -> int:
        return self.n * self.m + (self.m if self.with_t else 0)

    def y_bit(self, i: int, j: int) -> int:
        """Bit index of y_i^j (1-based i, j)."""
        if not (1 <= i <= self.n and 1 <= j <= self.m):
            raise ValueError(f"y_{i}^{j} out of range for {self}")
        return (i - 1) * self.m + (j - 1)

    def t_bit(self, j: int) -> int:
        if not self.with_t:
            raise ValueError("shape has no t generators")
        if not 1 <= j <= self.m:
            raise ValueError(f"t_{j} out of range for {self}")
        return self.n * self.m + (j - 1)

    @property
    def t_mask(self) -> int:
        if not self.with_t:
            return 0
        return ((1 << self.m) - 1) << (self.n * self.m)

    def without_t(self) -> AlgebraShape:
        return AlgebraShape(self.n, self.m, False)

    def with_t_block(self) -> AlgebraShape:
        return AlgebraShape(self.n, self.m, True)


class Monomial(NamedTuple):
    x: tuple[int, ...]
    odd: int

    def degree(self) -> int:
        return 2 * sum(self.x) + self.odd.bit_count()

    def y_rows(self, shape: AlgebraShape) -> tuple[int, ...]:
        """Row-wise y incidence: entry i is the column bitmask I_i of row i."""
        m = shape.m
        full = (1 << m) - 1
        return tuple((self.odd >> (i * m)) & full for i in range(shape.n))

    def t_part(self, shape: AlgebraShape) -> int:
        """Bitmask over t_1..t_m (bit j-1 for t_j)."""
        return self.odd >> shape.num_y

    def d_vector(self, shape: AlgebraShape) -> tuple[int, ...]:
        """(i_1 + |I_1|, ..., i_n + |I_n|) for x_1^{i_1}..y_1^{I_1}..."""
        return tuple(e + r.bit_count() for e, r in zip(self.x, self.y_rows(shape)))

    def render(self, shape: AlgebraShape) -> str:
        factors = []
        for i, e in enumerate(self.x, 1):
            if e == 1:
                factors.append(f"x{i}")
            elif e > 1:
                factors.append(f"x{i}^{e}")
        m = shape.m
        for b in bits(self.odd):
            if b < shape.num_y:
                i, j = divmod(b, m)
                factors.append(f"y{i + 1}_{j + 1}")
            else:
                factors.append(f"t{b - shape.num_y + 1}")
        return "*".join(factors) if factors else "1"


def bits(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@lru_cache(maxsize=1 << 20)
def odd_sign(left: int, right: int) -> int:
    """Sign of sorting (odd factors of ``left``)(odd factors of ``right``).

    Counts pairs p in left, q in right with p > q.  Overlapping masks are the
    caller's problem (the product is zero).
    """
    s = 0
    while right:
        low = right & -right
        s += (left >> low.bit_length()).bit_count()
        right ^= low
    return -1 if s & 1 else 1


def _mono_key(mono: Monomial):
    return (mono.degree(), tuple(-e for e in mono.x), tuple(bits(mono.odd)))


def format_rational(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str):
    text = text.strip()
    if "/" in text:
        p, q = text.split("/")
        return mpq(int(p), int(q))
    return mpq(int(text))


class Element:
    """Immutable sparse element: ``{Monomial: nonzero rational}``."""

    __slots__ = ("shape", "terms")

    def __init__(self, shape: AlgebraShape, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            n = shape.n
            for mono, c in terms.items():
                if len(mono.x) != n:
                    raise ValueError(f"monomial {mono} does not fit {shape}")
                if mono.odd >> shape.num_odd:
                    raise ValueError(f"monomial {mono} uses odd generators outside {shape}")
                c = mpq(c)
                if c:
                    clean[mono] = c
        self.shape = shape
        self.terms = clean

    @classmethod
    def _raw(cls, shape: AlgebraShape, terms: dict) -> Element:
        # terms already canonical and free of zeros
        obj = cls.__new__(cls)
        obj.shape = shape
        obj.terms = terms
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, shape: AlgebraShape) -> Element:
        return cls._raw(shape, {})

    @classmethod
    def one(cls, shape: AlgebraShape) -> Element:
        return cls._raw(shape, {Monomial((0,) * shape.n, 0): mpq(1)})

    @classmethod
    def scalar(cls, shape: AlgebraShape, c) -> Element:
        return cls(shape, {Monomial((0,) * shape.n, 0): c})

    @classmethod
    def x(cls, shape: AlgebraShape, i: int, e: int = 1) -> Element:
        if not 1 <= i <= shape.n:
            raise ValueError(f"x_{i} out of range for {shape}")
        xs = [0] * shape.n
        xs[i - 1] = e
        return cls._raw(shape, {Monomial(tuple(xs), 0): mpq(1)})

    @classmethod
    def y(cls, shape: AlgebraShape, i: int, j: int) -> Element:
        return cls._raw(shape, {Monomial((0,) * shape.n, 1 << shape.y_bit(i, j)): mpq(1)})

    @classmethod
    def t(cls, shape: AlgebraShape, j: int) -> Element:
        return cls._raw(shape, {Monomial((0,) * shape.n, 1 << shape.t_bit(j)): mpq(1)})

    @classmethod
    def t_product(cls, shape: AlgebraShape, cols: Iterable[int]) -> Element:
        """t_I = t_{i_1}...t_{i_k} with i_1 < ... < i_k."""
        mask = 0
        for j in cols:
            mask |= 1 << shape.t_bit(j)
        return cls._raw(shape, {Monomial((0,) * shape.n, mask): mpq(1)})

    @classmethod
    def monomial(cls, shape: AlgebraShape, mono: Monomial, c=1) -> Element:
        return cls(shape, {mono: c})

    # -- basic queries ------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, object]]:
        return iter(self.terms.items())

    def coefficient(self, mono: Monomial):
        return self.terms.get(mono, mpq(0))

    def degrees(self) -> set[int]:
        return {mono.degree() for mono in self.terms}

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    @property
    def degree(self) -> int:
        """Degree of a nonzero homogeneous element."""
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("degree is defined for nonzero homogeneous elements only")
        return next(iter(degs))

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.shape == other.shape and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: Element):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            v = terms.get(mono, 0) + c
            if v:
                terms[mono] = v
            else:
                terms.pop(mono, None)
        return Element._raw(self.shape, terms)

    def __neg__(self):
        return Element._raw(self.shape, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> Element:
        c = mpq(c)
        if not c:
            return Element.zero(self.shape)
        return Element._raw(self.shape, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Element):
            return mul(other, self)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int):
        return power(self, k)

    # -- rendering ----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda kv: _mono_key(kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for k, (mono, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            body = mono.render(self.shape)
            if a == 1:
                term = body
            elif body == "1":
                term = format_rational(a)
            else:
                term = f"{format_rational(a)}*{body}"
            if k == 0:
                out.append(f"-{term}" if neg else term)
            else:
                out.append(f" - {term}" if neg else f" + {term}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"Element({str(self)!r})"


def mul(a: Element, b: Element) -> Element:
    """Graded-commutative product with Koszul signs from the canonical order."""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    out: dict = {}
    add = operator.add
    for ma, ca in a.terms.items():
        xa, oa = ma
        for mb, cb in b.terms.items():
            ob = mb.odd
            if oa & ob:
                continue
            key = Monomial(tuple(map(add, xa, mb.x)), oa | ob)
            c = ca * cb
            if odd_sign(oa, ob) < 0:
                c = -c
            v = out.get(key)
            if v is None:
                out[key] = c
            else:
                v += c
                if v:
                    out[key] = v
                else:
                    del out[key]
    return Element._raw(a.shape, out)


def power(a: Element, k: int) -> Element:
    if k < 0:
        raise ValueError("power needs k >= 0")
    result = Element.one(a.shape)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def extract_t_coefficient(a: Element, cols: Iterable[int]) -> Element:
    """Coefficient c_I with a = sum_I c_I * t_I (t_I on the right).

    ``cols`` is a subset of {1..m}; the empty set returns the t-free part.
    Because t's are last in the canonical order no sign appears.
    """
    shape = a.shape
    if not shape.with_t:
        raise ValueError("extract_t_coefficient needs a shape with t generators")
    want = 0
    for j in cols:
        want |= 1 << shape.t_bit(j)
    tmask = shape.t_mask
    terms = {}
    for mono, c in a.terms.items():
        if mono.odd & tmask == want:
            terms[Monomial(mono.x, mono.odd & ~tmask)] = c
    return Element._raw(shape, terms)


def subsets(m: int, sizes: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Nonempty subsets of {1..m} as sorted tuples, by size then lex."""
    sizes = range(1, m + 1) if sizes is None else sizes
    return [c for k in sizes for c in combinations(range(1, m + 1), k)]


# -- parsing ----------------------------------------------------------------
_FACTOR = re.compile(r"^(?:x(\d+)(?:\^(\d+))?|y(\d+)_(\d+)|t(\d+)|1)$")
_COEFF = re.compile(r"^\d+(?:/\d+)?$")


def _parse_term(text: str, shape: AlgebraShape) -> Element:
    parts = [p.strip() for p in text.split("*")]
    c = mpq(1)
    if parts and _COEFF.match(parts[0]):
        c = parse_rational(parts.pop(0))
    if not parts:
        return Element.scalar(shape, c)
    acc = Element.scalar(shape, c)
    for p in parts:
        mt = _FACTOR.match(p)
        if not mt:
            raise ValueError(f"cannot parse factor {p!r}")
        if p == "1":
            continue
        xi, xe, yi, yj, tj = mt.groups()
        if xi is not None:
            f = Element.x(shape, int(xi), int(xe) if xe else 1)
        elif yi is not None:
            f = Element.y(shape, int(yi), int(yj))
        else:
            f = Element.t(shape, int(tj))
        acc = mul(acc, f)
    return acc


def parse_element(text: str, shape: AlgebraShape) -> Element:
    """Inverse of ``str(Element)``; factors may appear in any order."""
    s = text.replace("−", "-").strip()
    if not s:
        raise ValueError("empty expression")
    tokens = re.split(r"([+-])", s)
    total = Element.zero(shape)
    sign = 1
    pending = False
    for tok in tokens:
        tok = tok.strip()
        if tok in ("+", "-"):
            if pending:
                raise ValueError(f"dangling operator in {text!r}")
            sign = -sign if tok == "-" else sign
            pending = True
            continue
        if not tok:
            continue
        term = _parse_term(tok, shape)
        total = total + (term if sign > 0 else -term)
        sign = 1
        pending = False
    if pending:
        raise ValueError(f"trailing operator in {text!r}")
    return total

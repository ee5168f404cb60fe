import pytest
from hypothesis import HealthCheck, settings, strategies as st

from thetacoh.algebra import AlgebraShape, Element, Monomial

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def monomials(draw, shape: AlgebraShape, degree: int | None = None):
    """A random monomial; with ``degree`` set, one of exactly that degree (or None)."""
    n, nodd = shape.n, shape.num_odd
    if degree is None:
        x = tuple(draw(st.integers(0, 2)) for _ in range(n))
        odd = draw(st.integers(0, (1 << nodd) - 1))
        return Monomial(x, odd)
    k = draw(st.integers(0, min(nodd, degree)).filter(lambda k: (degree - k) % 2 == 0))
    chosen = draw(st.lists(st.integers(0, nodd - 1), min_size=k, max_size=k, unique=True)) if nodd else []
    odd = sum(1 << b for b in chosen)
    half = (degree - k) // 2
    cuts = sorted(draw(st.lists(st.integers(0, half), min_size=n - 1, max_size=n - 1)))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [half])]
    return Monomial(tuple(parts), odd)


@st.composite
def elements(draw, shape: AlgebraShape, degree: int | None = None, max_terms: int = 4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        if degree is not None and shape.num_odd < degree % 2:
            break
        mono = draw(monomials(shape, degree))
        terms[mono] = draw(st.fractions(min_value=-5, max_value=5, max_denominator=4))
    return Element(shape, terms)


@pytest.fixture
def shape22():
    return AlgebraShape(2, 2)

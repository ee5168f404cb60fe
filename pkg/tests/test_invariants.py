import pytest

from thetacoh.algebra import Element, mul
from thetacoh.generators import build_S, low_dimension_bound
from thetacoh.invariants import (
    Subalgebra,
    decomposables_span,
    indecomposable_dimension,
    invariant_basis,
    is_invariant_in,
    reynolds_span_dimension,
)
from thetacoh.linalg import Echelon
from thetacoh.rings import coinvariant_model, degree_basis, free_model
from thetacoh.weyl import Family, act_monomial, weyl_elements


def test_decomposables_degree_one_empty():
    assert decomposables_span(coinvariant_model(Family("U", 2), 2), Family("U", 2), 1) == []


def test_product_of_degree_one_invariants_is_decomposable():
    fam = Family("U", 2)
    model = coinvariant_model(fam, 2)
    shape = model.shape
    u = Element.y(shape, 1, 1) + Element.y(shape, 2, 1)
    v = Element.y(shape, 1, 2) + Element.y(shape, 2, 2)
    basis = degree_basis(model, 2)
    ech = Echelon()
    for vec in decomposables_span(model, fam, 2):
        ech.add({k: c for k, c in enumerate(vec) if c})
    target = basis.coordinates(mul(u, v))
    assert any(target)
    assert ech.contains({k: c for k, c in enumerate(target) if c})


@pytest.mark.parametrize("fam,m", [(Family("U", 3), 2), (Family("Sp", 2), 2), (Family("SU", 3), 2)])
def test_indecomposables_count_generators_in_low_degrees(fam, m):
    model = coinvariant_model(fam, m)
    labels = build_S(fam, m)
    for d in range(1, low_dimension_bound(fam, m) + 1):
        assert indecomposable_dimension(model, fam, d) == sum(1 for lb in labels if lb.degree == d)


@pytest.mark.parametrize("fam", [Family("U", 2), Family("Sp", 2), Family("SO_even", 2), Family("SU", 3)])
def test_invariant_basis_is_reynolds_span(fam):
    model = coinvariant_model(fam, 2)
    shape = model.shape
    group = weyl_elements(fam)
    for d in range(0, 6):
        basis = degree_basis(model, d)
        inv = Echelon()
        for v in invariant_basis(model, fam, d):
            assert is_invariant_in(model, fam, v)
            inv.add(dict(v.terms))
        rey = Echelon()
        for mono in basis.monomials:
            total = {}
            for w in group:
                s, img = act_monomial(w, mono, shape)
                total[img] = total.get(img, 0) + s
            rey.add(dict(model.normal_form(Element(shape, total)).terms))
        assert rey.rank == inv.rank == reynolds_span_dimension(model, fam, d)
        assert all(inv.contains(v) for v in rey.basis())


def test_subalgebra_of_unit_and_zero():
    model = free_model(2, 1)
    sub = Subalgebra(model, [Element.zero(model.shape)])
    assert sub.dimension(0) == 1
    assert sub.dimension(2) == 0


def test_subalgebra_rejects_mixed_multidegree():
    model = free_model(2, 1)
    shape = model.shape
    with pytest.raises(ValueError):
        Subalgebra(model, [Element.x(shape, 1) + mul(Element.y(shape, 1, 1), Element.y(shape, 2, 1))])


def test_subalgebra_dimension_polynomial_ring():
    model = free_model(2, 0)
    shape = model.shape
    sub = Subalgebra(model, [Element.x(shape, 1) + Element.x(shape, 2), mul(Element.x(shape, 1), Element.x(shape, 2))])
    # Q[e1, e2] with |e1| = 2, |e2| = 4
    assert [sub.dimension(d) for d in range(0, 9, 2)] == [1, 1, 2, 2, 3]

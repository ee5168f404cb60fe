import pytest

from thetacoh.algebra import AlgebraShape
from thetacoh.generators import (
    GeneratorLabel,
    UnsupportedFamily,
    build_S,
    build_Smap,
    free_algebra_dims,
    low_dimension_bound,
    map_labels,
    realize,
    verify_generation,
    w_gen,
    z_gen,
)
from thetacoh.rings import su_quotient
from thetacoh.weyl import Family, is_invariant


def names(labels):
    return [str(lb) for lb in labels]


def test_z_gen_examples():
    assert str(z_gen(1, (1,), 2, 2)) == "y1_1 + y2_1"
    z = z_gen(2, (1, 2), 2, 2)
    assert str(z) == "x1*y1_1*y1_2 + x2*y2_1*y2_2"
    assert z.is_homogeneous(4)
    assert su_quotient(2, 2).normal_form(z_gen(1, (1,), 2, 2)) == 0


def test_w_gen_examples():
    w = w_gen(1, (1,), 3, 2)
    assert str(w) == "x1*y1_1 + x2*y2_1 + x3*y3_1" and w.is_homogeneous(3)
    w2 = w_gen(1, (1, 2), 3, 2)
    assert str(w2) == "y1_1*y1_2 + y2_1*y2_2 + y3_1*y3_2" and w2.is_homogeneous(2)
    assert is_invariant(w_gen(2, (1, 2), 3, 2), Family("Sp", 3))


def test_generator_preconditions():
    with pytest.raises(ValueError):
        z_gen(0, (1,), 2, 2)
    with pytest.raises(ValueError):
        w_gen(1, (), 2, 2)
    with pytest.raises(ValueError):
        GeneratorLabel("map_z", 1, (1, 2), 2)


def test_build_S_examples():
    u = build_S(Family("U", 2), 2)
    assert sorted(names(u)) == sorted(["z(1,{1})", "z(1,{2})", "z(2,{1})", "z(2,{2})", "z(1,{1,2})"])
    assert [lb.degree for lb in u] == sorted(lb.degree for lb in u)
    assert len(build_S(Family("SU", 2), 2)) == 3
    sp = build_S(Family("Sp", 2), 2)
    assert names(lb for lb in sp if lb.degree == 2) == ["w(1,{1,2})"]
    assert names(build_S(Family("SO_odd", 2), 2)) == names(sp)
    with pytest.raises(UnsupportedFamily):
        build_S(Family("SO_even", 3), 2)


def test_build_Smap_examples():
    u = build_Smap(Family("U", 2), 2)
    assert len(u) == 5
    assert sorted((lb.index, len(lb.cols)) for lb in u) == [(1, 1), (1, 1), (2, 1), (2, 1), (2, 2)]
    assert len(build_Smap(Family("U", 1), 2)) == 2
    assert names(lb for lb in build_Smap(Family("Sp", 2), 2) if lb.degree == 2) == ["z_{1,{1,2}}"]
    assert all(lb.index >= 2 for lb in build_Smap(Family("SU", 3), 2))
    with pytest.raises(UnsupportedFamily):
        build_Smap(Family("SO_even", 2), 2)
    # the internal list covers type D: p_1 (|z| = 4) and the Euler class (|z| = 4)
    assert {lb.zdeg for lb in map_labels(Family("SO_even", 2), 2)} == {4}


@pytest.mark.parametrize("tag", ["U", "SU", "Sp", "SO_odd"])
def test_realized_labels_invariant_with_right_degree(tag):
    fam = Family(tag, 3)
    shape = AlgebraShape(3, 3)
    for lb in build_S(fam, 3):
        g = realize(lb, shape)
        assert g.is_homogeneous(lb.degree)
        assert is_invariant(g, fam)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_label_counts_match_in_low_degrees(n):
    fam = Family("U", n)
    m = 2
    hom, top = build_S(fam, m), build_Smap(fam, m)
    for d in range(1, low_dimension_bound(fam, m) + 1):
        a = sum(1 for lb in hom if lb.degree == d)
        b = sum(1 for lb in top if lb.degree == d)
        # the map side only differs by generators z_{k,I} with k > d
        assert b - a == sum(1 for lb in top if lb.degree == d and lb.index > d)


def test_free_algebra_dims():
    # one odd generator in degree 1 and one even in degree 2
    assert free_algebra_dims([1, 2], 4) == [1, 1, 1, 1, 1]
    assert free_algebra_dims([1, 1], 3) == [1, 2, 1, 0]


def test_verify_generation_u2():
    rep = verify_generation(Family("U", 2), 2, 4)
    assert all(r["generation"] and r["minimal"] for r in rep["degrees"])
    assert rep["degrees"][0]["invariant_dim"] == 2 == rep["degrees"][0]["labels"]
    assert rep["d_bound"] == 2


def test_verify_generation_sp1():
    rep = verify_generation(Family("Sp", 1), 1, 3)
    assert [lb["name"] for lb in rep["labels"]] == ["w(1,{1})"]
    assert all(r["generation"] for r in rep["degrees"])
    assert rep["degrees"][2]["invariant_dim"] == 1


def test_freeness_at_bound_for_u():
    for n, m in ((2, 1), (3, 2), (3, 1)):
        fam = Family("U", n)
        rep = verify_generation(fam, m, low_dimension_bound(fam, m))
        assert rep["degrees"][-1]["freeness"] is True


def test_low_dimension_bound():
    assert low_dimension_bound(Family("U", 3), 2) == 4
    assert low_dimension_bound(Family("Sp", 2), 7) == 5
    with pytest.raises(UnsupportedFamily):
        low_dimension_bound(Family("SO_even", 3), 2)

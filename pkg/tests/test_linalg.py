from fractions import Fraction

from hypothesis import given, strategies as st

from thetacoh.linalg import Echelon, RationalMatrix, in_span, nullspace, rank, rref

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = [[draw(st.sampled_from([0, 0, 1, -1, 2])) if draw(st.booleans()) else draw(small)
             for _ in range(c)] for _ in range(r)]
    return RationalMatrix.from_rows(rows, c)


def test_rref_examples():
    assert rref(RationalMatrix.identity(3))[1] == 3
    assert rref(RationalMatrix.zeros(2, 5))[1] == 0
    R, rk, piv = rref(RationalMatrix.from_rows([[1, 2], [2, 4]]))
    assert rk == 1 and piv == [0]
    assert R.entries[0] == (1, 2)


def test_nullspace_examples():
    assert nullspace(RationalMatrix.identity(2)) == []
    assert len(nullspace(RationalMatrix.zeros(1, 3))) == 3
    (v,) = nullspace(RationalMatrix.from_rows([[1, -1]]))
    assert v == [1, 1]


def test_in_span_examples():
    ok, coeffs = in_span([1, 1], RationalMatrix.from_columns([[1, 0], [0, 1]], 2))
    assert ok and coeffs == [1, 1]
    ok, coeffs = in_span([1, 0], RationalMatrix.from_columns([[0, 1]], 2))
    assert not ok and coeffs is None
    ok, coeffs = in_span([0, 0], RationalMatrix.zeros(2, 0))
    assert ok and coeffs == []


def test_json_round_trip():
    M = RationalMatrix.from_rows([[Fraction(1, 2), -3], [0, Fraction(7, 5)]])
    assert M.to_json() == [["1/2", "-3"], ["0", "7/5"]]
    assert RationalMatrix.from_json(M.to_json()) == M


@given(matrices())
def test_rank_transpose(M):
    assert rank(M) == rank(M.transpose())


@given(matrices())
def test_nullspace_vectors_vanish(M):
    basis = nullspace(M)
    assert len(basis) == M.cols - rank(M)
    for v in basis:
        assert all(c == 0 for c in M.apply(v))


@given(matrices(), st.data())
def test_in_span_certificate(M, data):
    coeffs = [data.draw(small) for _ in range(M.cols)]
    v = M.apply(coeffs)
    ok, cert = in_span(v, M)
    assert ok
    assert M.apply(cert) == v


@given(matrices())
def test_echelon_agrees_with_rref(M):
    ech = Echelon()
    for row in M.entries:
        ech.add({j: c for j, c in enumerate(row) if c})
    assert ech.rank == rank(M)
    reduced = ech.reduced_rows()
    R, rk, piv = rref(M)
    assert sorted(reduced) == piv
    for i, p in enumerate(piv):
        assert [reduced[p].get(j, 0) for j in range(M.cols)] == list(R.entries[i])


@given(matrices())
def test_echelon_nullspace(M):
    ech = Echelon()
    for row in M.entries:
        ech.add({j: c for j, c in enumerate(row) if c})
    kernel = ech.nullspace(range(M.cols))
    assert len(kernel) == M.cols - rank(M)
    for v in kernel:
        dense = [v.get(j, 0) for j in range(M.cols)]
        assert all(c == 0 for c in M.apply(dense))


@given(matrices(), st.data())
def test_echelon_express_certificate(M, data):
    ech = Echelon(track=True)
    rows = [{j: c for j, c in enumerate(r) if c} for r in M.entries]
    for k, row in enumerate(rows):
        ech.add(row, k)
    coeffs = [data.draw(small) for _ in rows]
    target = {}
    for c, row in zip(coeffs, rows):
        for j, v in row.items():
            target[j] = target.get(j, 0) + c * v
    target = {j: v for j, v in target.items() if v}
    combo = ech.express(target)
    assert combo is not None
    back = {}
    for k, c in combo.items():
        for j, v in rows[k].items():
            back[j] = back.get(j, 0) + c * v
    assert {j: v for j, v in back.items() if v} == target

"""Exact linear algebra: determinants, Smith form, cokernels, integral solves."""

from __future__ import annotations

import itertools
import random

import pytest

from conftest import random_matrix, random_unimodular
from gsbs.intlin import (
    IntMatrix,
    adjugate,
    cokernel_representatives,
    det,
    inverse_unimodular,
    matrix_from_json,
    matrix_to_json,
    smith_normal_form,
    solve_integral,
)
from gsbs.errors import SchemaError


def test_matrix_basics():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert a.entry(1, 0) == 3
    assert a.row(0) == (1, 2)
    assert a.col(1) == (2, 4)
    assert a.transpose().to_rows() == [[1, 3], [2, 4]]
    assert (a @ IntMatrix.identity(2)) == a
    assert a.matvec((1, 1)) == (3, 7)
    assert (-a).entries == (-1, -2, -3, -4)
    assert (a - a) == IntMatrix(2, 2, (0,) * 4)


def test_matrix_validation():
    with pytest.raises(ValueError):
        IntMatrix(0, 1, ())
    with pytest.raises(ValueError):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3, 4]]) @ IntMatrix.from_rows([[1]])


def test_det_known_values():
    assert det(IntMatrix.from_rows([[5]])) == 5
    assert det(IntMatrix.from_rows([[1, -4], [1, -3]])) == 1
    assert det(IntMatrix.from_rows([[3, -8], [2, -5]])) == 1
    assert det(IntMatrix.from_rows([[2, -8], [2, -6]])) == 4
    assert det(IntMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert det(IntMatrix.identity(6)) == 1
    # singular with a zero pivot column forcing the swap path
    assert det(IntMatrix.from_rows([[0, 0], [0, 5]])) == 0


def test_det_multiplicative_across_sizes():
    # sizes 2..6 cross the cofactor/elimination switchover
    rng = random.Random(7)
    for r in range(2, 7):
        for _ in range(20):
            a = random_matrix(rng, r, r, bound=9)
            b = random_matrix(rng, r, r, bound=9)
            assert det(a @ b) == det(a) * det(b)


def test_det_transpose_invariant():
    rng = random.Random(8)
    for r in (2, 3, 4, 5):
        for _ in range(10):
            a = random_matrix(rng, r, r, bound=9)
            assert det(a) == det(a.transpose())


def test_adjugate_identity():
    rng = random.Random(9)
    for r in (1, 2, 3, 4):
        for _ in range(10):
            a = random_matrix(rng, r, r, bound=8)
            d = det(a)
            prod = adjugate(a) @ a
            assert prod == IntMatrix.identity(r).scale(d)


def test_inverse_unimodular():
    m = IntMatrix.from_rows([[3, -8], [2, -5]])
    minv = inverse_unimodular(m)
    assert minv.to_rows() == [[-5, 8], [-2, 3]]
    assert (m @ minv) == IntMatrix.identity(2)
    with pytest.raises(ValueError):
        inverse_unimodular(IntMatrix.from_rows([[2, 0], [0, 1]]))
    rng = random.Random(10)
    for r in (2, 3, 4):
        for _ in range(25):
            u = random_unimodular(rng, r)
            assert (u @ inverse_unimodular(u)) == IntMatrix.identity(r)


def test_snf_known_case():
    t = IntMatrix.from_rows([[-2, 8], [-2, 6]])
    snf = smith_normal_form(t)
    assert snf.diagonal() == (2, 2)
    assert (snf.U @ t) @ snf.V == snf.D
    assert det(snf.U) in (1, -1)
    assert det(snf.V) in (1, -1)


def test_snf_rectangular_and_zero_rows():
    t = IntMatrix.from_rows([[2, 4, 6], [4, 8, 12]])
    snf = smith_normal_form(t)
    assert snf.diagonal() == (2, 0)
    assert (snf.U @ t) @ snf.V == snf.D
    tall = smith_normal_form(IntMatrix.from_rows([[3], [6]]))
    assert tall.diagonal() == (3,)


def test_snf_fuzz_invariants():
    # divisibility chain, nonnegative diagonal, unimodular transforms
    rng = random.Random(11)
    for case in range(500):
        r = rng.choice((1, 2, 2, 3, 3, 4))
        c = rng.choice((1, 2, 3, 4))
        a = random_matrix(rng, r, c, bound=30)
        snf = smith_normal_form(a)
        assert (snf.U @ a) @ snf.V == snf.D
        assert det(snf.U) in (1, -1)
        assert det(snf.V) in (1, -1)
        diag = snf.diagonal()
        assert all(v >= 0 for v in diag)
        for x, y in zip(diag, diag[1:]):
            if x == 0:
                assert y == 0
            else:
                assert y % x == 0
        for i in range(snf.D.rows):
            for j in range(snf.D.cols):
                if i != j:
                    assert snf.D.entry(i, j) == 0


def test_snf_agrees_with_sympy_invariant_factors():
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    rng = random.Random(12)
    for _ in range(60):
        r = rng.choice((2, 3, 4))
        a = random_matrix(rng, r, r, bound=20)
        ours = smith_normal_form(a).diagonal()
        theirs = sympy_snf(sympy.Matrix(a.to_rows()))
        theirs_diag = tuple(abs(int(theirs[i, i])) for i in range(r))
        assert ours == theirs_diag


def test_solve_integral():
    t = IntMatrix.from_rows([[-2, 8], [-2, 6]])
    k = solve_integral(t, (6, 4))
    assert k is not None and t.matvec(k) == (6, 4)
    assert solve_integral(t, (1, 0)) is None
    with pytest.raises(ValueError):
        solve_integral(IntMatrix.from_rows([[1, 1], [1, 1]]), (0, 0))
    rng = random.Random(13)
    for _ in range(50):
        r = rng.choice((2, 3))
        while True:
            a = random_matrix(rng, r, r, bound=9)
            if det(a) != 0:
                break
        k = tuple(rng.randint(-10, 10) for _ in range(r))
        found = solve_integral(a, a.matvec(k))
        assert found == k  # unique since a is nonsingular


def test_cokernel_representatives_count_and_incongruence():
    t = IntMatrix.from_rows([[-2, 8], [-2, 6]])
    reps = cokernel_representatives(t)
    assert len(reps) == abs(det(t)) == 4
    # pairwise incongruent mod the column lattice
    for a, b in itertools.combinations(reps, 2):
        diff = tuple(x - y for x, y in zip(a, b))
        assert solve_integral(t, diff) is None
    # every vector in a small box is congruent to exactly one representative
    for y in itertools.product(range(-5, 6), repeat=2):
        hits = 0
        for rep in reps:
            diff = tuple(a - b for a, b in zip(rep, y))
            if solve_integral(t, diff) is not None:
                hits += 1
        assert hits == 1


def test_cokernel_rejects_singular():
    with pytest.raises(ValueError):
        cokernel_representatives(IntMatrix.from_rows([[1, 1], [1, 1]]))


def test_cokernel_fuzz_sizes():
    rng = random.Random(14)
    for _ in range(40):
        r = rng.choice((2, 3))
        while True:
            a = random_matrix(rng, r, r, bound=4)
            d = det(a)
            if d != 0 and abs(d) <= 20:
                break
        reps = cokernel_representatives(a)
        assert len(reps) == abs(d)
        seen = set(reps)
        assert len(seen) == abs(d)


def test_matrix_json_roundtrip():
    m = IntMatrix.from_rows([[3, -8], [2, -5]])
    doc = matrix_to_json(m)
    assert doc == [[3, -8], [2, -5]]
    assert matrix_from_json(doc) == m
    # values beyond 64 bits travel as decimal strings
    big = IntMatrix.from_rows([[2**80, 1], [0, -(2**70)]])
    doc = matrix_to_json(big)
    assert doc[0][0] == str(2**80)
    assert doc[1][1] == str(-(2**70))
    assert matrix_from_json(doc) == big


def test_matrix_json_rejects_garbage():
    with pytest.raises(SchemaError):
        matrix_from_json([[1, 2], [3]])
    with pytest.raises(SchemaError):
        matrix_from_json([])
    with pytest.raises(SchemaError):
        matrix_from_json([[1, "x"]])
    with pytest.raises(SchemaError):
        matrix_from_json({"rows": 1})

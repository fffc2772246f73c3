import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcgauge.linalg import (
    QQ,
    AffineSolution,
    FpElement,
    LinalgError,
    Matrix,
    NoSolutionCertificate,
    PrimeField,
    field_from_name,
    kernel_basis,
    rank,
    solve_affine,
    unit_check,
)


def mat(field, rows):
    return Matrix.from_rows([[field.of(x) for x in r] for r in rows])


def vec(field, xs):
    return [field.of(x) for x in xs]


def is_zero_vec(v):
    return all(not x for x in v)


def test_solve_identity():
    m = Matrix.identity(QQ, 2)
    sol = solve_affine(QQ, m, vec(QQ, [3, -5]))
    assert sol.x == vec(QQ, [3, -5])
    assert sol.kernel == []


def test_solve_underdetermined():
    # M = [[1, 2]], b = (4): frozen from the direct oracle M.x = b, M.v = 0
    m = mat(QQ, [[1, 2]])
    sol = solve_affine(QQ, m, vec(QQ, [4]))
    assert sol.x == vec(QQ, [4, 0])
    assert sol.kernel == [vec(QQ, [-2, 1])]
    assert m.times_vec(sol.x) == vec(QQ, [4])
    assert is_zero_vec(m.times_vec(sol.kernel[0]))


def test_solve_no_solution():
    m = mat(QQ, [[0]])
    assert solve_affine(QQ, m, vec(QQ, [1])) is None
    cert = solve_affine(QQ, m, vec(QQ, [1]), certificate=True)
    assert isinstance(cert, NoSolutionCertificate)
    # functional annihilates the columns but not the rhs
    y = cert.functional
    assert all(not sum((y[r] * m[r, c] for r in range(m.rows)), QQ.zero) for c in range(m.cols))
    assert sum((y[r] * QQ.of(1) for r in range(m.rows)), QQ.zero)


def test_unit_check():
    assert unit_check(QQ, 7) is True
    f5 = PrimeField(5)
    assert unit_check(f5, 10) is False
    assert unit_check(f5, 24) is True  # 24 mod 5 = 4
    with pytest.raises(LinalgError):
        unit_check(QQ, 0)


def test_fp_arithmetic():
    f7 = PrimeField(7)
    a = f7.of(3)
    b = f7.of(5)
    assert a + b == f7.of(1)
    assert a * b == f7.of(1)
    assert a - b == f7.of(-2)
    assert (a / b).v == (3 * pow(5, 5, 7)) % 7
    assert -a == f7.of(4)
    with pytest.raises(ZeroDivisionError):
        a / f7.of(0)
    with pytest.raises(LinalgError):
        a + PrimeField(5).of(1)


def test_field_names_and_parsing():
    assert field_from_name("Q") is QQ
    f5 = field_from_name("Fp:5")
    assert f5.p == 5
    assert QQ.parse("-3/4") == Fraction(-3, 4)
    assert f5.parse("3/2") == f5.of(3) / f5.of(2)
    with pytest.raises(LinalgError):
        field_from_name("R")
    with pytest.raises(LinalgError):
        PrimeField(6)
    with pytest.raises(LinalgError):
        f5.of(Fraction(1, 5))


def test_scalar_roundtrip():
    for s in ["0", "5", "-7/3", "22/7"]:
        x = QQ.parse(s)
        assert QQ.parse(QQ.format(x)) == x
    f5 = PrimeField(5)
    for s in ["0", "3", "9", "-1"]:
        x = f5.parse(s)
        assert f5.parse(f5.format(x)) == x


def _random_matrix(field, rng, rows, cols):
    if field is QQ:
        entries = [Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3])) for _ in range(rows * cols)]
    else:
        entries = [field.of(rng.randrange(field.p)) for _ in range(rows * cols)]
    return Matrix(rows, cols, entries)


@pytest.mark.parametrize("field", [QQ, PrimeField(5), PrimeField(7)])
def test_random_solves_exact(field):
    rng = random.Random(17)
    for _ in range(60):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = _random_matrix(field, rng, rows, cols)
        xs = [field.of(rng.randint(-3, 3)) for _ in range(cols)]
        b = m.times_vec(xs)
        sol = solve_affine(field, m, b)
        assert sol is not None
        assert m.times_vec(sol.x) == b
        for v in sol.kernel:
            assert is_zero_vec(m.times_vec(v))
        # rank-nullity on the coefficient matrix
        assert cols == rank(field, m) + len(sol.kernel)
        assert len(kernel_basis(field, m)) == len(sol.kernel)


@pytest.mark.parametrize("field", [QQ, PrimeField(5)])
def test_inconsistent_certificates(field):
    rng = random.Random(3)
    found = 0
    for _ in range(200):
        rows = rng.randint(2, 5)
        cols = rng.randint(1, 4)
        m = _random_matrix(field, rng, rows, cols)
        b = [field.of(rng.randint(-3, 3)) for _ in range(rows)]
        got = solve_affine(field, m, b, certificate=True)
        if isinstance(got, NoSolutionCertificate):
            found += 1
            y = got.functional
            for c in range(cols):
                assert not sum((y[r] * m[r, c] for r in range(rows)), field.zero)
            assert sum((y[r] * b[r] for r in range(rows)), field.zero)
            assert solve_affine(field, m, b) is None
    assert found > 10


def test_deterministic_output():
    rng = random.Random(5)
    m = _random_matrix(QQ, rng, 4, 6)
    b = m.times_vec(vec(QQ, [1, 2, 0, -1, 3, 0]))
    s1 = solve_affine(QQ, m, b)
    s2 = solve_affine(QQ, Matrix(m.rows, m.cols, list(m.entries)), list(b))
    assert s1.x == s2.x and s1.kernel == s2.kernel


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=5),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_hypothesis_solvable_systems(rows, xs):
    m = mat(QQ, rows)
    x = vec(QQ, xs)
    b = m.times_vec(x)
    sol = solve_affine(QQ, m, b)
    assert sol is not None
    assert m.times_vec(sol.x) == b
    assert m.cols == rank(QQ, m) + len(sol.kernel)

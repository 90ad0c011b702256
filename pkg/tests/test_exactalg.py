"""Exact linear algebra: determinants, inverses, Smith form, signatures.

Oracles are independent of the implementation paths they check: cofactor
expansion against Bareiss elimination, Jacobi's leading-minor sign rule
against congruence diagonalization.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamma4.exactalg import (SNFResult, det, identity, inverse, is_unimodular,
                             mat_mul, mat_transpose, signature,
                             smith_normal_form)

GOERITZ_11N155 = [[3, -1, 0, -1], [-1, 5, -1, 0], [0, -1, 0, 2], [-1, 0, 2, 0]]


def det_cofactor(m):
    """Textbook cofactor expansion; the independent determinant oracle."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


def jacobi_signature(m):
    """Jacobi's rule: with all leading principal minors nonzero, the
    signature is n minus twice the number of sign changes in the minor
    sequence 1, D1, ..., Dn."""
    n = len(m)
    minors = [1]
    for k in range(1, n + 1):
        mk = det([row[:k] for row in m[:k]])
        assert mk != 0, "oracle needs nonzero leading minors"
        minors.append(mk)
    changes = sum(1 for a, b in zip(minors, minors[1:]) if a * b < 0)
    return n - 2 * changes


def random_unimodular(n, rng, ops=12):
    p = identity(n)
    for _ in range(ops):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice([-2, -1, 1, 2])
        for row in p:
            row[j] += c * row[i]
    return p


# determinants -----------------------------------------------------------


def test_det_printed_goeritz_matrix():
    assert det(GOERITZ_11N155) == -51


def test_det_identity_and_empty():
    assert det([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert det([]) == 1


def test_det_agrees_with_cofactor_oracle():
    rng = random.Random(7)
    for _ in range(400):
        n = rng.randint(1, 4)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert det(m) == det_cofactor(m)


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_det_transpose_invariant(m):
    assert det(m) == det(mat_transpose(m))


def test_det_rejects_nonsquare():
    with pytest.raises(ValueError):
        det([[1, 2, 3], [4, 5, 6]])


# inverses ---------------------------------------------------------------


def test_inverse_printed_matrix_matches_published_entries():
    inv = inverse(GOERITZ_11N155)
    assert inv[0][0] == Fraction(20, 51)
    assert inv[0][1] == Fraction(2, 17)
    assert inv[0][2] == Fraction(10, 51)
    assert inv[0][3] == Fraction(1, 17)
    assert inv[2][2] == Fraction(5, 51)


def test_inverse_trivial_and_singular():
    assert inverse([[3]]) == [[Fraction(1, 3)]]
    with pytest.raises(ValueError):
        inverse([[1, 1], [1, 1]])


def test_inverse_exactness_sweep():
    rng = random.Random(11)
    done = 0
    while done < 200:
        n = rng.randint(1, 5)
        m = [[rng.randint(-7, 7) for _ in range(n)] for _ in range(n)]
        if det(m) == 0:
            continue
        prod = mat_mul(m, inverse(m))
        assert prod == [[Fraction(int(i == j)) for j in range(n)]
                        for i in range(n)]
        done += 1


# Smith normal form ------------------------------------------------------


def check_snf(m, snf: SNFResult):
    assert mat_mul(mat_mul(snf.U, m), snf.V) == snf.D
    assert is_unimodular(snf.U) and is_unimodular(snf.V)
    diag = snf.diagonal
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    seen_zero = False
    for d in diag:
        if d == 0:
            seen_zero = True
        else:
            assert not seen_zero, "zero before a nonzero diagonal entry"
    rows, cols = len(m), len(m[0]) if m else 0
    if rows == cols and rows:
        product = 1
        for d in nonzero:
            product *= d
        assert product == abs(det(m)) or (det(m) == 0 and len(nonzero) < rows)


def test_snf_printed_goeritz():
    snf = smith_normal_form(GOERITZ_11N155)
    assert snf.diagonal == [1, 1, 1, 51]
    assert snf.invariant_factors == [51]
    check_snf(GOERITZ_11N155, snf)


def test_snf_divisibility_normalization():
    snf = smith_normal_form([[2, 0], [0, 3]])
    assert snf.diagonal == [1, 6]
    check_snf([[2, 0], [0, 3]], snf)


def test_snf_zero_matrix():
    snf = smith_normal_form([[0]])
    assert snf.diagonal == [0]
    check_snf([[0]], snf)


@settings(max_examples=150)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_snf_postconditions_property(rows, cols, data):
    m = [[data.draw(st.integers(-15, 15)) for _ in range(cols)]
         for _ in range(rows)]
    check_snf(m, smith_normal_form(m))


# signatures -------------------------------------------------------------


def test_signature_printed_matrix_and_jacobi_oracle():
    assert jacobi_signature(GOERITZ_11N155) == 2
    assert signature(GOERITZ_11N155) == 2


def test_signature_small_cases():
    assert signature([[3, 0], [0, -5]]) == 0
    assert signature(identity(4)) == 4
    assert signature([]) == 0


def test_signature_requires_symmetric_nonsingular():
    with pytest.raises(ValueError):
        signature([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        signature([[1, 1], [1, 1]])


def test_signature_hyperbolic_block():
    # all diagonal entries zero: the off-diagonal fold must kick in
    assert signature([[0, 1], [1, 0]]) == 0
    assert signature([[0, 2, 0, 0], [2, 0, 0, 0], [0, 0, 0, 3], [0, 0, 3, 0]]) == 0


def test_signature_agrees_with_jacobi_oracle_when_applicable():
    rng = random.Random(23)
    done = 0
    while done < 150:
        n = rng.randint(1, 5)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.randint(-6, 6)
        try:
            oracle = jacobi_signature(m)
        except AssertionError:
            continue
        assert signature(m) == oracle
        done += 1


def test_signature_invariant_under_unimodular_congruence():
    rng = random.Random(41)
    done = 0
    while done < 120:
        n = rng.randint(1, 5)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.randint(-6, 6)
        if det(m) == 0:
            continue
        p = random_unimodular(n, rng)
        conj = mat_mul(mat_transpose(p), mat_mul(m, p))
        assert signature(conj) == signature(m)
        done += 1

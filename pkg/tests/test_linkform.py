"""Homology, linking forms, and the obstruction verdicts.

The pairing oracle enumerates coker(G) directly (coset representatives by
breadth-first search with integral-solvability membership tests) and pairs
with x^T G^{-1} y, independently of the Smith-form transport in the
implementation.
"""

import random
from fractions import Fraction
from math import gcd

import pytest

from conftest import cyclic_form
from gamma4.errors import DiagramError
from gamma4.exactalg import det, inverse
from gamma4.linkform import (FiniteAbelianGroup, INAPPLICABLE, LinkingForm,
                             NOT_OBSTRUCTED, OBSTRUCTED,
                             definiteness_consistency, generator_values,
                             homology, klein_discriminant, linking_form,
                             metabolic_test, mobius_obstruction_cyclic,
                             mobius_obstruction_p2q)
from gamma4.planar import GoeritzData


def gd_of(matrix):
    return GoeritzData(gfull=[], g=matrix, mu=0)


# --- independent pairing oracle ---------------------------------------------


def coker_selfpairings(g):
    """Multiset of self-pairings x^T G^{-1} x mod 1 over all of coker(G),
    computed without the Smith transport."""
    n = len(g)
    ginv = inverse(g)

    def in_image(vec):
        # solve g * z = vec over the rationals; in the image iff z integral
        z = [sum(ginv[i][j] * vec[j] for j in range(n)) for i in range(n)]
        return all(x.denominator == 1 for x in z)

    reps = [tuple([0] * n)]
    frontier = [tuple([0] * n)]
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    while frontier:
        x = frontier.pop()
        for b in basis:
            y = tuple(a + c for a, c in zip(x, b))
            if not any(in_image([p - q for p, q in zip(y, r)]) for r in reps):
                reps.append(y)
                frontier.append(y)
    values = []
    for x in reps:
        v = sum(Fraction(x[i]) * ginv[i][j] * x[j]
                for i in range(n) for j in range(n))
        values.append(v % 1)
    return sorted(values), len(reps)


# --- homology ----------------------------------------------------------------


def test_homology_printed_matrix():
    g = [[3, -1, 0, -1], [-1, 5, -1, 0], [0, -1, 0, 2], [-1, 0, 2, 0]]
    h = homology(gd_of(g))
    assert h.invariant_factors == (51,)
    assert str(h) == "Z51"


def test_homology_small_cases():
    assert homology(gd_of([[3]])).invariant_factors == (3,)
    assert homology(gd_of([])).is_trivial
    assert homology(gd_of([[3, 0], [0, -5]])).invariant_factors == (15,)
    assert homology(gd_of([[3, 0], [0, 6]])).invariant_factors == (3, 6)


def test_homology_rejects_singular():
    with pytest.raises(DiagramError):
        homology(gd_of([[1, 1], [1, 1]]))


# --- linking form ------------------------------------------------------------


def test_linking_form_one_by_one():
    f = linking_form(gd_of([[3]]))
    assert f.self_value() == Fraction(1, 3)
    assert linking_form(gd_of([[-3]])).self_value() == Fraction(-1, 3) % 1


def test_linking_form_diag_3_minus5():
    f = linking_form(gd_of([[3, 0], [0, -5]]))
    assert f.group.invariant_factors == (15,)
    orbit = generator_values(f)
    # 1/3 - 1/5 = 2/15 must be a generator value of the product form
    assert Fraction(2, 15) in orbit or Fraction(-2, 15) % 1 in orbit


def test_linking_form_agrees_with_pairing_oracle():
    rng = random.Random(5)
    cases = [[[3]], [[5]], [[3, 0], [0, -5]], [[2, 1], [1, 2]],
             [[3, -1, 0, -1], [-1, 5, -1, 0], [0, -1, 0, 2], [-1, 0, 2, 0]]]
    while len(cases) < 12:
        n = rng.randint(1, 3)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.randint(-4, 4)
        if det(m) != 0 and abs(det(m)) <= 60:
            cases.append(m)
    for g in cases:
        form = linking_form(gd_of(g))
        oracle_values, order = coker_selfpairings(g)
        assert order == abs(det(g))
        assert order == form.group.order
        mine = sorted(form.evaluate(x, x) for x in form.group.elements())
        assert mine == oracle_values, g


def test_linking_form_symmetric_and_nondegenerate_guard():
    with pytest.raises(ValueError):
        LinkingForm(group=FiniteAbelianGroup((5,)), values=((Fraction(0),),))


def test_sign_flip_negates_values_but_not_verdicts():
    for n, k in ((51, 20), (47, 1), (55, 42), (63, 61)):
        f = cyclic_form(n, k)
        g = f.negated()
        assert g.self_value() == (-f.self_value()) % 1
        assert (mobius_obstruction_cyclic(f).result
                == mobius_obstruction_cyclic(g).result)


# --- generator orbit ---------------------------------------------------------


def test_generator_values_examples():
    assert generator_values(cyclic_form(3, 1)) == {Fraction(1, 3)}
    assert generator_values(cyclic_form(5, 1)) == {Fraction(1, 5), Fraction(4, 5)}
    orbit = generator_values(cyclic_form(51, 20))
    assert Fraction(20, 51) in orbit
    assert Fraction(1, 51) not in orbit and Fraction(50, 51) not in orbit


def test_generator_values_invariant_under_generator_change():
    n, k = 51, 20
    base = generator_values(cyclic_form(n, k))
    for m in (2, 4, 7, 10):
        if gcd(m, n) == 1:
            other = generator_values(cyclic_form(n, (m * m * k) % n))
            assert other == base


def test_generator_values_needs_cyclic():
    f = LinkingForm(group=FiniteAbelianGroup((3, 3)),
                    values=((Fraction(1, 3), Fraction(0)),
                            (Fraction(0), Fraction(1, 3))))
    with pytest.raises(ValueError):
        generator_values(f)


# --- Mobius obstructions ------------------------------------------------------


def oracle_mobius(n, k):
    """Exhaustive element loop: any a with lambda(a,a) == +-1/n, either sign."""
    targets = {Fraction(1, n), Fraction(-1, n) % 1}
    v = Fraction(k, n)
    for m in range(n):
        for sign in (1, -1):
            if (sign * m * m * v) % 1 in targets:
                return NOT_OBSTRUCTED
    return OBSTRUCTED


def exponents_all_odd(n):
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2 == 0:
                return False
        p += 1
    return True


def test_mobius_cyclic_published_values():
    assert mobius_obstruction_cyclic(cyclic_form(51, 20)).result == OBSTRUCTED
    assert mobius_obstruction_cyclic(cyclic_form(55, 42)).result == OBSTRUCTED
    v = mobius_obstruction_cyclic(cyclic_form(47, 1))
    assert v.result == NOT_OBSTRUCTED and v.witness


def test_mobius_cyclic_preconditions():
    assert mobius_obstruction_cyclic(cyclic_form(9, 1)).result == INAPPLICABLE
    assert mobius_obstruction_cyclic(cyclic_form(63, 61)).result == INAPPLICABLE
    f33 = LinkingForm(group=FiniteAbelianGroup((3, 3)),
                      values=((Fraction(1, 3), Fraction(0)),
                              (Fraction(0), Fraction(1, 3))))
    assert mobius_obstruction_cyclic(f33).result == INAPPLICABLE
    assert mobius_obstruction_cyclic(cyclic_form(27, 2)).result in (
        OBSTRUCTED, NOT_OBSTRUCTED)  # 27 = 3^3 has odd exponent: applicable


def test_mobius_cyclic_vs_oracle_small_sweep():
    rng = random.Random(17)
    for n in range(2, 61):
        if not exponents_all_odd(n):
            continue
        units = [k for k in range(1, n) if gcd(k, n) == 1]
        for k in rng.sample(units, min(8, len(units))):
            got = mobius_obstruction_cyclic(cyclic_form(n, k)).result
            assert got == oracle_mobius(n, k), (n, k)


def test_mobius_p2q_published_values():
    assert mobius_obstruction_p2q(cyclic_form(63, 61), 3, 7).result == OBSTRUCTED
    assert mobius_obstruction_p2q(cyclic_form(63, 11), 3, 7).result == OBSTRUCTED
    assert mobius_obstruction_p2q(cyclic_form(63, 1), 3, 7).result == NOT_OBSTRUCTED


def test_mobius_p2q_preconditions():
    assert mobius_obstruction_p2q(cyclic_form(63, 61), 4, 7).result == INAPPLICABLE
    assert mobius_obstruction_p2q(cyclic_form(63, 61), 3, 12).result == INAPPLICABLE
    assert mobius_obstruction_p2q(cyclic_form(63, 61), 3, 5).result == INAPPLICABLE
    assert mobius_obstruction_p2q(cyclic_form(45, 2), 3, 5).result in (
        OBSTRUCTED, NOT_OBSTRUCTED)


# --- Klein discriminant -------------------------------------------------------


def hyperbolic(p):
    return LinkingForm(group=FiniteAbelianGroup((p, p)),
                       values=((Fraction(0), Fraction(1, p)),
                               (Fraction(1, p), Fraction(0))))


def diag_form(p, a, b):
    return LinkingForm(group=FiniteAbelianGroup((p, p)),
                       values=((Fraction(a, p), Fraction(0)),
                               (Fraction(0), Fraction(b, p))))


def test_klein_discriminant_examples():
    assert klein_discriminant(hyperbolic(5), 5).result == NOT_OBSTRUCTED
    assert klein_discriminant(diag_form(3, 1, 1), 3).result == NOT_OBSTRUCTED
    # det(p*lambda) = 2 and +-squares mod 5 are {1, 4}: obstructed
    assert klein_discriminant(diag_form(5, 1, 2), 5).result == OBSTRUCTED
    assert klein_discriminant(cyclic_form(25, 1), 5).result == INAPPLICABLE


def test_klein_insensitive_to_global_sign():
    f = diag_form(5, 1, 2)
    assert klein_discriminant(f, 5).result == klein_discriminant(f.negated(), 5).result


# --- metabolic forms ----------------------------------------------------------


def test_metabolic_examples():
    assert metabolic_test(cyclic_form(3, 1)) is False       # 3 not a square
    assert metabolic_test(cyclic_form(9, 1)) is True        # H = {0, 3, 6}
    assert metabolic_test(hyperbolic(5)) is True             # isotropic line
    assert metabolic_test(cyclic_form(9, 2)) is True
    assert metabolic_test(diag_form(3, 1, 1)) is False       # anisotropic
    assert metabolic_test(cyclic_form(25, 2)) is True


# --- definiteness consistency ---------------------------------------------------


def test_definiteness_published_cases():
    # +1/3 against required negative definiteness: contradiction
    assert definiteness_consistency(cyclic_form(3, 1, sign_fixed=True),
                                    -1).result == OBSTRUCTED
    # -1/79 against required negative: consistent
    assert definiteness_consistency(cyclic_form(79, 78, sign_fixed=True),
                                    -1).result == NOT_OBSTRUCTED
    # +1/47 against required positive: consistent
    assert definiteness_consistency(cyclic_form(47, 1, sign_fixed=True),
                                    1).result == NOT_OBSTRUCTED


def test_definiteness_inapplicable_cases():
    assert definiteness_consistency(cyclic_form(51, 20, sign_fixed=True),
                                    1).result == INAPPLICABLE  # no +-1/51 generator
    assert definiteness_consistency(cyclic_form(47, 1, sign_fixed=True),
                                    None).result == INAPPLICABLE


def test_definiteness_requires_sign_fixed_form():
    with pytest.raises(ValueError):
        definiteness_consistency(cyclic_form(47, 1), 1)


def test_definiteness_ambiguous_sign_is_unobstructed():
    # -1 is a square mod 5, so both +1/5 and -1/5 are generator values
    f = cyclic_form(5, 1, sign_fixed=True)
    assert definiteness_consistency(f, 1).result == NOT_OBSTRUCTED
    assert definiteness_consistency(f, -1).result == NOT_OBSTRUCTED

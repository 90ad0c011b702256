"""Shared fixtures and diagram constructors for the test suite.

The anchor knots here carry *textbook* invariant values (torus knots
T(2,n), mirrors, connected sums), so they pin the sign conventions of the
Goeritz/signature machinery independently of anything this package
computes.
"""

from fractions import Fraction
from pathlib import Path

import pytest

from gamma4.knotio import PDCode, over_directions
from gamma4.linkform import FiniteAbelianGroup, LinkingForm

DATA = Path(__file__).resolve().parent.parent / "src" / "gamma4" / "data"

TREFOIL_PD = "PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]"


def torus2(n):
    """T(2,n) for odd n, in the chirality of the table knots 3_1, 5_1, ...

    Traveling the closure of the 2-strand braid alternates under/over
    passes; crossing j takes the under pass of edge j (j odd) or j+n
    (j even), and the over pass of the other one.
    """
    assert n % 2 == 1 and n >= 3
    E = 2 * n

    def w(x):
        return (x - 1) % E + 1

    crossings = []
    for j in range(1, n + 1):
        a = j if j % 2 == 1 else j + n
        o = j + n if j % 2 == 1 else j
        crossings.append((w(a), w(o), w(a + 1), w(o + 1)))
    return PDCode(tuple(crossings))


def mirror(pd):
    """Mirror image: reverses the rotational order at every crossing."""
    return PDCode(tuple((a, d, c, b) for (a, b, c, d) in pd.crossings))


def connect_sum(pd1, pd2):
    """Connected sum by splicing edge 2n1 of pd1 into edge 2n2 of pd2."""
    n1, n2 = len(pd1), len(pd2)
    E1, E2, E = 2 * n1, 2 * n2, 2 * (n1 + n2)
    out = []
    for pd, off, cut in ((pd1, 0, E1), (pd2, E1, E2)):
        od = over_directions(pd)
        for i, (a, b, c, d) in enumerate(pd.crossings):
            over_in = b if od[i] == 1 else d

            def relabel(x, slot):
                is_head = slot == 0 or (slot in (1, 3) and x == over_in and
                                        ((slot == 1) == (od[i] == 1)))
                if x == cut:
                    if off == 0:
                        return E if is_head else E1
                    return E1 if is_head else E1 + E2
                return off + x

            out.append(tuple(relabel(x, s) for s, x in enumerate((a, b, c, d))))
    return PDCode(tuple(out))


def cyclic_form(n, k, sign_fixed=False):
    """Synthetic linking form k/n on Z_n (trivial group for n = 1)."""
    if n == 1:
        return LinkingForm(group=FiniteAbelianGroup(()), values=(),
                           sign_fixed=sign_fixed)
    return LinkingForm(group=FiniteAbelianGroup((n,)),
                       values=((Fraction(k, n),),), sign_fixed=sign_fixed)


# knots with table signatures, used to pin the eta/type conventions
def anchor_knots():
    t3, t5 = torus2(3), torus2(5)
    anchors = []
    for n, sigma in ((3, -2), (5, -4), (7, -6), (9, -8), (11, -10)):
        anchors.append((f"T(2,{n})", torus2(n), sigma, n))
        anchors.append((f"mirror-T(2,{n})", mirror(torus2(n)), -sigma, n))
    granny = connect_sum(t3, t3)
    anchors += [
        ("granny", granny, -4, 9),
        ("square", connect_sum(t3, mirror(t3)), 0, 9),
        ("mirror-granny", mirror(granny), 4, 9),
        ("trefoil+cinquefoil", connect_sum(t3, t5), -6, 15),
    ]
    return anchors


@pytest.fixture(scope="session")
def knots_csv():
    return DATA / "knots.csv"


@pytest.fixture(scope="session")
def certificates_csv():
    return DATA / "certificates.csv"


@pytest.fixture(scope="session")
def dataset(knots_csv):
    from gamma4.knotio import load_dataset
    return load_dataset(knots_csv)


@pytest.fixture(scope="session")
def dataset_by_name(dataset):
    return {rec.name: rec for rec in dataset}


@pytest.fixture(scope="session")
def classification(knots_csv, certificates_csv):
    from gamma4 import pipeline
    return pipeline.run_classification(knots_csv, certificates_csv)

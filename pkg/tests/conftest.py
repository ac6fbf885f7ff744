"""Shared fixtures: the maximal orders used throughout the suite."""

from __future__ import annotations

from fractions import Fraction

import pytest

from quatorsion import quat


@pytest.fixture(scope="session")
def omax_1_6() -> quat.QuatOrder:
    """Maximal order of (-1, 6 / Q) with basis {1, (1+i+k)/2, (j+k)/2, k}."""
    alg = quat.QuatAlgebra(-1, 6)
    half = Fraction(1, 2)
    return quat.QuatOrder.from_basis(
        alg,
        [
            [1, 0, 0, 0],
            [half, half, 0, half],
            [0, 0, half, half],
            [0, 0, 0, 1],
        ],
    )


@pytest.fixture(scope="session")
def omax_3_6() -> quat.QuatOrder:
    """A maximal order of (-3, 6 / Q); contains omega = (-1 + i)/2."""
    return quat.maximal_order(quat.QuatAlgebra(-3, 6))


@pytest.fixture(scope="session")
def omax_2_5() -> quat.QuatOrder:
    """A maximal order of (-2, 5 / Q), reduced discriminant 10."""
    return quat.maximal_order(quat.QuatAlgebra(-2, 5))

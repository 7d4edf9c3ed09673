from fractions import Fraction

import pytest

from knotcert.diagram import is_alternating, is_positive, is_reduced
from knotcert.families import (
    alternating_knot_160, coherent_twist_knot, dense_special_alternating, grid_diagram, pretzel,
    special_alternating_70, torus_2p, torus_slope_pairs,
)
from knotcert.twist import twist_regions


@pytest.mark.parametrize("p", [1, 3, 7])
def test_torus_diagrams(p):
    D = torus_2p(p)
    assert D.c == p and D.is_knot and is_positive(D)


def test_family_arguments():
    with pytest.raises(ValueError):
        torus_2p(4)
    with pytest.raises(ValueError):
        pretzel(2, 0)
    with pytest.raises(ValueError):
        dense_special_alternating(10)
    with pytest.raises(ValueError):
        coherent_twist_knot(30)


def test_pretzel_components():
    assert pretzel(3, 3, 3).is_knot
    assert not pretzel(2, 2, 2).is_knot


def test_synthetic_knots_are_reduced_alternating():
    for D in (special_alternating_70(), dense_special_alternating(21), dense_special_alternating(21, coherent=False),
              coherent_twist_knot(45)):
        assert D.is_knot and is_alternating(D) and is_reduced(D)
    assert is_positive(special_alternating_70())


def test_grid_160():
    D = alternating_knot_160()
    p = twist_regions(D)
    assert (D.c, p.tw, p.tw_bar) == (160, 120, 120)
    assert D.is_knot and is_alternating(D) and is_reduced(D)


def test_omitting_edges_changes_the_grid():
    assert grid_diagram(4, 2).c == 12
    assert grid_diagram(4, 2, omit={0}).c == 11
    assert grid_diagram(4, 2, bundles={0: 3}).c == 14
    assert grid_diagram(4, 2, paths={0: 3}).c == 14


def test_slopes():
    assert torus_slope_pairs(3, 0) == (Fraction(18, 4), Fraction(18, 2))
    with pytest.raises(ValueError):
        torus_slope_pairs(4, 0)

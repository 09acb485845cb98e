import pytest

from gkmfaces.complexes import (
    euler_characteristic,
    order_complex,
    reduced_betti,
    verify_wedge_prediction,
)
from gkmfaces.errors import EmptyComplex
from gkmfaces.matroid import SimplicialComplex, WeightSystem, flats_lattice
from gkmfaces.poset import GradedPoset, grading_of

from helpers import BASIS2, COLLINEAR, UNIFORM23, weight_corpus


def test_order_complex_two_chain():
    p = GradedPoset(["a", "b"], [("a", "b")])
    assert order_complex(p).facets == (("a", "b"),)


def test_order_complex_antichain():
    p = GradedPoset(["a", "b", "c"], [])
    assert order_complex(p).facets == (("a",), ("b",), ("c",))


def test_order_complex_u23_proper_part():
    proper = flats_lattice(UNIFORM23).proper_part()
    facets = order_complex(proper).facets
    assert sorted(facets) == [((1,),), ((2,),), ((3,),)]


def test_betti_point():
    single = SimplicialComplex((1,), (frozenset({1}),))
    assert reduced_betti(single) == {-1: 0, 0: 0}


def test_betti_three_points():
    three = SimplicialComplex((1, 2, 3), (frozenset({1}), frozenset({2}), frozenset({3})))
    assert reduced_betti(three) == {-1: 0, 0: 2}


def test_betti_circle():
    triangle = SimplicialComplex(
        (1, 2, 3), (frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3}))
    )
    assert reduced_betti(triangle) == {-1: 0, 0: 0, 1: 1}


def test_betti_two_sphere():
    tetra_boundary = SimplicialComplex(
        (1, 2, 3, 4),
        tuple(frozenset({1, 2, 3, 4}) - {i} for i in (1, 2, 3, 4)),
    )
    assert reduced_betti(tetra_boundary) == {-1: 0, 0: 0, 1: 0, 2: 1}


def test_betti_empty_complex_rejected():
    with pytest.raises(EmptyComplex):
        reduced_betti(SimplicialComplex((), ()))


def test_euler_characteristic_consistency():
    for ws in weight_corpus(seed=211, count=25, max_n=6):
        lattice = flats_lattice(ws)
        if grading_of(lattice)[lattice.top()] < 2:
            continue
        complex_ = order_complex(lattice.proper_part())
        betti = reduced_betti(complex_)
        assert euler_characteristic(complex_) == sum(
            (-1) ** d * b for d, b in betti.items()
        )


def test_wedge_u23():
    report = verify_wedge_prediction(UNIFORM23)
    assert report.ok
    assert report.mobius_magnitude == 2
    assert report.proper_betti[0] == 2
    assert report.top_h == 1
    assert report.complex_betti[1] == 1


def test_wedge_boolean3():
    b3 = WeightSystem(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    report = verify_wedge_prediction(b3)
    assert report.ok
    # proper part of the rank-3 Boolean lattice is a hexagon circle
    assert report.mobius_magnitude == 1
    assert report.proper_betti == {-1: 0, 0: 0, 1: 1}
    assert report.top_h == 0
    assert all(v == 0 for v in report.complex_betti.values())


def test_wedge_rank_one_skips_proper_part():
    report = verify_wedge_prediction(WeightSystem(2, [(1, 0)]))
    assert report.proper_skipped
    assert report.proper_betti is None
    assert report.ok
    assert report.top_h == 0


def test_wedge_collinear():
    assert verify_wedge_prediction(COLLINEAR).ok


def test_wedge_randomized_suite():
    for ws in weight_corpus(seed=223, count=40, max_n=6):
        assert verify_wedge_prediction(ws).ok


def test_strict_upper_interval_acyclicity():
    # wedge concentration degree k - rk(s) - 2 for every strict upper interval
    for ws in (BASIS2, UNIFORM23, COLLINEAR):
        lattice = flats_lattice(ws)
        ranks = grading_of(lattice)
        top = lattice.top()
        k = ranks[top]
        for s in lattice.elements:
            keep = [e for e in lattice.up_set(s) if e not in (s, top)]
            if not keep:
                continue
            betti = reduced_betti(order_complex(lattice.induced(keep)))
            degree = k - ranks[s] - 2
            assert all(b == 0 for d, b in betti.items() if d != degree)

from fractions import Fraction

import pytest

from netcode.bounds import (bound_report, closed_nkd, combined_bound,
                            dimension_bound, linear_bound, lp_bound,
                            mds_bound, uniform_cut_weight)
from netcode.codes import MDSCode, ParityCheckCode, RepetitionCode
from netcode.graphs import complete_graph, cycle_graph, cuts_of_size
from netcode.simplex import maximize


def test_simplex_small_instances():
    value, x = maximize([Fraction(1)], [[Fraction(1)]], [Fraction(1)])
    assert value == 1 and x == [1]
    # max x+y st x+y<=1, x<=1 -> 1
    value, x = maximize([1, 1], [[1, 1], [1, 0]], [1, 1])
    assert value == 1
    # degenerate ties exercise Bland's rule
    value, _ = maximize([2, 1], [[1, 1], [1, 0], [0, 1]], [1, 1, 1])
    assert value == 2


def test_dimension_bound_values():
    assert dimension_bound(ParityCheckCode(4, 2)) == 3
    assert dimension_bound(RepetitionCode(5, 3)) == 1
    assert dimension_bound(MDSCode(4, 2, 2)) == 2


@pytest.mark.parametrize("n", range(3, 9))
def test_lp_cycle_repetition_is_half_n(n):
    result = lp_bound(cycle_graph(n), n, Fraction(1), n)
    assert result.value == Fraction(n, 2)


@pytest.mark.parametrize("n", range(3, 7))
def test_lp_complete_repetition_is_half_n(n):
    result = lp_bound(complete_graph(n), n, Fraction(1), n)
    assert result.value == Fraction(n, 2)


def test_lp_weights_are_feasible_and_optimal():
    g = cycle_graph(5)
    result = lp_bound(g, 5, Fraction(1), 5)
    for u, v in g.sorted_edges():
        load = sum(w for side, w in result.weights.items()
                   if (u in side) != (v in side))
        assert load <= 1
    assert sum(result.weights.values()) == result.value


def test_lp_k4_mds_instance():
    result = lp_bound(complete_graph(4), 4, Fraction(2), 3)
    assert result.value == 3


def test_lp_inapplicable():
    assert lp_bound(cycle_graph(4), 4, Fraction(3), 2) is None
    assert closed_nkd(4, Fraction(3), 2) is None


def test_closed_nkd_values():
    assert closed_nkd(4, Fraction(2), 3) == 3
    for n in range(3, 8):
        assert closed_nkd(n, Fraction(1), n) == Fraction(n, 2)


@pytest.mark.parametrize("n,k,d", [(4, 2, 3), (5, 1, 5), (6, 2, 5), (6, 3, 4), (8, 1, 8)])
def test_closed_form_is_feasible_hence_below_lp(n, k, d):
    lp = lp_bound(complete_graph(n), n, Fraction(k), d)
    closed = closed_nkd(n, Fraction(k), d)
    assert lp.value >= closed > 0
    # the uniform weight really is feasible
    weight = uniform_cut_weight(n, d)
    g = complete_graph(n)
    cuts = list(cuts_of_size(g, n - d + 1))
    for e in g.sorted_edges():
        load = sum(weight for cut in cuts if e in cut.edges)
        assert load <= 1


def test_mds_bound_values():
    assert mds_bound(4, 2) == 3
    assert mds_bound(6, 2) == Fraction(15, 4)
    assert mds_bound(6, 3) == 5  # n = 2k gives n-1
    assert mds_bound(3, 2) is None


def test_combined_bound_values():
    assert combined_bound(3, 2) == 2
    assert combined_bound(4, 2) == 3
    assert combined_bound(10, 1) == 5


def test_linear_bound():
    assert linear_bound(3) == 2
    assert linear_bound(7) == 6


def test_weak_duality_against_measured_loads():
    # measured per-edge loads of a correct protocol form a feasible covering,
    # so k * sum(weights) can never exceed the total measured load
    from netcode.codes import Word
    from netcode.engine import execute_static
    from netcode.protocols import trivial_detect

    g = complete_graph(4)
    rep = RepetitionCode(4, 2)
    schedule = trivial_detect(g, rep)
    t, _ = execute_static(schedule, g, Word.from_values([0] * 4, 2))
    loads = {e: Fraction(len(t.on_edge(e)), rep.m) for e in g.sorted_edges()}
    result = lp_bound(g, 4, Fraction(1), 4)
    assert Fraction(1) * sum(result.weights.values()) <= sum(loads.values())
    for side in result.weights:
        assert sum(loads[e] for e in g.sorted_edges()
                   if (e[0] in side) != (e[1] in side)) >= 1


def test_bound_report_assembly():
    report = bound_report(4, Fraction(2), 3, complete_graph(4), mds=True)
    assert report.combined == 3
    assert report.lp.value == 3
    rows = dict((r[0], r[1]) for r in report.rows())
    assert rows["combined"] == "3" and rows["linear"] == "3"
    csv_text = report.to_csv()
    assert csv_text.splitlines()[0] == "bound,value,applicable,note"
    inapplicable = bound_report(4, Fraction(3), 2, complete_graph(4))
    assert inapplicable.lp is None and "inapplicable" in inapplicable.to_csv()


def test_bound_report_flags_untight_cycle_instance():
    report = bound_report(5, Fraction(1), 5, cycle_graph(5))
    assert "unquantified" in report.notes["lp"]

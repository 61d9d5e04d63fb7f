import pytest

from netcode.codes import ParityCheckCode, RepetitionCode, Symbol, Word, all_words
from netcode.engine import (Round, StaticSchedule, execute_adaptive,
                            execute_static, is_linear, normalized_cost)
from netcode.errors import ParameterError, ProtocolFault
from netcode.graphs import complete_graph, cycle_graph, path_graph
from netcode.protocols import (cycle_correct, build_cycle_graph,
                               parity_protocol, trivial_detect)


def test_trivial_detect_accepts_codeword():
    g = complete_graph(4)
    rep = RepetitionCode(4, 2)
    schedule = trivial_detect(g, rep)
    t, decisions = execute_static(schedule, g, Word.from_values([3, 3, 3, 3], 2))
    assert decisions == {1: True}
    assert t.total_bits == (g.n - 1) * 2
    _, decisions = execute_static(schedule, g, Word.from_values([3, 3, 3, 1], 2))
    assert decisions == {1: False}


def test_transcript_length_is_input_independent():
    g = cycle_graph(4)
    schedule = parity_protocol(g, 3)
    lengths = {execute_static(schedule, g, w)[0].total_bits for w in all_words(4, 3)}
    assert lengths == {9}


def test_transcript_edge_views():
    g = path_graph(3)
    schedule = parity_protocol(g, 2)
    t, _ = execute_static(schedule, g, Word.from_values([1, 2, 3], 2))
    assert t.on_edge((2, 3)) + t.on_edge((1, 2)) and t.total_bits == 4
    assert len(t.on_edge((1, 2))) + len(t.on_edge((2, 3))) == t.total_bits
    with_unused = trivial_detect(cycle_graph(4), RepetitionCode(4, 2))
    t, _ = execute_static(with_unused, cycle_graph(4),
                          Word.from_values([0, 0, 0, 0], 2))
    assert t.on_edge((3, 4)) == ""  # spanning tree skips one cycle edge


def test_transcript_dump_format():
    g = path_graph(3)
    schedule = parity_protocol(g, 2)
    t, _ = execute_static(schedule, g, Word.from_values([1, 2, 3], 2))
    assert t.dump() == "1 3->2 bits:11\n2 2->1 bits:01"


def test_determinism():
    g = cycle_graph(5)
    F = build_cycle_graph(5, 2)
    protocol = cycle_correct(F)
    w = Word.from_values([1, 1, 2, 1, 1], 2)
    first = execute_adaptive(protocol, g, w)
    second = execute_adaptive(protocol, g, w)
    assert first[0].dump() == second[0].dump()
    assert first[2] == second[2]


def test_adaptive_clean_input_sends_nothing_extra():
    g = cycle_graph(3)
    protocol = cycle_correct(build_cycle_graph(3, 2))
    clean = Word.from_values([2, 2, 2], 2)
    t_clean, _, out = execute_adaptive(protocol, g, clean)
    assert out == clean
    assert t_clean.total_bits == protocol.detection.total_bits

    corrupted = clean.replace(2, Symbol(0, 2))
    t_bad, _, out = execute_adaptive(protocol, g, corrupted)
    assert out == clean
    assert t_bad.total_bits > t_clean.total_bits


def test_wrong_message_length_is_a_fault():
    g = path_graph(2)
    bad = StaticSchedule(2, 1, [Round(1, 2, 3, lambda view: view.own.bits)],
                         {2: lambda view: True})
    with pytest.raises(ProtocolFault):
        execute_static(bad, g, Word.from_values([1, 0], 1))


def test_non_adjacent_round_rejected():
    g = path_graph(3)
    bad = StaticSchedule(3, 1, [Round(1, 3, 1, lambda view: view.own.bits)],
                         {1: lambda view: True})
    with pytest.raises(ParameterError):
        execute_static(bad, g, Word.from_values([0, 0, 0], 1))


def test_inconsistent_decisions_are_a_fault():
    g = path_graph(2)
    schedule = StaticSchedule(
        2, 1, [Round(1, 2, 1, lambda view: view.own.bits)],
        {1: lambda view: True, 2: lambda view: False})
    _, decisions = execute_static(schedule, g, Word.from_values([0, 0], 1))
    with pytest.raises(ProtocolFault):
        schedule.verdict(decisions)
    conj = StaticSchedule(2, 1, schedule.rounds, schedule.deciders,
                          verdict_mode="conjunction")
    assert conj.verdict(decisions) is False


def test_normalized_cost():
    g = complete_graph(4)
    rep = RepetitionCode(4, 3)
    assert normalized_cost(trivial_detect(g, rep), g, rep) == 3
    assert normalized_cost(parity_protocol(g, 3), g, ParityCheckCode(4, 3)) == 3
    adaptive = cycle_correct(build_cycle_graph(3, 2))
    g3 = cycle_graph(3)
    cost = normalized_cost(adaptive, g3, RepetitionCode(3, 2))
    widths = build_cycle_graph(3, 2).widths()
    assert cost == (sum(widths) + 2 * max(widths)) / 2


def test_is_linear_on_forwarding_and_xor():
    g = complete_graph(3)
    assert is_linear(trivial_detect(g, RepetitionCode(3, 2)), g, 2)
    assert is_linear(parity_protocol(g, 2), g, 2)
    assert is_linear(parity_protocol(g, 2), g, 2, samples=30, seed=1)


def test_is_linear_spots_nonlinearity():
    g = path_graph(2)
    # message bit is own_value squared-ish: AND of the two input bits
    def msg(view):
        b = view.own.bits
        return str(int(b[0]) & int(b[1]))
    schedule = StaticSchedule(2, 2, [Round(1, 2, 1, msg)], {2: lambda v: True})
    assert not is_linear(schedule, g, 2)

"""Execution model for deterministic protocols on graphs.

A static schedule is a fixed list of rounds (sender, receiver, message
length, message function); message functions see only the sender's local
view, which enforces information locality. Adaptive protocols run a static
detection stage and may append correction rounds chosen from the detection
outcome; each vertex then emits an output symbol from its local view.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .codes import Code, Symbol, Word
from .errors import CapacityError, ParameterError, ProtocolFault
from .graphs import Graph

EXEC_BUDGET = 1 << 24

_BITSET = frozenset("01")


class LocalView:
    """What one vertex knows: its input symbol and the messages it received."""

    __slots__ = ("vertex", "own", "received")

    def __init__(self, vertex: int, own: Symbol):
        self.vertex = vertex
        self.own = own
        # (round index, (sender, receiver), bits), in arrival order
        self.received: list[tuple[int, tuple[int, int], str]] = []

    def bits_in_round(self, round_index: int) -> str | None:
        for idx, _, bits in self.received:
            if idx == round_index:
                return bits
        return None

    def messages_from(self, sender: int) -> list[tuple[int, str]]:
        return [(idx, bits) for idx, (s, _), bits in self.received if s == sender]


@dataclass
class Round:
    sender: int
    receiver: int
    bit_length: int
    message: Callable[[LocalView], str]

    def __post_init__(self):
        if self.bit_length < 0:
            raise ParameterError("negative message length")
        if self.sender == self.receiver:
            raise ParameterError("a vertex cannot send to itself")


@dataclass
class StaticSchedule:
    """Rounds plus per-vertex accept/reject rules.

    verdict_mode "consistent" demands all decision vertices agree (anything
    else is a protocol fault); "conjunction" accepts iff every decision
    vertex accepts, for protocols whose vertices each check one condition.
    """

    n: int
    m: int
    rounds: list[Round]
    deciders: dict[int, Callable[[LocalView], bool]]
    verdict_mode: str = "consistent"
    name: str = ""

    def __post_init__(self):
        if not self.deciders:
            raise ParameterError("a schedule needs at least one decision vertex")
        if self.verdict_mode not in ("consistent", "conjunction"):
            raise ParameterError(f"unknown verdict mode {self.verdict_mode!r}")

    @property
    def total_bits(self) -> int:
        return sum(r.bit_length for r in self.rounds)

    def verdict(self, decisions: dict[int, bool]) -> bool:
        if self.verdict_mode == "consistent":
            values = set(decisions.values())
            if len(values) > 1:
                raise ProtocolFault(f"inconsistent decisions: {decisions}")
            return values.pop()
        return all(decisions.values())


class Transcript:
    """Per-round records of one execution: (sender, receiver, bits)."""

    __slots__ = ("records",)

    def __init__(self, records: list[tuple[int, int, str]]):
        self.records = records

    @property
    def total_bits(self) -> int:
        return sum(len(bits) for _, _, bits in self.records)

    def on_edge(self, e: tuple[int, int]) -> str:
        u, v = e
        key = frozenset((u, v))
        return "".join(bits for s, r, bits in self.records
                       if frozenset((s, r)) == key)

    def round_bits(self) -> tuple[str, ...]:
        return tuple(bits for _, _, bits in self.records)

    def dump(self) -> str:
        return "\n".join(f"{i} {s}->{r} bits:{bits}"
                         for i, (s, r, bits) in enumerate(self.records, start=1))


@dataclass
class DetectionRun:
    """Everything the harness may inspect after the detection stage."""

    transcript: Transcript
    decisions: dict[int, bool]
    views: dict[int, LocalView]


@dataclass
class AdaptiveProtocol:
    """A detection stage plus an outcome-dependent correction stage.

    continuation returns the extra rounds to run (or None); output maps each
    vertex's final local view to the symbol it emits.
    """

    detection: StaticSchedule
    continuation: Callable[[DetectionRun], list[Round] | None]
    output: Callable[[int, LocalView], Symbol]
    name: str = ""

    @property
    def n(self) -> int:
        return self.detection.n

    @property
    def m(self) -> int:
        return self.detection.m


def _check_setup(schedule: StaticSchedule, g: Graph, x: Word):
    if schedule.n != g.n:
        raise ParameterError(f"schedule is for n={schedule.n}, graph has n={g.n}")
    if x.n != g.n or x.m != schedule.m:
        raise ParameterError(
            f"input shape ({x.n},{x.m}) does not match protocol ({schedule.n},{schedule.m})")


def _run_rounds(rounds, g: Graph, views, records, start_index: int):
    idx = start_index
    for r in rounds:
        if not g.adjacent(r.sender, r.receiver):
            raise ParameterError(f"round {idx}: {r.sender} and {r.receiver} not adjacent")
        bits = r.message(views[r.sender])
        if len(bits) != r.bit_length or not _BITSET.issuperset(bits):
            raise ProtocolFault(
                f"round {idx}: expected {r.bit_length} bits, got {bits!r}")
        views[r.receiver].received.append((idx, (r.sender, r.receiver), bits))
        records.append((r.sender, r.receiver, bits))
        idx += 1
    return idx


def execute_static(schedule: StaticSchedule, g: Graph, x: Word):
    """Run all rounds in order; returns (transcript, per-vertex decisions)."""
    _check_setup(schedule, g, x)
    views = {v: LocalView(v, x.symbols[v - 1]) for v in g.vertices}
    records: list[tuple[int, int, str]] = []
    _run_rounds(schedule.rounds, g, views, records, 1)
    decisions = {v: fn(views[v]) for v, fn in schedule.deciders.items()}
    return Transcript(records), decisions


def execute_adaptive(protocol: AdaptiveProtocol, g: Graph, x: Word):
    """Returns (full transcript, detection decisions, output word)."""
    schedule = protocol.detection
    _check_setup(schedule, g, x)
    views = {v: LocalView(v, x.symbols[v - 1]) for v in g.vertices}
    records: list[tuple[int, int, str]] = []
    nxt = _run_rounds(schedule.rounds, g, views, records, 1)
    decisions = {v: fn(views[v]) for v, fn in schedule.deciders.items()}
    run = DetectionRun(Transcript(list(records)), decisions, views)
    extra = protocol.continuation(run)
    if extra:
        _run_rounds(extra, g, views, records, nxt)
    out = Word(tuple(protocol.output(v, views[v]) for v in g.vertices))
    return Transcript(records), decisions, out


def normalized_cost(protocol, g: Graph, code: Code, witnesses=None,
                    budget: int = EXEC_BUDGET) -> Fraction:
    """Worst-case transmitted bits divided by the symbol width.

    Static schedules have input-independent cost, so one execution suffices.
    Adaptive protocols are measured over all of Q^n (or a witness list).
    """
    if isinstance(protocol, StaticSchedule):
        zero = Word.from_values([0] * g.n, code.m)
        t, _ = execute_static(protocol, g, zero)
        return Fraction(t.total_bits, code.m)
    if witnesses is None:
        space = 1 << (code.m * g.n)
        if space > budget:
            raise CapacityError(f"{space} executions exceed budget {budget}")
        witnesses = (Word.from_index(i, g.n, code.m) for i in range(space))
    worst = 0
    for w in witnesses:
        t, _, _ = execute_adaptive(protocol, g, w)
        if t.total_bits > worst:
            worst = t.total_bits
    return Fraction(worst, code.m)


def _transcript_value(schedule: StaticSchedule, g: Graph, x: Word) -> int:
    t, _ = execute_static(schedule, g, x)
    bits = "".join(b for _, _, b in t.records)
    return int(bits, 2) if bits else 0


def is_linear(schedule: StaticSchedule, g: Graph, m: int, samples: int | None = None,
              seed: int = 0, budget: int = EXEC_BUDGET) -> bool:
    """True iff every transmitted bit is an affine GF(2) function of the input bits.

    Exhaustive mode (samples=None) checks the affine extension built from the
    all-zeros input and the unit inputs against every input vector, which is
    exactly additivity f(a^b) = f(a)^f(b)^f(0) over the whole space. Sampled
    mode tests additivity on random pairs only.
    """
    nbits = m * g.n
    f0 = _transcript_value(schedule, g, Word.from_index(0, g.n, m))

    if samples is not None:
        rng = random.Random(seed)
        for _ in range(samples):
            a = rng.randrange(1 << nbits)
            b = rng.randrange(1 << nbits)
            fa = _transcript_value(schedule, g, Word.from_index(a, g.n, m))
            fb = _transcript_value(schedule, g, Word.from_index(b, g.n, m))
            fab = _transcript_value(schedule, g, Word.from_index(a ^ b, g.n, m))
            if fab != fa ^ fb ^ f0:
                return False
        return True

    space = 1 << nbits
    if space + nbits + 1 > budget:
        raise CapacityError(f"{space + nbits + 1} executions exceed budget {budget}")
    basis = []
    for i in range(nbits):
        fi = _transcript_value(schedule, g, Word.from_index(1 << i, g.n, m))
        basis.append(fi ^ f0)
    for v in range(space):
        predicted = f0
        rest = v
        while rest:
            low = rest & -rest
            predicted ^= basis[low.bit_length() - 1]
            rest ^= low
        if _transcript_value(schedule, g, Word.from_index(v, g.n, m)) != predicted:
            return False
    return True

"""Exhaustive desk-scale verification of protocols against their codes.

Every check enumerates its whole input space (budgets are enforced up
front, never sampled down) and a failing check always carries the
lexicographically least counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .bounds import BoundReport
from .codes import Code, Symbol, Word
from .engine import (AdaptiveProtocol, StaticSchedule, execute_adaptive,
                     execute_static)
from .errors import CapacityError
from .graphs import Graph
from .protocols import SymbolCycleGraph, verify_properties


@dataclass
class Budgets:
    executions: int = 1 << 24
    words: int = 1 << 20


@dataclass
class CheckResult:
    name: str
    passed: bool
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        tail = f"  counterexample: {self.counterexample}" if self.counterexample else ""
        extras = " ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + \
               (f" [{extras}]" if extras else "") + tail


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, *args, **kwargs) -> CheckResult:
        result = CheckResult(*args, **kwargs)
        self.checks.append(result)
        return result

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed,
                 "counterexample": c.counterexample,
                 "details": {k: str(v) for k, v in c.details.items()}}
                for c in self.checks
            ],
        }


def _require(budget: int, needed: int, what: str):
    if needed > budget:
        raise CapacityError(f"{what} needs {needed} executions, budget is {budget}")


def _word_space(n: int, m: int) -> int:
    return 1 << (m * n)


def exhaustive_detect_check(schedule: StaticSchedule, g: Graph, code: Code,
                            budgets: Budgets = Budgets()) -> VerificationReport:
    """Protocol verdict must equal code membership on every word of Q^n."""
    space = _word_space(g.n, code.m)
    _require(budgets.executions, space, "detect check")
    report = VerificationReport()
    max_bits = -1
    min_bits = None
    counterexample = None
    for i in range(space):
        w = Word.from_index(i, g.n, code.m)
        t, decisions = execute_static(schedule, g, w)
        bits = t.total_bits
        max_bits = max(max_bits, bits)
        min_bits = bits if min_bits is None else min(min_bits, bits)
        if schedule.verdict(decisions) != code.contains(w):
            counterexample = w
            break
    details = {"inputs": space, "max_bits": max_bits, "min_bits": min_bits,
               "cost": str(Fraction(max_bits, code.m))}
    report.add("detect-exhaustive", counterexample is None,
               None if counterexample is None else f"word {counterexample.values}",
               details)
    return report


def corruptions(code: Code, t: int = 1, budget: int = 1 << 20):
    """Every (codeword, word within distance t) pair, lexicographically."""
    size = code.size()
    per = 1 + (code.n * ((1 << code.m) - 1) if t >= 1 else 0)
    _require(budget, size * per, "corruption enumeration")
    if t > 1:
        raise CapacityError("only t <= 1 corruption enumeration is supported")
    for cw in code.codewords():
        yield cw, cw
        if t >= 1:
            for pos in range(1, code.n + 1):
                own = cw.symbols[pos - 1].value
                for v in range(1 << code.m):
                    if v != own:
                        yield cw, cw.replace(pos, Symbol(v, code.m))


def exhaustive_correct_check(protocol: AdaptiveProtocol, g: Graph, code: Code,
                             t: int = 1,
                             budgets: Budgets = Budgets()) -> VerificationReport:
    """Every vertex must output the original codeword symbol for every
    corruption of every codeword by at most t symbols."""
    report = VerificationReport()
    cases = 0
    max_bits = -1
    clean_bits = None
    counterexample = None
    for cw, w in corruptions(code, t, budgets.executions):
        transcript, _, out = execute_adaptive(protocol, g, w)
        cases += 1
        max_bits = max(max_bits, transcript.total_bits)
        if w == cw and clean_bits is None:
            clean_bits = transcript.total_bits
        if out != cw:
            counterexample = (cw, w, out)
            break
    details = {"cases": cases, "max_bits": max_bits, "clean_bits": clean_bits,
               "max_extra_bits": max_bits - (clean_bits or 0)}
    report.add(
        "correct-exhaustive", counterexample is None,
        None if counterexample is None else
        f"codeword {counterexample[0].values} corrupted to {counterexample[1].values} "
        f"decoded as {counterexample[2].values}",
        details)
    return report


def _transcripts_by_input(schedule: StaticSchedule, g: Graph, code: Code,
                          budgets: Budgets):
    space = _word_space(g.n, code.m)
    _require(budgets.executions, space, "transcript map")
    verdicts = {}
    history = {}
    for i in range(space):
        w = Word.from_index(i, g.n, code.m)
        t, decisions = execute_static(schedule, g, w)
        verdicts[i] = schedule.verdict(decisions)
        history[i] = "".join(bits for _, _, bits in t.records)
    return verdicts, history


def collision_count(schedule: StaticSchedule, g: Graph, code: Code, x: Word,
                    budgets: Budgets = Budgets()) -> int:
    """How many inputs share x's transcript."""
    _, history = _transcripts_by_input(schedule, g, code, budgets)
    target = history[x.index()]
    return sum(1 for h in history.values() if h == target)


def share_history_check(schedule: StaticSchedule, g: Graph, code: Code,
                        budgets: Budgets = Budgets()) -> VerificationReport:
    """No codeword's transcript is shared by more than 2^m inputs, and
    distinct codewords never share a transcript."""
    report = VerificationReport()
    _, history = _transcripts_by_input(schedule, g, code, budgets)
    buckets: dict[str, int] = {}
    for h in history.values():
        buckets[h] = buckets.get(h, 0) + 1
    cap = 1 << code.m
    worst = 0
    bad = None
    seen: dict[str, Word] = {}
    dup = None
    for cw in code.codewords():
        h = history[cw.index()]
        count = buckets[h]
        worst = max(worst, count)
        if count > cap and bad is None:
            bad = cw
        if h in seen and dup is None:
            dup = (seen[h], cw)
        seen.setdefault(h, cw)
    report.add("collision-cap", bad is None,
               None if bad is None else f"codeword {bad.values} shares its "
                                        f"transcript with {buckets[history[bad.index()]]} inputs",
               {"max_collisions": worst, "cap": cap})
    report.add("codeword-transcripts-distinct", dup is None,
               None if dup is None else f"codewords {dup[0].values} and {dup[1].values}",
               {"codewords": code.size()})
    return report


def _cut_sides(n: int):
    """One representative side per cut: every subset containing vertex 1,
    except the full vertex set."""
    rest = list(range(2, n + 1))
    for r in range(0, n - 1):
        for extra in combinations(rest, r):
            yield frozenset((1,) + extra)


def cut_mixing_check(schedule: StaticSchedule, g: Graph, code: Code,
                     budgets: Budgets = Budgets()) -> VerificationReport:
    """For any cut and any accepted pair with identical transcripts across
    the cut, one of the two mixed words must be accepted as well."""
    report = VerificationReport()
    space = _word_space(g.n, code.m)
    verdicts, _ = _transcripts_by_input(schedule, g, code, budgets)
    accepted = [i for i in range(space) if verdicts[i]]
    transcripts = {}
    for i in accepted:
        t, _ = execute_static(schedule, g, Word.from_index(i, g.n, code.m))
        transcripts[i] = t
    cuts = [(side, tuple(e for e in g.sorted_edges()
                         if (e[0] in side) != (e[1] in side)))
            for side in _cut_sides(g.n)]
    pairs = 0
    violation = None
    m = code.m
    for side, cut_edges in cuts:
        for i in accepted:
            ti = transcripts[i]
            for j in accepted:
                tj = transcripts[j]
                if any(ti.on_edge(e) != tj.on_edge(e) for e in cut_edges):
                    continue
                pairs += 1
                x = Word.from_index(i, g.n, m)
                y = Word.from_index(j, g.n, m)
                mixed_a = Word(tuple(x.symbols[v - 1] if v in side else y.symbols[v - 1]
                                     for v in g.vertices))
                mixed_b = Word(tuple(y.symbols[v - 1] if v in side else x.symbols[v - 1]
                                     for v in g.vertices))
                if not (verdicts[mixed_a.index()] or verdicts[mixed_b.index()]):
                    violation = (sorted(side), x, y)
                    break
            if violation:
                break
        if violation:
            break
    report.add(
        "cut-mixing", violation is None,
        None if violation is None else
        f"cut {violation[0]}, accepted pair {violation[1].values} / {violation[2].values}",
        {"cuts": len(cuts), "matched_pairs": pairs, "accepted": len(accepted)})
    return report


def extract_induced_cycle_graph(schedule: StaticSchedule, g: Graph, code: Code,
                                budgets: Budgets = Budgets()) -> SymbolCycleGraph:
    """Rebuild the partite cycle graph a ring protocol induces: part j holds
    the distinct edge-j transcripts over all codewords, and each codeword's
    cycle strings its per-edge transcripts together."""
    n = g.n
    ring_edges = [(i, i % n + 1) for i in range(1, n + 1)]
    for e in ring_edges:
        if not g.adjacent(*e):
            raise CapacityError(f"graph has no ring edge {e}")
    _require(budgets.executions, code.size(), "cycle graph extraction")
    cycles = {}
    for cw in code.codewords():
        t, _ = execute_static(schedule, g, cw)
        cycles[cw.symbols[0].value] = tuple(t.on_edge(e) for e in ring_edges)
    return SymbolCycleGraph(n, code.m, cycles)


def canonical_cycles(graph: SymbolCycleGraph) -> dict[int, tuple[int, ...]]:
    """Relabel each part by first use over symbols in increasing order, so
    structurally identical graphs compare equal."""
    maps: list[dict] = [{} for _ in range(graph.n)]
    out = {}
    for sym in sorted(graph.cycles):
        labels = graph.cycles[sym]
        canon = []
        for i, label in enumerate(labels):
            if label not in maps[i]:
                maps[i][label] = len(maps[i])
            canon.append(maps[i][label])
        out[sym] = tuple(canon)
    return out


def induced_graph_checks(schedule: StaticSchedule, g: Graph, code: Code,
                         budgets: Budgets = Budgets()) -> VerificationReport:
    """Structural consequences every correct ring detection protocol obeys:
    the induced graph passes the cycle-decomposition properties, any two
    parts multiply to at least 2^m, and each ring edge carries at least
    ceil(log2 |part|) bits."""
    report = VerificationReport()
    induced = extract_induced_cycle_graph(schedule, g, code, budgets)
    props = verify_properties(induced)
    report.add("induced-properties", props.disjoint_cycles and props.unique_edge,
               props.counterexample,
               {"cycles": len(induced.cycles)})
    report.add("induced-cycle-count", props.cycle_count, props.counterexample,
               {"expected": 1 << code.m})
    cap = 1 << code.m
    sizes = [len(p) for p in induced.parts]
    bad_pair = next(((a, b) for a, b in combinations(range(len(sizes)), 2)
                     if sizes[a] * sizes[b] < cap), None)
    report.add("induced-part-products", bad_pair is None,
               None if bad_pair is None else
               f"parts {bad_pair[0] + 1},{bad_pair[1] + 1} sizes "
               f"{sizes[bad_pair[0]]}*{sizes[bad_pair[1]]} < {cap}",
               {"part_sizes": sizes})
    zero = Word.from_values([0] * g.n, code.m)
    t, _ = execute_static(schedule, g, zero)
    n = g.n
    bad_edge = None
    for i in range(1, n + 1):
        e = (i, i % n + 1)
        need = (sizes[i - 1] - 1).bit_length()
        if len(t.on_edge(e)) < need:
            bad_edge = (e, len(t.on_edge(e)), need)
            break
    report.add("induced-edge-widths", bad_edge is None,
               None if bad_edge is None else
               f"edge {bad_edge[0]} carries {bad_edge[1]} bits, needs {bad_edge[2]}",
               {})
    return report


def compare_to_bounds(measured: Fraction, report: BoundReport) -> VerificationReport:
    """A measured correct protocol can never beat an applicable bound."""
    out = VerificationReport()
    out.add("cost-vs-bounds", measured >= report.combined,
            None if measured >= report.combined else
            f"measured {measured} < bound {report.combined}",
            {"measured": str(measured), "combined_bound": str(report.combined),
             "slack": str(measured - report.combined)})
    return out

"""Concrete protocols: spanning-tree baselines, XOR aggregation, and the
ring protocols for repetition codes driven by an n-partite cycle graph.

The cycle graph assigns every symbol its own transversal cycle (one vertex
per part) with all cycles pairwise edge-disjoint, so knowing a single edge
of a cycle identifies the symbol. Ring detection forwards each vertex's
part label around the cycle; single-error correction retransmits at most
two labels chosen from where the equality checks failed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .codes import Code, Symbol, Word
from .errors import CapacityError, ConstructionFault, ParameterError
from .engine import AdaptiveProtocol, DetectionRun, LocalView, Round, StaticSchedule
from .graphs import Graph, spanning_tree, tree_depths
from .progressions import ProgressionEncoder, build_encoder

PROPERTY_BUDGET = 1 << 24
VERIFY_ON_BUILD_MAX_M = 8


class SymbolCycleGraph:
    """n-partite graph whose edge set is the union of one transversal cycle
    per symbol; immutable after construction.

    Labels may be any sortable values (integers from the encoder, or raw
    message strings when the graph is reconstructed from transcripts).
    Edges live between consecutive parts: edges[i] connects part i to part
    i+1, with part n wrapping to part 1.
    """

    def __init__(self, n: int, m: int, cycles: dict[int, tuple], edges=None,
                 range_bound: int | None = None):
        if n < 3:
            raise ParameterError(f"cycle graph needs n >= 3 parts, got {n}")
        self.n = n
        self.m = m
        self.range_bound = range_bound
        self.cycles = dict(sorted(cycles.items()))
        for sym, labels in self.cycles.items():
            if len(labels) != n:
                raise ParameterError(f"cycle of symbol {sym} has {len(labels)} labels")
        self.parts = tuple(
            tuple(sorted({labels[i] for labels in self.cycles.values()}))
            for i in range(n))
        if edges is None:
            edges = {i: set() for i in range(1, n + 1)}
            for sym in self.cycles:
                for i, pair in self.cycle_edges(sym):
                    edges[i].add(pair)
        self.edges = {i: frozenset(edges[i]) for i in range(1, n + 1)}
        owner: dict[tuple, int] = {}
        for sym in self.cycles:
            for i, pair in self.cycle_edges(sym):
                owner.setdefault((i, pair), sym)
        self._owner = owner

    @classmethod
    def from_encoder(cls, enc: ProgressionEncoder) -> "SymbolCycleGraph":
        cycles = {sym: enc.encode(sym) for sym in range(1 << enc.m)}
        return cls(enc.n, enc.m, cycles, range_bound=enc.bound)

    def cycle_edges(self, sym: int):
        """The n edges of one symbol's cycle as (part index, (label, next label))."""
        labels = self.cycles[sym]
        for i in range(1, self.n + 1):
            yield i, (labels[i - 1], labels[i % self.n])

    def part_index(self, i: int) -> dict:
        return {label: idx for idx, label in enumerate(self.parts[i - 1])}

    def edge_owner(self, part: int, a, b) -> int | None:
        return self._owner.get((part, (a, b)))

    def widths(self) -> tuple[int, ...]:
        return tuple((len(p) - 1).bit_length() for p in self.parts)


@dataclass
class PropertyReport:
    """Outcome of the three structural checks on a SymbolCycleGraph."""

    disjoint_cycles: bool      # exactly 2^m cycles, pairwise edge-disjoint
    unique_edge: bool          # every graph edge lies in exactly one cycle
    cycle_count: bool          # exactly 2^m transversal cycles exist at all
    counterexample: str | None = None
    details: dict | None = None

    @property
    def all_pass(self) -> bool:
        return self.disjoint_cycles and self.unique_edge and self.cycle_count


def _count_transversal_cycles(graph: SymbolCycleGraph, budget: int) -> int:
    adj: dict[int, dict] = {i: {} for i in range(1, graph.n + 1)}
    for i, pairs in graph.edges.items():
        for a, b in sorted(pairs):
            adj[i].setdefault(a, []).append(b)
    total = 0
    work = 0
    for start in graph.parts[0]:
        counts = {start: 1}
        for i in range(1, graph.n):
            nxt: dict = {}
            for a, c in counts.items():
                for b in adj[i].get(a, ()):
                    nxt[b] = nxt.get(b, 0) + c
                    work += 1
                    if work > budget:
                        raise CapacityError(f"cycle walk exceeded budget {budget}")
            counts = nxt
        for a, c in counts.items():
            for b in adj[graph.n].get(a, ()):
                if b == start:
                    total += c
    return total


def verify_properties(graph: SymbolCycleGraph, budget: int = PROPERTY_BUDGET) -> PropertyReport:
    expected = 1 << graph.m
    occur: dict[tuple, int] = {}
    for sym in graph.cycles:
        for key in graph.cycle_edges(sym):
            occur[key] = occur.get(key, 0) + 1

    shared = next((k for k in sorted(occur) if occur[k] > 1), None)
    disjoint = len(graph.cycles) == expected and shared is None

    stray = None
    for i in range(1, graph.n + 1):
        for pair in sorted(graph.edges[i]):
            if occur.get((i, pair), 0) != 1:
                stray = (i, pair)
                break
        if stray:
            break
    unique = stray is None

    count = _count_transversal_cycles(graph, budget)
    counted = count == expected

    counterexample = None
    if shared is not None:
        counterexample = f"edge {shared} lies in several cycles"
    elif stray is not None:
        counterexample = f"edge {stray} lies in {occur.get(stray, 0)} cycles"
    elif not disjoint:
        counterexample = f"{len(graph.cycles)} cycles, expected {expected}"
    elif not counted:
        counterexample = f"walk found {count} transversal cycles, expected {expected}"
    return PropertyReport(disjoint, unique, counted, counterexample,
                          details={"cycles": len(graph.cycles), "walk_count": count})


def build_cycle_graph(n: int, m: int, verify_max_m: int = VERIFY_ON_BUILD_MAX_M) -> SymbolCycleGraph:
    """Encoder-backed cycle graph; self-verified before returning."""
    graph = SymbolCycleGraph.from_encoder(build_encoder(m, n))
    if m <= verify_max_m:
        report = verify_properties(graph)
        if not report.all_pass:
            raise ConstructionFault(f"cycle graph failed verification: {report.counterexample}")
    return graph


def save_cycle_graph(graph: SymbolCycleGraph, path):
    """Text format: header "n m", then per symbol its hex value and n labels."""
    digits = -(-graph.m // 4)
    lines = [f"{graph.n} {graph.m}"]
    for sym, labels in graph.cycles.items():
        if not all(isinstance(l, int) for l in labels):
            raise ParameterError("only integer-labeled cycle graphs are exportable")
        lines.append(format(sym, f"0{digits}x") + " " + " ".join(str(l) for l in labels))
    Path(path).write_text("\n".join(lines) + "\n")


def load_cycle_graph(path) -> SymbolCycleGraph:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ParameterError(f"empty cycle graph file {path}")
    n, m = (int(tok) for tok in lines[0].split())
    cycles = {}
    for ln in lines[1:]:
        toks = ln.split()
        cycles[int(toks[0], 16)] = tuple(int(t) for t in toks[1:])
    return SymbolCycleGraph(n, m, cycles)


class IndexCodec:
    """Ring messages carry the label's index within its sorted part, at the
    minimum fixed width for that part."""

    def __init__(self, graph: SymbolCycleGraph):
        self._widths = graph.widths()
        self._parts = graph.parts
        self._index = [graph.part_index(i) for i in range(1, graph.n + 1)]

    def width(self, part: int) -> int:
        return self._widths[part - 1]

    def encode_label(self, part: int, label) -> str:
        return format(self._index[part - 1][label], f"0{self.width(part)}b") \
            if self.width(part) else ""

    def decode_bits(self, part: int, bits: str | None):
        if bits is None:
            return None
        idx = int(bits, 2) if bits else 0
        labels = self._parts[part - 1]
        return labels[idx] if idx < len(labels) else None


class ValueCodec:
    """Ring messages carry the integer label itself (minus 1) at one uniform
    width large enough for every part."""

    def __init__(self, graph: SymbolCycleGraph, width: int):
        self._width = width
        self._parts = graph.parts

    def width(self, part: int) -> int:
        return self._width

    def encode_label(self, part: int, label) -> str:
        return format(label - 1, f"0{self._width}b")

    def decode_bits(self, part: int, bits: str | None):
        if bits is None:
            return None
        return int(bits, 2) + 1


def _ring_pos(i: int, n: int) -> int:
    return (i - 1) % n + 1


def _ring_order(graph: SymbolCycleGraph, order) -> tuple[int, ...]:
    if order is None:
        order = tuple(range(1, graph.n + 1))
    order = tuple(order)
    if sorted(order) != list(range(1, graph.n + 1)):
        raise ParameterError(f"ring order {order} is not a permutation of 1..{graph.n}")
    return order


def _encode_tables(graph: SymbolCycleGraph, codec) -> dict[int, dict[int, str]]:
    """Per part, each symbol's encoded label for that part."""
    return {p: {sym: codec.encode_label(p, labels[p - 1])
                for sym, labels in graph.cycles.items()}
            for p in range(1, graph.n + 1)}


def cycle_detect(graph: SymbolCycleGraph, codec=None, order=None,
                 tables=None) -> StaticSchedule:
    """Ring detection: position p sends its part-p label to position p+1,
    which compares it against its own expected part-p label. Every vertex
    decides; the protocol verdict is the conjunction of all checks.
    """
    codec = codec or IndexCodec(graph)
    order = _ring_order(graph, order)
    n = graph.n
    tables = tables or _encode_tables(graph, codec)
    rounds = [
        Round(order[p - 1], order[p % n], codec.width(p),
              lambda view, t=tables[p]: t[view.own.value])
        for p in range(1, n + 1)
    ]
    deciders = {}
    for p in range(1, n + 1):
        prev = _ring_pos(p - 1, n)

        def decide(view: LocalView, e=tables[prev], ridx=prev):
            return view.bits_in_round(ridx) == e[view.own.value]

        deciders[order[p - 1]] = decide
    return StaticSchedule(n, graph.m, rounds, deciders,
                          verdict_mode="conjunction", name="cycle-detect")


def cycle_correct(graph: SymbolCycleGraph, codec=None, order=None,
                  name: str = "cycle-correct") -> AdaptiveProtocol:
    """Ring detection plus single-error repair.

    With two failed checks at consecutive positions j, j+1 the vertex at j
    is corrupted: position j-1 resends the part-j label (one message). With
    a single failed check at j+1 the corrupted vertex is j or j+1: position
    j-1 sends the part-j label to j, then position j+2 sends its own
    part-(j+2) label to j+1 (two messages). Either way the repaired vertex
    learns one full edge of the true cycle, which identifies the symbol.
    """
    codec = codec or IndexCodec(graph)
    order = _ring_order(graph, order)
    n = graph.n
    tables = _encode_tables(graph, codec)
    detection = cycle_detect(graph, codec, order, tables)
    pos_of = {v: p for p, v in enumerate(order, start=1)}

    def iv_round(sender_pos: int, receiver_pos: int, part: int) -> Round:
        return Round(order[sender_pos - 1], order[receiver_pos - 1], codec.width(part),
                     lambda view, t=tables[part]: t[view.own.value])

    def continuation(run: DetectionRun):
        failed = sorted(p for p in range(1, n + 1) if not run.decisions[order[p - 1]])
        if not failed:
            return None
        if len(failed) == 1:
            j = _ring_pos(failed[0] - 1, n)
            return [iv_round(_ring_pos(j - 1, n), j, part=j),
                    iv_round(_ring_pos(j + 2, n), _ring_pos(j + 1, n),
                             part=_ring_pos(j + 2, n))]
        if len(failed) == 2:
            a, b = failed
            if b == a + 1:
                j = a
            elif (a, b) == (1, n):
                j = n
            else:
                return None
            return [iv_round(_ring_pos(j - 1, n), j, part=j)]
        return None

    def output(vertex: int, view: LocalView) -> Symbol:
        p = pos_of[vertex]
        extra = [(idx, sr, bits) for idx, sr, bits in view.received if idx > n]
        if not extra:
            return view.own
        _, (sender, _), bits = extra[0]
        if pos_of[sender] == _ring_pos(p - 1, n):
            # repaired vertex: pair the resent part-p label with the
            # detection-round part-(p-1) label from the same neighbor
            prev = _ring_pos(p - 1, n)
            lab_prev = codec.decode_bits(prev, view.bits_in_round(prev))
            lab_here = codec.decode_bits(p, bits)
            sym = graph.edge_owner(prev, lab_prev, lab_here)
        else:
            # neighbor ahead sent its own label; our own part-p label is
            # trusted because the check behind it passed
            nxt = _ring_pos(p + 1, n)
            lab_next = codec.decode_bits(nxt, bits)
            lab_here = graph.cycles[view.own.value][p - 1]
            sym = graph.edge_owner(p, lab_here, lab_next)
        if sym is None:
            return view.own
        return Symbol(sym, graph.m)

    return AdaptiveProtocol(detection, continuation, output, name=name)


def triangle_protocol(m: int) -> AdaptiveProtocol:
    """The 3-vertex ring protocol with labels sent as raw integers.

    All messages use one fixed width, enough for any value up to 3N where N
    is the encoder range, so detection costs exactly 3*ceil(log2(3N)) bits
    and repair adds at most two more messages of the same width.
    """
    graph = build_cycle_graph(3, m)
    width = (3 * graph.range_bound - 1).bit_length()
    codec = ValueCodec(graph, width)
    return cycle_correct(graph, codec, name="triangle")


def trivial_detect(g: Graph, code: Code, root: int = 1,
                   aggregate_free: bool = False) -> StaticSchedule:
    """Forward every symbol hop by hop along the BFS tree to the root, which
    alone decides membership. Costs m * sum(depth(v)).

    aggregate_free re-roots at a universal vertex so every hop is direct and
    the cost is exactly (n-1)*m; it refuses graphs without one.
    """
    if aggregate_free:
        root = next((v for v in g.vertices if len(g.neighbors(v)) == g.n - 1), 0)
        if not root:
            raise ParameterError("aggregate-free mode needs a universal vertex")
    parent = spanning_tree(g, root)
    m = code.m
    rounds: list[Round] = []
    final_round: dict[int, int] = {}
    for w in sorted(g.vertices):
        if w == root:
            continue
        prev_idx = None
        u = w
        while u != root:
            if prev_idx is None:
                fn = lambda view: view.own.bits
            else:
                fn = lambda view, ridx=prev_idx: view.bits_in_round(ridx)
            rounds.append(Round(u, parent[u], m, fn))
            prev_idx = len(rounds)
            u = parent[u]
        final_round[w] = prev_idx

    def decide(view: LocalView) -> bool:
        vals = {root: view.own.value}
        for w, ridx in final_round.items():
            vals[w] = int(view.bits_in_round(ridx), 2)
        return code.contains(Word.from_values([vals[v] for v in g.vertices], m))

    return StaticSchedule(g.n, m, rounds, {root: decide}, name="trivial-detect")


def parity_protocol(g: Graph, m: int, root: int = 1) -> StaticSchedule:
    """XOR aggregation up the BFS tree: one m-bit message per tree edge, the
    root accepts iff everything XORs to zero. Costs exactly (n-1)*m."""
    parent = spanning_tree(g, root)
    depths = tree_depths(parent, root)
    bottom_up = sorted((v for v in g.vertices if v != root),
                       key=lambda v: (-depths[v], v))

    def fold(view: LocalView) -> int:
        acc = view.own.value
        for _, _, bits in view.received:
            acc ^= int(bits, 2)
        return acc

    rounds = [Round(v, parent[v], m, lambda view: format(fold(view), f"0{m}b"))
              for v in bottom_up]
    return StaticSchedule(g.n, m, rounds, {root: lambda view: fold(view) == 0},
                          name="parity")


def trivial_correct(g: Graph, code: Code, t: int = 1) -> AdaptiveProtocol:
    """Gather everything at vertex 1, decode to the nearest codeword, then
    unicast corrected symbols to the vertices that held errors. Vertex 1
    repairs itself locally at no wire cost. Requires vertex 1 universal and
    t within the code's unique-decoding radius.
    """
    d = code.min_distance()
    if t < 0 or t > (d - 1) // 2:
        raise ParameterError(f"t={t} outside unique decoding radius {(d - 1) // 2}")
    if any(not g.adjacent(1, v) for v in g.vertices if v != 1):
        raise ParameterError("vertex 1 must be adjacent to every other vertex")
    detection = trivial_detect(g, code, root=1)
    n, m = g.n, code.m
    n_detect = len(detection.rounds)

    def gathered(view: LocalView) -> Word:
        vals = {1: view.own.value}
        for idx, (s, _), bits in view.received:
            if idx <= n_detect:
                vals[s] = int(bits, 2)
        return Word.from_values([vals[v] for v in range(1, n + 1)], m)

    def continuation(run: DetectionRun):
        word = gathered(run.views[1])
        if code.contains(word):
            return None
        decoded, _ = code.nearest_codeword(word)
        rounds = []
        for i in range(2, n + 1):
            if word.symbols[i - 1] != decoded.symbols[i - 1]:
                def fn(view: LocalView, pos=i) -> str:
                    cw, _ = code.nearest_codeword(gathered(view))
                    return cw.symbols[pos - 1].bits
                rounds.append(Round(1, i, m, fn))
        return rounds or None

    def output(vertex: int, view: LocalView) -> Symbol:
        if vertex == 1:
            word = gathered(view)
            if code.contains(word):
                return view.own
            decoded, _ = code.nearest_codeword(word)
            return decoded.symbols[0]
        for idx, _, bits in view.received:
            if idx > n_detect:
                return Symbol(int(bits, 2), m)
        return view.own

    return AdaptiveProtocol(detection, continuation, output, name="trivial-correct")

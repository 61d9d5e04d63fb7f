"""Exact-rational lower bounds on normalized detection cost.

The packing LP places nonnegative weights on the cuts whose chosen side
has n-d+1 vertices, subject to a unit load per edge; k times the total
weight bounds the cost from below whenever n <= 2(d-1). Closed forms
(uniform weights, the MDS specialization) and the dimension and
linear-protocol bounds round out the report.
"""

from __future__ import annotations

import io
import csv as _csv
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .codes import Code
from .errors import ParameterError
from .graphs import Graph, cuts_of_size
from .simplex import maximize


def dimension_bound(code: Code) -> Fraction:
    """Normalized cost is at least the code's dimension."""
    if code.min_distance() < 2:
        raise ParameterError("bound needs minimum distance >= 2")
    return code.dimension()


@dataclass
class LpResult:
    value: Fraction
    weights: dict[frozenset, Fraction] = field(default_factory=dict)


def lp_applicable(n: int, d: int) -> bool:
    return n <= 2 * (d - 1)


def lp_bound(g: Graph, n: int, k: Fraction, d: int,
             budget: int = 1 << 20) -> LpResult | None:
    """Exact optimum of the cut-packing LP, or None when n > 2(d-1)."""
    if g.n != n:
        raise ParameterError(f"graph has {g.n} vertices, code length is {n}")
    if not lp_applicable(n, d):
        return None
    cuts = list(cuts_of_size(g, n - d + 1, budget))
    edges = g.sorted_edges()
    edge_pos = {e: i for i, e in enumerate(edges)}
    rows = [[0] * len(cuts) for _ in edges]
    for j, cut in enumerate(cuts):
        for e in cut.edges:
            rows[edge_pos[e]][j] = 1
    value, sol = maximize([Fraction(k)] * len(cuts), rows, [1] * len(edges))
    weights = {cut.side: w for cut, w in zip(cuts, sol)}
    return LpResult(value, weights)


def closed_nkd(n: int, k: Fraction, d: int) -> Fraction | None:
    """Uniform-weight closed form k*n*(n-1) / (2*(n-d+1)*(d-1)); None when
    n > 2(d-1)."""
    if not lp_applicable(n, d):
        return None
    return Fraction(k) * n * (n - 1) / (2 * (n - d + 1) * (d - 1))


def mds_bound(n: int, k: int) -> Fraction | None:
    """closed_nkd at d = n-k+1, i.e. n*(n-1) / (2*(n-k)); None when n < 2k."""
    if n < 2 * k:
        return None
    return Fraction(n * (n - 1), 2 * (n - k))


def combined_bound(n: int, k: int) -> Fraction:
    """Best of the dimension bound and the MDS cut bound."""
    best = Fraction(k)
    mds = mds_bound(n, k)
    if mds is not None and mds > best:
        best = mds
    return best


def linear_bound(n: int) -> Fraction:
    """Floor for linear static protocols only."""
    return Fraction(n - 1)


def uniform_cut_weight(n: int, d: int) -> Fraction:
    """The feasible uniform weight behind closed_nkd."""
    return Fraction(1, 2 * comb(n - 2, n - d))


@dataclass
class BoundReport:
    n: int
    k: Fraction
    d: int | None
    dimension: Fraction
    lp: LpResult | None = None
    closed: Fraction | None = None
    mds: Fraction | None = None
    linear: Fraction | None = None
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def combined(self) -> Fraction:
        values = [self.dimension]
        if self.lp is not None:
            values.append(self.lp.value)
        if self.closed is not None:
            values.append(self.closed)
        if self.mds is not None:
            values.append(self.mds)
        return max(values)

    def rows(self) -> list[tuple[str, str, str, str]]:
        def fmt(v):
            return str(v) if v is not None else ""

        out = [("dimension", fmt(self.dimension), "yes", self.notes.get("dimension", ""))]
        out.append(("lp", fmt(self.lp.value) if self.lp else "",
                    "yes" if self.lp else "inapplicable", self.notes.get("lp", "")))
        out.append(("closed_nkd", fmt(self.closed),
                    "yes" if self.closed is not None else "inapplicable",
                    self.notes.get("closed_nkd", "")))
        out.append(("mds", fmt(self.mds),
                    "yes" if self.mds is not None else "inapplicable",
                    self.notes.get("mds", "")))
        out.append(("combined", fmt(self.combined), "yes", "max of applicable bounds"))
        out.append(("linear", fmt(self.linear), "linear protocols only",
                    self.notes.get("linear", "")))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerow(["bound", "value", "applicable", "note"])
        writer.writerows(self.rows())
        return buf.getvalue()

    def to_text(self) -> str:
        header = f"bounds for n={self.n}, k={self.k}" + (f", d={self.d}" if self.d else "")
        lines = [header]
        for name, value, applicable, note in self.rows():
            tail = f"  ({note})" if note else ""
            lines.append(f"  {name:<11} {value or '-':<8} [{applicable}]{tail}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": str(self.k),
            "d": self.d,
            "rows": [list(r) for r in self.rows()],
        }


def bound_report(n: int, k: Fraction, d: int | None, g: Graph | None = None,
                 mds: bool = False) -> BoundReport:
    """Assemble every applicable bound for the given parameters.

    The LP needs a graph and d; the MDS form is included when requested or
    when d equals n-k+1.
    """
    k = Fraction(k)
    report = BoundReport(n=n, k=k, d=d, dimension=k, linear=linear_bound(n))
    if d is not None:
        if d < 2:
            raise ParameterError("bounds need minimum distance >= 2")
        if not lp_applicable(n, d):
            report.notes["lp"] = f"needs n <= 2(d-1) = {2 * (d - 1)}"
            report.notes["closed_nkd"] = report.notes["lp"]
        else:
            report.closed = closed_nkd(n, k, d)
            if g is not None:
                report.lp = lp_bound(g, n, k, d)
    if mds or (d is not None and k.denominator == 1 and d == n - int(k) + 1):
        if k.denominator != 1:
            raise ParameterError("MDS bound needs an integer dimension")
        value = mds_bound(n, int(k))
        if value is None:
            report.notes["mds"] = f"needs n >= 2k = {2 * int(k)}"
        else:
            report.mds = value
    if (d is not None and d == n and k == 1 and g is not None
            and all(len(g.neighbors(v)) == 2 for v in g.vertices)):
        report.notes["lp"] = ("repetition on a cycle: not tight, the true "
                              "optimum exceeds n/2 by an unquantified margin")
    return report

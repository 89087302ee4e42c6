"""Survival probability of a walk confined to a vertex subset.

The probability that every vertex of a t-step uniform-start walk lies in
S is computed exactly: path counts are integers, so the DP runs in
arbitrary-precision ints and the result is a Fraction with denominator
|A| * d**(t-1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .graphs import CayleyGraph, spectrum

Real = Union[float, Fraction]


@dataclass(frozen=True)
class HittingInstance:
    graph: CayleyGraph
    subset: frozenset[int]
    t: int

    def __post_init__(self) -> None:
        n = self.graph.num_vertices
        if not self.subset:
            raise ValueError("subset must be nonempty")
        if any(not 0 <= v < n for v in self.subset):
            raise ValueError("subset contains out-of-range vertices")
        if self.t < 1:
            raise ValueError("t must be at least 1")

    @property
    def rho(self) -> Fraction:
        return Fraction(len(self.subset), self.graph.num_vertices)


def make_instance(graph: CayleyGraph, subset: Iterable[int], t: int) -> HittingInstance:
    return HittingInstance(graph, frozenset(int(v) for v in subset), t)


def hitting_prob_exact(inst: HittingInstance) -> Fraction:
    """P[a_1..a_t all in S] for a walk with uniform start, exactly.

    Integer path-count DP: count_j(a) = surviving j-vertex paths ending
    at a; one step sums counts over the generator neighbors and zeroes
    vertices outside S.
    """
    g = inst.graph
    n = g.num_vertices
    if n * inst.t > (1 << 28):
        raise ValueError(f"instance too large: {n} vertices x t={inst.t}")
    in_s = [1 if v in inst.subset else 0 for v in range(n)]
    counts = in_s[:]
    for _ in range(inst.t - 1):
        nxt = [0] * n
        for a in range(n):
            if in_s[a]:
                total = 0
                for u in g.generators:
                    total += counts[a ^ u]
                nxt[a] = total
        counts = nxt
    return Fraction(sum(counts), n * g.degree ** (inst.t - 1))


def hitting_bound(rho: Real, lam: Real, t: int) -> Real:
    """Closed form rho * (rho + lam*(1 - rho))**(t-1).

    Exact when both inputs are Fractions.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    if not 0 < rho <= 1:
        raise ValueError(f"rho must be in (0, 1], got {rho}")
    if not 0 <= lam <= 1:
        raise ValueError(f"lambda must be in [0, 1], got {lam}")
    return rho * (rho + lam * (1 - rho)) ** (t - 1)


@dataclass(frozen=True)
class HittingRow:
    t: int
    exact: Fraction
    bound: Fraction
    passed: bool


@dataclass
class HittingReport:
    rho: Fraction
    lam: Fraction
    rows: list[HittingRow]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_csv(self) -> str:
        lines = ["t,exact,bound,pass"]
        for r in self.rows:
            lines.append(f"{r.t},{float(r.exact)!r},{float(r.bound)!r},{r.passed}")
        return "\n".join(lines) + "\n"


def check_hitting(
    graph: CayleyGraph,
    subset: Iterable[int],
    tmax: int,
    lam: Optional[Fraction] = None,
) -> HittingReport:
    """Exact survival vs the closed-form bound for t = 1..tmax.

    lam defaults to the measured expansion; with exact rationals on both
    sides the comparison needs no slack.
    """
    sub = frozenset(int(v) for v in subset)
    if lam is None:
        rep = spectrum(graph)
        if rep.lambda_exact is None:
            raise ValueError("no exact spectrum available; pass lam explicitly")
        lam = rep.lambda_exact
    rows = []
    rho = Fraction(len(sub), graph.num_vertices)
    for t in range(1, tmax + 1):
        exact = hitting_prob_exact(HittingInstance(graph, sub, t))
        bound = hitting_bound(rho, lam, t)
        rows.append(HittingRow(t, exact, bound, exact <= bound))
    return HittingReport(rho, lam, rows)


def check_phi_identity(
    rho_grid: Iterable[float], lam_grid: Iterable[float], tol: float = 1e-12
) -> bool:
    """Phi = rho + lam*(1 - rho) solves Phi = lam/2 + sqrt(lam^2/4 +
    rho*(1 - lam)*Phi) on the whole grid."""
    for rho in rho_grid:
        for lam in lam_grid:
            phi = rho + lam * (1 - rho)
            rhs = lam / 2 + math.sqrt(lam * lam / 4 + rho * (1 - lam) * phi)
            if abs(phi - rhs) > tol:
                return False
    return True

"""Explicit Cayley graphs over F_2^dim, their exact spectra, and mixing checks.

Vertices are plain integers in [0, 2**dim); vertex v and generator u are
adjacent endpoints of an edge v ~ v ^ u.  Every generator is its own inverse
over F_2, so all graphs here are undirected by construction.  The generator
list is ordered and that order defines neighbor indexing; duplicates are
permitted only when the graph is flagged as a multigraph.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .gf2core import (
    BitWord,
    FieldElem,
    field_mul,
    field_pow,
    hex_decode,
    hex_encode,
    inner_product,
    parity,
)

SPECTRUM_SCAN_LIMIT = 24  # largest dim for an exhaustive character scan


@dataclass(frozen=True)
class CayleyGraph:
    """Cayley graph over F_2^dim with an ordered generator list.

    Parameters
    ----------
    dim : int
        Group dimension; the graph has 2**dim vertices.
    generators : tuple of int
        Generator words, indexed 0..degree-1.  Order is significant.
    name : str
        Label used in reports and serialized files.
    multigraph : bool
        Allow repeated generators (parallel edges / repeated self-loops).
    """

    dim: int
    generators: tuple[int, ...]
    name: str = ""
    multigraph: bool = False

    def __post_init__(self) -> None:
        if self.dim <= 0:
            raise ValueError("dim must be positive")
        if len(self.generators) == 0:
            raise ValueError("generator list must be nonempty")
        for u in self.generators:
            if not 0 <= u < (1 << self.dim):
                raise ValueError(f"generator {u} out of range for dim {self.dim}")
        if not self.multigraph and len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generators require multigraph=True")

    @property
    def degree(self) -> int:
        return len(self.generators)

    @property
    def num_vertices(self) -> int:
        return 1 << self.dim

    def neighbor(self, v: int, i: int) -> int:
        """The i-th neighbor of v, namely v ^ generators[i]."""
        if not 0 <= i < self.degree:
            raise IndexError(f"generator index {i} out of range 0..{self.degree - 1}")
        if not 0 <= v < self.num_vertices:
            raise ValueError(f"vertex {v} out of range for dim {self.dim}")
        return v ^ self.generators[i]

    def generator_words(self) -> list[BitWord]:
        return [BitWord(u, self.dim) for u in self.generators]

    def to_json(self) -> str:
        payload = {
            "name": self.name,
            "dim": self.dim,
            "generators": [hex_encode(u, self.dim) for u in self.generators],
            "multigraph": self.multigraph,
        }
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CayleyGraph":
        payload = json.loads(text)
        dim = int(payload["dim"])
        gens = tuple(hex_decode(h, dim) for h in payload["generators"])
        return cls(
            dim=dim,
            generators=gens,
            name=str(payload.get("name", "")),
            multigraph=bool(payload.get("multigraph", False)),
        )


def neighbor(G: CayleyGraph, v: int, i: int) -> int:
    """Module-level alias for :meth:`CayleyGraph.neighbor`."""
    return G.neighbor(v, i)


@dataclass(frozen=True)
class SpectralReport:
    """Expansion of a graph: the largest nontrivial eigenvalue magnitude.

    lambda_exact is only available from the character-sum method, where the
    eigenvalues are rationals with denominator equal to the degree.
    """

    lam: float
    argmax_character: int
    method: str
    lambda_exact: Optional[Fraction] = field(default=None, compare=False)


def build_aghp(r: int, ell: int) -> CayleyGraph:
    """Inner expander: a 2**(2*ell)-regular Cayley graph over F_2^r.

    Generators are indexed by pairs (x, y) of GF(2^ell) elements in
    lexicographic order, x major.  Bit i of generator (x, y) is the mod-2
    inner product <x^i, y> with the convention x^0 = 1 for every x.  The
    measured expansion satisfies lam <= (r - 1) * 2**(-ell).

    Repeated generators occur (every pair with y = 0 gives the zero word),
    so the result is flagged as a multigraph.
    """
    if ell <= 0 or r <= 0:
        raise ValueError("r and ell must be positive")
    if 2 * ell > r:
        raise ValueError(f"ell must satisfy ell <= r/2, got ell={ell}, r={r}")
    gens: list[int] = []
    q = 1 << ell
    for xv in range(q):
        x = FieldElem(xv, ell)
        # powers[i] = x^i, reduced in the field
        powers: list[int] = []
        p = FieldElem(1, ell)
        for _ in range(r):
            powers.append(p.value)
            p = field_mul(p, x)
        for yv in range(q):
            word = 0
            for i in range(r):
                if parity(powers[i] & yv):
                    word |= 1 << i
            gens.append(word)
    return CayleyGraph(
        dim=r,
        generators=tuple(gens),
        name=f"aghp-r{r}-l{ell}",
        multigraph=True,
    )


def build_complete_selfloop(m: int, selfloop: bool = True) -> CayleyGraph:
    """Cayley graph over F_2^m generated by every word (optionally skip 0).

    With the zero word included the graph is the complete graph with one
    self-loop per vertex and its expansion is exactly 0.  Without it the
    graph is the complete graph on 2**m vertices, whose expansion is
    1 / (2**m - 1).
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    start = 0 if selfloop else 1
    gens = tuple(range(start, 1 << m))
    tag = "complete-selfloop" if selfloop else "complete-nonzero"
    return CayleyGraph(dim=m, generators=gens, name=f"{tag}-m{m}")


def _fwht_inplace(a: np.ndarray) -> None:
    """Walsh-Hadamard transform, in place, on a length 2**k int64 array."""
    h = 1
    n = a.shape[0]
    while h < n:
        for start in range(0, n, h * 2):
            lo = a[start : start + h].copy()
            hi = a[start + h : start + 2 * h].copy()
            a[start : start + h] = lo + hi
            a[start + h : start + 2 * h] = lo - hi
        h *= 2


def character_table(G: CayleyGraph) -> np.ndarray:
    """Integer numerators of all character sums: entry alpha is
    sum over generators u of (-1)^<alpha, u>.  Dividing by the degree gives
    the full eigenvalue spectrum of the normalized adjacency operator.
    """
    counts = np.zeros(G.num_vertices, dtype=np.int64)
    for u in G.generators:
        counts[u] += 1
    _fwht_inplace(counts)
    return counts


def spectrum(G: CayleyGraph, method: str = "character-sum", rng=None, samples: int = 4096) -> SpectralReport:
    """Expansion of G: max over nonzero alpha of |character sum|.

    The character-sum method is exact (integer arithmetic throughout).  The
    dense-eigen method builds the normalized adjacency matrix and takes the
    largest eigenvalue magnitude on the complement of the constant vector;
    it exists as an independent cross-check.  For dim beyond
    SPECTRUM_SCAN_LIMIT the exhaustive scan is refused unless the sampled
    method is requested, which only lower-bounds the true value.
    """
    if method == "character-sum":
        if G.dim > SPECTRUM_SCAN_LIMIT:
            raise ValueError(
                f"dim {G.dim} too large for exhaustive character scan; "
                "use method='character-sum-sampled'"
            )
        numer = character_table(G)
        numer[0] = 0
        idx = int(np.argmax(np.abs(numer)))
        num = int(abs(numer[idx]))
        return SpectralReport(
            lam=num / G.degree,
            argmax_character=idx,
            method=method,
            lambda_exact=Fraction(num, G.degree),
        )
    if method == "character-sum-sampled":
        if rng is None:
            rng = np.random.default_rng(0)
        best, best_alpha = -1, 0
        for _ in range(samples):
            alpha = int(rng.integers(1, G.num_vertices))
            total = sum(1 if parity(alpha & u) == 0 else -1 for u in G.generators)
            if abs(total) > best:
                best, best_alpha = abs(total), alpha
        return SpectralReport(
            lam=best / G.degree,
            argmax_character=best_alpha,
            method=method,
            lambda_exact=Fraction(best, G.degree),
        )
    if method == "dense-eigen":
        return _spectrum_dense(G)
    raise ValueError(f"unknown spectrum method {method!r}")


def _spectrum_dense(G: CayleyGraph) -> SpectralReport:
    """Expansion via eigendecomposition of the normalized adjacency matrix.

    Projects out the constant vector and returns the largest remaining
    eigenvalue magnitude.  Quadratic memory; intended for <= 2**12 vertices.
    """
    n = G.num_vertices
    if n > (1 << 12):
        raise ValueError("dense eigendecomposition limited to 2**12 vertices")
    M = np.zeros((n, n), dtype=np.float64)
    w = 1.0 / G.degree
    for u in G.generators:
        idx = np.arange(n)
        M[idx, idx ^ u] += w
    P = np.eye(n) - np.full((n, n), 1.0 / n)
    vals = np.linalg.eigvalsh(P @ M @ P)
    return SpectralReport(
        lam=float(np.max(np.abs(vals))),
        argmax_character=-1,
        method="dense-eigen",
        lambda_exact=None,
    )


@dataclass(frozen=True)
class MixingCheck:
    holds: bool
    lhs: float
    rhs: float
    lam: float


def mixing_check(
    G: CayleyGraph,
    f: Sequence[float] | np.ndarray | Callable[[int], float],
    g: Sequence[float] | np.ndarray | Callable[[int], float],
    lam: Optional[float] = None,
    slack: float = 1e-12,
) -> MixingCheck:
    """Check |E_{a~a'}[f(a) g(a')] - mu_f mu_g| <= lam * sigma_f * sigma_g.

    Both sides are evaluated exactly by summing over every (vertex,
    generator) pair.  lam defaults to the measured expansion of G.
    """
    n = G.num_vertices
    fv = _as_vertex_array(f, n)
    gv = _as_vertex_array(g, n)
    if lam is None:
        lam = spectrum(G).lam
    idx = np.arange(n)
    edge_sum = 0.0
    for u in G.generators:
        edge_sum += float(np.dot(fv, gv[idx ^ u]))
    edge_mean = edge_sum / (n * G.degree)
    mu_f, mu_g = float(np.mean(fv)), float(np.mean(gv))
    sigma_f = float(np.sqrt(max(np.mean(fv * fv) - mu_f * mu_f, 0.0)))
    sigma_g = float(np.sqrt(max(np.mean(gv * gv) - mu_g * mu_g, 0.0)))
    lhs = abs(edge_mean - mu_f * mu_g)
    rhs = lam * sigma_f * sigma_g
    return MixingCheck(holds=lhs <= rhs + slack, lhs=lhs, rhs=rhs, lam=lam)


def _as_vertex_array(f, n: int) -> np.ndarray:
    if callable(f):
        return np.array([float(f(v)) for v in range(n)], dtype=np.float64)
    arr = np.asarray(f, dtype=np.float64)
    if arr.shape != (n,):
        raise ValueError(f"function must be defined on all {n} vertices, got shape {arr.shape}")
    return arr

"""Distance amplification for binary linear codes.

A small random linear base code (bias verified exhaustively) is embedded
on the outer graph's vertices and each message's codeword is re-encoded as
the XOR of the embedded bits along every enumerated wide walk.  Bit order
is the enumeration order of walk seeds, which is the code's coordinate
order everywhere.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

import numpy as np

from . import gf2core
from .amplify import SignedFn, dp_gk, measured_lambdas, moments
from .graphs import CayleyGraph
from .walks import DEFAULT_BUDGET, BudgetExceeded, ReplacementSystem, enumerate_swalk_seeds

MAX_EXHAUSTIVE_K = 16
MAX_DP_SCAN_K = 12


class BaseCodeSearchFailed(Exception):
    """Random search exhausted its tries; carries the best bias found."""

    def __init__(self, tries: int, best_bias: Fraction):
        super().__init__(
            f"no generator matrix with bias <= target in {tries} tries; "
            f"best found {float(best_bias)!r}"
        )
        self.tries = tries
        self.best_bias = best_bias


def word_bias(word: int, n0: int) -> Fraction:
    """|n0 - 2*weight| / n0 of an n0-bit word."""
    if not 0 <= word < (1 << n0):
        raise ValueError(f"word out of range for {n0} bits")
    return Fraction(abs(n0 - 2 * word.bit_count()), n0)


class LinearCode:
    """Binary linear code given by k generator rows of n0 bits each.

    Bit i of a row is coordinate i of the codeword (low bit first).  The
    maximum codeword bias is verified exhaustively at construction, which
    caps k at 16.
    """

    def __init__(self, k: int, n0: int, rows: list[int]):
        if not 1 <= k <= MAX_EXHAUSTIVE_K:
            raise ValueError(f"k must be in 1..{MAX_EXHAUSTIVE_K} for exhaustive bias")
        if n0 < k:
            raise ValueError("n0 must be at least k")
        if len(rows) != k:
            raise ValueError(f"expected {k} rows, got {len(rows)}")
        for row in rows:
            if not 0 <= row < (1 << n0):
                raise ValueError(f"row {row:#x} out of range for {n0} bits")
        self.k = k
        self.n0 = n0
        self.rows = list(rows)
        self.measured_bias_exact = max(
            word_bias(self.encode(x), n0) for x in range(1, 1 << k)
        )

    @property
    def measured_bias(self) -> float:
        return float(self.measured_bias_exact)

    def encode(self, x: int) -> int:
        if not 0 <= x < (1 << self.k):
            raise ValueError(f"message out of range for {self.k} bits")
        word = 0
        for i in range(self.k):
            if (x >> i) & 1:
                word ^= self.rows[i]
        return word

    def codewords(self) -> Iterator[tuple[int, int]]:
        for x in range(1 << self.k):
            yield x, self.encode(x)

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "n0": self.n0,
            "rows": [gf2core.hex_encode(r, self.n0) for r in self.rows],
            "bias": self.measured_bias,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: Union[str, dict]) -> "LinearCode":
        data = json.loads(text) if isinstance(text, str) else text
        code = cls(
            int(data["k"]),
            int(data["n0"]),
            [gf2core.hex_decode(h, int(data["n0"])) for h in data["rows"]],
        )
        if "bias" in data and abs(code.measured_bias - float(data["bias"])) > 1e-12:
            raise ValueError(
                f"stored bias {data['bias']} disagrees with recomputed "
                f"{code.measured_bias}"
            )
        return code


def gen_base_code(
    k: int,
    n0: int,
    target_bias: Union[float, Fraction],
    rng: np.random.Generator,
    max_tries: int = 1000,
) -> LinearCode:
    """Draw random generator matrices until the exhaustive bias meets the
    target.  Deterministic given the rng state; raises with the best bias
    found if max_tries is exhausted."""
    if n0 < k:
        raise ValueError("n0 must be at least k")
    if isinstance(target_bias, Fraction):
        target = target_bias
    else:
        # str() round-trips the shortest decimal, so 0.28 means 28/100
        # rather than the nearest binary double
        target = Fraction(str(float(target_bias)))
    best: Optional[Fraction] = None
    for _ in range(max_tries):
        rows = []
        for _ in range(k):
            bits = rng.integers(0, 2, size=n0)
            rows.append(int(sum(int(b) << i for i, b in enumerate(bits))))
        code = LinearCode(k, n0, rows)
        if code.measured_bias_exact <= target:
            return code
        if best is None or code.measured_bias_exact < best:
            best = code.measured_bias_exact
    assert best is not None
    raise BaseCodeSearchFailed(max_tries, best)


def embed(word: int, n0: int, graph: CayleyGraph) -> SignedFn:
    """Pad an n0-bit word to an assignment on the outer graph: coordinate
    i lands on vertex i, every remaining vertex gets 0.

    With a snug embedding (|A| = n0) the assignment's bias equals the
    word's bias exactly; padding dilutes the codeword and adds |A| - n0
    forced zeros, so the bias relation degrades as |A| grows past n0.
    """
    n = graph.num_vertices
    if n < n0:
        raise ValueError(f"outer graph has {n} vertices < n0 = {n0}")
    bits = np.zeros(n, dtype=np.int64)
    for i in range(n0):
        bits[i] = (word >> i) & 1
    return SignedFn(bits)


@dataclass(frozen=True)
class AmplifiedCode:
    """Base code + walk system + walk length; the embedding is vertex i
    <- coordinate i (the padded path of embed)."""

    base: LinearCode
    sys: ReplacementSystem
    t: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValueError("t must be at least 1")
        if self.sys.num_outer < self.base.n0:
            raise ValueError(
                f"outer graph has {self.sys.num_outer} vertices, "
                f"base code needs {self.base.n0}"
            )

    def f_for_message(self, x: int) -> SignedFn:
        return embed(self.base.encode(x), self.base.n0, self.sys.outer)

    @property
    def block_length(self) -> int:
        return self.sys.seed_count(self.t)


def rate(amp: AmplifiedCode) -> Fraction:
    """Exact rational rate k / (|A| * |B| * d_B**(t-1))."""
    return Fraction(amp.base.k, amp.block_length)


def encode(
    amp: AmplifiedCode,
    x: int,
    budget: int = DEFAULT_BUDGET,
    stream: bool = False,
) -> Union[np.ndarray, Iterator[int]]:
    """Codeword bits in walk-seed enumeration order: each bit XORs the
    embedded assignment over the t+1 outer vertices of one walk.

    Materializes an array by default; with stream=True returns a bit
    iterator instead and ignores the budget.
    """
    f = amp.f_for_message(x)
    bits = f.bits

    def emit() -> Iterator[int]:
        for walk in enumerate_swalk_seeds(amp.sys, amp.t, budget=2**63):
            acc = 0
            for a in walk.a_vertices:
                acc ^= int(bits[a])
            yield acc

    if stream:
        return emit()
    count = amp.block_length
    if count > budget:
        raise BudgetExceeded(count, budget)
    return np.fromiter(emit(), dtype=np.uint8, count=count)


def _message_bias(amp: AmplifiedCode, x: int) -> float:
    tables = dp_gk(amp.sys, amp.f_for_message(x), amp.t)
    return moments(tables[amp.t]).eps


def code_bias(amp: AmplifiedCode, workers: Optional[int] = None) -> float:
    """Max bias over all nonzero messages, each evaluated by the exact DP
    on its embedded assignment (codewords never materialized).

    Partitioned by message when workers > 1; the reduction is a max over
    per-message values collected in message order, so the worker count
    cannot change the result.
    """
    if amp.base.k > MAX_DP_SCAN_K:
        raise ValueError(
            f"k = {amp.base.k} exceeds the exhaustive message scan cap "
            f"{MAX_DP_SCAN_K}"
        )
    messages = range(1, 1 << amp.base.k)
    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda x: _message_bias(amp, x), messages))
    else:
        values = [_message_bias(amp, x) for x in messages]
    return max(values)


def code_report(amp: AmplifiedCode, workers: Optional[int] = None) -> dict:
    """Bias, exact rate, and the one-sided distance bound, JSON-ready."""
    bias = code_bias(amp, workers=workers)
    lam_a, lam_b = measured_lambdas(amp.sys)
    s = amp.sys.params.s
    bound = float((2 * float(lam_b)) ** (amp.t * (1 - 4 / s))) if lam_b > 0 else 0.0
    r = rate(amp)
    return {
        "schema_version": 1,
        "k": amp.base.k,
        "n0": amp.base.n0,
        "base_bias": amp.base.measured_bias,
        "t": amp.t,
        "block_length": amp.block_length,
        "rate": f"{r.numerator}/{r.denominator}",
        "bias": bias,
        "bias_bound": bound,
        "bias_bound_vacuous": bound >= 1.0,
        "distance_lower_bound": (1.0 - bias) / 2.0,
        "lambda_A": float(lam_a),
        "lambda_B": float(lam_b),
    }

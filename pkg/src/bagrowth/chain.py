"""Exact finite-time degree laws of the growth process.

The degree of a fixed vertex is a nonhomogeneous Markov chain: between
times t and t+1 it either stays at k or moves to k+1 with probability
k/(2t + d), where d = N0/m and N0 = m0*(m0-1). This module rolls that
chain forward per vertex, reconstructs the same law through the
first-passage decomposition (an independent route used as a cross
check), averages over vertices into the network-level law, and
evaluates the closed-form product-sum expression for the probability of
the minimum degree.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from math import exp

import numpy as np

from ._kernels import mixture_roll
from .errors import ConfigurationError

ROW_TOL = 1e-12


@dataclass(frozen=True)
class ChainParams:
    """Chain parameters; d = N0/m is the transition denominator offset."""

    m: int
    m0: int

    def __post_init__(self):
        if self.m < 1:
            raise ConfigurationError("m must be >= 1")
        if self.m0 < max(2, self.m):
            raise ConfigurationError("m0 must satisfy m0 >= 2 and m0 >= m")

    @property
    def n0(self) -> int:
        return self.m0 * (self.m0 - 1)

    @property
    def d(self) -> float:
        return self.n0 / self.m

    @property
    def d_exact(self) -> Fraction:
        return Fraction(self.n0, self.m)


def transition(k: int, t: int, params: ChainParams):
    """(p_stay, p_up) for the step from time t to t+1 at degree k.

    t = 0 is the step in which the first new vertex arrives; it is needed
    when evolving initial-vertex laws from their point mass at t = 0.
    """
    d = params.d
    if t < 0 or k < 1 or k > 2 * t + d:
        raise ConfigurationError(f"unreachable state (k={k}, t={t})")
    p_up = k / (2 * t + d)
    return 1.0 - p_up, p_up


def _start_of(i: int, params: ChainParams):
    """(start_time, start_degree) for vertex label i."""
    if 1 <= i:
        return i, params.m
    if -params.m0 <= i <= -1:
        return 0, params.m0 - 1
    raise ConfigurationError(f"invalid vertex label {i}")


@dataclass
class DegreeLaw:
    """P(k, i, t) for one vertex i over t = start_time..t_max."""

    vertex: int
    start_time: int
    start_degree: int
    table: np.ndarray  # shape (t_max - start_time + 1, kmax+1)

    @property
    def t_max(self) -> int:
        return self.start_time + self.table.shape[0] - 1

    def row(self, t: int) -> np.ndarray:
        if not self.start_time <= t <= self.t_max:
            raise ConfigurationError(f"time {t} outside [{self.start_time}, {self.t_max}]")
        return self.table[t - self.start_time]

    def prob(self, k: int, t: int) -> float:
        row = self.row(t)
        if k < 0 or k >= len(row):
            return 0.0
        return float(row[k])


def evolve_vertex(i: int, t_max: int, params: ChainParams) -> DegreeLaw:
    """Exact law of vertex i's degree, rolled forward to t_max.

    New vertices start as a point mass at degree m at time t = i; initial
    vertices start at degree m0-1 at time 0. Support stays structurally
    inside [start_degree, start_degree + t - start_time]: entries outside
    are exact zeros, never rounded ones.
    """
    start, deg0 = _start_of(i, params)
    if t_max < start:
        raise ConfigurationError("t_max precedes the vertex's start time")
    kmax = deg0 + (t_max - start)
    steps = t_max - start + 1
    table = np.zeros((steps, kmax + 1))
    table[0, deg0] = 1.0
    ks = np.arange(kmax + 1, dtype=np.float64)
    row = table[0].copy()
    for idx, t in enumerate(range(start, t_max)):
        den = 2.0 * t + params.d
        up = ks / den
        nxt = row * (1.0 - up)
        nxt[1:] += row[:-1] * up[:-1]
        table[idx + 1] = nxt
        row = nxt
    return DegreeLaw(vertex=i, start_time=start, start_degree=deg0, table=table)


def evolve_vertex_exact(i: int, t_max: int, params: ChainParams) -> list:
    """Rational-arithmetic twin of evolve_vertex (small t only).

    Returns a list of dicts {k: Fraction} per time start..t_max; used as
    a cross-check oracle for the floating-point roll.
    """
    start, deg0 = _start_of(i, params)
    if t_max < start:
        raise ConfigurationError("t_max precedes the vertex's start time")
    d = params.d_exact
    rows = [{deg0: Fraction(1)}]
    cur = rows[0]
    for t in range(start, t_max):
        den = 2 * t + d
        nxt = {}
        for k, p in cur.items():
            up = Fraction(k) / den
            nxt[k] = nxt.get(k, Fraction(0)) + p * (1 - up)
            nxt[k + 1] = nxt.get(k + 1, Fraction(0)) + p * up
        cur = {k: v for k, v in nxt.items() if v != 0}
        rows.append(cur)
    return rows


def first_passage(k: int, i: int, s: int, law: DegreeLaw, params: ChainParams) -> float:
    """Probability that vertex i first reaches degree k at time s.

    f(k,i,s) = P(k-1, i, s-1) * (k-1)/(2(s-1) + d). Returns exact 0 below
    the earliest possible passage time.
    """
    start, deg0 = _start_of(i, params)
    if k <= deg0:
        raise ConfigurationError(f"first passage needs k > start degree {deg0}")
    if s < start + (k - deg0):
        return 0.0
    return law.prob(k - 1, s - 1) * (k - 1) / (2.0 * (s - 1) + params.d)


def passage_curve(k: int, i: int, t_max: int, params: ChainParams,
                  law: DegreeLaw | None = None) -> np.ndarray:
    """P(k, i, t) for all t in start..t_max via the first-passage sum.

    Evaluates sum_s f(k,i,s) * prod_{j=s}^{t-1} (1 - k/(2j+d)) with the
    survival products carried as log1p sums, factored as
    exp(L[t] - L[s]) so every exponent is <= 0. This route consumes only
    the degree-(k-1) row of the per-vertex law, so it is independent of
    the forward roll of the degree-k row it is checked against.
    """
    start, deg0 = _start_of(i, params)
    if k <= deg0:
        raise ConfigurationError(f"first-passage route needs k > start degree {deg0}")
    if t_max < start:
        raise ConfigurationError("t_max precedes the vertex's start time")
    d = params.d
    out = np.zeros(t_max - start + 1)
    s_min = start + (k - deg0)
    if s_min > t_max:
        return out
    if law is None:
        law = evolve_vertex(i, t_max, params)
    times = np.arange(s_min, t_max + 1)
    prev_row = law.table[:, k - 1] if k - 1 < law.table.shape[1] else None
    if prev_row is None:
        return out
    # f(k,i,s) over s = s_min..t_max
    f = prev_row[times - 1 - start] * (k - 1) / (2.0 * (times - 1) + d)
    # L[x] = sum_{j=s_min}^{x-1} log(1 - k/(2j+d)), x = s_min..t_max
    logs = np.log1p(-k / (2.0 * times[:-1] + d)) if len(times) > 1 else np.empty(0)
    big_l = np.concatenate([[0.0], np.cumsum(logs)])
    if len(big_l) and -big_l[-1] > 600.0:
        # factored cumsum would overflow; evaluate term by term
        for ti, t in enumerate(times):
            acc = 0.0
            for si, s in enumerate(range(s_min, t + 1)):
                acc += f[si] * exp(big_l[ti] - big_l[si])
            out[t - start] = acc
        return out
    scaled = np.cumsum(f * np.exp(-big_l))
    out[times - start] = np.exp(big_l) * scaled
    return out


def p_via_first_passage(k: int, i: int, t: int, params: ChainParams,
                        law: DegreeLaw | None = None) -> float:
    """P(k, i, t) reconstructed from first-passage probabilities."""
    start, _ = _start_of(i, params)
    return float(passage_curve(k, i, t, params, law=law)[t - start])


@dataclass
class MixtureDistribution:
    """Network-level degree law P(k, t) averaged over all vertices."""

    time: int
    params: ChainParams
    k: np.ndarray            # reported degrees m..k_max
    probs: np.ndarray
    tail: float              # mass outside the reported window
    pbar: np.ndarray         # new-vertex-only average over the same window
    k_full: np.ndarray       # full reachable support
    probs_full: np.ndarray

    @property
    def mean_degree(self) -> float:
        return float((self.k_full * self.probs_full).sum())


def default_k_max(t: int, m: int) -> int:
    return m + int(np.ceil(10.0 * np.sqrt(t)))


def network_distribution(t: int, params: ChainParams,
                         k_max: int | None = None) -> MixtureDistribution:
    """Exact network degree law at time t.

    Rolls the vertex-summed master recursion forward once: because the
    transition at time j is the same for every vertex, the sums of laws
    over new and initial vertices satisfy the same two-term recursion
    with a unit injection at degree m each step. Cost O(t * k_support)
    total instead of one roll per vertex.
    """
    if t < 1:
        raise ConfigurationError("t must be >= 1")
    if k_max is None:
        k_max = default_k_max(t, params.m)
    if k_max < params.m:
        raise ConfigurationError("k_max must be >= m")
    s_new, s_init = mixture_roll(params.m, params.m0, params.d, t)
    probs_full = (s_new + s_init) / (t + params.m0)
    k_full = np.arange(len(probs_full))
    hi = min(k_max, len(probs_full) - 1)
    ks = np.arange(params.m, hi + 1)
    window = probs_full[params.m: hi + 1]
    tail = float(probs_full.sum() - window.sum())
    pbar_full = s_new / t
    pbar = pbar_full[params.m: hi + 1]
    if k_max > hi:  # window extends past reachable support; pad with zeros
        pad = k_max - hi
        ks = np.arange(params.m, k_max + 1)
        window = np.concatenate([window, np.zeros(pad)])
        pbar = np.concatenate([pbar, np.zeros(pad)])
    return MixtureDistribution(time=t, params=params, k=ks, probs=window,
                               tail=tail, pbar=pbar, k_full=k_full,
                               probs_full=probs_full)


def network_distribution_naive(t: int, params: ChainParams) -> np.ndarray:
    """O(t^2) reference: average evolve_vertex laws vertex by vertex.

    Returns the full-support probability vector; verification oracle for
    the rolled solver.
    """
    kcap = max(params.m, params.m0 - 1) + t
    acc = np.zeros(kcap + 1)
    for i in range(-params.m0, 0):
        law = evolve_vertex(i, t, params)
        row = law.row(t)
        acc[: len(row)] += row
    for i in range(1, t + 1):
        law = evolve_vertex(i, t, params)
        row = law.row(t)
        acc[: len(row)] += row
    return acc / (t + params.m0)


def min_degree_prob_at_t1(params: ChainParams) -> float:
    """P(m, 1): the network-level probability of degree m at time 1."""
    m, m0 = params.m, params.m0
    acc = 1.0  # the single new vertex has degree m surely
    init_law = evolve_vertex(-1, 1, params)
    acc += m0 * init_law.prob(m, 1)
    return acc / (1 + m0)


def closed_form_pmt(t: int, params: ChainParams) -> float:
    """P(m, t) from the closed-form product-sum expression.

    Evaluates
      (1/(t+m0)) * prod_{i=1}^{t-1}(1 - m/(2i+d))
      * [(1+m0) P(m,1) + sum_{l=1}^{t-1} prod_{j=1}^{l}(1 - m/(2j+d))^{-1}]
    with the products carried as log1p sums; every exponentiated
    difference is <= 0, so the evaluation cannot overflow.
    """
    if t < 1:
        raise ConfigurationError("t must be >= 1")
    m, m0, d = params.m, params.m0, params.d
    p_m1 = min_degree_prob_at_t1(params)
    if t == 1:
        return p_m1
    # L[l] = sum_{j=1}^{l} log(1 - m/(2j+d)), l = 0..t-1
    js = np.arange(1, t)
    big_l = np.concatenate([[0.0], np.cumsum(np.log1p(-m / (2.0 * js + d)))])
    total = (1 + m0) * p_m1 * exp(big_l[t - 1])
    total += np.exp(big_l[t - 1] - big_l[1:t]).sum()
    return total / (t + m0)


def write_distribution_csv(dist: MixtureDistribution, analytic, path,
                           header: str = "") -> None:
    """CSV 'k,p_exact,p_analytic,abs_gap'; analytic maps k -> P(k)."""
    with open(path, "w") as fh:
        if header:
            fh.write(header + "\n")
        fh.write("k,p_exact,p_analytic,abs_gap\n")
        for k, p in zip(dist.k, dist.probs):
            pa = analytic(int(k))
            fh.write(f"{k},{p:.12g},{pa:.12g},{abs(p - pa):.12g}\n")


def distribution_dict(dist: MixtureDistribution, analytic) -> dict:
    pa = np.array([analytic(int(k)) for k in dist.k])
    return {
        "m": dist.params.m,
        "m0": dist.params.m0,
        "t": dist.time,
        "k": [int(k) for k in dist.k],
        "p_exact": list(map(float, dist.probs)),
        "p_analytic": list(map(float, pa)),
        "abs_gap": list(map(float, np.abs(dist.probs - pa))),
        "tail": dist.tail,
    }


def write_distribution_json(dist: MixtureDistribution, analytic, path,
                            meta: dict | None = None) -> None:
    obj = distribution_dict(dist, analytic)
    if meta:
        obj.update(meta)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")

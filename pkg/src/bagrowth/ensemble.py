"""Replicate ensembles and goodness-of-fit against exact/analytic laws.

Replicates are embarrassingly parallel; every replicate draws its
uniforms from an independent child of SeedSequence(config.seed), so the
aggregate is a pure function of (config, replicates) no matter how many
workers run it. Aggregation is an integer count merge in replicate
order.
"""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats as sps

from .chain import ChainParams, MixtureDistribution, network_distribution
from .errors import ConfigurationError
from .graph import RunConfig, generate_from_uniforms
from .limits import steady_state, tail_exponent

CHI2_LEVEL = 0.999


def _replicate_counts(args):
    config, child = args
    rng = np.random.default_rng(child)
    uniforms = rng.random((config.t, config.m))
    state = generate_from_uniforms(config, uniforms)
    return np.bincount(state.degree)


@dataclass
class EnsembleStats:
    """Pooled degree counts over replicates, with between-replicate errors."""

    config: RunConfig
    rep_counts: np.ndarray  # (R, kmax+1)

    @property
    def replicates(self) -> int:
        return self.rep_counts.shape[0]

    @property
    def counts(self) -> np.ndarray:
        return self.rep_counts.sum(axis=0)

    @property
    def num_vertices(self) -> int:
        return self.config.m0 + self.config.t

    @property
    def freq(self) -> np.ndarray:
        return self.counts / (self.replicates * self.num_vertices)

    @property
    def se(self) -> np.ndarray:
        """Standard error of the frequency, from between-replicate variance."""
        r = self.replicates
        if r < 2:
            return np.zeros(self.rep_counts.shape[1])
        rep_freq = self.rep_counts / self.num_vertices
        return np.sqrt(rep_freq.var(axis=0, ddof=1) / r)


def run_replicates(config: RunConfig, threads: int = 1) -> EnsembleStats:
    """Generate config.replicates independent graphs and pool degree counts."""
    children = np.random.SeedSequence(config.seed).spawn(config.replicates)
    jobs = [(config, child) for child in children]
    if threads <= 1 or config.replicates == 1:
        per_rep = [_replicate_counts(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            per_rep = list(pool.map(_replicate_counts, jobs, chunksize=8))
    width = max(len(c) for c in per_rep)
    rep_counts = np.zeros((config.replicates, width), dtype=np.int64)
    for r, c in enumerate(per_rep):
        rep_counts[r, : len(c)] = c
    return EnsembleStats(config=config, rep_counts=rep_counts)


@dataclass
class FitReport:
    """Chi-square and tail diagnostics of an ensemble against a reference."""

    chi2: float
    dof: int
    threshold: float
    passed: bool
    exponent: float
    max_gap: float
    rel_gaps: np.ndarray = field(default_factory=lambda: np.empty(0))
    inconclusive: bool = False

    def as_dict(self) -> dict:
        return {
            "chi2": None if np.isnan(self.chi2) else float(self.chi2),
            "dof": int(self.dof),
            "threshold": None if np.isnan(self.threshold) else float(self.threshold),
            "pass": bool(self.passed),
            "exponent": float(self.exponent),
            "max_gap": float(self.max_gap),
            "inconclusive": bool(self.inconclusive),
        }


def _merge_cells(observed: np.ndarray, expected: np.ndarray, min_expected: float = 5.0):
    """Group adjacent cells until each group's expectation reaches the floor.

    A trailing underfull group is folded into the previous one. Returns
    (obs_groups, exp_groups).
    """
    obs_g, exp_g = [], []
    o_acc = e_acc = 0.0
    for o, e in zip(observed, expected):
        o_acc += o
        e_acc += e
        if e_acc >= min_expected:
            obs_g.append(o_acc)
            exp_g.append(e_acc)
            o_acc = e_acc = 0.0
    if e_acc > 0 or o_acc > 0:
        if obs_g:
            obs_g[-1] += o_acc
            exp_g[-1] += e_acc
        else:
            obs_g.append(o_acc)
            exp_g.append(e_acc)
    return np.array(obs_g), np.array(exp_g)


def _exponent_window(stats: EnsembleStats, lo: int, hi: int) -> float:
    freq = stats.freq
    ks = np.arange(len(freq))
    sel = (ks >= lo) & (ks <= hi) & (freq > 0)
    if sel.sum() < 3:
        return float("nan")
    return tail_exponent(ks[sel], freq[sel])


def compare_to_exact(stats: EnsembleStats, exact: MixtureDistribution,
                     level: float = CHI2_LEVEL) -> FitReport:
    """Chi-square of pooled counts against the exact finite-t law.

    Cells follow the expected-count >= 5 rule with adjacent merging; the
    report flags failure when the statistic exceeds the `level` quantile
    of the chi-square law with the matching degrees of freedom.
    """
    cfg = stats.config
    if (cfg.m, cfg.m0, cfg.t) != (exact.params.m, exact.params.m0, exact.time):
        raise ConfigurationError("ensemble and exact law parameters differ")
    n_obs = stats.replicates * stats.num_vertices
    width = max(len(stats.counts), len(exact.probs_full))
    observed = np.zeros(width)
    observed[: len(stats.counts)] = stats.counts
    expected = np.zeros(width)
    expected[: len(exact.probs_full)] = n_obs * exact.probs_full
    lo = int(np.nonzero(expected > 0)[0][0])
    obs_g, exp_g = _merge_cells(observed[lo:], expected[lo:])
    chi2 = float(((obs_g - exp_g) ** 2 / exp_g).sum())
    dof = len(obs_g) - 1
    threshold = float(sps.chi2.ppf(level, dof))
    m = cfg.m
    freq = stats.freq
    upto = min(len(freq) - 1, len(exact.probs_full) - 1)
    gaps = np.abs(freq[m: upto + 1] - exact.probs_full[m: upto + 1])
    return FitReport(
        chi2=chi2, dof=dof, threshold=threshold, passed=chi2 <= threshold,
        exponent=_exponent_window(stats, 5 * m, 50 * m),
        max_gap=float(gaps.max()) if len(gaps) else 0.0,
    )


def compare_to_limit(stats: EnsembleStats, m: int, k_range: tuple,
                     exponent_range: tuple = (5, 50)) -> FitReport:
    """Relative gaps of empirical frequencies vs the limiting law.

    Precondition check: the exact finite-t law must already sit closer to
    the limit than the ensemble's statistical resolution over k_range;
    when it does not, the report is flagged inconclusive rather than
    failed.
    """
    cfg = stats.config
    lo, hi = k_range
    if lo < m:
        raise ConfigurationError("k_range must start at or above m")
    params = ChainParams(m=m, m0=cfg.m0)
    exact = network_distribution(cfg.t, params, k_max=hi)
    ks = np.arange(lo, hi + 1)
    limit = np.array([steady_state(int(k), m) for k in ks])
    exact_window = exact.probs_full[lo: hi + 1]
    se = stats.se
    resolution = np.array([3 * se[k] if k < len(se) else 0.0 for k in ks])
    resolution = np.maximum(resolution, 1e-4)
    inconclusive = bool(np.any(np.abs(exact_window - limit) > resolution))
    freq = stats.freq
    emp = np.array([freq[k] if k < len(freq) else 0.0 for k in ks])
    rel_gaps = np.abs(emp - limit) / limit
    exponent = _exponent_window(stats, *exponent_range)
    return FitReport(
        chi2=float("nan"), dof=0, threshold=float("nan"),
        passed=bool(np.all(rel_gaps < 0.05)) and not inconclusive,
        exponent=exponent, max_gap=float(rel_gaps.max()),
        rel_gaps=rel_gaps, inconclusive=inconclusive,
    )


def write_stats_csv(stats: EnsembleStats, exact: MixtureDistribution,
                    path, header: str = "") -> None:
    """CSV 'k,count,freq,se,p_exact,p_limit' over the exact law's window."""
    m = stats.config.m
    counts, freq, se = stats.counts, stats.freq, stats.se
    with open(path, "w") as fh:
        if header:
            fh.write(header + "\n")
        fh.write("k,count,freq,se,p_exact,p_limit\n")
        for k, p in zip(exact.k, exact.probs):
            k = int(k)
            c = int(counts[k]) if k < len(counts) else 0
            f = float(freq[k]) if k < len(freq) else 0.0
            s = float(se[k]) if k < len(se) else 0.0
            pl = steady_state(k, m) if k >= m else 0.0
            fh.write(f"{k},{c},{f:.12g},{s:.12g},{p:.12g},{pl:.12g}\n")


def write_report_json(report: FitReport, path, meta: dict | None = None) -> None:
    obj = report.as_dict()
    if meta:
        obj.update(meta)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")

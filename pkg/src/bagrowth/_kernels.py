"""Hot inner loops: graph growth and the degree-law forward roll.

Kernels are numba-compiled when numba imports cleanly. Setting the
environment variable ``BAGROWTH_DISABLE_NUMBA=1`` forces the pure
NumPy/Python path instead. Both paths consume the same pre-drawn
uniform variates and are arithmetically identical, so a fixed seed
gives the same graph (and the same distribution roll) on either path.
"""

import os

import numpy as np


def _env_disabled() -> bool:
    return os.environ.get("BAGROWTH_DISABLE_NUMBA", "").strip().lower() in (
        "1", "true", "yes", "on",
    )


NUMBA_ENABLED = False
if not _env_disabled():
    try:
        from numba import njit as _njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable
        pass


def _grow_impl(m0, m, t, uniforms, sequential):
    """Grow a graph from K_{m0} for t steps.

    uniforms has shape (t, m); each step consumes exactly m variates, so
    the jitted and plain paths stay in lockstep. Vertices are internal
    indices 0..m0+t-1 (0..m0-1 initial). Returns (edges, degree) with
    edges in insertion order.
    """
    n_total = m0 + t
    e_init = m0 * (m0 - 1) // 2
    e_total = e_init + m * t
    edges = np.empty((e_total, 2), np.int64)
    degree = np.zeros(n_total, np.int64)
    # One slot per edge endpoint: uniform index = degree-proportional vertex.
    endpoints = np.empty(2 * e_total, np.int64)
    # Half-edge adjacency as linked lists (numba-friendly, O(1) append).
    half_target = np.empty(2 * e_total, np.int64)
    half_next = np.empty(2 * e_total, np.int64)
    head = np.full(n_total, -1, np.int64)
    n_edges = 0

    for i in range(m0):
        for j in range(i + 1, m0):
            edges[n_edges, 0] = i
            edges[n_edges, 1] = j
            endpoints[2 * n_edges] = i
            endpoints[2 * n_edges + 1] = j
            half_target[2 * n_edges] = j
            half_next[2 * n_edges] = head[i]
            head[i] = 2 * n_edges
            half_target[2 * n_edges + 1] = i
            half_next[2 * n_edges + 1] = head[j]
            head[j] = 2 * n_edges + 1
            degree[i] += 1
            degree[j] += 1
            n_edges += 1

    targets = np.empty(m, np.int64)
    buf = np.empty(n_total, np.int64)
    w = np.empty(n_total, np.float64)

    for step in range(t):
        new = m0 + step
        n_exist = new
        if sequential:
            # m draws proportional to frozen degrees, without replacement.
            tot = 0.0
            for v in range(n_exist):
                w[v] = degree[v]
                tot += w[v]
            for j in range(m):
                u = uniforms[step, j] * tot
                acc = 0.0
                pick = -1
                last_pos = -1
                for v in range(n_exist):
                    wv = w[v]
                    if wv > 0.0:
                        last_pos = v
                        acc += wv
                        if u < acc:
                            pick = v
                            break
                if pick < 0:
                    pick = last_pos
                targets[j] = pick
                tot -= w[pick]
                w[pick] = 0.0
        else:
            # First endpoint preferential via the endpoint list, then m-1
            # distinct neighbors of it, uniform (partial Fisher-Yates).
            tdeg = m0 * (m0 - 1) + 2 * m * step
            idx = int(uniforms[step, 0] * tdeg)
            if idx >= tdeg:
                idx = tdeg - 1
            first = endpoints[idx]
            cnt = 0
            e = head[first]
            while e != -1:
                buf[cnt] = half_target[e]
                cnt += 1
                e = half_next[e]
            for j in range(m - 1):
                r = j + int(uniforms[step, j + 1] * (cnt - j))
                if r >= cnt:
                    r = cnt - 1
                tmp = buf[j]
                buf[j] = buf[r]
                buf[r] = tmp
            targets[0] = first
            for j in range(m - 1):
                targets[j + 1] = buf[j]

        for j in range(m):
            tgt = targets[j]
            edges[n_edges, 0] = new
            edges[n_edges, 1] = tgt
            endpoints[2 * n_edges] = new
            endpoints[2 * n_edges + 1] = tgt
            half_target[2 * n_edges] = tgt
            half_next[2 * n_edges] = head[new]
            head[new] = 2 * n_edges
            half_target[2 * n_edges + 1] = new
            half_next[2 * n_edges + 1] = head[tgt]
            head[tgt] = 2 * n_edges + 1
            degree[new] += 1
            degree[tgt] += 1
            n_edges += 1

    return edges, degree


def _mixture_roll_loops(m, m0, d, t):
    """Roll the vertex-summed degree-law recursion forward to time t.

    Returns (s_new, s_init): sums of per-vertex laws over the t new
    vertices and the m0 initial vertices. Network law = (s_new+s_init)/(t+m0).
    """
    kcap = max(m, m0 - 1) + t
    s_new = np.zeros(kcap + 1, np.float64)
    s_init = np.zeros(kcap + 1, np.float64)
    s_init[m0 - 1] = float(m0)
    for step in range(t):
        den = 2.0 * step + d
        top = min(max(m, m0 - 1) + step + 1, kcap)
        for k in range(top, 0, -1):
            up_prev = (k - 1) / den
            stay = 1.0 - k / den
            s_new[k] = s_new[k] * stay + s_new[k - 1] * up_prev
            s_init[k] = s_init[k] * stay + s_init[k - 1] * up_prev
        s_new[m] += 1.0
    return s_new, s_init


def _mixture_roll_numpy(m, m0, d, t):
    """Vectorized twin of _mixture_roll_loops (same arithmetic per entry)."""
    kcap = max(m, m0 - 1) + t
    ks = np.arange(kcap + 1, dtype=np.float64)
    s_new = np.zeros(kcap + 1)
    s_init = np.zeros(kcap + 1)
    s_init[m0 - 1] = float(m0)
    for step in range(t):
        den = 2.0 * step + d
        hi = min(max(m, m0 - 1) + step + 2, kcap + 1)
        up = ks[:hi] / den
        stay = 1.0 - up
        for arr in (s_new, s_init):
            seg = arr[:hi]
            nxt = seg * stay
            nxt[1:] += seg[:-1] * up[:-1]
            arr[:hi] = nxt
        s_new[m] += 1.0
    return s_new, s_init


if NUMBA_ENABLED:
    grow = _njit(cache=True)(_grow_impl)
    mixture_roll = _njit(cache=True)(_mixture_roll_loops)
else:
    grow = _grow_impl
    mixture_roll = _mixture_roll_numpy

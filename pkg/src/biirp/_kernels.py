"""Compiled routing kernels: savings construction, 2-Opt and per-horizon costing.

Everything here works on plain arrays so the same code runs with or without
numba. Node 0 is the depot; customer ``i`` is node ``i``.
"""

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


CAPACITY_TOL = 1e-9
IMPROVE_EPS = 1e-12


@njit(cache=True)
def route_cost(stops, d):
    m = stops.shape[0]
    if m == 0:
        return 0.0
    c = d[0, stops[0]]
    for k in range(m - 1):
        c += d[stops[k], stops[k + 1]]
    c += d[stops[m - 1], 0]
    return c


@njit(cache=True)
def clarke_wright(nodes, qty, d, Q):
    """Parallel savings. ``nodes`` must be sorted ascending.

    Returns ``(flat, offsets)``: route ``r`` is ``flat[offsets[r]:offsets[r + 1]]``.
    """
    m = nodes.shape[0]
    buf = np.empty((m, m), np.int64)
    length = np.ones(m, np.int64)
    load = qty.copy()
    route_of = np.arange(m)
    for k in range(m):
        buf[k, 0] = k

    npairs = m * (m - 1) // 2
    sav = np.empty(npairs)
    pa = np.empty(npairs, np.int64)
    pb = np.empty(npairs, np.int64)
    p = 0
    for a in range(m):
        for b in range(a + 1, m):
            na = nodes[a]
            nb = nodes[b]
            sav[p] = d[0, na] + d[0, nb] - d[na, nb]
            pa[p] = a
            pb[p] = b
            p += 1
    # stable sort keeps lexicographic pair order among equal savings
    order = np.argsort(-sav, kind="mergesort")

    for k in range(npairs):
        e = order[k]
        if sav[e] <= 0.0:
            break
        a = pa[e]
        b = pb[e]
        ra = route_of[a]
        rb = route_of[b]
        if ra == rb:
            continue
        if load[ra] + load[rb] > Q + CAPACITY_TOL:
            continue
        la = length[ra]
        lb = length[rb]
        a_tail = buf[ra, la - 1] == a
        a_head = buf[ra, 0] == a
        b_head = buf[rb, 0] == b
        b_tail = buf[rb, lb - 1] == b
        if not (a_tail or a_head) or not (b_head or b_tail):
            continue
        if not a_tail:
            buf[ra, :la] = buf[ra, :la][::-1].copy()
        if not b_head:
            buf[rb, :lb] = buf[rb, :lb][::-1].copy()
        buf[ra, la:la + lb] = buf[rb, :lb]
        for x in range(lb):
            route_of[buf[rb, x]] = ra
        length[ra] = la + lb
        load[ra] = load[ra] + load[rb]
        length[rb] = 0

    nroutes = 0
    for r in range(m):
        if length[r] > 0:
            nroutes += 1
    offsets = np.zeros(nroutes + 1, np.int64)
    flat = np.empty(m, np.int64)
    pos = 0
    r_out = 0
    for r in range(m):
        if length[r] > 0:
            for x in range(length[r]):
                flat[pos] = nodes[buf[r, x]]
                pos += 1
            r_out += 1
            offsets[r_out] = pos
    return flat, offsets


@njit(cache=True)
def two_opt(stops, d):
    """Best-improvement 2-Opt on the depot-to-depot tour; returns the improved stop order."""
    m = stops.shape[0]
    tour = np.empty(m + 2, np.int64)
    tour[0] = 0
    tour[1:m + 1] = stops
    tour[m + 1] = 0
    while True:
        best = -IMPROVE_EPS
        bi = -1
        bj = -1
        for i in range(1, m):
            a = tour[i - 1]
            b = tour[i]
            dab = d[a, b]
            for j in range(i + 1, m + 1):
                c = tour[j]
                e = tour[j + 1]
                delta = d[a, c] + d[b, e] - dab - d[c, e]
                if delta < best:
                    best = delta
                    bi = i
                    bj = j
        if bi < 0:
            break
        tour[bi:bj + 1] = tour[bi:bj + 1][::-1].copy()
    return tour[1:m + 1].copy()


@njit(cache=True)
def day_cost(nodes, qty, d, Q):
    if nodes.shape[0] == 0:
        return 0.0
    flat, offsets = clarke_wright(nodes, qty, d, Q)
    total = 0.0
    for r in range(offsets.shape[0] - 1):
        improved = two_opt(flat[offsets[r]:offsets[r + 1]], d)
        total += route_cost(improved, d)
    return total


@njit(cache=True)
def horizon_cost(qmat, d, Q):
    """Routing cost summed over dates in date order. ``qmat`` is ``(n, H)``."""
    n, H = qmat.shape
    nodes = np.empty(n, np.int64)
    qty = np.empty(n)
    total = 0.0
    for t in range(H):
        m = 0
        for i in range(n):
            if qmat[i, t] > 0.0:
                nodes[m] = i + 1
                qty[m] = qmat[i, t]
                m += 1
        total += day_cost(nodes[:m].copy(), qty[:m].copy(), d, Q)
    return total

"""Direct-loop MISD reference used to check the vectorized implementation.

Deliberately written with explicit loops over the defining sums and no
imports from hawkesmisd.
"""


def bin_of(x, edges, open_ended=False):
    for b in range(len(edges) - 1):
        if edges[b] <= x < edges[b + 1]:
            return b
    if open_ended and x >= edges[-1]:
        return len(edges) - 2
    return None


def initial_p(n):
    return [[1.0 / (i + 1) if j <= i else 0.0 for j in range(n)] for i in range(n)]


def m_step(p, times, marks, T, time_edges, mark_edges):
    n = len(times)
    mu = sum(p[i][i] for i in range(n)) / T

    eta = 0.0
    for i in range(n):
        for j in range(i):
            eta += p[i][j]

    g = [0.0] * (len(time_edges) - 1)
    for i in range(n):
        for j in range(i):
            b = bin_of(times[i] - times[j], time_edges)
            if b is not None:
                g[b] += p[i][j]
    for b in range(len(g)):
        width = time_edges[b + 1] - time_edges[b]
        g[b] = g[b] / (width * eta) if eta > 0 else 0.0

    k = [0.0] * (len(mark_edges) - 1)
    counts = [0] * len(k)
    for j in range(n):
        b = bin_of(marks[j], mark_edges, open_ended=True)
        counts[b] += 1
        for i in range(j + 1, n):
            k[b] += p[i][j]
    k = [k[b] / counts[b] for b in range(len(k))]
    return mu, g, k


def e_step(mu, g, k, times, marks, time_edges, mark_edges):
    n = len(times)
    p = [[0.0] * n for _ in range(n)]
    for i in range(n):
        contrib = []
        for j in range(i):
            gb = bin_of(times[i] - times[j], time_edges)
            kb = bin_of(marks[j], mark_edges, open_ended=True)
            contrib.append((g[gb] if gb is not None else 0.0) * k[kb])
        lam = mu + sum(contrib)
        for j in range(i):
            p[i][j] = contrib[j] / lam
        p[i][i] = mu / lam
    return p

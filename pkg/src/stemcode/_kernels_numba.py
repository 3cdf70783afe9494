"""Numba kernels. Semantics must match ``_kernels_numpy`` exactly."""

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _stem_idx(X):
    m, n = X.shape
    out = np.empty((m, n - 1), dtype=np.uint8)
    for i in range(m):
        for t in range(n - 1):
            out[i, t] = 4 * X[i, t] + X[i, t + 1]
    return out


@njit(cache=True)
def similarity_matrix(wflat, X, Y):
    sx, sy = _stem_idx(X), _stem_idx(Y)
    m, L = sx.shape
    k = sy.shape[0]
    wx = np.empty((m, L))
    for i in range(m):
        for t in range(L):
            wx[i, t] = wflat[sx[i, t]]
    out = np.zeros((m, k))
    for i in range(m):
        for j in range(k):
            s = 0.0
            # branchless: the comparison compiles to a select
            for t in range(L):
                s += wx[i, t] * (sx[i, t] == sy[j, t])
            out[i, j] = s
    return out


@njit(cache=True)
def self_similarity(wflat, X):
    m, n = X.shape
    out = np.zeros(m)
    for i in range(m):
        s = 0.0
        for t in range(n - 1):
            s += wflat[4 * X[i, t] + X[i, t + 1]]
        out[i] = s
    return out


@njit(cache=True)
def compatibility(wflat, X, D, tol):
    m, n = X.shape
    selfs = self_similarity(wflat, X)
    ok = np.zeros((m, m), dtype=np.bool_)
    lim = D - tol
    for i in range(m):
        for j in range(i + 1, m):
            s = 0.0
            for t in range(n - 1):
                if X[i, t] == X[j, t] and X[i, t + 1] == X[j, t + 1]:
                    s += wflat[4 * X[i, t] + X[i, t + 1]]
            if selfs[i] - s >= lim and selfs[j] - s >= lim:
                ok[i, j] = True
                ok[j, i] = True
    return ok


@njit(cache=True)
def project_simplex(v):
    u = np.sort(v)[::-1]
    css = 0.0
    theta = 0.0
    for r in range(u.shape[0]):
        css += u[r]
        t = (css - 1.0) / (r + 1)
        if u[r] - t > 0:
            theta = t
    out = v - theta
    for i in range(out.shape[0]):
        if out[i] < 0.0:
            out[i] = 0.0
    return out


@njit(cache=True)
def project_feasible(v, Q, tol, max_iter):
    x = v.copy()
    q = np.zeros_like(v)
    for it in range(1, max_iter + 1):
        y = x - Q @ x
        z = y + q
        xn = project_simplex(z)
        q = z - xn
        delta = np.max(np.abs(xn - x))
        x = xn
        if delta < tol:
            return x, it
    return x, -1


@njit(cache=True)
def ascend(wflat, p0, Q, step, tol, proj_tol, max_iter, proj_max_iter):
    p = p0.copy()
    residual = np.inf
    for it in range(max_iter + 1):
        g = wflat * (1.0 - 2.0 * p)
        pn, inner = project_feasible(p + step * g, Q, proj_tol, proj_max_iter)
        if inner < 0:
            return p, it, residual, 2
        residual = np.max(np.abs(pn - p)) / step
        if residual <= tol:
            return p, it, residual, 0
        p = pn
    return p, max_iter, residual, 1


@njit(cache=True)
def sample_chains(init_cdf, trans_cdf, U):
    trials, n = U.shape
    out = np.empty((trials, n), dtype=np.uint8)
    for i in range(trials):
        s = 0
        while s < 3 and init_cdf[s] <= U[i, 0]:
            s += 1
        out[i, 0] = s
        for t in range(1, n):
            nxt = 0
            while nxt < 3 and trans_cdf[s, nxt] <= U[i, t]:
                nxt += 1
            s = nxt
            out[i, t] = s
    return out


@njit(cache=True)
def _sim(wflat, a, b):
    s = 0.0
    for t in range(a.shape[0] - 1):
        if a[t] == b[t] and a[t + 1] == b[t + 1]:
            s += wflat[4 * a[t] + a[t + 1]]
    return s


@njit(cache=True)
def _same(a, b):
    for t in range(a.shape[0]):
        if a[t] != b[t]:
            return False
    return True


@njit(cache=True)
def greedy_filter(wflat, samples, D, tol):
    trials, n = samples.shape
    lim = D - tol
    accepted = np.zeros(trials, dtype=np.bool_)
    code = np.empty((2 * trials, n), dtype=np.uint8)
    selfs = np.empty(2 * trials)
    size = 0
    rc = np.empty(n, dtype=np.uint8)
    for i in range(trials):
        x = samples[i]
        for t in range(n):
            rc[t] = 3 - x[n - 1 - t]
        if _same(x, rc):
            continue
        sxx = _sim(wflat, x, x)
        srr = _sim(wflat, rc, rc)
        sxr = _sim(wflat, x, rc)
        if sxx - sxr < lim or srr - sxr < lim:
            continue
        good = True
        for j in range(size):
            c = code[j]
            if _same(c, x) or _same(c, rc):
                good = False
                break
            sxc = _sim(wflat, x, c)
            src = _sim(wflat, rc, c)
            if (sxx - sxc < lim or selfs[j] - sxc < lim
                    or srr - src < lim or selfs[j] - src < lim):
                good = False
                break
        if good:
            code[size] = x
            selfs[size] = sxx
            code[size + 1] = rc
            selfs[size + 1] = srr
            size += 2
            accepted[i] = True
    return accepted

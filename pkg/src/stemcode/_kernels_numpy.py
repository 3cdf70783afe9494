"""Pure-numpy kernels, used when numba is unavailable or disabled."""

import numpy as np

NAME = "numpy"

_CHUNK = 1 << 22  # elements per broadcast block


def _stem_idx(X):
    X = X.astype(np.int64)
    return 4 * X[:, :-1] + X[:, 1:]


def similarity_matrix(wflat, X, Y):
    sx, sy = _stem_idx(X), _stem_idx(Y)
    wx = wflat[sx]
    m, k, L = sx.shape[0], sy.shape[0], sx.shape[1]
    out = np.zeros((m, k))
    rows = max(1, _CHUNK // max(1, k * L))
    for lo in range(0, m, rows):
        hi = min(m, lo + rows)
        match = sx[lo:hi, None, :] == sy[None, :, :]
        out[lo:hi] = np.einsum("ikt,it->ik", match, wx[lo:hi])
    return out


def self_similarity(wflat, X):
    return wflat[_stem_idx(X)].sum(axis=1)


def compatibility(wflat, X, D, tol):
    S = similarity_matrix(wflat, X, X)
    selfs = np.diag(S).copy()
    dist = selfs[:, None] - S
    lim = D - tol
    ok = (dist >= lim) & (dist.T >= lim)
    np.fill_diagonal(ok, False)
    return ok


def project_simplex(v):
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ts = css / np.arange(1, v.shape[0] + 1)
    # same tie rule as the loop version: last r with u[r] > t_r
    r = np.nonzero(u - ts > 0)[0][-1]
    return np.maximum(v - ts[r], 0.0)


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


def sample_chains(init_cdf, trans_cdf, U):
    trials, n = U.shape
    out = np.empty((trials, n), dtype=np.uint8)
    s = np.minimum((init_cdf[None, :3] <= U[:, :1]).sum(axis=1), 3)
    out[:, 0] = s
    for t in range(1, n):
        s = np.minimum((trans_cdf[s, :3] <= U[:, t:t + 1]).sum(axis=1), 3)
        out[:, t] = s
    return out


def greedy_filter(wflat, samples, D, tol):
    trials, n = samples.shape
    lim = D - tol
    accepted = np.zeros(trials, dtype=bool)
    rcs = (3 - samples[:, ::-1]).astype(np.uint8)
    sx_all = _stem_idx(samples)
    sr_all = _stem_idx(rcs)
    code_stems = np.empty((2 * trials, n - 1), dtype=np.int64)
    code_rows = np.empty((2 * trials, n), dtype=np.uint8)
    selfs = np.empty(2 * trials)
    size = 0
    for i in range(trials):
        x, rc = samples[i], rcs[i]
        if np.array_equal(x, rc):
            continue
        sx, sr = sx_all[i], sr_all[i]
        wx, wr = wflat[sx], wflat[sr]
        sxx, srr = wx.sum(), wr.sum()
        sxr = wx[sx == sr].sum()
        if sxx - sxr < lim or srr - sxr < lim:
            continue
        if size:
            rows = code_rows[:size]
            if (rows == x).all(axis=1).any() or (rows == rc).all(axis=1).any():
                continue
            cs = code_stems[:size]
            sxc = ((cs == sx) * wx).sum(axis=1)
            src = ((cs == sr) * wr).sum(axis=1)
            sc = selfs[:size]
            if ((sxx - sxc < lim).any() or (sc - sxc < lim).any()
                    or (srr - src < lim).any() or (sc - src < lim).any()):
                continue
        code_rows[size], code_rows[size + 1] = x, rc
        code_stems[size], code_stems[size + 1] = sx, sr
        selfs[size], selfs[size + 1] = sxx, srr
        size += 2
        accepted[i] = True
    return accepted

"""Dense row reduction modulo a prime.

Two interchangeable implementations: a numba loop kernel and a vectorised
numpy kernel. ``rref_modp`` dispatches on ``TRUNSYM_DISABLE_JIT``. Entries
must lie in ``[0, p)`` with ``p < 2**31`` so products fit in int64.
"""
import numpy as np

from ._jit import HAVE_NUMBA, jit_requested, njit

MAX_PRIME = 2**31


@njit(cache=True)
def _inv_mod(a, p):
    # extended Euclid; a is nonzero mod p
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    if t < 0:
        t += p
    return t


@njit(cache=True)
def _rref_modp_loops(m, p):
    nrows, ncols = m.shape
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    prow = 0
    for col in range(ncols):
        if prow == nrows:
            break
        sel = -1
        for i in range(prow, nrows):
            if m[i, col] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != prow:
            for j in range(col, ncols):
                tmp = m[sel, j]
                m[sel, j] = m[prow, j]
                m[prow, j] = tmp
        inv = _inv_mod(m[prow, col], p)
        for j in range(col, ncols):
            m[prow, j] = (m[prow, j] * inv) % p
        for i in range(nrows):
            if i == prow:
                continue
            f = m[i, col]
            if f == 0:
                continue
            for j in range(col, ncols):
                m[i, j] = (m[i, j] - f * m[prow, j]) % p
        pivots[prow] = col
        prow += 1
    return pivots[:prow]


def _rref_modp_vectorised(m, p):
    nrows, ncols = m.shape
    pivots = []
    prow = 0
    for col in range(ncols):
        if prow == nrows:
            break
        nz = np.flatnonzero(m[prow:, col])
        if nz.size == 0:
            continue
        sel = prow + int(nz[0])
        if sel != prow:
            m[[prow, sel]] = m[[sel, prow]]
        inv = pow(int(m[prow, col]), -1, p)
        m[prow, col:] = (m[prow, col:] * inv) % p
        factors = m[:, col].copy()
        factors[prow] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            m[hit, col:] = (m[hit, col:] - np.outer(factors[hit], m[prow, col:])) % p
        pivots.append(col)
        prow += 1
    return np.asarray(pivots, dtype=np.int64)


def rref_modp(m: np.ndarray, p: int, jit: bool | None = None):
    """Reduced row echelon form of ``m`` over F_p.

    Returns ``(reduced, pivot_columns)``; ``reduced`` keeps the input shape
    with the zero rows at the bottom. The input array is not modified.
    """
    if not 2 <= p < MAX_PRIME:
        raise ValueError(f"prime {p} outside the supported kernel range")
    work = np.array(m, dtype=np.int64, copy=True) % p
    if work.ndim != 2:
        raise ValueError("expected a 2-d array")
    if work.size == 0:
        return work, np.empty(0, dtype=np.int64)
    if jit is None:
        jit = jit_requested()
    if jit and HAVE_NUMBA:
        pivots = _rref_modp_loops(work, p)
    else:
        pivots = _rref_modp_vectorised(work, p)
    return work, pivots

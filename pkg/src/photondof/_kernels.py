"""Permanent kernels behind the linear-optics simulator.

Two interchangeable backends compute batches of small complex permanents:

* a numba ``@njit`` Glynn/Gray-code loop (default when numba imports), and
* a vectorised numpy Ryser formula.

Set ``PHOTONDOF_DISABLE_NUMBA=1`` before import to force the numpy path.
Both backends stay importable so tests and the benchmark can compare them.
"""

import os

import numpy as np

_DISABLED = os.environ.get("PHOTONDOF_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional extra
    HAVE_NUMBA = False

USING_NUMBA = HAVE_NUMBA and not _DISABLED

# bytes of the (B, n, 2**n) Ryser intermediate allowed per chunk
_NUMPY_CHUNK_BYTES = 32 * 2**20


def _subset_tables(n):
    idx = np.arange(2**n)
    masks = ((idx[:, None] >> np.arange(n)) & 1).astype(np.float64)
    signs = np.where(masks.sum(axis=1) % 2 == 0, 1.0, -1.0)
    return masks, signs


def batch_permanents_numpy(mats):
    """Permanents of a stack of square matrices via Ryser's formula.

    Parameters
    ----------
    mats : ndarray, shape (B, n, n)

    Returns
    -------
    ndarray, shape (B,), complex
    """
    mats = np.asarray(mats, dtype=np.complex128)
    b, n = mats.shape[0], mats.shape[1]
    if n == 0:
        return np.ones(b, dtype=np.complex128)
    masks, signs = _subset_tables(n)
    out = np.empty(b, dtype=np.complex128)
    per_item = n * 2**n * 16
    step = max(1, _NUMPY_CHUNK_BYTES // per_item)
    for start in range(0, b, step):
        block = mats[start:start + step]
        row_sums = block @ masks.T  # (chunk, n, 2**n)
        out[start:start + step] = np.prod(row_sums, axis=1) @ signs
    if n % 2:
        out = -out
    return out


def _glynn_py(a, out, k):
    n = a.shape[0]
    if n == 0:
        out[k] = 1.0
        return
    col = np.empty(n, dtype=np.complex128)
    for j in range(n):
        s = 0j
        for i in range(n):
            s += a[i, j]
        col[j] = s
    delta = np.ones(n, dtype=np.int8)
    prod = 1.0 + 0j
    for j in range(n):
        prod *= col[j]
    total = prod
    sign = 1.0
    for g in range(1, 2 ** (n - 1)):
        # Gray code: flip the row given by the lowest set bit of g
        i = 1
        gg = g
        while gg & 1 == 0:
            gg >>= 1
            i += 1
        if delta[i] == 1:
            for j in range(n):
                col[j] -= 2.0 * a[i, j]
            delta[i] = -1
        else:
            for j in range(n):
                col[j] += 2.0 * a[i, j]
            delta[i] = 1
        sign = -sign
        prod = 1.0 + 0j
        for j in range(n):
            prod *= col[j]
        total += sign * prod
    out[k] = total / 2 ** (n - 1)


def _batch_glynn_py(mats):
    out = np.empty(mats.shape[0], dtype=np.complex128)
    for k in range(mats.shape[0]):
        _glynn_single(mats[k], out, k)
    return out


if HAVE_NUMBA:
    _glynn_single = njit(cache=True, nogil=True)(_glynn_py)
    _batch_glynn = njit(cache=True, nogil=True)(_batch_glynn_py)

    def batch_permanents_numba(mats):
        """Permanents of a stack of square matrices, Glynn formula under numba."""
        mats = np.ascontiguousarray(mats, dtype=np.complex128)
        return _batch_glynn(mats)
else:  # pragma: no cover
    _glynn_single = _glynn_py
    batch_permanents_numba = None


def batch_permanents(mats):
    """Dispatch to the active backend (see module docstring)."""
    if USING_NUMBA:
        return batch_permanents_numba(mats)
    return batch_permanents_numpy(mats)


def permanent(a):
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("permanent needs a square matrix")
    return complex(batch_permanents(a[None])[0])


def backend_name():
    return "numba" if USING_NUMBA else "numpy"

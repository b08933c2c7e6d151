"""Pure numpy implementation of the Doppler-sum kernel.

Same contract as the compiled ``_kernel.doppler_sums``: for every frequency
point, velocity nodes are accumulated in ascending index order.
"""
import numpy as np

_CHUNK = 8


def doppler_sums(K, rhs, proj, mask, delta0, slope, u, weights, num_threads=1):
    K = np.asarray(K, dtype=np.complex128)
    rhs = np.asarray(rhs, dtype=np.complex128)
    delta0 = np.asarray(delta0, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    n_u, n, _ = K.shape
    n_w = delta0.shape[0]
    out = np.zeros((weights.shape[0], n_w), dtype=np.complex128)
    status = np.zeros(n_w, dtype=np.intc)
    shift = np.diag(np.asarray(mask, dtype=np.float64))
    for start in range(0, n_u, _CHUNK):
        stop = min(start + _CHUNK, n_u)
        delta = delta0[None, :] - slope * np.asarray(u[start:stop])[:, None]
        M = K[start:stop, None] - 1j * delta[:, :, None, None] * shift
        b = np.broadcast_to(rhs[start:stop, None, :, None], M.shape[:-1] + (1,))
        try:
            X = np.linalg.solve(M, b)[..., 0]
        except np.linalg.LinAlgError:
            status[:] = 1
            return out, status
        f = X @ proj
        for j in range(stop - start):
            out += weights[:, start + j, None] * f[j]
    return out, status

"""Compiled running-product sweep; requires numba and p**(2M) < 2**62."""
import numpy as np
from numba import njit


@njit(cache=True)
def _sweep(p, pm, targets):
    out = np.empty(targets.shape[0], np.int64)
    acc = 1
    j = 1
    for idx in range(targets.shape[0]):
        n = targets[idx]
        # align j to a multiple of p boundary by hand, then run whole cycles
        while j < n and j % p != 0:
            acc = acc * j % pm
            j += 1
        while j + p <= n:
            for c in range(1, p):
                acc = acc * (j + c) % pm
            j += p
        while j < n:
            if j % p != 0:
                acc = acc * j % pm
            j += 1
        out[idx] = acc
    return out


def sweep_products(p, pm, targets):
    arr = np.asarray(targets, dtype=np.int64)
    return [int(v) for v in _sweep(np.int64(p), np.int64(pm), arr)]

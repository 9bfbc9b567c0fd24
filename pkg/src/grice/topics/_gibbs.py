"""Collapsed Gibbs sampling kernels.

Randomness comes from an explicit SplitMix64 stream so that runs are
bit-reproducible from the seed alone, independent of any library RNG
state. The numba kernel and the pure-Python mirror perform the same
floating-point operations in the same order; tests assert they agree
bit-for-bit, and ``train`` uses the compiled kernel when numba is present.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def deco(fn):
            return fn
        return deco if not (args and callable(args[0])) else args[0]


_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV53 = 1.0 / 9007199254740992.0  # 2**-53


def splitmix64(state: int) -> tuple[int, float]:
    """Advance the stream; returns (new_state, uniform in [0, 1))."""
    state = (state + _GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    z = z ^ (z >> 31)
    return state, (z >> 11) * _INV53


def init_assignments(n_tokens: int, k: int, seed: int) -> tuple[np.ndarray, int]:
    """Initial topic per token from the seed; returns (z, stream state)."""
    state = seed & _MASK64
    z = np.empty(n_tokens, dtype=np.int64)
    for i in range(n_tokens):
        state, u = splitmix64(state)
        t = int(u * k)
        z[i] = t if t < k else k - 1
    return z, state


@njit(cache=True)
def _train_numba(doc_of, word_of, doc_len, z, n_dk, n_kw, n_k,
                 alpha, beta, sweeps, burn_in, state, phi_acc, theta_acc, probs):
    K = n_kw.shape[0]
    V = n_kw.shape[1]
    D = n_dk.shape[0]
    W = z.shape[0]
    vbeta = V * beta
    kalpha = K * alpha
    gamma = np.uint64(0x9E3779B97F4A7C15)
    mix1 = np.uint64(0xBF58476D1CE4E5B9)
    mix2 = np.uint64(0x94D049BB133111EB)
    inv53 = 1.0 / 9007199254740992.0
    st = state
    for s in range(sweeps):
        for i in range(W):
            d = doc_of[i]
            w = word_of[i]
            k = z[i]
            n_dk[d, k] -= 1.0
            n_kw[k, w] -= 1.0
            n_k[k] -= 1.0
            acc = 0.0
            for t in range(K):
                p = (n_dk[d, t] + alpha) * (n_kw[t, w] + beta) / (n_k[t] + vbeta)
                probs[t] = p
                acc += p
            st = st + gamma
            zz = st
            zz = (zz ^ (zz >> np.uint64(30))) * mix1
            zz = (zz ^ (zz >> np.uint64(27))) * mix2
            zz = zz ^ (zz >> np.uint64(31))
            u = (zz >> np.uint64(11)) * inv53
            ru = u * acc
            run = 0.0
            nk = K - 1
            for t in range(K):
                run += probs[t]
                if ru < run:
                    nk = t
                    break
            z[i] = nk
            n_dk[d, nk] += 1.0
            n_kw[nk, w] += 1.0
            n_k[nk] += 1.0
        if s >= burn_in:
            for t in range(K):
                denom = n_k[t] + vbeta
                for w2 in range(V):
                    phi_acc[t, w2] += (n_kw[t, w2] + beta) / denom
            for d2 in range(D):
                denom = doc_len[d2] + kalpha
                for t in range(K):
                    theta_acc[d2, t] += (n_dk[d2, t] + alpha) / denom
    return st


def _train_python(doc_of, word_of, doc_len, z, n_dk, n_kw, n_k,
                  alpha, beta, sweeps, burn_in, state, phi_acc, theta_acc, probs):
    # mirror of _train_numba: same operations, same order, plain Python ints
    K = n_kw.shape[0]
    V = n_kw.shape[1]
    D = n_dk.shape[0]
    W = z.shape[0]
    vbeta = V * beta
    kalpha = K * alpha
    st = int(state) & _MASK64
    for s in range(sweeps):
        for i in range(W):
            d = doc_of[i]
            w = word_of[i]
            k = z[i]
            n_dk[d, k] -= 1.0
            n_kw[k, w] -= 1.0
            n_k[k] -= 1.0
            acc = 0.0
            for t in range(K):
                p = (n_dk[d, t] + alpha) * (n_kw[t, w] + beta) / (n_k[t] + vbeta)
                probs[t] = p
                acc += p
            st, u = splitmix64(st)
            ru = u * acc
            run = 0.0
            nk = K - 1
            for t in range(K):
                run += probs[t]
                if ru < run:
                    nk = t
                    break
            z[i] = nk
            n_dk[d, nk] += 1.0
            n_kw[nk, w] += 1.0
            n_k[nk] += 1.0
        if s >= burn_in:
            for t in range(K):
                denom = n_k[t] + vbeta
                for w2 in range(V):
                    phi_acc[t, w2] += (n_kw[t, w2] + beta) / denom
            for d2 in range(D):
                denom = doc_len[d2] + kalpha
                for t in range(K):
                    theta_acc[d2, t] += (n_dk[d2, t] + alpha) / denom
    return st


def run_train_loop(doc_of, word_of, doc_len, z, n_dk, n_kw, n_k,
                   alpha, beta, sweeps, burn_in, state, phi_acc, theta_acc,
                   *, use_numba: bool = True) -> int:
    probs = np.empty(n_kw.shape[0], dtype=np.float64)
    if use_numba and HAVE_NUMBA:
        out = _train_numba(doc_of, word_of, doc_len, z, n_dk, n_kw, n_k,
                           float(alpha), float(beta), sweeps, burn_in,
                           np.uint64(state & _MASK64), phi_acc, theta_acc, probs)
        return int(out) & _MASK64
    return _train_python(doc_of, word_of, doc_len, z, n_dk, n_kw, n_k,
                         float(alpha), float(beta), sweeps, burn_in,
                         state, phi_acc, theta_acc, probs)

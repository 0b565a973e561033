"""Structure constants of S^{4n+3} = Sp(n+1) x Sp(1) / Sp(n) x Sp(1).

The isotropy representation is m = m1 + m2 with m1 ~ sp(1) (dim 3, the
Hopf fibre direction) and m2 ~ H^n (dim 4n). For Q = -B_g, the Killing
form of g = sp(n+1) + sp(1), the non-zero bracket norms are

    [111] = 3 n^2 / ((n+2)(n+4)),   [122] = 6 n / ((n+2)(n+4)),

and the round metric has x1/x2 = n + 4. :func:`derive_structure` recomputes
both numerically from explicit matrices, so the closed forms can be checked.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .iteration import TwoSummandStructure


def jensen_structure(n: int) -> TwoSummandStructure:
    if n < 1:
        raise ValueError("jensen:n needs n >= 1")
    den = (n + 2) * (n + 4)
    return TwoSummandStructure(
        d1=3,
        d2=4 * n,
        t111=Fraction(3 * n * n, den),
        t122=Fraction(6 * n, den),
        name=f"jensen:{n}",
        round_ratio=Fraction(n + 4),
    )


def sp_basis(m: int) -> list[np.ndarray]:
    """Real basis of sp(m) inside gl(2m, C): [[A, B], [-conj(B), conj(A)]]."""
    zero = np.zeros((m, m), complex)

    def emb(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.block([[a, b], [-b.conj(), a.conj()]])

    out = []
    for i in range(m):
        for j in range(i, m):
            if i == j:
                a = zero.copy()
                a[i, i] = 1j
                out.append(emb(a, zero))
            else:
                a = zero.copy()
                a[i, j], a[j, i] = 1, -1
                out.append(emb(a, zero))
                a = zero.copy()
                a[i, j] = a[j, i] = 1j
                out.append(emb(a, zero))
    for i in range(m):
        for j in range(i, m):
            for unit in (1, 1j):
                b = zero.copy()
                b[i, j] = b[j, i] = unit
                out.append(emb(zero, b))
    return out


def _orthonormal(vectors: np.ndarray, q: np.ndarray) -> np.ndarray:
    gram = vectors.T @ q @ vectors
    chol = np.linalg.cholesky(gram)
    return vectors @ np.linalg.inv(chol).T


def _complement(constraints: np.ndarray, within: np.ndarray | None = None) -> np.ndarray:
    # columns spanning {v : constraints @ v = 0} (inside span(within) if given)
    a = constraints if within is None else constraints @ within
    _, s, vt = np.linalg.svd(a)
    rank = int(np.sum(s > 1e-10))
    null = vt[rank:].T
    return null if within is None else within @ null


def derive_structure(n: int) -> dict:
    """Numerical bracket computation for the Jensen space; returns floats.

    Keys: ``d1``, ``d2``, ``T`` (2x2x2 array of [ijk]), ``round_ratio`` (x1/x2
    of the metric induced from R^{4n+4} through the orbit map at a point).
    """
    big = n + 1
    d = 2 * big
    zd = np.zeros((d, d), complex)
    z2 = np.zeros((2, 2), complex)

    def pair(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.block([[x, np.zeros((d, 2))], [np.zeros((2, d)), y]])

    def last_block(y: np.ndarray) -> np.ndarray:
        out = np.zeros((d, d), complex)
        idx = [n, big + n]
        out[np.ix_(idx, idx)] = y
        return out

    basis = [pair(x, z2) for x in sp_basis(big)] + [pair(zd, y) for y in sp_basis(1)]
    flat = np.array([np.concatenate([b.real.ravel(), b.imag.ravel()]) for b in basis]).T

    def coords(mat: np.ndarray) -> np.ndarray:
        v = np.concatenate([mat.real.ravel(), mat.imag.ravel()])
        c, *_ = np.linalg.lstsq(flat, v, rcond=None)
        return c

    dim = len(basis)
    # struct[a, b] = coordinates of [e_a, e_b]
    struct = np.array([[coords(basis[a] @ basis[b] - basis[b] @ basis[a]) for b in range(dim)] for a in range(dim)])
    ads = [struct[a].T for a in range(dim)]
    q = -np.array([[np.trace(ads[a] @ ads[b]) for b in range(dim)] for a in range(dim)])

    k_elems = []
    for x in sp_basis(n):
        mat = np.zeros((d, d), complex)
        idx = list(range(n)) + list(range(big, big + n))
        mat[np.ix_(idx, idx)] = x
        k_elems.append(pair(mat, z2))
    k_elems += [pair(last_block(y), y) for y in sp_basis(1)]
    k = np.array([coords(e) for e in k_elems]).T

    sp1_pair = np.array(
        [coords(pair(last_block(y), z2)) for y in sp_basis(1)] + [coords(pair(zd, y)) for y in sp_basis(1)]
    ).T
    m1 = _orthonormal(_complement(k.T @ q, sp1_pair), q)
    m2 = _orthonormal(_complement(np.vstack([k.T @ q, m1.T @ q])), q)
    blocks = (m1, m2)

    def bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("abc,a,b->c", struct, x, y)

    T = np.zeros((2, 2, 2))
    for i in range(2):
        for j in range(2):
            for l in range(2):
                T[i, j, l] = sum(
                    float(np.sum((blocks[l].T @ q @ bracket(x, y)) ** 2)) for x in blocks[i].T for y in blocks[j].T
                )

    # orbit map X -> X.p at p = last quaternionic unit; (A, u) acts by v -> A v conj(u)
    p = np.zeros(d, complex)
    p[n] = 1

    def tangent(cv: np.ndarray) -> np.ndarray:
        mat = sum(c * b for c, b in zip(cv, basis))
        v = mat[:d, :d] @ p - last_block(mat[d:, d:]) @ p
        return np.concatenate([v.real, v.imag])

    def induced(block: np.ndarray) -> float:
        tm = np.array([tangent(v) for v in block.T])
        return float(np.mean(np.diag(tm @ tm.T)))

    return {
        "d1": m1.shape[1],
        "d2": m2.shape[1],
        "T": T,
        "round_ratio": induced(m1) / induced(m2),
    }

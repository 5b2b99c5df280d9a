"""Compiled inner loops for finite-field representation counting.

Field arithmetic goes through lookup tables ``(ADD, MUL, NEG, INV)`` so the
same code serves prime and prime-power fields.  A representation point is a
flat vector holding every arrow matrix row-major (``d_t x d_s``) at offset
``aoff[a]``; an endomorphism is a flat vector of the per-vertex blocks
(``d_i x d_i``) at offset ``voff[i]``.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def rref(A, nrows, ncols, ADD, MUL, NEG, INV, pivots):
    """In-place reduced row echelon form; returns the rank, pivot columns in ``pivots``."""
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        s = INV[A[r, c]]
        for j in range(c, ncols):
            A[r, j] = MUL[s, A[r, j]]
        for i in range(nrows):
            if i != r and A[i, c] != 0:
                f = NEG[A[i, c]]
                for j in range(c, ncols):
                    if A[r, j] != 0:
                        A[i, j] = ADD[A[i, j], MUL[f, A[r, j]]]
        pivots[r] = c
        r += 1
    return r


@njit(cache=True, nogil=True)
def _fill_constraints(C, pt, n_arrows, src, tgt, d, aoff, voff, ADD, NEG):
    # rows of C are the entries of phi_t M(a) - M(a) phi_s, indexed like the point vector
    C[:, :] = 0
    for a in range(n_arrows):
        s = src[a]
        t = tgt[a]
        ds = d[s]
        dt = d[t]
        base = aoff[a]
        for r in range(dt):
            for c in range(ds):
                row = base + r * ds + c
                for k in range(dt):
                    m = pt[base + k * ds + c]
                    if m != 0:
                        col = voff[t] + r * dt + k
                        C[row, col] = ADD[C[row, col], m]
                for k in range(ds):
                    m = pt[base + r * ds + k]
                    if m != 0:
                        col = voff[s] + k * ds + c
                        C[row, col] = ADD[C[row, col], NEG[m]]


@njit(cache=True, nogil=True)
def _nullspace(C, rank, ncols, pivots, NEG, out):
    """Write a nullspace basis of the reduced ``C`` into the rows of ``out``; returns its size."""
    is_piv = np.zeros(ncols, dtype=np.bool_)
    for i in range(rank):
        is_piv[pivots[i]] = True
    k = 0
    for f in range(ncols):
        if is_piv[f]:
            continue
        for j in range(ncols):
            out[k, j] = 0
        out[k, f] = 1
        for i in range(rank):
            out[k, pivots[i]] = NEG[C[i, f]]
        k += 1
    return k


@njit(cache=True, nogil=True)
def _block_mul(x, y, z, n, d, voff, ADD, MUL):
    for v in range(n):
        dv = d[v]
        o = voff[v]
        for r in range(dv):
            for c in range(dv):
                acc = 0
                for k in range(dv):
                    a = x[o + r * dv + k]
                    if a != 0:
                        b = y[o + k * dv + c]
                        if b != 0:
                            acc = ADD[acc, MUL[a, b]]
                z[o + r * dv + c] = acc


@njit(cache=True, nogil=True)
def _is_nilpotent(x, n, d, voff, ADD, MUL, w1, w2):
    # every block B_v satisfies B_v^{d_v} = 0
    E = x.shape[0]
    for j in range(E):
        w1[j] = x[j]
    dmax = 0
    for v in range(n):
        if d[v] > dmax:
            dmax = d[v]
    for _ in range(dmax - 1):
        _block_mul(w1, x, w2, n, d, voff, ADD, MUL)
        for j in range(E):
            w1[j] = w2[j]
    for j in range(E):
        if w1[j] != 0:
            return False
    return True


@njit(cache=True, nogil=True)
def split_local(basis, e, n, d, voff, q, ADD, MUL, NEG, INV):
    """Whether the algebra spanned by the rows of ``basis`` is local with residue field F_q.

    Each basis element must be ``lambda + nilpotent`` with ``lambda`` in F_q; the
    nilpotent parts must span a codimension-one subspace ``J`` with ``J J`` in
    ``J`` whose power chain reaches zero.  Then ``A = F_q 1 + J`` with ``J`` a
    nilpotent ideal, which is exactly locality with trivial residue extension.
    """
    E = basis.shape[1]
    w1 = np.zeros(E, dtype=np.int64)
    w2 = np.zeros(E, dtype=np.int64)
    x = np.zeros(E, dtype=np.int64)
    J = np.zeros((e, E), dtype=np.int64)
    for j in range(e):
        found = False
        for lam in range(q):
            for k in range(E):
                x[k] = basis[j, k]
            nl = NEG[lam]
            for v in range(n):
                for r in range(d[v]):
                    pos = voff[v] + r * d[v] + r
                    x[pos] = ADD[x[pos], nl]
            if _is_nilpotent(x, n, d, voff, ADD, MUL, w1, w2):
                found = True
                break
        if not found:
            return False
        for k in range(E):
            J[j, k] = x[k]
    piv = np.zeros(max(e, E) + 1, dtype=np.int64)
    rk = rref(J, e, E, ADD, MUL, NEG, INV, piv)
    if rk != e - 1:
        return False
    k = rk
    if k == 0:
        return True
    S = J[:k].copy()
    P = S.copy()
    first = True
    while True:
        rows = P.shape[0] * k
        prods = np.zeros((rows + k, E), dtype=np.int64)
        idx = 0
        for i in range(P.shape[0]):
            for j in range(k):
                _block_mul(P[i], S[j], prods[idx], n, d, voff, ADD, MUL)
                idx += 1
        # closure: products stay inside span(S)
        for j in range(k):
            for c in range(E):
                prods[rows + j, c] = S[j, c]
        piv2 = np.zeros(rows + k + E + 1, dtype=np.int64)
        if first:
            chk = prods.copy()
            if rref(chk, rows + k, E, ADD, MUL, NEG, INV, piv2) != k:
                return False
            first = False
        rk2 = rref(prods, rows, E, ADD, MUL, NEG, INV, piv2)
        if rk2 == 0:
            return True
        if rk2 >= P.shape[0]:
            return False
        P = prods[:rk2].copy()


@njit(cache=True, nogil=True)
def count_points_by_end_dim(q, ADD, MUL, NEG, INV, n, d, voff, E, src, tgt, aoff, N,
                            base_pt, free_pos, start, count):
    """Histogram over ``e = dim End`` of absolutely indecomposable points.

    Enumerates ``count`` points starting at mixed-radix index ``start`` over the
    coordinates ``free_pos`` (first coordinate least significant); the others
    keep their values from ``base_pt``.
    """
    hist = np.zeros(E + 1, dtype=np.int64)
    if count <= 0:
        return hist
    n_arrows = src.shape[0]
    F = free_pos.shape[0]
    pt = base_pt.copy()
    digits = np.zeros(F, dtype=np.int64)
    idx = start
    for j in range(F):
        digits[j] = idx % q
        idx //= q
        pt[free_pos[j]] = digits[j]
    nrows = max(N, 1)
    C = np.zeros((nrows, E), dtype=np.int64)
    pivots = np.zeros(E + 1, dtype=np.int64)
    basis = np.zeros((E, E), dtype=np.int64)
    for _ in range(count):
        _fill_constraints(C, pt, n_arrows, src, tgt, d, aoff, voff, ADD, NEG)
        rk = rref(C, N, E, ADD, MUL, NEG, INV, pivots)
        e = E - rk
        if e == 1:
            hist[1] += 1
        else:
            k = _nullspace(C, rk, E, pivots, NEG, basis)
            if split_local(basis[:k].copy(), k, n, d, voff, q, ADD, MUL, NEG, INV):
                hist[e] += 1
        # odometer step
        j = 0
        while j < F:
            digits[j] += 1
            if digits[j] < q:
                pt[free_pos[j]] = digits[j]
                break
            digits[j] = 0
            pt[free_pos[j]] = 0
            j += 1
    return hist


@njit(cache=True, nogil=True)
def count_mu_zero(q, ADD, MUL, NEG, n, d, voff, E, src, tgt, aoff, pairs, N, start, count):
    """Number of points of the doubled representation space with vanishing moment map.

    ``pairs[j] = (a, a*)`` lists the original arrows and their reverses.
    """
    total = 0
    if count <= 0:
        return total
    pt = np.zeros(max(N, 1), dtype=np.int64)
    digits = np.zeros(max(N, 1), dtype=np.int64)
    idx = start
    for j in range(N):
        digits[j] = idx % q
        idx //= q
        pt[j] = digits[j]
    mu = np.zeros(max(E, 1), dtype=np.int64)
    for _ in range(count):
        for j in range(E):
            mu[j] = 0
        for p in range(pairs.shape[0]):
            a = pairs[p, 0]
            b = pairs[p, 1]
            s = src[a]
            t = tgt[a]
            ds = d[s]
            dt = d[t]
            oa = aoff[a]
            ob = aoff[b]
            # + M(a) M(a*) at t(a)
            for r in range(dt):
                for c in range(dt):
                    acc = 0
                    for k in range(ds):
                        acc = ADD[acc, MUL[pt[oa + r * ds + k], pt[ob + k * dt + c]]]
                    pos = voff[t] + r * dt + c
                    mu[pos] = ADD[mu[pos], acc]
            # - M(a*) M(a) at s(a)
            for r in range(ds):
                for c in range(ds):
                    acc = 0
                    for k in range(dt):
                        acc = ADD[acc, MUL[pt[ob + r * dt + k], pt[oa + k * ds + c]]]
                    pos = voff[s] + r * ds + c
                    mu[pos] = ADD[mu[pos], NEG[acc]]
        ok = True
        for j in range(E):
            if mu[j] != 0:
                ok = False
                break
        if ok:
            total += 1
        j = 0
        while j < N:
            digits[j] += 1
            if digits[j] < q:
                pt[j] = digits[j]
                break
            digits[j] = 0
            pt[j] = 0
            j += 1
    return total

"""Exact integer matrix utilities: Smith normal form with unimodular
transforms, integer kernels, and linear solving / kernel / quotient
computations modulo m.  Everything returns plain Python ints inside numpy
arrays; computations run in int64 and transparently fall back to
arbitrary-precision objects if entries grow too large.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

_INT64_GUARD = 1 << 55


class LinAlgError(ValueError):
    pass


class _Overflow(Exception):
    pass


@dataclass
class SNF:
    d: np.ndarray  # diagonal matrix, d = u @ a @ v
    u: np.ndarray
    v: np.ndarray
    uinv: np.ndarray
    vinv: np.ndarray

    @property
    def diagonal(self) -> list[int]:
        k = min(self.d.shape)
        return [int(self.d[i, i]) for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def _snf_inplace(a: np.ndarray, transforms: bool, guard: int | None):
    n, m = a.shape
    if transforms:
        dt = a.dtype
        u = np.eye(n, dtype=dt)
        uinv = np.eye(n, dtype=dt)
        v = np.eye(m, dtype=dt)
        vinv = np.eye(m, dtype=dt)
    else:
        u = uinv = v = vinv = None

    def check():
        if guard is not None and a.size and abs(a).max() > guard:
            raise _Overflow

    def swap_rows(i, j):
        if i == j:
            return
        a[[i, j], :] = a[[j, i], :]
        if transforms:
            u[[i, j], :] = u[[j, i], :]
            uinv[:, [i, j]] = uinv[:, [j, i]]

    def swap_cols(i, j):
        if i == j:
            return
        a[:, [i, j]] = a[:, [j, i]]
        if transforms:
            v[:, [i, j]] = v[:, [j, i]]
            vinv[[i, j], :] = vinv[[j, i], :]

    def add_row(dst, src, q):
        # row dst += q * row src
        a[dst, :] += q * a[src, :]
        if transforms:
            u[dst, :] += q * u[src, :]
            uinv[:, src] -= q * uinv[:, dst]

    def add_col(dst, src, q):
        a[:, dst] += q * a[:, src]
        if transforms:
            v[:, dst] += q * v[:, src]
            vinv[src, :] -= q * vinv[dst, :]

    def negate_row(i):
        a[i, :] = -a[i, :]
        if transforms:
            u[i, :] = -u[i, :]
            uinv[:, i] = -uinv[:, i]

    t = 0
    while t < min(n, m):
        sub = a[t:, t:]
        nzr, nzc = np.nonzero(sub)
        if len(nzr) == 0:
            break
        vals = abs(sub[nzr, nzc])
        k = int(np.argmin(vals))
        swap_rows(t, t + int(nzr[k]))
        swap_cols(t, t + int(nzc[k]))
        while True:
            if a[t, t] < 0:
                negate_row(t)
            piv = a[t, t]
            col = a[t + 1 :, t]
            if col.any():
                q = -(col // piv)
                for i in np.nonzero(q)[0]:
                    add_row(t + 1 + int(i), t, q[int(i)])
                check()
                if a[t + 1 :, t].any():
                    # remainders smaller than the pivot: promote one
                    i = int(np.nonzero(a[t + 1 :, t])[0][0])
                    swap_rows(t, t + 1 + i)
                    continue
            row = a[t, t + 1 :]
            if row.any():
                q = -(row // piv)
                for j in np.nonzero(q)[0]:
                    add_col(t + 1 + int(j), t, q[int(j)])
                check()
                if a[t, t + 1 :].any():
                    j = int(np.nonzero(a[t, t + 1 :])[0][0])
                    swap_cols(t, t + 1 + j)
                    continue
            break
        t += 1

    # enforce divisibility d_i | d_{i+1}
    k = min(n, m)
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            di, dj = int(a[i, i]), int(a[i + 1, i + 1])
            if dj == 0 and di == 0:
                continue
            if di != 0 and dj % di == 0:
                continue
            changed = True
            # fold the two diagonal entries together
            add_row(i, i + 1, 1)
            # clear the 2x2 block again
            while True:
                if a[i, i] < 0:
                    negate_row(i)
                piv = a[i, i]
                if piv == 0:
                    swap_rows(i, i + 1)
                    continue
                qq = -(a[i + 1, i] // piv)
                if qq != 0:
                    add_row(i + 1, i, qq)
                if a[i + 1, i] != 0:
                    swap_rows(i, i + 1)
                    continue
                qc = -(a[i, i + 1] // piv)
                if qc != 0:
                    add_col(i + 1, i, qc)
                if a[i, i + 1] != 0:
                    swap_cols(i, i + 1)
                    continue
                break
            check()
    for i in range(k):
        if a[i, i] < 0:
            negate_row(i)
    return SNF(a, u, v, uinv, vinv) if transforms else SNF(a, None, None, None, None)


def smith_normal_form(mat, transforms: bool = True) -> SNF:
    arr = np.array(mat)
    if arr.ndim != 2:
        raise LinAlgError("need a 2-d matrix")
    try:
        a = arr.astype(np.int64)
        return _snf_inplace(a, transforms, _INT64_GUARD)
    except (_Overflow, OverflowError):
        a = np.array([[int(x) for x in row] for row in arr], dtype=object)
        return _snf_inplace(a, transforms, None)


def invariant_factors(mat) -> list[int]:
    """Nonzero diagonal entries of the Smith form, in divisibility order."""
    s = smith_normal_form(mat, transforms=False)
    return [d for d in s.diagonal if d != 0]


def rank(mat) -> int:
    return len(invariant_factors(mat))


def kernel_basis(mat) -> np.ndarray:
    """Columns form a basis of the integer kernel of mat."""
    s = smith_normal_form(mat)
    r = s.rank
    return s.v[:, r:]


def solve_mod(mat, b, m: int):
    """One x with mat @ x = b (mod m), or None.  mat is rows x cols; b has
    one entry per row."""
    s = smith_normal_form(mat)
    c = (s.u @ np.array(b, dtype=s.u.dtype)) % m
    rows, cols = s.d.shape
    y = np.zeros(cols, dtype=s.u.dtype)
    for i in range(rows):
        di = int(s.d[i, i]) if i < cols else 0
        ci = int(c[i]) % m
        if i >= cols or di == 0:
            if ci % m != 0:
                return None
            continue
        g = gcd(di, m)
        if ci % g != 0:
            return None
        mm = m // g
        y[i] = ((ci // g) * pow(di // g, -1, mm)) % mm
    return (s.v @ y) % m


def kernel_mod(mat, m: int) -> list[tuple[np.ndarray, int]]:
    """Generators (with orders > 1) of {x in (Z/m)^cols : mat @ x = 0 mod m}."""
    s = smith_normal_form(mat)
    rows, cols = s.d.shape
    out = []
    for i in range(cols):
        di = int(s.d[i, i]) if i < rows else 0
        g = gcd(di, m)
        if g == 1:
            continue
        gen = (s.v[:, i] * (m // g)) % m
        out.append((gen.astype(object), g))
    return out


def subgroup_order(gens_orders: list[tuple[np.ndarray, int]], m: int, dim: int) -> int:
    """Order of the subgroup of (Z/m)^dim generated by the given elements:
    index computation via the lattice of preimages."""
    if dim == 0:
        return 1
    cols = [np.array(g, dtype=object) for g, _ in gens_orders]
    mat = np.zeros((dim, len(cols) + dim), dtype=object)
    for j, c in enumerate(cols):
        mat[:, j] = c
    for i in range(dim):
        mat[i, len(cols) + i] = m
    # |subgroup| = m^dim / [Z^dim : lattice]
    invs = invariant_factors(mat)
    if len(invs) < dim:
        raise LinAlgError("lattice not full rank")  # cannot happen: contains mZ^dim
    index = 1
    for d in invs:
        index *= d
    return (m**dim) // index


def quotient_invariants(ker_mat, im_gens, m: int) -> tuple[list[int], list[np.ndarray]]:
    """Invariant factors (> 1) of ker(ker_mat mod m) / <im_gens>, plus one
    representative kernel vector per factor.

    ker_mat: rows x n integer matrix; the kernel is taken inside (Z/m)^n.
    im_gens: list of integer vectors (length n) generating the subgroup to
    divide out; m * e_i are always included.
    """
    s = smith_normal_form(np.array(ker_mat))
    rows, n = s.d.shape
    # lattice L = {x in Z^n : ker_mat x = 0 mod m} has basis V @ diag(t)
    t = []
    for i in range(n):
        di = int(s.d[i, i]) if i < rows else 0
        t.append(m // gcd(di, m))
    V = np.array([[int(x) for x in row] for row in s.v], dtype=object)
    Vinv = np.array([[int(x) for x in row] for row in s.vinv], dtype=object)
    gens = [np.array([int(x) for x in g], dtype=object) for g in im_gens]
    for i in range(n):
        e = np.zeros(n, dtype=object)
        e[i] = m
        gens.append(e)
    G = np.stack(gens, axis=1) if gens else np.zeros((n, 0), dtype=object)
    W = Vinv @ G
    Y = np.zeros_like(W)
    for i in range(n):
        ti = t[i]
        for j in range(W.shape[1]):
            w = int(W[i, j])
            if ti == 0:
                raise LinAlgError("unexpected zero scale")
            if w % ti != 0:
                raise LinAlgError("image not contained in kernel")
            Y[i, j] = w // ti
    sy = smith_normal_form(Y)
    B = V * np.array(t, dtype=object)  # columns scaled: B = V @ diag(t)
    reps_basis = B @ np.array(
        [[int(x) for x in row] for row in sy.uinv], dtype=object
    )
    invs = []
    reps = []
    k = min(sy.d.shape)
    for i in range(n):
        di = int(sy.d[i, i]) if i < k else 0
        if di == 0:
            raise LinAlgError("quotient not finite")  # cannot happen with mZ^n
        if di > 1:
            invs.append(di)
            reps.append(reps_basis[:, i] % m)
    return invs, reps

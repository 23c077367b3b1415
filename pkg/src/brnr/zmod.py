"""Exact linear algebra over Z/m.

Everything downstream (cohomology, extension classes, the unramified
filters) reduces to four primitives over Z/m: Smith normal form with
unimodular transforms, linear solving, kernels, and cokernel structure.
All of it is done directly mod m -- never over Z and then reduced --
using the fact that every element of Z/m is a unit times a divisor of m.

Matrices are numpy int64 arrays with entries reduced into [0, m).
Column spans are "submodules generated by the columns".
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

import numpy as np

try:  # optional: accelerates the batched row reduction
    from numba import njit as _njit

    _HAVE_NUMBA = True
except Exception:  # pragma: no cover
    _HAVE_NUMBA = False


def as_mod(a, m: int) -> np.ndarray:
    arr = np.asarray(a, dtype=np.int64)
    return np.mod(arr, m) if m > 1 else np.zeros_like(arr)


def gcd_with_modulus(x: int, m: int) -> int:
    """gcd(x, m), with 0 mapped to m (the annihilator of the zero element)."""
    return gcd(int(x) % m, m) or m


def unit_scale(a: int, m: int) -> tuple[int, int]:
    """Return (u, d) with u a unit mod m, d = gcd(a, m), and u*a = d mod m."""
    a = int(a) % m
    if a == 0:
        return 1, 0
    d = gcd(a, m)
    a1, m1 = a // d, m // d
    if m1 == 1:
        return 1, d
    u = pow(a1, -1, m1)
    # lift u to a unit mod m: u + t*m1 is coprime to m for some 0 <= t < d
    for t in range(d):
        cand = u + t * m1
        if gcd(cand, m) == 1:
            return cand % m, d
    raise AssertionError("unit lift must exist")  # unreachable


@dataclass(frozen=True)
class ZModMatrix:
    """A rows x cols matrix over Z/m, entries reduced into [0, m)."""

    modulus: int
    entries: np.ndarray

    def __post_init__(self):
        ent = as_mod(self.entries, self.modulus)
        if ent.ndim != 2:
            raise ValueError("entries must be a 2-d array")
        object.__setattr__(self, "entries", ent)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


class _Transform:
    """Tracks P (row ops) or Q (col ops) and optionally the inverse."""

    def __init__(self, n: int, m: int, want_inverse: bool):
        self.m = m
        self.mat = np.eye(n, dtype=np.int64)
        self.inv = np.eye(n, dtype=np.int64) if want_inverse else None

    # row-transform flavour: P <- E P, Pinv <- Pinv E^{-1}
    def row_swap(self, i, k):
        self.mat[[i, k]] = self.mat[[k, i]]
        if self.inv is not None:
            self.inv[:, [i, k]] = self.inv[:, [k, i]]

    def row_scale(self, i, u):
        self.mat[i] = self.mat[i] * u % self.m
        if self.inv is not None:
            uinv = pow(int(u), -1, self.m)
            self.inv[:, i] = self.inv[:, i] * uinv % self.m

    def row_addmul(self, i, k, q):
        # row_i -= q * row_k
        self.mat[i] = (self.mat[i] - q * self.mat[k]) % self.m
        if self.inv is not None:
            self.inv[:, k] = (self.inv[:, k] + q * self.inv[:, i]) % self.m

    def rows_addmul_bulk(self, idx, k, qs):
        self.mat[idx] = (self.mat[idx] - qs[:, None] * self.mat[k]) % self.m
        if self.inv is not None:
            self.inv[:, k] = (self.inv[:, k] + self.inv[:, idx] @ qs) % self.m


@dataclass
class SmithNormalForm:
    modulus: int
    diag: np.ndarray          # canonical divisors of m (0 stands for the zero element)
    P: Optional[np.ndarray]   # P @ A @ Q = D
    Pinv: Optional[np.ndarray]
    Q: Optional[np.ndarray]
    Qinv: Optional[np.ndarray]
    shape: tuple[int, int]


def smith_normal_form_raw(
    A: np.ndarray,
    m: int,
    *,
    want_P: bool = True,
    want_Pinv: bool = False,
    want_Q: bool = True,
    want_Qinv: bool = False,
) -> SmithNormalForm:
    """Diagonalize A over Z/m: P A Q = D with d_i | d_(i+1) as divisors of m."""
    A = as_mod(A, m).copy()
    r, c = A.shape
    if m <= 1:
        diag = np.zeros(min(r, c), dtype=np.int64)
        eye_r = np.eye(r, dtype=np.int64)
        eye_c = np.eye(c, dtype=np.int64)
        return SmithNormalForm(m, diag, eye_r, eye_r.copy(), eye_c, eye_c.copy(), (r, c))
    P = _Transform(r, m, want_Pinv) if (want_P or want_Pinv) else None
    Q = _Transform(c, m, want_Qinv) if (want_Q or want_Qinv) else None

    def row_swap(i, k):
        if i != k:
            A[[i, k]] = A[[k, i]]
            if P:
                P.row_swap(i, k)

    def col_swap(j, k):
        if j != k:
            A[:, [j, k]] = A[:, [k, j]]
            if Q:
                Q.row_swap(j, k)  # col ops tracked as row ops on Q^T; see below

    # We track Q by its transpose action: represent Q as a row-transform on Q^T.
    # Concretely Q.mat holds Q^T, so that at the end Q = Q.mat.T, Qinv = Q.inv.T.

    def col_scale(j, u):
        A[:, j] = A[:, j] * u % m
        if Q:
            Q.row_scale(j, u)

    def col_addmul(j, k, q):
        # col_j -= q * col_k
        A[:, j] = (A[:, j] - q * A[:, k]) % m
        if Q:
            Q.row_addmul(j, k, q)

    t = 0
    rank = min(r, c)
    while t < rank:
        sub = A[t:, t:]
        nz_r, nz_c = np.nonzero(sub)
        if nz_r.size == 0:
            break
        vals = sub[nz_r, nz_c]
        keys = np.gcd(vals, m)
        best = np.lexsort((nz_c, nz_r, keys))[0]
        row_swap(t, t + int(nz_r[best]))
        col_swap(t, t + int(nz_c[best]))

        while True:
            u, d = unit_scale(int(A[t, t]), m)
            if u != 1:
                A[t] = A[t] * u % m
                if P:
                    P.row_scale(t, u)
            # clear the pivot column below t
            colv = A[t + 1 :, t]
            if colv.any():
                qs = colv // d
                idx = np.nonzero(qs)[0]
                if idx.size:
                    A[t + 1 + idx, :] = (A[t + 1 + idx, :] - qs[idx, None] * A[t, :]) % m
                    if P:
                        P.rows_addmul_bulk(t + 1 + idx, t, qs[idx])
                rem = A[t + 1 :, t]
                if rem.any():
                    i = int(np.nonzero(rem)[0][0])
                    row_swap(t, t + 1 + i)
                    continue
            # clear the pivot row right of t
            rowv = A[t, t + 1 :]
            if rowv.any():
                qs = rowv // d
                idx = np.nonzero(qs)[0]
                for j in idx:
                    col_addmul(t + 1 + int(j), t, int(qs[j]))
                rem = A[t, t + 1 :]
                if rem.any():
                    j = int(np.nonzero(rem)[0][0])
                    col_swap(t, t + 1 + j)
                    continue
            break
        t += 1

    # enforce the divisibility chain d_i | d_(i+1) (with 0 acting as m)
    n_diag = min(r, c)
    changed = True
    while changed:
        changed = False
        for i in range(n_diag - 1):
            a, b = int(A[i, i]), int(A[i + 1, i + 1])
            ga, gb = gcd_with_modulus(a, m), gcd_with_modulus(b, m)
            if gb % ga != 0:
                changed = True
                col_addmul(i, i + 1, m - 1)  # col_i += col_(i+1)
                # re-eliminate the 2x2 block at (i, i)
                while True:
                    vals = [(gcd_with_modulus(int(A[x, y]), m), x, y)
                            for x in (i, i + 1) for y in (i, i + 1) if A[x, y] % m]
                    if not vals:
                        break
                    _, x, y = min(vals)
                    row_swap(i, x)
                    col_swap(i, y)
                    u, d = unit_scale(int(A[i, i]), m)
                    if u != 1:
                        A[i] = A[i] * u % m
                        if P:
                            P.row_scale(i, u)
                    q1 = int(A[i + 1, i]) // d
                    if q1:
                        A[i + 1] = (A[i + 1] - q1 * A[i]) % m
                        if P:
                            P.row_addmul(i + 1, i, q1)
                    q2 = int(A[i, i + 1]) // d
                    if q2:
                        col_addmul(i + 1, i, q2)
                    if A[i + 1, i] % m == 0 and A[i, i + 1] % m == 0:
                        break

    # scale each pivot to its canonical associate gcd(d, m)
    for i in range(n_diag):
        v = int(A[i, i]) % m
        if v:
            u, _ = unit_scale(v, m)
            if u != 1:
                A[i] = A[i] * u % m
                if P:
                    P.row_scale(i, u)

    diag = np.array([int(A[i, i]) % m for i in range(n_diag)], dtype=np.int64)
    return SmithNormalForm(
        m,
        diag,
        P.mat if P else None,
        P.inv if (P and P.inv is not None) else None,
        Q.mat.T if Q else None,
        Q.inv.T if (Q and Q.inv is not None) else None,
        (r, c),
    )


def smith_normal_form(A: ZModMatrix) -> tuple[ZModMatrix, ZModMatrix, ZModMatrix]:
    """Return (D, U, V) with A = U @ D @ V mod m, U and V invertible mod m."""
    snf = smith_normal_form_raw(A.entries, A.modulus, want_P=True, want_Pinv=True,
                                want_Q=True, want_Qinv=True)
    r, c = snf.shape
    D = np.zeros((r, c), dtype=np.int64)
    for i, d in enumerate(snf.diag):
        D[i, i] = d
    return (
        ZModMatrix(A.modulus, D),
        ZModMatrix(A.modulus, snf.Pinv),
        ZModMatrix(A.modulus, snf.Qinv),
    )


# ---------------------------------------------------------------------------
# batched row echelon (span-preserving); used to compress big systems
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:

    @_njit(cache=True)
    def _reduce_rows_against(batch, piv_rows, piv_cols, piv_vals, m):  # pragma: no cover
        nb = batch.shape[0]
        np_ = piv_rows.shape[0]
        for i in range(nb):
            for p in range(np_):
                col = piv_cols[p]
                v = piv_vals[p]
                q = batch[i, col] // v
                if q != 0:
                    row = piv_rows[p]
                    for j in range(col, batch.shape[1]):
                        batch[i, j] = (batch[i, j] - q * row[j]) % m
        return batch

else:

    def _reduce_rows_against(batch, piv_rows, piv_cols, piv_vals, m):
        for p in range(piv_rows.shape[0]):
            col = piv_cols[p]
            qs = batch[:, col] // piv_vals[p]
            idx = np.nonzero(qs)[0]
            if idx.size:
                batch[np.ix_(idx, range(col, batch.shape[1]))] = (
                    batch[np.ix_(idx, range(col, batch.shape[1]))]
                    - qs[idx, None] * piv_rows[p, col:]
                ) % m
        return batch


class RowEchelon:
    """Incremental span-preserving row reduction over Z/m.

    Feed row batches with :meth:`add`; :meth:`matrix` returns a small set of
    rows with the same row span as everything fed in.  Pivot values are
    divisors of m; annihilator multiples are inserted so later rows reduce
    as far as possible (Howell-style closure).
    """

    def __init__(self, ncols: int, m: int):
        self.ncols = ncols
        self.m = m
        self._rows: list[np.ndarray] = []
        self._pivcol: list[int] = []

    def _pivot_arrays(self):
        order = np.argsort(np.array(self._pivcol, dtype=np.int64), kind="stable")
        rows = np.array([self._rows[i] for i in order], dtype=np.int64)
        cols = np.array([self._pivcol[i] for i in order], dtype=np.int64)
        vals = rows[np.arange(len(order)), cols]
        return rows, cols, vals

    def add(self, batch: np.ndarray) -> None:
        m = self.m
        if m <= 1:
            return
        batch = as_mod(batch, m)
        batch = batch[batch.any(axis=1)]
        if batch.size == 0:
            return
        if self._rows:
            rows, cols, vals = self._pivot_arrays()
            batch = _reduce_rows_against(np.ascontiguousarray(batch), rows, cols, vals, m)
            batch = batch[batch.any(axis=1)]
        for row in batch:
            self._insert(row.copy())

    def _insert(self, row: np.ndarray) -> None:
        m = self.m
        queue = [row]
        while queue:
            row = queue.pop()
            while True:
                nz = np.nonzero(row)[0]
                if nz.size == 0:
                    break
                c = int(nz[0])
                v = int(row[c])
                if c in self._pivcol:
                    p = self._pivcol.index(c)
                    piv = self._rows[p]
                    pv = int(piv[c])
                    if v % pv == 0:
                        row = (row - (v // pv) * piv) % m
                        continue
                    g, x, y = _xgcd(v, pv)
                    new = (x * row + y * piv) % m
                    u, d = unit_scale(int(new[c]), m)
                    new = new * u % m
                    old = (piv - (pv // d) * new) % m
                    row = (row - (v // d) * new) % m
                    self._rows[p] = new
                    if old.any():
                        queue.append(old)
                    ann = (m // d) * new % m
                    if ann.any():
                        queue.append(ann)
                    continue
                u, d = unit_scale(v, m)
                row = row * u % m
                self._rows.append(row)
                self._pivcol.append(c)
                ann = (m // d) * row % m
                if ann.any():
                    queue.append(ann)
                break

    def matrix(self) -> np.ndarray:
        if not self._rows:
            return np.zeros((0, self.ncols), dtype=np.int64)
        rows, cols, vals = self._pivot_arrays()
        # back-reduce entries above each pivot for a tidier, more canonical form
        for p in range(len(cols)):
            c, v = int(cols[p]), int(vals[p])
            qs = rows[:, c] // v
            qs[p] = 0
            idx = np.nonzero(qs)[0]
            if idx.size:
                rows[idx] = (rows[idx] - qs[idx, None] * rows[p]) % self.m
        keep = rows.any(axis=1)
        return rows[keep]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def echelon_compress(A: np.ndarray, m: int, batch: int = 8192) -> np.ndarray:
    """Rows with the same row span as A, at most ~2*cols of them."""
    A = np.asarray(A, dtype=np.int64)
    ech = RowEchelon(A.shape[1], m)
    for start in range(0, A.shape[0], batch):
        ech.add(A[start : start + batch])
    return ech.matrix()


# ---------------------------------------------------------------------------
# kernel / solve / cokernel
# ---------------------------------------------------------------------------


def kernel(A: np.ndarray, m: int, *, compress: bool = True) -> np.ndarray:
    """Columns generating {x : A x = 0 mod m}.  A is rows x cols."""
    A = as_mod(A, m)
    cols = A.shape[1]
    if m <= 1 or cols == 0:
        return np.zeros((cols, 0), dtype=np.int64)
    if A.shape[0] == 0 or not A.any():
        return np.eye(cols, dtype=np.int64)
    if compress and A.shape[0] > 2 * cols + 16:
        A = echelon_compress(A, m)
    snf = smith_normal_form_raw(A, m, want_P=False, want_Q=True)
    gens = []
    ndiag = len(snf.diag)
    for j in range(cols):
        d = int(snf.diag[j]) if j < ndiag else 0
        g = gcd_with_modulus(d, m)
        if g == 1:
            continue
        gens.append(snf.Q[:, j] * (m // g) % m)
    if not gens:
        return np.zeros((cols, 0), dtype=np.int64)
    return np.array(gens, dtype=np.int64).T


def solve(A: np.ndarray, b: np.ndarray, m: int) -> Optional[tuple[np.ndarray, np.ndarray]]:
    """One solution of A x = b mod m plus kernel generators, or None."""
    A = as_mod(A, m)
    b = as_mod(b, m)
    r, c = A.shape
    if m <= 1:
        return np.zeros(c, dtype=np.int64), np.eye(c, dtype=np.int64)
    snf = smith_normal_form_raw(A, m, want_P=True, want_Q=True)
    cvec = snf.P @ b % m
    y = np.zeros(c, dtype=np.int64)
    ndiag = len(snf.diag)
    for i in range(r):
        ci = int(cvec[i])
        d = int(snf.diag[i]) if i < ndiag else 0
        g = gcd_with_modulus(d, m)
        if ci % g:
            return None
        if i < c and g != m:
            mg = m // g
            y[i] = (ci // g) * pow(d // g, -1, mg) % mg
    x = snf.Q @ y % m
    gens = []
    for j in range(c):
        d = int(snf.diag[j]) if j < ndiag else 0
        g = gcd_with_modulus(d, m)
        if g == 1:
            continue
        gens.append(snf.Q[:, j] * (m // g) % m)
    kr = np.array(gens, dtype=np.int64).T if gens else np.zeros((c, 0), dtype=np.int64)
    return x, kr


@dataclass
class AbelianStructure:
    """Invariant-factor description of a quotient (Z/m)^n / column-span.

    ``project`` maps ambient vectors to coordinates in prod Z/d_i; the
    ``generator_lifts`` columns project to the unit vectors.
    """

    modulus: int
    ambient_dim: int
    invariant_factors: tuple[int, ...]
    generator_lifts: np.ndarray       # ambient_dim x r
    _proj_rows: np.ndarray            # r x ambient_dim (rows of P for kept factors)

    def project(self, vec: np.ndarray) -> np.ndarray:
        vec = as_mod(vec, self.modulus)
        if not self.invariant_factors:
            return np.zeros(0, dtype=np.int64)
        coords = self._proj_rows @ vec % self.modulus
        mods = np.array(self.invariant_factors, dtype=np.int64)
        return coords % mods

    def is_zero(self, vec: np.ndarray) -> bool:
        return not self.project(vec).any()

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def all_coordinates(self):
        """Iterate every coordinate tuple (lexicographic); caller caps size."""
        if not self.invariant_factors:
            yield np.zeros(0, dtype=np.int64)
            return
        radix = self.invariant_factors
        idx = np.zeros(len(radix), dtype=np.int64)
        while True:
            yield idx.copy()
            j = len(radix) - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < radix[j]:
                    break
                idx[j] = 0
                j -= 1
            if j < 0:
                return

    def element_from_coordinates(self, coords: np.ndarray) -> np.ndarray:
        if not self.invariant_factors:
            return np.zeros(self.ambient_dim, dtype=np.int64)
        return self.generator_lifts @ as_mod(coords, self.modulus) % self.modulus


def cokernel(A: np.ndarray, m: int, rows: int | None = None) -> AbelianStructure:
    """Structure of (Z/m)^rows / colspan(A)."""
    A = as_mod(A, m)
    n = rows if rows is not None else A.shape[0]
    if A.shape[0] != n:
        raise ValueError("row count mismatch")
    if m <= 1 or n == 0:
        return AbelianStructure(m, n, (), np.zeros((n, 0), dtype=np.int64),
                                np.zeros((0, n), dtype=np.int64))
    if A.shape[1] > 2 * n + 16:
        A = echelon_compress(A.T, m).T
    snf = smith_normal_form_raw(A, m, want_P=True, want_Pinv=True, want_Q=False)
    ndiag = len(snf.diag)
    factors, keep = [], []
    for i in range(n):
        d = int(snf.diag[i]) if i < ndiag else 0
        f = gcd_with_modulus(d, m)
        if f > 1:
            factors.append(f)
            keep.append(i)
    keep_arr = np.array(keep, dtype=np.int64)
    lifts = (snf.Pinv[:, keep_arr] if keep else np.zeros((n, 0), dtype=np.int64))
    proj = (snf.P[keep_arr, :] if keep else np.zeros((0, n), dtype=np.int64))
    return AbelianStructure(m, n, tuple(factors), lifts % m, proj % m)


# ---------------------------------------------------------------------------
# submodules and subquotients
# ---------------------------------------------------------------------------


def solve_many(A: np.ndarray, B: np.ndarray, m: int) -> Optional[np.ndarray]:
    """Solve A X = B columnwise; None if any column is inconsistent."""
    A = as_mod(A, m)
    B = as_mod(B, m)
    r, c = A.shape
    if m <= 1:
        return np.zeros((c, B.shape[1]), dtype=np.int64)
    snf = smith_normal_form_raw(A, m, want_P=True, want_Q=True)
    C = snf.P @ B % m
    Y = np.zeros((c, B.shape[1]), dtype=np.int64)
    ndiag = len(snf.diag)
    for i in range(r):
        d = int(snf.diag[i]) if i < ndiag else 0
        g = gcd_with_modulus(d, m)
        if (C[i] % g).any():
            return None
        if i < c and g != m:
            mg = m // g
            inv = pow(d // g, -1, mg)
            Y[i] = (C[i] // g) * inv % mg
    return snf.Q @ Y % m


def submodule_invariants(gens: np.ndarray, m: int) -> tuple[int, ...]:
    """Invariant factors (ascending divisibility) of the column span of gens."""
    gens = as_mod(gens, m)
    if m <= 1 or gens.size == 0 or not gens.any():
        return ()
    if gens.shape[1] > 2 * gens.shape[0] + 16:
        gens = echelon_compress(gens.T, m).T
    snf = smith_normal_form_raw(gens, m, want_P=False, want_Q=False)
    factors = sorted(
        (m // g for d in snf.diag if (g := gcd_with_modulus(int(d), m)) != m),
        reverse=True,
    )
    factors = [f for f in factors if f > 1]
    return tuple(reversed(factors))


def intersect_submodules(G1: np.ndarray, G2: np.ndarray, m: int) -> np.ndarray:
    """Generators of colspan(G1) intersect colspan(G2)."""
    G1 = as_mod(G1, m)
    G2 = as_mod(G2, m)
    if G1.shape[1] == 0 or G2.shape[1] == 0:
        return np.zeros((G1.shape[0], 0), dtype=np.int64)
    stacked = np.hstack([G1, (-G2) % m])
    K = kernel(stacked, m)
    gens = G1 @ K[: G1.shape[1]] % m
    if gens.any():
        return echelon_compress(gens.T, m).T
    return np.zeros((G1.shape[0], 0), dtype=np.int64)


@dataclass
class SubquotientModule:
    """W / R for submodules R <= W <= (Z/m)^n, with ambient coordinates.

    ``coordinates`` solves membership in W and projects mod R; it returns
    None for vectors outside W.
    """

    modulus: int
    ambient_dim: int
    invariant_factors: tuple[int, ...]
    generator_lifts: np.ndarray      # ambient_dim x r, representatives in W
    _W: np.ndarray
    _inner: AbelianStructure

    def coordinates(self, vec: np.ndarray) -> Optional[np.ndarray]:
        res = solve(self._W, as_mod(vec, self.modulus), self.modulus)
        if res is None:
            return None
        return self._inner.project(res[0])

    def element_from_coordinates(self, coords: np.ndarray) -> np.ndarray:
        return self.generator_lifts @ as_mod(coords, self.modulus) % self.modulus

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def all_coordinates(self):
        yield from self._inner.all_coordinates() if self.invariant_factors else iter(
            [np.zeros(0, dtype=np.int64)]
        )


def subquotient(W: np.ndarray, R: np.ndarray, m: int) -> SubquotientModule:
    """Structure of colspan(W)/colspan(R); R must lie inside colspan(W)."""
    W = as_mod(W, m)
    R = as_mod(R, m)
    n, k = W.shape
    if k == 0 or m <= 1:
        return SubquotientModule(m, n, (), np.zeros((n, 0), dtype=np.int64), W,
                                 cokernel(np.zeros((0, 0), dtype=np.int64), m, rows=0))
    T = solve_many(W, R, m) if R.shape[1] else np.zeros((k, 0), dtype=np.int64)
    if T is None:
        raise ValueError("R is not contained in the span of W")
    rels = kernel(W, m)
    inner = cokernel(np.hstack([T, rels]), m, rows=k)
    lifts = W @ inner.generator_lifts % m
    return SubquotientModule(m, n, inner.invariant_factors, lifts, W, inner)

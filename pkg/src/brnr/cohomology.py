"""Cohomology of finite groups with finite abelian coefficients.

Cochains are dense tables indexed by group elements, normalized to vanish
whenever an argument is the identity.  H^1 and H^2 are computed as
kernel-mod-image of the bar-resolution coboundary maps, all over Z/m where
m is the exponent of the coefficient module (mixed invariant factors are
handled by scaling each equation row into Z/m).

For scalar coefficients with trivial action there is a second H^2 route
that first eliminates most unknowns: a normalized 2-cocycle is determined
by its values f(y, s) with s in a fixed generating set, and the cocycle
identity with the third argument restricted to generators implies the
general one.  That route handles base groups far beyond the dense one.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Optional

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .errors import CapExceeded, NotACocycle, NotEquivariant, OrderBound, ValidationError
from .groups import (
    AbelianModule,
    FiniteGroup,
    subgroups_abelian,
    subgroups_bicyclic,
    subgroups_cyclic,
)
from .zmod import (
    RowEchelon,
    SubquotientModule,
    as_mod,
    echelon_compress,
    intersect_submodules,
    kernel,
    smith_normal_form_raw,
    solve,
    solve_many,
    submodule_invariants,
    subquotient,
)


# ---------------------------------------------------------------------------
# cochain containers
# ---------------------------------------------------------------------------


@dataclass
class Cochain1:
    """Normalized 1-cochain: a table gamma -> M with value 0 at the identity."""

    group: FiniteGroup
    module: AbelianModule
    table: np.ndarray  # (n, rank)

    def __post_init__(self):
        self.table = self.module.reduce(np.asarray(self.table, dtype=np.int64))
        if self.table.shape != (self.group.order, self.module.rank):
            raise ValidationError("1-cochain table has wrong shape")
        if self.table[0].any():
            raise ValidationError("1-cochain must vanish at the identity")


@dataclass
class Cochain2:
    """Normalized 2-cochain: table (g, h) -> M vanishing if g or h is 1."""

    group: FiniteGroup
    module: AbelianModule
    table: np.ndarray  # (n, n, rank)

    def __post_init__(self):
        self.table = self.module.reduce(np.asarray(self.table, dtype=np.int64))
        n = self.group.order
        if self.table.shape != (n, n, self.module.rank):
            raise ValidationError("2-cochain table has wrong shape")
        if self.table[0].any() or self.table[:, 0].any():
            raise ValidationError("2-cochain must vanish on identity arguments")


def scalar_module(m: int, actor: FiniteGroup | None = None,
                  units: np.ndarray | None = None) -> AbelianModule:
    """Z/m, optionally with an actor operating through a table of units."""
    if actor is None:
        return AbelianModule((m,))
    if units is None:
        units = np.ones(actor.order, dtype=np.int64)
    return AbelianModule((m,), actor, np.asarray(units, dtype=np.int64)
                         .reshape(actor.order, 1, 1))


# ---------------------------------------------------------------------------
# cocycle identities (exact table checks)
# ---------------------------------------------------------------------------


def cocycle1_defect(G: FiniteGroup, M: AbelianModule, a: np.ndarray) -> Optional[tuple]:
    """First (g, h) where g.a(h) - a(gh) + a(g) != 0, or None."""
    n = G.order
    a = M.reduce(a)
    for g in range(n):
        acted = (a @ M.matrix(g).T) if M.action is not None else a
        lhs = M.reduce(acted + a[g][None, :] - a[G.mul[g]])
        bad = np.nonzero(lhs.any(axis=1))[0]
        if bad.size:
            return (g, int(bad[0]))
    return None


def cocycle2_defect(G: FiniteGroup, M: AbelianModule, f: np.ndarray) -> Optional[tuple]:
    """First (g, h, k) violating the 2-cocycle identity, or None."""
    n = G.order
    f = M.reduce(f)
    flat = f.reshape(n * n, -1)
    for g in range(n):
        acted = (flat @ M.matrix(g).T).reshape(n, n, -1) if M.action is not None \
            else f
        lhs = acted - flat[G.mul[g].reshape(-1, 1) * n + np.arange(n)].reshape(n, n, -1)
        lhs = lhs + f[g][G.mul] - f[g][:, None, :]
        lhs = M.reduce(lhs)
        bad = np.argwhere(lhs.any(axis=2))
        if bad.size:
            return (g, int(bad[0][0]), int(bad[0][1]))
    return None


# ---------------------------------------------------------------------------
# flattening helpers for the dense bar-resolution route
# ---------------------------------------------------------------------------


def _flat1(n: int, r: int, g: int, i: int) -> int:
    return (g - 1) * r + i


def _vec_of_table1(table: np.ndarray) -> np.ndarray:
    return table[1:].reshape(-1)


def _table1_of_vec(vec: np.ndarray, n: int, r: int) -> np.ndarray:
    out = np.zeros((n, r), dtype=np.int64)
    out[1:] = vec.reshape(n - 1, r)
    return out


def _vec_of_table2(table: np.ndarray) -> np.ndarray:
    return table[1:, 1:].reshape(-1)


def _table2_of_vec(vec: np.ndarray, n: int, r: int) -> np.ndarray:
    out = np.zeros((n, n, r), dtype=np.int64)
    out[1:, 1:] = vec.reshape(n - 1, n - 1, r)
    return out


def _row_scales(M: AbelianModule) -> np.ndarray:
    m = M.exponent
    return np.array([m // d for d in M.invariant_factors], dtype=np.int64)


def _lattice_columns(dim_blocks: int, M: AbelianModule) -> np.ndarray:
    """Columns d_i * e_(block, i): the coefficient lattice relations."""
    r = M.rank
    cols = []
    for b in range(dim_blocks):
        for i, d in enumerate(M.invariant_factors):
            if d != M.exponent:
                col = np.zeros(dim_blocks * r, dtype=np.int64)
                col[b * r + i] = d
                cols.append(col)
    if not cols:
        return np.zeros((dim_blocks * r, 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).T


def _d1_matrix_rows(G: FiniteGroup, M: AbelianModule):
    """Yield batches of scaled rows of d1 : C^1 -> C^2."""
    n, r, m = G.order, M.rank, M.exponent
    dim1 = (n - 1) * r
    scales = _row_scales(M)
    for g in range(1, n):
        Ag = M.matrix(g)
        rows = np.zeros(((n - 1) * r, dim1), dtype=np.int64)
        for h in range(1, n):
            base = (h - 1) * r
            blk = rows[base : base + r]
            # + g . a(h)
            blk[:, (h - 1) * r : h * r] += Ag
            # - a(gh)
            gh = int(G.mul[g, h])
            if gh != 0:
                blk[np.arange(r), (gh - 1) * r + np.arange(r)] -= 1
            # + a(g)
            blk[np.arange(r), (g - 1) * r + np.arange(r)] += 1
            blk *= scales[:, None]
        yield rows % m


def _d0_columns(G: FiniteGroup, M: AbelianModule) -> np.ndarray:
    """Columns of d0 : M -> C^1, (d0 v)(g) = g.v - v."""
    n, r = G.order, M.rank
    cols = np.zeros(((n - 1) * r, r), dtype=np.int64)
    for g in range(1, n):
        cols[(g - 1) * r : g * r, :] = M.matrix(g) - np.eye(r, dtype=np.int64)
    return cols % M.exponent


def _d2_matrix_rows(G: FiniteGroup, M: AbelianModule):
    """Yield batches of scaled rows of d2 : C^2 -> C^3 (one batch per g)."""
    n, r, m = G.order, M.rank, M.exponent
    dim2 = (n - 1) * (n - 1) * r
    scales = np.tile(_row_scales(M), n - 1)

    def pcol(a: int, b: int, i: int) -> int:
        return ((a - 1) * (n - 1) + (b - 1)) * r + i

    for g in range(1, n):
        Ag = M.matrix(g)
        rows = np.zeros(((n - 1) * (n - 1) * r, dim2), dtype=np.int64)
        idx = 0
        for h in range(1, n):
            gh = int(G.mul[g, h])
            for k in range(1, n):
                blk = rows[idx : idx + r]
                blk[:, pcol(h, k, 0) : pcol(h, k, 0) + r] += Ag
                if gh != 0:
                    blk[np.arange(r), pcol(gh, k, np.arange(r))] -= 1
                hk = int(G.mul[h, k])
                if hk != 0:
                    blk[np.arange(r), pcol(g, hk, np.arange(r))] += 1
                blk[np.arange(r), pcol(g, h, np.arange(r))] -= 1
                idx += r
        yield rows * np.tile(scales, n - 1)[:, None] % m


def _kernel_from_batches(batches, dim: int, m: int) -> np.ndarray:
    ech = RowEchelon(dim, m)
    for batch in batches:
        ech.add(batch)
    E = ech.matrix()
    return kernel(E, m, compress=False) if E.size else np.eye(dim, dtype=np.int64)


# ---------------------------------------------------------------------------
# cohomology group container
# ---------------------------------------------------------------------------


@dataclass
class CohomologyGroup:
    """Computed H^d(G, M): structure, representative cocycles, coordinates."""

    group: FiniteGroup
    module: AbelianModule
    degree: int
    invariant_factors: tuple[int, ...]
    representatives: list[np.ndarray]
    _coords: Callable[[np.ndarray], Optional[np.ndarray]]

    def coordinates(self, table: np.ndarray) -> Optional[np.ndarray]:
        """Class coordinates of a cocycle table; None if it is no cocycle."""
        return self._coords(np.asarray(table, dtype=np.int64))

    def is_coboundary(self, table: np.ndarray) -> bool:
        c = self.coordinates(table)
        return c is not None and not c.any()

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def element_table(self, coords) -> np.ndarray:
        """Representative cocycle for the given coordinate tuple."""
        coords = np.asarray(coords, dtype=np.int64)
        out = np.zeros_like(self.representatives[0]) if self.representatives \
            else np.zeros(0, dtype=np.int64)
        for c, rep in zip(coords, self.representatives):
            out = out + int(c) * rep
        return self.module.reduce(out)


def h1(G: FiniteGroup, M: AbelianModule, caps: Caps = DEFAULT_CAPS) -> CohomologyGroup:
    """H^1(G, M) = Z^1/B^1 on normalized 1-cochains."""
    n, r, m = G.order, M.rank, M.exponent
    dim1 = (n - 1) * r
    if dim1 > caps.class_module_unknowns:
        raise CapExceeded("class_module_unknowns", caps.class_module_unknowns, dim1)
    W = _kernel_from_batches(_d1_matrix_rows(G, M), dim1, m)
    R = np.hstack([_d0_columns(G, M), _lattice_columns(n - 1, M)])
    sub = subquotient(W, R, m)
    reps = [M.reduce(_table1_of_vec(sub.generator_lifts[:, i], n, r))
            for i in range(len(sub.invariant_factors))]

    def coords(table: np.ndarray) -> Optional[np.ndarray]:
        if cocycle1_defect(G, M, table) is not None:
            return None
        return sub.coordinates(_vec_of_table1(M.reduce(table)))

    return CohomologyGroup(G, M, 1, sub.invariant_factors, reps, coords)


def h2(G: FiniteGroup, M: AbelianModule, caps: Caps = DEFAULT_CAPS) -> CohomologyGroup:
    """H^2(G, M) = Z^2/B^2 on normalized 2-cochains."""
    if M.rank == 1 and M.action is None:
        return h2_trivial_scalar(G, int(M.invariant_factors[0]), caps)
    n = G.order
    if n > caps.h2_dense_group:
        raise OrderBound("h2_dense_group", caps.h2_dense_group, n)
    r, m = M.rank, M.exponent
    dim2 = (n - 1) * (n - 1) * r
    if dim2 > caps.class_module_unknowns:
        raise CapExceeded("class_module_unknowns", caps.class_module_unknowns, dim2)
    W = _kernel_from_batches(_d2_matrix_rows(G, M), dim2, m)
    # columns of d1 are images of the basis 1-cochains
    cols = np.zeros((dim2, (n - 1) * r), dtype=np.int64)
    for g in range(1, n):
        for i in range(r):
            a = np.zeros((n, r), dtype=np.int64)
            a[g, i] = 1
            img = coboundary1(G, M, a)
            cols[:, (g - 1) * r + i] = _vec_of_table2(img)
    R = np.hstack([cols, _lattice_columns((n - 1) * (n - 1), M)])
    sub = subquotient(W, R, m)
    reps = [M.reduce(_table2_of_vec(sub.generator_lifts[:, i], n, r))
            for i in range(len(sub.invariant_factors))]

    def coords(table: np.ndarray) -> Optional[np.ndarray]:
        if cocycle2_defect(G, M, table) is not None:
            return None
        return sub.coordinates(_vec_of_table2(M.reduce(table)))

    return CohomologyGroup(G, M, 2, sub.invariant_factors, reps, coords)


def coboundary1(G: FiniteGroup, M: AbelianModule, a: np.ndarray) -> np.ndarray:
    """d1 a as a full normalized 2-cochain table: g.a(h) - a(gh) + a(g)."""
    n = G.order
    a = M.reduce(np.asarray(a, dtype=np.int64))
    if M.action is not None:
        acted = np.stack([a @ M.matrix(g).T for g in range(n)])  # (g, h, r)
    else:
        acted = np.broadcast_to(a[None, :, :], (n, n, M.rank)).copy()
    out = acted - a[G.mul] + a[:, None, :]
    return M.reduce(out)


def coboundary0(G: FiniteGroup, M: AbelianModule, v: np.ndarray) -> np.ndarray:
    n = G.order
    v = M.reduce(v)
    rows = np.stack([M.act_vec(g, v) - v for g in range(n)])
    return M.reduce(rows)


# ---------------------------------------------------------------------------
# reduced H^2 for scalar coefficients with trivial action
# ---------------------------------------------------------------------------


@dataclass
class ReducedCocycleSpace:
    """Normalized Z^2(G, Z/m) (trivial action) in generator coordinates.

    Atoms are the values f(y, s) for y != 1 and s in a fixed generating
    set; ``expr`` writes every f(g, x) as an integer combination of atoms.
    """

    group: FiniteGroup
    modulus: int
    gens: list[int]
    expr: np.ndarray            # (n, n, n_atoms)
    kernel_gens: np.ndarray     # atom-space generators of Z^2

    def atom_index(self, y: int, s_pos: int) -> int:
        return (y - 1) * len(self.gens) + s_pos

    def expand(self, atom_vec: np.ndarray) -> np.ndarray:
        n = self.group.order
        return (self.expr.reshape(n * n, -1) @ as_mod(atom_vec, self.modulus)) \
            .reshape(n, n) % self.modulus

    def atomize(self, table: np.ndarray) -> np.ndarray:
        out = np.zeros(self.expr.shape[2], dtype=np.int64)
        for y in range(1, self.group.order):
            for i, s in enumerate(self.gens):
                out[self.atom_index(y, i)] = table[y, s]
        return out % self.modulus


def reduced_cocycle_space(G: FiniteGroup, m: int) -> ReducedCocycleSpace:
    n = G.order
    gens = G.minimal_generators()
    n_atoms = (n - 1) * len(gens)

    def aidx(y, s_pos):
        return (y - 1) * len(gens) + s_pos

    # BFS expansion of the second argument
    expr = np.zeros((n, n, n_atoms), dtype=np.int32)
    seen = {0}
    queue = [0]
    order_out = []
    while queue:
        parent = queue.pop(0)
        for i, s in enumerate(gens):
            x = int(G.mul[parent, s])
            if x in seen:
                continue
            seen.add(x)
            queue.append(x)
            order_out.append(x)
            expr[:, x, :] = expr[:, parent, :]
            gp = G.mul[:, parent]  # g * parent for all g
            rows = np.nonzero(gp != 0)[0]
            np.add.at(expr, (rows, x, (gp[rows] - 1) * len(gens) + i), 1)
            if parent != 0:
                expr[:, x, aidx(parent, i)] -= 1
    if len(seen) != n:
        raise ValidationError("generators do not generate the group")

    # constraints: cocycle identity with third argument a generator
    ech = RowEchelon(n_atoms, m)
    batch_rows = []
    for i, s in enumerate(gens):
        hs = G.mul[:, s]             # h * s
        for g in range(1, n):
            gh = G.mul[g]            # g * h
            rows = expr[g, hs[1:], :].astype(np.int64) - expr[g, 1:, :]
            hcol = (np.arange(1, n) - 1) * len(gens) + i
            np.add.at(rows, (np.arange(n - 1), hcol), 1)
            ok = gh[1:] != 0
            np.add.at(rows, (np.nonzero(ok)[0], (gh[1:][ok] - 1) * len(gens) + i), -1)
            batch_rows.append(rows % m)
            if len(batch_rows) >= 16:
                ech.add(np.vstack(batch_rows))
                batch_rows = []
    if batch_rows:
        ech.add(np.vstack(batch_rows))
    E = ech.matrix()
    K = kernel(E, m, compress=False) if E.size else np.eye(n_atoms, dtype=np.int64)
    return ReducedCocycleSpace(G, m, gens, expr, K)


def h2_trivial_scalar(G: FiniteGroup, m: int, caps: Caps = DEFAULT_CAPS) -> CohomologyGroup:
    n = G.order
    if n > caps.h2_group:
        raise OrderBound("h2_group", caps.h2_group, n)
    space = reduced_cocycle_space(G, m)
    n_atoms = space.expr.shape[2]
    # coboundary columns in atom coordinates: db(y, s) = b(y) + b(s) - b(ys)
    cols = np.zeros((n_atoms, n - 1), dtype=np.int64)
    for y in range(1, n):
        for i, s in enumerate(space.gens):
            ai = space.atom_index(y, i)
            for b in range(1, n):
                val = (1 if y == b else 0) + (1 if s == b else 0) \
                    - (1 if int(G.mul[y, s]) == b else 0)
                if val:
                    cols[ai, b - 1] += val
    sub = subquotient(space.kernel_gens, cols % m, m)
    M = scalar_module(m)
    reps = [space.expand(sub.generator_lifts[:, i])[:, :, None]
            for i in range(len(sub.invariant_factors))]

    def coords(table: np.ndarray) -> Optional[np.ndarray]:
        table = as_mod(table, m).reshape(n, n)
        if cocycle2_defect(G, M, table[:, :, None]) is not None:
            return None
        return sub.coordinates(space.atomize(table))

    return CohomologyGroup(G, M, 2, sub.invariant_factors, reps, coords)


# ---------------------------------------------------------------------------
# Tate H^0, restriction, Q/Z death, Sha filters
# ---------------------------------------------------------------------------


@dataclass
class TateH0:
    invariant_factors: tuple[int, ...]
    representatives: list[np.ndarray]       # module vectors
    _sub: SubquotientModule

    def coordinates(self, vec: np.ndarray) -> Optional[np.ndarray]:
        return self._sub.coordinates(np.asarray(vec, dtype=np.int64))

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out


def tate_h0(G: FiniteGroup, M: AbelianModule) -> TateH0:
    """Invariants modulo norms: M^G / N_G(M)."""
    r, m = M.rank, M.exponent
    scales = _row_scales(M)
    rows = []
    for g in range(1, G.order):
        rows.append((M.matrix(g) - np.eye(r, dtype=np.int64)) * scales[:, None] % m)
    A = np.vstack(rows) if rows else np.zeros((0, r), dtype=np.int64)
    W = kernel(A, m)
    norm = np.zeros((r, r), dtype=np.int64)
    for g in range(G.order):
        norm += M.matrix(g)
    R = np.hstack([norm % m, _lattice_columns(1, M)])
    sub = subquotient(W, R, m)
    reps = [M.reduce(sub.generator_lifts[:, i]) for i in range(len(sub.invariant_factors))]
    return TateH0(sub.invariant_factors, reps, sub)


def restrict_cochain(table: np.ndarray, elements: np.ndarray, degree: int) -> np.ndarray:
    """Slice a cochain table to a subgroup (indices must be sorted)."""
    elements = np.asarray(elements, dtype=np.int64)
    if degree == 1:
        return table[elements]
    return table[np.ix_(elements, elements)]


def subgroup_module(M: AbelianModule, H: FiniteGroup, elements: np.ndarray) -> AbelianModule:
    """The coefficient module viewed over a subgroup of its actor."""
    if M.action is None:
        return AbelianModule(M.invariant_factors, H, None) if H is not None else M
    return AbelianModule(M.invariant_factors, H, M.action[np.asarray(elements)])


def dies_in_qz(f_table: np.ndarray, B: FiniteGroup, N: int) -> bool:
    """Whether a mod-N class on B dies after pushing into Q/Z.

    Equivalent test: e*f becomes a coboundary mod N*e, where e = exp(B).
    """
    e = B.exponent
    m = N * e
    n = B.order
    f = as_mod(f_table, N).reshape(n, n)
    if n == 1 or not f.any():
        return True
    rows, rhs = _coboundary_system(B, (e * f) % m, m)
    return solve(rows, rhs, m) is not None


def _coboundary_system(B: FiniteGroup, target: np.ndarray, m: int):
    """Linear system d1(b) = target for scalar trivial coefficients mod m."""
    n = B.order
    eqs = []
    rhs = []
    for g in range(1, n):
        row_block = np.zeros((n - 1, n - 1), dtype=np.int64)
        gh = B.mul[g, 1:]
        np.add.at(row_block, (np.arange(n - 1), np.arange(n - 1)), 1)      # b(h)
        row_block[np.arange(n - 1), g - 1] += 1                            # b(g)
        ok = gh != 0
        np.add.at(row_block, (np.nonzero(ok)[0], gh[ok] - 1), -1)          # -b(gh)
        eqs.append(row_block % m)
        rhs.append(target[g, 1:] % m)
    return np.vstack(eqs), np.concatenate(rhs)


def is_scalar_coboundary(B: FiniteGroup, table: np.ndarray, m: int,
                         units: np.ndarray | None = None) -> Optional[np.ndarray]:
    """Witness b with d1 b = table for scalar coefficients (optional unit twist).

    With a twist, (d1 b)(g, h) = u(g) b(h) - b(gh) + b(g).
    """
    n = B.order
    table = as_mod(table, m).reshape(n, n)
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    eqs, rhs = [], []
    for g in range(1, n):
        row_block = np.zeros((n - 1, n - 1), dtype=np.int64)
        u = 1 if units is None else int(units[g])
        gh = B.mul[g, 1:]
        np.add.at(row_block, (np.arange(n - 1), np.arange(n - 1)), u)
        row_block[np.arange(n - 1), g - 1] += 1
        ok = gh != 0
        np.add.at(row_block, (np.nonzero(ok)[0], gh[ok] - 1), -1)
        eqs.append(row_block % m)
        rhs.append(table[g, 1:] % m)
    res = solve(np.vstack(eqs), np.concatenate(rhs), m)
    if res is None:
        return None
    b = np.zeros(n, dtype=np.int64)
    b[1:] = res[0]
    return b


# ---------------------------------------------------------------------------
# cup products and Bocksteins
# ---------------------------------------------------------------------------


def cup_h1_h1(G: FiniteGroup, M: AbelianModule, x: np.ndarray, Mdual: AbelianModule,
              y: np.ndarray) -> np.ndarray:
    """(x cup y)(s, t) = < s.y(t), x(s) > valued in Z/exp(M).

    x is a 1-cocycle valued in M, y one valued in the dual module, and the
    evaluation pairing Hom(M, Z/e) x M -> Z/e is applied.
    """
    n = G.order
    e = M.exponent
    x = M.reduce(x)
    y = Mdual.reduce(y)
    out = np.zeros((n, n), dtype=np.int64)
    for s in range(n):
        ys = (y @ Mdual.matrix(s).T) if Mdual.action is not None else y
        for t in range(n):
            out[s, t] = M.pairing(Mdual.reduce(ys[t]), x[s])
    out[0, :] = 0
    out[:, 0] = 0
    return out % e


def bockstein(G: FiniteGroup, phi: np.ndarray, N: int,
              delta: FiniteGroup | None = None,
              chi: np.ndarray | None = None,
              action_table: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Carry 2-cocycle of a character lift, plus the Galois twist table.

    phi must be a homomorphism G -> Z/N; with a nontrivial chi (given mod
    N^2) it must satisfy phi(d.g) = chi(d) phi(g) mod N.  Returns
    (f, c): f(g,h) = (phi(g)+phi(h)-phi(gh))/N mod N lifted through N^2,
    c_d(g) = (chi(d) phi(g) - phi(d.g))/N mod N.
    """
    n = G.order
    phi = as_mod(phi, N)
    bad = np.argwhere((phi[:, None] + phi[None, :] - phi[G.mul]) % N)
    if bad.size:
        raise NotACocycle("phi is not a homomorphism", witness=tuple(map(int, bad[0])))
    lift = phi.astype(np.int64)  # canonical integer lift in [0, N)
    f = (lift[:, None] + lift[None, :] - lift[G.mul])
    if (f % N).any():
        raise AssertionError("carry defect")
    f = (f // N) % N
    if delta is None:
        return f, np.zeros((1, n), dtype=np.int64)
    nd = delta.order
    chi = as_mod(chi, N * N)
    acted = lift[action_table]  # (delta, g) -> phi(d.g)
    c = (chi[:, None] * lift[None, :] - acted)
    if (c % N).any():
        d, g = map(int, np.argwhere(c % N)[0])
        raise NotEquivariant("character is not chi-equivariant", witness=(d, g))
    c = (c % (N * N)) // N % N
    c[0] = 0
    c[:, 0] = 0
    return f, c


# ---------------------------------------------------------------------------
# Sha: classes dying on a family of subgroups
# ---------------------------------------------------------------------------

_FAMILIES = {
    "ab": subgroups_abelian,
    "bic": subgroups_bicyclic,
    "cyc": subgroups_cyclic,
}


@dataclass
class ShaResult:
    """Subgroup of H^d(G, M) of classes dying on every subgroup of a family.

    With ``qz_intent`` (degree 2, scalar coefficients read as mod-N shadows
    of Q/Z), death means death of the Q/Z-pushforward, and the result is
    additionally reported modulo the global Kummer classes, i.e. it is the
    image of the filter inside H^2(G, Q/Z).
    """

    ambient: CohomologyGroup
    invariant_factors: tuple[int, ...]
    representatives: list[np.ndarray]
    coordinates_in_ambient: list[np.ndarray]
    family: str
    degree: int
    qz_intent: bool
    _sub: SubquotientModule | None = None

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out


def _scaled_lattice(orders: tuple[int, ...], m: int) -> np.ndarray:
    """Generators of the image of prod Z/o_j inside (Z/m)^t, o_j | m."""
    t = len(orders)
    out = np.zeros((t, t), dtype=np.int64)
    for j, o in enumerate(orders):
        out[j, j] = m // o
    return out


def _restriction_death_kernel(
    ambient: CohomologyGroup,
    elements: np.ndarray,
    B: FiniteGroup,
    degree: int,
    qz_intent: bool,
) -> np.ndarray:
    """Classes whose restriction to B dies, as scaled vectors in (Z/N)^t.

    "Dies" means: the restricted cocycle is a coboundary over B (degree 1,
    or degree 2 without qz_intent), or its Q/Z-pushforward is (degree 2
    with qz_intent: exp(B)-scaled coboundary test at modulus N*exp(B)).
    The kernel is computed jointly in the class coefficients x and the
    witness cochain b, then projected onto x.
    """
    M = ambient.module
    N = M.exponent
    orders = ambient.invariant_factors
    t = len(orders)
    nB = B.order
    if degree == 1:
        m = N
        r = M.rank
        MB = subgroup_module(M, B, elements)
        V = np.array(
            [_vec_of_table1(restrict_cochain(rep, elements, 1))
             for rep in ambient.representatives], dtype=np.int64).T
        scales = np.tile(_row_scales(M), nB - 1)
        sysmat = np.hstack([V, (-_d0_columns(B, MB)) % m]) * scales[:, None] % m
    else:
        if qz_intent:
            e = B.exponent
            m = N * e
            scale = e
        else:
            m = N
            scale = 1
        V = np.array(
            [scale * _vec_of_table2(restrict_cochain(rep[:, :, 0], elements, 2)) % m
             for rep in ambient.representatives], dtype=np.int64).T
        d1cols = np.zeros(((nB - 1) ** 2, nB - 1), dtype=np.int64)
        for b in range(1, nB):
            a = np.zeros((nB, 1), dtype=np.int64)
            a[b, 0] = 1
            img = coboundary1(B, scalar_module(m), a)
            d1cols[:, b - 1] = img[1:, 1:, 0].reshape(-1)
        sysmat = np.hstack([V, (-d1cols) % m]) % m
    K = kernel(sysmat, m)
    xpart = K[:t] if K.size else np.zeros((t, 0), dtype=np.int64)
    scaled = np.zeros((t, xpart.shape[1]), dtype=np.int64)
    for j, o in enumerate(orders):
        scaled[j] = (xpart[j] % o) * (N // o) % N
    return scaled


def sha(G: FiniteGroup, M: AbelianModule, degree: int, family: str,
        qz_intent: bool = False, caps: Caps = DEFAULT_CAPS,
        ambient: CohomologyGroup | None = None) -> ShaResult:
    """Classes of H^degree(G, M) dying on every subgroup of the family."""
    if family not in _FAMILIES:
        raise ValidationError(f"unknown subgroup family {family!r}")
    if degree not in (1, 2):
        raise ValidationError("degree must be 1 or 2")
    if qz_intent and (degree != 2 or M.rank != 1 or M.action is not None):
        raise ValidationError("qz_intent needs degree 2 and trivial scalar coefficients")
    if ambient is None:
        ambient = h1(G, M, caps) if degree == 1 else h2(G, M, caps)
    t = len(ambient.invariant_factors)
    N = M.exponent
    if t == 0:
        return ShaResult(ambient, (), [], [], family, degree, qz_intent)
    current = _scaled_lattice(ambient.invariant_factors, N)
    for elems in _FAMILIES[family](G):
        if len(elems) == 1:
            continue
        B, idx = G.subgroup_table(elems)
        gens = _restriction_death_kernel(ambient, idx, B, degree, qz_intent)
        current = intersect_submodules(current, gens, N)
        if current.shape[1] == 0:
            break
    if qz_intent:
        return _qz_image(ambient, current, G, N, family)
    return _sha_from_scaled(ambient, current, N, family, degree, qz_intent)


def _unscale(ambient: CohomologyGroup, scaled_cols: np.ndarray, N: int) -> list[np.ndarray]:
    orders = ambient.invariant_factors
    out = []
    for c in range(scaled_cols.shape[1]):
        x = np.zeros(len(orders), dtype=np.int64)
        for j, o in enumerate(orders):
            v = int(scaled_cols[j, c])
            q, rem = divmod(v, N // o)
            if rem:
                raise AssertionError("vector outside the scaled class lattice")
            x[j] = q % o
        out.append(x)
    return out


def _sha_from_scaled(ambient, current, N, family, degree, qz_intent) -> ShaResult:
    sub = subquotient(current, np.zeros((current.shape[0], 0), dtype=np.int64), N)
    lifts = sub.generator_lifts
    coords = _unscale(ambient, lifts, N)
    reps = [ambient.element_table(x) for x in coords]
    return ShaResult(ambient, sub.invariant_factors, reps, coords, family, degree,
                     qz_intent, sub)


def _qz_image(ambient, current, G: FiniteGroup, N: int, family: str) -> ShaResult:
    """Quotient the death-filter subgroup by the global Kummer classes."""
    e = G.exponent
    kummer_cols = []
    phis = character_group_generators(G, N)
    for phi in phis:
        f, _ = bockstein(G, phi, N)
        x = ambient.coordinates(f[:, :, None])
        if x is None:
            raise AssertionError("bockstein output must be a cocycle")
        col = np.zeros(len(ambient.invariant_factors), dtype=np.int64)
        for j, o in enumerate(ambient.invariant_factors):
            col[j] = (int(x[j]) % o) * (N // o) % N
        kummer_cols.append(col)
    R = np.array(kummer_cols, dtype=np.int64).T if kummer_cols else \
        np.zeros((current.shape[0], 0), dtype=np.int64)
    sub = subquotient(current, R, N)
    coords = _unscale(ambient, sub.generator_lifts, N)
    reps = [ambient.element_table(x) for x in coords]
    return ShaResult(ambient, sub.invariant_factors, reps, coords, family, 2, True, sub)


def character_group_generators(G: FiniteGroup, N: int,
                               equivariance: tuple[np.ndarray, np.ndarray] | None = None
                               ) -> list[np.ndarray]:
    """Generators of Hom(G, Z/N), optionally chi-twisted equivariant ones.

    ``equivariance`` is (chi mod N^2 over Delta, action table Delta x G).
    """
    n = G.order
    if n == 1:
        return []
    rows = []
    hom_rows = np.zeros((n * n, n - 1), dtype=np.int64) if n > 1 else \
        np.zeros((0, 0), dtype=np.int64)
    if n > 1:
        idx = 0
        for g in range(n):
            for hcol in range(n):
                row = np.zeros(n - 1, dtype=np.int64)
                if g:
                    row[g - 1] += 1
                if hcol:
                    row[hcol - 1] += 1
                gh = int(G.mul[g, hcol])
                if gh:
                    row[gh - 1] -= 1
                hom_rows[idx] = row
                idx += 1
        rows.append(hom_rows % N)
    if equivariance is not None:
        chi, act = equivariance
        chi_n = as_mod(chi, N)
        for d in range(len(chi_n)):
            block = np.zeros((n - 1, n - 1), dtype=np.int64)
            for g in range(1, n):
                dg = int(act[d, g])
                block[g - 1, g - 1] += chi_n[d]
                if dg:
                    block[g - 1, dg - 1] -= 1
            rows.append(block % N)
    A = np.vstack(rows) if rows else np.zeros((0, max(n - 1, 0)), dtype=np.int64)
    K = kernel(A, N) if n > 1 else np.zeros((0, 0), dtype=np.int64)
    out = []
    for j in range(K.shape[1]):
        phi = np.zeros(n, dtype=np.int64)
        phi[1:] = K[:, j]
        out.append(phi % N)
    return out

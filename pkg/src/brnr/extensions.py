"""Galois-equivariant central extensions as table pairs (f, c).

An extension of a finite group G by mu_N compatible with a finite Galois
quotient Delta is stored as two tables mod N: the extension 2-cocycle
f : G x G -> Z/N and the Galois twist c : Delta x G -> Z/N.  Three exact
laws make the pair a Delta-group:

  C1 (cocycle)        f(g,h) + f(gh,k) = f(g,hk) + f(h,k)
  C2 (automorphism)   c_d(gh) - c_d(g) - c_d(h) = f(d.g, d.h) - chi(d) f(g,h)
  C3 (crossed)        c_{de}(g) = chi(d) c_e(g) + c_d(e.g)

Everything here is linear in (f, c), which turns enumeration-of-extensions
into kernel computations: the class module is the solution space of C1-C3
modulo the coboundary pairs of a change of section.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .cohomology import (
    bockstein,
    character_group_generators,
    reduced_cocycle_space,
    scalar_module,
)
from .errors import (
    CapExceeded,
    MismatchedBase,
    NotASubgroup,
    NotStable,
    OrderBound,
    ValidationError,
)
from .groups import FiniteGroup, GroupAction
from .zmod import RowEchelon, SubquotientModule, as_mod, kernel, solve, subquotient


@dataclass
class GaloisDatum:
    """Finite Galois quotient acting on G, with cyclotomic character mod N^2."""

    delta: FiniteGroup
    G: FiniteGroup
    chi: np.ndarray                 # units mod N^2, one per Delta element
    action: GroupAction             # Delta on G by automorphisms
    N: int | None = None            # defaults to |G|
    base_algebraically_closed: bool = False

    def __post_init__(self):
        if self.N is None:
            self.N = self.G.order
        self.chi = as_mod(self.chi, self.N * self.N)
        if self.chi.shape != (self.delta.order,):
            raise ValidationError("chi table has wrong length")

    def validate(self) -> None:
        n2 = self.N * self.N
        if self.chi[0] % n2 != 1 % n2:
            raise ValidationError("chi(identity) must be 1", witness=0)
        for d in range(self.delta.order):
            if gcd(int(self.chi[d]), n2) != 1:
                raise ValidationError("chi value is not a unit mod N^2", witness=d)
            for e in range(self.delta.order):
                de = int(self.delta.mul[d, e])
                if (self.chi[d] * self.chi[e] - self.chi[de]) % n2:
                    raise ValidationError("chi is not multiplicative", witness=(d, e))
        self.action.validate()

    @property
    def chi_mod_n(self) -> np.ndarray:
        return self.chi % self.N

    @staticmethod
    def trivial(G: FiniteGroup, N: int | None = None,
                base_algebraically_closed: bool = False) -> "GaloisDatum":
        one = FiniteGroup(np.zeros((1, 1), dtype=np.int64), validate=False)
        return GaloisDatum(one, G, np.array([1]), GroupAction.trivial(one, G),
                           N, base_algebraically_closed)

    @staticmethod
    def real_like(G: FiniteGroup, N: int | None = None) -> "GaloisDatum":
        """Order-2 Galois group inverting roots of unity, trivial on G."""
        delta = FiniteGroup(np.array([[0, 1], [1, 0]]), validate=False)
        N = N if N is not None else G.order
        chi = np.array([1, N * N - 1])
        return GaloisDatum(delta, G, chi, GroupAction.trivial(delta, G), N)


@dataclass
class EquivariantExtension:
    """Pair (f, c) mod N defining a central extension of Delta-groups."""

    gal: GaloisDatum
    f: np.ndarray                   # (n, n)
    c: np.ndarray                   # (|Delta|, n)

    def __post_init__(self):
        N = self.gal.N
        n = self.gal.G.order
        self.f = as_mod(self.f, N)
        self.c = as_mod(self.c, N)
        if self.f.shape != (n, n):
            raise ValidationError("f table has wrong shape")
        if self.c.shape != (self.gal.delta.order, n):
            raise ValidationError("c table has wrong shape")
        # normalize: shift by the constant coboundary so f(1,-) = f(-,1) = 0
        const = int(self.f[0, 0])
        if const:
            b = np.full(n, const, dtype=np.int64)
            b[0] = 0
            self.f = (self.f - (b[:, None] + b[None, :] - b[self.gal.G.mul])) % N
            chi_n = self.gal.chi_mod_n
            act = self.gal.action.table
            self.c = (self.c - (chi_n[:, None] * b[None, :] - b[act])) % N
        if self.f[0].any() or self.f[:, 0].any() or self.c[:, 0].any() or self.c[0].any():
            raise ValidationError("extension pair is not normalizable",
                                  witness=(int(self.f[0].argmax()),))

    @property
    def modulus(self) -> int:
        return self.gal.N

    def violated_law(self) -> Optional[tuple[str, tuple]]:
        """First violated law among C1, C2, C3 with a witness tuple, or None."""
        G, N = self.gal.G, self.gal.N
        mul = G.mul
        f, c = self.f, self.c
        n = G.order
        for g in range(n):
            lhs = f[g][:, None] + f[mul[g]]        # f(g,h) + f(gh,k)
            rhs = f[g][mul] + f                     # f(g,hk) + f(h,k)
            bad = np.argwhere((lhs - rhs) % N)
            if bad.size:
                h, k = map(int, bad[0])
                return ("C1", (g, h, k))
        act = self.gal.action.table
        chi_n = self.gal.chi_mod_n
        for d in range(self.gal.delta.order):
            dg = act[d]
            lhs = c[d][mul] - c[d][:, None] - c[d][None, :]
            rhs = f[np.ix_(dg, dg)] - chi_n[d] * f
            bad = np.argwhere((lhs - rhs) % N)
            if bad.size:
                g, h = map(int, bad[0])
                return ("C2", (d, g, h))
        for d in range(self.gal.delta.order):
            for e in range(self.gal.delta.order):
                de = int(self.gal.delta.mul[d, e])
                lhs = c[de]
                rhs = chi_n[d] * c[e] + c[d][act[e]]
                bad = np.nonzero((lhs - rhs) % N)[0]
                if bad.size:
                    return ("C3", (d, e, int(bad[0])))
        return None

    def validated(self) -> "EquivariantExtension":
        v = self.violated_law()
        if v is not None:
            raise ValidationError(f"extension law {v[0]} fails", witness=v[1])
        return self


def validate(ext: EquivariantExtension, gal: GaloisDatum | None = None):
    """Check C1-C3 exhaustively; returns None or (law, witness)."""
    return ext.violated_law()


def zero_extension(gal: GaloisDatum) -> EquivariantExtension:
    n = gal.G.order
    return EquivariantExtension(gal, np.zeros((n, n), dtype=np.int64),
                                np.zeros((gal.delta.order, n), dtype=np.int64))


def baer_sum(e1: EquivariantExtension, e2: EquivariantExtension) -> EquivariantExtension:
    if e1.gal is not e2.gal and (
        e1.gal.N != e2.gal.N
        or e1.gal.G.order != e2.gal.G.order
        or not np.array_equal(e1.gal.G.mul, e2.gal.G.mul)
        or not np.array_equal(e1.gal.chi, e2.gal.chi)
        or not np.array_equal(e1.gal.action.table, e2.gal.action.table)
    ):
        raise MismatchedBase("extensions live over different data")
    return EquivariantExtension(e1.gal, (e1.f + e2.f) % e1.modulus,
                                (e1.c + e2.c) % e1.modulus)


def scale_extension(e: EquivariantExtension, k: int) -> EquivariantExtension:
    return EquivariantExtension(e.gal, k * e.f % e.modulus, k * e.c % e.modulus)


# ---------------------------------------------------------------------------
# the explicit extension group
# ---------------------------------------------------------------------------


@dataclass
class ExtensionGroup:
    """The group of pairs (lambda, g), lambda mod N, with its Delta-action."""

    group: FiniteGroup
    action: GroupAction             # Delta on the extension group
    N: int
    base_order: int
    section: np.ndarray             # g -> index of (0, g)
    fiber: np.ndarray               # lambda -> index of (lambda, 1)
    project: np.ndarray             # index -> g
    coefficient: np.ndarray         # index -> lambda

    def pair_index(self, lam: int, g: int) -> int:
        return (lam % self.N) * self.base_order + g


def extension_group(ext: EquivariantExtension, gal: GaloisDatum | None = None,
                    caps: Caps = DEFAULT_CAPS,
                    validate_tables: bool = True) -> ExtensionGroup:
    """Build the order N*|G| group with law (a,g)(b,h) = (a+b+f(g,h), gh)."""
    gal = ext.gal if gal is None else gal
    G, N = gal.G, gal.N
    n = G.order
    total = N * n
    if total > caps.table_group:
        raise OrderBound("table_group", caps.table_group, total)
    lam = np.repeat(np.arange(N), n)
    gpart = np.tile(np.arange(n), N)
    mul = np.empty((total, total), dtype=np.int64)
    for i in range(total):
        a, g = int(lam[i]), int(gpart[i])
        coeff = (a + lam + ext.f[g, gpart]) % N
        mul[i] = coeff * n + G.mul[g, gpart]
    group = FiniteGroup(mul, validate=validate_tables)
    chi_n = gal.chi_mod_n
    act_tab = np.empty((gal.delta.order, total), dtype=np.int64)
    for d in range(gal.delta.order):
        coeff = (chi_n[d] * lam + ext.c[d, gpart]) % N
        act_tab[d] = coeff * n + gal.action.table[d, gpart]
    action = GroupAction(gal.delta, group, act_tab)
    if validate_tables:
        action.validate()
    return ExtensionGroup(group, action, N, n,
                          section=np.arange(n, dtype=np.int64),
                          fiber=np.arange(N, dtype=np.int64) * n,
                          project=gpart, coefficient=lam)


# ---------------------------------------------------------------------------
# splitting tests
# ---------------------------------------------------------------------------


def _check_subgroup(G: FiniteGroup, elements) -> np.ndarray:
    elems = np.array(sorted(set(int(x) for x in elements)), dtype=np.int64)
    if elems.size == 0 or elems[0] != 0:
        raise NotASubgroup("subgroup must contain the identity")
    sub = G.mul[np.ix_(elems, elems)]
    if not np.isin(sub, elems).all():
        a, b = map(int, np.argwhere(~np.isin(sub, elems))[0])
        raise NotASubgroup("set not closed", witness=(int(elems[a]), int(elems[b])))
    return elems


def splits_over(ext: EquivariantExtension, elements,
                modulus: int | None = None) -> Optional[np.ndarray]:
    """Witness b with f(g,h) = b(gh) - b(g) - b(h) on H, or None.

    This is splitting of the mu_N-level extension pulled back to H; the
    Q/Z-level question is dies_in_qz of the restriction instead.
    """
    G = ext.gal.G
    N = ext.modulus if modulus is None else modulus
    scale = 1 if modulus is None else modulus // ext.modulus
    elems = _check_subgroup(G, elements)
    k = elems.size
    pos = {int(e): i for i, e in enumerate(elems)}
    rows, rhs = [], []
    for i, g in enumerate(elems[1:], start=1):
        for j, h in enumerate(elems[1:], start=1):
            row = np.zeros(k - 1, dtype=np.int64)
            gh = pos[int(G.mul[g, h])]
            if gh:
                row[gh - 1] += 1
            row[i - 1] -= 1
            row[j - 1] -= 1
            rows.append(row)
            rhs.append(scale * int(ext.f[g, h]) % N)
    if not rows:
        return np.zeros(1, dtype=np.int64)
    res = solve(np.array(rows) % N, np.array(rhs), N)
    if res is None:
        return None
    b = np.zeros(k, dtype=np.int64)
    b[1:] = res[0]
    return b


def splits_equivariantly(ext: EquivariantExtension, elements, delta_elements=None,
                         modulus: int | None = None) -> Optional[np.ndarray]:
    """Witness of a Delta'-equivariant splitting over a stable subgroup H.

    Solves jointly: f = -(d b) on H x H and chi(d) b(g) + c_d(g) = b(d.g)
    for d in Delta', g in H.  ``modulus`` lifts the test to a multiple of N
    (tables are scaled by modulus/N, chi is reduced mod modulus).
    """
    gal = ext.gal
    G = gal.G
    N = ext.modulus if modulus is None else modulus
    scale = 1 if modulus is None else modulus // ext.modulus
    elems = _check_subgroup(G, elements)
    dels = np.arange(gal.delta.order) if delta_elements is None \
        else np.array(sorted(set(int(d) for d in delta_elements)), dtype=np.int64)
    act = gal.action.table
    for d in dels:
        imgs = act[d][elems]
        if not np.isin(imgs, elems).all():
            g = int(elems[int(np.argwhere(~np.isin(imgs, elems))[0])])
            raise NotStable("subgroup is not stable under the Galois action",
                            witness=(int(d), g))
    k = elems.size
    pos = {int(e): i for i, e in enumerate(elems)}
    chi = gal.chi % N
    rows, rhs = [], []
    for i, g in enumerate(elems[1:], start=1):
        for j, h in enumerate(elems[1:], start=1):
            row = np.zeros(k - 1, dtype=np.int64)
            gh = pos[int(G.mul[g, h])]
            if gh:
                row[gh - 1] += 1
            row[i - 1] -= 1
            row[j - 1] -= 1
            rows.append(row)
            rhs.append(scale * int(ext.f[g, h]) % N)
    for d in dels:
        for i, g in enumerate(elems[1:], start=1):
            row = np.zeros(k - 1, dtype=np.int64)
            row[i - 1] += int(chi[d])
            dg = pos[int(act[d, g])]
            if dg:
                row[dg - 1] -= 1
            rows.append(row)
            rhs.append((-scale * int(ext.c[d, g])) % N)
    if not rows:
        return np.zeros(1, dtype=np.int64)
    res = solve(np.array(rows) % N, np.array(rhs) % N, N)
    if res is None:
        return None
    b = np.zeros(k, dtype=np.int64)
    b[1:] = res[0]
    return b


def pullback(ext: EquivariantExtension, elements,
             sub_gal: GaloisDatum | None = None) -> tuple[EquivariantExtension, np.ndarray]:
    """Restrict (f, c) along a subgroup inclusion; returns (ext, elements).

    The subgroup must be stable under the Galois action.  The returned
    extension lives over the reindexed subgroup with the induced datum.
    """
    gal = ext.gal
    elems = _check_subgroup(gal.G, elements)
    act = gal.action.table
    for d in range(gal.delta.order):
        if not np.isin(act[d][elems], elems).all():
            raise NotStable("subgroup not Galois-stable", witness=int(d))
    H, idx = gal.G.subgroup_table(elems)
    pos = {int(e): i for i, e in enumerate(idx)}
    sub_act = np.array([[pos[int(act[d, e])] for e in idx]
                        for d in range(gal.delta.order)], dtype=np.int64)
    new_gal = sub_gal or GaloisDatum(gal.delta, H, gal.chi,
                                     GroupAction(gal.delta, H, sub_act), gal.N,
                                     gal.base_algebraically_closed)
    f = ext.f[np.ix_(idx, idx)]
    c = ext.c[:, idx]
    return EquivariantExtension(new_gal, f, c), idx


# ---------------------------------------------------------------------------
# the class module: all pairs (f, c) modulo coboundary pairs
# ---------------------------------------------------------------------------


@dataclass
class ClassModule:
    """Solutions of C1-C3 modulo coboundary pairs, with representatives."""

    gal: GaloisDatum
    invariant_factors: tuple[int, ...]
    representatives: list[EquivariantExtension]
    _sub: SubquotientModule
    _space: object                  # ReducedCocycleSpace for the f-part

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def _vec_of_pair(self, ext: EquivariantExtension) -> np.ndarray:
        space = self._space
        n = self.gal.G.order
        fa = space.atomize(ext.f)
        cc = ext.c[1:, 1:].reshape(-1)
        return np.concatenate([fa, cc])

    def coordinates(self, ext: EquivariantExtension) -> Optional[np.ndarray]:
        if ext.violated_law() is not None:
            return None
        return self._sub.coordinates(self._vec_of_pair(ext))

    def element(self, coords) -> EquivariantExtension:
        coords = np.asarray(coords, dtype=np.int64)
        vec = self._sub.element_from_coordinates(coords)
        return self._pair_of_vec(vec)

    def _pair_of_vec(self, vec: np.ndarray) -> EquivariantExtension:
        space = self._space
        n = self.gal.G.order
        nd = self.gal.delta.order
        n_atoms = space.expr.shape[2]
        f = space.expand(vec[:n_atoms])
        c = np.zeros((nd, n), dtype=np.int64)
        if nd > 1 and n > 1:
            c[1:, 1:] = vec[n_atoms:].reshape(nd - 1, n - 1)
        return EquivariantExtension(self.gal, f, c)


def class_module(gal: GaloisDatum, caps: Caps = DEFAULT_CAPS) -> ClassModule:
    """Solve C1-C3 mod N and quotient by the coboundary pairs.

    The f-part runs in generator coordinates (values f(y, s) for a fixed
    generating set), which keeps the unknown count near |G| * rank instead
    of |G|^2; C2 rows are expressed through the same atoms.
    """
    G, N = gal.G, gal.N
    n = G.order
    nd = gal.delta.order
    space = reduced_cocycle_space(G, N)
    n_atoms = space.expr.shape[2]
    n_c = (nd - 1) * (n - 1)
    dim = n_atoms + n_c
    if dim > caps.class_module_unknowns:
        raise CapExceeded("class_module_unknowns", caps.class_module_unknowns, dim)

    def cpos(d: int, g: int) -> int:
        return n_atoms + (d - 1) * (n - 1) + (g - 1)

    ech = RowEchelon(dim, N)
    act = gal.action.table
    chi_n = gal.chi_mod_n
    mul = G.mul

    batch = []

    def flush():
        nonlocal batch
        if batch:
            ech.add(np.vstack(batch))
            batch = []

    # C1 rows over the atom block (cocycle identity, third argument a generator)
    gens = space.gens
    for i, s in enumerate(gens):
        hs = mul[:, s]
        for g in range(1, n):
            gh = mul[g]
            rows = np.zeros((n - 1, dim), dtype=np.int64)
            rows[:, :n_atoms] = space.expr[g, hs[1:], :].astype(np.int64) \
                - space.expr[g, 1:, :]
            hcol = (np.arange(1, n) - 1) * len(gens) + i
            np.add.at(rows, (np.arange(n - 1), hcol), 1)
            ok = gh[1:] != 0
            np.add.at(rows, (np.nonzero(ok)[0], (gh[1:][ok] - 1) * len(gens) + i), -1)
            batch.append(rows % N)
            if len(batch) >= 32:
                flush()
    flush()

    # C2: c_d(gh) - c_d(g) - c_d(h) - f(dg, dh) + chi(d) f(g,h) = 0
    for d in range(1, nd):
        dg = act[d]
        for g in range(1, n):
            rows = np.zeros((n - 1, dim), dtype=np.int64)
            # f part: -f(dg, dh) + chi(d) f(g, h)
            rows[:, :n_atoms] = (
                chi_n[d] * space.expr[g, 1:, :].astype(np.int64)
                - space.expr[dg[g], dg[1:], :]
            )
            # c part
            ghs = mul[g, 1:]
            ok = ghs != 0
            np.add.at(rows, (np.nonzero(ok)[0], cpos(d, 1) + ghs[ok] - 1), 1)
            rows[:, cpos(d, g)] -= 1
            np.add.at(rows, (np.arange(n - 1), cpos(d, 1) + np.arange(n - 1)), -1)
            batch.append(rows % N)
            if len(batch) >= 32:
                flush()
    flush()

    # C3: c_{de}(g) - chi(d) c_e(g) - c_d(e.g) = 0
    for d in range(1, nd):
        for e in range(1, nd):
            de = int(gal.delta.mul[d, e])
            rows = np.zeros((n - 1, dim), dtype=np.int64)
            if de != 0:
                np.add.at(rows, (np.arange(n - 1), cpos(de, 1) + np.arange(n - 1)), 1)
            np.add.at(rows, (np.arange(n - 1), cpos(e, 1) + np.arange(n - 1)),
                      -int(chi_n[d]))
            eg = act[e, 1:]
            ok = eg != 0
            np.add.at(rows, (np.nonzero(ok)[0], cpos(d, 1) + eg[ok] - 1), -1)
            batch.append(rows % N)
    flush()

    E = ech.matrix()
    W = kernel(E, N, compress=False) if E.size else np.eye(dim, dtype=np.int64)

    # coboundary pairs: for b : G -> Z/N, b(1)=0:
    #   f-part atoms: db(y,s) = b(y) + b(s) - b(ys)
    #   c-part: chi(d) b(g) - b(d.g)
    cols = np.zeros((dim, n - 1), dtype=np.int64)
    for bi in range(1, n):
        col = np.zeros(dim, dtype=np.int64)
        for y in range(1, n):
            for i, s in enumerate(gens):
                val = (1 if y == bi else 0) + (1 if s == bi else 0) \
                    - (1 if int(mul[y, s]) == bi else 0)
                if val:
                    col[space.atom_index(y, i)] += val
        for d in range(1, nd):
            for g in range(1, n):
                val = (int(chi_n[d]) if g == bi else 0) \
                    - (1 if int(act[d, g]) == bi else 0)
                if val:
                    col[cpos(d, g)] += val
        cols[:, bi - 1] = col % N
    sub = subquotient(W, cols, N)

    cm = ClassModule(gal, sub.invariant_factors, [], sub, space)
    cm.representatives = [cm._pair_of_vec(sub.generator_lifts[:, i]).validated()
                          for i in range(len(sub.invariant_factors))]
    return cm


def kummer_kernel(cm: ClassModule) -> np.ndarray:
    """Coordinates (columns) spanning the classes killed by Q/Z pushforward.

    Generated by the carry/twist pairs of the chi-equivariant characters
    G -> Z/N; these become trivial once the kernel is enlarged to Q/Z(1).
    """
    gal = cm.gal
    G, N = gal.G, gal.N
    phis = character_group_generators(
        G, N, equivariance=(gal.chi, gal.action.table))
    cols = []
    for phi in phis:
        f, c = bockstein(G, phi, N, gal.delta, gal.chi, gal.action.table)
        ext = EquivariantExtension(gal, f, c).validated()
        x = cm.coordinates(ext)
        if x is None:
            raise AssertionError("equivariant bockstein must satisfy C1-C3")
        cols.append(x)
    if not cols:
        return np.zeros((len(cm.invariant_factors), 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).T

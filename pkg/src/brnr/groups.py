"""Finite groups by multiplication table, group actions, finite modules.

Groups are stored as full multiplication tables over element indices
0..n-1 with the identity at index 0; the element order is fixed at
construction and every downstream iteration follows it, so results are
reproducible.  Large abelian groups never become tables: they live as
:class:`AbelianModule` (invariant factors plus integer action matrices).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .errors import (
    NoIdentity,
    NoInverse,
    NonAssociative,
    NotASubgroup,
    OrderBound,
    ValidationError,
)


class FiniteGroup:
    """A finite group given by its multiplication table (identity = 0)."""

    def __init__(self, mul: np.ndarray, *, validate: bool = True, name: str = ""):
        mul = np.asarray(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise ValidationError("multiplication table must be square")
        self.mul = mul
        self.name = name
        n = mul.shape[0]
        if validate:
            if mul.min(initial=0) < 0 or mul.max(initial=0) >= n:
                raise ValidationError("table entries out of range")
            if not np.array_equal(mul[0], np.arange(n)):
                bad = int(np.nonzero(mul[0] != np.arange(n))[0][0])
                raise NoIdentity("index 0 is not a left identity", witness=bad)
            if not np.array_equal(mul[:, 0], np.arange(n)):
                bad = int(np.nonzero(mul[:, 0] != np.arange(n))[0][0])
                raise NoIdentity("index 0 is not a right identity", witness=bad)
        inv = np.full(n, -1, dtype=np.int64)
        rows, cols = np.nonzero(mul == 0)
        inv[rows] = cols
        if validate and (inv < 0).any():
            raise NoInverse("element has no inverse", witness=int(np.nonzero(inv < 0)[0][0]))
        self.inv = inv
        if validate:
            for g in range(n):
                left = mul[mul[g]]          # (h,k) -> (g h) k
                right = mul[g][mul]         # (h,k) -> g (h k)
                if not np.array_equal(left, right):
                    h, k = map(int, np.argwhere(left != right)[0])
                    raise NonAssociative("associativity fails", witness=(g, h, k))

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    @property
    def identity(self) -> int:
        return 0

    def op(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def power(self, g: int, k: int) -> int:
        k = k % self.element_order(g)
        out = 0
        for _ in range(k):
            out = int(self.mul[out, g])
        return out

    def conjugate(self, g: int, by: int) -> int:
        return int(self.mul[self.mul[by, g], self.inv[by]])

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        out = np.ones(n, dtype=np.int64)
        for g in range(n):
            x, k = int(self.mul[0, g]), 1
            while x != 0:
                x = int(self.mul[x, g])
                k += 1
            out[g] = k
        return out

    def element_order(self, g: int) -> int:
        return int(self.element_orders[g])

    @cached_property
    def exponent(self) -> int:
        out = 1
        for k in self.element_orders:
            out = out * int(k) // gcd(out, int(k))
        return out

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def closure(self, seed) -> tuple[int, ...]:
        """Subgroup generated by the given element indices (sorted)."""
        members = {0}
        frontier = [0]
        gens = [int(g) for g in seed]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = int(self.mul[x, g])
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return tuple(sorted(members))

    def centralizer(self, g: int) -> np.ndarray:
        return np.nonzero(self.mul[:, g] == self.mul[g, :])[0]

    def commutator_subgroup(self) -> tuple[int, ...]:
        n = self.order
        comms = set()
        for a in range(n):
            for b in range(n):
                ab = self.mul[a, b]
                ba = self.mul[b, a]
                comms.add(int(self.mul[self.inv[ba], ab]))
        return self.closure(comms)

    def minimal_generators(self) -> list[int]:
        """Greedy generating set following canonical element order."""
        gens: list[int] = []
        have = self.closure(gens)
        for x in range(1, self.order):
            if x not in have:
                gens.append(x)
                have = self.closure(gens)
                if len(have) == self.order:
                    break
        return gens

    def subgroup_table(self, elements) -> tuple["FiniteGroup", np.ndarray]:
        """Reindexed table of a subgroup; returns (group, original indices)."""
        elems = tuple(sorted(int(e) for e in set(elements)))
        if not elems or elems[0] != 0:
            raise NotASubgroup("subgroup must contain the identity", witness=elems[:4])
        pos = {e: i for i, e in enumerate(elems)}
        sub = np.empty((len(elems), len(elems)), dtype=np.int64)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                p = int(self.mul[a, b])
                if p not in pos:
                    raise NotASubgroup("set not closed under multiplication",
                                       witness=(a, b, p))
                sub[i, j] = pos[p]
        return FiniteGroup(sub, validate=False), np.array(elems, dtype=np.int64)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} of order {self.order}>"


def group_from_table(table) -> FiniteGroup:
    """Validate a square index table as a group; raises with a witness."""
    return FiniteGroup(np.asarray(table, dtype=np.int64), validate=True)


def group_from_permutations(generators, degree: int | None = None,
                            caps: Caps = DEFAULT_CAPS, name: str = "") -> FiniteGroup:
    """Group generated by permutations of {0..m-1}; ordering = BFS discovery."""
    gens = [tuple(int(x) for x in g) for g in generators]
    if degree is None:
        if not gens:
            raise ValidationError("degree required for an empty generator list")
        degree = len(gens[0])
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise ValidationError("not a permutation", witness=g)
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    queue = [ident]
    while queue:
        x = queue.pop(0)
        for g in gens:
            y = tuple(x[g[i]] for i in range(degree))  # x o g (apply g first)
            if y not in index:
                if len(elems) >= caps.closure:
                    raise OrderBound("closure", caps.closure, len(elems) + 1)
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    n = len(elems)
    if n > caps.table_group:
        raise OrderBound("table_group", caps.table_group, n)
    mul = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            mul[i, j] = index[tuple(p[q[k]] for k in range(degree))]
    return FiniteGroup(mul, validate=False, name=name)


# ---------------------------------------------------------------------------
# subgroup enumeration
# ---------------------------------------------------------------------------


def subgroups_cyclic(G: FiniteGroup) -> list[tuple[int, ...]]:
    seen = {}
    for g in range(G.order):
        H = G.closure([g])
        seen.setdefault(H, g)
    return sorted(seen, key=lambda h: (len(h), h))


def subgroups_bicyclic(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Subgroups generated by a commuting pair (cyclic ones included)."""
    seen = set()
    for t in range(G.order):
        pow_t = _cycle(G, t)
        for c in map(int, G.centralizer(t)):
            if c < t:
                continue
            pow_c = _cycle(G, c)
            members = {int(G.mul[a, b]) for a in pow_t for b in pow_c}
            seen.add(tuple(sorted(members)))
    return sorted(seen, key=lambda h: (len(h), h))


def _cycle(G: FiniteGroup, g: int) -> list[int]:
    out = [0]
    x = int(G.mul[0, g])
    while x != 0:
        out.append(x)
        x = int(G.mul[x, g])
    return out


def subgroups_abelian(G: FiniteGroup, cap: int = 100_000) -> list[tuple[int, ...]]:
    """All abelian subgroups, grown by extending with centralizing elements."""
    found = set(subgroups_cyclic(G))
    frontier = list(found)
    while frontier:
        H = frontier.pop()
        members = set(H)
        cent = None
        for h in H:
            ch = set(map(int, G.centralizer(h)))
            cent = ch if cent is None else (cent & ch)
        for g in sorted(cent - members):
            H2 = G.closure(list(H) + [g])
            if H2 not in found:
                if len(found) > cap:
                    raise OrderBound("closure", cap, len(found))
                found.add(H2)
                frontier.append(H2)
    return sorted(found, key=lambda h: (len(h), h))


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    left = set(range(G.order))
    classes = []
    while left:
        g = min(left)
        orbit = {int(G.mul[G.mul[x, g], G.inv[x]]) for x in range(G.order)}
        classes.append(tuple(sorted(orbit)))
        left -= orbit
    return sorted(classes, key=lambda c: (c[0],))


# ---------------------------------------------------------------------------
# group actions
# ---------------------------------------------------------------------------


@dataclass
class GroupAction:
    """Action of ``actor`` on ``target`` by automorphisms (one row per actor)."""

    actor: FiniteGroup
    target: FiniteGroup
    table: np.ndarray

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int64)
        if self.table.shape != (self.actor.order, self.target.order):
            raise ValidationError("action table has wrong shape")

    def validate(self) -> None:
        n = self.target.order
        if not np.array_equal(self.table[0], np.arange(n)):
            raise ValidationError("identity must act as the identity map",
                                  witness=int(self.table[0].argmax()))
        mt = self.target.mul
        for a in range(self.actor.order):
            row = self.table[a]
            if sorted(row.tolist()) != list(range(n)):
                raise ValidationError("action row is not a permutation", witness=a)
            if not np.array_equal(row[mt], mt[np.ix_(row, row)]):
                bad = np.argwhere(row[mt] != mt[np.ix_(row, row)])[0]
                raise ValidationError("action row is not an automorphism",
                                      witness=(a, int(bad[0]), int(bad[1])))
        for a in range(self.actor.order):
            for b in range(self.actor.order):
                ab = int(self.actor.mul[a, b])
                if not np.array_equal(self.table[ab], self.table[a][self.table[b]]):
                    raise ValidationError("action is not a homomorphism", witness=(a, b))

    def act(self, a: int, x: int) -> int:
        return int(self.table[a, x])

    @staticmethod
    def trivial(actor: FiniteGroup, target: FiniteGroup) -> "GroupAction":
        table = np.tile(np.arange(target.order, dtype=np.int64), (actor.order, 1))
        return GroupAction(actor, target, table)


# ---------------------------------------------------------------------------
# finite abelian modules
# ---------------------------------------------------------------------------


@dataclass
class AbelianModule:
    """prod Z/d_i with an acting group operating by integer matrices.

    Elements are integer coefficient vectors, coordinate i taken mod d_i.
    ``action[a]`` is the matrix of the actor element a.
    """

    invariant_factors: tuple[int, ...]
    actor: FiniteGroup | None = None
    action: np.ndarray | None = None   # (|actor|, r, r)

    def __post_init__(self):
        self.invariant_factors = tuple(int(d) for d in self.invariant_factors)
        for d, e in zip(self.invariant_factors, self.invariant_factors[1:]):
            if e % d:
                raise ValidationError("invariant factors must form a divisor chain",
                                      witness=(d, e))
        if any(d < 2 for d in self.invariant_factors):
            raise ValidationError("invariant factors must be >= 2")
        if self.action is not None:
            self.action = np.asarray(self.action, dtype=np.int64)
            r = self.rank
            if self.action.shape != (self.actor.order, r, r):
                raise ValidationError("action tensor has wrong shape")
            mods = np.array(self.invariant_factors, dtype=np.int64)
            self.action = self.action % mods[None, :, None]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def reduce(self, v: np.ndarray) -> np.ndarray:
        mods = np.array(self.invariant_factors, dtype=np.int64)
        return np.asarray(v, dtype=np.int64) % mods

    def validate(self) -> None:
        if self.action is None:
            return
        d = np.array(self.invariant_factors, dtype=np.int64)
        for a in range(self.actor.order):
            M = self.action[a]
            bad = np.argwhere((M * d[None, :]) % d[:, None])
            if bad.size:
                i, j = map(int, bad[0])
                raise ValidationError(
                    "action matrix does not respect the moduli", witness=(a, i, j))
        if not np.array_equal(self.action[0] % d[:, None],
                              np.eye(self.rank, dtype=np.int64) % d[:, None]):
            raise ValidationError("identity must act as the identity matrix")
        for a in range(self.actor.order):
            for b in range(self.actor.order):
                ab = int(self.actor.mul[a, b])
                prod = self.action[a] @ self.action[b] % d[:, None]
                if not np.array_equal(prod, self.action[ab] % d[:, None]):
                    raise ValidationError("module action is not a homomorphism",
                                          witness=(a, b))
        # invertibility of each action matrix follows from the homomorphism
        # law with the inverse element

    def act_vec(self, a: int, v: np.ndarray) -> np.ndarray:
        if self.action is None:
            return self.reduce(v)
        return self.reduce(self.action[a] @ np.asarray(v, dtype=np.int64))

    def matrix(self, a: int) -> np.ndarray:
        if self.action is None:
            return np.eye(self.rank, dtype=np.int64)
        return self.action[a]

    def dual(self) -> "AbelianModule":
        """Hom(M, Z/exp M) with the contragredient action (a.f)(x) = f(a^-1 x)."""
        if self.action is None:
            return AbelianModule(self.invariant_factors, self.actor, None)
        d = self.invariant_factors
        r = self.rank
        out = np.zeros_like(self.action)
        for a in range(self.actor.order):
            ainv = int(self.actor.inv[a])
            M = self.action[ainv]
            for j in range(r):
                for i in range(r):
                    out[a, j, i] = M[i, j] * d[j] // d[i]
        return AbelianModule(d, self.actor, out)

    def pairing(self, phi: np.ndarray, x: np.ndarray) -> int:
        """Evaluate a dual vector phi on a module vector x, valued in Z/exp."""
        e = self.exponent
        w = np.array([e // d for d in self.invariant_factors], dtype=np.int64)
        return int(np.sum(np.asarray(phi, dtype=np.int64) * w *
                          np.asarray(x, dtype=np.int64)) % e)

    def with_actor(self, actor: FiniteGroup, hom: np.ndarray) -> "AbelianModule":
        """Restrict/inflate the action along a homomorphism actor -> self.actor."""
        if self.action is None:
            return AbelianModule(self.invariant_factors, actor, None)
        hom = np.asarray(hom, dtype=np.int64)
        return AbelianModule(self.invariant_factors, actor, self.action[hom])

    def enumerate_vectors(self, cap: int = 200_000):
        if self.order > cap:
            raise OrderBound("element_scan", cap, self.order)
        for tup in np.ndindex(*self.invariant_factors):
            yield np.array(tup, dtype=np.int64)

    def to_table_group(self, caps: Caps = DEFAULT_CAPS) -> tuple[FiniteGroup, "GroupAction | None"]:
        """Tabulate the underlying group; also tabulates the action if present."""
        n = self.order
        if n > caps.table_group:
            raise OrderBound("table_group", caps.table_group, n)
        factors = self.invariant_factors
        strides = np.ones(self.rank, dtype=np.int64)
        for i in range(self.rank - 2, -1, -1):
            strides[i] = strides[i + 1] * factors[i + 1]

        def to_index(vec) -> int:
            return int(np.dot(self.reduce(vec), strides))

        vecs = np.array(list(np.ndindex(*factors)), dtype=np.int64) \
            if self.rank else np.zeros((1, 0), dtype=np.int64)
        mods = np.array(factors, dtype=np.int64)
        mul = ((vecs[:, None, :] + vecs[None, :, :]) % mods).reshape(n * n, -1)
        mul_idx = (mul @ strides).reshape(n, n)
        group = FiniteGroup(mul_idx, validate=False)
        action = None
        if self.action is not None:
            table = np.empty((self.actor.order, n), dtype=np.int64)
            for a in range(self.actor.order):
                imgs = (vecs @ self.action[a].T) % mods
                table[a] = imgs @ strides
            action = GroupAction(self.actor, group, table)
        return group, action

    def vector_of_index(self, idx: int) -> np.ndarray:
        out = np.zeros(self.rank, dtype=np.int64)
        for i in range(self.rank - 1, -1, -1):
            out[i] = idx % self.invariant_factors[i]
            idx //= self.invariant_factors[i]
        return out


def module_from_group(factors, actor: FiniteGroup | None = None,
                      matrices=None) -> AbelianModule:
    mod = AbelianModule(tuple(factors), actor,
                        None if matrices is None else np.asarray(matrices))
    mod.validate()
    return mod


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    idx = np.arange(n, dtype=np.int64)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, validate=False,
                       name=f"Z/{n}")


def abelian_group(factors) -> FiniteGroup:
    mod = AbelianModule(tuple(factors))
    G, _ = mod.to_table_group()
    G.name = " x ".join(f"Z/{d}" for d in factors)
    return G


def symmetric_group(n: int) -> FiniteGroup:
    gens = []
    if n >= 2:
        gens.append([1, 0] + list(range(2, n)))
    if n >= 3:
        gens.append(list(range(1, n)) + [0])
    return group_from_permutations(gens, degree=n, name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    gens = []
    if n >= 3:
        gens.append([1, 2, 0] + list(range(3, n)))
    if n >= 4:
        if n % 2:
            gens.append(list(range(1, n)) + [0])
        else:
            gens.append([1, 0] + list(range(3, n)) + [2])
    return group_from_permutations(gens, degree=n, name=f"A{n}")


def dihedral_group(n: int) -> FiniteGroup:
    rot = list(range(1, n)) + [0]
    ref = [(n - i) % n for i in range(n)]
    return group_from_permutations([rot, ref], degree=n, name=f"D{n}")


def quaternion_group() -> FiniteGroup:
    # elements 1, -1, i, -i, j, -j, k, -k as permutations of themselves
    # (left regular representation)
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    sign = {s: (-1 if s.startswith("-") else 1) for s in labels}
    base = {s: s.lstrip("-") for s in labels}
    table_base = {
        ("1", x): x for x in "1ijk"
    }
    table_base.update({(x, "1"): x for x in "1ijk"})
    rules = {("i", "i"): ("-", "1"), ("j", "j"): ("-", "1"), ("k", "k"): ("-", "1"),
             ("i", "j"): ("+", "k"), ("j", "k"): ("+", "i"), ("k", "i"): ("+", "j"),
             ("j", "i"): ("-", "k"), ("k", "j"): ("-", "i"), ("i", "k"): ("-", "j")}

    def mul_labels(a: str, b: str) -> str:
        s = sign[a] * sign[b]
        x, y = base[a], base[b]
        if x == "1":
            res = y
        elif y == "1":
            res = x
        else:
            sg, res = rules[(x, y)]
            if sg == "-":
                s = -s
        if res == "1" and s == -1:
            return "-1"
        return res if s == 1 else "-" + res

    index = {lab: i for i, lab in enumerate(labels)}
    mul = np.array([[index[mul_labels(a, b)] for b in labels] for a in labels],
                   dtype=np.int64)
    return FiniteGroup(mul, validate=True, name="Q8")


@dataclass
class SemidirectGroup:
    """N x| Q on pairs (n, q); index = n * |Q| + q."""

    group: FiniteGroup
    n_size: int
    q_size: int
    n_embed: np.ndarray        # index of (n, 1)
    q_embed: np.ndarray        # index of (1, q)
    project_q: np.ndarray      # (n, q) -> q
    project_n: np.ndarray      # (n, q) -> n

    def pair_index(self, n_idx: int, q_idx: int) -> int:
        return n_idx * self.q_size + q_idx


def semidirect_product(N, Q: FiniteGroup, action: GroupAction | None = None,
                       caps: Caps = DEFAULT_CAPS) -> SemidirectGroup:
    """Build N x| Q with (n1,q1)(n2,q2) = (n1 * (q1.n2), q1 q2)."""
    if isinstance(N, AbelianModule):
        N_group, mod_action = N.to_table_group(caps)
        if action is None:
            action = mod_action
            if action is not None and action.actor is not Q:
                raise ValidationError("module actor differs from Q; pass an action")
    else:
        N_group = N
    if action is None:
        action = GroupAction.trivial(Q, N_group)
    if action.actor.order != Q.order or action.target.order != N_group.order:
        raise ValidationError("action shape does not match N, Q")
    nN, nQ = N_group.order, Q.order
    total = nN * nQ
    if total > caps.table_group:
        raise OrderBound("table_group", caps.table_group, total)
    act = action.table
    mulN, mulQ = N_group.mul, Q.mul
    n1 = np.repeat(np.arange(nN), nQ)
    q1 = np.tile(np.arange(nQ), nN)
    mul = np.empty((total, total), dtype=np.int64)
    for i in range(total):
        a, qa = int(n1[i]), int(q1[i])
        twisted = act[qa]                      # n2 -> qa . n2
        left = mulN[a][twisted]                # n2 -> a * (qa.n2)
        mul[i] = (left[:, None] * nQ + mulQ[qa][None, :]).reshape(-1)
    group = FiniteGroup(mul, validate=False)
    return SemidirectGroup(
        group,
        nN,
        nQ,
        n_embed=np.arange(nN, dtype=np.int64) * nQ,
        q_embed=np.arange(nQ, dtype=np.int64),
        project_q=np.tile(np.arange(nQ, dtype=np.int64), nN),
        project_n=np.repeat(np.arange(nN, dtype=np.int64), nQ),
    )

import itertools
import numpy as np
import pytest

from brnr.groups import (
    AbelianModule,
    FiniteGroup,
    abelian_group,
    cyclic_group,
    dihedral_group,
    group_from_table,
    quaternion_group,
    symmetric_group,
)
from brnr.cohomology import (
    bockstein,
    character_group_generators,
    coboundary1,
    cocycle2_defect,
    cup_h1_h1,
    dies_in_qz,
    h1,
    h2,
    h2_trivial_scalar,
    is_scalar_coboundary,
    restrict_cochain,
    scalar_module,
    sha,
    subgroup_module,
    tate_h0,
)
from brnr.errors import NotACocycle, NotEquivariant


def brute_h2_order(G: FiniteGroup, m: int) -> int:
    """|H^2(G, Z/m)| by enumerating all normalized 2-cochains (tiny cases)."""
    n = G.order
    cells = (n - 1) ** 2
    assert m**cells <= 300_000, "brute force only for tiny cases"
    cocycles = []
    for flat in itertools.product(range(m), repeat=cells):
        f = np.zeros((n, n), dtype=np.int64)
        f[1:, 1:] = np.array(flat, dtype=np.int64).reshape(n - 1, n - 1)
        ok = True
        for g in range(n):
            for h in range(n):
                for k in range(n):
                    lhs = (f[h, k] - f[G.mul[g, h], k] + f[g, G.mul[h, k]] - f[g, h]) % m
                    if lhs:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            cocycles.append(f)
    coboundaries = set()
    for bflat in itertools.product(range(m), repeat=n - 1):
        b = np.zeros(n, dtype=np.int64)
        b[1:] = bflat
        db = (b[:, None] + b[None, :] - b[G.mul]) % m
        db[0, :] = 0
        db[:, 0] = 0
        coboundaries.add(db.tobytes())
    return len(cocycles) // len(coboundaries)


def test_h1_trivial_group():
    G = group_from_table([[0]])
    M = scalar_module(4)
    assert h1(G, M).invariant_factors == ()


def test_h1_z2_negating_z4():
    G = cyclic_group(2)
    M = AbelianModule((4,), G, np.array([[[1]], [[3]]]))
    H = h1(G, M)
    assert H.invariant_factors == (2,)
    # the nonzero class: a(s) = 2 is a coboundary? d0(v)(s) = -v - v = 2v,
    # so a(s)=2 IS a coboundary; the generator must be one of a(s) in {1,3}
    rep = H.representatives[0]
    assert rep[1, 0] in (1, 3)
    # brute force: all 4 normalized 1-cochains
    cocycles = []
    for v in range(4):
        a = np.array([[0], [v]])
        lhs = (3 * v - 0 + v) % 4  # s.a(s) - a(ss) + a(s)
        if lhs == 0:
            cocycles.append(v)
    assert sorted(cocycles) == [0, 1, 2, 3]  # all are cocycles here
    cob = sorted({(2 * v) % 4 for v in range(4)})
    assert cob == [0, 2]
    assert H.order == len(cocycles) // len(cob)


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (2, 4)])
def test_h2_cyclic_brute_force(n, m):
    G = cyclic_group(n)
    assert brute_h2_order(G, m) == np.gcd(n, m)
    H = h2(G, scalar_module(m))
    expected = () if np.gcd(n, m) == 1 else (int(np.gcd(n, m)),)
    assert H.invariant_factors == expected


@pytest.mark.parametrize("n,m", [(n, m) for n in range(2, 13) for m in range(2, 13)])
def test_h2_cyclic_gcd_law(n, m):
    H = h2(cyclic_group(n), scalar_module(m))
    g = int(np.gcd(n, m))
    assert H.invariant_factors == (() if g == 1 else (g,))


def test_h2_klein_four_mod_2():
    G = abelian_group([2, 2])
    H = h2(G, scalar_module(2))
    assert H.invariant_factors == (2, 2, 2)
    assert brute_h2_order(G, 2) == 8


def test_h2_trivial_group():
    G = group_from_table([[0]])
    assert h2(G, scalar_module(6)).invariant_factors == ()


def test_h2_dense_vs_reduced_agree():
    for G in (cyclic_group(4), abelian_group([2, 2]), symmetric_group(3),
              dihedral_group(4), quaternion_group()):
        for m in (2, 4, G.order):
            dense_M = AbelianModule((m,), G, np.tile(np.eye(1, dtype=np.int64),
                                                     (G.order, 1, 1)))
            from brnr.cohomology import CohomologyGroup  # dense path via action
            import brnr.cohomology as C
            n = G.order
            Hd = None
            # force the dense route by giving a (trivial) action
            Hd = h2(G, dense_M)
            Hr = h2_trivial_scalar(G, m)
            assert Hd.invariant_factors == Hr.invariant_factors
            # cross coordinates: each dense generator must be recognized by
            # the reduced computation and vice versa, with matching orders
            for rep in Hd.representatives:
                c = Hr.coordinates(rep[:, :, 0])
                assert c is not None
            for rep in Hr.representatives:
                c = Hd.coordinates(rep)
                assert c is not None


def test_representatives_are_cocycles_and_coordinates_are_unit_vectors():
    for G in (cyclic_group(6), abelian_group([2, 4]), symmetric_group(3)):
        H = h2(G, scalar_module(G.order))
        M = scalar_module(G.order)
        for i, rep in enumerate(H.representatives):
            assert cocycle2_defect(G, M, rep) is None
            coords = H.coordinates(rep)
            expect = np.zeros(len(H.invariant_factors), dtype=np.int64)
            expect[i] = 1
            assert np.array_equal(coords, expect)
        # coboundaries have zero coordinates
        b = np.zeros((G.order, 1), dtype=np.int64)
        b[1:, 0] = np.arange(1, G.order) % G.order
        db = coboundary1(G, M, b)
        assert H.is_coboundary(db)


def test_tate_h0_examples():
    # (Z/2)^3 acting trivially on Z/8: norm = 8 * id = 0, invariants all
    Q = abelian_group([2, 2, 2])
    M = AbelianModule((8,), Q, np.tile(np.eye(1, dtype=np.int64), (8, 1, 1)))
    T = tate_h0(Q, M)
    assert T.invariant_factors == (8,)

    # trivial group: H^0 = M, norm = identity, quotient = 0
    T = tate_h0(group_from_table([[0]]), scalar_module(6))
    assert T.invariant_factors == ()

    # Z/2 negating Z/4: invariants {0,2}, norms = 0 -> Z/2
    G = cyclic_group(2)
    M = AbelianModule((4,), G, np.array([[[1]], [[3]]]))
    T = tate_h0(G, M)
    assert T.invariant_factors == (2,)


def test_restriction_to_trivial_subgroup_is_zero():
    G = cyclic_group(4)
    H2 = h2(G, scalar_module(4))
    rep = H2.representatives[0]
    sub = restrict_cochain(rep, np.array([0]), 2)
    assert not sub.any()


def test_restrict_h2_generator_of_z4_to_z2():
    G = cyclic_group(4)
    H2 = h2(G, scalar_module(4))
    assert H2.invariant_factors == (4,)
    elems = np.array([0, 2])
    B, idx = G.subgroup_table(elems)
    rep = H2.representatives[0]
    restricted = restrict_cochain(rep[:, :, 0], idx, 2)
    # brute-force: is the restriction a coboundary mod 4 on Z/2?
    witness = is_scalar_coboundary(B, restricted, 4)
    HB = h2(B, scalar_module(4))
    coords = HB.coordinates(restricted[:, :, None])
    assert (witness is None) == bool(coords.any())


def test_dies_in_qz():
    # zero cocycle dies
    B = cyclic_group(2)
    assert dies_in_qz(np.zeros((2, 2)), B, 2)

    # the nonzero class of H^2(Z/2, Z/2) dies in Q/Z (it is a Bockstein)
    f = np.zeros((2, 2), dtype=np.int64)
    f[1, 1] = 1
    assert dies_in_qz(f, B, 2)

    # the alternating class on (Z/2)^2 does not die mod 8
    V = abelian_group([2, 2])
    H = h2(V, scalar_module(2))
    # find a class whose Q/Z image survives: scan all 8 classes
    alive = []
    for c in itertools.product(range(2), repeat=3):
        table = H.element_table(np.array(c))
        if not dies_in_qz(table[:, :, 0], V, 2):
            alive.append(c)
    assert alive  # (Z/2)^2 has H^2(-, Q/Z) = Z/2, so something survives


def brute_force_dies_in_qz(f, B: FiniteGroup, N: int) -> bool:
    """Enumerate witnesses b: B -> Z/(N*exp B) for e*f = db."""
    e = B.exponent
    m = N * e
    n = B.order
    target = (e * np.asarray(f, dtype=np.int64)) % m
    for bflat in itertools.product(range(m), repeat=n - 1):
        b = np.zeros(n, dtype=np.int64)
        b[1:] = bflat
        db = (b[:, None] + b[None, :] - b[B.mul]) % m
        db[0, :] = 0
        db[:, 0] = 0
        if np.array_equal(db, target):
            return True
    return False


@pytest.mark.parametrize("group,m", [("z2", 2), ("z4", 2), ("z2z2", 2), ("z2", 4)])
def test_dies_in_qz_matches_brute_force(group, m):
    G = {"z2": cyclic_group(2), "z4": cyclic_group(4),
         "z2z2": abelian_group([2, 2])}[group]
    rng = np.random.default_rng(17)
    H = h2(G, scalar_module(m))
    for _ in range(10):
        coords = rng.integers(0, 4, size=len(H.invariant_factors))
        table = H.element_table(coords)[:, :, 0]
        assert dies_in_qz(table, G, m) == brute_force_dies_in_qz(table, G, m)


def test_cup_product():
    # Z/2, trivial module Z/2, x = y = identity character
    G = cyclic_group(2)
    M = scalar_module(2, G)
    Mdual = M.dual()
    x = np.array([[0], [1]])
    out = cup_h1_h1(G, M, x, Mdual, x)
    # nonzero class of H^2(Z/2, Z/2): f(1,1) = 1
    H = h2(G, scalar_module(2))
    coords = H.coordinates(out[:, :, None])
    assert coords is not None and coords.any()

    # x = 0 gives the zero cocycle
    z = cup_h1_h1(G, M, np.zeros((2, 1), dtype=np.int64), Mdual, x)
    assert not z.any()


def test_cup_of_coboundary_is_coboundary():
    G = cyclic_group(4)
    M = scalar_module(4, G)
    Md = M.dual()
    # a coboundary 1-cochain: d0(v) = g.v - v = 0 for trivial action, so
    # use a nontrivial action: negation on Z/4
    G2 = cyclic_group(2)
    M2 = AbelianModule((4,), G2, np.array([[[1]], [[3]]]))
    M2d = M2.dual()
    v = np.array([1], dtype=np.int64)
    cob = np.stack([M2.act_vec(g, v) - v for g in range(2)]) % 4
    y = np.array([[0], [1]])
    out = cup_h1_h1(G2, M2, cob, M2d, y)
    # the pairing is equivariant, so the cup lands in trivial-action H^2
    H = h2(G2, scalar_module(4))
    coords = H.coordinates(out[:, :, None])
    assert coords is not None
    assert not coords.any()


def test_bockstein_basics():
    G = cyclic_group(2)
    # phi = 0
    f, c = bockstein(G, np.zeros(2, dtype=np.int64), 2)
    assert not f.any()

    # phi = identity character of Z/2, trivial chi
    f, c = bockstein(G, np.array([0, 1]), 2)
    assert f[1, 1] == 1
    H = h2(G, scalar_module(2))
    assert H.coordinates(f[:, :, None]).any()

    # nontrivial chi mod 4: the twist appears
    D = cyclic_group(2)
    act = np.tile(np.arange(2), (2, 1))
    f, c = bockstein(G, np.array([0, 1]), 2, D, np.array([1, 3]), act)
    assert c[1, 1] == 1

    with pytest.raises(NotACocycle):
        bockstein(G, np.array([0, 3]), 4)


def test_bockstein_not_equivariant():
    G = cyclic_group(4)
    D = cyclic_group(2)
    act = np.tile(np.arange(4), (2, 1))
    # phi = identity: chi = -1 mod 16 requires phi(d.g) = -phi(g), fails
    with pytest.raises(NotEquivariant):
        bockstein(G, np.arange(4), 4, D, np.array([1, 15]), act)


def test_character_group_generators():
    G = abelian_group([2, 4])
    gens = character_group_generators(G, 4)
    # Hom(Z/2 x Z/4, Z/4) = Z/2 x Z/4, order 8
    span = set()
    frontier = [np.zeros(G.order, dtype=np.int64)]
    span.add(frontier[0].tobytes())
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = (x + g) % 4
            if y.tobytes() not in span:
                span.add(y.tobytes())
                frontier.append(y)
    assert len(span) == 8

    S3 = symmetric_group(3)
    gens = character_group_generators(S3, 6)
    orders = []
    for g in gens:
        k, acc = 1, g.copy()
        while acc.any():
            acc = (acc + g) % 6
            k += 1
        orders.append(k)
    assert np.prod(orders) == 2  # S3^ab = Z/2


def test_sha1_trivial_family_cases():
    G = group_from_table([[0]])
    M = scalar_module(2, G)
    res = sha(G, M, 1, "bic")
    assert res.invariant_factors == ()


def test_sha2_bic_abelian_groups_vanish():
    # B_0-style filter kills everything for small abelian groups
    for factors in ([2, 2], [4], [2, 4], [3, 3]):
        G = abelian_group(factors)
        N = G.order
        res = sha(G, scalar_module(N), 2, "bic", qz_intent=True)
        assert res.invariant_factors == ()


def test_inflation_restriction_h1_consistency():
    # surjection Z/4 -> Z/2 with module Z/2 fixed by the kernel
    G4, G2 = cyclic_group(4), cyclic_group(2)
    M2 = AbelianModule((2,), G2, np.tile(np.eye(1, dtype=np.int64), (2, 1, 1)))
    H_q = h1(G2, M2)
    surj = np.array([0, 1, 0, 1])
    M4 = AbelianModule((2,), G4, np.tile(np.eye(1, dtype=np.int64), (4, 1, 1)))
    H_g = h1(G4, M4)
    for rep in H_q.representatives:
        inflated = rep[surj]
        coords = H_g.coordinates(inflated)
        assert coords is not None
        # inflation of a nonzero class stays nonzero (injectivity on H^1)
        assert coords.any() == H_q.coordinates(rep).any()


def test_coboundary_compositions_vanish():
    # d2(d1(a)) = 0 for every 1-cochain basis vector, across several (G, M)
    from brnr.cohomology import coboundary1, cocycle2_defect
    cases = [
        (cyclic_group(4), scalar_module(4)),
        (symmetric_group(3), scalar_module(6)),
    ]
    G2 = cyclic_group(2)
    cases.append((G2, AbelianModule((4,), G2, np.array([[[1]], [[3]]]))))
    for G, M in cases:
        for g in range(1, G.order):
            for i in range(M.rank):
                a = np.zeros((G.order, M.rank), dtype=np.int64)
                a[g, i] = 1
                img = coboundary1(G, M, a)
                # the image of d1 is always a 2-cocycle: d2 o d1 = 0
                assert cocycle2_defect(G, M, img) is None


def test_zero_verdict_witness_is_sound():
    # whenever is_scalar_coboundary returns b, d1(b) equals the table
    rng = np.random.default_rng(31)
    for G in (cyclic_group(4), abelian_group([2, 2]), symmetric_group(3)):
        n, m = G.order, 8
        for _ in range(20):
            b = np.zeros(n, dtype=np.int64)
            b[1:] = rng.integers(0, m, size=n - 1)
            table = (b[:, None] + b[None, :] - b[G.mul]) % m
            table[0, :] = 0
            table[:, 0] = 0
            w = is_scalar_coboundary(G, table, m)
            assert w is not None
            again = (w[:, None] + w[None, :] - w[G.mul]) % m
            again[0, :] = 0
            again[:, 0] = 0
            assert np.array_equal(again, table)

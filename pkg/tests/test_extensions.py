import itertools

import numpy as np
import pytest

from brnr.cohomology import bockstein, dies_in_qz
from brnr.errors import MismatchedBase, NotASubgroup, NotStable, ValidationError
from brnr.extensions import (
    ClassModule,
    EquivariantExtension,
    GaloisDatum,
    baer_sum,
    class_module,
    extension_group,
    kummer_kernel,
    pullback,
    scale_extension,
    splits_equivariantly,
    splits_over,
    validate,
    zero_extension,
)
from brnr.groups import (
    GroupAction,
    abelian_group,
    cyclic_group,
    group_from_table,
    symmetric_group,
)


def real_datum_z2() -> GaloisDatum:
    """G = Z/2 constant, Delta = Z/2 with chi = -1 mod 4 (complex conjugation)."""
    gal = GaloisDatum.real_like(cyclic_group(2))
    gal.validate()
    return gal


def bockstein_pair(gal: GaloisDatum, phi) -> EquivariantExtension:
    f, c = bockstein(gal.G, np.asarray(phi), gal.N, gal.delta, gal.chi,
                     gal.action.table)
    return EquivariantExtension(gal, f, c)


def brute_sections(eg, elems, group):
    """All homomorphic sections H -> E over the subgroup (tiny sizes only)."""
    N = eg.N
    others = [int(e) for e in elems if e != 0]
    for choice in itertools.product(range(N), repeat=len(others)):
        table = {0: eg.pair_index(0, 0)}
        for lam, g in zip(choice, others):
            table[g] = eg.pair_index(lam, g)
        good = True
        for a in elems:
            for b in elems:
                prod = int(group.mul[a, b])
                if eg.group.mul[table[int(a)], table[int(b)]] != table[prod]:
                    good = False
                    break
            if not good:
                break
        if good:
            yield table


def test_validate_zero_pair():
    for gal in (GaloisDatum.trivial(cyclic_group(2)), real_datum_z2(),
                GaloisDatum.trivial(symmetric_group(3))):
        assert validate(zero_extension(gal)) is None


def test_validate_bockstein_pair():
    gal = real_datum_z2()
    ext = bockstein_pair(gal, [0, 1])
    assert validate(ext) is None
    assert ext.c[1, 1] == 1  # the nontrivial twist


def test_validate_catches_non_homomorphism_c():
    # f = 0 forces c_d to be a homomorphism (C2); break it
    G = abelian_group([2, 2])
    gal = GaloisDatum.real_like(G, N=2)
    c = np.zeros((2, 4), dtype=np.int64)
    c[1] = [0, 1, 1, 1]  # not additive on (Z/2)^2
    ext = EquivariantExtension(gal, np.zeros((4, 4), dtype=np.int64), c)
    law, witness = validate(ext)
    assert law == "C2"


def test_extension_group_direct_product():
    gal = GaloisDatum.trivial(cyclic_group(2), N=2)
    eg = extension_group(zero_extension(gal))
    assert eg.group.order == 4
    assert eg.group.is_abelian
    assert sorted(eg.group.element_orders.tolist()) == [1, 2, 2, 2]


def test_extension_group_remark_real_case_is_z4_with_inversion():
    gal = real_datum_z2()
    ext = bockstein_pair(gal, [0, 1])
    eg = extension_group(ext)
    # the group is cyclic of order 4
    assert sorted(eg.group.element_orders.tolist()) == [1, 2, 4, 4]
    # the action inverts a generator
    gen = int(np.nonzero(eg.group.element_orders == 4)[0][0])
    acted = eg.action.table[1, gen]
    assert acted == eg.group.inv[gen]
    assert acted != gen


def test_extension_group_bockstein_is_cyclic_square():
    for n in (2, 3, 4):
        G = cyclic_group(n)
        gal = GaloisDatum.trivial(G, N=n)
        f, _ = bockstein(G, np.arange(n), n)
        ext = EquivariantExtension(gal, f, np.zeros((1, n), dtype=np.int64))
        eg = extension_group(ext)
        # (1, 1) must have order n^2
        x = eg.pair_index(1, 1)
        k, acc = 1, x
        while acc != 0:
            acc = int(eg.group.mul[acc, x])
            k += 1
        assert k == n * n


def test_splits_over_examples():
    gal = GaloisDatum.trivial(cyclic_group(2), N=2)
    assert splits_over(zero_extension(gal), [0, 1]) is not None

    f, _ = bockstein(cyclic_group(2), np.array([0, 1]), 2)
    ext = EquivariantExtension(gal, f, np.zeros((1, 2), dtype=np.int64))
    assert splits_over(ext, [0, 1]) is None          # Z/4 does not split mod 2
    assert dies_in_qz(ext.f, cyclic_group(2), 2)     # but dies in Q/Z
    assert splits_over(ext, [0]) is not None         # trivial subgroup


def test_splits_equivariantly_remark_case():
    gal = real_datum_z2()
    # the constant-Z/4 pair: carry cocycle, no twist
    f, _ = bockstein(cyclic_group(2), np.array([0, 1]), 2)
    const_z4 = EquivariantExtension(gal, f, np.zeros((2, 2), dtype=np.int64))
    assert validate(const_z4) is None
    assert splits_equivariantly(const_z4, [0, 1]) is None
    # and the twisted companion does not split equivariantly either (f blocks)
    twisted = bockstein_pair(gal, [0, 1])
    assert splits_equivariantly(twisted, [0, 1]) is None
    # with trivial Delta the joint system reduces to the abstract one
    triv = GaloisDatum.trivial(cyclic_group(2), N=2)
    ext = EquivariantExtension(triv, f, np.zeros((1, 2), dtype=np.int64))
    assert splits_equivariantly(ext, [0, 1]) is None
    assert splits_equivariantly(zero_extension(triv), [0, 1]) is not None


def test_splitting_matches_brute_force_sections():
    rng = np.random.default_rng(3)
    G = abelian_group([2, 2])
    for gal in (GaloisDatum.trivial(G, N=2), GaloisDatum.real_like(G, N=2)):
        cm = class_module(gal)
        for coords in itertools.islice(cm._sub.all_coordinates(), 0, None):
            ext = cm.element(coords)
            eg = extension_group(ext)
            for elems in ([0, 1], [0, 1, 2, 3]):
                expect = splits_over(ext, elems) is not None
                brute = any(True for _ in brute_sections(eg, elems, G))
                assert expect == brute
                # equivariant version against brute equivariant sections
                expect_eq = splits_equivariantly(ext, elems) is not None
                brute_eq = False
                for table in brute_sections(eg, elems, G):
                    ok = all(
                        eg.action.table[d, table[g]]
                        == table[int(gal.action.table[d, g])]
                        for d in range(gal.delta.order) for g in elems)
                    if ok:
                        brute_eq = True
                        break
                assert expect_eq == brute_eq


def test_conjugation_formula_matches_extension_group():
    # (0,gamma)(x,y)(0,gamma)^-1 = (x + f(gamma,y) - f(gamma,gamma^-1)
    #                                 + f(gamma y, gamma^-1), gamma y gamma^-1)
    G = symmetric_group(3)
    gal = GaloisDatum.trivial(G, N=6)
    cm = class_module(gal)
    rng = np.random.default_rng(8)
    for _ in range(4):
        coords = rng.integers(0, 6, size=len(cm.invariant_factors))
        ext = cm.element(coords)
        eg = extension_group(ext, validate_tables=False)
        f = ext.f
        for gamma in range(6):
            for lam in range(6):
                for y in range(6):
                    e_g = eg.pair_index(0, gamma)
                    x = eg.pair_index(lam, y)
                    lhs = eg.group.mul[eg.group.mul[e_g, x], eg.group.inv[e_g]]
                    ginv = int(G.inv[gamma])
                    coeff = (lam + f[gamma, y] - f[gamma, ginv]
                             + f[int(G.mul[gamma, y]), ginv]) % 6
                    rhs = eg.pair_index(int(coeff), G.conjugate(y, gamma))
                    assert lhs == rhs


def test_pullback():
    gal = GaloisDatum.trivial(cyclic_group(4), N=4)
    f, _ = bockstein(cyclic_group(4), np.arange(4), 4)
    ext = EquivariantExtension(gal, f, np.zeros((1, 4), dtype=np.int64))
    # identity embedding: same tables
    same, idx = pullback(ext, [0, 1, 2, 3])
    assert np.array_equal(same.f, ext.f)
    # trivial subgroup: zero tables
    z, _ = pullback(ext, [0])
    assert not z.f.any()
    # the order-2 subgroup: restriction still satisfies the laws
    sub, idx = pullback(ext, [0, 2])
    assert validate(sub) is None


def test_baer_sum_and_class_module_functoriality():
    gal = real_datum_z2()
    cm = class_module(gal)
    assert cm.invariant_factors == (2, 2)
    exts = [cm.element(c) for c in cm._sub.all_coordinates()]
    for e1 in exts:
        for e2 in exts:
            s = baer_sum(e1, e2)
            c1, c2 = cm.coordinates(e1), cm.coordinates(e2)
            cs = cm.coordinates(s)
            mods = np.array(cm.invariant_factors)
            assert np.array_equal(cs, (c1 + c2) % mods)


def test_baer_sum_mismatch():
    g1 = GaloisDatum.trivial(cyclic_group(2), N=2)
    g2 = GaloisDatum.trivial(cyclic_group(3), N=3)
    with pytest.raises(MismatchedBase):
        baer_sum(zero_extension(g1), zero_extension(g2))


def test_class_module_trivial_delta_z2():
    gal = GaloisDatum.trivial(cyclic_group(2), N=2)
    cm = class_module(gal)
    assert cm.invariant_factors == (2,)
    # brute-force: all pairs are (f(1,1), -) with no c; 2 classes
    # (cross-checked against H^2(Z/2, Z/2) = Z/2)


def test_class_module_trivial_group():
    gal = GaloisDatum.trivial(group_from_table([[0]]), N=1)
    cm = class_module(gal)
    assert cm.invariant_factors == ()


def test_class_module_real_datum_contains_remark_pair():
    gal = real_datum_z2()
    cm = class_module(gal)
    f, _ = bockstein(cyclic_group(2), np.array([0, 1]), 2)
    const_z4 = EquivariantExtension(gal, f, np.zeros((2, 2), dtype=np.int64))
    coords = cm.coordinates(const_z4)
    assert coords is not None and coords.any()


def test_class_module_brute_force_tiny():
    """Enumerate all pairs (f, c) for G = Z/2, Delta = Z/2, chi = -1 mod 4."""
    gal = real_datum_z2()
    cm = class_module(gal)
    valid = []
    for fv in range(2):
        for cv in range(2):
            f = np.zeros((2, 2), dtype=np.int64)
            f[1, 1] = fv
            c = np.zeros((2, 2), dtype=np.int64)
            c[1, 1] = cv
            ext = EquivariantExtension(gal, f, c)
            if validate(ext) is None:
                valid.append(ext)
    assert len(valid) == 4
    # coboundary pairs: b(1) in {0,1}: db = 2b = 0, twist chi*b - b = 0 mod 2
    # so all 4 pairs are distinct classes
    coord_set = {tuple(cm.coordinates(e)) for e in valid}
    assert len(coord_set) == 4


def test_kummer_kernel_z2():
    gal = GaloisDatum.trivial(cyclic_group(2), N=2)
    cm = class_module(gal)
    K = kummer_kernel(cm)
    # generated by the Bockstein of the identity character: nonzero
    assert K.shape[1] >= 1 and K.any()


def test_kummer_kernel_perfect_group_is_zero():
    # A5 is too big here; use the trivial-abelianization criterion on S3's
    # commutator... S3^ab = Z/2 so not perfect. Use the smallest perfect
    # group A5? order 60 table is fine.
    from brnr.groups import alternating_group
    A5 = alternating_group(5)
    gal = GaloisDatum.trivial(A5, N=4)  # reduced N keeps it fast
    cm = class_module(gal)
    K = kummer_kernel(cm)
    assert K.shape[1] == 0 or not K.any()


def test_kummer_classes_split_equivariantly_at_lifted_modulus():
    for gal in (GaloisDatum.trivial(cyclic_group(2), N=2),
                real_datum_z2(),
                GaloisDatum.trivial(abelian_group([2, 2]), N=2)):
        from brnr.cohomology import character_group_generators
        phis = character_group_generators(gal.G, gal.N,
                                          equivariance=(gal.chi, gal.action.table))
        for phi in phis:
            ext = bockstein_pair(gal, phi)
            all_elems = list(range(gal.G.order))
            w = splits_equivariantly(ext, all_elems, modulus=gal.N * gal.N)
            assert w is not None


def test_sum_of_bocksteins_is_bockstein_of_sum():
    gal = GaloisDatum.trivial(abelian_group([2, 2]), N=2)
    cm = class_module(gal)
    phis = [np.array([0, 1, 0, 1]), np.array([0, 0, 1, 1])]
    e1 = bockstein_pair(gal, phis[0])
    e2 = bockstein_pair(gal, phis[1])
    esum = bockstein_pair(gal, (phis[0] + phis[1]) % 2)
    lhs = cm.coordinates(baer_sum(e1, e2))
    rhs = cm.coordinates(esum)
    assert np.array_equal(lhs, rhs)


def test_scale_extension():
    gal = GaloisDatum.trivial(cyclic_group(4), N=4)
    f, _ = bockstein(cyclic_group(4), np.arange(4), 4)
    ext = EquivariantExtension(gal, f, np.zeros((1, 4), dtype=np.int64))
    cm = class_module(gal)
    c1 = cm.coordinates(ext)
    c2 = cm.coordinates(scale_extension(ext, 3))
    assert np.array_equal((3 * c1) % np.array(cm.invariant_factors), c2)

"""Bundled oracle suite for `brnr selftest`.

Each check compares a production code path against an independent route:
exhaustive enumeration, explicit extension-group search, or a theorem-level
regression value.  They are small and deterministic; the pytest suite runs
the heavier versions.
"""

from __future__ import annotations

import itertools

import numpy as np

from .cohomology import bockstein, dies_in_qz, h1, h2, scalar_module
from .engine import (
    b0,
    br_nr,
    galois_condition,
    galois_condition_bruteforce,
    galois_condition_single,
    _admissible_triples,
)
from .extensions import (
    EquivariantExtension,
    GaloisDatum,
    class_module,
    extension_group,
    splits_over,
)
from .fastpath import (
    SemidirectDatum,
    build_example_714,
    direct_product_extension_group,
    extension_from_q_cocycle,
    semidirect_cocycle_from_section,
    sha1_bic,
)
from .groups import (
    AbelianModule,
    GroupAction,
    abelian_group,
    cyclic_group,
    dihedral_group,
    semidirect_product,
    symmetric_group,
)
from .localeval import LocalDatum, NonabelianCocycle, evaluate, nonabelian_h1
from .zmod import smith_normal_form_raw, as_mod


def _assert(cond, msg):
    if not cond:
        raise AssertionError(msg)


def check_snf_reconstruction():
    rng = np.random.default_rng(2024)
    for m in (2, 4, 12, 64):
        for _ in range(20):
            A = rng.integers(0, m, size=(5, 4))
            snf = smith_normal_form_raw(A, m, want_P=True, want_Pinv=True,
                                        want_Q=True, want_Qinv=True)
            D = np.zeros((5, 4), dtype=np.int64)
            for i, d in enumerate(snf.diag):
                D[i, i] = d
            _assert(np.array_equal(snf.Pinv @ D @ snf.Qinv % m, as_mod(A, m)),
                    f"U D V != A mod {m}")


def check_h2_gcd_law():
    for n in (2, 3, 4, 6, 8, 12):
        for m in (2, 3, 4, 6, 8, 12):
            H = h2(cyclic_group(n), scalar_module(m))
            g = int(np.gcd(n, m))
            _assert(H.invariant_factors == (() if g == 1 else (g,)),
                    f"H^2(Z/{n}, Z/{m}) != Z/gcd")


def check_dies_in_qz_bruteforce():
    G = cyclic_group(2)
    H = h2(G, scalar_module(2))
    table = H.representatives[0][:, :, 0]
    _assert(dies_in_qz(table, G, 2), "Bockstein class must die in Q/Z")
    V = abelian_group([2, 2])
    HV = h2(V, scalar_module(2))
    survivors = 0
    for c in itertools.product(range(2), repeat=3):
        t = HV.element_table(np.array(c))[:, :, 0]
        # brute force at modulus N*exp = 8 over 4 unknowns is 8^3 candidates
        e, m = 2, 4
        target = (2 * t) % m
        brute = False
        for b1 in range(m):
            for b2 in range(m):
                for b3 in range(m):
                    b = np.array([0, b1, b2, b3])
                    db = (b[:, None] + b[None, :] - b[V.mul]) % m
                    db[0, :] = 0
                    db[:, 0] = 0
                    if np.array_equal(db, target):
                        brute = True
                        break
                if brute:
                    break
            if brute:
                break
        _assert(dies_in_qz(t, V, 2) == brute, f"dies_in_qz mismatch at {c}")
        if not brute:
            survivors += 1
    _assert(survivors > 0, "some class of (Z/2)^2 must survive in Q/Z")


def check_galois_condition_vs_bruteforce():
    gal = GaloisDatum.real_like(cyclic_group(4))
    cm = class_module(gal)
    rng = np.random.default_rng(7)
    triples = list(_admissible_triples(gal))
    for _ in range(3):
        coords = rng.integers(0, 6, size=len(cm.invariant_factors))
        ext = cm.element(coords)
        for d, tau, gamma in triples:
            closed = galois_condition_single(ext, d, tau, gamma)
            brute = galois_condition_bruteforce(ext, d, tau, gamma)
            _assert(closed == brute,
                    f"galois closed form disagrees at {(d, tau, gamma)}")


def check_splitting_vs_section_search():
    gal = GaloisDatum.trivial(cyclic_group(2), N=2)
    f, _ = bockstein(cyclic_group(2), np.array([0, 1]), 2)
    ext = EquivariantExtension(gal, f, np.zeros((1, 2), dtype=np.int64))
    eg = extension_group(ext)
    brute = False
    for lam in range(2):
        table = {0: eg.pair_index(0, 0), 1: eg.pair_index(lam, 1)}
        ok = all(eg.group.mul[table[a], table[b]] == table[(a + b) % 2]
                 for a in range(2) for b in range(2))
        brute = brute or ok
    _assert((splits_over(ext, [0, 1]) is not None) == brute,
            "splits_over disagrees with section search")


def check_remark_real_case():
    gal = GaloisDatum.real_like(cyclic_group(2))
    f, _ = bockstein(cyclic_group(2), np.array([0, 1]), 2)
    const_z4 = EquivariantExtension(gal, f, np.zeros((2, 2), dtype=np.int64))
    from .extensions import splits_equivariantly
    _assert(splits_equivariantly(const_z4, [0, 1]) is None,
            "constant Z/4 must not split equivariantly over the real datum")
    _assert(dies_in_qz(const_z4.f, cyclic_group(2), 2),
            "the class must still die in Q/Z abstractly")
    ok, wit = galois_condition(const_z4)
    _assert(not ok and wit == (1, 1, 0), "the Galois condition must fail at sigma")
    _assert(br_nr(gal).invariant_factors == (),
            "the order-2 real-like datum has no unramified classes")


def check_augmentation_example_p2():
    ex = build_example_714(2)
    H = h1(ex.sd.Q, ex.sd.N_hat)
    _assert(H.invariant_factors == (8,), "H1(Q, N^) must be Z/8")
    rep = sha1_bic(ex.sd)
    _assert(rep.invariant_factors == (2,), "Sha1_bic must be Z/2")
    coords = H.coordinates((4 * ex.a_table) % 8)
    _assert(coords is not None and coords.any(), "4[a] must be the generator")


def check_fastpath_oracle_equivalence():
    Q = cyclic_group(2)
    M = AbelianModule((4,), Q, np.array([[[1]], [[3]]]))
    sd = SemidirectDatum(Q, M)
    fast = sha1_bic(sd)
    slow = b0(semidirect_product(sd.N, sd.Q).group)
    _assert(fast.invariant_factors == slow.invariant_factors,
            "fast path disagrees with the engine on D4")


def check_extension_formula_cross_validation():
    Q = cyclic_group(2)
    M = AbelianModule((4,), Q, np.array([[[1]], [[3]]]))
    sd = SemidirectDatum(Q, M)
    H = h1(Q, sd.N_hat)
    for rep in H.representatives:
        ext = extension_from_q_cocycle(sd, rep)
        sdg_big, big_module = direct_product_extension_group(sd, rep)
        f_direct = semidirect_cocycle_from_section(sd, sdg_big, big_module)
        scale = ext.gal.N // sd.N.exponent
        _assert(np.array_equal(ext.f, scale * f_direct % ext.gal.N),
                "coordinate formula disagrees with the direct construction")


def check_base_point_evaluation_zero():
    G = symmetric_group(3)
    gal = GaloisDatum.trivial(G)
    cm = class_module(gal)
    ld = LocalDatum("v", cyclic_group(2), np.zeros(2, dtype=np.int64))
    h0 = NonabelianCocycle(np.zeros(2, dtype=np.int64))
    for coords in itertools.islice(cm._sub.all_coordinates(), 6):
        ext = cm.element(np.asarray(coords))
        _assert(evaluate(ext, ld, h0).verdict == "Zero",
                "base point must evaluate to Zero")


CHECKS = [
    ("smith normal form reconstruction", check_snf_reconstruction),
    ("H^2 of cyclic groups: gcd law", check_h2_gcd_law),
    ("Q/Z death vs brute-force coboundary search", check_dies_in_qz_bruteforce),
    ("Galois condition closed form vs extension-group search",
     check_galois_condition_vs_bruteforce),
    ("splitting solver vs section search", check_splitting_vs_section_search),
    ("order-2 real-like regression", check_remark_real_case),
    ("group-ring example, p = 2", check_augmentation_example_p2),
    ("fast path vs engine on a dihedral case", check_fastpath_oracle_equivalence),
    ("extension coordinate formula vs direct construction",
     check_extension_formula_cross_validation),
    ("base-point evaluation is Zero", check_base_point_evaluation_zero),
]

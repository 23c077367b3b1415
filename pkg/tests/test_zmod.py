import numpy as np
import pytest

from brnr.zmod import (
    AbelianStructure,
    RowEchelon,
    ZModMatrix,
    as_mod,
    cokernel,
    echelon_compress,
    gcd_with_modulus,
    intersect_submodules,
    kernel,
    smith_normal_form,
    smith_normal_form_raw,
    solve,
    solve_many,
    submodule_invariants,
    subquotient,
    unit_scale,
)

MODULI = [2, 3, 4, 8, 12, 64]


def brute_span(cols: np.ndarray, m: int) -> set[tuple[int, ...]]:
    """All elements of the column span, by closure."""
    span = {tuple(np.zeros(cols.shape[0], dtype=int))}
    frontier = list(span)
    gens = [tuple(cols[:, j] % m) for j in range(cols.shape[1])]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple((np.array(x) + np.array(g)) % m)
            if y not in span:
                span.add(y)
                frontier.append(y)
    return span


def order_multiset(elems: set[tuple[int, ...]], m: int, add) -> dict[int, int]:
    out: dict[int, int] = {}
    for e in elems:
        k, acc = 1, e
        while any(acc):
            acc = add(acc, e)
            k += 1
        out[k] = out.get(k, 0) + 1
    return out


def test_unit_scale_exhaustive_small_moduli():
    for m in MODULI:
        for a in range(m):
            u, d = unit_scale(a, m)
            assert np.gcd(u, m) == 1
            assert u * a % m == d
            assert d == (np.gcd(a, m) if a else 0)


def test_snf_trivial_examples():
    D, U, V = smith_normal_form(ZModMatrix(5, np.zeros((3, 3))))
    assert not D.entries.any()
    assert np.array_equal(U.entries, np.eye(3, dtype=np.int64))
    assert np.array_equal(V.entries, np.eye(3, dtype=np.int64))

    D, _, _ = smith_normal_form(ZModMatrix(4, [[2]]))
    assert D.entries[0, 0] == 2


def test_snf_reconstruction_example_mod_12():
    A = ZModMatrix(12, [[2, 4], [4, 8]])
    D, U, V = smith_normal_form(A)
    assert list(np.diag(D.entries)) == [2, 0]
    assert np.array_equal(U.entries @ D.entries @ V.entries % 12, A.entries)


@pytest.mark.parametrize("m", MODULI)
def test_snf_reconstruction_random(m):
    rng = np.random.default_rng(12345 + m)
    shapes = [(1, 1), (2, 3), (3, 2), (4, 4), (5, 3), (6, 6), (8, 5)]
    for r, c in shapes:
        for _ in range(40):
            A = rng.integers(0, m, size=(r, c))
            snf = smith_normal_form_raw(A, m, want_P=True, want_Pinv=True,
                                        want_Q=True, want_Qinv=True)
            D = np.zeros((r, c), dtype=np.int64)
            for i, d in enumerate(snf.diag):
                D[i, i] = d
            assert np.array_equal(snf.P @ as_mod(A, m) @ snf.Q % m, D)
            assert np.array_equal(snf.Pinv @ D @ snf.Qinv % m, as_mod(A, m))
            assert np.array_equal(snf.P @ snf.Pinv % m, np.eye(r, dtype=np.int64))
            assert np.array_equal(snf.Q @ snf.Qinv % m, np.eye(c, dtype=np.int64))
            divs = [gcd_with_modulus(int(d), m) for d in snf.diag]
            for a, b in zip(divs, divs[1:]):
                assert b % a == 0


def test_snf_reconstruction_large():
    rng = np.random.default_rng(7)
    for m in (8, 12):
        A = rng.integers(0, m, size=(40, 40))
        snf = smith_normal_form_raw(A, m, want_P=True, want_Pinv=True,
                                    want_Q=True, want_Qinv=True)
        D = np.zeros((40, 40), dtype=np.int64)
        for i, d in enumerate(snf.diag):
            D[i, i] = d
        assert np.array_equal(snf.Pinv @ D @ snf.Qinv % m, as_mod(A, m))


def test_solve_examples():
    x, k = solve(np.eye(3, dtype=np.int64), np.array([1, 2, 3]), 5)
    assert np.array_equal(x, [1, 2, 3])
    assert k.shape[1] == 0

    assert solve(np.array([[2]]), np.array([1]), 4) is None

    res = solve(np.array([[2]]), np.array([2]), 4)
    assert res is not None
    x, k = res
    assert 2 * x[0] % 4 == 2
    spanned = {(2 * t) % 4 for t in range(4) for g in k.T for _ in [0]}
    assert {int(g[0]) for g in k.T} <= {0, 2}
    assert any(int(g[0]) == 2 for g in k.T)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7, 8])
def test_solve_matches_brute_force(m):
    rng = np.random.default_rng(99 + m)
    for _ in range(60):
        r = int(rng.integers(1, 4))
        c = int(rng.integers(1, 4))
        A = rng.integers(0, m, size=(r, c))
        b = rng.integers(0, m, size=r)
        brute = []
        for x in np.ndindex(*([m] * c)):
            if not ((A @ np.array(x) - b) % m).any():
                brute.append(np.array(x))
        res = solve(A, b, m)
        if res is None:
            assert not brute
        else:
            x0, kr = res
            assert not ((A @ x0 - b) % m).any()
            # kernel spans exactly the solution differences
            kspan = brute_span(kr, m) if kr.size else {tuple([0] * c)}
            diffs = {tuple((s - x0) % m) for s in brute}
            assert kspan == diffs


def test_cokernel_examples():
    st = cokernel(np.eye(4, dtype=np.int64), 6)
    assert st.invariant_factors == ()

    st = cokernel(np.zeros((2, 0), dtype=np.int64), 6, rows=2)
    assert st.invariant_factors == (6, 6)

    st = cokernel(np.array([[2]]), 8)
    assert st.invariant_factors == (2,)


@pytest.mark.parametrize("m", [2, 3, 4, 6, 8, 12])
def test_cokernel_matches_brute_force(m):
    rng = np.random.default_rng(4321 + m)
    for _ in range(40):
        r = int(rng.integers(1, 4))
        c = int(rng.integers(0, 4))
        A = rng.integers(0, m, size=(r, c))
        st = cokernel(A, m)
        span = brute_span(A, m) if c else {tuple([0] * r)}
        quotient_order = m**r // len(span)
        assert st.order == quotient_order
        # generator lifts project to unit vectors, relations project to zero
        for i in range(len(st.invariant_factors)):
            coords = st.project(st.generator_lifts[:, i])
            expect = np.zeros(len(st.invariant_factors), dtype=np.int64)
            expect[i] = 1 % st.invariant_factors[i]
            assert np.array_equal(coords, expect)
        for j in range(c):
            assert st.is_zero(A[:, j])
        # multiset of coordinate orders equals multiset of coset orders
        add = lambda a, b: tuple((np.array(a) + np.array(b)) % m)
        cosets: dict[tuple, tuple] = {}
        for x in np.ndindex(*([m] * r)):
            key = tuple(st.project(np.array(x)))
            cosets.setdefault(key, x)
        assert len(cosets) == st.order


def test_kernel_is_exact_random():
    rng = np.random.default_rng(11)
    for m in MODULI:
        for _ in range(30):
            r = int(rng.integers(1, 5))
            c = int(rng.integers(1, 5))
            A = rng.integers(0, m, size=(r, c))
            K = kernel(A, m)
            assert not (A @ K % m).any()
            if c <= 3 and m <= 8:
                brute = {tuple(x) for x in np.ndindex(*([m] * c))
                         if not ((A @ np.array(x)) % m).any()}
                assert brute_span(K, m) == brute if K.size else brute == {tuple([0] * c)}


def test_echelon_preserves_row_span():
    rng = np.random.default_rng(5)
    for m in (4, 12, 64):
        A = rng.integers(0, m, size=(60, 7))
        E = echelon_compress(A, m)
        assert E.shape[0] <= 2 * 7 + 2
        # every original row is in the span of E and conversely
        for row in A % m:
            assert solve_many(E.T, row.reshape(-1, 1), m) is not None
        for row in E:
            assert solve_many(A.T % m, row.reshape(-1, 1), m) is not None


def test_subquotient_structure():
    m = 8
    W = np.array([[1, 0], [0, 2]])  # Z/8 + 2Z/8
    R = np.array([[4], [0]])        # 4Z/8 inside the first factor
    sq = subquotient(W, R, m)
    assert sq.invariant_factors == (4, 4)
    assert sq.coordinates(np.array([1, 0])) is not None
    assert sq.coordinates(np.array([0, 1])) is None  # not in W
    v = sq.element_from_coordinates(np.array([1, 0]))
    assert sq.coordinates(v) is not None


def test_intersect_submodules():
    m = 12
    G1 = np.array([[2], [0]])
    G2 = np.array([[3], [0]])
    inter = intersect_submodules(G1, G2, m)
    span = brute_span(inter, m) if inter.size else {(0, 0)}
    assert span == {(x, 0) for x in range(0, 12, 6)}


def test_submodule_invariants():
    m = 8
    gens = np.array([[2, 0], [0, 4]])
    assert submodule_invariants(gens, m) == (2, 4)
    assert submodule_invariants(np.zeros((3, 0)), m) == ()
    assert submodule_invariants(np.eye(2, dtype=np.int64), m) == (8, 8)

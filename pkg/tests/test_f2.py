import numpy as np

from boolfn.f2 import EchelonBasis, F2Matrix, pack_rows, set_bits, unpack_rows


def _rank_dense(a: np.ndarray) -> int:
    a = a.copy() % 2
    r = 0
    for c in range(a.shape[1]):
        piv = [i for i in range(r, a.shape[0]) if a[i, c]]
        if not piv:
            continue
        a[[r, piv[0]]] = a[[piv[0], r]]
        for i in range(a.shape[0]):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return r


def test_pack_unpack_roundtrip():
    rng = np.random.default_rng(0)
    a = rng.integers(0, 2, (5, 130), dtype=np.uint8)
    assert np.array_equal(unpack_rows(pack_rows(a), 130), a)


def test_set_bits():
    v = pack_rows(np.array([[0, 1, 0, 0, 1]]))[0]
    assert set_bits(v) == [1, 4]


def test_rank_matches_dense_elimination():
    rng = np.random.default_rng(1)
    for _ in range(30):
        r, c = rng.integers(1, 40, 2)
        a = (rng.random((r, c)) < 0.3).astype(np.uint8)
        assert F2Matrix.from_dense(a).rank() == _rank_dense(a)


def test_dependency_combination_sums_to_zero():
    rng = np.random.default_rng(2)
    vecs = rng.integers(0, 2, (12, 70), dtype=np.uint8)
    vecs[7] = vecs[1] ^ vecs[4] ^ vecs[6]
    basis = EchelonBasis(70)
    packed = pack_rows(vecs)
    for i in range(12):
        dep = basis.insert(packed[i])
        if dep is not None:
            idx = set_bits(dep)
            assert idx[-1] == i
            assert not np.bitwise_xor.reduce(vecs[idx], axis=0).any()
            return
    raise AssertionError("row 7 is a planted combination")


def test_dependency_forced_when_rows_exceed_width():
    rng = np.random.default_rng(3)
    basis = EchelonBasis(8)
    found = None
    for i in range(9):
        found = basis.insert(pack_rows(rng.integers(0, 2, (1, 8)))[0])
        if found is not None:
            break
    assert found is not None
    assert basis.rank <= 8


def test_kernel_vector():
    a = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    k = F2Matrix.from_dense(a).kernel_vector()
    assert k is not None and k.any()
    assert not ((a @ k) % 2).any()
    assert F2Matrix.from_dense(np.eye(3, dtype=np.uint8)).kernel_vector() is None

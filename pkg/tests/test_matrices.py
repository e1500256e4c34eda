"""Matrix kernel: powers, words, eigensplits, k-th root branches."""

import numpy as np
import pytest

from sl2rep.matrices import (
    IDENTITY,
    Diagonalizable,
    Jordan,
    Scalar,
    adjugate,
    determinant,
    eigen_split,
    eval_word,
    mat2,
    mat_power,
    matrix_roots,
    random_sl2,
)


def naive_power(m, k):
    """Reference power by plain repeated multiplication."""
    base = adjugate(m) if k < 0 else np.asarray(m, dtype=complex)
    out = np.eye(2, dtype=complex)
    for _ in range(abs(k)):
        out = out @ base
    return out


def test_mat_power_matches_naive():
    rng = np.random.default_rng(3)
    for _ in range(10):
        m = random_sl2(rng)
        for k in range(-6, 7):
            assert np.allclose(mat_power(m, k), naive_power(m, k), atol=1e-9)


def test_mat_power_identity_cases():
    m = mat2(2, 1, 1, 1)
    assert np.array_equal(mat_power(m, 0), IDENTITY)
    assert np.array_equal(mat_power(m, 1), m)
    with pytest.raises(ValueError):
        mat_power(m, 1.5)


def test_adjugate_inverts_det_one_matrices():
    rng = np.random.default_rng(5)
    for _ in range(8):
        m = random_sl2(rng)
        assert determinant(m) == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(m @ adjugate(m), IDENTITY, atol=1e-12)
    # adjugate itself never divides by the determinant
    m = mat2(2, 0, 0, 3)
    assert np.allclose(adjugate(m), mat2(3, 0, 0, 2))


def test_eval_word_is_the_product_of_powers():
    rng = np.random.default_rng(9)
    mats = [random_sl2(rng) for _ in range(3)]
    exps = (2, -3, 5)
    direct = mat_power(mats[0], 2) @ mat_power(mats[1], -3) @ mat_power(mats[2], 5)
    assert np.allclose(eval_word(mats, exps), direct, atol=1e-9)
    assert np.array_equal(eval_word(mats, ()), IDENTITY)
    with pytest.raises(ValueError):
        eval_word(mats[:1], (2, 2))


def test_eigen_split_diagonalizable():
    rng = np.random.default_rng(13)
    for _ in range(10):
        m = random_sl2(rng)
        split = eigen_split(m)
        if not isinstance(split, Diagonalizable):
            continue
        lam = split.eigenvalue
        diag = np.diag([lam, 1 / lam])
        rebuilt = split.basis @ diag @ (adjugate(split.basis) / determinant(split.basis))
        assert np.allclose(rebuilt, m, atol=1e-8)
        # chosen root has the larger imaginary part, tie toward real
        assert (lam.imag, lam.real) >= ((1 / lam).imag, (1 / lam).real)


def test_eigen_split_central_and_parabolic():
    assert eigen_split(np.eye(2, dtype=complex)) == Scalar(1)
    assert eigen_split(-np.eye(2, dtype=complex)) == Scalar(-1)
    up = eigen_split(mat2(1, 1, 0, 1))
    assert isinstance(up, Jordan) and up.sign == 1
    assert np.allclose(up.nilpotent, mat2(0, 1, 0, 0))
    down = eigen_split(mat2(-1, 3, 0, -1))
    assert isinstance(down, Jordan) and down.sign == -1
    assert np.allclose(down.nilpotent @ down.nilpotent, np.zeros((2, 2)), atol=1e-12)


def test_eigen_split_huge_trace_does_not_cancel():
    # the naive quadratic formula loses the small eigenvalue here
    m = mat2(1e12, 0, 0, 1e-12)
    split = eigen_split(m)
    assert isinstance(split, Diagonalizable)
    assert abs(split.eigenvalue) == pytest.approx(1e12, rel=1e-9)


def test_matrix_roots_diagonalizable_branches():
    rng = np.random.default_rng(17)
    for k in (2, 3, 5):
        m = random_sl2(rng)
        roots = matrix_roots(m, k)
        assert len(roots) == k
        for root in roots:
            assert determinant(root) == pytest.approx(1.0, abs=1e-9)
            assert np.allclose(mat_power(root, k), m, atol=1e-7)
        for i in range(k):
            for j in range(i + 1, k):
                assert not np.allclose(roots[i], roots[j], atol=1e-6)


@pytest.mark.parametrize(
    "sign,k,count",
    [
        (1, 2, 2),
        (1, 3, 2),
        (1, 4, 3),
        (-1, 2, 1),
        (-1, 3, 2),
        (-1, 4, 2),
    ],
)
def test_matrix_roots_of_central_matrices(sign, k, count):
    target = sign * np.eye(2, dtype=complex)
    roots = matrix_roots(target, k)
    assert len(roots) == count
    for root in roots:
        assert np.allclose(mat_power(root, k), target, atol=1e-9)


def test_matrix_roots_parabolic_plus():
    u = mat2(1, 1, 0, 1)
    for k in (2, 3, 4):
        roots = matrix_roots(u, k)
        assert len(roots) == 1
        assert np.allclose(roots[0], mat2(1, 1 / k, 0, 1), atol=1e-12)
        assert np.allclose(mat_power(roots[0], k), u, atol=1e-12)


def test_matrix_roots_parabolic_minus_even_obstruction():
    b = mat2(-1, 1, 0, -1)
    assert matrix_roots(b, 2) == []
    assert matrix_roots(b, 4) == []
    for k in (3, 5, 7):
        roots = matrix_roots(b, k)
        assert len(roots) == 1
        root = roots[0]
        assert np.trace(root) == pytest.approx(-2.0, abs=1e-12)
        assert np.allclose(mat_power(root, k), b, atol=1e-10)


def test_matrix_roots_order_one_and_validation():
    m = mat2(2, 1, 1, 1)
    assert np.array_equal(matrix_roots(m, 1)[0], m)
    with pytest.raises(ValueError):
        matrix_roots(m, 0)


def test_random_sl2_properties():
    rng = np.random.default_rng(21)
    for _ in range(20):
        m = random_sl2(rng)
        assert determinant(m) == pytest.approx(1.0, abs=1e-12)
        assert abs(m[0, 0]) >= 0.1
    a = random_sl2(np.random.default_rng(42))
    b = random_sl2(np.random.default_rng(42))
    assert np.array_equal(a, b)

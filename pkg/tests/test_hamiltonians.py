from fractions import Fraction

import numpy as np
import pytest

from ctqw import (
    Boundary,
    EmbeddingSpec,
    EmbeddingMismatchError,
    InvalidSizeError,
    NodeOutOfRangeError,
    NonHermitianError,
    RateConvention,
    SizeTooSmallError,
    TransitionRates,
    UnknownOrderError,
    dilate_rates,
    embed_block_hamiltonian,
    laplacian_stencil,
    line_hamiltonian,
    rates_to_dense,
    stencil_to_rates,
)


def test_stencil_order1_values():
    st = laplacian_stencil(1)
    assert st.half_width == 1
    assert st.coefficients[1] == Fraction(1)
    assert st.coefficients[-1] == Fraction(1)
    assert st.coefficients[0] == Fraction(-2)


def test_stencil_order10_values():
    st = laplacian_stencil(10)
    assert st.half_width == 5
    assert st.coefficients[5] == Fraction(8, 25200)
    assert st.coefficients[-5] == Fraction(8, 25200)
    assert st.coefficients[0] == Fraction(-73766, 25200)
    assert st.coefficients[1] == Fraction(42000, 25200)
    assert st.coefficients[2] == Fraction(-6000, 25200)
    assert st.coefficients[3] == Fraction(1000, 25200)
    assert st.coefficients[4] == Fraction(-125, 25200)


@pytest.mark.parametrize("order", [1, 10])
def test_stencil_zero_sum_exact(order):
    st = laplacian_stencil(order)
    assert sum(st.coefficients.values()) == Fraction(0)


@pytest.mark.parametrize("order", [1, 10])
def test_stencil_symmetric(order):
    st = laplacian_stencil(order)
    for s, c in st.coefficients.items():
        assert st.coefficients[-s] == c


def test_unknown_order():
    with pytest.raises(UnknownOrderError):
        laplacian_stencil(2)


def test_rates_from_order1():
    r = stencil_to_rates(laplacian_stencil(1))
    assert r.rates[1] == Fraction(-1, 2)
    assert r.rates[-1] == Fraction(-1, 2)
    assert r.rates[0] == Fraction(1)


def test_rates_from_order10():
    r = stencil_to_rates(laplacian_stencil(10))
    assert r.rates[1] == Fraction(-42000, 50400) == Fraction(-5, 6)
    assert r.rates[0] == Fraction(73766, 50400)
    assert r.rates[5] == Fraction(-8, 50400)


@pytest.mark.parametrize("order", [1, 10])
def test_rates_symmetric(order):
    r = stencil_to_rates(laplacian_stencil(order))
    for s, g in r.items():
        assert r.rates[-s] == g


@pytest.mark.parametrize("order", [1, 10])
def test_stencil_second_derivative_of_quadratic(order):
    # analytic oracle: applying the stencil to f(x) = x^2 must give exactly
    # f'' = 2 at every interior point, in exact rational arithmetic
    st = laplacian_stencil(order)
    for x in (-3, 0, 7):
        value = sum(c * Fraction(x + s) ** 2 for s, c in st.coefficients.items())
        assert value == Fraction(2)


def test_order10_beats_order1_on_sine():
    k = 0.1
    xs = np.arange(64)
    errors = {}
    for order in (1, 10):
        st = laplacian_stencil(order)
        approx = sum(float(c) * np.sin(k * (xs + s)) for s, c in st.coefficients.items())
        errors[order] = np.max(np.abs(approx - (-(k**2) * np.sin(k * xs))))
    assert errors[10] < errors[1]


def test_line_hamiltonian_quantum_truncated():
    h = line_hamiltonian(4, 1.0, RateConvention.QUANTUM, Boundary.TRUNCATED)
    expected = np.array(
        [[-2, 1, 0, 0], [1, -2, 1, 0], [0, 1, -2, 1], [0, 0, 1, -2]], dtype=float
    )
    np.testing.assert_array_equal(h.matrix, expected)


def test_line_hamiltonian_conventions_are_negatives():
    hq = line_hamiltonian(4, 1.0, RateConvention.QUANTUM, Boundary.TRUNCATED)
    hc = line_hamiltonian(4, 1.0, RateConvention.CONSERVATIVE, Boundary.TRUNCATED)
    np.testing.assert_array_equal(hc.matrix, -hq.matrix)


def test_line_hamiltonian_periodic_corners():
    h = line_hamiltonian(3, 1.0, RateConvention.QUANTUM, Boundary.PERIODIC)
    assert h.matrix[0, 2] == 1.0
    assert h.matrix[2, 0] == 1.0


def test_line_hamiltonian_size_and_gamma_validation():
    with pytest.raises(InvalidSizeError):
        line_hamiltonian(1, 1.0)
    with pytest.raises(ValueError):
        line_hamiltonian(4, 0.0)


def test_conservative_rows_sum_to_zero_periodic():
    for gamma in (1.0, 0.7, 2.5):
        h = line_hamiltonian(8, gamma, RateConvention.CONSERVATIVE, Boundary.PERIODIC)
        assert np.all(h.matrix.sum(axis=1) == 0.0)


def test_rates_to_dense_order1_ring():
    r = stencil_to_rates(laplacian_stencil(1))
    h = rates_to_dense(r, 5, Boundary.PERIODIC)
    # oracle: place gamma_s at column (0 + s) mod 5 of the first row
    expected_row = np.zeros(5)
    for s, g in r.items():
        expected_row[s % 5] += float(g)
    np.testing.assert_array_equal(h.matrix[0], expected_row)
    np.testing.assert_array_equal(expected_row, [1.0, -0.5, 0.0, 0.0, -0.5])


def test_rates_to_dense_is_circulant():
    rng = np.random.default_rng(4)
    vals = rng.normal(size=3)
    r = TransitionRates({0: vals[0], 1: vals[1], -1: vals[1], 2: vals[2], -2: vals[2]})
    h = rates_to_dense(r, 9, Boundary.PERIODIC)
    for i in range(8):
        np.testing.assert_array_equal(h.matrix[i + 1], np.roll(h.matrix[i], 1))


def test_rates_to_dense_commutes_with_cyclic_shift():
    r = stencil_to_rates(laplacian_stencil(10))
    for n in (16, 32):
        h = rates_to_dense(r, n, Boundary.PERIODIC).matrix
        shift = np.roll(np.eye(n), 1, axis=1)
        assert np.max(np.abs(h @ shift - shift @ h)) <= 1e-12


def test_rates_to_dense_truncated_corners_zero():
    r = stencil_to_rates(laplacian_stencil(1))
    h = rates_to_dense(r, 5, Boundary.TRUNCATED)
    assert h.matrix[0, 4] == 0.0
    assert h.matrix[4, 0] == 0.0


def test_rates_to_dense_too_small():
    r = stencil_to_rates(laplacian_stencil(10))  # half width 5
    with pytest.raises(SizeTooSmallError):
        rates_to_dense(r, 10, Boundary.PERIODIC)


def test_rates_to_dense_asymmetric_rates_rejected():
    with pytest.raises(NonHermitianError):
        rates_to_dense(TransitionRates({0: 1.0, 1: 0.5, -1: 0.25}), 8)


def test_dilate_rates():
    r = stencil_to_rates(laplacian_stencil(1))
    d = dilate_rates(r, 3)
    assert d.half_width == 3
    assert d.rates[3] == r.rates[1]
    assert d.rates[0] == r.rates[0]


def test_embed_block_two_nodes_by_hand():
    # hand oracle: N=2, lam=m=2, centers at elements 0 and 2, offsets {-1, 0};
    # each h[i][j] lands at ((kappa_i + r) mod 4, (kappa_j + r) mod 4)
    node_h = np.array([[-1.0, 1.0], [1.0, -1.0]])
    spec = EmbeddingSpec(node_count=2, lam=2, m=2)
    from ctqw import DenseOperator

    out = embed_block_hamiltonian(DenseOperator(node_h, Boundary.PERIODIC), spec)
    expected = np.array(
        [
            [-1.0, 0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0, 1.0],
            [1.0, 0.0, -1.0, 0.0],
            [0.0, 1.0, 0.0, -1.0],
        ]
    )
    np.testing.assert_array_equal(out.matrix, expected)


@pytest.mark.parametrize("n_nodes,lam", [(4, 2), (8, 4), (6, 3)])
def test_embed_tiling_matches_dilated_rates(n_nodes, lam):
    # when lam = m the blocks tile the ring exactly, so the lifted matrix
    # must equal the dense form of the lam-stretched rates
    r = stencil_to_rates(laplacian_stencil(1))
    node_h = rates_to_dense(r, n_nodes, Boundary.PERIODIC)
    spec = EmbeddingSpec(node_count=n_nodes, lam=lam, m=lam)
    lifted = embed_block_hamiltonian(node_h, spec)
    direct = rates_to_dense(dilate_rates(r, lam), n_nodes * lam, Boundary.PERIODIC)
    np.testing.assert_allclose(lifted.matrix, direct.matrix, atol=1e-14)


def test_embed_overlapping_blocks_symmetric():
    rng = np.random.default_rng(5)
    a = rng.normal(size=(6, 6))
    node_h = (a + a.T) / 2
    from ctqw import DenseOperator

    spec = EmbeddingSpec(node_count=6, lam=2, m=4)  # overlap: lam < m
    out = embed_block_hamiltonian(DenseOperator(node_h, Boundary.PERIODIC), spec)
    assert out.asymmetry() <= 1e-14


def test_embed_size_mismatch():
    from ctqw import DenseOperator

    spec = EmbeddingSpec(node_count=4, lam=2, m=2)
    with pytest.raises(EmbeddingMismatchError):
        embed_block_hamiltonian(DenseOperator(np.zeros((3, 3)), Boundary.PERIODIC), spec)


def test_operators_are_symmetric():
    for make in (
        lambda: line_hamiltonian(12, 0.7, RateConvention.QUANTUM, Boundary.PERIODIC),
        lambda: line_hamiltonian(12, 0.7, RateConvention.CONSERVATIVE, Boundary.TRUNCATED),
        lambda: rates_to_dense(stencil_to_rates(laplacian_stencil(10)), 24),
    ):
        assert make().asymmetry() <= 1e-14


def test_embedding_spec_validation():
    with pytest.raises(ValueError, match="lambda must not exceed m"):
        EmbeddingSpec(node_count=8, lam=4, m=2)
    with pytest.raises(ValueError):
        EmbeddingSpec(node_count=8, lam=0, m=2)
    with pytest.raises(ValueError):
        EmbeddingSpec(node_count=0, lam=1, m=1)


def test_embedding_spec_geometry():
    spec = EmbeddingSpec(node_count=160, lam=16, m=16)
    assert spec.total_elements == 2560
    assert spec.node_indices[0] == -79
    assert spec.node_indices[-1] == 80
    diffs = np.diff(spec.node_centers)
    assert np.all(diffs == 16)
    assert spec.element_of_node(0) == 79 * 16
    with pytest.raises(NodeOutOfRangeError):
        spec.element_of_node(81)

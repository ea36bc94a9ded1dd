import itertools

import numpy as np
import pytest

import dirac3sphere as d3s
from dirac3sphere import Metric

from _oracles import lapack_eigs, random_metrics


def test_level0_blocks_are_minus_C():
    m = Metric(1.1, 0.7, 0.4)
    for tag in "AB":
        blk = d3s.build_block(m, 0, tag)
        assert blk.size == 1
        assert blk.diag[0] == pytest.approx(-m.C, rel=1e-15)
        assert blk.sub.size == 0 and blk.sup.size == 0


def test_level1_blocks_match_displayed_matrices():
    a, b, c = 1.3, 0.8, 0.6
    m = Metric(a, b, c)
    A = d3s.build_block(m, 1, "A").to_dense() + m.C * np.eye(2)
    B = d3s.build_block(m, 1, "B").to_dense() + m.C * np.eye(2)
    assert np.allclose(A, [[a, c + b], [c + b, a]], rtol=0, atol=1e-14)
    assert np.allclose(B, [[-a, c - b], [c - b, -a]], rtol=0, atol=1e-14)


def test_representation_level0_is_minus_C_identity():
    m = Metric(0.9, 1.4, 0.5)
    op = d3s.build_from_representation(m, 0)
    assert np.allclose(op.matrix, -m.C * np.eye(2), rtol=0, atol=1e-14)


def test_representation_matches_recurrence_blocks():
    rng = np.random.default_rng(42)
    for m in random_metrics(rng, 20):
        for n in range(0, 13):
            rep_a, rep_b = d3s.build_from_representation(m, n).blocks()
            dense_a = d3s.build_block(m, n, "A").to_dense()
            dense_b = d3s.build_block(m, n, "B").to_dense()
            scale = max(1.0, np.abs(dense_a).max())
            assert np.abs(rep_a - dense_a).max() <= 1e-12 * scale
            assert np.abs(rep_b - dense_b).max() <= 1e-12 * scale


def test_representation_imaginary_residue_small():
    op = d3s.build_from_representation(Metric(1, 2, 3), 7)
    assert np.abs(op.matrix.imag).max() < 1e-12


def test_symmetrizability_structure():
    rng = np.random.default_rng(7)
    metrics = random_metrics(rng, 10) + [Metric(1.2, 0.9, 0.9), Metric(0.5, 0.5, 0.5)]
    for m in metrics:
        for n in range(1, 51):
            for tag in "AB":
                blk = d3s.build_block(m, n, tag)
                prod = blk.sub * blk.sup
                assert np.all(prod >= 0)
                assert np.array_equal(blk.sub == 0, blk.sup == 0)
                # products follow the (c +- b)^2 (k+1)(n-k) pattern
                k = np.arange(n)
                f_even, f_odd = ((m.c + m.b), (m.c - m.b)) if tag == "A" else ((m.c - m.b), (m.c + m.b))
                expected = np.where(k % 2 == 0, f_even, f_odd) ** 2 * (k + 1) * (n - k)
                assert np.allclose(prod, expected, rtol=1e-12, atol=0)


def test_chi2_coefficients():
    assert np.allclose(d3s.char_poly_small_n(Metric(1, 1, 1), 2), [1, 0, -12, -16], atol=0)
    m = Metric(1.7, 0.6, 1.1)
    coeffs = d3s.char_poly_small_n(m, 2)
    assert coeffs[3] == pytest.approx(-16 * m.a * m.b * m.c, rel=1e-14)


def test_chi2_roots_at_round_metric():
    # x^3 - 12x - 16 = (x+2)^2 (x-4); companion-matrix roots split the
    # double root at the sqrt(eps) level, the Sturm solver does not
    roots = np.sort(np.roots(d3s.char_poly_small_n(Metric(1, 1, 1), 2)).real)
    assert roots == pytest.approx([-2, -2, 4], abs=1e-6)
    eigs = d3s.eigenvalues(d3s.symmetrize(d3s.build_block(Metric(1, 1, 1), 2, "A"))) + 1.5
    assert eigs == pytest.approx([-2, -2, 4], abs=1e-10)


def test_chi4_locked_against_eigensolver():
    # frozen coefficients at the round metric, cross-checked against the
    # numerically computed characteristic polynomial of the level-4 block
    coeffs = d3s.char_poly_small_n(Metric(1, 1, 1), 4)
    assert np.allclose(coeffs, [1, 0, -60, -80, 960, 2304], atol=0)
    eigs = lapack_eigs(d3s.build_block(Metric(1, 1, 1), 4, "A")) + 1.5
    numeric = np.poly(eigs)
    assert np.allclose(coeffs, numeric, rtol=0, atol=1e-9 * max(abs(c) for c in coeffs))


def test_chi_vanishes_on_block_eigenvalues():
    rng = np.random.default_rng(3)
    for m in random_metrics(rng, 25):
        for n in (2, 4):
            coeffs = d3s.char_poly_small_n(m, n)
            scale = max(abs(c) for c in coeffs)
            for tag in "AB":
                eigs = lapack_eigs(d3s.build_block(m, n, tag)) + m.C
                assert np.abs(np.polyval(coeffs, eigs)).max() <= 1e-9 * scale


def test_chi_unsupported_level():
    with pytest.raises(d3s.UnsupportedLevelError):
        d3s.char_poly_small_n(Metric(1, 1, 1), 3)
    with pytest.raises(d3s.UnsupportedLevelError):
        d3s.closed_form_eigs(Metric(1, 1, 1), 2)


def test_closed_eigs_level1():
    m = Metric(1.2, 0.9, 0.7)
    eigs = d3s.closed_form_eigs(m, 1)
    assert eigs[0] == pytest.approx(m.mu, rel=1e-14)
    assert d3s.closed_form_eigs(Metric(1, 1, 1), 1) == pytest.approx([1.5, -2.5, -2.5, -2.5], abs=1e-14)


def test_closed_eigs_level3_thin_berger():
    # at (1, eps, eps) one level-3 eigenvalue of the unshifted block is 1 - 4 eps
    eps = 0.01
    m = Metric(1, eps, eps)
    unshifted = d3s.closed_form_eigs(m, 3) + m.C
    assert unshifted[5] == pytest.approx(1 - 4 * eps, rel=1e-12)
    assert m.C == pytest.approx(0.5 * (2 + eps ** 2), rel=1e-14)


def test_closed_forms_match_solver_levels_1_and_3():
    rng = np.random.default_rng(11)
    for m in [Metric(1, 1, 1)] + random_metrics(rng, 100):
        for n in (1, 3):
            closed = np.sort(d3s.closed_form_eigs(m, n))
            solved = np.sort(np.concatenate([
                d3s.eigenvalues(d3s.symmetrize(d3s.build_block(m, n, tag))) for tag in "AB"
            ]))
            assert np.abs(closed - solved).max() <= 1e-10 * max(1.0, np.abs(closed).max())


def test_level_spectrum_invariant_under_metric_permutations():
    m = Metric(1.4, 0.8, 0.6)
    for n in range(0, 11):
        base = np.sort(np.concatenate([
            d3s.eigenvalues(d3s.symmetrize(d3s.build_block(m, n, tag))) for tag in "AB"
        ]))
        for perm in itertools.permutations(m.triple()):
            other = np.sort(np.concatenate([
                d3s.eigenvalues(d3s.symmetrize(d3s.build_block(Metric(*perm), n, tag))) for tag in "AB"
            ]))
            assert np.abs(base - other).max() <= 1e-9 * max(1.0, np.abs(base).max())


def test_block_and_representation_reject_bad_levels():
    with pytest.raises(ValueError):
        d3s.build_block(Metric(1, 1, 1), -1, "A")
    with pytest.raises(ValueError):
        d3s.build_block(Metric(1, 1, 1), 2, "X")

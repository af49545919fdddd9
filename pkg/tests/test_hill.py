"""Fourier collocation, the dense eigensolver, and the pencil solver."""

import math

import numpy as np
import pytest

from ellwaves import (
    DenseOperator,
    EllipticModulus,
    PencilConvergenceError,
    PencilKind,
    PeriodicGrid,
    WaveFamily,
    assemble_hill,
    build,
    build_pencil,
    critical_wavenumber,
    diff_matrix,
    eigs_pencil,
    eigs_symmetric,
    jacobi,
    pencil_operators,
)


class TestPeriodicGrid:
    def test_nodes(self):
        g = PeriodicGrid(16, 2.0)
        assert g.nodes[0] == 0.0
        assert g.nodes[-1] == pytest.approx(2.0 - 2.0 / 16)
        assert np.allclose(np.diff(g.nodes), 2.0 / 16)

    @pytest.mark.parametrize("n", [15, 17, 8, 0])
    def test_rejects_bad_sizes(self, n):
        with pytest.raises(ValueError):
            PeriodicGrid(n, 1.0)

    def test_rejects_bad_period(self):
        with pytest.raises(ValueError):
            PeriodicGrid(32, 0.0)


class TestDiffMatrix:
    def test_first_derivative_kills_constants(self):
        g = PeriodicGrid(32, 5.0)
        d1 = diff_matrix(g, 1).matrix
        assert np.abs(d1 @ np.ones(32)).max() <= 1e-13

    def test_exact_on_low_modes(self):
        g = PeriodicGrid(64, 3.0)
        x = g.nodes
        w = 2.0 * math.pi / 3.0
        d1 = diff_matrix(g, 1).matrix
        d2 = diff_matrix(g, 2).matrix
        assert np.abs(d1 @ np.sin(w * x) - w * np.cos(w * x)).max() <= 1e-11
        assert np.abs(d2 @ np.sin(w * x) + w * w * np.sin(w * x)).max() <= 1e-11

    def test_symmetry_structure(self):
        g = PeriodicGrid(48, 2.7)
        d1 = diff_matrix(g, 1).matrix
        d2 = diff_matrix(g, 2).matrix
        assert np.abs(d1 + d1.T).max() <= 1e-13 * np.abs(d1).max()
        assert np.abs(d2 - d2.T).max() <= 1e-13 * np.abs(d2).max()
        # negative semidefinite with constants in the kernel
        w = np.linalg.eigvalsh(d2)
        assert w[-1] <= 1e-10
        assert np.abs(d2 @ np.ones(48)).max() <= 1e-10

    def test_self_convergence_on_elliptic_sample(self):
        from ellwaves import complete_K

        m = EllipticModulus(0.6)
        alpha = 1.3
        period = 2.0 * complete_K(m) / alpha
        fine = PeriodicGrid(512, period)
        coarse = PeriodicGrid(256, period)

        def f(x):
            return jacobi(alpha * x, m).cn ** 2

        # the integrand is analytic, so truncation is negligible at both
        # sizes; what remains is the dense matvec floor eps * k_max^2,
        # about 8e-9 at n = 512 for this period
        d_fine = diff_matrix(fine, 2).matrix @ f(fine.nodes)
        d_coarse = diff_matrix(coarse, 2).matrix @ f(coarse.nodes)
        assert np.abs(d_fine[::2] - d_coarse).max() <= 1e-8

    def test_eigenvalue_self_convergence(self):
        from ellwaves import complete_K

        m = EllipticModulus(0.6)
        period = 2.0 * complete_K(m)

        def q(y):
            return 12.0 * 0.36 * jacobi(y, m).sn ** 2

        lows = []
        for n in (256, 512):
            g = PeriodicGrid(n, period)
            lows.append(eigs_symmetric(assemble_hill(q, g), 5).eigenvalues)
        scale = np.abs(lows[1]).max()
        assert np.abs(lows[0] - lows[1]).max() <= 1e-9 * scale

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            diff_matrix(PeriodicGrid(16, 1.0), 3)


class TestAssembleHill:
    def test_free_operator_spectrum(self):
        period = 2.5
        g = PeriodicGrid(64, period)
        h = assemble_hill(lambda x: np.zeros_like(x), g)
        w = eigs_symmetric(h, 5).eigenvalues
        base = (2.0 * math.pi / period) ** 2
        assert w[0] == pytest.approx(0.0, abs=1e-10)
        assert w[1] == pytest.approx(base, rel=1e-11)
        assert w[2] == pytest.approx(base, rel=1e-11)
        assert w[3] == pytest.approx(4.0 * base, rel=1e-11)

    def test_constant_shift(self):
        g = PeriodicGrid(64, 2.5)
        w0 = eigs_symmetric(assemble_hill(lambda x: np.zeros_like(x), g), 4).eigenvalues
        w3 = eigs_symmetric(assemble_hill(lambda x: 3.0 + 0.0 * x, g), 4).eigenvalues
        assert np.allclose(w3, w0 + 3.0, atol=1e-10)

    def test_lame12_potential_recovers_mu_values(self):
        from ellwaves import complete_K, lame12_eigs

        m = EllipticModulus(0.5)
        k2 = m.kappa**2
        g = PeriodicGrid(256, 2.0 * complete_K(m))
        h = assemble_hill(
            lambda y: 12.0 * k2 * jacobi(y, m).sn ** 2 - 4.0 * k2 - 4.0, g
        )
        got = eigs_symmetric(h, 3).eigenvalues
        expect = [p.eigenvalue for p in lame12_eigs(m)]
        assert np.allclose(got, expect, atol=1e-9)

    def test_rejects_mismatched_samples(self):
        with pytest.raises(ValueError):
            assemble_hill(np.ones(10), PeriodicGrid(16, 1.0))


class TestEigsSymmetric:
    def test_two_by_two(self):
        g = PeriodicGrid(16, 1.0)
        mat = np.zeros((16, 16))
        mat[:2, :2] = [[2.0, 1.0], [1.0, 2.0]]
        res = eigs_symmetric(DenseOperator(mat, g, symmetric=True), 16)
        assert res.eigenvalues[-1] == pytest.approx(3.0)
        assert sorted(res.eigenvalues)[:15][-1] == pytest.approx(1.0)

    def test_diagonal(self):
        g = PeriodicGrid(16, 1.0)
        mat = np.diag(np.arange(16.0)[::-1])
        res = eigs_symmetric(DenseOperator(mat, g, symmetric=True), 3)
        assert list(res.eigenvalues) == [0.0, 1.0, 2.0]

    def test_requires_symmetric_flag(self):
        g = PeriodicGrid(16, 1.0)
        op = DenseOperator(np.eye(16), g, symmetric=False)
        with pytest.raises(ValueError):
            eigs_symmetric(op, 2)

    def test_symmetry_flag_is_verified(self):
        g = PeriodicGrid(16, 1.0)
        mat = np.eye(16)
        mat[0, 1] = 0.5
        with pytest.raises(ValueError):
            DenseOperator(mat, g, symmetric=True)

    def test_sign_convention_and_residuals(self):
        m = EllipticModulus(0.4)
        g = PeriodicGrid(128, 3.0)
        h = assemble_hill(lambda x: np.cos(2.0 * math.pi * x / 3.0), g)
        res = eigs_symmetric(h, 6)
        radius = max(abs(res.eigenvalues[0]), abs(res.eigenvalues[-1]))
        for j in range(6):
            v = res.eigenvectors[:, j]
            assert v[np.abs(v).argmax()] > 0.0
            assert res.residuals[j] <= 1e-9 * max(radius, 1.0)

    def test_determinism(self):
        g = PeriodicGrid(64, 2.0)
        h = assemble_hill(lambda x: np.sin(math.pi * x), g)
        a = eigs_symmetric(h, 5)
        b = eigs_symmetric(h, 5)
        assert np.array_equal(a.eigenvalues, b.eigenvalues)
        assert np.array_equal(a.eigenvectors, b.eigenvectors)


class TestEigsPencil:
    def grid(self, n):
        return PeriodicGrid(n, 1.0)

    def test_identity_pencil(self):
        g = self.grid(16)
        eye = DenseOperator(np.eye(16), g, symmetric=True)
        res = eigs_pencil(eye, eye, shift=1.3)
        assert res.eigenvalues[0] == pytest.approx(1.0, abs=1e-12)

    def test_diagonal_pencil(self):
        g = self.grid(16)
        a = DenseOperator(np.diag(np.linspace(2.0, 17.0, 16)), g, symmetric=True)
        b = DenseOperator(np.eye(16), g, symmetric=False)
        res = eigs_pencil(a, b, shift=2.2)
        assert res.eigenvalues[0] == pytest.approx(2.0, abs=1e-10)

    def test_kp_pencil_below_critical_wavenumber(self):
        profile = build(WaveFamily.CNOIDAL_KDV, EllipticModulus(0.5), 1.0, 1.0)
        pencil = build_pencil(
            PencilKind.KP, profile, PeriodicGrid(256, profile.period)
        )
        k0 = critical_wavenumber(pencil)
        lmat, amat = pencil_operators(pencil, 0.95 * k0)
        res = eigs_pencil(lmat, amat, shift=0.05, tol=1e-10)
        sigma = res.eigenvalues[0]
        assert sigma > 0.0
        assert res.residuals[0] <= 1e-10

    def test_nonconvergence_reported(self):
        g = self.grid(16)
        a = DenseOperator(np.diag(np.linspace(2.0, 17.0, 16)), g, symmetric=True)
        b = DenseOperator(np.eye(16), g, symmetric=False)
        with pytest.raises(PencilConvergenceError):
            eigs_pencil(a, b, shift=2.2, tol=1e-9, max_iter=1)

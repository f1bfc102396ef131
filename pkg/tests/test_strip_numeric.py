"""Tests for the floating-point degree-two strip checks."""
import numpy as np
import pytest

from mirror_mf.exceptions import NumericDomainError
from mirror_mf.services.strip_numeric import (
    BlaschkeDeg2,
    RootKind,
    blaschke_eval,
    involution_defect,
    random_blaschke_sweep,
    random_quadratic_sweep,
    scan_quadratic,
    strip_quadratic,
    t2_from_angle,
)


class TestBlaschke:
    """Degree-two Blaschke maps with conjugation-closed zeros."""

    def test_pole_in_disc(self):
        """Zeros on or outside the unit circle are refused."""
        with pytest.raises(NumericDomainError):
            BlaschkeDeg2.real_pair(0.5, 1.0)
        with pytest.raises(NumericDomainError):
            BlaschkeDeg2.conjugate_pair(1.2j)

    @pytest.mark.parametrize(
        "u",
        [BlaschkeDeg2.real_pair(-0.4, 0.7), BlaschkeDeg2.conjugate_pair(0.3 + 0.4j)],
    )
    def test_boundary_conditions(self, u):
        """|u| = 1 on the upper semicircle and u is real on [-1, 1]."""
        circle = np.exp(1j * np.linspace(0, np.pi, 50))
        segment = np.linspace(-1, 1, 50)
        assert np.allclose(np.abs(u(circle)), 1.0)
        assert np.max(np.abs(u(segment).imag)) < 1e-12
        assert involution_defect(u, np.array([0.1 + 0.2j, -0.5 + 0.3j])) < 1e-12

    def test_zeros(self):
        """u vanishes at its zeros."""
        u = BlaschkeDeg2.conjugate_pair(0.3 + 0.4j)
        assert abs(u(0.3 + 0.4j)) < 1e-15
        assert abs(u(0.3 - 0.4j)) < 1e-15

    def test_blaschke_eval(self):
        """blaschke_eval agrees with calling the map on arrays and vanishes at the zeros."""
        u = BlaschkeDeg2.real_pair(-0.4, 0.7)
        z = np.array([0.1 + 0.2j, -0.5 + 0.3j, 0.0])
        assert np.allclose(blaschke_eval(u, z), u(z))
        assert blaschke_eval(u, 0.0) == pytest.approx(-0.28)
        assert abs(blaschke_eval(u, -0.4)) < 1e-15
        assert abs(blaschke_eval(u, 0.7)) < 1e-15


class TestStripQuadratic:
    """x^2 - B x + t1 = 0."""

    def test_real_pair(self):
        """t1 = -1/2, t2 = i gives B = 3/2 and two real roots."""
        report = strip_quadratic(-0.5, 1j)
        assert report.coefficient.real == pytest.approx(1.5)
        assert report.classification is RootKind.REAL_PAIR
        assert report.discriminant == pytest.approx(4.25)
        big, small = (r.real for r in report.roots)
        assert big == pytest.approx((1.5 + np.sqrt(4.25)) / 2)
        assert big * small == pytest.approx(-0.5)
        assert not report.roots_in_disc

    def test_conjugate_pair(self):
        """t1 = 1/4, t2 = -1 gives B = 0 and roots +-i/2."""
        report = strip_quadratic(0.25, t2_from_angle(np.pi))
        assert report.classification is RootKind.CONJUGATE_PAIR
        assert report.roots[0] == pytest.approx(0.5j, abs=1e-12)
        assert report.roots[1] == pytest.approx(-0.5j, abs=1e-12)
        assert report.roots_in_disc

    def test_near_boundary_regime(self):
        """t1 = 0.99 with t2 just short of -1 gives a conjugate pair inside the disc."""
        report = strip_quadratic(0.99, t2_from_angle(np.pi - 0.05))
        assert report.classification is RootKind.CONJUGATE_PAIR
        assert report.roots_in_disc
        assert abs(report.roots[0]) == pytest.approx(np.sqrt(0.99))

    def test_coefficient_matches_cotangent(self):
        """B = (1 - t1) cot(theta / 2)."""
        theta = 2.0
        report = strip_quadratic(0.3, t2_from_angle(theta))
        assert report.coefficient.real == pytest.approx(0.7 / np.tan(theta / 2))
        assert abs(report.coefficient.imag) < 1e-12

    @pytest.mark.parametrize("t1", [-1.0, 1.0, 1.5])
    def test_t1_range(self, t1):
        """t1 lies in the open interval (-1, 1)."""
        with pytest.raises(NumericDomainError):
            strip_quadratic(t1, 1j)

    def test_t2_on_circle(self):
        """t2 must be unimodular."""
        with pytest.raises(NumericDomainError):
            strip_quadratic(0.0, 2j)

    def test_degenerate_denominator(self):
        """t2 = 1 makes B undefined."""
        with pytest.raises(NumericDomainError, match="degenerate denominator"):
            strip_quadratic(0.0, 1.0)


class TestSweeps:
    """Grid scans and random sweeps."""

    def test_scan_size(self):
        """The grid avoids the interval ends and theta = 0."""
        rows = scan_quadratic(3, 4)
        assert len(rows) == 12
        assert all(-1 < r.t1 < 1 and 0 < r.theta < 2 * np.pi for r in rows)

    def test_random_quadratic_sweep(self):
        """B stays real and Vieta holds over random samples."""
        sweep = random_quadratic_sweep(1000, seed=7)
        assert sweep.samples == 1000
        assert sweep.max_imaginary < 1e-10
        assert sweep.max_vieta_defect < 1e-10
        assert sweep.classification_consistent

    def test_random_blaschke_sweep(self):
        """Boundary conditions hold for random maps of both kinds."""
        sweep = random_blaschke_sweep(100, points=64, seed=7)
        assert sweep.samples == 100
        assert sweep.max_unimodular_defect < 1e-10
        assert sweep.max_real_defect < 1e-10
        assert sweep.max_involution_defect < 1e-10

    def test_sweep_is_deterministic(self):
        """A fixed seed reproduces the sweep."""
        assert random_quadratic_sweep(50, seed=3) == random_quadratic_sweep(50, seed=3)

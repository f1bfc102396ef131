"""Floating-point checks of degree-two strip parametrizations.

Degree-two strips with boundary on the real segment and the unit semicircle
are Blaschke maps with a real pair or a conjugate pair of zeros. Matching
corner conditions reduces to the quadratic x^2 - B x + t1 = 0 handled here.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from ..config import settings
from ..exceptions import NumericDomainError, VerificationError

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(settings.log_level)

if not logger.handlers:
    handler = logging.StreamHandler()
    formatter = logging.Formatter('%(levelname)s:%(name)s: %(message)s')
    handler.setFormatter(formatter)
    logger.addHandler(handler)


class RootKind(str, Enum):
    REAL_PAIR = "real-pair"
    CONJUGATE_PAIR = "conjugate-pair"


@dataclass(frozen=True)
class BlaschkeDeg2:
    """(z - w1)(z - w2) / ((1 - w1 z)(1 - w2 z)) with {w1, w2} closed under conjugation."""

    kind: RootKind
    zeros: Tuple[complex, complex]

    @classmethod
    def real_pair(cls, a: float, b: float) -> "BlaschkeDeg2":
        for value in (a, b):
            if abs(value) >= 1:
                raise NumericDomainError(f"pole inside the closed disc: zero {value} has |.| >= 1")
        return cls(RootKind.REAL_PAIR, (complex(a), complex(b)))

    @classmethod
    def conjugate_pair(cls, alpha: complex) -> "BlaschkeDeg2":
        alpha = complex(alpha)
        if abs(alpha) >= 1:
            raise NumericDomainError(f"pole inside the closed disc: zero {alpha} has |.| >= 1")
        return cls(RootKind.CONJUGATE_PAIR, (alpha, alpha.conjugate()))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        w1, w2 = self.zeros
        return (z - w1) * (z - w2) / ((1 - w1 * z) * (1 - w2 * z))


def blaschke_eval(u: BlaschkeDeg2, z):
    return u(z)


def involution_defect(u: BlaschkeDeg2, z) -> float:
    """max |conj(u(conj z)) - u(z)|."""
    z = np.asarray(z, dtype=complex)
    return float(np.max(np.abs(np.conj(u(np.conj(z))) - u(z))))


def t2_from_angle(theta: float) -> complex:
    return complex(np.exp(1j * theta))


@dataclass(frozen=True)
class QuadraticReport:
    t1: float
    t2: complex
    coefficient: complex
    roots: Tuple[complex, complex]
    discriminant: float
    classification: RootKind
    roots_in_disc: bool
    vieta_defect: float


def strip_quadratic(t1: float, t2: complex) -> QuadraticReport:
    """Roots of x^2 - B x + t1 with B = (t1 - 1)(conj t2 + 1) / (i (1 - conj t2))."""
    t1, t2 = float(t1), complex(t2)
    if not -1 < t1 < 1:
        raise NumericDomainError(f"t1 must lie in (-1, 1), got {t1}")
    if abs(abs(t2) - 1) > settings.input_tolerance:
        raise NumericDomainError(f"|t2| must be 1, got {abs(t2)}")
    denominator = 1j * (1 - t2.conjugate())
    if abs(denominator) <= settings.input_tolerance:
        raise NumericDomainError("degenerate denominator")

    coefficient = (t1 - 1) * (t2.conjugate() + 1) / denominator
    if abs(coefficient.imag) > settings.identity_tolerance:
        raise VerificationError(f"linear coefficient is not real: {coefficient}")
    b = coefficient.real

    discriminant = b * b - 4 * t1
    if discriminant >= 0:
        # larger root first; the other from r1 * r2 = t1 to avoid cancellation
        big = (b + np.copysign(np.sqrt(discriminant), b)) / 2
        small = t1 / big if big != 0 else 0.0
        roots = (complex(big), complex(small))
        kind = RootKind.REAL_PAIR
    else:
        root = np.sqrt(-discriminant)
        roots = (complex(b / 2, root / 2), complex(b / 2, -root / 2))
        kind = RootKind.CONJUGATE_PAIR

    vieta = abs(roots[0] * roots[1] - t1)
    if vieta > settings.identity_tolerance:
        raise VerificationError(f"root product {roots[0] * roots[1]} != t1 = {t1}")

    in_disc = all(abs(r) < 1 for r in roots)
    logger.debug(f"🔢 t1 = {t1}, t2 = {t2}: B = {b}, {kind.value}, in disc: {in_disc}")
    return QuadraticReport(t1, t2, coefficient, roots, discriminant, kind, in_disc, vieta)


@dataclass(frozen=True)
class ScanRow:
    t1: float
    theta: float
    classification: RootKind
    roots_in_disc: bool


def scan_quadratic(t1_steps: Optional[int] = None, angle_steps: Optional[int] = None) -> List[ScanRow]:
    """Grid over open t1 in (-1, 1) and theta in (0, 2 pi)."""
    t1_steps = t1_steps or settings.scan_t1_steps
    angle_steps = angle_steps or settings.scan_angle_steps
    rows = []
    for t1 in np.linspace(-1, 1, t1_steps + 2)[1:-1]:
        for theta in np.linspace(0, 2 * np.pi, angle_steps + 2)[1:-1]:
            report = strip_quadratic(t1, t2_from_angle(theta))
            rows.append(ScanRow(float(t1), float(theta), report.classification, report.roots_in_disc))
    inside = sum(1 for r in rows if r.classification is RootKind.CONJUGATE_PAIR and r.roots_in_disc)
    logger.info(f"🗺️ scanned {len(rows)} points, {inside} with a conjugate pair in the disc")
    return rows


@dataclass(frozen=True)
class QuadraticSweep:
    samples: int
    max_imaginary: float
    max_vieta_defect: float
    classification_consistent: bool


def random_quadratic_sweep(samples: int = 1000, seed: Optional[int] = None) -> QuadraticSweep:
    rng = np.random.default_rng(settings.random_seed if seed is None else seed)
    t1s = rng.uniform(-0.999, 0.999, samples)
    thetas = rng.uniform(0.01, 2 * np.pi - 0.01, samples)
    max_imag = max_vieta = 0.0
    consistent = True
    for t1, theta in zip(t1s, thetas):
        t2 = t2_from_angle(theta)
        report = strip_quadratic(t1, t2)
        max_imag = max(max_imag, abs(report.coefficient.imag))
        max_vieta = max(max_vieta, report.vieta_defect)
        expected = RootKind.REAL_PAIR if report.discriminant >= 0 else RootKind.CONJUGATE_PAIR
        consistent = consistent and report.classification is expected
    return QuadraticSweep(samples, max_imag, max_vieta, consistent)


@dataclass(frozen=True)
class BlaschkeSweep:
    samples: int
    max_unimodular_defect: float
    max_real_defect: float
    max_involution_defect: float


def random_blaschke_sweep(samples: int = 100, points: int = 64, seed: Optional[int] = None) -> BlaschkeSweep:
    """|u| = 1 on the semicircle and u real on [-1, 1] for random maps of both kinds."""
    rng = np.random.default_rng(settings.random_seed if seed is None else seed)
    circle = np.exp(1j * np.linspace(0, np.pi, points))
    segment = np.linspace(-1, 1, points)
    unimodular = real = involution = 0.0
    for _ in range(samples):
        a, b = rng.uniform(-0.95, 0.95, 2)
        radius, angle = rng.uniform(0, 0.95), rng.uniform(0, 2 * np.pi)
        interior = rng.uniform(-0.7, 0.7, points) + 1j * rng.uniform(-0.7, 0.7, points)
        for u in (BlaschkeDeg2.real_pair(a, b), BlaschkeDeg2.conjugate_pair(radius * np.exp(1j * angle))):
            unimodular = max(unimodular, float(np.max(np.abs(np.abs(u(circle)) - 1))))
            real = max(real, float(np.max(np.abs(u(segment).imag))))
            involution = max(involution, involution_defect(u, interior))
    return BlaschkeSweep(samples, unimodular, real, involution)

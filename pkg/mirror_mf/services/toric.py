"""Stacky toric lines: Hori-Vafa potentials, holonomy relations and critical data.

Everything is emitted in the internal normalization: the moment polytope of
the (m, n) line is [-1/m, 1/n], q = T^(1/m), and the fiber coordinate is
z = e^x T^(1/m + u).
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..algebra.ring import (
    TRIVIAL,
    AlphaRelation,
    LaurentPolynomial,
    NovikovScalar,
    T,
    as_fraction,
)
from ..config import settings
from ..exceptions import ToricDataError, VerificationError

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(settings.log_level)

if not logger.handlers:
    handler = logging.StreamHandler()
    formatter = logging.Formatter('%(levelname)s:%(name)s: %(message)s')
    handler.setFormatter(formatter)
    logger.addHandler(handler)

VARIABLE = "z"


@dataclass(frozen=True)
class StackyLine:
    """Weighted projective line with orbifold points of order m (left) and n (right)."""

    m: int
    n: int

    def __post_init__(self):
        for name, value in (("m", self.m), ("n", self.n)):
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ToricDataError(f"weight {name} must be a positive integer, got {value!r}")
        if math.gcd(self.m, self.n) != 1:
            logger.warning(f"⚠️ weights ({self.m}, {self.n}) are not coprime; treating as a labeled polytope")

    @property
    def label(self) -> str:
        return f"P({self.m},{self.n})"

    @property
    def relation(self) -> AlphaRelation:
        """m * alpha^(m+n) = n."""
        return AlphaRelation.quotient(self.m, self.n)

    @property
    def q(self) -> NovikovScalar:
        return T(Fraction(1, self.m))

    @property
    def moment_polytope(self) -> Tuple[Fraction, Fraction]:
        return Fraction(-1, self.m), Fraction(1, self.n)

    @property
    def chart_offset(self) -> Fraction:
        """T-exponent of z at the fiber over u = 0."""
        return Fraction(1, self.m)


def coprime_lines(max_sum: Optional[int] = None) -> List[StackyLine]:
    """Every coprime (m, n) with m + n <= max_sum, ordered by (m + n, m)."""
    max_sum = settings.max_weight_sum if max_sum is None else max_sum
    return [
        StackyLine(m, total - m)
        for total in range(2, max_sum + 1)
        for m in range(1, total)
        if math.gcd(m, total - m) == 1
    ]


@dataclass(frozen=True)
class DiscClass:
    """Maslov-index-two disc: boundary winding and area const + slope * u."""

    winding: int
    area_const: Fraction
    area_slope: Fraction


def fiber_exponent(
    winding: Sequence[int],
    area: Fraction,
    offsets: Sequence[Fraction],
) -> Fraction:
    """T-exponent left over after writing e^(w.x) T^area in the chart z_i = e^(x_i) T^(offsets_i)."""
    return area - sum((w * o for w, o in zip(winding, offsets)), Fraction(0))


def smooth_disc_classes(s: StackyLine) -> Tuple[DiscClass, DiscClass]:
    """Smooth discs hitting the left and right divisors: e^(mx) T^(1+mu), e^(-nx) T^(1-nu)."""
    return (
        DiscClass(s.m, Fraction(1), Fraction(s.m)),
        DiscClass(-s.n, Fraction(1), Fraction(-s.n)),
    )


def _disc_potential(
    discs: Sequence[DiscClass],
    chart_offset: Fraction,
    u: Fraction,
    weights: Optional[Sequence[NovikovScalar]] = None,
) -> LaurentPolynomial:
    raw = {}
    for index, disc in enumerate(discs):
        area = disc.area_const + disc.area_slope * u
        exponent = fiber_exponent((disc.winding,), area, (chart_offset + u,))
        coeff = T(exponent)
        if weights is not None:
            coeff = coeff * weights[index]
        key = (disc.winding,)
        raw[key] = raw[key] + coeff if key in raw else coeff
    return LaurentPolynomial.build((VARIABLE,), raw)


def hori_vafa_potential(s: StackyLine, u=0) -> LaurentPolynomial:
    """W = z^m + T^((m+n)/m) z^-n; the fiber position u drops out."""
    return _disc_potential(smooth_disc_classes(s), s.chart_offset, as_fraction(u))


@dataclass(frozen=True)
class CriticalData:
    """Critical point and value of a potential over the given alpha ring."""

    relation: AlphaRelation
    critical_point: NovikovScalar
    critical_value: NovikovScalar
    potential: LaurentPolynomial


def critical_value_formula(s: StackyLine, relation: AlphaRelation) -> NovikovScalar:
    """q^m (alpha^m + alpha^-n), kept over ``relation`` (FREE or the quotient)."""
    alpha = NovikovScalar.alpha(relation)
    return (s.q ** s.m) * (alpha ** s.m + alpha ** (-s.n))


def critical_data(s: StackyLine) -> CriticalData:
    relation = s.relation
    W = hori_vafa_potential(s).with_relation(relation)
    z0 = s.q.with_relation(relation) * NovikovScalar.alpha(relation)

    slope = W.derivative(VARIABLE).evaluate({VARIABLE: z0})
    if not slope.is_zero:
        raise VerificationError(f"dW does not vanish at z = qα on {s.label}: {slope}")

    value = W.evaluate({VARIABLE: z0})
    expected = critical_value_formula(s, relation)
    if value != expected:
        raise VerificationError(f"critical value mismatch on {s.label}: {value} != {expected}")

    logger.debug(f"🎯 {s.label}: z0 = {z0}, λ = {value} ({relation.describe()})")
    return CriticalData(relation, z0, value, W)


# -- bulk-deformed teardrop ------------------------------------------------

BULK_TEARDROP = StackyLine(3, 1)
BULK_U_BOUND = Fraction(1, 3)
ORBIFOLD_DISC = DiscClass(1, Fraction(1, 3), Fraction(1))


@dataclass(frozen=True)
class BulkPotential:
    u: Fraction
    potential: LaurentPolynomial
    c: NovikovScalar
    c_in_lambda_plus: bool


@dataclass(frozen=True)
class BulkRoot:
    """One solution of 3z^4 + c z^2 - T^(4/3) = 0."""

    square: NovikovScalar
    sign: int
    value: Optional[NovikovScalar]
    description: str


def bulk_c(u) -> NovikovScalar:
    """c = T^(2/3 - 2u) - 3 T^(2u + 2/3)."""
    u = as_fraction(u)
    return T(Fraction(2, 3) - 2 * u) - T(2 * u + Fraction(2, 3), 3)


def displaceable_bulk_fiber(u) -> bool:
    """The fiber at u carries no canonical bulk class once c leaves Lambda_+."""
    return as_fraction(u) >= BULK_U_BOUND


def bulk_potential(u) -> BulkPotential:
    """W^b = z^3 + T^(4/3)/z + c z at fiber position u."""
    u = as_fraction(u)
    c = bulk_c(u)
    smooth = list(smooth_disc_classes(BULK_TEARDROP))
    weights = [NovikovScalar.one(), NovikovScalar.one(), c]
    W = _disc_potential(smooth + [ORBIFOLD_DISC], BULK_TEARDROP.chart_offset, u, weights)
    member = c.in_lambda_plus()
    if not member:
        logger.warning(f"⚠️ u = {u}: c = {c} is not in Λ+")
    return BulkPotential(u, W, c, member)


def bulk_critical(u) -> CriticalData:
    """Positive-branch critical point z0 = T^(u + 1/3) of W^b."""
    bulk = bulk_potential(u)
    z0 = T(bulk.u + Fraction(1, 3))
    slope = bulk.potential.derivative(VARIABLE).evaluate({VARIABLE: z0})
    if not slope.is_zero:
        raise VerificationError(f"dW^b does not vanish at z0 = {z0}: {slope}")
    value = bulk.potential.evaluate({VARIABLE: z0})
    logger.debug(f"🎯 bulk u = {bulk.u}: z0 = {z0}, λ^b = {value}")
    return CriticalData(TRIVIAL, z0, value, bulk.potential)


def bulk_critical_roots(u) -> List[BulkRoot]:
    """All four critical points: z^2 = T^(2u+2/3) or z^2 = -(1/3) T^(2/3-2u)."""
    u = as_fraction(u)
    c = bulk_c(u)
    real_square = T(2 * u + Fraction(2, 3))
    imaginary_square = T(Fraction(2, 3) - 2 * u, Fraction(-1, 3))
    for square in (real_square, imaginary_square):
        residual = 3 * square * square + c * square - T(Fraction(4, 3))
        if not residual.is_zero:
            raise VerificationError(f"z^2 = {square} does not solve 3s^2 + cs - T^(4/3): {residual}")

    roots = []
    for sign in (1, -1):
        value = T(u + Fraction(1, 3), sign)
        roots.append(BulkRoot(real_square, sign, value, value.render()))
    exponent = Fraction(1, 3) - u
    for sign in (1, -1):
        prefix = "" if sign > 0 else "-"
        roots.append(
            BulkRoot(imaginary_square, sign, None, f"{prefix}sqrt(-1/3)*T^({exponent})")
        )
    return roots

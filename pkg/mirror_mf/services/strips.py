"""Index-one strip classes between a deformed fiber and a generic fiber.

Each family is a list of strip classes split by direction. Summing the
classes of one direction (the Fourier transform along the fiber) gives one
block of a 2x2 matrix factorization.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from ..algebra.mf import MatrixFactorization, mf_from_pair, mf_verify, require_verified
from ..algebra.ring import (
    FREE,
    TRIVIAL,
    AlphaRelation,
    LaurentPolynomial,
    NovikovScalar,
    T,
    as_fraction,
)
from ..config import settings
from ..exceptions import StripModelError
from .toric import (
    BULK_TEARDROP,
    BULK_U_BOUND,
    StackyLine,
    bulk_critical,
    bulk_potential,
    coprime_lines,
    critical_value_formula,
    hori_vafa_potential,
)

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(settings.log_level)

if not logger.handlers:
    handler = logging.StreamHandler()
    formatter = logging.Formatter('%(levelname)s:%(name)s: %(message)s')
    handler.setFormatter(formatter)
    logger.addHandler(handler)


class Direction(str, Enum):
    A_TO_B = "a->b"
    B_TO_A = "b->a"


class Geometry(str, Enum):
    CP1 = "cp1"
    WEIGHTED = "weighted"
    WEIGHTED_BULK = "weighted_bulk"
    ANTIDIAGONAL = "antidiagonal"


@dataclass(frozen=True)
class AffineArea:
    """const + slope * u."""

    const: Fraction
    slope: Fraction

    def at(self, u) -> Fraction:
        return self.const + self.slope * as_fraction(u)


@dataclass(frozen=True)
class FiberChart:
    """Chart z_i = e^(x_i) T^(offset_i(u)) on the generic fiber over u."""

    variables: Tuple[str, ...]
    offset_const: Tuple[Fraction, ...]
    offset_slope: Tuple[Fraction, ...]

    def offsets(self, u) -> Tuple[Fraction, ...]:
        u = as_fraction(u)
        return tuple(c + s * u for c, s in zip(self.offset_const, self.offset_slope))


@dataclass(frozen=True)
class StripClass:
    direction: Direction
    winding: Tuple[int, ...]
    area: AffineArea
    alpha_power: int = 0
    sign: int = 1
    orbifold_insertion: bool = False

    @property
    def from_pt(self) -> str:
        return self.direction.value[0]

    @property
    def to_pt(self) -> str:
        return self.direction.value[-1]

    @classmethod
    def in_chart(
        cls,
        direction: Direction,
        winding: Sequence[int],
        t_exponent,
        chart: FiberChart,
        alpha_power: int = 0,
        sign: int = 1,
        orbifold_insertion: bool = False,
    ) -> "StripClass":
        """Class whose contribution reads sign * alpha^a * T^t * z^winding in ``chart``."""
        winding = tuple(winding)
        const = as_fraction(t_exponent) + sum(
            (w * c for w, c in zip(winding, chart.offset_const)), Fraction(0)
        )
        slope = sum((w * s for w, s in zip(winding, chart.offset_slope)), Fraction(0))
        return cls(direction, winding, AffineArea(const, slope), alpha_power, sign, orbifold_insertion)


@dataclass(frozen=True)
class StripFamily:
    """Strip classes of one geometry plus the potential they factor."""

    geometry: Geometry
    label: str
    chart: FiberChart
    strips: Tuple[StripClass, ...]
    interval: Tuple[Fraction, Fraction]
    closed_right: bool
    potential: LaurentPolynomial
    critical_value: NovikovScalar
    relation: AlphaRelation = TRIVIAL
    bulk_c: Optional[NovikovScalar] = None

    def __post_init__(self):
        for strip in self.strips:
            if len(strip.winding) != len(self.chart.variables):
                raise StripModelError(
                    f"{self.label}: winding {strip.winding} does not match variables {self.chart.variables}"
                )
            expected = sum((w * s for w, s in zip(strip.winding, self.chart.offset_slope)), Fraction(0))
            if strip.area.slope != expected:
                raise StripModelError(
                    f"{self.label}: area slope {strip.area.slope} != winding slope {expected} for {strip}"
                )
            if strip.sign not in (1, -1):
                raise StripModelError(f"{self.label}: sign must be ±1, got {strip.sign}")
            if strip.orbifold_insertion and self.bulk_c is None:
                raise StripModelError(f"{self.label}: orbifold class without a bulk parameter")

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.chart.variables

    def admits(self, u) -> bool:
        u = as_fraction(u)
        lo, hi = self.interval
        return lo < u < hi or (self.closed_right and u == hi)

    @property
    def default_position(self) -> Fraction:
        lo, hi = self.interval
        return (lo + hi) / 2

    def by_direction(self, direction: Direction) -> Tuple[StripClass, ...]:
        return tuple(s for s in self.strips if s.direction is direction)

    def without_orbifold(self) -> "StripFamily":
        kept = tuple(s for s in self.strips if not s.orbifold_insertion)
        return replace(self, strips=kept, label=f"{self.label} without orbifold strip")


def fourier_assemble(family: StripFamily, direction: Direction, u=None) -> LaurentPolynomial:
    """Sum of sign * alpha^a * T^area(u) * e^(winding.x), rewritten in the fiber chart."""
    u = family.default_position if u is None else as_fraction(u)
    if not family.admits(u):
        raise StripModelError(f"{family.label}: fiber position u = {u} outside {family.interval}")
    offsets = family.chart.offsets(u)
    raw = {}
    for strip in family.by_direction(direction):
        t_exponent = strip.area.at(u) - sum(
            (w * o for w, o in zip(strip.winding, offsets)), Fraction(0)
        )
        coeff = NovikovScalar.monomial(strip.sign, t_exponent, strip.alpha_power, family.relation)
        if strip.orbifold_insertion:
            coeff = coeff * family.bulk_c
        raw[strip.winding] = raw[strip.winding] + coeff if strip.winding in raw else coeff
    return LaurentPolynomial.build(family.variables, raw, family.relation)


def family_to_mf(family: StripFamily, u=None) -> MatrixFactorization:
    F = fourier_assemble(family, Direction.A_TO_B, u)
    G = fourier_assemble(family, Direction.B_TO_A, u)
    M = mf_from_pair(F, G, family.potential, family.critical_value, family.label)
    return require_verified(M)


# -- families --------------------------------------------------------------

HALF = Fraction(1, 2)


def enumerate_cp1(variable: str = "z") -> StripFamily:
    """CP^1 with polytope [0, 1]: z - T^(1/2) and 1 - T^(1/2)/z."""
    chart = FiberChart((variable,), (Fraction(0),), (Fraction(1),))
    ab, ba = Direction.A_TO_B, Direction.B_TO_A
    strips = (
        StripClass.in_chart(ab, (1,), 0, chart),
        StripClass.in_chart(ab, (0,), HALF, chart, sign=-1),
        StripClass.in_chart(ba, (0,), 0, chart),
        StripClass.in_chart(ba, (-1,), HALF, chart, sign=-1),
    )
    z = LaurentPolynomial.variable(variable, (variable,))
    W = z + T(1) * z ** -1
    return StripFamily(
        Geometry.CP1, f"cp1({variable})", chart, strips, (Fraction(0), HALF), False,
        W, T(HALF, 2),
    )


def enumerate_weighted(
    s: StackyLine,
    relation: Optional[AlphaRelation] = None,
    printed_bound: bool = False,
) -> StripFamily:
    """Strips on the (m, n) stacky line.

    b->a: q^(m+n-k) alpha^-k z^-(n-k) for k = 0..n-1 and -alpha^k q^k z^(m-k)
    for k = 1..m. With ``printed_bound`` the first sum runs to k = n, which
    adds q^m alpha^-n and breaks the factorization identity.
    """
    relation = s.relation if relation is None else relation
    m, n = s.m, s.n
    chart = FiberChart(("z",), (s.chart_offset,), (Fraction(1),))
    ab, ba = Direction.A_TO_B, Direction.B_TO_A

    strips = [
        StripClass.in_chart(ab, (0,), 0, chart),
        StripClass.in_chart(ab, (1,), Fraction(-1, m), chart, alpha_power=-1, sign=-1),
    ]
    last = n if printed_bound else n - 1
    for k in range(0, last + 1):
        strips.append(StripClass.in_chart(ba, (-(n - k),), Fraction(m + n - k, m), chart, alpha_power=-k))
    for k in range(1, m + 1):
        strips.append(StripClass.in_chart(ba, (m - k,), Fraction(k, m), chart, alpha_power=k, sign=-1))

    label = f"weighted{s.label[1:]}" + (" [printed bound]" if printed_bound else "")
    if printed_bound:
        logger.info(f"📐 {label}: first sum runs k = 0..{n}")
    return StripFamily(
        Geometry.WEIGHTED, label, chart, tuple(strips), s.moment_polytope, False,
        hori_vafa_potential(s).with_relation(relation),
        critical_value_formula(s, relation),
        relation,
    )


def weighted_sweep(max_sum: Optional[int] = None, relation: Optional[AlphaRelation] = FREE) -> Dict[str, bool]:
    """Verify the weighted family on every coprime line up to ``max_sum``.

    The default FREE ring checks the identity before the holonomy relation is
    imposed; pass None to use each line's own quotient.
    """
    results = {}
    for s in coprime_lines(max_sum):
        family = enumerate_weighted(s, relation)
        F = fourier_assemble(family, Direction.A_TO_B)
        G = fourier_assemble(family, Direction.B_TO_A)
        results[family.label] = mf_verify(
            mf_from_pair(F, G, family.potential, family.critical_value, family.label)
        ).verified
    failed = [label for label, ok in results.items() if not ok]
    if failed:
        logger.warning(f"❌ weighted sweep failures: {failed}")
    else:
        logger.info(f"✅ weighted sweep: {len(results)} lines verified")
    return results


def enumerate_weighted_bulk(u, free_alpha: bool = False) -> StripFamily:
    """Teardrop strips at bulk position u, plus the strip through the orbifold point.

    The critical monomial is A = T^(u+1/3), or A = T^(1-u) alpha over the FREE
    alpha ring when ``free_alpha`` is set.
    """
    u = as_fraction(u)
    if not 0 <= u < BULK_U_BOUND:
        raise StripModelError(f"c not in Lambda-plus at u = {u}")
    bulk = bulk_potential(u)
    relation = FREE if free_alpha else TRIVIAL
    a_exp, a_alpha = (1 - u, 1) if free_alpha else (u + Fraction(1, 3), 0)

    chart = FiberChart(("z",), (BULK_TEARDROP.chart_offset,), (Fraction(1),))
    ab, ba = Direction.A_TO_B, Direction.B_TO_A
    strips = (
        StripClass.in_chart(ab, (0,), 0, chart),
        StripClass.in_chart(ab, (1,), -a_exp, chart, alpha_power=-a_alpha, sign=-1),
        StripClass.in_chart(ba, (-1,), Fraction(4, 3), chart),
        StripClass.in_chart(ba, (0,), 3 * a_exp, chart, alpha_power=3 * a_alpha, sign=-1),
        StripClass.in_chart(ba, (1,), 2 * a_exp, chart, alpha_power=2 * a_alpha, sign=-1),
        StripClass.in_chart(ba, (2,), a_exp, chart, alpha_power=a_alpha, sign=-1),
        StripClass.in_chart(ba, (0,), a_exp, chart, alpha_power=a_alpha, sign=-1, orbifold_insertion=True),
    )

    if free_alpha:
        A = NovikovScalar.monomial(1, a_exp, 1, relation)
        lam = A ** 3 + T(Fraction(4, 3)) / A + bulk.c * A
    else:
        lam = bulk_critical(u).critical_value

    label = f"teardrop-bulk(u={u})" + (" [free α]" if free_alpha else "")
    return StripFamily(
        # fibers where c stays in Lambda-plus
        Geometry.WEIGHTED_BULK, label, chart, strips, (Fraction(0), BULK_U_BOUND), False,
        bulk.potential.with_relation(relation), lam, relation, bulk.c,
    )


def enumerate_antidiagonal() -> StripFamily:
    """Antidiagonal Lagrangian in CP^1 x CP^1: (1 + T/(xy)) (x + y) = W."""
    chart = FiberChart(("x", "y"), (Fraction(0), HALF), (Fraction(1), Fraction(0)))
    ab, ba = Direction.A_TO_B, Direction.B_TO_A
    strips = (
        StripClass.in_chart(ab, (0, 0), 0, chart),
        StripClass.in_chart(ab, (-1, -1), 1, chart),
        StripClass.in_chart(ba, (1, 0), 0, chart),
        StripClass.in_chart(ba, (0, 1), 0, chart),
    )
    variables = ("x", "y")
    x = LaurentPolynomial.variable("x", variables)
    y = LaurentPolynomial.variable("y", variables)
    W = x + T(1) * x ** -1 + y + T(1) * y ** -1
    return StripFamily(
        Geometry.ANTIDIAGONAL, "antidiagonal", chart, strips, (Fraction(0), HALF), True,
        W, NovikovScalar.zero(),
    )


def antidiagonal_critical_point() -> Tuple[NovikovScalar, NovikovScalar]:
    """(x, y) = (T^(1/2), -T^(1/2)), where W vanishes."""
    return T(HALF), T(HALF, -1)


def central_fiber_cp1xcp1() -> MatrixFactorization:
    """4x4 factorization of z + T/z + w + T/w - 4T^(1/2) from the central fiber."""
    variables = ("z", "w")
    z = LaurentPolynomial.variable("z", variables)
    w = LaurentPolynomial.variable("w", variables)
    root = T(HALF)
    f1, g1 = z - root, 1 - root * z ** -1
    f2, g2 = w - root, 1 - root * w ** -1
    F = ((f1, -g2), (f2, g1))
    G = ((g1, g2), (-f2, f1))
    W = z + T(1) * z ** -1 + w + T(1) * w ** -1
    return require_verified(MatrixFactorization(F, G, W, T(HALF, 4), "central fiber of cp1 x cp1"))

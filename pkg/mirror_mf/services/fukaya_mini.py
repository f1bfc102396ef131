"""Four objects of the Fukaya category of CP^1 x CP^1 and their m2 products.

Objects are the antidiagonal A, its shift A[1], and the two monotone tori
T(1,-1), T(-1,1). Hom matrices are written with rows indexed by sources and
columns by targets, and products compose left to right: m2(f, g) goes from
f.source to g.target.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..algebra.ring import NovikovScalar, T, as_fraction
from ..config import settings
from ..exceptions import RingError, UnspecifiedProductError

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(settings.log_level)

if not logger.handlers:
    handler = logging.StreamHandler()
    formatter = logging.Formatter('%(levelname)s:%(name)s: %(message)s')
    handler.setFormatter(formatter)
    logger.addHandler(handler)


class FukayaObject(str, Enum):
    A = "A"
    A_SHIFT = "A[1]"
    T_PLUS = "T(1,-1)"
    T_MINUS = "T(-1,1)"

    @property
    def is_torus(self) -> bool:
        return self in (FukayaObject.T_PLUS, FukayaObject.T_MINUS)

    @property
    def shifted(self) -> bool:
        return self is FukayaObject.A_SHIFT


UNIT_A, PT_A = "unit_A", "pt_A"
UNIT_T, PT_T = "unit_T", "pt_T"
P, Q = "p", "q"

# Z/2 degree before shifts
BASE_DEGREE = {UNIT_A: 0, PT_A: 0, UNIT_T: 0, PT_T: 0, P: 0, Q: 1}


def hom_basis(source: FukayaObject, target: FukayaObject) -> Tuple[str, ...]:
    if source.is_torus and target.is_torus:
        return (UNIT_T, PT_T) if source is target else ()
    if source.is_torus or target.is_torus:
        return (P, Q)
    return (UNIT_A, PT_A)


@dataclass(frozen=True)
class HomElement:
    source: FukayaObject
    target: FukayaObject
    coefficients: Tuple[Tuple[str, NovikovScalar], ...] = ()

    def __post_init__(self):
        basis = hom_basis(self.source, self.target)
        merged: Dict[str, NovikovScalar] = {}
        for symbol, coeff in self.coefficients:
            if symbol not in basis:
                raise RingError(
                    f"{symbol!r} is not in Hom({self.source.value}, {self.target.value}) = {basis}"
                )
            if not isinstance(coeff, NovikovScalar):
                coeff = NovikovScalar.constant(coeff)
            merged[symbol] = merged[symbol] + coeff if symbol in merged else coeff
        cleaned = tuple((s, merged[s]) for s in basis if s in merged and not merged[s].is_zero)
        object.__setattr__(self, "coefficients", cleaned)

    @classmethod
    def zero(cls, source: FukayaObject, target: FukayaObject) -> "HomElement":
        return cls(source, target)

    @classmethod
    def basic(cls, symbol: str, source: FukayaObject, target: FukayaObject, coeff=1) -> "HomElement":
        return cls(source, target, ((symbol, coeff),))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, symbol: str) -> NovikovScalar:
        return dict(self.coefficients).get(symbol, NovikovScalar.zero())

    def degree_of(self, symbol: str) -> int:
        """Z/2 degree; each shifted endpoint toggles parity."""
        shifts = int(self.source.shifted) + int(self.target.shifted)
        return (BASE_DEGREE[symbol] + shifts) % 2

    def __add__(self, other: "HomElement") -> "HomElement":
        if (other.source, other.target) != (self.source, self.target):
            raise RingError("cannot add morphisms between different objects")
        return HomElement(self.source, self.target, self.coefficients + other.coefficients)

    def scale(self, factor: NovikovScalar) -> "HomElement":
        return HomElement(self.source, self.target, tuple((s, c * factor) for s, c in self.coefficients))

    def render(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"({c.render()})*{s}" for s, c in self.coefficients)


@dataclass(frozen=True)
class M2Table:
    """Structure constants; eps_a and eps_t are the orientation signs for A- and T-targets."""

    eps_a: int = 1
    eps_t: int = 1
    l: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("eps_a", "eps_t"):
            if getattr(self, name) not in (1, -1):
                raise ValueError(f"{name} must be +1 or -1")
        object.__setattr__(self, "l", as_fraction(self.l))

    @property
    def area_term(self) -> NovikovScalar:
        return T(self.l / 2)

    def product(self, left: str, right: str, source: FukayaObject, middle: FukayaObject,
                target: FukayaObject) -> HomElement:
        """m2 of two basis symbols, source -> middle -> target."""
        if not hom_basis(source, target):
            return HomElement.zero(source, target)
        if left in (UNIT_A, UNIT_T):
            return HomElement.basic(right, source, target)
        if right in (UNIT_A, UNIT_T):
            return HomElement.basic(left, source, target)

        if {left, right} <= {P, Q} and not target.is_torus:
            unit, pt, eps = UNIT_A, PT_A, self.eps_a
        elif {left, right} <= {P, Q} and target.is_torus:
            unit, pt, eps = UNIT_T, PT_T, self.eps_t
            if left != right:
                raise UnspecifiedProductError(
                    f"unspecified product: m2({left}, {right}) in Hom({source.value}, {target.value})"
                )
        else:
            raise UnspecifiedProductError(
                f"unspecified product: m2({left}, {right}) through {middle.value}"
            )

        if left != right:
            return HomElement.zero(source, target)
        sign = eps if left == P else -eps
        return HomElement(source, target, ((pt, 1), (unit, self.area_term * sign)))


def m2(f: HomElement, g: HomElement, table: M2Table) -> HomElement:
    """Bilinear extension of the table; f: X -> Y, g: Y -> Z."""
    if f.target is not g.source:
        raise RingError(f"not composable: {f.target.value} != {g.source.value}")
    result = HomElement.zero(f.source, g.target)
    if not hom_basis(f.source, g.target):
        return result
    for s1, c1 in f.coefficients:
        for s2, c2 in g.coefficients:
            piece = table.product(s1, s2, f.source, f.target, g.target)
            result = result + piece.scale(c1 * c2)
    return result


HomMatrix = Tuple[Tuple[HomElement, ...], ...]

A_SUM = (FukayaObject.A, FukayaObject.A_SHIFT)
T_SUM = (FukayaObject.T_PLUS, FukayaObject.T_MINUS)


def _matrix(symbols: Sequence[Sequence[Tuple[str, int]]], rows, cols, scale: NovikovScalar) -> HomMatrix:
    return tuple(
        tuple(
            HomElement.basic(symbol, rows[i], cols[j], scale * sign)
            for j, (symbol, sign) in enumerate(row)
        )
        for i, row in enumerate(symbols)
    )


def Phi1() -> HomMatrix:
    """(p q; q p): A + A[1] -> T(1,-1) + T(-1,1)."""
    return _matrix((((P, 1), (Q, 1)), ((Q, 1), (P, 1))), A_SUM, T_SUM, NovikovScalar.one())


def Phi2(table: Optional[M2Table] = None) -> HomMatrix:
    """1/(2T^(l/2)) (p -q; -q p): T(1,-1) + T(-1,1) -> A + A[1]."""
    table = table or M2Table()
    scale = table.area_term.inverse() * Fraction(1, 2)
    return _matrix((((P, 1), (Q, -1)), ((Q, -1), (P, 1))), T_SUM, A_SUM, scale)


def compose(left: HomMatrix, right: HomMatrix, table: M2Table) -> HomMatrix:
    """Entry (i, j) is the sum over k of m2(left[i][k], right[k][j])."""
    out = []
    for i, row in enumerate(left):
        entries = []
        for j in range(len(right[0])):
            total = HomElement.zero(row[0].source, right[0][j].target)
            for k, f in enumerate(row):
                total = total + m2(f, right[k][j], table)
            entries.append(total)
        out.append(tuple(entries))
    return tuple(out)


@dataclass
class EquivalenceReport:
    eps_a: int
    eps_t: int
    l: Fraction
    phi1_phi2: HomMatrix
    phi2_phi1: HomMatrix
    failures: List[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return not self.failures


def _check_identity(name: str, matrix: HomMatrix, unit: str, eps: int, failures: List[str]):
    for i, row in enumerate(matrix):
        for j, entry in enumerate(row):
            if i == j:
                expected = HomElement.basic(unit, entry.source, entry.target, eps)
            else:
                expected = HomElement.zero(entry.source, entry.target)
            if entry != expected:
                failures.append(f"{name}[{i}][{j}] = {entry.render()}, expected {expected.render()}")


def verify_equivalence(eps: int = 1, eps_t: Optional[int] = None, l=1) -> EquivalenceReport:
    """Check Phi1.Phi2 = eps Id on A + A[1] and Phi2.Phi1 = eps_t Id on the tori."""
    eps_t = eps if eps_t is None else eps_t
    table = M2Table(eps, eps_t, l)
    if table.area_term * table.area_term.inverse() != NovikovScalar.one():
        raise RingError("T^(l/2) is not invertible")

    forward = compose(Phi1(), Phi2(table), table)
    backward = compose(Phi2(table), Phi1(), table)
    report = EquivalenceReport(eps, eps_t, table.l, forward, backward)
    _check_identity("Φ1∘Φ2", forward, UNIT_A, eps, report.failures)
    _check_identity("Φ2∘Φ1", backward, UNIT_T, eps_t, report.failures)

    if report.verified:
        logger.info(f"✅ A ⊕ A[1] ≅ T(1,-1) ⊕ T(-1,1) (ε_A = {eps:+d}, ε_T = {eps_t:+d})")
    else:
        logger.warning(f"❌ equivalence fails: {report.failures}")
    return report

"""Exact coefficient arithmetic.

Three layers, each immutable and kept in a unique normal form so that
equality is structural:

* ``AlphaRelation``: the ring the holonomy variable alpha lives in. Either
  alpha is absent (trivial), a free Laurent variable, or a generator of
  Q[alpha, alpha^-1] / (m * alpha^(m+n) - n).
* ``NovikovScalar``: finite sums of T^r (r rational) with alpha-polynomial
  coefficients.
* ``LaurentPolynomial``: sparse Laurent polynomials in one or two formal
  variables with NovikovScalar coefficients.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from ..exceptions import RingError

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]
AlphaPoly = Tuple[Tuple[int, Fraction], ...]
ScalarTerms = Tuple[Tuple[Fraction, AlphaPoly], ...]
Exponent = Tuple[int, ...]

MAX_VARIABLES = 2
ALPHA_SYMBOL = "α"


def as_fraction(value) -> Fraction:
    """Coerce an exact rational input (int, Fraction or "p/q" string)."""
    if isinstance(value, bool):
        raise RingError(f"not an exact rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise RingError(f"not an exact rational: {value!r}") from e
    raise RingError(f"not an exact rational: {value!r}")


class AlphaKind(str, Enum):
    """How the holonomy variable alpha enters the coefficient ring."""

    TRIVIAL = "trivial"
    FREE = "free"
    QUOTIENT = "quotient"


@dataclass(frozen=True)
class AlphaRelation:
    """The relation m * alpha^(m+n) = n, or one of the degenerate modes."""

    kind: AlphaKind = AlphaKind.TRIVIAL
    m: int = 0
    n: int = 0

    def __post_init__(self):
        if self.kind is AlphaKind.QUOTIENT:
            if self.m < 1 or self.n < 1:
                raise RingError(
                    f"relation weights must be positive, got m={self.m}, n={self.n}"
                )
        elif self.m or self.n:
            raise RingError(f"{self.kind.value} alpha mode takes no weights")

    @classmethod
    def trivial(cls) -> "AlphaRelation":
        return cls()

    @classmethod
    def free(cls) -> "AlphaRelation":
        return cls(AlphaKind.FREE)

    @classmethod
    def quotient(cls, m: int, n: int) -> "AlphaRelation":
        return cls(AlphaKind.QUOTIENT, m, n)

    @property
    def has_alpha(self) -> bool:
        return self.kind is not AlphaKind.TRIVIAL

    @property
    def period(self) -> int:
        """Number of alpha exponents kept in normal form (m + n)."""
        if self.kind is not AlphaKind.QUOTIENT:
            raise RingError(f"{self.kind.value} alpha mode has no period")
        return self.m + self.n

    def reduce(self, poly: Mapping[int, Fraction]) -> AlphaPoly:
        """Normal form of an alpha-polynomial given as {exponent: coefficient}."""
        out: Dict[int, Fraction] = {}
        for exp, coeff in poly.items():
            if not coeff:
                continue
            if self.kind is AlphaKind.QUOTIENT:
                # alpha^(k*(m+n) + r) = (n/m)^k * alpha^r, r in [0, m+n)
                k, exp = divmod(exp, self.period)
                coeff = coeff * Fraction(self.n, self.m) ** k
            elif self.kind is AlphaKind.TRIVIAL and exp != 0:
                raise RingError("alpha absent")
            out[exp] = out.get(exp, Fraction(0)) + coeff
        return tuple(sorted((e, c) for e, c in out.items() if c))

    def join(self, other: "AlphaRelation") -> "AlphaRelation":
        """Smallest mode containing both; trivial coefficients embed anywhere."""
        if self == other or other.kind is AlphaKind.TRIVIAL:
            return self
        if self.kind is AlphaKind.TRIVIAL:
            return other
        raise RingError(f"incompatible alpha relations: {self.describe()} vs {other.describe()}")

    def accepts(self, source: "AlphaRelation") -> bool:
        """Whether objects over ``source`` map into this ring (imposing the relation)."""
        if source == self or source.kind is AlphaKind.TRIVIAL:
            return True
        return source.kind is AlphaKind.FREE and self.kind is AlphaKind.QUOTIENT

    def describe(self) -> str:
        if self.kind is AlphaKind.QUOTIENT:
            scale = "" if self.m == 1 else f"{self.m}*"
            return f"{scale}{ALPHA_SYMBOL}^{self.period} = {self.n}"
        return self.kind.value


TRIVIAL = AlphaRelation()
FREE = AlphaRelation.free()


# ---------------------------------------------------------------------------
# Rendering helpers
# ---------------------------------------------------------------------------


def _format_exponent(symbol: str, exp: Fraction) -> str:
    if exp == 1:
        return symbol
    if exp.denominator == 1:
        return f"{symbol}^{exp.numerator}"
    return f"{symbol}^({exp})"


def _join_signed(pieces) -> str:
    text = " + ".join(pieces)
    return text.replace("+ -", "- ")


def _format_alpha_poly(poly: AlphaPoly) -> str:
    pieces = []
    for exp, coeff in poly:
        if exp == 0:
            pieces.append(str(coeff))
            continue
        base = _format_exponent(ALPHA_SYMBOL, Fraction(exp))
        if coeff == 1:
            pieces.append(base)
        elif coeff == -1:
            pieces.append(f"-{base}")
        else:
            pieces.append(f"{coeff}*{base}")
    return _join_signed(pieces)


def _format_term(poly: AlphaPoly, t_exp: Fraction, monomial: str, symbol: str, scale: Fraction) -> str:
    factors = []
    if t_exp:
        factors.append(_format_exponent(symbol, t_exp * scale))
    if monomial:
        factors.append(monomial)
    coeff = _format_alpha_poly(poly)
    if not factors:
        return coeff
    if len(poly) > 1:
        coeff = f"({coeff})"
    if coeff == "1":
        return "*".join(factors)
    if coeff == "-1":
        return "-" + "*".join(factors)
    return "*".join([coeff] + factors)


# ---------------------------------------------------------------------------
# Novikov scalars
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NovikovScalar:
    """Finite sum  sum_r p_r(alpha) T^r  in normal form.

    ``terms`` is sorted by T-exponent; every alpha-polynomial is reduced by
    ``relation`` and nonzero.
    """

    terms: ScalarTerms = ()
    relation: AlphaRelation = TRIVIAL

    @classmethod
    def build(
        cls,
        raw: Mapping[Number, Mapping[int, Number]],
        relation: Optional[AlphaRelation] = None,
    ) -> "NovikovScalar":
        relation = TRIVIAL if relation is None else relation
        merged: Dict[Fraction, Dict[int, Fraction]] = {}
        for t_exp, poly in raw.items():
            bucket = merged.setdefault(as_fraction(t_exp), {})
            for a_exp, coeff in poly.items():
                bucket[a_exp] = bucket.get(a_exp, Fraction(0)) + as_fraction(coeff)
        terms = []
        for t_exp in sorted(merged):
            reduced = relation.reduce(merged[t_exp])
            if reduced:
                terms.append((t_exp, reduced))
        return cls(tuple(terms), relation)

    @classmethod
    def zero(cls, relation: Optional[AlphaRelation] = None) -> "NovikovScalar":
        return cls((), TRIVIAL if relation is None else relation)

    @classmethod
    def constant(cls, value: Number, relation: Optional[AlphaRelation] = None) -> "NovikovScalar":
        return cls.build({0: {0: value}}, relation)

    @classmethod
    def one(cls, relation: Optional[AlphaRelation] = None) -> "NovikovScalar":
        return cls.constant(1, relation)

    @classmethod
    def monomial(
        cls,
        coeff: Number = 1,
        t: Number = 0,
        alpha: int = 0,
        relation: Optional[AlphaRelation] = None,
    ) -> "NovikovScalar":
        """coeff * alpha^alpha * T^t."""
        relation = TRIVIAL if relation is None else relation
        if alpha and not relation.has_alpha:
            raise RingError("alpha absent")
        return cls.build({t: {alpha: coeff}}, relation)

    @classmethod
    def t_power(cls, t: Number, coeff: Number = 1) -> "NovikovScalar":
        return cls.monomial(coeff, t)

    @classmethod
    def alpha(cls, relation: AlphaRelation) -> "NovikovScalar":
        return cls.monomial(1, 0, 1, relation)

    # -- structure -------------------------------------------------------

    def _raw(self) -> Dict[Fraction, Dict[int, Fraction]]:
        return {t: dict(poly) for t, poly in self.terms}

    def _coerce(self, other) -> Optional["NovikovScalar"]:
        if isinstance(other, NovikovScalar):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return NovikovScalar.constant(other, self.relation)
        return None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return not self.is_zero

    @property
    def is_constant(self) -> bool:
        return self.is_zero or (
            len(self.terms) == 1 and self.terms[0][0] == 0 and len(self.terms[0][1]) == 1
            and self.terms[0][1][0][0] == 0
        )

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise RingError(f"not a rational constant: {self}")
        return self.terms[0][1][0][1] if self.terms else Fraction(0)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and len(self.terms[0][1]) == 1

    def with_relation(self, relation: AlphaRelation) -> "NovikovScalar":
        """Re-express in ``relation``; FREE -> QUOTIENT imposes the relation."""
        if not relation.accepts(self.relation):
            raise RingError(
                f"cannot move {self.relation.describe()} scalar into {relation.describe()}"
            )
        if relation == self.relation:
            return self
        return NovikovScalar.build(self._raw(), relation)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        relation = self.relation.join(other.relation)
        raw = self._raw()
        for t_exp, poly in other.terms:
            bucket = raw.setdefault(t_exp, {})
            for a_exp, coeff in poly:
                bucket[a_exp] = bucket.get(a_exp, Fraction(0)) + coeff
        return NovikovScalar.build(raw, relation)

    __radd__ = __add__

    def __neg__(self):
        return NovikovScalar(tuple((t, tuple((a, -c) for a, c in poly)) for t, poly in self.terms), self.relation)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        relation = self.relation.join(other.relation)
        raw: Dict[Fraction, Dict[int, Fraction]] = {}
        for t1, p1 in self.terms:
            for t2, p2 in other.terms:
                bucket = raw.setdefault(t1 + t2, {})
                for a1, c1 in p1:
                    for a2, c2 in p2:
                        bucket[a1 + a2] = bucket.get(a1 + a2, Fraction(0)) + c1 * c2
        return NovikovScalar.build(raw, relation)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = NovikovScalar.one(self.relation)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "NovikovScalar":
        """Inverse of a monomial c * alpha^a * T^t (alpha is a unit when present)."""
        if self.is_zero:
            raise RingError("zero scalar is not invertible")
        if not self.is_monomial:
            raise RingError(f"only monomial scalars are invertible, got {self}")
        t_exp, ((a_exp, coeff),) = self.terms[0]
        return NovikovScalar.build({-t_exp: {-a_exp: 1 / coeff}}, self.relation)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def times_alpha_power(self, k: int) -> "NovikovScalar":
        """self * alpha^k for any integer k."""
        if k == 0:
            return self
        if not self.relation.has_alpha:
            raise RingError("alpha absent")
        return self * NovikovScalar.monomial(1, 0, k, self.relation)

    # -- valuation -------------------------------------------------------

    def valuation(self) -> Fraction:
        if self.is_zero:
            raise RingError("zero scalar")
        return self.terms[0][0]

    def in_lambda_plus(self) -> bool:
        """Every T-exponent strictly positive (the empty sum qualifies)."""
        return self.is_zero or self.valuation() > 0

    # -- comparison / display -------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        try:
            self.relation.join(other.relation)
        except RingError:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def render(self, symbol: str = "T", scale: Number = 1) -> str:
        if self.is_zero:
            return "0"
        scale = as_fraction(scale)
        return _join_signed([_format_term(poly, t, "", symbol, scale) for t, poly in self.terms])

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"NovikovScalar({self.render()!r}, {self.relation.describe()!r})"


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


def _monomial_text(variables: Tuple[str, ...], exponent: Exponent) -> str:
    parts = []
    for name, e in zip(variables, exponent):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


@dataclass(frozen=True, eq=False)
class LaurentPolynomial:
    """Sparse sum of NovikovScalar coefficients times integer-exponent monomials."""

    variables: Tuple[str, ...]
    terms: Tuple[Tuple[Exponent, NovikovScalar], ...] = ()
    relation: AlphaRelation = TRIVIAL

    def __post_init__(self):
        if not 1 <= len(self.variables) <= MAX_VARIABLES:
            raise RingError(f"expected 1 or {MAX_VARIABLES} variables, got {self.variables}")
        if len(set(self.variables)) != len(self.variables):
            raise RingError(f"repeated variable names: {self.variables}")

    @classmethod
    def build(
        cls,
        variables,
        raw: Mapping[Exponent, Union[NovikovScalar, Number]],
        relation: Optional[AlphaRelation] = None,
    ) -> "LaurentPolynomial":
        variables = tuple(variables)
        relation = TRIVIAL if relation is None else relation
        coeffs: Dict[Exponent, NovikovScalar] = {}
        for exponent, coeff in raw.items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != len(variables):
                raise RingError(f"exponent {exponent} does not match variables {variables}")
            if not isinstance(coeff, NovikovScalar):
                coeff = NovikovScalar.constant(coeff)
            coeffs[exponent] = coeffs[exponent] + coeff if exponent in coeffs else coeff
        for coeff in coeffs.values():
            if not relation.accepts(coeff.relation):
                relation = relation.join(coeff.relation)
        terms = tuple(
            (e, c.with_relation(relation))
            for e, c in sorted(coeffs.items())
            if not c.is_zero
        )
        return cls(variables, terms, relation)

    @classmethod
    def zero(cls, variables, relation: Optional[AlphaRelation] = None) -> "LaurentPolynomial":
        return cls.build(variables, {}, relation)

    @classmethod
    def constant(cls, value, variables, relation: Optional[AlphaRelation] = None) -> "LaurentPolynomial":
        variables = tuple(variables)
        return cls.build(variables, {(0,) * len(variables): value}, relation)

    @classmethod
    def monomial(cls, coeff, exponent, variables, relation: Optional[AlphaRelation] = None) -> "LaurentPolynomial":
        return cls.build(variables, {tuple(exponent): coeff}, relation)

    @classmethod
    def variable(cls, name: str, variables, relation: Optional[AlphaRelation] = None) -> "LaurentPolynomial":
        variables = tuple(variables)
        if name not in variables:
            raise RingError(f"{name!r} is not one of {variables}")
        exponent = tuple(1 if v == name else 0 for v in variables)
        return cls.build(variables, {exponent: 1}, relation)

    # -- structure -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return not self.is_zero

    def items(self) -> Iterator[Tuple[Exponent, NovikovScalar]]:
        return iter(self.terms)

    def coefficient(self, exponent) -> NovikovScalar:
        exponent = tuple(exponent)
        for e, c in self.terms:
            if e == exponent:
                return c
        return NovikovScalar.zero(self.relation)

    def with_relation(self, relation: AlphaRelation) -> "LaurentPolynomial":
        return LaurentPolynomial.build(self.variables, dict(self.terms), relation)

    def embed(self, variables) -> "LaurentPolynomial":
        """Re-index over a variable list containing all current variables."""
        variables = tuple(variables)
        missing = [v for v in self.variables if v not in variables]
        if missing:
            raise RingError(f"cannot embed {self.variables} into {variables}")
        position = {v: i for i, v in enumerate(self.variables)}
        raw = {}
        for exponent, coeff in self.terms:
            raw[tuple(exponent[position[v]] if v in position else 0 for v in variables)] = coeff
        return LaurentPolynomial.build(variables, raw, self.relation)

    def _coerce(self, other) -> Optional["LaurentPolynomial"]:
        if isinstance(other, LaurentPolynomial):
            if other.variables != self.variables:
                raise RingError(
                    f"variable-set mismatch: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, (NovikovScalar, int, Fraction)) and not isinstance(other, bool):
            return LaurentPolynomial.constant(other, self.variables, self.relation)
        return None

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        relation = self.relation.join(other.relation)
        raw: Dict[Exponent, NovikovScalar] = dict(self.terms)
        for exponent, coeff in other.terms:
            raw[exponent] = raw[exponent] + coeff if exponent in raw else coeff
        return LaurentPolynomial.build(self.variables, raw, relation)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.variables, tuple((e, -c) for e, c in self.terms), self.relation)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        relation = self.relation.join(other.relation)
        raw: Dict[Exponent, NovikovScalar] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                exponent = tuple(a + b for a, b in zip(e1, e2))
                product = c1 * c2
                raw[exponent] = raw[exponent] + product if exponent in raw else product
        return LaurentPolynomial.build(self.variables, raw, relation)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self.terms) != 1:
                raise RingError(f"only monomials have Laurent inverses, got {self}")
            (exponent, coeff), = self.terms
            inverse = LaurentPolynomial.build(
                self.variables, {tuple(-e for e in exponent): coeff.inverse()}, self.relation
            )
            return inverse ** (-k)
        result = LaurentPolynomial.constant(1, self.variables, self.relation)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self, name: str) -> "LaurentPolynomial":
        if name not in self.variables:
            raise RingError(f"{name!r} is not one of {self.variables}")
        i = self.variables.index(name)
        raw = {}
        for exponent, coeff in self.terms:
            if exponent[i]:
                lowered = exponent[:i] + (exponent[i] - 1,) + exponent[i + 1:]
                raw[lowered] = coeff * exponent[i]
        return LaurentPolynomial.build(self.variables, raw, self.relation)

    def evaluate(self, values: Mapping[str, Union[NovikovScalar, Number]]) -> NovikovScalar:
        """Substitute a scalar for every variable."""
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise RingError(f"no value given for {missing}")
        points = []
        for v in self.variables:
            value = values[v]
            if not isinstance(value, NovikovScalar):
                value = NovikovScalar.constant(value, self.relation)
            points.append(value)
        total = NovikovScalar.zero(self.relation)
        powers: Dict[Tuple[int, int], NovikovScalar] = {}
        for exponent, coeff in self.terms:
            term = coeff
            for i, e in enumerate(exponent):
                if e:
                    if (i, e) not in powers:
                        powers[(i, e)] = points[i] ** e
                    term = term * powers[(i, e)]
            total = total + term
        return total

    # -- comparison / display -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial) and other.variables != self.variables:
            return False
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        try:
            self.relation.join(other.relation)
        except RingError:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, self.terms))

    def render(self, symbol: str = "T", scale: Number = 1) -> str:
        """Canonical text: terms by (exponent vector, T-exponent)."""
        if self.is_zero:
            return "0"
        scale = as_fraction(scale)
        pieces = []
        for exponent, coeff in self.terms:
            monomial = _monomial_text(self.variables, exponent)
            for t_exp, poly in coeff.terms:
                pieces.append(_format_term(poly, t_exp, monomial, symbol, scale))
        return _join_signed(pieces)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LaurentPolynomial({self.render()!r}, variables={self.variables})"


# ---------------------------------------------------------------------------
# Operation-level entry points
# ---------------------------------------------------------------------------


def scalar_normalize(s: NovikovScalar) -> NovikovScalar:
    """Unique normal form; scalars are normalized on construction, so this rebuilds."""
    return NovikovScalar.build(s._raw(), s.relation)


def scalar_add(a: NovikovScalar, b: NovikovScalar) -> NovikovScalar:
    return a + b


def scalar_mul(a: NovikovScalar, b: NovikovScalar) -> NovikovScalar:
    return a * b


def scalar_inverse_alpha_power(s: NovikovScalar, k: int) -> NovikovScalar:
    """s * alpha^(-k)."""
    return s.times_alpha_power(-k)


def valuation(s: NovikovScalar) -> Fraction:
    return s.valuation()


def in_lambda_plus(s: NovikovScalar) -> bool:
    return s.in_lambda_plus()


def poly_add(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    return p + q


def poly_sub(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    return p - q


def poly_mul(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    return p * q


def poly_equal(p: LaurentPolynomial, q: LaurentPolynomial) -> bool:
    if p.variables != q.variables:
        raise RingError(f"variable-set mismatch: {p.variables} vs {q.variables}")
    return p == q


def T(exponent: Number, coeff: Number = 1) -> NovikovScalar:
    """Shorthand for coeff * T^exponent."""
    return NovikovScalar.t_power(exponent, coeff)

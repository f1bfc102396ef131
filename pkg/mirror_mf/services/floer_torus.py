"""Morse-Floer complex of a torus T^n twisted by two flat line bundles.

Generators are the critical points of sum cos(2 pi x_i), i.e. points of
{0, 1/2}^n, graded by the number of coordinates equal to 0. Coefficients live
in the Gaussian rationals so holonomies such as +-1 and +-i are exact.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import I, Rational
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from ..config import settings
from ..exceptions import ComplexError

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(settings.log_level)

if not logger.handlers:
    handler = logging.StreamHandler()
    formatter = logging.Formatter('%(levelname)s:%(name)s: %(message)s')
    handler.setFormatter(formatter)
    logger.addHandler(handler)

HALF = Fraction(1, 2)
Generator = Tuple[Fraction, ...]
Block = DomainMatrix  # rows indexed by target generators, columns by source


def parse_holonomy(text: str):
    """Parse a rational or Gaussian rational literal: "2", "-1/3", "i", "1/2-3i"."""
    raw = str(text).replace(" ", "")
    if not raw:
        raise ComplexError("empty holonomy literal")
    try:
        if raw[-1] in "iIj":
            body = raw[:-1]
            split = max(body.rfind("+"), body.rfind("-"))
            if split > 0:
                real_text, imag_text = body[:split], body[split:]
            else:
                real_text, imag_text = "0", body
            if imag_text in ("", "+"):
                imag_text = "1"
            elif imag_text == "-":
                imag_text = "-1"
            real, imag = Fraction(real_text), Fraction(imag_text)
        else:
            real, imag = Fraction(raw), Fraction(0)
    except (ValueError, ZeroDivisionError) as e:
        raise ComplexError(f"cannot parse holonomy {text!r}: {e}") from e
    return QQ_I.from_sympy(Rational(real.numerator, real.denominator)
                           + I * Rational(imag.numerator, imag.denominator))


def parse_holonomy_vector(text: str) -> Tuple:
    return tuple(parse_holonomy(part) for part in str(text).split(","))


def _coerce(value):
    if isinstance(value, str):
        return parse_holonomy(value)
    if isinstance(value, Fraction):
        return QQ_I.from_sympy(Rational(value.numerator, value.denominator))
    if isinstance(value, int) and not isinstance(value, bool):
        return QQ_I.from_sympy(Rational(value))
    return QQ_I.convert(value)


def format_element(value) -> str:
    return str(QQ_I.to_sympy(value))


def _all_generators(n: int) -> List[Generator]:
    return [tuple(p) for p in itertools.product((Fraction(0), HALF), repeat=n)]


def _sign(a: Generator, i: int) -> int:
    """(-1)^A with A the number of j < i with a_j = 0."""
    return -1 if sum(1 for x in a[:i] if x == 0) % 2 else 1


def _flip(a: Generator, i: int) -> Generator:
    return a[:i] + (HALF,) + a[i + 1:]


def _block(rows: List[List]) -> Block:
    return DomainMatrix(rows, (len(rows), len(rows[0])), QQ_I)


@dataclass(frozen=True)
class TorusComplex:
    n: int
    h0: Tuple
    h1: Tuple

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ComplexError(f"torus dimension must be a positive integer, got {self.n!r}")
        h0 = tuple(_coerce(h) for h in self.h0)
        h1 = tuple(_coerce(h) for h in self.h1)
        if len(h0) != self.n or len(h1) != self.n:
            raise ComplexError(f"expected {self.n} holonomies per bundle, got {len(h0)} and {len(h1)}")
        if any(QQ_I.is_zero(h) for h in h0 + h1):
            raise ComplexError("zero holonomy")
        object.__setattr__(self, "h0", h0)
        object.__setattr__(self, "h1", h1)

    @classmethod
    def from_text(cls, n: int, h0: str, h1: str) -> "TorusComplex":
        return cls(n, parse_holonomy_vector(h0), parse_holonomy_vector(h1))

    @property
    def factors(self) -> Tuple:
        """1 - h0_i / h1_i."""
        return tuple(QQ_I.one - QQ_I.quo(a, b) for a, b in zip(self.h0, self.h1))

    @property
    def bundles_agree(self) -> bool:
        return self.h0 == self.h1

    def generators(self, index: int) -> List[Generator]:
        return [a for a in _all_generators(self.n) if sum(1 for x in a if x == 0) == index]

    def _boundary(self, index: int, factors: Sequence) -> Block:
        sources = self.generators(index)
        targets = self.generators(index - 1)
        position = {a: r for r, a in enumerate(targets)}
        block = [[QQ_I.zero] * len(sources) for _ in targets]
        for col, a in enumerate(sources):
            for i, x in enumerate(a):
                if x == 0:
                    block[position[_flip(a, i)]][col] += factors[i] * _sign(a, i)
        return _block(block)

    def differential(self, index: int) -> Block:
        """Matrix of d: C_index -> C_(index-1)."""
        if not 1 <= index <= self.n:
            raise ComplexError(f"no differential out of degree {index} for n = {self.n}")
        return self._boundary(index, self.factors)

    def differentials(self) -> Dict[int, Block]:
        return {k: self.differential(k) for k in range(1, self.n + 1)}

    def boundary_squares_to_zero(self) -> bool:
        for k in range(2, self.n + 1):
            if not (self.differential(k - 1) * self.differential(k)).is_zero_matrix:
                return False
        return True


def _ranks(n: int, blocks: Dict[int, Block]) -> List[int]:
    boundary_ranks = {k: block.rank() for k, block in blocks.items()}
    return [
        math.comb(n, k) - boundary_ranks.get(k, 0) - boundary_ranks.get(k + 1, 0)
        for k in range(n + 1)
    ]


def homology_ranks(c: TorusComplex) -> List[int]:
    ranks = _ranks(c.n, c.differentials())
    logger.info(f"🧮 T^{c.n}: homology ranks {ranks} (total {sum(ranks)})")
    return ranks


def differential(c: TorusComplex) -> Dict[int, Block]:
    return c.differentials()


def simplex_complex(n: int) -> Dict[int, Block]:
    """Unit-coefficient differential; the reduced chain complex of the (n-1)-simplex."""
    unit = TorusComplex(n, (1,) * n, (1,) * n)
    return {k: unit._boundary(k, (QQ_I.one,) * n) for k in range(1, n + 1)}


def reduced_simplex_ranks(n: int) -> List[int]:
    return _ranks(n, simplex_complex(n))


def _psi(c: TorusComplex, index: int) -> Block:
    """Diagonal map a -> prod over a_i = 0 of (1 - h0_i/h1_i)."""
    gens = c.generators(index)
    block = [[QQ_I.zero] * len(gens) for _ in gens]
    for r, a in enumerate(gens):
        entry = QQ_I.one
        for i, x in enumerate(a):
            if x == 0:
                entry *= c.factors[i]
        block[r][r] = entry
    return _block(block)


def chain_isomorphism_check(c: TorusComplex) -> bool:
    """Whether Psi intertwines the twisted differential with the simplex one."""
    if any(QQ_I.is_zero(f) for f in c.factors):
        raise ComplexError("Psi not invertible")
    unit = simplex_complex(c.n)
    for k in range(1, c.n + 1):
        if not (_psi(c, k - 1) * c.differential(k) - unit[k] * _psi(c, k)).is_zero_matrix:
            logger.warning(f"❌ Ψ∂ != ∂̃Ψ in degree {k}")
            return False
    logger.info(f"✅ Ψ∂ = ∂̃Ψ on T^{c.n}")
    return True


@dataclass(frozen=True)
class TorusHomology:
    n: int
    h0: Tuple[str, ...]
    h1: Tuple[str, ...]
    ranks: Tuple[int, ...]
    chain_isomorphism: Optional[bool] = None  # None when not checked

    @property
    def total(self) -> int:
        return sum(self.ranks)


def torus_report(c: TorusComplex, check_iso: bool = False) -> TorusHomology:
    iso = chain_isomorphism_check(c) if check_iso else None
    return TorusHomology(
        c.n,
        tuple(format_element(h) for h in c.h0),
        tuple(format_element(h) for h in c.h1),
        tuple(homology_ranks(c)),
        iso,
    )

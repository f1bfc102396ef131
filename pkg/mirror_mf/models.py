"""Pydantic models for serialized verifier objects."""

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .algebra.ring import AlphaKind

Rational = Tuple[int, int]


def _check_rational(value: Rational) -> Rational:
    if value[1] <= 0:
        raise ValueError(f"denominator must be positive, got {value[1]}")
    return value


class AlphaRelationModel(BaseModel):
    """The alpha ring: trivial, free, or quotient by m * alpha^(m+n) = n."""

    kind: AlphaKind = AlphaKind.TRIVIAL
    m: int = 0
    n: int = 0


class ScalarTermModel(BaseModel):
    """One T-power with a dense alpha-polynomial coefficient."""

    t: Rational = Field(..., description="T-exponent as [num, den]")
    alpha: List[Rational] = Field(..., description="coefficients of alpha^alpha_min, alpha^(alpha_min+1), ...")
    alpha_min: int = Field(default=0, description="alpha exponent of the first coefficient")

    @field_validator("t")
    @classmethod
    def check_t(cls, value: Rational) -> Rational:
        return _check_rational(value)

    @field_validator("alpha")
    @classmethod
    def check_alpha(cls, value: List[Rational]) -> List[Rational]:
        for entry in value:
            _check_rational(entry)
        return value


class TermModel(ScalarTermModel):
    """Polynomial term: monomial exponent vector plus its scalar part."""

    z: List[int] = Field(..., description="exponent of each variable")


class MatrixFactorizationModel(BaseModel):
    """[[0, F], [G, 0]] with F, G given entry-wise as term lists."""

    label: str = ""
    variables: List[str]
    relation: AlphaRelationModel = Field(default_factory=AlphaRelationModel)
    W: List[TermModel]
    lam: List[ScalarTermModel] = Field(default_factory=list, description="critical value lambda")
    F: List[List[List[TermModel]]]
    G: List[List[List[TermModel]]]


class ResidualModel(BaseModel):
    block: str
    row: int
    col: int
    polynomial: List[TermModel]
    text: str


class VerificationReportModel(BaseModel):
    label: str
    verified: bool
    residuals: List[ResidualModel] = Field(default_factory=list)


class StripClassModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    from_pt: str = Field(..., alias="from")
    to_pt: str = Field(..., alias="to")
    winding: List[int]
    area: Tuple[Rational, Rational] = Field(..., description="[const, slope] of the area in u")
    alpha: int = 0
    sign: int = 1
    orb: bool = False


class StripFamilyModel(BaseModel):
    geometry: str
    label: str
    variables: List[str]
    relation: AlphaRelationModel = Field(default_factory=AlphaRelationModel)
    interval: Tuple[Rational, Rational]
    closed_right: bool = False
    strips: List[StripClassModel]


class CriticalDataModel(BaseModel):
    relation: AlphaRelationModel
    critical_point: List[ScalarTermModel]
    critical_value: List[ScalarTermModel]
    potential: List[TermModel]
    text: str = ""


class FactorizationOutputModel(BaseModel):
    """Output of the factorize command."""

    verified: bool
    family: Optional[StripFamilyModel] = None
    factorization: MatrixFactorizationModel


class TorusHomologyModel(BaseModel):
    n: int
    h0: List[str]
    h1: List[str]
    ranks: List[int]
    total: int
    chain_isomorphism: Optional[bool] = None


class EquivalenceReportModel(BaseModel):
    eps_a: int
    eps_t: int
    l: Rational
    verified: bool
    phi1_phi2: List[List[str]]
    phi2_phi1: List[List[str]]
    failures: List[str] = Field(default_factory=list)


class QuadraticReportModel(BaseModel):
    t1: float
    t2: Tuple[float, float]
    coefficient: Tuple[float, float]
    roots: List[Tuple[float, float]]
    discriminant: float
    classification: str
    roots_in_disc: bool
    vieta_defect: float

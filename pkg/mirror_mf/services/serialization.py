"""Conversion between domain objects and their pydantic models."""

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from pydantic import BaseModel

from ..algebra.mf import MatrixFactorization, VerificationReport
from ..algebra.ring import AlphaRelation, LaurentPolynomial, NovikovScalar
from ..models import (
    AlphaRelationModel,
    CriticalDataModel,
    EquivalenceReportModel,
    MatrixFactorizationModel,
    QuadraticReportModel,
    ResidualModel,
    ScalarTermModel,
    StripClassModel,
    StripFamilyModel,
    TermModel,
    TorusHomologyModel,
    VerificationReportModel,
)
from .floer_torus import TorusHomology
from .fukaya_mini import EquivalenceReport
from .strip_numeric import QuadraticReport
from .strips import StripFamily
from .toric import CriticalData


def dump(model: BaseModel) -> str:
    """Canonical JSON text."""
    return model.model_dump_json(indent=2, by_alias=True)


def _rational(value: Fraction) -> Tuple[int, int]:
    return value.numerator, value.denominator


def _fraction(value: Sequence[int]) -> Fraction:
    return Fraction(value[0], value[1])


def relation_to_model(relation: AlphaRelation) -> AlphaRelationModel:
    return AlphaRelationModel(kind=relation.kind, m=relation.m, n=relation.n)


def relation_from_model(model: AlphaRelationModel) -> AlphaRelation:
    return AlphaRelation(model.kind, model.m, model.n)


def _alpha_dense(poly) -> Tuple[List[Tuple[int, int]], int]:
    exponents = [e for e, _ in poly]
    low = min(0, exponents[0])
    coeffs = dict(poly)
    dense = [_rational(coeffs.get(e, Fraction(0))) for e in range(low, exponents[-1] + 1)]
    return dense, low


def _alpha_sparse(alpha: Sequence[Sequence[int]], alpha_min: int) -> Dict[int, Fraction]:
    return {alpha_min + i: _fraction(c) for i, c in enumerate(alpha)}


def scalar_terms(s: NovikovScalar) -> List[ScalarTermModel]:
    out = []
    for t, poly in s.terms:
        dense, low = _alpha_dense(poly)
        out.append(ScalarTermModel(t=_rational(t), alpha=dense, alpha_min=low))
    return out


def scalar_from_terms(terms: Sequence[ScalarTermModel], relation: AlphaRelation) -> NovikovScalar:
    raw: Dict[Fraction, Dict[int, Fraction]] = {}
    for term in terms:
        bucket = raw.setdefault(_fraction(term.t), {})
        for exp, coeff in _alpha_sparse(term.alpha, term.alpha_min).items():
            bucket[exp] = bucket.get(exp, Fraction(0)) + coeff
    return NovikovScalar.build(raw, relation)


def poly_terms(p: LaurentPolynomial) -> List[TermModel]:
    out = []
    for exponent, coeff in p.terms:
        for t, poly in coeff.terms:
            dense, low = _alpha_dense(poly)
            out.append(TermModel(z=list(exponent), t=_rational(t), alpha=dense, alpha_min=low))
    return out


def poly_from_terms(
    terms: Sequence[TermModel], variables: Sequence[str], relation: AlphaRelation
) -> LaurentPolynomial:
    raw: Dict[Tuple[int, ...], NovikovScalar] = {}
    for term in terms:
        coeff = scalar_from_terms([term], relation)
        key = tuple(term.z)
        raw[key] = raw[key] + coeff if key in raw else coeff
    return LaurentPolynomial.build(tuple(variables), raw, relation)


def mf_to_model(M: MatrixFactorization) -> MatrixFactorizationModel:
    relation = M.W.relation.join(M.lam.relation)
    return MatrixFactorizationModel(
        label=M.label,
        variables=list(M.variables),
        relation=relation_to_model(relation),
        W=poly_terms(M.W),
        lam=scalar_terms(M.lam),
        F=[[poly_terms(p) for p in row] for row in M.F],
        G=[[poly_terms(p) for p in row] for row in M.G],
    )


def mf_from_model(model: MatrixFactorizationModel) -> MatrixFactorization:
    """Rebuild the factorization; the square identity is not checked here."""
    relation = relation_from_model(model.relation)
    variables = tuple(model.variables)

    def block(rows) -> Tuple[Tuple[LaurentPolynomial, ...], ...]:
        return tuple(tuple(poly_from_terms(e, variables, relation) for e in row) for row in rows)

    return MatrixFactorization(
        block(model.F),
        block(model.G),
        poly_from_terms(model.W, variables, relation),
        scalar_from_terms(model.lam, relation),
        model.label,
    )


def parse_mf_json(text: str) -> MatrixFactorization:
    return mf_from_model(MatrixFactorizationModel.model_validate_json(text))


def report_to_model(report: VerificationReport, symbol: str = "T", scale=1) -> VerificationReportModel:
    return VerificationReportModel(
        label=report.label,
        verified=report.verified,
        residuals=[
            ResidualModel(
                block=r.block,
                row=r.row,
                col=r.col,
                polynomial=poly_terms(r.polynomial),
                text=r.polynomial.render(symbol, scale),
            )
            for r in report.residuals
        ],
    )


def family_to_model(family: StripFamily) -> StripFamilyModel:
    lo, hi = family.interval
    return StripFamilyModel(
        geometry=family.geometry.value,
        label=family.label,
        variables=list(family.variables),
        relation=relation_to_model(family.relation),
        interval=(_rational(lo), _rational(hi)),
        closed_right=family.closed_right,
        strips=[
            StripClassModel(
                from_pt=s.from_pt,
                to_pt=s.to_pt,
                winding=list(s.winding),
                area=(_rational(s.area.const), _rational(s.area.slope)),
                alpha=s.alpha_power,
                sign=s.sign,
                orb=s.orbifold_insertion,
            )
            for s in family.strips
        ],
    )


def critical_to_model(data: CriticalData, symbol: str = "T", scale=1) -> CriticalDataModel:
    text = (
        f"W = {data.potential.render(symbol, scale)}; "
        f"z0 = {data.critical_point.render(symbol, scale)}; "
        f"λ = {data.critical_value.render(symbol, scale)}"
    )
    return CriticalDataModel(
        relation=relation_to_model(data.relation),
        critical_point=scalar_terms(data.critical_point),
        critical_value=scalar_terms(data.critical_value),
        potential=poly_terms(data.potential),
        text=text,
    )


def torus_to_model(result: TorusHomology) -> TorusHomologyModel:
    return TorusHomologyModel(
        n=result.n,
        h0=list(result.h0),
        h1=list(result.h1),
        ranks=list(result.ranks),
        total=result.total,
        chain_isomorphism=result.chain_isomorphism,
    )


def equivalence_to_model(report: EquivalenceReport) -> EquivalenceReportModel:
    return EquivalenceReportModel(
        eps_a=report.eps_a,
        eps_t=report.eps_t,
        l=_rational(report.l),
        verified=report.verified,
        phi1_phi2=[[e.render() for e in row] for row in report.phi1_phi2],
        phi2_phi1=[[e.render() for e in row] for row in report.phi2_phi1],
        failures=list(report.failures),
    )


def _pair(value: complex) -> Tuple[float, float]:
    return float(value.real), float(value.imag)


def quadratic_to_model(report: QuadraticReport) -> QuadraticReportModel:
    return QuadraticReportModel(
        t1=report.t1,
        t2=_pair(report.t2),
        coefficient=_pair(report.coefficient),
        roots=[_pair(r) for r in report.roots],
        discriminant=float(report.discriminant),
        classification=report.classification.value,
        roots_in_disc=report.roots_in_disc,
        vieta_defect=float(report.vieta_defect),
    )

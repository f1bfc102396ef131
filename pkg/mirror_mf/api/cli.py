"""Command-line front end.

Exit codes: 0 when every identity holds, 1 when one fails, 2 on bad input.
Reports go to stdout; log lines go to stderr.
"""

import argparse
import csv
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from ..algebra.mf import (
    MatrixFactorization,
    mf_from_pair,
    mf_shift,
    mf_tensor,
    mf_verify,
    signed_permutation_witness,
)
from ..algebra.ring import FREE, T, as_fraction
from ..config import CONVENTION_ALIASES, QConvention, settings
from ..exceptions import MirrorError, UnspecifiedProductError, VerificationError
from ..models import FactorizationOutputModel
from ..services import floer_torus, fukaya_mini, strip_numeric, toric
from ..services.serialization import (
    critical_to_model,
    dump,
    equivalence_to_model,
    family_to_model,
    mf_to_model,
    parse_mf_json,
    quadratic_to_model,
    report_to_model,
    torus_to_model,
)
from ..services.strips import (
    Direction,
    StripFamily,
    antidiagonal_critical_point,
    central_fiber_cp1xcp1,
    enumerate_antidiagonal,
    enumerate_cp1,
    enumerate_weighted,
    enumerate_weighted_bulk,
    family_to_mf,
    fourier_assemble,
)

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2
GEOMETRIES = ("cp1", "weighted", "teardrop-bulk", "antidiagonal")
CONVENTION_CHOICES = [c.value for c in QConvention] + list(CONVENTION_ALIASES)
# options whose values are comma lists that may start with "-"
LIST_OPTIONS = ("--h0", "--h1")


class InputError(MirrorError, ValueError):
    """Malformed command-line input."""


@dataclass(frozen=True)
class Display:
    symbol: str
    scale: Fraction


def _display(convention: Optional[str], m: Optional[int] = None) -> Display:
    """T^r is printed as q^(r * scale); m is the first weight on a weighted line, None elsewhere."""
    convention = QConvention(convention or settings.q_convention)
    if convention is QConvention.INTERNAL:
        return Display("T", Fraction(1))
    if m is None:
        return Display("q", Fraction(1))
    if convention is QConvention.Q_SQUARE:
        return Display("q", Fraction(m, 2))
    return Display("q", Fraction(m))


def _geometry(args) -> Tuple[str, List[str]]:
    params = list(args.params)
    expected = {"cp1": 0, "weighted": 2, "teardrop-bulk": 1, "antidiagonal": 0}[args.geometry]
    if len(params) != expected:
        raise InputError(f"{args.geometry} takes {expected} parameter(s), got {len(params)}: {params}")
    return args.geometry, params


def _weights(params: Sequence[str]) -> toric.StackyLine:
    try:
        m, n = (int(p) for p in params)
    except ValueError as e:
        raise InputError(f"weights must be integers, got {list(params)}") from e
    return toric.StackyLine(m, n)


def _weight_m(geometry: str, params: Sequence[str]) -> Optional[int]:
    # the bulk teardrop is already normalized to q = T
    if geometry == "weighted":
        return _weights(params).m
    return None


# -- potential -------------------------------------------------------------


def cmd_potential(args) -> int:
    geometry, params = _geometry(args)
    show = _display(args.q_convention, _weight_m(geometry, params))

    if geometry == "cp1":
        family = enumerate_cp1()
        data = toric.CriticalData(family.relation, T(Fraction(1, 2)), family.critical_value, family.potential)
    elif geometry == "weighted":
        data = toric.critical_data(_weights(params))
    elif geometry == "teardrop-bulk":
        u = as_fraction(params[0])
        bulk = toric.bulk_potential(u)
        data = toric.bulk_critical(u)
        if not args.json:
            print(f"c = {bulk.c.render(show.symbol, show.scale)}")
            print(f"c in Λ+: {str(bulk.c_in_lambda_plus).lower()}")
        if args.all_roots and not args.json:
            for root in toric.bulk_critical_roots(u):
                print(f"root: z^2 = {root.square.render(show.symbol, show.scale)}, z = {root.description}")
    else:
        family = enumerate_antidiagonal()
        x, y = antidiagonal_critical_point()
        value = family.potential.evaluate({"x": x, "y": y})
        if args.json:
            print(dump(critical_to_model(
                toric.CriticalData(family.relation, x, value, family.potential), show.symbol, show.scale
            )))
            return EXIT_OK
        print(f"W = {family.potential.render(show.symbol, show.scale)}")
        print(f"critical point: x = {x.render(show.symbol, show.scale)}, y = {y.render(show.symbol, show.scale)}")
        print(f"λ = {value.render(show.symbol, show.scale)}")
        return EXIT_OK

    if args.json:
        print(dump(critical_to_model(data, show.symbol, show.scale)))
        return EXIT_OK
    print(f"W = {data.potential.render(show.symbol, show.scale)}")
    if data.relation.has_alpha:
        print(f"relation: {data.relation.describe()}")
    print(f"critical point: z = {data.critical_point.render(show.symbol, show.scale)}")
    print(f"λ = {data.critical_value.render(show.symbol, show.scale)}")
    return EXIT_OK


# -- factorize -------------------------------------------------------------


def _family(geometry: str, params: Sequence[str], args) -> StripFamily:
    if args.printed_bound and geometry != "weighted":
        raise InputError("--printed-bound applies to the weighted family only")
    if args.free_alpha and geometry not in ("weighted", "teardrop-bulk"):
        raise InputError("--free-alpha applies to weighted and teardrop-bulk only")
    if geometry == "cp1":
        return enumerate_cp1()
    if geometry == "weighted":
        relation = FREE if args.free_alpha else None
        return enumerate_weighted(_weights(params), relation, args.printed_bound)
    if geometry == "teardrop-bulk":
        return enumerate_weighted_bulk(as_fraction(params[0]), args.free_alpha)
    return enumerate_antidiagonal()


def cmd_factorize(args) -> int:
    geometry, params = _geometry(args)
    show = _display(args.q_convention, _weight_m(geometry, params))
    family = _family(geometry, params, args)

    F = fourier_assemble(family, Direction.A_TO_B)
    G = fourier_assemble(family, Direction.B_TO_A)
    M = mf_from_pair(F, G, family.potential, family.critical_value, family.label)
    report = mf_verify(M)

    if args.json:
        print(dump(FactorizationOutputModel(
            verified=report.verified, family=family_to_model(family), factorization=mf_to_model(M)
        )))
    else:
        print(f"{family.label}")
        print(f"F = {F.render(show.symbol, show.scale)}")
        print(f"G = {G.render(show.symbol, show.scale)}")
        print(f"W = {family.potential.render(show.symbol, show.scale)}")
        print(f"λ = {family.critical_value.render(show.symbol, show.scale)}")
        print(f"verified: {str(report.verified).lower()}")
        for r in report.residuals:
            print(f"residual {r.block}[{r.row}][{r.col}] = {r.polynomial.render(show.symbol, show.scale)}")
    return EXIT_OK if report.verified else EXIT_FAILED


# -- verify / tensor -------------------------------------------------------


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def cmd_verify(args) -> int:
    M = parse_mf_json(_read(args.path))
    report = mf_verify(M)
    print(dump(report_to_model(report)))
    return EXIT_OK if report.verified else EXIT_FAILED


def _cp1_pair() -> Tuple[MatrixFactorization, MatrixFactorization]:
    return family_to_mf(enumerate_cp1("z")), family_to_mf(enumerate_cp1("w"))


def cmd_tensor(args) -> int:
    if (args.left is None) != (args.right is None):
        raise InputError("tensor takes either no factorizations or both LEFT and RIGHT")
    if args.left is not None:
        left, right = parse_mf_json(_read(args.left)), parse_mf_json(_read(args.right))
        product = mf_tensor(left, right)
        print(dump(mf_to_model(product)))
        return EXIT_OK

    show = _display(args.q_convention)
    cp1_z, cp1_w = _cp1_pair()
    product = mf_tensor(cp1_z, cp1_w)
    shifted = mf_tensor(cp1_z, mf_shift(cp1_w))
    central = central_fiber_cp1xcp1()

    print(f"tensor: {product.label}, {product.dim}x{product.dim}, verified: true")
    print(f"λ = {product.lam.render(show.symbol, show.scale)}")
    for name, block in (("F", product.F), ("G", product.G)):
        for row in block:
            print(f"{name}: [" + ", ".join(p.render(show.symbol, show.scale) for p in row) + "]")
    same = shifted.F == central.F and shifted.G == central.G
    print(f"central fiber matrix equals cp1(z) ⊗ cp1(w)[1]: {str(same).lower()}")
    witness = signed_permutation_witness(product, central)
    if witness is None:
        print("no signed permutation relates cp1(z) ⊗ cp1(w) to the central fiber matrix")
        return EXIT_FAILED
    print(f"witness: {witness.describe()}")
    return EXIT_OK if same else EXIT_FAILED


# -- floer-torus / equivalence / strip-quadratic ---------------------------


def cmd_floer_torus(args) -> int:
    complex_ = floer_torus.TorusComplex.from_text(args.n, args.h0, args.h1)
    if not complex_.boundary_squares_to_zero():
        raise VerificationError("∂² != 0")
    result = floer_torus.torus_report(complex_, args.check_iso)
    if args.json:
        print(dump(torus_to_model(result)))
    else:
        print(f"ranks: {','.join(str(r) for r in result.ranks)}")
        print(f"total: {result.total}")
        if result.chain_isomorphism is not None:
            print(f"Ψ∂ = ∂̃Ψ: {str(result.chain_isomorphism).lower()}")
    return EXIT_OK if result.chain_isomorphism is not False else EXIT_FAILED


def cmd_equivalence(args) -> int:
    report = fukaya_mini.verify_equivalence(args.sign, args.sign_t, as_fraction(args.l))
    if args.json:
        print(dump(equivalence_to_model(report)))
    else:
        for name, matrix in (("Φ1∘Φ2", report.phi1_phi2), ("Φ2∘Φ1", report.phi2_phi1)):
            for i, row in enumerate(matrix):
                for j, entry in enumerate(row):
                    print(f"{name}[{i}][{j}] = {entry.render()}")
        print(f"verified: {str(report.verified).lower()}")
    return EXIT_OK if report.verified else EXIT_FAILED


def cmd_strip_quadratic(args) -> int:
    if args.scan:
        rows = strip_numeric.scan_quadratic(args.t1_steps, args.angle_steps)
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["t1", "theta", "classification", "in_disc"])
        for row in rows:
            writer.writerow([f"{row.t1:.6f}", f"{row.theta:.6f}", row.classification.value,
                             str(row.roots_in_disc).lower()])
        return EXIT_OK
    if args.t1 is None or args.t2_angle is None:
        raise InputError("--t1 and --t2-angle are required unless --scan is given")
    report = strip_numeric.strip_quadratic(args.t1, strip_numeric.t2_from_angle(args.t2_angle))
    if args.json:
        print(dump(quadratic_to_model(report)))
    else:
        print(f"coefficient: {report.coefficient.real:.12g}")
        print(f"roots: {report.roots[0]:.12g}, {report.roots[1]:.12g}")
        print(f"classification: {report.classification.value}")
        print(f"roots in disc: {str(report.roots_in_disc).lower()}")
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def _add_geometry(sub):
    sub.add_argument("geometry", choices=GEOMETRIES)
    sub.add_argument("params", nargs="*", help="M N for weighted, U for teardrop-bulk")
    sub.add_argument("--q-convention", choices=CONVENTION_CHOICES, default=None)
    sub.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mirror-mf", description=f"{settings.app_name} v{settings.app_version}")
    parser.add_argument("--log-level", default=None, help="override the configured log level")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("potential", help="potential, critical point and critical value")
    _add_geometry(sub)
    sub.add_argument("--all-roots", action="store_true", help="list every bulk critical point")
    sub.set_defaults(handler=cmd_potential)

    sub = commands.add_parser("factorize", help="assemble strips into a verified factorization")
    _add_geometry(sub)
    sub.add_argument("--printed-bound", action="store_true", help="first sum over k = 0..n")
    sub.add_argument("--free-alpha", action="store_true", help="keep alpha free of its relation")
    sub.set_defaults(handler=cmd_factorize)

    sub = commands.add_parser("verify", help="check a serialized factorization")
    sub.add_argument("path", nargs="?", default="-")
    sub.set_defaults(handler=cmd_verify)

    sub = commands.add_parser("tensor", help="graded tensor product of two factorizations")
    sub.add_argument("left", nargs="?")
    sub.add_argument("right", nargs="?")
    sub.add_argument("--q-convention", choices=CONVENTION_CHOICES, default=None)
    sub.set_defaults(handler=cmd_tensor)

    sub = commands.add_parser("floer-torus", help="homology of the twisted torus complex")
    sub.add_argument("n", type=int)
    sub.add_argument("--h0", required=True, help="comma-separated holonomies, e.g. 1,-1 or i,1/2")
    sub.add_argument("--h1", required=True)
    sub.add_argument("--check-iso", action="store_true")
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(handler=cmd_floer_torus)

    sub = commands.add_parser("equivalence", help="A + A[1] against the two tori")
    sub.add_argument("--sign", type=int, choices=[1, -1], default=1)
    sub.add_argument("--sign-t", type=int, choices=[1, -1], default=None)
    sub.add_argument("--l", default="1", help="area parameter")
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(handler=cmd_equivalence)

    sub = commands.add_parser("strip-quadratic", help="root analysis of the degree-two strip equation")
    sub.add_argument("--t1", type=float)
    sub.add_argument("--t2-angle", type=float)
    sub.add_argument("--scan", action="store_true")
    sub.add_argument("--t1-steps", type=int, default=None)
    sub.add_argument("--angle-steps", type=int, default=None)
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(handler=cmd_strip_quadratic)
    return parser


def attach_list_values(argv: Sequence[str]) -> List[str]:
    """Rewrite `--h1 -1,1` as `--h1=-1,1` so argparse does not take the value for a flag."""
    joined: List[str] = []
    args = iter(argv)
    for arg in args:
        value = next(args, None) if arg in LIST_OPTIONS else None
        joined.append(arg if value is None else f"{arg}={value}")
    return joined


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(attach_list_values(sys.argv[1:] if argv is None else argv))
    if args.log_level:
        for name in list(logging.root.manager.loggerDict):
            if name.startswith("mirror_mf"):
                logging.getLogger(name).setLevel(args.log_level.upper())
    logger.debug(f"▶️ {args.command}")

    try:
        return args.handler(args)
    except VerificationError as e:
        print(f"❌ {e}", file=sys.stderr)
        if e.report is not None:
            print(dump(report_to_model(e.report)))
        return EXIT_FAILED
    except UnspecifiedProductError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_FAILED
    except (ValidationError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

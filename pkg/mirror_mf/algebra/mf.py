"""Matrix factorizations M = [[0, F], [G, 0]] with M^2 = (W - lambda) Id."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..config import settings
from ..exceptions import FactorizationError, RingError, VerificationError
from .ring import LaurentPolynomial, NovikovScalar

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(settings.log_level)

if not logger.handlers:
    handler = logging.StreamHandler()
    formatter = logging.Formatter('%(levelname)s:%(name)s: %(message)s')
    handler.setFormatter(formatter)
    logger.addHandler(handler)

Matrix = Tuple[Tuple[LaurentPolynomial, ...], ...]


def as_matrix(rows: Sequence[Sequence[LaurentPolynomial]]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Product of square polynomial matrices of equal size."""
    size = len(a)
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            entry = a[i][0] * b[0][j]
            for k in range(1, size):
                entry = entry + a[i][k] * b[k][j]
            row.append(entry)
        out.append(tuple(row))
    return tuple(out)


def _scalar_identity(value: LaurentPolynomial, size: int) -> Matrix:
    zero = LaurentPolynomial.zero(value.variables, value.relation)
    return tuple(tuple(value if i == j else zero for j in range(size)) for i in range(size))


@dataclass(frozen=True)
class MatrixFactorization:
    """Square even-dimensional block matrix with potential W and scalar lambda."""

    F: Matrix
    G: Matrix
    W: LaurentPolynomial
    lam: NovikovScalar
    label: str = ""

    def __post_init__(self):
        k = len(self.F)
        if k == 0:
            raise FactorizationError("empty factorization")
        for name, block in (("F", self.F), ("G", self.G)):
            if len(block) != k or any(len(row) != k for row in block):
                raise FactorizationError(f"block {name} is not {k}x{k}")
            for row in block:
                for entry in row:
                    if not isinstance(entry, LaurentPolynomial):
                        raise FactorizationError(f"block {name} holds a non-polynomial entry")
                    if entry.variables != self.W.variables:
                        raise FactorizationError(
                            f"variable mismatch: {name} uses {entry.variables}, W uses {self.W.variables}"
                        )

    @property
    def rank(self) -> int:
        return len(self.F)

    @property
    def dim(self) -> int:
        return 2 * self.rank

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.W.variables

    def target(self) -> LaurentPolynomial:
        """W - lambda."""
        return self.W - self.lam

    def full_matrix(self) -> Matrix:
        """The 2k x 2k matrix [[0, F], [G, 0]]."""
        k = self.rank
        zero = LaurentPolynomial.zero(self.variables, self.W.relation)
        rows = []
        for i in range(k):
            rows.append(tuple([zero] * k) + self.F[i])
        for i in range(k):
            rows.append(self.G[i] + tuple([zero] * k))
        return tuple(rows)


@dataclass(frozen=True)
class Residual:
    """One nonzero entry of F.G - (W - lambda) Id or G.F - (W - lambda) Id."""

    block: str  # "FG" or "GF"
    row: int
    col: int
    polynomial: LaurentPolynomial


@dataclass
class VerificationReport:
    """Result of checking the square identity."""

    label: str
    verified: bool
    residuals: List[Residual] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.verified


def mf_from_pair(
    F: LaurentPolynomial,
    G: LaurentPolynomial,
    W: LaurentPolynomial,
    lam,
    label: str = "",
) -> MatrixFactorization:
    """2x2 factorization with 1x1 blocks. Not verified here."""
    if not (F.variables == G.variables == W.variables):
        raise FactorizationError(
            f"variable mismatch: F {F.variables}, G {G.variables}, W {W.variables}"
        )
    if not isinstance(lam, NovikovScalar):
        lam = NovikovScalar.constant(lam)
    return MatrixFactorization(((F,),), ((G,),), W, lam, label)


def mf_verify(M: MatrixFactorization) -> VerificationReport:
    """Exact check of F.G = G.F = (W - lambda) Id."""
    try:
        expected = _scalar_identity(M.target(), M.rank)
    except RingError as e:
        raise FactorizationError(f"cannot form W - lambda: {e}") from e

    residuals: List[Residual] = []
    for block, product in (("FG", mat_mul(M.F, M.G)), ("GF", mat_mul(M.G, M.F))):
        for i in range(M.rank):
            for j in range(M.rank):
                diff = product[i][j] - expected[i][j]
                if not diff.is_zero:
                    residuals.append(Residual(block, i, j, diff))

    report = VerificationReport(M.label, not residuals, residuals)
    if report.verified:
        logger.info(f"✅ {M.label or 'factorization'}: M^2 = (W - λ) Id verified ({M.dim}x{M.dim})")
    else:
        logger.warning(f"❌ {M.label or 'factorization'}: {len(residuals)} nonzero residual entries")
    return report


def require_verified(M: MatrixFactorization) -> MatrixFactorization:
    report = mf_verify(M)
    if not report.verified:
        raise VerificationError(f"{M.label or 'factorization'} fails M^2 = (W - λ) Id", report)
    return M


def mf_shift(M: MatrixFactorization) -> MatrixFactorization:
    """The Z/2 shift M[1]: odd and even parts exchanged."""
    return MatrixFactorization(M.G, M.F, M.W, M.lam, f"{M.label}[1]" if M.label else "")


def _kron(a: Matrix, b: Matrix, sign: int = 1) -> Matrix:
    """sign * (a (x) b); entries must share one variable list."""
    rows = []
    for ra in a:
        for rb in b:
            row = []
            for x in ra:
                for y in rb:
                    entry = x * y
                    row.append(-entry if sign < 0 else entry)
            rows.append(tuple(row))
    return tuple(rows)


def _identity(size: int, variables, relation) -> Matrix:
    one = LaurentPolynomial.constant(1, variables, relation)
    zero = LaurentPolynomial.zero(variables, relation)
    return tuple(tuple(one if i == j else zero for j in range(size)) for i in range(size))


def _block(tl: Matrix, tr: Matrix, bl: Matrix, br: Matrix) -> Matrix:
    top = [a + b for a, b in zip(tl, tr)]
    bottom = [a + b for a, b in zip(bl, br)]
    return tuple(top + bottom)


def mf_tensor(M1: MatrixFactorization, M2: MatrixFactorization) -> MatrixFactorization:
    """Z/2-graded tensor product, a factorization of W1 + W2 with lambda1 + lambda2.

    F = [[F1 (x) 1, -1 (x) F2], [1 (x) G2, G1 (x) 1]],
    G = [[G1 (x) 1,  1 (x) F2], [-1 (x) G2, F1 (x) 1]].
    The result is verified before it is returned.
    """
    shared = set(M1.variables) & set(M2.variables)
    if shared:
        raise FactorizationError(f"tensor factors share variables: {sorted(shared)}")
    variables = M1.variables + M2.variables
    if len(variables) > 2:
        raise FactorizationError(f"tensor needs {len(variables)} variables; at most 2 supported")

    relation = M1.W.relation.join(M2.W.relation)

    def lift(block: Matrix) -> Matrix:
        return tuple(tuple(p.embed(variables).with_relation(relation) for p in row) for row in block)

    F1, G1, F2, G2 = lift(M1.F), lift(M1.G), lift(M2.F), lift(M2.G)
    I1 = _identity(M1.rank, variables, relation)
    I2 = _identity(M2.rank, variables, relation)

    F = _block(_kron(F1, I2), _kron(I1, F2, -1),
               _kron(I1, G2), _kron(G1, I2))
    G = _block(_kron(G1, I2), _kron(I1, F2),
               _kron(I1, G2, -1), _kron(F1, I2))
    W = M1.W.embed(variables) + M2.W.embed(variables)
    label = f"{M1.label or 'M1'} ⊗ {M2.label or 'M2'}"
    result = MatrixFactorization(F, G, W, M1.lam + M2.lam, label)
    return require_verified(result)


@dataclass(frozen=True)
class SignedPermutation:
    """Basis map e_j -> signs[j] * e_perm[j] of the 2k-dimensional module."""

    perm: Tuple[int, ...]
    signs: Tuple[int, ...]
    preserves_grading: Optional[bool]  # None: mixes even and odd

    def describe(self) -> str:
        parts = [f"e{j}->{'-' if s < 0 else ''}e{p}" for j, (p, s) in enumerate(zip(self.perm, self.signs))]
        kind = {True: "grading-preserving", False: "grading-reversing", None: "grading-mixing"}[self.preserves_grading]
        return f"{kind}: " + ", ".join(parts)


def conjugate(matrix: Matrix, witness: SignedPermutation) -> Matrix:
    """P M P^-1 for the signed permutation P."""
    size = len(matrix)
    out = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            entry = matrix[i][j]
            if witness.signs[i] * witness.signs[j] < 0:
                entry = -entry
            out[witness.perm[i]][witness.perm[j]] = entry
    return tuple(tuple(row) for row in out)


def _grading_of(perm: Tuple[int, ...], k: int) -> Optional[bool]:
    """True if even/odd halves are preserved, False if swapped, None if mixed."""
    even = {perm[i] < k for i in range(k)}
    odd = {perm[i] < k for i in range(k, 2 * k)}
    if even == {True} and odd == {False}:
        return True
    if even == {False} and odd == {True}:
        return False
    return None


def signed_permutation_witness(
    source: MatrixFactorization, target: MatrixFactorization
) -> Optional[SignedPermutation]:
    """Exhaustive search for P with P M_source P^-1 = M_target.

    Grading-preserving candidates are tried first; returns None if no signed
    permutation relates the two matrices.
    """
    if source.dim != target.dim or source.variables != target.variables:
        return None
    size, k = source.dim, source.rank
    m_source, m_target = source.full_matrix(), target.full_matrix()
    negated = tuple(tuple(-p for p in row) for row in m_source)

    def allowed(i: int, mode: Optional[bool]) -> range:
        if mode is None:
            return range(size)
        even_target = (i < k) == mode
        return range(0, k) if even_target else range(k, size)

    def extend(i: int, perm: List[int], signs: List[int], mode: Optional[bool]) -> bool:
        # backtracking: entries among the first i+1 basis vectors must already match
        if i == size:
            return True
        for p in allowed(i, mode):
            if p in perm:
                continue
            for s in (1, -1):
                perm.append(p)
                signs.append(s)
                if all(
                    m_target[p][perm[j]] == (m_source if s * signs[j] > 0 else negated)[i][j]
                    and m_target[perm[j]][p] == (m_source if s * signs[j] > 0 else negated)[j][i]
                    for j in range(i + 1)
                ) and extend(i + 1, perm, signs, mode):
                    return True
                perm.pop()
                signs.pop()
        return False

    # preserving, then reversing, then unrestricted
    for mode in (True, False, None):
        perm: List[int] = []
        signs: List[int] = []
        if extend(0, perm, signs, mode):
            witness = SignedPermutation(tuple(perm), tuple(signs), _grading_of(tuple(perm), k))
            logger.info(f"🔎 signed permutation found: {witness.describe()}")
            return witness
    logger.info("🔎 no signed permutation relates the two factorizations")
    return None

"""KZ-type Fuchsian systems and their local expansions at a singular point.

A system is dW/dz = coupling * A(z) * W with A(z) a sum of residue
matrices over simple poles.  Points are exact rationals, or the formal
marker "symbolic" (exactly two points), in which case the expansion
coefficients live in the rational-function field in d = point2 - point1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .matrix import FMatrix
from .ratfunc import RatFunc

SYMBOLIC = "symbolic"

DERIVED_TAYLOR = "derived-taylor"
LITERAL_PAPER = "literal-paper"
CONVENTIONS = (DERIVED_TAYLOR, LITERAL_PAPER)


@dataclass(frozen=True, eq=False)
class KZSystem:
    """Singular points, residue matrices, and the coupling constant."""

    points: tuple
    residues: tuple[FMatrix, ...]
    coupling: Fraction

    @property
    def n(self) -> int:
        return self.residues[0].rows

    @property
    def is_symbolic(self) -> bool:
        return any(p == SYMBOLIC for p in self.points)


def kz_system(points, residues, coupling=Fraction(2)) -> KZSystem:
    """Validating constructor for a general system."""
    pts = tuple(p if p == SYMBOLIC else Fraction(p) for p in points)
    res = tuple(residues)
    if not pts:
        raise ValueError("a system needs at least one singular point")
    if len(pts) != len(res):
        raise ValueError("one residue matrix is required per singular point")
    n = res[0].rows
    for r in res:
        if r.rows != r.cols or r.rows != n:
            raise ValueError("residues must be square matrices of one common dimension")
    symbolic = [p == SYMBOLIC for p in pts]
    if any(symbolic):
        if len(pts) != 2 or not all(symbolic):
            raise ValueError("symbolic mode requires exactly two points, both symbolic")
    else:
        numeric = [p for p in pts]
        if len(set(numeric)) != len(numeric):
            raise ValueError("singular points must be pairwise distinct")
    return KZSystem(points=pts, residues=res, coupling=Fraction(coupling))


def transposition_matrix(n: int, i: int, j: int) -> FMatrix:
    """Permutation matrix swapping coordinates i and j (1-based), fixing the rest."""
    if not (1 <= i < j <= n):
        raise ValueError(f"transposition indices must satisfy 1 <= i < j <= n, got ({n},{i},{j})")
    rows = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    a, b = i - 1, j - 1
    rows[a], rows[b] = rows[b], rows[a]
    return FMatrix(rows)


def build_kz_s3(z1, z2, coupling=Fraction(2)) -> KZSystem:
    """The 3x3 preset: residues swap coordinates (1,2) and (1,3)."""
    return kz_system(
        points=(z1, z2),
        residues=(transposition_matrix(3, 1, 2), transposition_matrix(3, 1, 3)),
        coupling=coupling,
    )


def system_matrix_at(sys: KZSystem, z) -> FMatrix:
    """A(z) = sum residues[i] / (z - points[i]), evaluated exactly."""
    if sys.is_symbolic:
        raise ValueError("system_matrix_at needs a numeric-mode system")
    zv = Fraction(z)
    if zv in sys.points:
        raise ValueError(f"evaluation at the singular point z = {zv}")
    n = sys.n
    total = FMatrix.zeros(n, n)
    for p, res in zip(sys.points, sys.residues):
        total = total + res * (Fraction(1) / (zv - p))
    return total


@dataclass(frozen=True, eq=False)
class LocalExpansion:
    """A(z) = a_minus1/(z - z_c) + a_0 + a_1 (z - z_c) + ... at the center.

    In symbolic mode the coefficients are matrices of rational functions
    in d; a_r is then homogeneous of d-degree -(r + 1).
    """

    center_index: int
    center_point: object
    a_minus1: FMatrix
    regular_coeffs: tuple[FMatrix, ...]
    convention: str
    symbolic: bool

    @property
    def n(self) -> int:
        return self.a_minus1.rows

    def regular(self, r: int) -> FMatrix:
        return self.regular_coeffs[r]

    @property
    def order(self) -> int:
        return len(self.regular_coeffs) - 1


def local_expansion(
    sys: KZSystem,
    center: int,
    convention: str = DERIVED_TAYLOR,
    order: int = 0,
) -> LocalExpansion:
    """Expansion coefficients a_{-1}, a_0 .. a_order at the chosen point.

    derived-taylor gives the true geometric-series expansion
    a_r = -sum_{i != c} residues[i] / (points[i] - points[c])^(r+1).
    literal-paper (two-point symbolic mode only) instead applies an
    alternating sign, a_r = (-1)^r * other / delta^(r+1); the two
    conventions are exchanged by the substitution d -> -d.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if not (1 <= center <= len(sys.points)):
        raise ValueError(f"center index {center} out of range")
    if order < 0:
        raise ValueError("expansion order must be >= 0")
    c = center - 1

    if sys.is_symbolic:
        other = 1 - c
        residue_other = sys.residues[other]
        # delta = points[other] - points[center]; with d = point2 - point1
        # this is d when expanding at the first point and -d at the second.
        delta_sign = 1 if c == 0 else -1
        a_minus1 = sys.residues[c] * RatFunc.one()
        coeffs = []
        for r in range(order + 1):
            inv_delta_pow = RatFunc.monomial(-(r + 1), Fraction(delta_sign) ** (r + 1))
            if convention == DERIVED_TAYLOR:
                coeffs.append(residue_other * (-inv_delta_pow))
            else:
                coeffs.append(residue_other * (Fraction(-1) ** r * inv_delta_pow))
        return LocalExpansion(
            center_index=center,
            center_point=SYMBOLIC,
            a_minus1=a_minus1,
            regular_coeffs=tuple(coeffs),
            convention=convention,
            symbolic=True,
        )

    if convention == LITERAL_PAPER:
        raise ValueError("the literal-paper convention is defined only in two-point symbolic mode")
    zc = sys.points[c]
    n = sys.n
    coeffs = []
    for r in range(order + 1):
        acc = FMatrix.zeros(n, n)
        for i, (p, res) in enumerate(zip(sys.points, sys.residues)):
            if i == c:
                continue
            acc = acc + res * (Fraction(-1) / (p - zc) ** (r + 1))
        coeffs.append(acc)
    return LocalExpansion(
        center_index=center,
        center_point=zc,
        a_minus1=sys.residues[c],
        regular_coeffs=tuple(coeffs),
        convention=convention,
        symbolic=False,
    )

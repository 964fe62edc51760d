"""Rational matrix functions from truncated Laurent series, with exact
ODE verification.

Reconstruction is linear matching on the coefficient lattice: all entries
share one prescribed scalar denominator, so the numerator polynomials drop
out of an exact product and are then over-checked against every available
series coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .frobenius import SeriesSolution
from .kzmodel import KZSystem
from .matrix import FMatrix, charpoly, det
from .poly import Poly, poly_gcd, rational_roots
from .ratfunc import RatFunc


class NotRepresentable(Exception):
    """The series does not match any numerator/denominator of the requested shape."""

    def __init__(self, first_unmatched_level: int):
        super().__init__(
            f"series departs from the rational ansatz first at level {first_unmatched_level}"
        )
        self.first_unmatched_level = first_unmatched_level


class InsufficientSeriesError(ValueError):
    """Too few series coefficients to determine and over-check the numerator."""

    def __init__(self, have: int, need: int):
        super().__init__(
            f"reconstruction needs at least {need} series coefficients, got {have}; "
            f"recompute the series with order >= {need - 1}"
        )
        self.have = have
        self.need = need


class NoPolynomialDenominator(ValueError):
    """Some singular point has no integer local exponent."""


class PoleError(ZeroDivisionError):
    """Evaluation of a rational matrix function at a pole."""


def _series_of_ratio(num: Poly, den: Poly, lo: int, count: int) -> list[Fraction]:
    """Laurent coefficients of num/den at u = 0 for levels lo .. lo+count-1."""
    if den.is_zero():
        raise ZeroDivisionError("series expansion with zero denominator")
    if num.is_zero():
        return [Fraction(0)] * count
    v = den.valuation()
    g = Poly(den.coeffs[v:])
    g0 = g.coeff(0)
    t_max = lo + count - 1 + v
    h: list[Fraction] = []
    for t in range(t_max + 1):
        c = num.coeff(t)
        for s in range(max(0, t - g.degree), t):
            c -= h[s] * g.coeff(t - s)
        h.append(c / g0)
    out = []
    for p in range(lo, lo + count):
        idx = p + v
        out.append(h[idx] if 0 <= idx <= t_max else Fraction(0))
    return out


@dataclass(frozen=True, eq=False)
class RationalMatrixFunction:
    """Matrix of polynomials in z over one monic scalar denominator.

    Use :func:`rational_matrix` to construct a normalized value: no common
    polynomial factor survives between the denominator and all numerator
    entries together.
    """

    numerator: FMatrix
    denominator: Poly

    @property
    def n(self) -> int:
        return self.numerator.rows

    def evaluate(self, z) -> FMatrix:
        zv = Fraction(z)
        d = self.denominator(zv)
        if d == 0:
            raise PoleError(f"z = {zv} is a pole of the denominator")
        return FMatrix(
            [[p(zv) / d for p in row] for row in self.numerator.entries]
        )

    def laurent_coefficients(self, center, lo: int, count: int) -> list[FMatrix]:
        """Expansion coefficients at the center for levels lo .. lo+count-1."""
        c = Fraction(center)
        den_u = self.denominator.shifted(c)
        grids = [
            [_series_of_ratio(p.shifted(c), den_u, lo, count) for p in row]
            for row in self.numerator.entries
        ]
        return [
            FMatrix([[grids[i][j][k] for j in range(self.numerator.cols)]
                     for i in range(self.numerator.rows)])
            for k in range(count)
        ]

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.numerator.entries for p in row)


def rational_matrix(numerator: FMatrix, denominator: Poly) -> RationalMatrixFunction:
    """Normalize: strip the common factor of all entries and the denominator,
    then make the denominator monic."""
    if denominator.is_zero():
        raise ZeroDivisionError("rational matrix function with zero denominator")
    g = denominator
    for row in numerator.entries:
        for p in row:
            g = poly_gcd(g, p)
            if g.degree == 0:
                break
        if g.degree == 0:
            break
    num = numerator
    den = denominator
    if g.degree >= 1:
        num = num.map(lambda p: p // g)
        den = den // g
    lead = den.leading
    if lead != 1:
        num = num.map(lambda p: p / lead)
        den = den / lead
    return RationalMatrixFunction(numerator=num, denominator=den)


def propose_denominator(sys: KZSystem, coupling=None) -> Poly:
    """prod (z - z_i)^{m_i} with m_i = max(0, -rho_i) and rho_i the minimal
    integer eigenvalue of coupling * residue_i."""
    if sys.is_symbolic:
        raise ValueError("propose_denominator needs a numeric-mode system")
    kappa = Fraction(coupling) if coupling is not None else sys.coupling
    den = Poly.one()
    for point, residue in zip(sys.points, sys.residues):
        roots, _ = rational_roots(charpoly(residue * kappa))
        integer_eigs = [r for r, _ in roots if r.denominator == 1]
        if not integer_eigs:
            raise NoPolynomialDenominator(
                f"coupling * residue at z = {point} has no integer eigenvalue; "
                "no polynomial denominator exists for the Laurent ansatz"
            )
        m = max(0, -int(min(integer_eigs)))
        if m:
            den = den * Poly((-point, Fraction(1))) ** m
    return den


def suggest_numerator_degree(sys: KZSystem, denominator: Poly, coupling=None) -> int:
    """Degree bound implied by the growth allowance at infinity.

    A solution column behaves like z**m at infinity with m an eigenvalue of
    coupling * (sum of residues), so the numerator may exceed the
    denominator degree by the largest nonnegative integer eigenvalue.
    """
    kappa = Fraction(coupling) if coupling is not None else sys.coupling
    total = sys.residues[0]
    for r in sys.residues[1:]:
        total = total + r
    roots, _ = rational_roots(charpoly(total * kappa))
    growth = max(
        (int(r) for r, _ in roots if r.denominator == 1 and r > 0), default=0
    )
    return denominator.degree + growth


def reconstruct(
    series: SeriesSolution, denominator: Poly, max_num_degree: int
) -> RationalMatrixFunction:
    """Solve for numerator polynomials matching every series coefficient.

    Raises InsufficientSeriesError when the series is too short to
    over-determine the answer, and NotRepresentable (with the first
    unmatched level) when no numerator of the requested degree matches.
    """
    if series.symbolic:
        raise ValueError("reconstruction needs a numeric-mode series")
    if max_num_degree < 0:
        raise ValueError("max_num_degree must be >= 0")
    if denominator.is_zero():
        raise ZeroDivisionError("zero denominator")
    have = series.order + 1
    need = max_num_degree + denominator.degree + 2
    if have < need:
        raise InsufficientSeriesError(have, need)

    center = Fraction(series.center_point)
    rho = series.leading_exponent
    den_u = denominator.shifted(center)
    n_rows = series.coeffs[0].rows
    n_cols = series.coeffs[0].cols

    num_entries_u: list[list[Poly]] = []
    first_bad: int | None = None
    for i in range(n_rows):
        row = []
        for j in range(n_cols):
            w_poly = Poly([series.coeffs[k][i, j] for k in range(have)])
            q = den_u * w_poly
            candidate = Poly([q.coeff(t - rho) for t in range(max_num_degree + 1)])
            back = _series_of_ratio(candidate, den_u, rho, have)
            for k, (got, want) in enumerate(zip(back, w_poly.coeffs + (Fraction(0),) * have)):
                if got != want:
                    level = rho + k
                    if first_bad is None or level < first_bad:
                        first_bad = level
                    break
            row.append(candidate)
        num_entries_u.append(row)
    if first_bad is not None:
        raise NotRepresentable(first_bad)

    num_z = FMatrix(
        [[p.shifted(-center) for p in row] for row in num_entries_u]
    )
    return rational_matrix(num_z, denominator)


@dataclass(frozen=True, eq=False)
class OdeVerdict:
    """Outcome of the exact check of dW/dz = coupling * A(z) * W(z)."""

    satisfied: bool
    residual: RationalMatrixFunction
    det_identically_zero: bool


def verify_ode(w: RationalMatrixFunction, sys: KZSystem) -> OdeVerdict:
    """Form dW/dz - coupling * A(z) * W(z) over a common denominator and test
    the numerator for identical vanishing; also flag det(W) identically zero."""
    if sys.is_symbolic:
        raise ValueError("verify_ode needs a numeric-mode system")
    kappa = sys.coupling
    pi = Poly.one()
    for p in sys.points:
        pi = pi * Poly((-p, Fraction(1)))
    n = w.n
    s = FMatrix([[Poly() for _ in range(n)] for _ in range(n)])
    for point, residue in zip(sys.points, sys.residues):
        cofactor = pi // Poly((-point, Fraction(1)))
        s = s + residue.map(lambda e, c=cofactor: c * e)

    num = w.numerator
    den = w.denominator
    dnum = num.map(lambda p: p.derivative())
    dden = den.derivative()
    residual_num = (dnum * den - num * dden) * pi - (s * num) * (den * kappa)
    residual = rational_matrix(residual_num, den * den * pi)
    satisfied = residual.is_zero()

    det_num = det(num.map(RatFunc))
    return OdeVerdict(
        satisfied=satisfied,
        residual=residual,
        det_identically_zero=not det_num,
    )


def evaluate(w: RationalMatrixFunction, z) -> FMatrix:
    """Exact evaluation; raises PoleError at a denominator root."""
    return w.evaluate(z)

"""Order-by-order solution of the matrix Frobenius recursion.

Each order solves [(q+1) I - coupling * a_{-1}] b_{q+1} =
coupling * sum_{j + l = q, j >= 0, l >= leading} a_j b_l.  Steps whose
matrix is singular are resonant: a consistent one contributes its kernel
as a solvability record, an inconsistent one aborts with an exact
certificate (the series would need logarithms, which is out of scope).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .kzmodel import LocalExpansion
from .matrix import FMatrix, SolveKind, charpoly, det, solve_linear
from .poly import Poly, rational_roots
from .ratfunc import RatFunc

POLICY_PROJECTOR = "paper-projector"
POLICY_KERNEL = "kernel-columns"
POLICY_AUTO = "auto"
LEADING_POLICIES = (POLICY_PROJECTOR, POLICY_KERNEL, POLICY_AUTO)


class ResonanceObstruction(Exception):
    """A resonant step is inconsistent: certificate * step_matrix == 0 while
    certificate * rhs != 0, both exactly."""

    def __init__(self, level: int, certificate: tuple, rhs: FMatrix):
        super().__init__(f"inconsistent resonant step at level {level}")
        self.level = level
        self.certificate = certificate
        self.rhs = rhs


@dataclass(frozen=True, eq=False)
class IndicialData:
    """Exact spectrum of coupling * a_{-1} and its integer part.

    ``eigenvalues`` lists the rational eigenvalues with multiplicities;
    ``unresolved_factor`` is the monic factor of the characteristic
    polynomial with no rational roots (1 when the spectrum is fully
    rational), so no resonant integer can hide in it.
    """

    eigenvalues: tuple[tuple[Fraction, int], ...]
    resonant_levels: frozenset[int]
    unresolved_factor: Poly


@dataclass(frozen=True, eq=False)
class ResonanceRecord:
    level: int
    kind: SolveKind
    kernel: tuple[tuple, ...]
    certificate: tuple | None = None


@dataclass(frozen=True, eq=False)
class SeriesSolution:
    """Laurent coefficients b_leading .. b_{leading+N} with resonance records."""

    leading_exponent: int
    coeffs: tuple[FMatrix, ...]
    resonances: tuple[ResonanceRecord, ...]
    convention: str
    center_point: object
    symbolic: bool

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def levels(self) -> range:
        return range(self.leading_exponent, self.leading_exponent + len(self.coeffs))

    def coefficient(self, p: int) -> FMatrix:
        if p not in self.levels():
            raise IndexError(f"level {p} was not computed")
        return self.coeffs[p - self.leading_exponent]

    def resonance_at(self, level: int) -> ResonanceRecord | None:
        for rec in self.resonances:
            if rec.level == level:
                return rec
        return None


def _constant_matrix(m: FMatrix) -> FMatrix:
    """Strip a matrix of constant rational functions down to Fractions."""
    def to_scalar(e):
        if isinstance(e, Fraction):
            return e
        if isinstance(e, RatFunc):
            c = e.constant_value()
            if c is not None:
                return c
        raise ValueError("expected a matrix of constant entries")

    return m.map(to_scalar)


def indicial_data(exp: LocalExpansion, coupling: Fraction) -> IndicialData:
    """Exact eigenvalues of coupling * a_{-1} via rational root extraction."""
    m = _constant_matrix(exp.a_minus1) * Fraction(coupling)
    roots, remainder = rational_roots(charpoly(m))
    resonant = frozenset(int(r) for r, _ in roots if r.denominator == 1)
    return IndicialData(
        eigenvalues=roots,
        resonant_levels=resonant,
        unresolved_factor=remainder,
    )


def _step_matrix(exp: LocalExpansion, coupling: Fraction, level: int) -> FMatrix:
    ident = FMatrix.identity(exp.n)
    return ident * Fraction(level) - exp.a_minus1 * Fraction(coupling)


def _lift(exp: LocalExpansion, m: FMatrix) -> FMatrix:
    if exp.symbolic:
        return m * RatFunc.one()
    return m


def leading_coefficient(
    exp: LocalExpansion,
    coupling: Fraction,
    exponent: int,
    policy: str = POLICY_AUTO,
) -> FMatrix:
    """A nonzero seed b with (exponent * I - coupling * a_{-1}) b = 0.

    paper-projector seeds with I - a_{-1}, valid when a_{-1} is an
    involution and the exponent equals -coupling.  kernel-columns packs the
    canonical kernel basis of the step matrix into leading columns, padded
    with zero columns.
    """
    if policy not in LEADING_POLICIES:
        raise ValueError(f"unknown leading-coefficient policy {policy!r}")
    n = exp.n
    ident = FMatrix.identity(n)
    a0 = _constant_matrix(exp.a_minus1)

    projector_ok = (
        a0 * a0 == ident
        and Fraction(exponent) == -Fraction(coupling)
        and a0 != ident
    )
    if policy == POLICY_PROJECTOR and not projector_ok:
        raise ValueError(
            "paper-projector policy needs an involutive a_{-1} (not the identity) "
            "and exponent == -coupling"
        )
    if policy == POLICY_AUTO:
        policy = POLICY_PROJECTOR if projector_ok else POLICY_KERNEL

    if policy == POLICY_PROJECTOR:
        return _lift(exp, ident - a0)

    step = ident * Fraction(exponent) - a0 * Fraction(coupling)
    res = solve_linear(step, FMatrix.zeros(n, n))
    if res.kind is SolveKind.UNIQUE:
        raise ValueError(
            f"{exponent} is not an eigenvalue of coupling * a_{{-1}}; the kernel is trivial"
        )
    columns = list(res.kernel_basis) + [(Fraction(0),) * n] * (n - len(res.kernel_basis))
    return _lift(exp, FMatrix.from_columns(columns, n))


def convolution_rhs(exp: LocalExpansion, coeffs: dict[int, FMatrix], level: int) -> FMatrix:
    """sum_{j + l = level - 1, j >= 0, l in coeffs} a_j b_l (without coupling)."""
    q = level - 1
    n = exp.n
    acc = FMatrix.zeros(n, n)
    touched = False
    for j in range(0, q - min(coeffs) + 1):
        l = q - j
        if l not in coeffs:
            continue
        if j > exp.order:
            raise ValueError(
                f"the local expansion holds a_0..a_{exp.order} but a_{j} is needed"
            )
        acc = acc + exp.regular(j) * coeffs[l]
        touched = True
    if not touched:
        return _lift(exp, acc) if exp.symbolic else acc
    return acc


def compute_series(
    exp: LocalExpansion,
    coupling: Fraction,
    order: int,
    leading_exponent: int | None = None,
    policy: str = POLICY_AUTO,
) -> SeriesSolution:
    """Solve the recursion for b_leading .. b_{leading+order}.

    Nonresonant steps have a unique solution.  A consistent resonant step
    takes the particular solution with all free kernel components set to
    zero and records the kernel; an inconsistent one raises
    ResonanceObstruction with its certificate.
    """
    if order < 0:
        raise ValueError("series order must be >= 0")
    coupling = Fraction(coupling)
    if leading_exponent is None:
        ind = indicial_data(exp, coupling)
        if not ind.resonant_levels:
            raise ValueError(
                "coupling * a_{-1} has no integer eigenvalue, so there is no "
                "integer leading exponent to seed the Laurent series"
            )
        leading_exponent = min(ind.resonant_levels)
    if order > 0 and exp.order < order - 1:
        raise ValueError(
            f"series order {order} needs expansion coefficients a_0..a_{order - 1}, "
            f"but the local expansion stops at a_{exp.order}"
        )

    coeffs: dict[int, FMatrix] = {
        leading_exponent: leading_coefficient(exp, coupling, leading_exponent, policy)
    }
    records: list[ResonanceRecord] = []
    for step in range(1, order + 1):
        level = leading_exponent + step
        rhs = convolution_rhs(exp, coeffs, level) * coupling
        res = solve_linear(_lift(exp, _step_matrix(exp, coupling, level)), rhs)
        if res.kind is SolveKind.INCONSISTENT:
            raise ResonanceObstruction(level, res.certificate, rhs)
        if res.kind is SolveKind.AFFINE:
            records.append(
                ResonanceRecord(level=level, kind=res.kind, kernel=res.kernel_basis)
            )
        coeffs[level] = _lift(exp, res.particular)

    ordered = tuple(coeffs[p] for p in range(leading_exponent, leading_exponent + order + 1))
    return SeriesSolution(
        leading_exponent=leading_exponent,
        coeffs=ordered,
        resonances=tuple(records),
        convention=exp.convention,
        center_point=exp.center_point,
        symbolic=exp.symbolic,
    )


@dataclass(frozen=True, eq=False)
class LevelCheck:
    level: int
    resonant: bool
    residual_zero: bool
    rhs: FMatrix


@dataclass(frozen=True, eq=False)
class RecursionReport:
    checks: tuple[LevelCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.residual_zero for c in self.checks)

    def at(self, level: int) -> LevelCheck:
        for c in self.checks:
            if c.level == level:
                return c
        raise KeyError(level)


def verify_recursion(
    series: SeriesSolution, exp: LocalExpansion, coupling: Fraction
) -> RecursionReport:
    """Re-evaluate every order's identity from scratch.

    Nothing is reused from the solver: each level recomputes its right side
    by direct convolution and its residual by direct multiplication.  The
    stored right side is the recursion's own, coupling * convolution.
    """
    coupling = Fraction(coupling)
    table = {p: series.coefficient(p) for p in series.levels()}
    checks = []
    for level in series.levels():
        step = _lift(exp, _step_matrix(exp, coupling, level))
        if level == series.leading_exponent:
            rhs = _lift(exp, FMatrix.zeros(exp.n, exp.n))
        else:
            known = {p: table[p] for p in table if p < level}
            rhs = convolution_rhs(exp, known, level) * coupling
        residual = step * table[level] - rhs
        checks.append(
            LevelCheck(
                level=level,
                resonant=not det(step),
                residual_zero=residual.is_zero(),
                rhs=rhs,
            )
        )
    return RecursionReport(checks=tuple(checks))

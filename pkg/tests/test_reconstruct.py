from fractions import Fraction

import pytest

from kzrat import (
    DERIVED_TAYLOR,
    FMatrix,
    InsufficientSeriesError,
    NoPolynomialDenominator,
    NotRepresentable,
    PoleError,
    Poly,
    build_kz_s3,
    compute_series,
    evaluate,
    kz_system,
    local_expansion,
    poly_gcd,
    propose_denominator,
    rational_matrix,
    reconstruct,
    verify_ode,
)
from support import I3, P1, P2, matrix_expansion_matches

TWO = Fraction(2)


def paper_numeric_series(order):
    sys_ = build_kz_s3(0, 1, TWO)
    exp = local_expansion(sys_, 1, DERIVED_TAYLOR, order=order)
    return sys_, compute_series(exp, TWO, order=order)


def single_pole_pipeline():
    sys_ = kz_system([0], [P1], TWO)
    exp = local_expansion(sys_, 1, DERIVED_TAYLOR, order=6)
    return sys_, compute_series(exp, TWO, order=5)


Z = Poly.monomial(1)


def test_propose_denominator_examples():
    assert propose_denominator(build_kz_s3(0, 1, TWO)) == (Z**2) * (Z - 1) ** 2
    assert propose_denominator(kz_system([0], [P1], TWO)) == Z**2
    assert propose_denominator(build_kz_s3(0, 1, Fraction(1))) == Z * (Z - 1)
    with pytest.raises(NoPolynomialDenominator):
        propose_denominator(build_kz_s3(0, 1, Fraction(2, 3)))


def test_reconstruct_single_pole_terminating():
    sys_, series = single_pole_pipeline()
    w = reconstruct(series, Z**2, max_num_degree=0)
    assert w.numerator == (I3 - P1).map(lambda e: Poly((e,)))
    assert w.denominator == Z**2


def test_reconstruct_paper_preset_needs_degree_eight():
    # The level-2 particular with zero kernel components has a z^4-growth
    # component at infinity (top eigenvalue of coupling*(P1+P2) is 4), so
    # numerator degrees 6 and 7 fail while degree 8 succeeds.
    sys_, series = paper_numeric_series(20)
    den = propose_denominator(sys_)
    with pytest.raises(NotRepresentable) as ei:
        reconstruct(series, den, max_num_degree=6)
    assert ei.value.first_unmatched_level == 5
    w = reconstruct(series, den, max_num_degree=8)
    assert max(p.degree for row in w.numerator.entries for p in row) == 8
    assert verify_ode(w, sys_).satisfied


def test_reconstruct_insufficient_series():
    sys_, series = paper_numeric_series(2)
    with pytest.raises(InsufficientSeriesError):
        reconstruct(series, propose_denominator(sys_), max_num_degree=6)


def test_reconstruct_rejects_symbolic_series():
    from kzrat import LITERAL_PAPER, SYMBOLIC

    sym = build_kz_s3(SYMBOLIC, SYMBOLIC, TWO)
    series = compute_series(local_expansion(sym, 1, LITERAL_PAPER, 8), TWO, order=5)
    with pytest.raises(ValueError):
        reconstruct(series, Z**2, max_num_degree=0)


def test_roundtrip_reexpansion_matches_every_coefficient():
    sys_, series = paper_numeric_series(14)
    w = reconstruct(series, propose_denominator(sys_), max_num_degree=8)
    coeffs = [series.coefficient(p) for p in series.levels()]
    assert matrix_expansion_matches(w, Fraction(0), -2, coeffs)
    back = w.laurent_coefficients(Fraction(0), -2, len(coeffs))
    assert all(a == b for a, b in zip(back, coeffs))


def test_denominator_root_containment():
    sys_, series = paper_numeric_series(14)
    proposal = propose_denominator(sys_)
    w = reconstruct(series, proposal, max_num_degree=8)
    # the reconstructed denominator divides the proposal exactly
    assert (proposal % w.denominator).is_zero()
    # and shares no factor outside the singular-point set
    assert poly_gcd(w.denominator, proposal) == w.denominator


def test_verify_ode_single_pole():
    sys_, series = single_pole_pipeline()
    w = reconstruct(series, Z**2, max_num_degree=0)
    verdict = verify_ode(w, sys_)
    assert verdict.satisfied
    assert verdict.residual.is_zero()
    assert verdict.det_identically_zero


def test_verify_ode_identity_with_zero_coupling():
    sys0 = build_kz_s3(0, 1, Fraction(0))
    w = rational_matrix(I3.map(lambda e: Poly((e,))), Poly.one())
    verdict = verify_ode(w, sys0)
    assert verdict.satisfied
    assert not verdict.det_identically_zero


def test_verify_ode_detects_mutation():
    sys_, series = single_pole_pipeline()
    w = reconstruct(series, Z**2, max_num_degree=0)
    rows = [list(r) for r in w.numerator.entries]
    rows[0][0] = -rows[0][0]  # flip one entry's sign
    mutated = rational_matrix(FMatrix(rows), w.denominator)
    verdict = verify_ode(mutated, sys_)
    assert not verdict.satisfied
    assert not verdict.residual.is_zero()


def test_evaluate_examples():
    sys_, series = single_pole_pipeline()
    w = reconstruct(series, Z**2, max_num_degree=0)
    assert evaluate(w, 1) == I3 - P1
    assert evaluate(w, 2) == (I3 - P1) * Fraction(1, 4)
    with pytest.raises(PoleError):
        evaluate(w, 0)


def test_rational_matrix_normalization():
    num = I3.map(lambda e: Poly((0, e)))  # z * I
    w = rational_matrix(num, Z**2)
    assert w.denominator == Z
    assert w.numerator == I3.map(lambda e: Poly((e,)))
    zero = rational_matrix(FMatrix([[Poly()]]), Z**3)
    assert zero.denominator == Poly.one()


def test_reconstruct_from_second_center():
    sys_ = build_kz_s3(0, 1, TWO)
    exp = local_expansion(sys_, 2, DERIVED_TAYLOR, order=20)
    series = compute_series(exp, TWO, order=20)
    w = reconstruct(series, propose_denominator(sys_), max_num_degree=8)
    assert verify_ode(w, sys_).satisfied


def test_verify_ode_rejects_symbolic_system():
    from kzrat import SYMBOLIC

    sys_, series = single_pole_pipeline()
    w = reconstruct(series, Z**2, max_num_degree=0)
    with pytest.raises(ValueError):
        verify_ode(w, build_kz_s3(SYMBOLIC, SYMBOLIC, TWO))

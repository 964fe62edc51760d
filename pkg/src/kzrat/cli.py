"""Command-line front end: exact expansion, series, and verification runs.

Configs are single JSON documents whose numbers are exact strings ("p/q");
reports echo every value exactly, so serialize -> parse -> serialize is
byte-identical.  Exit codes: 0 success/verified, 1 golden mismatch or
unverified rationality, 2 usage or config error, 3 resonance obstruction.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .frobenius import (
    POLICY_AUTO,
    ResonanceObstruction,
    SeriesSolution,
    compute_series,
    indicial_data,
    verify_recursion,
)
from .golden import GoldenOutcome, compare_series, compare_series_dual
from .kzmodel import (
    CONVENTIONS,
    DERIVED_TAYLOR,
    SYMBOLIC,
    KZSystem,
    LocalExpansion,
    build_kz_s3,
    kz_system,
    local_expansion,
)
from .matrix import FMatrix
from .poly import Poly
from .ratfunc import RatFunc
from .reconstruct import (
    InsufficientSeriesError,
    NoPolynomialDenominator,
    NotRepresentable,
    propose_denominator,
    reconstruct,
    suggest_numerator_degree,
    verify_ode,
)
from .scalars import format_scalar, parse_scalar

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_OBSTRUCTION = 3

PRESET_KZ_S3 = "kz-s3"


class ConfigError(ValueError):
    """A malformed or inconsistent run configuration."""


_KNOWN_KEYS = {
    "mode",
    "points",
    "residues",
    "coupling",
    "convention",
    "order",
    "center",
    "numerator_degree",
    "denominator_exponents",
}


@dataclass(frozen=True)
class SystemConfig:
    mode: str
    points: tuple[str, ...]
    preset: str | None
    residues: tuple[FMatrix, ...] | None
    coupling: Fraction
    convention: str
    order: int
    center: int
    numerator_degree: int | None
    denominator_exponents: tuple[int, ...] | None

    def build_system(self) -> KZSystem:
        if self.preset == PRESET_KZ_S3:
            if len(self.points) != 2:
                raise ConfigError("points: the kz-s3 preset needs exactly two points")
            pts = [_point_value(p) for p in self.points]
            try:
                return build_kz_s3(pts[0], pts[1], self.coupling)
            except ValueError as exc:
                raise ConfigError(f"points: {exc}") from exc
        try:
            return kz_system(
                [_point_value(p) for p in self.points], self.residues, self.coupling
            )
        except ValueError as exc:
            raise ConfigError(f"residues/points: {exc}") from exc

    def echo(self) -> dict:
        out = {
            "mode": self.mode,
            "points": list(self.points),
            "coupling": format_scalar(self.coupling),
            "convention": self.convention,
            "order": self.order,
            "center": self.center,
        }
        if self.preset is not None:
            out["residues"] = self.preset
        else:
            out["residues"] = [
                [[format_scalar(e) for e in row] for row in m.entries]
                for m in self.residues
            ]
        if self.numerator_degree is not None:
            out["numerator_degree"] = self.numerator_degree
        if self.denominator_exponents is not None:
            out["denominator_exponents"] = list(self.denominator_exponents)
        return out


def _point_value(text: str):
    if text == SYMBOLIC:
        return SYMBOLIC
    return parse_scalar(text)


def parse_config(text: str) -> SystemConfig:
    """Validate a JSON config; diagnostics name the offending field."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("the config must be a JSON object")
    unknown = set(doc) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    mode = doc.get("mode")
    if mode not in ("symbolic", "numeric"):
        raise ConfigError("mode: must be 'symbolic' or 'numeric'")

    points = doc.get("points")
    if not isinstance(points, list) or not points or not all(
        isinstance(p, str) for p in points
    ):
        raise ConfigError("points: must be a non-empty list of strings")
    for p in points:
        if p == SYMBOLIC:
            continue
        try:
            parse_scalar(p)
        except ValueError as exc:
            raise ConfigError(f"points: {exc}") from exc
    symbolic_flags = [p == SYMBOLIC for p in points]
    if mode == "symbolic":
        if not all(symbolic_flags) or len(points) != 2:
            raise ConfigError(
                "points: symbolic mode needs exactly two points, both 'symbolic'"
            )
    elif any(symbolic_flags):
        raise ConfigError("points: numeric mode does not allow 'symbolic' points")
    if mode == "numeric":
        values = [parse_scalar(p) for p in points]
        if len(set(values)) != len(values):
            raise ConfigError("points: coincident points")

    residues = doc.get("residues", PRESET_KZ_S3)
    preset = None
    matrices = None
    if isinstance(residues, str):
        if residues != PRESET_KZ_S3:
            raise ConfigError(f"residues: unknown preset {residues!r}")
        preset = residues
    elif isinstance(residues, list):
        matrices = tuple(_parse_matrix(m, f"residues[{k}]") for k, m in enumerate(residues))
        if len(matrices) != len(points):
            raise ConfigError("residues: need one matrix per point")
    else:
        raise ConfigError("residues: must be a preset name or a list of matrices")

    coupling_text = doc.get("coupling", "2")
    if not isinstance(coupling_text, str):
        raise ConfigError("coupling: must be an exact rational string")
    try:
        coupling = parse_scalar(coupling_text)
    except ValueError as exc:
        raise ConfigError(f"coupling: {exc}") from exc

    convention = doc.get("convention", DERIVED_TAYLOR)
    if convention not in CONVENTIONS:
        raise ConfigError(f"convention: must be one of {CONVENTIONS}")

    order = doc.get("order", 3)
    if not isinstance(order, int) or order < 0:
        raise ConfigError("order: must be a nonnegative integer")

    center = doc.get("center", 1)
    if not isinstance(center, int) or not (1 <= center <= len(points)):
        raise ConfigError("center: must be a 1-based index into points")

    num_degree = doc.get("numerator_degree")
    if num_degree is not None and (not isinstance(num_degree, int) or num_degree < 0):
        raise ConfigError("numerator_degree: must be a nonnegative integer")

    den_exps = doc.get("denominator_exponents")
    if den_exps is not None:
        if (
            not isinstance(den_exps, list)
            or len(den_exps) != len(points)
            or not all(isinstance(e, int) and e >= 0 for e in den_exps)
        ):
            raise ConfigError(
                "denominator_exponents: must list one nonnegative integer per point"
            )
        den_exps = tuple(den_exps)

    return SystemConfig(
        mode=mode,
        points=tuple(points),
        preset=preset,
        residues=matrices,
        coupling=coupling,
        convention=convention,
        order=order,
        center=center,
        numerator_degree=num_degree,
        denominator_exponents=den_exps,
    )


def _parse_matrix(obj, where: str) -> FMatrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ConfigError(f"{where}: must be a list of rows")
    rows = []
    for row in obj:
        out = []
        for e in row:
            if isinstance(e, int):
                out.append(Fraction(e))
            elif isinstance(e, str):
                try:
                    out.append(parse_scalar(e))
                except ValueError as exc:
                    raise ConfigError(f"{where}: {exc}") from exc
            else:
                raise ConfigError(f"{where}: entries must be integers or 'p/q' strings")
        rows.append(out)
    try:
        return FMatrix(rows)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


# ---------------------------------------------------------------------------
# exact serialization


def _entry_json(e):
    if isinstance(e, Fraction):
        return format_scalar(e)
    if isinstance(e, RatFunc):
        return {
            "num": [format_scalar(c) for c in e.num.coeffs],
            "den": [format_scalar(c) for c in e.den.coeffs],
        }
    if isinstance(e, Poly):
        return {"poly": [format_scalar(c) for c in e.coeffs]}
    raise TypeError(f"unserializable entry {e!r}")


def parse_entry(obj):
    """Inverse of the report entry encoding (used for round-trip checks)."""
    if isinstance(obj, str):
        return parse_scalar(obj)
    if isinstance(obj, dict) and "poly" in obj:
        return Poly([parse_scalar(c) for c in obj["poly"]])
    if isinstance(obj, dict):
        return RatFunc(
            Poly([parse_scalar(c) for c in obj["num"]]),
            Poly([parse_scalar(c) for c in obj["den"]]),
        )
    raise ValueError(f"unrecognized entry encoding: {obj!r}")


def _matrix_json(m: FMatrix):
    return [[_entry_json(e) for e in row] for row in m.entries]


def _vector_json(v):
    return [_entry_json(e) for e in v]


def _poly_json(p: Poly):
    return [format_scalar(c) for c in p.coeffs]


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# human-readable printing


def _entry_str(e) -> str:
    if isinstance(e, Fraction):
        return format_scalar(e)
    if isinstance(e, RatFunc):
        return e.to_str("d")
    if isinstance(e, Poly):
        return e.to_str("z")
    return str(e)


def _matrix_lines(m: FMatrix, indent: str = "  ") -> list[str]:
    cells = [[_entry_str(e) for e in row] for row in m.entries]
    widths = [max(len(cells[i][j]) for i in range(m.rows)) for j in range(m.cols)]
    return [
        indent + "[" + "  ".join(cells[i][j].rjust(widths[j]) for j in range(m.cols)) + "]"
        for i in range(m.rows)
    ]


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def _factored_symbolic_lines(m: FMatrix) -> list[str] | None:
    """Print a matrix of equal-power monomials as  1/L * d^k * [integers]."""
    power = None
    coeffs = []
    for row in m.entries:
        crow = []
        for e in row:
            if not isinstance(e, RatFunc):
                return None
            parts = e.monomial_parts()
            if parts is None:
                return None
            c, k = parts
            if c != 0:
                if power is None:
                    power = k
                elif k != power:
                    return None
            crow.append(c)
        coeffs.append(crow)
    if power in (None, 0):
        return None
    lcm_den = 1
    for row in coeffs:
        for c in row:
            lcm_den = _lcm(lcm_den, c.denominator)
    ints = [[c * lcm_den for c in row] for row in coeffs]
    head = f"d^{power}" if lcm_den == 1 else f"1/{lcm_den} * d^{power}"
    body = FMatrix([[Fraction(e) for e in row] for row in ints])
    return [f"  {head} *"] + _matrix_lines(body, indent="    ")


def _print_coefficient(label: str, m: FMatrix, out) -> None:
    factored = _factored_symbolic_lines(m)
    print(f"{label} =", file=out)
    for line in factored if factored is not None else _matrix_lines(m):
        print(line, file=out)


# ---------------------------------------------------------------------------
# report assembly


def _indicial_json(ind) -> dict:
    return {
        "eigenvalues": [[format_scalar(v), mult] for v, mult in ind.eigenvalues],
        "resonant_levels": sorted(ind.resonant_levels),
        "unresolved_factor": _poly_json(ind.unresolved_factor),
    }


def _series_json(series: SeriesSolution) -> dict:
    return {
        "leading_exponent": series.leading_exponent,
        "convention": series.convention,
        "coefficients": [
            {"level": p, "matrix": _matrix_json(series.coefficient(p))}
            for p in series.levels()
        ],
        "resonances": [
            {
                "level": rec.level,
                "kind": rec.kind.value,
                "kernel": [_vector_json(v) for v in rec.kernel],
            }
            for rec in series.resonances
        ],
    }


def _expansion_json(exp: LocalExpansion) -> dict:
    return {
        "center": exp.center_index,
        "convention": exp.convention,
        "a_minus1": _matrix_json(exp.a_minus1),
        "regular": [
            {"index": r, "matrix": _matrix_json(exp.regular(r))}
            for r in range(exp.order + 1)
        ],
    }


# ---------------------------------------------------------------------------
# commands


def _write_json(path: str | None, report: dict) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(report_to_json(report))


def _prepare(cfg: SystemConfig):
    sys_ = cfg.build_system()
    exp = local_expansion(sys_, cfg.center, cfg.convention, max(cfg.order, 0))
    ind = indicial_data(exp, cfg.coupling)
    return sys_, exp, ind


def cmd_expand(cfg: SystemConfig, json_path: str | None, out) -> int:
    sys_, exp, ind = _prepare(cfg)
    print(f"local expansion at point {cfg.center} ({cfg.convention})", file=out)
    _print_coefficient("a[-1]", exp.a_minus1, out)
    for r in range(exp.order + 1):
        _print_coefficient(f"a[{r}]", exp.regular(r), out)
    report = {
        "config": cfg.echo(),
        "indicial": _indicial_json(ind),
        "expansion": _expansion_json(exp),
    }
    _write_json(json_path, report)
    return EXIT_OK


def _indicial_summary(ind) -> str:
    eigs = ", ".join(f"{format_scalar(v)} (x{m})" for v, m in ind.eigenvalues)
    levels = "{" + ", ".join(str(v) for v in sorted(ind.resonant_levels)) + "}"
    return f"indicial: eigenvalues {eigs}; resonant levels {levels}"


def cmd_series(
    cfg: SystemConfig,
    golden: bool,
    golden_dual: bool,
    json_path: str | None,
    out,
) -> int:
    sys_, exp, ind = _prepare(cfg)
    print(_indicial_summary(ind), file=out)
    if not ind.resonant_levels:
        print(
            "no integer eigenvalue: the Laurent ansatz has no integer leading exponent",
            file=out,
        )
        _write_json(json_path, {"config": cfg.echo(), "indicial": _indicial_json(ind)})
        return EXIT_MISMATCH
    if golden and cfg.order < 3:
        print("golden comparison needs --order >= 3", file=out)
        return EXIT_USAGE

    try:
        series = compute_series(exp, cfg.coupling, cfg.order, policy=POLICY_AUTO)
    except ResonanceObstruction as exc:
        print(f"resonance obstruction at level {exc.level}", file=out)
        print(f"certificate y (y*step = 0, y*rhs != 0): {_vector_json(exc.certificate)}", file=out)
        report = {
            "config": cfg.echo(),
            "indicial": _indicial_json(ind),
            "obstruction": {
                "level": exc.level,
                "certificate": _vector_json(exc.certificate),
                "rhs": _matrix_json(exc.rhs),
            },
        }
        _write_json(json_path, report)
        return EXIT_OBSTRUCTION

    print(f"leading exponent: {series.leading_exponent} ({series.convention})", file=out)
    for p in series.levels():
        _print_coefficient(f"b[{p}]", series.coefficient(p), out)
    for rec in series.resonances:
        print(
            f"resonant level {rec.level}: {rec.kind.value}, kernel dimension {len(rec.kernel)}",
            file=out,
        )

    report = {
        "config": cfg.echo(),
        "indicial": _indicial_json(ind),
        "series": _series_json(series),
    }

    code = EXIT_OK
    if golden:
        if not series.symbolic or cfg.preset != PRESET_KZ_S3:
            print("golden comparison needs the kz-s3 preset in symbolic mode", file=out)
            return EXIT_USAGE
        outcome: GoldenOutcome
        if golden_dual and cfg.convention == DERIVED_TAYLOR:
            outcome = compare_series_dual(series, exp)
        else:
            outcome = compare_series(series, exp)
        for line in outcome.lines:
            print(line, file=out)
        report["golden"] = {"matched": outcome.matched, "lines": list(outcome.lines)}
        if not outcome.matched:
            code = EXIT_MISMATCH

    _write_json(json_path, report)
    return code


def cmd_verify(cfg: SystemConfig, json_path: str | None, out) -> int:
    if cfg.mode != "numeric":
        print("verify needs a numeric-mode config", file=sys.stderr)
        return EXIT_USAGE
    sys_, exp, ind = _prepare(cfg)
    print(_indicial_summary(ind), file=out)
    report: dict = {"config": cfg.echo(), "indicial": _indicial_json(ind)}
    if not ind.resonant_levels:
        print(
            "no integer eigenvalue: the Laurent ansatz has no integer leading exponent",
            file=out,
        )
        _write_json(json_path, report)
        return EXIT_MISMATCH

    try:
        series = compute_series(exp, cfg.coupling, cfg.order, policy=POLICY_AUTO)
    except ResonanceObstruction as exc:
        print(f"resonance obstruction at level {exc.level}", file=out)
        report["obstruction"] = {
            "level": exc.level,
            "certificate": _vector_json(exc.certificate),
            "rhs": _matrix_json(exc.rhs),
        }
        _write_json(json_path, report)
        return EXIT_OBSTRUCTION
    report["series"] = _series_json(series)

    if cfg.denominator_exponents is not None:
        den = Poly.one()
        for p_text, m in zip(cfg.points, cfg.denominator_exponents):
            point = parse_scalar(p_text)
            den = den * Poly((-point, Fraction(1))) ** m
    else:
        try:
            den = propose_denominator(sys_, cfg.coupling)
        except NoPolynomialDenominator as exc:
            print(f"reconstruction impossible: {exc}", file=out)
            report["reconstruction"] = {
                "status": "no-polynomial-denominator",
                "detail": str(exc),
            }
            _write_json(json_path, report)
            return EXIT_MISMATCH
    degree = (
        cfg.numerator_degree
        if cfg.numerator_degree is not None
        else suggest_numerator_degree(sys_, den, cfg.coupling)
    )

    try:
        w = reconstruct(series, den, degree)
    except InsufficientSeriesError as exc:
        print(f"insufficient series length: {exc}", file=sys.stderr)
        report["reconstruction"] = {"status": "insufficient-series", "detail": str(exc)}
        _write_json(json_path, report)
        return EXIT_USAGE
    except NotRepresentable as exc:
        print(f"not representable: {exc}", file=out)
        report["reconstruction"] = {
            "status": "not-representable",
            "first_unmatched_level": exc.first_unmatched_level,
        }
        _write_json(json_path, report)
        return EXIT_MISMATCH

    verdict = verify_ode(w, sys_)
    report["reconstruction"] = {
        "status": "ok",
        "denominator": _poly_json(w.denominator),
        "numerator": [[_poly_json(p) for p in row] for row in w.numerator.entries],
        "numerator_degree_bound": degree,
    }
    report["ode"] = {
        "satisfied": verdict.satisfied,
        "det_identically_zero": verdict.det_identically_zero,
        "residual_zero": verdict.residual.is_zero(),
    }

    print(f"denominator: {w.denominator.to_str('z')}", file=out)
    print("numerator:", file=out)
    for line in _matrix_lines(w.numerator):
        print(line, file=out)
    print(
        f"ode satisfied: {verdict.satisfied}; det identically zero: "
        f"{verdict.det_identically_zero}",
        file=out,
    )
    _write_json(json_path, report)
    return EXIT_OK if verdict.satisfied else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# entry point


def load_config(path: str, overrides: dict) -> SystemConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    cfg = parse_config(text)
    if not overrides:
        return cfg
    doc = cfg.echo()
    doc.update(overrides)
    return parse_config(json.dumps(doc))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="kzrat",
        description="Exact Frobenius series and rational solutions for "
        "KZ-type Fuchsian systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("expand", "print the local expansion coefficients"),
        ("series", "solve the recursion and print the Laurent coefficients"),
        ("verify", "series -> rational reconstruction -> exact ODE check"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", required=True, help="path to a JSON config")
        p.add_argument("--json", dest="json_path", help="write the full report here")
        p.add_argument("--order", type=int, help="override the config order")
        p.add_argument("--center", type=int, help="override the expansion center (1-based)")
        p.add_argument("--convention", choices=CONVENTIONS, help="override the convention")
        if name == "series":
            p.add_argument("--golden", action="store_true", help="compare against built-in reference values")
            p.add_argument(
                "--golden-dual",
                action="store_true",
                help="golden comparison through the d -> -d duality (derived-taylor)",
            )
    args = parser.parse_args(argv)

    overrides = {}
    if args.order is not None:
        overrides["order"] = args.order
    if args.center is not None:
        overrides["center"] = args.center
    if args.convention is not None:
        overrides["convention"] = args.convention

    try:
        cfg = load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    out = sys.stdout
    try:
        if args.command == "expand":
            return cmd_expand(cfg, args.json_path, out)
        if args.command == "series":
            golden = args.golden or args.golden_dual
            return cmd_series(cfg, golden, args.golden_dual, args.json_path, out)
        return cmd_verify(cfg, args.json_path, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Dense univariate polynomials over exact rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

ScalarLike = Union[int, Fraction]


def _as_fraction(value) -> Fraction | None:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return None


class Poly:
    """Polynomial with Fraction coefficients, index = degree.

    The zero polynomial stores an empty tuple; otherwise the leading
    coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> Poly:
        return cls()

    @classmethod
    def one(cls) -> Poly:
        return cls((Fraction(1),))

    @classmethod
    def monomial(cls, degree: int, coeff: ScalarLike = 1) -> Poly:
        if degree < 0:
            raise ValueError("monomial degree must be >= 0")
        c = Fraction(coeff)
        if c == 0:
            return cls()
        return cls((Fraction(0),) * degree + (c,))

    @property
    def degree(self) -> int:
        """Degree, with the convention deg(0) = -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient; -1 for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        c = _as_fraction(other)
        if c is None:
            return NotImplemented
        return self == Poly((c,))

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        c = _as_fraction(other)
        if c is None:
            return None
        return Poly((c,))

    def __add__(self, other) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] += c
        return Poly(res)

    __radd__ = __add__

    def __sub__(self, other) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly()
        res = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    res[i + j] += a * b
        return Poly(res)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Poly:
        c = _as_fraction(other)
        if c is None:
            return NotImplemented
        if c == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return Poly(tuple(x / c for x in self.coeffs))

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if not isinstance(other, Poly):
            o = self._coerce(other)
            if o is None:
                return NotImplemented
            other = o
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dn, dd = self.degree, other.degree
        if dn < dd:
            return Poly(), self
        quo = [Fraction(0)] * (dn - dd + 1)
        inv_lead = 1 / other.leading
        for k in range(dn - dd, -1, -1):
            c = rem[k + dd] * inv_lead
            quo[k] = c
            if c:
                for i, oc in enumerate(other.coeffs):
                    rem[k + i] -= c * oc
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def divides(self, other: Poly) -> bool:
        """True when self divides other exactly."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def __call__(self, x: ScalarLike) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly(tuple(c * k for k, c in enumerate(self.coeffs) if k >= 1))

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self / self.leading

    def shifted(self, c: ScalarLike) -> Poly:
        """Return p(x + c) as a polynomial in x."""
        base = Poly((Fraction(c), Fraction(1)))
        acc = Poly()
        for coeff in reversed(self.coeffs):
            acc = acc * base + coeff
        return acc

    def to_str(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                term = _frac_str(abs(c))
            else:
                mag = abs(c)
                head = "" if mag == 1 else _frac_str(mag) + "*"
                term = f"{head}{var}" if k == 1 else f"{head}{var}^{k}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.to_str()})"


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    x, y = a, b
    while not y.is_zero():
        x, y = y, (x % y).monic()
    return x.monic()


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _synthetic_divide(p: Poly, root: Fraction) -> Poly:
    """Divide p by (x - root); the caller guarantees root is a root."""
    quo = [Fraction(0)] * p.degree
    carry = Fraction(0)
    for k in range(p.degree, 0, -1):
        carry = p.coeffs[k] + carry * root
        quo[k - 1] = carry
    return Poly(quo)


def rational_roots(p: Poly) -> tuple[tuple[tuple[Fraction, int], ...], Poly]:
    """All rational roots of p with multiplicities, plus the root-free remainder.

    Returns (roots, remainder) with roots sorted ascending and remainder
    monic, so that p / lc(p) = prod (x - r)^m * remainder and remainder has
    no rational roots.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has every value as a root")
    roots: dict[Fraction, int] = {}
    work = p.monic()

    v = work.valuation()
    if v > 0:
        roots[Fraction(0)] = v
        work = Poly(work.coeffs[v:])

    if work.degree >= 1:
        # Clear to integer coefficients for the rational-root candidates.
        den_lcm = 1
        for c in work.coeffs:
            den_lcm = den_lcm * c.denominator // _gcd(den_lcm, c.denominator)
        ints = [int(c * den_lcm) for c in work.coeffs]
        a0, an = ints[0], ints[-1]
        candidates: set[Fraction] = set()
        for pnum in _divisors(a0):
            for qden in _divisors(an):
                f = Fraction(pnum, qden)
                candidates.add(f)
                candidates.add(-f)
        for cand in sorted(candidates):
            while work.degree >= 1 and work(cand) == 0:
                roots[cand] = roots.get(cand, 0) + 1
                work = _synthetic_divide(work, cand)

    ordered = tuple(sorted(roots.items()))
    return ordered, work.monic()


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a

"""Exact Hilbert-Schmidt volumes of X-states and of their PPT subset.

Every volume is a rational multiple of a power of pi, held as
:class:`PiRational`. Each public result is computed along the integral
route (Dirichlet integrals, the min-integral ``I0`` and its incomplete
variant) and checked against the closed factorial form before returning.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

import mpmath

from .ptstructure import classify
from .xstate import Dims, DomainError

TWO_FIFTHS = Fraction(2, 5)


class ClosedFormMismatch(AssertionError):
    """Integral route and closed form disagree."""


@dataclass(frozen=True)
class PiRational:
    """The exact number ``coeff * pi**pi_power``."""

    coeff: Fraction
    pi_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.pi_power < 0:
            raise DomainError(f"pi_power must be >= 0, got {self.pi_power}")

    def __mul__(self, other):
        if isinstance(other, PiRational):
            return PiRational(self.coeff * other.coeff, self.pi_power + other.pi_power)
        if isinstance(other, (int, Fraction)):
            return PiRational(self.coeff * other, self.pi_power)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, PiRational):
            return NotImplemented
        if other.pi_power != self.pi_power:
            raise DomainError(f"cannot add pi^{self.pi_power} and pi^{other.pi_power} terms")
        return PiRational(self.coeff + other.coeff, self.pi_power)

    def __truediv__(self, other):
        if isinstance(other, PiRational):
            if other.pi_power > self.pi_power:
                raise DomainError("quotient would carry a negative power of pi")
            return PiRational(self.coeff / other.coeff, self.pi_power - other.pi_power)
        if isinstance(other, (int, Fraction)):
            return PiRational(self.coeff / other, self.pi_power)
        return NotImplemented

    def to_mpf(self, dps: int = 40):
        with mpmath.workdps(dps):
            return mpmath.mpf(self.coeff.numerator) / self.coeff.denominator * mpmath.pi ** self.pi_power

    def to_decimal_string(self, digits: int = 17) -> str:
        """Round-to-nearest with ``digits`` significant digits, any magnitude."""
        return mpmath.nstr(self.to_mpf(digits + 20), digits, min_fixed=-4, max_fixed=digits)

    def __float__(self):
        return float(self.to_mpf())

    def __str__(self):
        c = self.coeff
        head = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        if self.pi_power == 0:
            return head
        return f"{head}*pi^{self.pi_power}"


def fixed_decimal(value: Fraction, places: int = 17) -> str:
    """Exact rational rounded half-even to ``places`` fractional digits."""
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = places + len(str(value.numerator)) + len(str(value.denominator)) + 10
        d = Decimal(value.numerator) / Decimal(value.denominator)
        return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def _positive_int(x, name):
    if isinstance(x, bool) or not isinstance(x, int) or x < 1:
        raise DomainError(f"{name} must be a positive integer, got {x!r}")


def beta(a: int, b: int) -> Fraction:
    _positive_int(a, "a")
    _positive_int(b, "b")
    return Fraction(math.factorial(a - 1) * math.factorial(b - 1), math.factorial(a + b - 1))


def dirichlet_integral(alphas) -> Fraction:
    """prod Gamma(alpha_i) / Gamma(sum alpha_i) for integer exponents."""
    alphas = list(alphas)
    if not alphas:
        raise DomainError("dirichlet_integral needs at least one exponent")
    for a in alphas:
        _positive_int(a, "alpha")
    num = math.prod(math.factorial(a - 1) for a in alphas)
    return Fraction(num, math.factorial(sum(alphas) - 1))


def i_zero() -> Fraction:
    """Integral of min[x1(1-x1-x2-x3), x2 x3]^2 over the 3-simplex."""
    # exact integral of the reduced integrand x1^2 x2^2 (1-x1-x2)^3 / (3 (x1+x2)^2):
    # with x1 = s w, x2 = s (1-w) it factorises into Beta integrals
    value = Fraction(1, 3) * beta(4, 4) * beta(3, 3)
    closed = TWO_FIFTHS / math.factorial(7)
    if value != closed or value != Fraction(1, 12600):
        raise ClosedFormMismatch(f"I0 route gives {value}, closed form {closed}")
    return value


def i_min(n: int, a=1) -> Fraction:
    """Integral of min(x1 x2, x3 x4)^2 (a - sum x)^n over the a-scaled 4-simplex."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    a = Fraction(a)
    if not 0 <= a <= 1:
        raise DomainError(f"a must lie in [0, 1], got {a}")
    return a ** (8 + n) * i_zero() * beta(8, n + 1)


def _check_validity(dims: Dims):
    N = dims.N
    if (N % 2 == 0 and N < 4) or (N % 2 == 1 and N < 9):
        raise DomainError(f"volume formulas need even mn >= 4 or odd mn >= 9, got mn={N}")


def _closed_volume_x(dims: Dims) -> PiRational:
    N = dims.N
    if N % 2 == 0:
        return PiRational(Fraction(1, math.factorial(2 * N - 1)), N // 2)
    return PiRational(Fraction(1, math.factorial(2 * N - 2)), (N - 1) // 2)


def volume_x(dims: Dims) -> PiRational:
    """Hilbert-Schmidt volume of the m x n X-state body."""
    _check_validity(dims)
    # each anti-diagonal pair contributes a disk of area pi*rho_ii*rho_jj,
    # so every paired diagonal entry carries exponent 2, the center exponent 1
    alphas = [2] * (2 * dims.P) + [1] * int(dims.has_center)
    value = PiRational(dirichlet_integral(alphas), dims.P)
    closed = _closed_volume_x(dims)
    if value != closed:
        raise ClosedFormMismatch(f"volume_x{dims}: Dirichlet route {value}, closed {closed}")
    return value


def telescoped_ppt_coefficient(A: int, B: int, C: int) -> Fraction:
    """Rational factor of the PPT volume obtained by integrating quadruples one by one.

    The innermost quadruple yields ``I0 (1 - s)^7``; each further quadruple
    is an incomplete min-integral ``i_min(8t - 1)`` raising the exponent by 8.
    What remains is a Dirichlet integral over the fixed-pair entries
    (exponent 2), the center (exponent 1) and the tail (exponent 8A).
    """
    if A < 1:
        raise DomainError("at least one quadruple is required")
    acc = i_zero()
    for t in range(1, A):
        acc *= i_min(8 * t - 1, 1)
    return acc * dirichlet_integral([2] * (2 * B) + [1] * C + [8 * A])


def volume_ppt(dims: Dims) -> PiRational:
    """Hilbert-Schmidt volume of X-states with positive partial transpose."""
    vx = volume_x(dims)
    cls = classify(dims)
    A, B, C = cls.counts
    value = PiRational(telescoped_ppt_coefficient(A, B, C), dims.P)
    closed = vx * TWO_FIFTHS ** A
    if value != closed:
        raise ClosedFormMismatch(f"volume_ppt{dims}: telescoped {value}, closed {closed}")
    return value


def ratio(dims: Dims) -> Fraction:
    """V_PPT / V_X = (2/5)^(floor(m/2) floor(n/2))."""
    quotient = volume_ppt(dims) / volume_x(dims)
    expected = TWO_FIFTHS ** ((dims.m // 2) * (dims.n // 2))
    if quotient.pi_power != 0 or quotient.coeff != expected:
        raise ClosedFormMismatch(f"ratio{dims}: volumes give {quotient}, closed {expected}")
    return expected

"""Exact q-expansions and special L-values, plus the numeric period oracle.

The exact half computes L(1-h, g) as a finite Bernoulli sum, the
q-expansion of the normalized weight-k series of a torsion function
with coefficients in the group ring of Z/NZ, and the rational middle
Mellin values.  The numeric half sums the same q-series against
incomplete gamma factors (exponentially convergent, no quadrature
grids) for Mellin transforms and level-one period integrals, and does
one honest double quadrature over the standard fundamental domain for
the Petersson norm.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.integrate import dblquad
from scipy.special import gammaincc

from .cyclo import CycVec
from .eisenstein import CycFunction, TorsionFunction, beta_moment, beta_value, fourier2
from .exact import bernoulli_number
from .modgroup import SIGMA

__all__ = [
    "l_special",
    "l_special_numeric",
    "QExpansion",
    "eis_qexp",
    "normalized_transform",
    "mellin_rational",
    "mellin_numeric",
    "delta_qexp",
    "eta_product_qexp",
    "delta_periods",
    "petersson_norm_delta",
    "period_haberland",
]


def l_special(values, h: int):
    """L(1-h, g) for g given by its value list on Z/NZ, h >= 1.

    For h = 1 the value is L(0, g) + g(0)/2.  Values may be Fractions
    or group-ring elements; the result has the same type.
    """
    if h < 1:
        raise ValueError("the argument index must be at least 1")
    n = len(values)
    total = None
    for a in range(n):
        b = beta_value(h, a, n)
        if not b:
            continue
        term = values[a].scale(b) if isinstance(values[a], CycVec) else values[a] * b
        total = term if total is None else total + term
    if total is None:
        total = values[0].scale(Fraction(0)) if isinstance(values[0], CycVec) else Fraction(0)
    return total


def l_special_numeric(values, h: int, terms: int = 6) -> float:
    """Euler-Maclaurin continuation of the Dirichlet series at 1-h.

    Independent numeric route: sums the Hurwitz zeta values at s = 1-h
    with the standard tail corrections.  At negative integer arguments
    the correction series terminates, so a short main sum keeps
    cancellation (and hence rounding) small.
    """
    n = len(values)
    s = 1.0 - h

    def hurwitz(x: float) -> float:
        parts = [(m + x) ** (-s) for m in range(terms)]
        parts.append((terms + x) ** (1 - s) / (s - 1))
        parts.append(0.5 * (terms + x) ** (-s))
        poch = s
        fact = 1.0
        j = 1
        while True:
            b2j = float(bernoulli_number(2 * j))
            fact *= (2 * j - 1) * (2 * j)
            parts.append(b2j / fact * poch * (terms + x) ** (-s - 2 * j + 1))
            poch *= (s + 2 * j - 1) * (s + 2 * j)
            if poch == 0.0 or j > 24:
                break
            j += 1
        return math.fsum(parts)

    return math.fsum(
        float(values[a % n]) * n ** (-s) * hurwitz(a / n) for a in range(1, n + 1)
    )


def _p2(f, a: int, b: int) -> CycVec:
    """Partial transform in the second variable, an exact group-ring value."""
    n = f.n
    out = CycVec(n)
    for y in range(n):
        v = f(a, y)
        if isinstance(v, CycVec):
            out = out + v.rotate((-y * b) % n)
        elif v:
            out.add_root_multiple((-y * b) % n, v)
    return out


@dataclass
class QExpansion:
    level: int
    weight: int
    terms: int
    constant: CycVec
    coeffs: list  # coeffs[t] for 1 <= t <= terms; CycVec values

    def coefficient(self, t: int) -> CycVec:
        if t == 0:
            return self.constant
        return self.coeffs[t]

    def floats(self) -> list[complex]:
        return [self.constant.to_complex()] + [c.to_complex() for c in self.coeffs[1:]]


def eis_qexp(f, k: int, terms: int) -> QExpansion:
    """q-expansion of the normalized weight-k series of f, exactly.

    The constant term is L(1-k, .) of the reflected second partial
    transform at 0; the higher coefficients accumulate
    (P2(f)(n, -m) + (-1)^k P2(f-)(n, -m)) m^(k-1) on q_N^(n m).
    """
    if k < 2:
        raise ValueError("weight must be at least 2")
    n = f.n
    row = [_p2(f, 0, (-x) % n) for x in range(n)]
    constant = l_special(row, k)
    fm = f.minus()
    sign = (-1) ** k
    coeffs = [CycVec(n) for _ in range(terms + 1)]
    for nn in range(1, terms + 1):
        for m in range(1, terms // nn + 1):
            val = _p2(f, nn % n, (-m) % n) + _p2(fm, nn % n, (-m) % n).scale(sign)
            coeffs[nn * m] = coeffs[nn * m] + val.scale(Fraction(m) ** (k - 1))
    return QExpansion(n, k, terms, constant, coeffs)


def normalized_transform(f: TorsionFunction) -> CycFunction:
    """(1/N) times the two-variable Fourier transform of f."""
    hat = fourier2(f)
    inv = Fraction(1, f.n)
    return CycFunction(f.n, [[v.scale(inv) for v in row] for row in hat.values])


def mellin_rational(f: TorsionFunction, k: int, j: int) -> Fraction:
    """Middle Mellin value of the normalized transform series, exact.

    Only 0 < j < k-2 is admitted: the boundary values carry
    transcendental derivative terms and are out of scope.
    """
    if not 0 < j < k - 2:
        raise ValueError("only middle indices are rational")
    return (-1) ** (j + 1) * beta_moment(f, k - 1 - j, j + 1, minus=True)


def _upper_gamma_integral(s: float, x: float) -> float:
    """Integral over [1, inf) of exp(-x t) t^(s-1) dt = x^-s Gamma(s, x)."""
    return x ** (-s) * gammaincc(s, x) * math.gamma(s)


def _qseries_tail_sum(float_coeffs, s: float, rate: float) -> complex:
    """Sum over t >= 1 of c_t * integral_1^inf exp(-rate t u) u^(s-1) du."""
    acc = 0j
    for t in range(1, len(float_coeffs)):
        c = float_coeffs[t]
        if c:
            acc += c * _upper_gamma_integral(s, rate * t)
    return acc


def _terms_for_tail(n: int, k: int, tol: float) -> int:
    """Smallest truncation with coefficient-size tail below tol / 10."""
    m = 1
    while m ** (k - 1) * math.exp(-2 * math.pi * m / n) >= tol / 10:
        m += 1
    return m + n  # a full extra period of margin


def mellin_numeric(f: TorsionFunction, k: int, j: int, terms: int | None = None) -> complex:
    """Numeric Mellin value at j+1 by splitting the line integral at i.

    The lower half is folded through the weight-k inversion, leaving
    two exponentially convergent sums plus the elementary continuation
    terms of the constants.
    """
    n = f.n
    if terms is None:
        terms = _terms_for_tail(n, k, 1e-12)
    g = normalized_transform(f)
    h = g.act(SIGMA)
    qg = eis_qexp(g, k, terms)
    qh = eis_qexp(h, k, terms)
    a = qg.constant.to_complex()
    b = qh.constant.to_complex()
    s = j + 1
    rate = 2 * math.pi / n
    big_a = _qseries_tail_sum(qg.floats(), s, rate)
    big_b = _qseries_tail_sum(qh.floats(), k - s, rate)
    ik = 1j ** k
    return 1j ** s * (big_a + ik * big_b + ik * b / (s - k) - a / s)


# -- level-one oracle ---------------------------------------------------


def _euler_product(terms: int) -> list[int]:
    """Coefficients of prod (1 - q^m) by the pentagonal number theorem."""
    out = [0] * terms
    out[0] = 1
    g = 1
    while True:
        p1 = g * (3 * g - 1) // 2
        p2 = g * (3 * g + 1) // 2
        if p1 >= terms and p2 >= terms:
            break
        sign = -1 if g % 2 else 1
        if p1 < terms:
            out[p1] += sign
        if p2 < terms:
            out[p2] += sign
        g += 1
    return out


def _poly_mul(a, b, terms):
    out = [0] * terms
    for i, ai in enumerate(a):
        if ai:
            for j in range(min(len(b), terms - i)):
                if b[j]:
                    out[i + j] += ai * b[j]
    return out


def eta_product_qexp(factors, terms: int) -> list[int]:
    """q-expansion of a product of rescaled eta powers, without the q-shift.

    `factors` is a list of (d, e) meaning the eta factor at d z to the
    power e (e > 0); returns the coefficients of prod_n prod_d
    (1 - q^(d n))^e up to q^(terms-1).  The caller accounts for the
    leading q^(sum d e / 24).
    """
    out = [0] * terms
    out[0] = 1
    for d, e in factors:
        base = _euler_product((terms - 1) // d + 1)
        scaled = [0] * terms
        for i, c in enumerate(base):
            if d * i < terms:
                scaled[d * i] = c
        for _ in range(e):
            out = _poly_mul(out, scaled, terms)
    return out


def delta_qexp(terms: int) -> list[int]:
    """Coefficients of the discriminant form: tau(1), ..., tau(terms).

    Index t of the output is tau(t); index 0 is unused (zero).
    """
    prod = eta_product_qexp([(1, 24)], terms)
    out = [0] * (terms + 1)
    for t in range(1, terms + 1):
        if t - 1 < len(prod):
            out[t] = prod[t - 1]
    return out


def delta_periods(terms: int = 60) -> list[complex]:
    """Period integrals r_0..r_10 of the discriminant form.

    r_j = integral from i*infinity to 0 of Delta(t) t^j dt, folded at i
    by weight-12 modularity into incomplete-gamma sums.
    """
    tau = delta_qexp(terms)
    out = []
    for j in range(11):
        acc = 0.0
        for t in range(1, terms + 1):
            if tau[t]:
                acc += tau[t] * (
                    _upper_gamma_integral(j + 1, 2 * math.pi * t)
                    + _upper_gamma_integral(11 - j, 2 * math.pi * t)
                )
        out.append(-(1j ** (j + 1)) * acc)
    return out


def _delta_value(z: complex, tau) -> complex:
    q = cmath.exp(2j * cmath.pi * z)
    acc = 0j
    qp = 1.0 + 0j
    for t in range(1, len(tau)):
        qp *= q
        acc += tau[t] * qp
    return acc


def petersson_norm_delta(terms: int = 30, y_max: float = 8.0) -> float:
    """Petersson norm of the discriminant form by direct double quadrature."""
    tau = delta_qexp(terms)

    def integrand(y, x):
        return abs(_delta_value(complex(x, y), tau)) ** 2 * y ** 10

    val, err = dblquad(
        integrand, -0.5, 0.5,
        lambda x: math.sqrt(max(1.0 - x * x, 0.0)), y_max,
        epsabs=1e-14, epsrel=1e-11,
    )
    if err > 1e-10:
        raise ArithmeticError(f"quadrature error estimate too large: {err}")
    return val


def period_haberland(r1: list[complex], r2: list[complex]) -> complex:
    """Level-one pairing of two numeric period vectors (weight 12).

    Feeds the complex period polynomials through the same closed form
    as the exact pairing.
    """
    from math import comb

    from .pairing import haberland_pair
    from .polyspace import Vk

    p1 = Vk(12, [comb(10, j) * r1[j] for j in range(11)])
    p2 = Vk(12, [comb(10, j) * r2[j] for j in range(11)])
    return haberland_pair(p1, Vk.zero(12), p2)

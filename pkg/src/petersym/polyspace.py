"""Homogeneous coefficient polynomials of degree k-2 in (x, y).

The right action is (P|g)(x, y) = P(d x - c y, -b x + a y), which for
an integer matrix of determinant D equals D^(k-2) P((x, y) g^-1); the
bilinear form is the (anti)symmetric pairing normalized by

    <(t x + y)^(k-2), (t' x + y)^(k-2)> = (t - t')^(k-2).

Coefficients may be Fractions or complex floats; all operations are
generic in the coefficient type (the numeric period oracle reuses the
same class with complex entries).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .exact import frac_str
from .modgroup import Mat


class Vk:
    """Element of the weight-k coefficient module, k >= 2.

    coeffs[i] is the coefficient of x^i y^(k-2-i); len(coeffs) = k-1.
    """

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs):
        if k < 2:
            raise ValueError("weight must be at least 2")
        coeffs = tuple(coeffs)
        if len(coeffs) != k - 1:
            raise ValueError(f"expected {k - 1} coefficients, got {len(coeffs)}")
        self.k = k
        self.coeffs = coeffs

    @classmethod
    def zero(cls, k: int) -> "Vk":
        return cls(k, (Fraction(0),) * (k - 1))

    @classmethod
    def monomial(cls, k: int, i: int, c=Fraction(1)) -> "Vk":
        coeffs = [Fraction(0)] * (k - 1)
        coeffs[i] = c
        return cls(k, coeffs)

    @classmethod
    def linear_power(cls, k: int, t) -> "Vk":
        """(t x + y)^(k-2) for scalar t."""
        return cls(k, [comb(k - 2, i) * t**i for i in range(k - 1)])

    def __repr__(self):
        return f"Vk({self.k}, {list(self.coeffs)})"

    def __eq__(self, other):
        return isinstance(other, Vk) and self.k == other.k and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.k, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def _check(self, other: "Vk"):
        if self.k != other.k:
            raise ValueError(f"weight mismatch: {self.k} vs {other.k}")

    def __add__(self, other: "Vk") -> "Vk":
        self._check(other)
        return Vk(self.k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Vk") -> "Vk":
        self._check(other)
        return Vk(self.k, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Vk":
        return Vk(self.k, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "Vk":
        return Vk(self.k, tuple(c * a for a in self.coeffs))

    def act(self, g: Mat) -> "Vk":
        """Right action P|g; includes the det(g)^(k-2) normalization."""
        a, b, c, d = g
        n = self.k - 2
        out = [0 * self.coeffs[0]] * (n + 1)
        # x -> d x - c y, y -> -b x + a y, expanded monomial by monomial
        for i, coef in enumerate(self.coeffs):
            if not coef:
                continue
            first = _binom_pows(d, -c, i)
            second = _binom_pows(-b, a, n - i)
            for s, cs in enumerate(first):
                base = coef * cs
                for t, ct in enumerate(second):
                    out[s + t] += base * ct
        return Vk(self.k, out)

    def pair(self, other: "Vk"):
        """The weight-k bilinear form; symmetric iff k is even."""
        self._check(other)
        n = self.k - 2
        sign = 1 if n % 2 == 0 else -1
        acc = 0
        for i in range(n + 1):
            a = self.coeffs[i]
            b = other.coeffs[n - i]
            if a and b:
                term = a * b / comb(n, i)
                acc = acc + (term if i % 2 == 0 else -term)
        return sign * acc if acc else Fraction(0) * sign

    def to_json(self):
        return {"k": self.k, "coeffs": [frac_str(c) for c in self.coeffs]}


def _binom_pows(u, v, m):
    """Coefficients of (u x + v y)^m as a list indexed by the power of x."""
    out = []
    for s in range(m + 1):
        out.append(comb(m, s) * u**s * v ** (m - s))
    return out


def vk_act(p: Vk, g: Mat) -> Vk:
    return p.act(g)


def vk_pair(p: Vk, q: Vk):
    return p.pair(q)

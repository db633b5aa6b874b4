"""Torsion functions on (Z/NZ)^2 and their rational period symbols.

The raw datum is a rational-valued function f on (Z/NZ)^2.  Its period
symbol is stored through two exact quantities: the value on the path
from infinity to 0 (a coefficient polynomial built from products of
Bernoulli-distribution moments) and the scalar driving values on
infinitesimal symbols at infinity.  Values on arbitrary cocycle paths
are assembled from these by the continued-fraction decomposition, with
all twists of f taken modulo the level and memoized.

The transcendental boundary part of the full period symbol (the
L'-coefficient multiples of x^(k-2) and y^(k-2)) is deliberately
dropped: it is a coboundary, lies in the radical of the pairing, and
removing it is what makes every stored value rational.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .cyclo import CycVec
from .exact import bernoulli_poly, frac_str
from .modgroup import Mat, madj, manin_path_infty, mdet, minv, stevens_split
from .polyspace import Vk

__all__ = [
    "TorsionFunction",
    "CycFunction",
    "beta_value",
    "beta_moment",
    "fourier1",
    "fourier_partial1",
    "fourier_partial2",
    "fourier2",
    "hecke_fn",
    "EisSymbol",
    "eis_symbol",
    "distribution_check",
]


class TorsionFunction:
    """Rational-valued function on (Z/NZ)^2; values[x][y] = f(x, y)."""

    def __init__(self, n: int, values):
        self.n = n
        self.values = [[Fraction(v) for v in row] for row in values]
        if len(self.values) != n or any(len(r) != n for r in self.values):
            raise ValueError("value table must be N x N")

    @classmethod
    def zero(cls, n: int) -> "TorsionFunction":
        return cls(n, [[0] * n for _ in range(n)])

    @classmethod
    def constant(cls, n: int, c=Fraction(1)) -> "TorsionFunction":
        return cls(n, [[c] * n for _ in range(n)])

    @classmethod
    def indicator(cls, n: int, point) -> "TorsionFunction":
        f = cls.zero(n)
        f.values[point[0] % n][point[1] % n] = Fraction(1)
        return f

    def __call__(self, x: int, y: int) -> Fraction:
        return self.values[x % self.n][y % self.n]

    def __eq__(self, other):
        return isinstance(other, TorsionFunction) and self.n == other.n \
            and self.values == other.values

    def __add__(self, other):
        return TorsionFunction(self.n, [
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.values, other.values)
        ])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "TorsionFunction":
        c = Fraction(c)
        return TorsionFunction(self.n, [[c * v for v in row] for row in self.values])

    def is_zero(self) -> bool:
        return all(not v for row in self.values for v in row)

    def act(self, g: Mat) -> "TorsionFunction":
        """f|g (x, y) = f((x, y) g^-1); g integral of determinant +-1."""
        n = self.n
        d = mdet(g)
        if d not in (1, -1):
            raise ValueError("twisting matrix must have determinant +-1")
        inv = madj(g) if d == 1 else tuple(-x for x in madj(g))
        a, b, c, dd = inv
        out = TorsionFunction.zero(n)
        for x in range(n):
            for y in range(n):
                out.values[x][y] = self.values[(x * a + y * c) % n][(x * b + y * dd) % n]
        return out

    def minus(self) -> "TorsionFunction":
        n = self.n
        return TorsionFunction(n, [
            [self.values[(-x) % n][(-y) % n] for y in range(n)] for x in range(n)
        ])

    def pullback(self, m: int) -> "TorsionFunction":
        """The induced function at a multiple level m = N * P."""
        if m % self.n:
            raise ValueError("target level must be a multiple")
        return TorsionFunction(m, [
            [self.values[x % self.n][y % self.n] for y in range(m)] for x in range(m)
        ])

    def to_json(self):
        return {"N": self.n, "values": [[frac_str(v) for v in row] for row in self.values]}


class CycFunction:
    """Function on (Z/NZ)^2 with values in the group ring Q[Z/NZ]."""

    def __init__(self, n: int, values):
        self.n = n
        self.values = values

    def __call__(self, x: int, y: int) -> CycVec:
        return self.values[x % self.n][y % self.n]

    def act(self, g: Mat) -> "CycFunction":
        n = self.n
        inv = madj(g)
        if mdet(g) != 1:
            raise ValueError("twisting matrix must have determinant 1")
        a, b, c, dd = inv
        vals = [[self.values[(x * a + y * c) % n][(x * b + y * dd) % n]
                 for y in range(n)] for x in range(n)]
        return CycFunction(n, vals)

    def minus(self) -> "CycFunction":
        n = self.n
        vals = [[self.values[(-x) % n][(-y) % n] for y in range(n)] for x in range(n)]
        return CycFunction(n, vals)

    def __eq__(self, other):
        if not isinstance(other, CycFunction) or self.n != other.n:
            return NotImplemented
        return all(
            self.values[x][y] == other.values[x][y]
            for x in range(self.n) for y in range(self.n)
        )


def fourier1(values) -> list[CycVec]:
    """One-variable transform: ghat(n) = sum g(a) z^(-a n), exactly."""
    n = len(values)
    out = [CycVec(n) for _ in range(n)]
    for a, v in enumerate(values):
        if isinstance(v, CycVec):
            for m in range(n):
                out[m] = out[m] + v.rotate((-a * m) % n)
        elif v:
            for m in range(n):
                out[m].add_root_multiple((-a * m) % n, v)
    return out


def fourier_partial1(f) -> CycFunction:
    """Transform in the first variable: sum_a f(a, m) z^(-a n)."""
    n = f.n
    cols = [fourier1([f(a, m) for a in range(n)]) for m in range(n)]
    return CycFunction(n, [[cols[m][x] for m in range(n)] for x in range(n)])


def fourier_partial2(f) -> CycFunction:
    """Transform in the second variable: sum_b f(n, b) z^(-b m)."""
    n = f.n
    return CycFunction(n, [fourier1(f.values[x]) for x in range(n)])


def fourier2(f) -> CycFunction:
    """Two-variable Fourier transform with the determinant kernel.

    fhat(n, m) = (1/N) sum f(a, b) z^(a m - b n), z a primitive N-th
    root of unity, kept exactly as group-ring coefficient vectors.
    """
    n = f.n
    inv_n = Fraction(1, n)
    out = [[CycVec(n) for _ in range(n)] for _ in range(n)]
    rational = isinstance(f, TorsionFunction)
    for a in range(n):
        for b in range(n):
            v = f.values[a][b]
            if rational and not v:
                continue
            for nn in range(n):
                row = out[nn]
                base = (-b * nn) % n
                for m in range(n):
                    if rational:
                        row[m].add_root_multiple(base + a * m, inv_n * v)
                    else:
                        row[m] = row[m] + v.rotate(base + a * m).scale(inv_n)
    return CycFunction(n, out)


@lru_cache(maxsize=None)
def _beta_row(h: int, n: int) -> tuple:
    out = []
    for r in range(n):
        if h == 0:
            out.append(Fraction(1, n))
        elif h == 1:
            frac = Fraction(r % n, n)
            val = -bernoulli_poly(1, frac)
            if frac == 0:
                val -= Fraction(1, 2)
            out.append(val)
        else:
            out.append(-Fraction(n) ** (h - 1) * bernoulli_poly(h, Fraction(r % n, n)) / h)
    return tuple(out)


def beta_value(h: int, r: int, n: int) -> Fraction:
    """The Bernoulli distribution of index h at the residue r mod n."""
    if h < 0:
        raise ValueError("index must be nonnegative")
    return _beta_row(h, n)[r % n]


def beta_moment(f: TorsionFunction, a: int, b: int, minus: bool = False) -> Fraction:
    """Integral of f (or of f-) against beta_a x beta_b on (Z/NZ)^2."""
    n = f.n
    rows_a = _beta_row(a, n)
    rows_b = _beta_row(b, n)
    g = f.minus() if minus else f
    acc = Fraction(0)
    for x in range(n):
        wa = rows_a[x]
        if not wa:
            continue
        row = g.values[x]
        acc += wa * sum(row[y] * rows_b[y] for y in range(n) if rows_b[y])
    return acc


def hecke_fn(f: TorsionFunction, ell: int, k: int) -> TorsionFunction:
    """The weight-k Hecke operator at a prime on torsion functions."""
    n = f.n
    out = TorsionFunction.zero(n)
    lk1 = Fraction(ell) ** (k - 1)
    lk2 = Fraction(ell) ** (k - 2)
    divides = n % ell == 0
    for x in range(n):
        for y in range(n):
            acc = Fraction(0)
            for s in range(n):
                if (ell * s - y) % n == 0:
                    acc += f.values[x][s]
            acc += lk1 * f.values[(ell * x) % n][y]
            if divides:
                for t in range(n):
                    if (ell * t - ell * y) % n == 0:
                        acc -= lk2 * f.values[(ell * x) % n][t]
            out.values[x][y] = acc
    return out


def _inf_poly(k: int, scalar: Fraction, r: Fraction) -> Vk:
    """scalar/(k-1) times ((r x + y)^(k-1) - y^(k-1)) / x, a polynomial."""
    coeffs = [Fraction(0)] * (k - 1)
    if scalar and r:
        c = scalar / (k - 1)
        rp = Fraction(1)
        for i in range(1, k):
            rp *= r
            coeffs[i - 1] = c * comb(k - 1, i) * rp
    return Vk(k, coeffs)


class EisSymbol:
    """Rational period symbol of the weight-k series attached to f.

    Exposes the value on the infinity-to-0 path (`p_mod`), values on
    infinitesimal shifts at infinity (`eval_inf`), and the full cocycle
    gamma -> value on the path from the based cusp at infinity to its
    gamma^-1-translate (`cocycle`).

    The twist and cocycle memo tables are plain dicts whose entries are
    deterministic functions of their keys, so concurrent readers can at
    worst duplicate a computation, never disagree.
    """

    def __init__(self, f: TorsionFunction, k: int):
        if k < 2:
            raise ValueError("weight must be at least 2")
        if k == 2 and f(0, 0) != 0:
            raise ValueError("weight 2 requires the value at (0, 0) to vanish")
        self.f = f
        self.k = k
        self._twists: dict = {}
        self._cocycles: dict = {}

    def _twist_data(self, g: Mat):
        """(p_mod, c_inf) of f|g, keyed by g modulo the level."""
        n = self.f.n
        key = tuple(x % n for x in g)
        hit = self._twists.get(key)
        if hit is not None:
            return hit
        k = self.k
        fg = self.f.act(g) if key != (1 % n, 0, 0, 1 % n) else self.f
        coeffs = []
        for j in range(k - 1):
            m = beta_moment(fg, k - 1 - j, j + 1, minus=True)
            coeffs.append((-1) ** j * comb(k - 2, j) * m)
        data = (Vk(k, coeffs), beta_moment(fg, k, 0, minus=True))
        self._twists[key] = data
        return data

    @property
    def p_mod(self) -> Vk:
        return self._twist_data((1, 0, 0, 1))[0]

    @property
    def c_inf(self) -> Fraction:
        return self._twist_data((1, 0, 0, 1))[1]

    def twist(self, g: Mat) -> "EisSymbol":
        return EisSymbol(self.f.act(g), self.k)

    def eval_inf(self, r) -> Vk:
        """Value on the infinitesimal symbol at infinity from 0 to r."""
        return _inf_poly(self.k, self.c_inf, Fraction(r))

    def _eval_path_to_cusp(self, r: Fraction) -> Vk:
        """Value on the path from the based infinity to pi_r(infinity)."""
        total = Vk.zero(self.k)
        for term in manin_path_infty(r):
            p_mod, c_inf = self._twist_data(term.gamma)
            if term.kind == "mod":
                val = p_mod
            else:
                val = _inf_poly(self.k, c_inf, term.shift)
            if term.gamma != (1, 0, 0, 1):
                val = val.act(minv(term.gamma))
            if term.coeff == -1:
                val = -val
            total = total + val
        return total

    def cocycle(self, g: Mat) -> Vk:
        """Value on the path from pi_inf(0) to g^-1 pi_inf(0)."""
        hit = self._cocycles.get(g)
        if hit is not None:
            return hit
        split = stevens_split(g)
        if split.translation_only:
            out = self.eval_inf(split.shift)
        else:
            head = self._eval_path_to_cusp(split.cusp_base)
            _, c_inf_tw = self._twist_data(split.outer)
            tail = _inf_poly(self.k, c_inf_tw, split.shift).act(g)
            out = head - tail
        self._cocycles[g] = out
        return out

    def is_zero_symbol(self, probes=()) -> bool:
        """True when the stored data and all probe cocycles vanish."""
        if self.p_mod or self.c_inf:
            return False
        return all(not self.cocycle(g) for g in probes)


def eis_symbol(f: TorsionFunction, k: int) -> EisSymbol:
    return EisSymbol(f, k)


def distribution_check(n: int, m: int, point, k: int, probes=()) -> bool:
    """Verify the multiplication-by-m relation at the symbol level.

    For a point of m(Z/NZ)^2, m^(k-2) times the sum of the symbols of
    the indicators of its m-division points must equal the symbol of
    the indicator of the point; by linearity this is the vanishing of
    one combined symbol.
    """
    if n % m:
        raise ValueError("m must divide the level")
    a1, a2 = point[0] % n, point[1] % n
    combined = TorsionFunction.indicator(n, point).scale(-1)
    scale = Fraction(m) ** (k - 2)
    found = False
    for b1 in range(n):
        for b2 in range(n):
            if (m * b1 - a1) % n == 0 and (m * b2 - a2) % n == 0:
                combined = combined + TorsionFunction.indicator(n, (b1, b2)).scale(scale)
                found = True
    if not found:
        raise ValueError("point is not divisible by m at this level")
    return EisSymbol(combined, k).is_zero_symbol(probes)

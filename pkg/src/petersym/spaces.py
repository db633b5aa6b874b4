"""Modular-symbol spaces and boundary symbols over a coset system.

An element of the weight-k symbol space is stored as one coefficient
polynomial per coset of the group in SL2(Z): the value on the coset
translate of the path from 0 to infinity.  The two relations coming
from the elliptic generators of SL2(Z), transported through the coset
action, cut out exactly the group-equivariant homomorphisms; arbitrary
paths are evaluated by a continued-fraction walk through unimodular
steps.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import kernel_basis
from .farey import CuspClass, ExtendedFareySymbol
from .modgroup import (
    ID,
    SIGMA,
    TAU,
    CuspT,
    Mat,
    act,
    cf_decompose,
    cusp_is_infinity,
    minv,
    mmul,
    mneg,
)
from .polyspace import Vk

__all__ = [
    "ModularSymbolSpace",
    "SymbolElement",
    "BoundarySymbol",
    "build_space",
    "boundary_space",
]


def _transport(symbol: ExtendedFareySymbol, g: Mat):
    """(coset index, h) so a symbol value on the g-path is m(index)|h."""
    table = symbol.require_direct_table()
    i, gamma = table.locate(g)
    return i, minv(gamma)


class SymbolElement:
    """One element of Hom_Gamma(Delta_0, V_k), given by its coset values."""

    def __init__(self, space: "ModularSymbolSpace", values):
        self.space = space
        self.values = list(values)

    def value_on_coset_path(self, g: Mat) -> Vk:
        i, h = _transport(self.space.symbol, g)
        return self.values[i].act(h)

    def eval_to_infinity(self, s: CuspT) -> Vk:
        """Value on {infinity, s} = {s} - {infinity}."""
        if cusp_is_infinity(s):
            return Vk.zero(self.space.k)
        out = Vk.zero(self.space.k)
        taus, _, _ = cf_decompose(Fraction(s[0], s[1]))
        for tau in taus[1:]:
            out = out + self.value_on_coset_path(tau)
        return out

    def eval_path(self, r: CuspT, s: CuspT) -> Vk:
        """Value on {r, s} = {s} - {r}."""
        return self.eval_to_infinity(s) - self.eval_to_infinity(r)

    def coset_vector(self):
        vec = []
        for v in self.values:
            vec.extend(v.coeffs)
        return vec

    def __add__(self, other):
        return SymbolElement(self.space, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        return SymbolElement(self.space, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, c):
        return SymbolElement(self.space, [v.scale(c) for v in self.values])


class ModularSymbolSpace:
    def __init__(self, symbol: ExtendedFareySymbol, k: int, basis):
        self.symbol = symbol
        self.k = k
        self.basis: list[SymbolElement] = basis

    def dimension(self) -> int:
        return len(self.basis)

    def element(self, values) -> SymbolElement:
        return SymbolElement(self, values)

    def from_vector(self, vec) -> SymbolElement:
        k = self.k
        n = k - 1
        values = [Vk(k, vec[i * n:(i + 1) * n]) for i in range(len(vec) // n)]
        return SymbolElement(self, values)

    def from_path_evaluator(self, eval_path) -> SymbolElement:
        """Sample an abstract path map on all coset paths."""
        table = self.symbol.require_direct_table()
        values = []
        for rep in table.reps:
            values.append(eval_path(act(rep, (0, 1)), act(rep, (1, 0))))
        return SymbolElement(self, values)

    def coordinates(self, elem: SymbolElement):
        from .exact import solve_in_span
        coords = solve_in_span([b.coset_vector() for b in self.basis], elem.coset_vector())
        if coords is None:
            raise ValueError("element is not in the space")
        return coords


_act_matrix_cache: dict = {}


def _action_matrix(k: int, h: Mat):
    """(k-1)x(k-1) matrix of P -> P|h on monomial coordinates."""
    key = (k, h)
    if key not in _act_matrix_cache:
        cols = [Vk.monomial(k, s).act(h).coeffs for s in range(k - 1)]
        _act_matrix_cache[key] = [
            [cols[s][r] for s in range(k - 1)] for r in range(k - 1)
        ]
    return _act_matrix_cache[key]


def build_space(symbol: ExtendedFareySymbol, k: int) -> ModularSymbolSpace:
    """Solve the coset-transported two-term and three-term relations."""
    if k < 2:
        raise ValueError("weight must be at least 2")
    table = symbol.require_direct_table()
    nc = len(table.reps)
    n = k - 1
    if k % 2 == 1 and symbol.member(mneg(ID)):
        return ModularSymbolSpace(symbol, k, [])

    rows = []
    ncols = nc * n

    def add_relation(parts):
        # parts: list of (coset index, (k-1)x(k-1) matrix or None for identity)
        block = [[Fraction(0)] * ncols for _ in range(n)]
        for idx, mat in parts:
            off = idx * n
            if mat is None:
                for r in range(n):
                    block[r][off + r] += 1
            else:
                for r in range(n):
                    row = block[r]
                    mrow = mat[r]
                    for s in range(n):
                        if mrow[s]:
                            row[off + s] += mrow[s]
        rows.extend(block)

    for i in range(nc):
        rep = table.reps[i]
        j, h = _transport(symbol, mmul(rep, SIGMA))
        add_relation([(i, None), (j, _action_matrix(k, h))])
        j1, h1 = _transport(symbol, mmul(rep, TAU))
        j2, h2 = _transport(symbol, mmul(rep, TAU, TAU))
        add_relation([
            (i, None),
            (j1, _action_matrix(k, h1)),
            (j2, _action_matrix(k, h2)),
        ])

    space = ModularSymbolSpace(symbol, k, [])
    for vec in kernel_basis(rows, ncols):
        space.basis.append(space.from_vector(vec))
    return space


_space_cache: dict = {}


def modular_symbol_space(symbol: ExtendedFareySymbol, k: int) -> ModularSymbolSpace:
    key = (id(symbol), k)
    if key not in _space_cache:
        _space_cache[key] = build_space(symbol, k)
    return _space_cache[key]


def eval_tilde_arc(phi, symbol: ExtendedFareySymbol, tilde_arc) -> Vk:
    """Value of a path map on a (possibly half) arc of the tilde list.

    phi only needs an eval_path(r, s) method; elliptic halves take the
    exact 1/2 and 1/3 combinations through the triangle at the fixed
    point.
    """
    base = tilde_arc.base
    r, s = symbol.arcs[base]
    if tilde_arc.half == "whole":
        return phi.eval_path(r, s)
    g = symbol.glue[base]
    if symbol.mu[base] == 2:
        return phi.eval_path(r, s).scale(Fraction(1, 2))
    t = act(g, r)
    third = Fraction(1, 3)
    if tilde_arc.half == "u":
        return (phi.eval_path(r, t) + phi.eval_path(r, s)).scale(third)
    return (phi.eval_path(r, s) + phi.eval_path(t, s)).scale(third)


class BoundarySymbol:
    """Element of Hom_Gamma(Delta, V_k) supported on cusp classes.

    Stored as one rational coefficient per admissible cusp class; the
    value at a cusp in the class of the reference vertex P with chosen
    matrix g_P (sending infinity to P) is

        coeff * x^(k-2) | g_P^-1 gamma^-1      for the cusp gamma . P.
    """

    def __init__(self, symbol: ExtendedFareySymbol, k: int, coeffs: dict):
        self.symbol = symbol
        self.k = k
        self.coeffs = dict(coeffs)  # CuspClass.vertex -> Fraction

    def value_at(self, s: CuspT) -> Vk:
        cls, gamma = self.symbol.cusp_transporter(s)
        c = self.coeffs.get(cls.vertex, Fraction(0))
        if not c:
            return Vk.zero(self.k)
        vinf = Vk.monomial(self.k, self.k - 2)
        return vinf.act(mmul(minv(cls.g0), minv(gamma))).scale(c)

    def embed(self) -> "EmbeddedBoundary":
        return EmbeddedBoundary(self)


class EmbeddedBoundary:
    """The induced element of Hom_Gamma(Delta_0, V_k)."""

    def __init__(self, boundary: BoundarySymbol):
        self.boundary = boundary
        self.k = boundary.k

    def eval_path(self, r: CuspT, s: CuspT) -> Vk:
        return self.boundary.value_at(s) - self.boundary.value_at(r)


def _class_admits_line(symbol: ExtendedFareySymbol, cls: CuspClass, k: int) -> bool:
    vinf = Vk.monomial(k, k - 2)
    # the honest in-group generator: cls.tau is sign-normalized to the
    # positive translation, which escapes the group at irregular cusps
    gen = cls.tau if cls.regular else mneg(cls.tau)
    stab = mmul(minv(cls.g0), gen, cls.g0)
    if vinf.act(stab) != vinf:
        return False
    if symbol.member(mneg(ID)) and k % 2 == 1:
        return False
    return True


def boundary_space(symbol: ExtendedFareySymbol, k: int) -> list[BoundarySymbol]:
    """One basis boundary symbol per cusp class carrying an invariant line."""
    out = []
    for cls in symbol.cusp_classes():
        if _class_admits_line(symbol, cls, k):
            out.append(BoundarySymbol(symbol, k, {cls.vertex: Fraction(1)}))
    return out

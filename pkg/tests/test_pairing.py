import random
from fractions import Fraction
from math import comb

import pytest

from petersym.dims import dim_cusp_forms_gamma0
from petersym.eisenstein import EisSymbol, TorsionFunction
from petersym.exact import charpoly, rank, solve_in_span
from petersym.farey import (
    base_symbol_sl2z,
    gamma0_group,
    gamma0_symbol,
    subgroup_farey,
)
from petersym.modgroup import EPS, ID, act, madj, minv, mmul
from petersym.orbits import basis_v, orbit_indicator
from petersym.pairing import (
    HeckeContext,
    PairingContext,
    cuspidal_subspace,
    eisenstein_pairing_matrix,
    epsilon_conjugate_cocycle,
    epsilon_conjugate_hom,
    haberland_pair,
    hecke_context,
    hecke_cocycle,
    hecke_matrix,
    hecke_path_map,
    hom_cocycle,
    lambda_coeffs,
    pair,
    pair_alt,
    pair_eis_via_cusps,
    pair_hom,
)
from petersym.polyspace import Vk
from petersym.spaces import boundary_space, modular_symbol_space
from .test_spaces import random_cusp, symbol_for


def ctx_for(n, k):
    return PairingContext(symbol_for(n), k)


GRID = [(1, 12), (2, 2), (3, 4), (5, 2), (6, 4), (11, 2)]


@pytest.mark.parametrize("n,k", GRID)
def test_antisymmetry_and_alt_agreement(n, k):
    sym = symbol_for(n)
    sp = modular_symbol_space(sym, k)
    ctx = PairingContext(sym, k)
    for b1 in sp.basis:
        assert pair_hom(ctx, b1, b1) == 0
        for b2 in sp.basis:
            v = pair_hom(ctx, b1, b2)
            assert v == -pair_hom(ctx, b2, b1)
            assert v == pair_alt(ctx, b1, b2)


@pytest.mark.parametrize("n,k", [(1, 12), (5, 4), (11, 2)])
def test_boundary_images_in_radical(n, k):
    sym = symbol_for(n)
    sp = modular_symbol_space(sym, k)
    ctx = PairingContext(sym, k)
    for b0 in boundary_space(sym, k):
        emb = b0.embed()
        emb_elem = sp.from_path_evaluator(emb.eval_path)
        for b in sp.basis:
            assert pair_hom(ctx, emb, b) == 0
            assert pair_hom(ctx, b, emb_elem) == 0
        eis = EisSymbol(orbit_indicator(basis_v(n, k)[0], n), k)
        assert pair(ctx, eis.cocycle, emb_elem) == pair_eis_via_cusps(sym, eis, b0)


def test_base_point_independence():
    sym = gamma0_symbol(5)
    sp = modular_symbol_space(sym, 4)
    ctx = PairingContext(sym, 4)
    for base in [(1, 0), (0, 1), (1, 2), (-3, 5)]:
        assert pair_hom(ctx, sp.basis[0], sp.basis[1], base) \
            == pair_hom(ctx, sp.basis[0], sp.basis[1])
        assert pair_alt(ctx, sp.basis[0], sp.basis[1], base) \
            == pair_alt(ctx, sp.basis[0], sp.basis[1])


def test_coboundary_invariance():
    rng = random.Random(83)
    for (n, k) in [(1, 12), (11, 2), (5, 4)]:
        sym = symbol_for(n)
        sp = modular_symbol_space(sym, k)
        ctx = PairingContext(sym, k)
        c_vec = Vk(k, [Fraction(rng.randrange(-3, 4)) for _ in range(k - 1)])
        for b1 in sp.basis[:2]:
            coc = hom_cocycle(b1)

            def shifted(g, coc=coc):
                return coc(g) + c_vec.act(g) - c_vec

            for b2 in sp.basis[:3]:
                assert pair(ctx, shifted, b2) == pair(ctx, coc, b2)


def test_farey_symbol_independence_towers():
    base = base_symbol_sl2z()
    g2, _ = subgroup_farey(base, gamma0_group(2))
    g6a, _ = subgroup_farey(g2, gamma0_group(6))
    g3, _ = subgroup_farey(base, gamma0_group(3))
    g6b, _ = subgroup_farey(g3, gamma0_group(6))
    direct = gamma0_symbol(6)
    for k in (2, 4):
        sp = modular_symbol_space(direct, k)
        eis = EisSymbol(orbit_indicator(basis_v(6, k)[0], 6), k)
        for route in (g6a, g6b):
            ctx_a = PairingContext(direct, k)
            ctx_b = PairingContext(route, k)
            for b1 in sp.basis[:3]:
                for b2 in sp.basis[:3]:
                    assert pair_hom(ctx_a, b1, b2) == pair_hom(ctx_b, b1, b2)
                assert pair(ctx_a, eis.cocycle, b1) == pair(ctx_b, eis.cocycle, b1)


@pytest.mark.parametrize("n,k", [(3, 2), (5, 4)])
def test_epsilon_pairing_identity(n, k):
    # Gamma0(N) is stable under the reflection, so both sides live on
    # (independently built) symbols of the same group
    sym = gamma0_symbol(n)
    sp = modular_symbol_space(sym, k)
    ctx = PairingContext(sym, k)
    sign = (-1) ** (k - 1)
    for b1 in sp.basis[:3]:
        coc = hom_cocycle(b1)
        for b2 in sp.basis[:3]:
            lhs = pair(ctx, epsilon_conjugate_cocycle(coc), b2)
            rhs = sign * pair_hom(ctx, b1, epsilon_conjugate_hom(b2))
            assert lhs == rhs
    # double conjugation is the identity
    twice = epsilon_conjugate_hom(epsilon_conjugate_hom(sp.basis[0]))
    rng = random.Random(5)
    for _ in range(6):
        r, s = random_cusp(rng), random_cusp(rng)
        assert twice.eval_path(r, s) == sp.basis[0].eval_path(r, s)


def test_epsilon_pairing_identity_eisenstein():
    n, k = 5, 4
    sym = gamma0_symbol(n)
    sp = modular_symbol_space(sym, k)
    ctx = PairingContext(sym, k)
    f = orbit_indicator(basis_v(n, k)[1], n)
    e = EisSymbol(f, k)
    e_eps = EisSymbol(f.act(EPS), k)
    for b in sp.basis:
        lhs = pair(ctx, e_eps.cocycle, b)
        rhs = pair(ctx, e.cocycle, epsilon_conjugate_hom(b))
        assert lhs == rhs


@pytest.mark.parametrize("n,k,expect", [
    (11, 2, 2), (37, 2, 4), (1, 12, 2), (1, 10, 0), (1, 16, 2), (2, 8, 2),
])
def test_cuspidal_dimensions(n, k, expect):
    _, basis = cuspidal_subspace(n, k)
    assert len(basis) == expect == 2 * dim_cusp_forms_gamma0(n, k)


def test_cuspidal_hecke_stability_and_boundary_intersection():
    space, cusp_basis = cuspidal_subspace(11, 2)
    sym = space.symbol
    vecs = [b.coset_vector() for b in cusp_basis]
    for ell in (2, 3):
        hctx = hecke_context(sym, (1, 0, 0, ell), gamma0_group(11))
        for b in cusp_basis:
            img = space.from_path_evaluator(hecke_path_map(b, hctx).eval_path)
            assert solve_in_span(vecs, img.coset_vector()) is not None
    boundary_vecs = [
        space.from_path_evaluator(b0.embed().eval_path).coset_vector()
        for b0 in boundary_space(sym, 2)
    ]
    joint = vecs + boundary_vecs
    assert rank(joint) == len(vecs) + rank(boundary_vecs)


def test_t2_charpoly_on_11_2():
    space, cusp_basis = cuspidal_subspace(11, 2)
    hctx = hecke_context(space.symbol, (1, 0, 0, 2), gamma0_group(11))
    vecs = [b.coset_vector() for b in cusp_basis]
    cols = []
    for b in cusp_basis:
        img = space.from_path_evaluator(hecke_path_map(b, hctx).eval_path)
        cols.append(solve_in_span(vecs, img.coset_vector()))
    mat = [[cols[j][i] for j in range(2)] for i in range(2)]
    # (x + 2)^2, with -2 the q^2 coefficient of the weight-2 eta product
    assert charpoly(mat) == [Fraction(1), Fraction(4), Fraction(4)]
    from petersym.qexp import eta_product_qexp

    coeffs = eta_product_qexp([(1, 2), (11, 2)], 4)
    assert coeffs[1] == -2


@pytest.mark.parametrize("ell", [2, 3, 5])
@pytest.mark.parametrize("n,k", [(1, 12), (5, 4), (11, 2)])
def test_hecke_adjointness(n, k, ell):
    sym = symbol_for(n)
    sp = modular_symbol_space(sym, k)
    ctx = PairingContext(sym, k)
    alpha = (1, 0, 0, ell)
    h_fwd = hecke_context(sym, alpha, gamma0_group(n))
    h_bwd = hecke_context(sym, madj(alpha), gamma0_group(n))
    expected_degree = ell + 1 if n % ell else ell
    assert h_fwd.degree() == expected_degree
    for b1 in sp.basis[:2]:
        for b2 in sp.basis[:2]:
            lhs = pair(ctx, hecke_cocycle(hom_cocycle(b1), h_fwd), b2)
            rhs = pair(ctx, hom_cocycle(b1),
                       sp.from_path_evaluator(hecke_path_map(b2, h_bwd).eval_path))
            assert lhs == rhs
    eis = EisSymbol(orbit_indicator(basis_v(n, k)[0], n), k)
    for b2 in sp.basis[:2]:
        lhs = pair(ctx, hecke_cocycle(eis.cocycle, h_fwd), b2)
        rhs = pair(ctx, eis.cocycle,
                   sp.from_path_evaluator(hecke_path_map(b2, h_bwd).eval_path))
        assert lhs == rhs


def test_hecke_identity_matrix_is_identity():
    sym = gamma0_symbol(5)
    sp = modular_symbol_space(sym, 4)
    hctx = hecke_context(sym, ID, gamma0_group(5))
    assert hctx.degree() == 1
    for b in sp.basis:
        img = space_img = sp.from_path_evaluator(hecke_path_map(b, hctx).eval_path)
        assert img.coset_vector() == b.coset_vector()


def test_hecke_commutation():
    sp = modular_symbol_space(gamma0_symbol(5), 4)
    m2 = hecke_matrix(sp, 2)
    m3 = hecke_matrix(sp, 3)

    def matmul(a, b):
        size = len(a)
        return [[sum(a[i][t] * b[t][j] for t in range(size)) for j in range(size)]
                for i in range(size)]

    assert matmul(m2, m3) == matmul(m3, m2)


def test_level_one_eisenstein_eigenvalue():
    sym = base_symbol_sl2z()
    for k in (4, 12):
        sp = modular_symbol_space(sym, k)
        ctx = PairingContext(sym, k)
        e = EisSymbol(TorsionFunction.constant(1), k)
        for ell in (2, 3):
            h = hecke_context(sym, (1, 0, 0, ell), gamma0_group(1))
            tc = hecke_cocycle(e.cocycle, h)
            for b in sp.basis:
                assert pair(ctx, tc, b) == (1 + ell ** (k - 1)) * pair(ctx, e.cocycle, b)


def test_haberland_closed_form():
    sym = base_symbol_sl2z()
    for k in (12, 16):
        sp = modular_symbol_space(sym, k)
        ctx = PairingContext(sym, k)
        for b1 in sp.basis:
            m1 = b1.eval_path((1, 0), (0, 1))
            for b2 in sp.basis:
                m2 = b2.eval_path((1, 0), (0, 1))
                assert pair_hom(ctx, b1, b2) == haberland_pair(m1, Vk.zero(k), m2)
        e = EisSymbol(TorsionFunction.constant(1), k)
        for b2 in sp.basis:
            m2 = b2.eval_path((1, 0), (0, 1))
            expected = haberland_pair(e.p_mod, e.eval_inf(1), m2)
            assert pair(ctx, e.cocycle, b2) == expected


def test_lambda_coefficients_identity():
    sym = base_symbol_sl2z()
    for k in (12, 16):
        sp = modular_symbol_space(sym, k)
        ctx = PairingContext(sym, k)
        e = EisSymbol(TorsionFunction.constant(1), k)
        lam = lambda_coeffs(k)
        for b in sp.basis:
            mod = b.eval_path((1, 0), (0, 1))
            r = [mod.coeffs[j] / comb(k - 2, j) for j in range(k - 1)]
            rhs = sum(l * r[m] for l, m in zip(lam, range(0, k - 1, 2))) / 3
            assert pair(ctx, e.cocycle, b) == rhs


def test_odd_coefficient_relation_on_cuspidal():
    _, cusp_basis = cuspidal_subspace(1, 12)
    for b in cusp_basis:
        mod = b.eval_path((1, 0), (0, 1))
        assert sum(mod.coeffs[m] for m in range(1, 11, 2)) == 0


@pytest.mark.parametrize("n", list(range(1, 31)))
def test_eisenstein_boundary_nondegenerate(n):
    for k in (2, 4):
        sym = symbol_for(n)
        bnds = boundary_space(sym, k)
        rows = []
        for t in basis_v(n, k):
            eis = EisSymbol(orbit_indicator(t, n), k)
            rows.append([pair_eis_via_cusps(sym, eis, b0) for b0 in bnds])
        assert rank(rows) == len(basis_v(n, k))


def test_noncusp_route_matches_direct_pairing():
    from petersym.pairing import noncusp_pair

    for (n, k) in [(11, 2), (5, 4), (3, 4)]:
        sym = gamma0_symbol(n)
        sp = modular_symbol_space(sym, k)
        ctx = PairingContext(sym, k)
        for b0 in boundary_space(sym, k):
            emb_elem = sp.from_path_evaluator(b0.embed().eval_path)
            for b in sp.basis[:3]:
                coc = hom_cocycle(b)
                assert pair(ctx, coc, emb_elem) == noncusp_pair(sym, coc, b0)
            eis = EisSymbol(orbit_indicator(basis_v(n, k)[0], n), k)
            assert pair(ctx, eis.cocycle, emb_elem) \
                == noncusp_pair(sym, eis.cocycle, b0)


def test_hecke_adjoint_check_wrapper():
    from petersym.pairing import hecke_adjoint_check

    sym = gamma0_symbol(5)
    sp = modular_symbol_space(sym, 4)
    lhs, rhs = hecke_adjoint_check(
        sym, 4, (1, 0, 0, 3), gamma0_group(5),
        hom_cocycle(sp.basis[0]), sp.basis[1],
    )
    assert lhs == rhs
    lhs, rhs = hecke_adjoint_check(
        sym, 4, ID, gamma0_group(5), hom_cocycle(sp.basis[0]), sp.basis[1],
    )
    assert lhs == rhs == pair_hom(PairingContext(sym, 4), sp.basis[0], sp.basis[1])

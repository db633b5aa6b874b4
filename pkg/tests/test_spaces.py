import random
from fractions import Fraction

import pytest

from petersym.dims import dim_modular_symbols_gamma0
from petersym.farey import base_symbol_sl2z, gamma0_symbol
from petersym.modgroup import ID, act, cusp, madj, mmul
from petersym.polyspace import Vk
from petersym.spaces import boundary_space, build_space, modular_symbol_space


def symbol_for(n):
    return gamma0_symbol(n) if n > 1 else base_symbol_sl2z()


def random_group_elt(sym, rng, length=7):
    g = ID
    for _ in range(length):
        h = rng.choice(sym.glue)
        g = mmul(g, h if rng.random() < 0.5 else madj(h))
    return g


def random_cusp(rng):
    return cusp(rng.randrange(-15, 16), rng.randrange(0, 16) or 1)


@pytest.mark.parametrize("n,k", [
    (1, 12), (1, 10), (11, 2), (2, 8), (5, 4), (6, 2), (37, 2),
])
def test_dimension_matches_classical(n, k):
    sp = modular_symbol_space(symbol_for(n), k)
    assert sp.dimension() == dim_modular_symbols_gamma0(n, k)


def test_dimension_grid():
    for n in range(1, 16):
        for k in (2, 4, 6):
            sp = modular_symbol_space(symbol_for(n), k)
            assert sp.dimension() == dim_modular_symbols_gamma0(n, k), (n, k)


def test_odd_weight_with_minus_id_gives_zero():
    assert build_space(base_symbol_sl2z(), 3).dimension() == 0
    assert build_space(gamma0_symbol(5), 5).dimension() == 0


def test_eval_path_basic_identities():
    rng = random.Random(31)
    for (n, k) in [(1, 12), (11, 2), (5, 4)]:
        sym = symbol_for(n)
        sp = modular_symbol_space(sym, k)
        for phi in sp.basis:
            r, s, t = (random_cusp(rng) for _ in range(3))
            assert not phi.eval_path(r, r)
            assert phi.eval_path(r, s) + phi.eval_path(s, t) == phi.eval_path(r, t)
            g = random_group_elt(sym, rng)
            lhs = phi.eval_path(act(g, r), act(g, s))
            assert lhs == phi.eval_path(r, s).act(madj(g))


def test_basis_vectors_reproduce_their_coset_values():
    sp = modular_symbol_space(gamma0_symbol(6), 2)
    table = sp.symbol.require_direct_table()
    for phi in sp.basis:
        for i, rep in enumerate(table.reps):
            assert phi.eval_path(act(rep, (0, 1)), act(rep, (1, 0))) == phi.values[i]


def test_coordinates_roundtrip():
    sp = modular_symbol_space(gamma0_symbol(11), 2)
    combo = sp.basis[0].scale(Fraction(2, 3)) + sp.basis[2].scale(Fraction(-5))
    coords = sp.coordinates(combo)
    assert coords == [Fraction(2, 3), Fraction(0), Fraction(-5)]


def test_boundary_space_dimensions():
    assert len(boundary_space(gamma0_symbol(11), 2)) == 2
    assert len(boundary_space(base_symbol_sl2z(), 12)) == 1
    assert len(boundary_space(base_symbol_sl2z(), 5)) == 0
    assert len(boundary_space(gamma0_symbol(4), 4)) == 3


def test_boundary_values_and_embedding():
    sym = gamma0_symbol(11)
    k = 4
    b_inf, b_zero = boundary_space(sym, k)
    # the class reference values are (p x + q y)^(k-2) at the vertex p/q
    assert b_inf.value_at((1, 0)) == Vk.monomial(k, k - 2)
    assert not b_inf.value_at((0, 1))
    emb = b_inf.embed()
    rng = random.Random(7)
    for _ in range(10):
        r, s, t = (random_cusp(rng) for _ in range(3))
        assert emb.eval_path(r, s) + emb.eval_path(s, t) == emb.eval_path(r, t)
        g = random_group_elt(sym, rng)
        assert emb.eval_path(act(g, r), act(g, s)) == emb.eval_path(r, s).act(madj(g))


def test_boundary_embed_weight2_constants_die():
    sym = gamma0_symbol(11)
    b1, b2 = boundary_space(sym, 2)
    const = b1.__class__(sym, 2, {
        v: Fraction(1) for v in list(b1.coeffs) + list(b2.coeffs)
    })
    emb = const.embed()
    rng = random.Random(11)
    for _ in range(10):
        assert not emb.eval_path(random_cusp(rng), random_cusp(rng))


def test_space_elements_satisfy_two_and_three_term_relations():
    from petersym.modgroup import SIGMA, TAU

    sp = modular_symbol_space(gamma0_symbol(5), 4)
    table = sp.symbol.require_direct_table()
    for phi in sp.basis:
        for rep in table.reps:
            a = phi.value_on_coset_path(rep)
            b = phi.value_on_coset_path(mmul(rep, SIGMA))
            assert not (a + b)
            c = phi.value_on_coset_path(mmul(rep, TAU))
            d = phi.value_on_coset_path(mmul(rep, TAU, TAU))
            assert not (a + c + d)


def test_elliptic_half_arcs_sum_to_whole_arc():
    from petersym.spaces import eval_tilde_arc

    # Gamma0(7) has two order-3 arcs; the base symbol has one of each order
    for sym, k in [(gamma0_symbol(7), 4), (base_symbol_sl2z(), 12)]:
        sp = modular_symbol_space(sym, k)
        tilde = sym.tilde()
        for phi in sp.basis:
            for ta in tilde:
                if ta.half != "u":
                    continue
                partner = tilde[ta.star]
                whole = phi.eval_path(*sym.arcs[ta.base])
                u = eval_tilde_arc(phi, sym, ta)
                v = eval_tilde_arc(phi, sym, partner)
                assert u + v == whole
                if sym.mu[ta.base] == 2:
                    assert u == v


def test_eval_path_invariance_hundred_samples():
    rng = random.Random(37)
    samples = 0
    while samples < 100:
        n, k = rng.choice([(1, 12), (11, 2), (5, 4), (6, 2)])
        sym = symbol_for(n)
        sp = modular_symbol_space(sym, k)
        if not sp.basis:
            continue
        phi = rng.choice(sp.basis)
        r, s = random_cusp(rng), random_cusp(rng)
        g = random_group_elt(sym, rng)
        assert phi.eval_path(act(g, r), act(g, s)) == phi.eval_path(r, s).act(madj(g))
        samples += 1

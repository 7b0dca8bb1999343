import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gtiframes.groups import (
    GroupFunction,
    InvalidInput,
    delta,
    make_group,
    random_function,
    random_subgroup,
    subgroup_from_generators,
    whole_group,
)
from gtiframes.oracle import frame_operator, gabor_frame_operator, is_dual_bruteforce, is_dual_gabor_bruteforce
from gtiframes.systems import (
    GaborSystem,
    Generator,
    GtiSystem,
    Layer,
    check_compatible,
    gabor_to_ti,
    modulate,
    random_system,
    translate,
)
from strategies import factor_lists


def test_translate_examples():
    G = make_group([4])
    f = random_function(G, np.random.default_rng(0))
    assert np.array_equal(translate(f, (0,)).values, f.values)
    assert np.array_equal(translate(delta(G), (1,)).values, delta(G, (1,)).values)
    assert translate(f, (3,)).norm() == pytest.approx(f.norm())


def test_modulate_examples():
    G = make_group([4])
    f = random_function(G, np.random.default_rng(1))
    assert np.array_equal(modulate(f, (0,)).values, f.values)
    assert np.array_equal(modulate(delta(G), (1,)).values, delta(G).values)


@given(factor_lists(), st.integers(0, 2**32 - 1))
def test_commutator_relation(factors, seed):
    rng = np.random.default_rng(seed)
    G = make_group(factors)
    f = random_function(G, rng)
    a = G.element_at(int(rng.integers(G.order)))
    chi = G.element_at(int(rng.integers(G.order)))
    lhs = translate(modulate(f, chi), a).values
    rhs = np.conj(G.pairing(chi, a)) * modulate(translate(f, a), chi).values
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_systems_reject_mismatched_layers():
    G = make_group([6])
    H = subgroup_from_generators(G, [(2,)])
    g = Generator(delta(G))
    a = GtiSystem(G, [Layer(H, [g])])
    b = GtiSystem(G, [Layer(whole_group(G), [g])])
    with pytest.raises(InvalidInput):
        check_compatible(a, b)
    with pytest.raises(InvalidInput):
        check_compatible(a, GtiSystem(G, [Layer(H, [g, g])]))
    with pytest.raises(InvalidInput):
        check_compatible(a, GtiSystem(G, [Layer(H, [Generator(delta(G), 2)])]))
    with pytest.raises(InvalidInput):
        Generator(delta(G), 0)


def _random_gabor(rng, with_dual: bool):
    d = int(rng.choice([4, 6, 8, 12]))
    G = make_group([d])
    lattice = random_subgroup(G, rng)
    mods = random_subgroup(G.dual, rng)
    g = random_function(G, rng)
    sys = GaborSystem(G, g, lattice, mods)
    if with_dual:
        S = gabor_frame_operator(sys, which_h="g")
        if np.linalg.matrix_rank(S) == d:
            return sys.with_h(GroupFunction(G, np.linalg.solve(S, g.values)))
    return sys.with_h(random_function(G, rng))


def test_trivial_window_full_lattice():
    G = make_group([6])
    g = delta(G)
    sys = GaborSystem(G, g, whole_group(G), whole_group(G.dual), g)
    ti = gabor_to_ti(sys, "time")
    S = frame_operator(ti)
    np.testing.assert_allclose(S, g.norm_sq() * np.eye(6), atol=1e-12)


def test_stft_inversion_analogue():
    # full lattice on Z_4 with a unit-norm window is Parseval
    G = make_group([4])
    g = random_function(G, np.random.default_rng(5))
    g = g * (1 / g.norm())
    sys = GaborSystem(G, g, whole_group(G), whole_group(G.dual), g)
    assert is_dual_gabor_bruteforce(sys, 1e-12).passed
    # and more generally <g, h> = 1 suffices
    h = random_function(G, np.random.default_rng(6))
    h = h * (1 / np.vdot(g.values, h.values))
    assert is_dual_gabor_bruteforce(sys.with_h(h), 1e-10).passed


def test_route_invariance(rng):
    for i in range(100):
        sys = _random_gabor(rng, with_dual=i % 2 == 0)
        raw = is_dual_gabor_bruteforce(sys, 1e-10).passed
        for route in ("time", "frequency"):
            ti_g = gabor_to_ti(sys, route, "g")
            ti_h = gabor_to_ti(sys, route, "h")
            assert is_dual_bruteforce(ti_g, ti_h, 1e-10).passed == raw


def test_unknown_route():
    G = make_group([4])
    sys = GaborSystem(G, delta(G), whole_group(G), whole_group(G.dual))
    with pytest.raises(InvalidInput):
        gabor_to_ti(sys, "sideways")
    with pytest.raises(InvalidInput):
        sys.window("h")


@given(factor_lists(max_order=36), st.integers(0, 2**32 - 1))
def test_translation_invariance_of_single_layer(factors, seed):
    rng = np.random.default_rng(seed)
    G = make_group(factors)
    sys = random_system(G, rng, max_layers=1)
    H = sys.layers[0].translations
    gamma = H.elements[int(rng.integers(H.order))]
    moved = sys.map_generators(lambda f: translate(f, gamma))
    assert np.abs(frame_operator(moved) - frame_operator(sys)).max() <= 1e-12 * max(1.0, np.abs(frame_operator(sys)).max())

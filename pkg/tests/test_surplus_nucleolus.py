import json
from fractions import Fraction as F

import numpy as np
import pytest

from cases import EX1, EX2, EX3, ex3_published_profile, frac, random_instance
from sigames import (
    CapExceeded,
    CostGame,
    EmptyCore,
    NotInCore,
    NotInSurplusCore,
    PISituation,
    build_game,
    build_pi_situation,
    core_membership,
    core_vertex,
    core_via_surplus,
    minimum_unitary_prices,
    nucleolus,
    pi_owen_point,
    profile_game,
    surplus_game,
    surplus_of_core,
    surplus_zero_equivalence,
)


def sorted_excesses(game, x):
    return sorted(
        game(m) - sum(x[i] for i in range(game.n) if m >> i & 1) for m in range(1, game.grand)
    )


def test_two_player_nucleolus_splits_savings():
    assert nucleolus(CostGame.from_values(2, (3, 3, 4))) == (2, 2)
    assert nucleolus(CostGame.from_values(2, (5, 9, 10))) == (3, 7)
    assert nucleolus(CostGame.from_values(1, (7,))) == (7,)


def test_nucleolus_of_empty_core_game():
    with pytest.raises(EmptyCore):
        nucleolus(CostGame.from_values(2, (1, 1, 3)))


def test_nucleolus_player_cap():
    with pytest.raises(CapExceeded):
        nucleolus(CostGame.from_values(2, (1, 1, 2)), max_players=1)


def test_nucleolus_maximizes_sorted_excesses():
    rng = np.random.default_rng(6)
    for _ in range(25):
        game = build_game(random_instance(rng, 3, 2))[0]
        eta = nucleolus(game)
        assert core_membership(game, eta)
        best = sorted_excesses(game, eta)
        for _ in range(10):
            other = core_vertex(game, rng.integers(-3, 4, size=3).tolist())
            assert sorted_excesses(game, other) <= best


def test_published_counterexample_surplus_chain():
    profile = ex3_published_profile()
    assert profile_game(profile).values == (46, 71, 115)
    assert minimum_unitary_prices(profile) == frac(0, "21/11", "5/2")
    sg = surplus_game(EX3, profile)
    assert sg.values == frac("21/11", "46/11", "45/11")
    eta = nucleolus(sg)
    assert eta == frac("10/11", "35/11")
    pi = build_pi_situation(EX3, profile, eta)
    assert pi.prices == frac(0, "21/11", "5/2", 1)
    assert pi.demand[0] == frac(0, 10, 10, "10/11")
    owen = pi_owen_point(pi)
    assert owen == (45, 70) == nucleolus(profile_game(profile))
    assert surplus_of_core(EX3, profile, owen) == eta


def test_solver_counterexample_surplus_chain():
    # with the solver's optimal plans c({1}) = 45 and player 1 prefers period 3
    game, profile = build_game(EX3)
    assert minimum_unitary_prices(profile) == frac(0, "21/11", "7/4")
    sg = surplus_game(EX3, profile)
    assert sg.values == frac("185/22", "46/11", "255/22")
    eta = nucleolus(sg)
    assert eta == frac("87/11", "81/22")
    assert core_via_surplus(EX3, profile, eta) == frac("89/2", "141/2") == nucleolus(game)


def test_pi_json_schema():
    profile = ex3_published_profile()
    pi = build_pi_situation(EX3, profile, frac("10/11", "35/11"))
    raw = json.loads(pi.to_json())
    assert raw["T"] == 4
    assert raw["players"][0]["d"] == [0, 10, 10, "10/11"]
    assert raw["players"][0]["k"] == [0, 0, 0, 0]
    assert raw["players"][0]["h"][0] == 1 + EX3.total_cost_mass()
    assert PISituation.from_dict(raw) == pi


def test_alpha_outside_surplus_core_rejected():
    profile = ex3_published_profile()
    with pytest.raises(NotInSurplusCore):
        build_pi_situation(EX3, profile, (3, F(12, 11)))
    with pytest.raises(NotInCore):
        surplus_of_core(EX3, profile, (50, 65))


def test_surplus_is_non_negative_and_zero_equivalence_holds():
    for inst in (EX1, EX2, EX3):
        _, profile = build_game(inst)
        assert all(v >= 0 for v in surplus_game(inst, profile).values)
        assert surplus_zero_equivalence(inst, profile)
    assert surplus_zero_equivalence(EX3, ex3_published_profile())


def test_forward_and_inverse_maps_are_inverse():
    rng = np.random.default_rng(10)
    for _ in range(20):
        inst = random_instance(rng, 3, 3)
        game, profile = build_game(inst)
        sg = surplus_game(inst, profile)
        alpha = core_vertex(sg, rng.integers(-2, 3, size=3).tolist())
        x = core_via_surplus(inst, profile, alpha)
        assert core_membership(game, x)
        assert surplus_of_core(inst, profile, x) == alpha

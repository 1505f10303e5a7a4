import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import EX1, EX2
from sigames import (
    EmptyCoalition,
    NegativeCost,
    NegativeDemand,
    ShapeMismatch,
    SIInstance,
    ValidationError,
    coalition_params,
    make_instance,
    mask_of,
    validate,
)
from sigames.instance import coalitions, format_rational, label, members, to_rational


def test_example_players_validate():
    assert EX1.n == 3 and EX1.T == 2
    assert EX1.demand[0] == (2, 1)
    assert EX1.hold[0] == (6, 0)  # short row padded for the unused last period


def test_negative_demand_names_player_and_period():
    with pytest.raises(NegativeDemand) as err:
        make_instance([[1, 1], [1, -1]], [[1, 1]] * 2, [[0]] * 2, [[0]] * 2, [[1, 1]] * 2)
    assert (err.value.player, err.value.period) == (2, 2)


def test_negative_cost_names_field():
    with pytest.raises(NegativeCost) as err:
        make_instance([[1, 1]], [[1, 1]], [[-3]], [[0]], [[1, 1]])
    assert (err.value.player, err.value.period, err.value.field) == (1, 1, "hold")


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        make_instance([[1, 1]], [[1, 1, 1]], [[0]], [[0]], [[1, 1]])
    with pytest.raises(ShapeMismatch):
        validate({"n": 2, "T": 1, "players": [{"d": [1], "p": [1], "h": [], "b": [], "k": [1]}]})
    with pytest.raises(ValidationError):
        validate([1, 2, 3])


def test_validation_errors_are_value_errors():
    with pytest.raises(ValueError):
        make_instance([[-1]], [[1]], [[]], [[]], [[1]])


def test_fractional_demand_rejected_but_fractional_costs_kept():
    with pytest.raises(ValidationError):
        make_instance([["1/2"]], [[1]], [[]], [[]], [[1]])
    inst = make_instance([[1]], [["3/2"]], [[]], [[]], [["1/2"]])
    assert inst.prod[0][0] == F(3, 2) and inst.setup[0][0] == F(1, 2)


def test_non_integral_float_rejected():
    with pytest.raises(ValidationError):
        to_rational(0.1)


def test_json_round_trip():
    text = EX2.to_json()
    assert SIInstance.from_json(text) == EX2
    raw = json.loads(text)
    assert raw["n"] == 3 and raw["T"] == 3 and raw["players"][0]["k"] == [3, 1, 5]


def test_format_rational():
    assert format_rational(F(4, 2)) == 2
    assert format_rational(F(-3, 4)) == "-3/4"


def test_coalition_params_example():
    params = coalition_params(EX1, mask_of([1, 2]))
    assert params.demand == (10, 3)
    assert params.prod == (9, 6)
    assert params.hold[0] == 6 and params.backlog[0] == 4
    assert params.setup == (6, 8)
    grand = coalition_params(EX2, EX2.grand)
    assert grand.demand == (5, 5, 5) and grand.prod == (1, 1, 1) and grand.setup == (1, 1, 5)


def test_coalition_helpers():
    assert members(0b101, 3) == (0, 2)
    assert mask_of([1, 3]) == 0b101
    assert label(0b101) == "{1,3}"
    assert list(coalitions(2)) == [1, 2, 3]
    with pytest.raises(EmptyCoalition):
        coalition_params(EX1, 0)
    with pytest.raises(ValidationError):
        coalition_params(EX1, 8)


def test_single_player_coalition_is_the_player():
    params = coalition_params(EX1, 1)
    assert params.demand == EX1.demand[0] and params.prod == EX1.prod[0]


row = st.lists(st.integers(0, 20), min_size=3, max_size=3)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(row, row, row, row, row), min_size=2, max_size=4))
def test_params_monotone_in_coalition(players):
    inst = make_instance(*[[p[f] for p in players] for f in range(5)])
    for s in coalitions(inst.n):
        small = coalition_params(inst, s)
        for r in coalitions(inst.n):
            if s & r != s:
                continue
            big = coalition_params(inst, r)
            assert all(a <= b for a, b in zip(small.demand, big.demand))
            for f in ("prod", "hold", "backlog", "setup"):
                assert all(a >= b for a, b in zip(getattr(small, f), getattr(big, f)))

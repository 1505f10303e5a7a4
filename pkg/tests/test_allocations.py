from fractions import Fraction as F

import numpy as np

from cases import EX1, EX2, EX3, ex3_published_profile, frac, sparse_instance
from sigames import (
    BetaCertificate,
    NoCertificate,
    beta_certificate,
    build_game,
    core_membership,
    cost_gaps,
    price_dominance_check,
    profile_prices,
    unitary_owen_point,
    unitary_prices,
)


def test_example_unitary_prices_and_point():
    game, profile = build_game(EX1)
    assert profile_prices(profile, 7) == (F(53, 10), F(83, 10))
    theta = unitary_owen_point(EX1, profile.grand_plan)
    assert theta == (F(189, 10), 59, F(401, 10))
    assert core_membership(game, theta)


def test_two_plans_two_points():
    game, profile = build_game(EX2)
    assert profile_prices(profile, 7) == (F(6, 5), F(11, 10), F(21, 10))
    assert unitary_owen_point(EX2, profile.grand_plan) == frac("33/5", "28/5", "49/5")
    assert price_dominance_check(profile)
    alt = profile.with_plan(7, (1, 2, 3))
    theta = unitary_owen_point(EX2, alt.grand_plan)
    assert theta == frac("34/5", "28/5", "48/5")
    assert core_membership(game, theta)


def test_prices_price_the_plan():
    for inst in (EX1, EX2, EX3):
        _, profile = build_game(inst)
        for mask in range(1, 1 << inst.n):
            y = profile_prices(profile, mask)
            d = profile.coalition(mask).demand
            assert sum(a * b for a, b in zip(y, d)) == profile.plan(mask).cost


def test_zero_demand_periods_price_zero():
    _, profile = build_game(EX3)
    assert unitary_prices(profile.coalition(2), profile.plan(2)) == (0, F(71, 35), 0)


def test_counterexample_dominance_fails():
    _, profile = build_game(EX3)
    report = price_dominance_check(profile)
    assert not report and report.violation == (1, 3)
    assert unitary_owen_point(EX3, profile.grand_plan) == (F(530, 11), F(735, 11))


def test_published_counterexample_prices():
    profile = ex3_published_profile()
    assert profile_prices(profile, 1) == (0, F(21, 10), F(5, 2))
    assert profile_prices(profile, 2) == (0, F(71, 35), 0)
    assert profile_prices(profile, 3) == (0, F(21, 11), F(32, 11))


def test_cost_gaps_antisymmetric():
    _, profile = build_game(EX2)
    for s in range(1, 8):
        for r in range(1, 8):
            assert cost_gaps(profile, s, r) == tuple(-v for v in cost_gaps(profile, r, s))


def test_certificate_rows_alternate_plan():
    _, profile = build_game(EX2)
    cert = beta_certificate(profile.with_plan(7, (1, 2, 3)))
    assert isinstance(cert, BetaCertificate)
    assert cert.row(0b011).total == F(7, 10)
    published = {
        0b001: ("-4/5", "3/5", 0),
        0b010: ("-8/5", "-9/5", -2),
        0b100: ("-8/5", "-9/5", -6),
        0b011: ("3/10", "4/10", 0),
        0b101: ("3/10", "4/10", 0),
        0b110: ("-16/5", "-18/5", -8),
    }
    for mask, betas in published.items():
        assert tuple(cert.row(mask).betas[t] for t in (1, 2, 3)) == frac(*betas)
    # the published total for {2,3} reads -27/5, but its entries sum to -74/5
    assert cert.row(0b110).total == F(-74, 5)
    lines = cert.to_csv().splitlines()
    assert lines[0] == "coalition,period,beta,bound"


def test_certificate_fails_on_counterexample():
    for profile in (build_game(EX3)[1], ex3_published_profile()):
        cert = beta_certificate(profile)
        assert isinstance(cert, NoCertificate) and not cert
        assert cert.witness.mask == 1 and cert.witness.total > 1
    assert beta_certificate(build_game(EX3)[1]).witness.betas == {2: F(40, 33)}
    assert beta_certificate(ex3_published_profile()).witness.betas == {2: F(25, 22)}


def test_certificate_identity():
    # sum_t beta_t k(S) = theta(S) - c(S) + k(S) for every proper coalition
    rng = np.random.default_rng(8)
    for _ in range(40):
        inst = sparse_instance(rng, 3, 3)
        game, profile = build_game(inst)
        theta = unitary_owen_point(inst, profile.grand_plan)
        cert = beta_certificate(profile)
        for row in cert.rows:
            paid = sum(theta[i] for i in range(3) if row.mask >> i & 1)
            assert row.setup_total - row.slack == paid - game(row.mask) + row.setup_total


def test_certificate_matches_core_membership():
    rng = np.random.default_rng(12)
    outside = 0
    for _ in range(150):
        inst = sparse_instance(rng, int(rng.integers(2, 4)), int(rng.integers(2, 5)))
        game, profile = build_game(inst)
        member = core_membership(game, unitary_owen_point(inst, profile.grand_plan)).is_member
        assert bool(beta_certificate(profile)) == member
        outside += not member
    assert outside > 0

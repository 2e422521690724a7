"""Action validity catalog (error codes 1..11), execution effects, and the
no-mutation guarantee for invalid actions."""
from __future__ import annotations

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from towermind.constants import (
    ERR_ASSEMBLY_COORDS,
    ERR_BUILD_GOLD,
    ERR_BUILD_OCCUPIED,
    ERR_HERO_DEAD,
    ERR_HERO_UPGRADE_GOLD,
    ERR_NONE,
    ERR_REINFORCE_COOLDOWN,
    ERR_SELL_MISSING,
    ERR_SHOW_RANGE_MISSING,
    ERR_TOWER_COORDS,
    ERR_UPGRADE_GOLD,
    ERR_UPGRADE_MISSING,
)
from towermind.rng import Xoshiro256
from towermind.sim.actions import Action, execute, find_tower_point, validate

from helpers import make_engine, make_level, state_fingerprint

POINT = (0.0, 0.6)  # the scenario level's single tower point


def test_error_1_build_on_occupied():
    eng = make_engine()
    execute(eng, Action(*POINT, 0))
    assert validate(eng, Action(*POINT, 1)) == ERR_BUILD_OCCUPIED


def test_error_2_build_without_gold():
    eng = make_engine(make_level(initial_gold=50))
    assert validate(eng, Action(*POINT, 0)) == ERR_BUILD_GOLD


def test_error_3_upgrade_nonexistent():
    eng = make_engine()
    assert validate(eng, Action(*POINT, 3)) == ERR_UPGRADE_MISSING


def test_error_4_upgrade_without_gold():
    eng = make_engine()
    execute(eng, Action(*POINT, 0))
    eng.state.gold = 10
    assert validate(eng, Action(*POINT, 3)) == ERR_UPGRADE_GOLD


def test_error_5_sell_nonexistent():
    eng = make_engine()
    assert validate(eng, Action(*POINT, 4)) == ERR_SELL_MISSING


def test_error_6_coords_outside_every_bounding_box():
    eng = make_engine()
    for c in (0, 1, 2, 3, 4, 5):
        assert validate(eng, Action(2.0, -2.0, c)) == ERR_TOWER_COORDS


def test_error_7_assembly_outside_knight_tower_range():
    eng = make_engine()
    assert validate(eng, Action(0.0, 0.1, 7)) == ERR_ASSEMBLY_COORDS  # no tower yet
    execute(eng, Action(*POINT, 2))
    assert validate(eng, Action(0.0, 0.1, 7)) == ERR_NONE     # 0.5 away, radius 1.0
    assert validate(eng, Action(0.0, 2.0, 7)) == ERR_ASSEMBLY_COORDS  # 1.4 away


def test_error_8_reinforcements_on_cooldown():
    eng = make_engine()
    execute(eng, Action(1.0, 1.0, 8))
    assert validate(eng, Action(1.0, 1.0, 8)) == ERR_REINFORCE_COOLDOWN


def test_error_9_dead_hero_blocks_9_10_11():
    eng = make_engine()
    eng._kill_hero(eng.state)
    for c in (9, 10, 11):
        assert validate(eng, Action(0.0, 0.0, c)) == ERR_HERO_DEAD


def test_error_10_hero_upgrade_without_gold():
    eng = make_engine(make_level(initial_gold=499))
    assert validate(eng, Action(0.0, 0.0, 11)) == ERR_HERO_UPGRADE_GOLD


def test_error_11_show_range_on_unbuilt_point():
    eng = make_engine()
    assert validate(eng, Action(*POINT, 5)) == ERR_SHOW_RANGE_MISSING


def test_noop_always_valid():
    eng = make_engine(make_level(initial_gold=0))
    eng._kill_hero(eng.state)
    assert validate(eng, Action(2.7, -2.9, 6)) == ERR_NONE


def test_coordinate_error_checked_before_resource_error():
    # broke AND outside every box: the coordinate error (6) wins
    eng = make_engine(make_level(initial_gold=0))
    assert validate(eng, Action(2.0, -2.0, 0)) == ERR_TOWER_COORDS


def test_bounding_box_is_max_norm_membership():
    eng = make_engine()
    x, y = POINT
    assert find_tower_point(eng.state, x + 0.25, y - 0.25) is not None
    assert find_tower_point(eng.state, x + 0.2501, y) is None
    assert find_tower_point(eng.state, x, y - 0.2501) is None


# -- execution effects ---------------------------------------------------------


def test_build_debits_price_and_marks_point():
    eng = make_engine()
    record = execute(eng, Action(*POINT, 0))
    assert record.is_success and record.error_code == 0
    tower = eng.state.towers[0]
    assert tower.tower_type == 3
    assert tower.invested_gold == 120
    assert eng.state.gold == 500 - 120


def test_build_action_indices_map_to_tower_types():
    for c, expected_type in ((0, 3), (1, 2), (2, 1)):
        eng = make_engine()
        execute(eng, Action(*POINT, c))
        assert eng.state.towers[0].tower_type == expected_type


def test_upgrade_accumulates_investment_and_scales_damage(catalog):
    eng = make_engine()
    execute(eng, Action(*POINT, 0))
    execute(eng, Action(*POINT, 3))
    tower = eng.state.towers[0]
    assert tower.upgrade_level == 1
    assert tower.invested_gold == 240
    assert eng.state.gold == 500 - 240
    base, extra = catalog.towers[3].damage_at(1)
    assert (base, extra) == (140, 70)  # x1.4 growth


def test_sell_refunds_invested_times_rate():
    eng = make_engine()
    execute(eng, Action(*POINT, 0))
    execute(eng, Action(*POINT, 3))   # invested 240
    gold_before = eng.state.gold
    execute(eng, Action(*POINT, 4))   # refund rate 1.0
    assert eng.state.gold == gold_before + 240
    assert not eng.state.towers[0].built


def test_sell_with_partial_refund_rate():
    eng = make_engine(make_level(refund_rate=0.5))
    execute(eng, Action(*POINT, 2))  # knight tower, 100
    gold_before = eng.state.gold
    execute(eng, Action(*POINT, 4))
    assert eng.state.gold == gold_before + 50


def test_sell_refund_example_invested_220():
    # magician build (110) + one upgrade (110) sold at rate 1.0 returns 220
    eng = make_engine()
    execute(eng, Action(*POINT, 1))
    execute(eng, Action(*POINT, 3))
    assert eng.state.towers[0].invested_gold == 220
    gold_before = eng.state.gold
    execute(eng, Action(*POINT, 4))
    assert eng.state.gold == gold_before + 220


def test_sell_knight_tower_removes_its_knights():
    eng = make_engine()
    execute(eng, Action(*POINT, 2))
    for _ in range(500):
        eng.tick()
    assert eng.state.knights
    execute(eng, Action(*POINT, 4))
    assert not eng.state.knights
    assert eng.state.towers[0].knight_count == 0


def test_show_range_sets_transient_flag():
    eng = make_engine()
    execute(eng, Action(*POINT, 0))
    execute(eng, Action(*POINT, 5))
    assert eng.state.towers[0].show_range_ticks == 16
    for _ in range(16):
        eng.tick()
    assert eng.state.towers[0].show_range_ticks == 0


def test_move_assembly_point():
    eng = make_engine()
    execute(eng, Action(*POINT, 2))
    execute(eng, Action(0.3, 0.2, 7))
    tower = eng.state.towers[0]
    assert (tower.assembly_x, tower.assembly_y) == (0.3, 0.2)


def test_reinforcements_spawn_two_knights_and_start_cooldown():
    eng = make_engine()
    record = execute(eng, Action(1.5, -1.5, 8))
    assert record.is_success
    assert len(eng.state.knights) == 2
    assert eng.state.reinforce_ticks == 500
    for knight in eng.state.knights:
        assert knight.home_tower == -1
        assert knight.expire_ticks == 500
        assert abs(knight.x - 1.5) <= 0.1 and knight.y == -1.5


def test_move_hero_sets_target_not_teleport():
    eng = make_engine()
    hero = eng.state.hero
    x0, y0 = hero.x, hero.y
    execute(eng, Action(-2.0, 2.0, 9))
    assert (hero.x, hero.y) == (x0, y0)
    assert hero.has_target and (hero.move_x, hero.move_y) == (-2.0, 2.0)


def test_fire_of_rage_costs_health_and_spawns_zone():
    eng = make_engine()
    hero = eng.state.hero
    execute(eng, Action(0.0, 0.0, 10))
    assert hero.health == 1500
    assert len(eng.state.zones) == 1
    zone = eng.state.zones[0]
    assert (zone.x, zone.y) == (hero.x, hero.y)
    assert zone.remaining_ticks == 250  # 5 s


def test_fire_of_rage_can_kill_the_caster():
    eng = make_engine()
    hero = eng.state.hero
    hero.health = 100
    execute(eng, Action(0.0, 0.0, 10))
    assert hero.dead


def test_zone_capacity_drops_oldest():
    eng = make_engine()
    hero = eng.state.hero
    hero.max_health = 100_000
    hero.health = 100_000
    for i in range(12):
        hero.x = float(i) / 10.0
        execute(eng, Action(0.0, 0.0, 10))
    assert len(eng.state.zones) == 10
    assert eng.state.zones[0].x == pytest.approx(0.2)


def test_hero_upgrade_example():
    eng = make_engine(make_level(initial_gold=600))
    hero = eng.state.hero
    record = execute(eng, Action(0.0, 0.0, 11))
    assert record.is_success
    assert eng.state.gold == 100
    assert hero.max_health == 1800
    assert hero.health == 1800


def test_noop_changes_nothing_but_the_record():
    eng = make_engine()
    before = state_fingerprint(eng)
    record = execute(eng, Action(1.0, -1.0, 6))
    assert record.is_success
    assert state_fingerprint(eng) == before


def test_invalid_actions_mutate_nothing_but_the_record():
    eng = make_engine(make_level(initial_gold=50))
    invalid = [
        Action(2.0, -2.0, 0),   # 6
        Action(*POINT, 0),      # 2 (no gold)
        Action(*POINT, 3),      # 3
        Action(*POINT, 4),      # 5
        Action(*POINT, 5),      # 11
        Action(0.0, 0.0, 7),    # 7
        Action(0.0, 0.0, 11),   # 10
    ]
    for action in invalid:
        before = state_fingerprint(eng)
        record = execute(eng, action)
        assert not record.is_success
        assert state_fingerprint(eng) == before, action


@settings(max_examples=300)
@given(x=st.floats(min_value=-3.0, max_value=3.0),
       y=st.floats(min_value=-3.0, max_value=3.0),
       c=st.integers(min_value=0, max_value=11),
       seed=st.integers(min_value=0, max_value=2**32))
def test_validate_total_and_codes_in_range(x, y, c, seed):
    eng = make_engine(seed=seed)
    code = validate(eng, Action(x, y, c))
    assert 0 <= code <= 11


def test_validated_actions_never_break_gold_floor():
    # soundness: executing valid actions cannot take gold negative
    eng = make_engine(make_level(initial_gold=120))
    rng = Xoshiro256(17)
    for _ in range(2000):
        action = Action(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.randint(0, 11))
        execute(eng, action)
        assert eng.state.gold >= 0
        if not eng.state.done:
            eng.tick()


def test_action_clamping():
    action = Action(9.0, -9.0, 6).clamped()
    assert (action.x, action.y) == (3.0, -3.0)


def test_out_of_range_action_index_raises():
    eng = make_engine()
    with pytest.raises(ValueError):
        validate(eng, Action(0.0, 0.0, 12))

"""World-simulation oracles: clock, movement, combat, waves, gold, fog."""
from __future__ import annotations

import pytest

from towermind.constants import MAX_ENEMIES, TICK_DT
from towermind.rng import Xoshiro256
from towermind.sim.actions import Action, execute
from towermind.sim.engine import resolve_attack

from helpers import make_engine, make_level


# -- clock ---------------------------------------------------------------------


def test_tick_dt_from_step_time_ratio():
    eng = make_engine()
    for _ in range(192):
        eng.tick()
    assert eng.state.step_index == 192
    assert eng.state.sim_time / eng.state.step_index == pytest.approx(0.02)
    assert round(eng.state.sim_time, 2) == 3.84


def test_empty_map_only_clock_fog_timers_change():
    # no wave for 6 s: before the first spawn only step/time/fog/cooldowns move
    eng = make_engine()
    state = eng.state
    gold0, health0 = state.gold, state.base_health
    fog0 = (state.fog.x, state.fog.y)
    for _ in range(100):
        eng.tick()
    assert state.step_index == 100
    assert (state.gold, state.base_health) == (gold0, health0)
    assert not state.enemies and not state.knights and not state.zones
    assert (state.fog.x, state.fog.y) != fog0
    assert state.wave_countdown_ticks == 300 - 100


# -- movement -------------------------------------------------------------------


def test_enemy_advances_speed_times_dt():
    eng = make_engine()
    eng._spawn_enemy(eng.state, 5, 0)  # zombie, speed 0.5
    enemy = eng.state.enemies[0]
    x0 = enemy.x
    eng.tick()
    assert enemy.x - x0 == pytest.approx(0.5 * TICK_DT)  # 0.01 map units


def test_enemy_follows_waypoints_in_straight_segments():
    level = make_level(roads=[[[-1.0, 0.0], [0.0, 0.0], [0.0, 1.0], [3.0, 1.0]]],
                       destination=[3.0, 1.0])
    eng = make_engine(level)
    eng._spawn_enemy(eng.state, 10, 0)  # duckman, speed 2.0
    enemy = eng.state.enemies[0]
    for _ in range(30):  # 0.04/tick: 25 ticks to the first corner
        eng.tick()
    assert enemy.x == pytest.approx(0.0, abs=1e-9)
    assert 0.0 < enemy.y < 1.0
    assert enemy.progress == pytest.approx(30 * 0.04)


def test_arrival_decrements_base_health_and_counts_reward():
    level = make_level(roads=[[[-0.2, 0.0], [0.2, 0.0]]])
    eng = make_engine(level)
    eng._spawn_enemy(eng.state, 10, 0)  # crosses 0.4 units at 2.0/s
    breaches = 0
    for _ in range(20):
        breaches += eng.tick()
    assert breaches == 1
    assert eng.state.base_health == 19
    assert eng.state.breaches == 1
    assert not eng.state.enemies


# -- damage rolls -----------------------------------------------------------------


def test_resolve_attack_range_and_single_draw():
    rng = Xoshiro256(3)
    for _ in range(200):
        before = rng.draws
        value = resolve_attack(100, 50, rng)
        assert 100 <= value <= 150
        assert rng.draws == before + 1


def test_resolve_attack_zero_extra_is_exact():
    rng = Xoshiro256(3)
    assert resolve_attack(100, 0, rng) == 100


def test_resolve_attack_monte_carlo_mean():
    rng = Xoshiro256(12345)
    n = 100_000
    mean = sum(resolve_attack(100, 50, rng) for _ in range(n)) / n
    assert abs(mean - 125.0) < 1.0


# -- waves ------------------------------------------------------------------------


def test_wave_vector_spawns_match_composition():
    wave = [0, 0, 0, 8, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]
    level = make_level(waves=[wave])
    eng = make_engine(level, spawn_spacing=0.02)
    state = eng.state
    for _ in range(310):
        eng.tick()
    spawned = [e.type_code for e in state.enemies]
    assert len(spawned) == 8
    assert all(t == 3 for t in spawned)  # clowns
    assert state.spawned_waves == 1


def test_single_road_choice_is_forced():
    eng = make_engine(make_level())
    for _ in range(400):
        eng.tick()
    assert all(e.road_index == 0 for e in eng.state.enemies)


def test_two_road_split_is_roughly_even():
    # 1000 spawns through the real spawn path on a fixed seed
    level = make_level(
        roads=[[[-3.0, -1.0], [3.0, 0.0]], [[-3.0, 1.0], [3.0, 0.0]]],
        destination=[3.0, 0.0])
    eng = make_engine(level, seed=11)
    state = eng.state
    counts = [0, 0]
    for _ in range(1000):
        state.pending_spawns.append(5)
        state.spawn_gap_ticks = 0
        eng._phase_waves(state)
        counts[state.enemies[-1].road_index] += 1
        state.enemies.clear()
    assert counts[0] + counts[1] == 1000
    assert abs(counts[0] - 500) < 50  # within 5 percent of 50/50


def test_wave_countdown_resets_to_interval():
    level = make_level(waves=[[0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]] * 2)
    eng = make_engine(level)
    state = eng.state
    for _ in range(300):
        eng.tick()
    assert state.spawned_waves == 1
    assert state.wave_index == 2
    assert state.wave_countdown_ticks == 300


def test_capacity_backpressure_holds_enemy_count_at_fifty():
    wave = [0] * 15
    wave[11] = 25  # outlaws, slowest walkers
    level = make_level(roads=[[[-3.0, 0.0], [3.05, 0.0]]], destination=[3.05, 0.0],
                       waves=[wave, wave, wave, wave])
    eng = make_engine(level, spawn_spacing=0.02)
    peak = 0
    for _ in range(3000):
        if eng.state.done:
            break
        eng.tick()
        peak = max(peak, len(eng.state.enemies))
    assert peak <= MAX_ENEMIES


# -- friendly fire ----------------------------------------------------------------


def _engine_with_knights_in_fire(n_knights: int, gold: int = 500):
    level = make_level(initial_gold=gold)
    eng = make_engine(level)
    state = eng.state
    execute(eng, Action(0.0, 0.0, 8))  # reinforcements at the origin
    state.knights = state.knights[:n_knights]
    for k in state.knights:
        k.health = 1
    state.hero.x = state.hero.y = 0.0
    execute(eng, Action(0.0, 0.0, 10))  # fire of rage at hero position
    return eng


def test_friendly_fire_compensation_awards_gold():
    eng = _engine_with_knights_in_fire(1)
    gold0 = eng.state.gold
    eng.tick()
    assert eng.state.gold == gold0 + 50
    assert eng.state.ff_compensation_count == 1
    assert not eng.state.knights


def test_friendly_fire_zero_kills_changes_nothing():
    eng = make_engine()
    state = eng.state
    gold0 = state.gold
    eng.apply_friendly_fire(state, 0)
    assert state.gold == gold0
    assert state.ff_compensation_count == 0


def test_friendly_fire_gold_capped_at_max():
    eng = _engine_with_knights_in_fire(2)
    eng.state.gold = eng.level.max_gold - 60
    eng.tick()
    assert eng.state.gold == eng.level.max_gold
    assert eng.state.ff_compensation_count == 2
    assert eng.state.gold_discarded > 0


# -- gold drops -------------------------------------------------------------------


def test_gold_drop_spawns_on_refresh_interval():
    eng = make_engine()
    for _ in range(99):
        eng.tick()
    assert eng.state.drop is None
    eng.tick()  # tick 100 = 2 s
    assert eng.state.drop is not None


def test_gold_drop_expires_without_collector():
    eng = make_engine()
    for _ in range(100):
        eng.tick()
    drop = eng.state.drop
    lifetime = drop.lifetime_ticks
    eng.tick()
    assert drop.lifetime_ticks == lifetime - 1
    for _ in range(lifetime):
        eng.tick()
    assert eng.state.drop is not drop


def test_pickup_amount_within_level_bounds():
    eng = make_engine(seed=9)
    state = eng.state
    for _ in range(100):
        eng.tick()
    drop = state.drop
    state.hero.x, state.hero.y = drop.x, drop.y
    gold0 = state.gold
    eng.tick()
    gained = state.gold - gold0
    assert 100 <= gained <= 130
    assert state.gold_collection_count == 1
    assert state.drop is None


def test_single_drop_capacity():
    # refresh fires every 2 s but a live drop is never replaced
    eng = make_engine()
    for _ in range(101):
        eng.tick()
    drop = eng.state.drop
    assert drop is not None
    for _ in range(700):  # several refresh boundaries before expiry at tick 850
        eng.tick()
    assert eng.state.drop is drop


# -- hero -------------------------------------------------------------------------


def test_hero_regenerates_fifty_hp_per_second():
    eng = make_engine()
    hero = eng.state.hero
    hero.health -= 200
    for _ in range(50):
        eng.tick()
    assert hero.health == hero.max_health - 150


def test_hero_revives_after_ten_seconds_at_start():
    eng = make_engine()
    hero = eng.state.hero
    eng._kill_hero(eng.state)
    assert hero.dead
    for _ in range(499):
        eng.tick()
    assert hero.dead
    eng.tick()
    assert not hero.dead
    assert hero.health == hero.max_health
    assert (hero.x, hero.y) == eng.level.hero_start


def test_hero_health_capped_at_max():
    eng = make_engine()
    hero = eng.state.hero
    for _ in range(100):
        eng.tick()
    assert hero.health == hero.max_health


# -- knights ----------------------------------------------------------------------


def test_knight_tower_summons_at_most_three():
    eng = make_engine()
    execute(eng, Action(0.0, 0.6, 2))  # knight tower
    for _ in range(800):  # summon interval 4 s; cap reached well before
        if eng.state.done:
            break
        eng.tick()
    mine = [k for k in eng.state.knights if k.home_tower == 0]
    assert len(mine) == 3
    assert eng.state.towers[0].knight_count == 3


def test_knights_walk_to_assembly_point():
    eng = make_engine()
    execute(eng, Action(0.0, 0.6, 2))
    eng.tick()  # summons immediately (cooldown starts at zero)
    knight = eng.state.knights[0]
    for _ in range(200):
        eng.tick()
    assert (knight.x, knight.y) == (0.0, 0.1)


def test_reinforcements_expire_after_ten_seconds():
    eng = make_engine()
    execute(eng, Action(1.0, 1.0, 8))
    assert len(eng.state.knights) == 2
    for _ in range(499):
        eng.tick()
    assert len(eng.state.knights) == 2
    eng.tick()
    assert not eng.state.knights


def test_at_most_two_reinforcement_knights():
    eng = make_engine()
    execute(eng, Action(1.0, 1.0, 8))
    record = execute(eng, Action(-1.0, 1.0, 8))  # still on cooldown
    assert not record.is_success
    assert len([k for k in eng.state.knights if k.home_tower == -1]) == 2


# -- blocking and combat --------------------------------------------------------


def test_ground_enemy_stops_to_fight_blocking_knight():
    eng = make_engine()
    state = eng.state
    execute(eng, Action(-1.0, 0.0, 8))  # reinforcements on the road
    eng._spawn_enemy(state, 5, 0)       # zombie from the west
    for _ in range(1500):
        eng.tick()
        if state.enemies and state.enemies[0].blocker is not None:
            break
    assert state.enemies and state.enemies[0].blocker is not None
    x_blocked = state.enemies[0].x
    eng.tick()
    assert state.enemies[0].x == x_blocked  # blocked enemies do not advance


def test_flying_enemy_never_stops_or_attacks():
    eng = make_engine()
    state = eng.state
    execute(eng, Action(-1.0, 0.0, 8))
    state.knights[0].y = 0.0
    eng._spawn_enemy(state, 2, 0)  # demon bat
    knight_hp = state.knights[0].health
    while any(e.flying for e in state.enemies):
        eng.tick()
    assert state.breaches == 1
    assert state.knights and all(k.health == knight_hp for k in state.knights)


def test_hero_kills_enemy_in_range():
    eng = make_engine()
    state = eng.state
    eng._spawn_enemy(state, 5, 0)
    state.hero.x, state.hero.y = -2.9, 0.0
    for _ in range(400):
        if not state.enemies:
            break
        eng.tick()
    assert not state.enemies
    assert state.breaches == 0


def test_frozen_tower_does_not_attack():
    eng = make_engine()
    state = eng.state
    execute(eng, Action(0.0, 0.6, 0))  # archer
    state.towers[0].frozen_ticks = 10_000
    eng._spawn_enemy(state, 5, 0)
    hp = state.enemies[0].health
    for _ in range(200):
        eng.tick()
    assert state.enemies and state.enemies[0].health == hp


def test_sorcerer_freezes_nearby_tower():
    eng = make_engine()
    state = eng.state
    execute(eng, Action(0.0, 0.6, 0))
    eng._spawn_enemy(state, 1, 0)  # orc sorcerer
    for _ in range(800):
        eng.tick()
        if state.towers[0].frozen_ticks > 0:
            break
    assert state.towers[0].frozen_ticks > 0


def test_fogged_tower_does_not_attack():
    eng = make_engine(fog_speed=0.0)
    state = eng.state
    execute(eng, Action(0.0, 0.6, 0))
    state.fog.x, state.fog.y = 0.0, 0.6
    eng._spawn_enemy(state, 5, 0)
    hp = state.enemies[0].health
    for _ in range(100):
        eng.tick()
    assert state.enemies[0].health == hp


def test_fire_zone_suppresses_fog():
    eng = make_engine(fog_speed=0.0)
    state = eng.state
    state.fog.x, state.fog.y = 0.0, 0.0
    state.hero.x = state.hero.y = 0.0
    assert eng.fog_covers(0.0, 0.0)
    execute(eng, Action(0.0, 0.0, 10))
    assert state.fog_suppressed
    assert not eng.fog_covers(0.0, 0.0)
    for _ in range(251):  # zone burns out after 5 s
        eng.tick()
    assert not state.fog_suppressed


def test_fog_covered_enemies_keep_moving():
    eng = make_engine(fog_speed=0.0)
    state = eng.state
    state.fog.x, state.fog.y = -2.9, 0.0
    eng._spawn_enemy(state, 5, 0)
    x0 = state.enemies[0].x
    assert eng.fog_covers(x0, state.enemies[0].y)
    eng.tick()
    assert state.enemies[0].x > x0


def test_fog_drifts_and_reflects_within_bounds():
    eng = make_engine(seed=3, fog_speed=3.0)  # fast drift to exercise reflection
    state = eng.state
    for _ in range(5000):
        if state.done:
            break
        eng.tick()
        assert -3.0 <= state.fog.x <= 3.0
        assert -3.0 <= state.fog.y <= 3.0


# -- termination ------------------------------------------------------------------


def test_victory_when_all_waves_cleared():
    level = make_level(waves=[[0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]])
    eng = make_engine(level)
    state = eng.state
    state.hero.x, state.hero.y = -2.9, 0.0  # kill the single zombie at the gate
    while not state.done:
        eng.tick()
    assert state.victory
    assert state.base_health == 20


def test_loss_when_base_health_hits_zero():
    level = make_level(initial_base_health=1)
    eng = make_engine(level)
    state = eng.state
    while not state.done:
        eng.tick()
    assert not state.victory
    assert state.base_health == 0


def test_tick_after_done_raises():
    level = make_level(initial_base_health=1)
    eng = make_engine(level)
    while not eng.state.done:
        eng.tick()
    with pytest.raises(RuntimeError):
        eng.tick()

"""Scenario helpers shared across test modules."""
from __future__ import annotations

import towermind as tm
from towermind.catalog import Tuning
from towermind.sim.engine import Engine


def make_level(roads=None, tower_points=None, waves=None, destination=None,
               hero_start=(2.0, -2.0), fog_start=(0.0, 2.5), **economy) -> tm.LevelConfig:
    """Small scenario level for oracle tests."""
    roads = roads or [[[-3.0, 0.0], [3.0, 0.0]]]
    destination = destination or roads[0][-1]
    tower_points = tower_points or [{"position": [0.0, 0.6], "assembly": [0.0, 0.1]}]
    waves = waves or [[0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]]
    econ = {
        "initial_gold": 500, "max_gold": 3000, "initial_base_health": 20,
        "refund_rate": 1.0, "gold_refresh_interval": 2, "gold_retention_time": 15,
        "gold_pickup_min": 100, "gold_pickup_max": 130,
    }
    econ.update(economy)
    return tm.load_level({
        "id": "scenario",
        "map": {
            "roads": roads,
            "destination": destination,
            "tower_points": tower_points,
            "hero_start": list(hero_start),
            "fog_start": list(fog_start),
        },
        "waves": {"inter_wave_interval": 6.0, "compositions": waves},
        "economy": econ,
    })


def make_engine(level=None, catalog=None, seed=0, **tuning_kwargs) -> Engine:
    catalog = catalog or tm.load_catalog()
    level = level or make_level()
    tuning = Tuning(**tuning_kwargs) if tuning_kwargs else None
    return Engine(level, catalog, seed=seed, tuning=tuning)


def state_fingerprint(engine) -> tuple:
    """Everything that matters for 'invalid actions mutate nothing' checks,
    except the last-action record."""
    s = engine.state
    return (
        s.step_index, s.gold, s.base_health, s.wave_index, s.spawned_waves,
        s.wave_countdown_ticks, tuple(s.pending_spawns), s.spawn_gap_ticks,
        s.reinforce_ticks, s.gold_collection_count, s.ff_compensation_count,
        s.breaches, s.next_entity_id, s.rng.getstate(),
        tuple((t.point_index, t.tower_type, t.upgrade_level, t.invested_gold,
               t.frozen_ticks, t.cooldown_ticks, t.show_range_ticks,
               t.assembly_x, t.assembly_y, t.knight_count) for t in s.towers),
        tuple((e.eid, e.type_code, e.health, e.x, e.y, e.waypoint_cursor,
               e.progress, e.cooldown_ticks) for e in s.enemies),
        tuple((k.kid, k.x, k.y, k.health, k.home_tower, k.expire_ticks,
               k.cooldown_ticks) for k in s.knights),
        (s.hero.x, s.hero.y, s.hero.health, s.hero.max_health, s.hero.dead,
         s.hero.revive_ticks, s.hero.has_target, s.hero.move_x, s.hero.move_y,
         s.hero.cooldown_ticks),
        None if s.drop is None else (s.drop.x, s.drop.y, s.drop.lifetime_ticks),
        tuple((z.x, z.y, z.remaining_ticks, z.damage_countdown) for z in s.zones),
        (s.fog.x, s.fog.y, s.fog.dir_x, s.fog.dir_y, s.fog.redirect_ticks),
        s.fog_suppressed, s.done, s.victory,
    )

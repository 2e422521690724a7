"""Mutable world state: entities and the per-episode GameState container."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..constants import ACTION_NOOP, TICK_DT, TOWER_UNBUILT
from ..rng import Xoshiro256


@dataclass(slots=True)
class Tower:
    point_index: int
    x: float
    y: float
    default_assembly_x: float
    default_assembly_y: float
    assembly_x: float
    assembly_y: float
    tower_type: int = TOWER_UNBUILT
    upgrade_level: int = 0
    invested_gold: int = 0
    frozen_ticks: int = 0
    cooldown_ticks: int = 0
    show_range_ticks: int = 0
    knight_count: int = 0

    @property
    def built(self) -> bool:
        return self.tower_type != TOWER_UNBUILT


@dataclass(slots=True)
class Enemy:
    eid: int
    type_code: int
    health: int
    x: float
    y: float
    road_index: int
    waypoint_cursor: int
    progress: float
    speed: float
    flying: bool
    damage: int
    extra_damage: int
    interval_ticks: int
    freeze_caster: bool
    step_per_tick: float
    # current segment: unit direction and distance left to the next waypoint
    seg_ux: float = 0.0
    seg_uy: float = 0.0
    seg_left: float = 0.0
    cooldown_ticks: int = 0
    blocker: object = None  # Knight | Hero | None
    alive: bool = True


@dataclass(slots=True)
class Knight:
    kid: int
    x: float
    y: float
    health: int
    home_tower: int           # tower point index, -1 for reinforcements
    goal_x: float
    goal_y: float
    expire_ticks: int = -1    # -1 = summoned knights never time out
    cooldown_ticks: int = 0
    alive: bool = True


@dataclass(slots=True)
class Hero:
    x: float
    y: float
    health: int
    max_health: int
    dead: bool = False
    revive_ticks: int = 0
    has_target: bool = False
    move_x: float = 0.0
    move_y: float = 0.0
    cooldown_ticks: int = 0


@dataclass(slots=True)
class GoldDrop:
    x: float
    y: float
    lifetime_ticks: int


@dataclass(slots=True)
class FireZone:
    x: float
    y: float
    remaining_ticks: int
    damage_countdown: int = 0


@dataclass(slots=True)
class Fog:
    x: float
    y: float
    dir_x: float
    dir_y: float
    redirect_ticks: int


@dataclass(slots=True, frozen=True)
class ActionRecord:
    x: float
    y: float
    action_index: int
    is_success: bool
    error_code: int


INITIAL_ACTION_RECORD = ActionRecord(0.0, 0.0, ACTION_NOOP, True, 0)


@dataclass(slots=True)
class GameState:
    rng: Xoshiro256
    gold: int
    base_health: int
    towers: list[Tower]
    hero: Hero
    fog: Fog
    wave_countdown_ticks: int
    gold_refresh_ticks: int
    step_index: int = 0
    wave_index: int = 1
    spawned_waves: int = 0
    pending_spawns: deque = field(default_factory=deque)
    spawn_gap_ticks: int = 0
    enemies: list[Enemy] = field(default_factory=list)
    knights: list[Knight] = field(default_factory=list)
    drop: GoldDrop | None = None
    zones: list[FireZone] = field(default_factory=list)
    fog_suppressed: bool = False
    reinforce_ticks: int = 0
    last_action: ActionRecord = INITIAL_ACTION_RECORD
    gold_collection_count: int = 0
    ff_compensation_count: int = 0
    breaches: int = 0
    next_entity_id: int = 1
    done: bool = False
    victory: bool = False
    # exact gold ledger, used by conservation tests
    gold_from_pickups: int = 0
    gold_from_compensation: int = 0
    gold_from_refunds: int = 0
    gold_spent: int = 0
    gold_discarded: int = 0

    @property
    def sim_time(self) -> float:
        return self.step_index * TICK_DT

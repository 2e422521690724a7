"""Hybrid action handling: validity classification and execution dispatch.

An action is (x, y, c): two map coordinates plus a discrete type index.
Invalid actions never mutate the world; they only leave an ActionRecord with
the matching error code. Coordinate errors (codes 6/7) are checked before
resource errors (2/4/10) when several would apply.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..constants import (
    ACTION_COUNT,
    ACTION_FIRE_OF_RAGE,
    ACTION_MOVE_ASSEMBLY,
    ACTION_MOVE_HERO,
    ACTION_NOOP,
    ACTION_REINFORCEMENTS,
    ACTION_SELL,
    ACTION_SHOW_RANGE,
    ACTION_UPGRADE,
    ACTION_UPGRADE_HERO,
    BUILD_ACTION_TOWER_TYPE,
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
    MAP_HALF,
    MAX_FIRE_ZONES,
    TICKS_PER_ACTION,
    TOWER_BOX_HALF,
    TOWER_KNIGHT,
    TOWER_UNBUILT,
)
from .engine import Engine
from .state import ActionRecord, FireZone, GameState, Knight, Tower

_TOWER_OP_ACTIONS = frozenset((0, 1, 2, ACTION_UPGRADE, ACTION_SELL, ACTION_SHOW_RANGE))
_HERO_ACTIONS = frozenset((ACTION_MOVE_HERO, ACTION_FIRE_OF_RAGE, ACTION_UPGRADE_HERO))

REINFORCEMENT_OFFSET = 0.06  # two knights straddle the requested point


@dataclass(frozen=True, slots=True)
class Action:
    x: float
    y: float
    c: int

    def clamped(self) -> "Action":
        return Action(
            x=min(MAP_HALF, max(-MAP_HALF, float(self.x))),
            y=min(MAP_HALF, max(-MAP_HALF, float(self.y))),
            c=self.c,
        )


def find_tower_point(state: GameState, x: float, y: float) -> Tower | None:
    """The tower point whose 0.5-side bounding box contains (x, y), if any."""
    for tower in state.towers:
        if abs(x - tower.x) <= TOWER_BOX_HALF and abs(y - tower.y) <= TOWER_BOX_HALF:
            return tower
    return None


def _nearest_knight_tower(engine: Engine, state: GameState,
                          x: float, y: float) -> Tower | None:
    radius2 = engine.catalog.towers[TOWER_KNIGHT].radius ** 2
    best = None
    best_d2 = radius2
    for tower in state.towers:
        if tower.tower_type != TOWER_KNIGHT:
            continue
        dx = tower.x - x
        dy = tower.y - y
        d2 = dx * dx + dy * dy
        if d2 <= best_d2:
            best, best_d2 = tower, d2
    return best


def validate(engine: Engine, action: Action) -> int:
    """Classify an action against the current state. 0 means executable."""
    state = engine.state
    c = action.c
    if not 0 <= c < ACTION_COUNT:
        raise ValueError(f"action index out of range: {c}")
    if c == ACTION_NOOP:
        return ERR_NONE
    if c in _TOWER_OP_ACTIONS:
        tower = find_tower_point(state, action.x, action.y)
        if tower is None:
            return ERR_TOWER_COORDS
        if c in BUILD_ACTION_TOWER_TYPE:
            if tower.tower_type != TOWER_UNBUILT:
                return ERR_BUILD_OCCUPIED
            price = engine.catalog.towers[BUILD_ACTION_TOWER_TYPE[c]].price
            if state.gold < price:
                return ERR_BUILD_GOLD
            return ERR_NONE
        if c == ACTION_UPGRADE:
            if tower.tower_type == TOWER_UNBUILT:
                return ERR_UPGRADE_MISSING
            if state.gold < engine.catalog.towers[tower.tower_type].upgrade_price:
                return ERR_UPGRADE_GOLD
            return ERR_NONE
        if c == ACTION_SELL:
            if tower.tower_type == TOWER_UNBUILT:
                return ERR_SELL_MISSING
            return ERR_NONE
        # show attack range
        if tower.tower_type == TOWER_UNBUILT:
            return ERR_SHOW_RANGE_MISSING
        return ERR_NONE
    if c == ACTION_MOVE_ASSEMBLY:
        if _nearest_knight_tower(engine, state, action.x, action.y) is None:
            return ERR_ASSEMBLY_COORDS
        return ERR_NONE
    if c == ACTION_REINFORCEMENTS:
        if state.reinforce_ticks > 0:
            return ERR_REINFORCE_COOLDOWN
        return ERR_NONE
    # hero actions 9/10/11
    if state.hero.dead:
        return ERR_HERO_DEAD
    if c == ACTION_UPGRADE_HERO and state.gold < engine.catalog.hero.upgrade_cost:
        return ERR_HERO_UPGRADE_GOLD
    return ERR_NONE


def execute(engine: Engine, action: Action) -> ActionRecord:
    """Validate and (when valid) apply the action; always records the outcome."""
    state = engine.state
    code = validate(engine, action)
    if code == ERR_NONE:
        _apply(engine, state, action)
    record = ActionRecord(x=action.x, y=action.y, action_index=action.c,
                          is_success=code == ERR_NONE, error_code=code)
    state.last_action = record
    return record


def _apply(engine: Engine, state: GameState, action: Action) -> None:
    c = action.c
    catalog = engine.catalog
    if c == ACTION_NOOP:
        return
    if c in BUILD_ACTION_TOWER_TYPE:
        tower = find_tower_point(state, action.x, action.y)
        spec = catalog.towers[BUILD_ACTION_TOWER_TYPE[c]]
        engine._spend_gold(state, spec.price)
        tower.tower_type = spec.type_code
        tower.upgrade_level = 0
        tower.invested_gold = spec.price
        tower.cooldown_ticks = 0
        return
    if c == ACTION_UPGRADE:
        tower = find_tower_point(state, action.x, action.y)
        spec = catalog.towers[tower.tower_type]
        engine._spend_gold(state, spec.upgrade_price)
        tower.invested_gold += spec.upgrade_price
        tower.upgrade_level += 1
        return
    if c == ACTION_SELL:
        tower = find_tower_point(state, action.x, action.y)
        refund = int(round(tower.invested_gold * engine.level.refund_rate))
        engine._add_gold(state, refund, "refund")
        _clear_tower(engine, state, tower)
        return
    if c == ACTION_SHOW_RANGE:
        tower = find_tower_point(state, action.x, action.y)
        tower.show_range_ticks = TICKS_PER_ACTION
        return
    if c == ACTION_MOVE_ASSEMBLY:
        tower = _nearest_knight_tower(engine, state, action.x, action.y)
        tower.assembly_x = action.x
        tower.assembly_y = action.y
        return
    if c == ACTION_REINFORCEMENTS:
        spec = catalog.reinforcements
        for i in range(spec.number):
            offset = REINFORCEMENT_OFFSET * (1 if i % 2 else -1) * (i // 2 + 1)
            x = min(MAP_HALF, max(-MAP_HALF, action.x + offset))
            knight = Knight(kid=state.next_entity_id, x=x, y=action.y,
                            health=catalog.knight.health, home_tower=-1,
                            goal_x=x, goal_y=action.y,
                            expire_ticks=spec.exist_ticks)
            state.next_entity_id += 1
            state.knights.append(knight)
        state.reinforce_ticks = engine._reinforce_ticks
        return
    if c == ACTION_MOVE_HERO:
        hero = state.hero
        hero.has_target = True
        hero.move_x = action.x
        hero.move_y = action.y
        return
    if c == ACTION_FIRE_OF_RAGE:
        hero = state.hero
        hspec = catalog.hero
        if len(state.zones) >= MAX_FIRE_ZONES:
            state.zones.pop(0)  # oldest zone yields; capacity is an obs contract
        state.zones.append(FireZone(x=hero.x, y=hero.y,
                                    remaining_ticks=hspec.skill_duration_ticks))
        engine._update_fog_suppression(state)
        hero.health -= hspec.skill_cost_health
        if hero.health <= 0:
            engine._kill_hero(state)
        return
    if c == ACTION_UPGRADE_HERO:
        hero = state.hero
        hspec = catalog.hero
        engine._spend_gold(state, hspec.upgrade_cost)
        hero.max_health += hspec.upgrade_health_growth
        hero.health = min(hero.health + hspec.upgrade_health_growth, hero.max_health)
        return
    raise AssertionError(f"unhandled action index {c}")


def _clear_tower(engine: Engine, state: GameState, tower: Tower) -> None:
    if tower.tower_type == TOWER_KNIGHT:
        for knight in state.knights:
            if knight.alive and knight.home_tower == tower.point_index:
                knight.alive = False
        state.knights = [k for k in state.knights if k.alive]
        tower.knight_count = 0
    tower.tower_type = TOWER_UNBUILT
    tower.upgrade_level = 0
    tower.invested_gold = 0
    tower.frozen_ticks = 0
    tower.show_range_ticks = 0
    tower.cooldown_ticks = 0
    tower.assembly_x = tower.default_assembly_x
    tower.assembly_y = tower.default_assembly_y

"""Textual observation: the JSON game-state document.

The document carries level constants plus realtime status arrays; entities
covered by the fog of war are omitted everywhere. Numbers are presented at
fixed precision (positions to 3 decimals, clock to 2) so that re-running an
episode reproduces the text byte for byte. Countdowns display as whole
seconds, rounded up.
"""
from __future__ import annotations

import json

from ..constants import (
    MAP_HALF,
    MAP_SIDE,
    TICKS_PER_SECOND,
    TOWER_BOX_SIDE,
)
from ..sim.engine import Engine

_TOWER_NAME_UNBUILT = "Waiting to be Built"


def _ceil_seconds(ticks: int) -> int:
    return (ticks + TICKS_PER_SECOND - 1) // TICKS_PER_SECOND if ticks > 0 else 0


def _pos(x: float, y: float) -> dict:
    return {"X": round(x, 3), "Y": round(y, 3)}


def render_text(engine: Engine) -> dict:
    """Full game-state document with fog filtering applied."""
    state = engine.state
    level = engine.level
    catalog = engine.catalog
    covers = engine.fog_covers

    towers_status = []
    tower_levels = []
    for tower in state.towers:
        if covers(tower.x, tower.y):
            continue
        if tower.built:
            name = catalog.towers[tower.tower_type].name
        else:
            name = _TOWER_NAME_UNBUILT
        towers_status.append({
            "Position": _pos(tower.x, tower.y),
            "Tower_Name": name,
            "Is_Bulit": tower.built,
            "Is_Frozen": tower.frozen_ticks > 0,
            "Knights_Assembly_Position": _pos(tower.assembly_x, tower.assembly_y),
        })
        tower_levels.append(tower.upgrade_level)

    enemies_status = [
        {
            "Position": _pos(e.x, e.y),
            "Name": catalog.enemies[e.type_code].name,
            "Current_Health": e.health,
            "Type": e.type_code,
        }
        for e in state.enemies if not covers(e.x, e.y)
    ]

    knights_status = [
        {"Position": _pos(k.x, k.y), "Name": "Knight", "Current_Health": k.health}
        for k in state.knights if not covers(k.x, k.y)
    ]

    hero = state.hero
    if covers(hero.x, hero.y):
        hero_status = None
    else:
        hero_status = {
            "Hero_Revive_Countdwon": (
                _ceil_seconds(hero.revive_ticks) if hero.dead
                else round(catalog.hero.revive_time)
            ),
            "Is_Hero_Dead": hero.dead,
            "Hero_Position": _pos(hero.x, hero.y),
            "Hero_Current_Health": hero.health,
        }

    drop = state.drop
    drop_status = None
    if drop is not None:
        drop_status = {
            "Position": _pos(drop.x, drop.y),
            "RemainingLifetime": _ceil_seconds(drop.lifetime_ticks),
        }

    record = state.last_action
    wave_vector = level.waves[state.wave_index - 1]

    return {
        "Map_Center": {"X": 0.0, "Y": 0.0},
        "Map_Side_Length": MAP_SIDE,
        "Map_Left_Boundary": -MAP_HALF,
        "Map_Right_Boundary": MAP_HALF,
        "Map_Upper_Boundary": MAP_HALF,
        "Map_Lower_Boundary": -MAP_HALF,
        "Tower_Points_Bounding_Box_Width_Height": TOWER_BOX_SIDE,
        "Level_Gold_Coins_Collection_Count": state.gold_collection_count,
        "Level_Friendly_Fire_Compensation_Count": state.ff_compensation_count,
        "Level_Maximum_Gold_Coins": level.max_gold,
        "Level_Initial_Health": level.initial_base_health,
        "Level_Total_Waves_Number": level.total_waves,
        "Level_Inter_Wave_Interval": level.inter_wave_interval,
        "Level_Selling_Tower_Refund_Rate": level.refund_rate,
        "Level_Gold_Coins_Refresh_Interval": level.gold_refresh_interval,
        "Level_Gold_Coins_Retention_Time": level.gold_retention_time,
        "Level_Gold_Coins_Minimum_Pickup_Amount": level.gold_pickup_min,
        "Level_Gold_Coins_Maximum_Pickup_Amount": level.gold_pickup_max,
        "Level_Enemy_Movement_Paths": [
            [_pos(x, y) for x, y in road] for road in level.roads
        ],
        "Level_Enemy_Destination": _pos(*level.destination),
        "Level_Current_Step": state.step_index,
        "Level_Current_Time": round(state.step_index * 0.02, 2),
        "Level_Current_Wave": state.wave_index,
        "Level_Current_Wave_Enemies": list(wave_vector),
        "Level_Current_Wave_Countdown": str(_ceil_seconds(state.wave_countdown_ticks)),
        "Level_Current_Gold_Coins": state.gold,
        "Level_Current_Health": state.base_health,
        "Level_Remaining_Waves": level.total_waves - state.spawned_waves,
        "Level_Fog_Of_War_Position": _pos(state.fog.x, state.fog.y),
        "Level_Knight_Reinforcements_Countdown": _ceil_seconds(state.reinforce_ticks),
        "Level_Hero_Realtime_Status": hero_status,
        "Level_Hero_Fire_Of_Rage_Positions": [_pos(z.x, z.y) for z in state.zones],
        "Level_Towers_Realtime_Status": towers_status,
        "Level_Enemies_Realtime_Status": enemies_status,
        "Level_Knights_Realtime_Status": knights_status,
        "Level_Dropped_Gold_Coins_Realtime_Status": drop_status,
        "Agent_Last_Action_Info": {
            "Position": _pos(record.x, record.y),
            "Action_Index": record.action_index,
            "Is_Success": record.is_success,
            "Error_Code": record.error_code,
        },
        "_tower_upgrade_levels": tower_levels,
    }


def strip_private(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if not k.startswith("_")}


def document_to_json(doc: dict) -> str:
    """Strict JSON serialization (wire format, digests)."""
    return json.dumps(strip_private(doc))


def document_to_pyjson(doc: dict) -> str:
    """Python-literal flavored serialization (True/False/None), the style the
    game state is shown in inside prompts."""
    return _pyjson(strip_private(doc))


def _pyjson(value) -> str:
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_pyjson(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_pyjson(v) for v in value) + "]"
    if value is None:
        return "None"
    if value is True:
        return "True"
    if value is False:
        return "False"
    if isinstance(value, (int, float)):
        return repr(value)
    return json.dumps(value)

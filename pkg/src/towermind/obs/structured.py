"""Structured game-state observation: a flat float32 vector of length 759.

Values are extracted from the textual document, so the two modalities agree
numerically by construction. Fixed scalars come first, then fixed-capacity
blocks; unused slots hold 0, with tower Is_Built / entity health fields
disambiguating real zeros from padding.
"""
from __future__ import annotations

import numpy as np

from ..constants import (
    ENEMY_TYPE_COUNT,
    MAX_ENEMIES,
    MAX_FIRE_ZONES,
    MAX_KNIGHTS,
    MAX_ROADS,
    MAX_TOWER_POINTS,
    MAX_WAYPOINTS_PER_ROAD,
    STRUCTURED_SIZE,
    TOWER_ARCHER,
    TOWER_KNIGHT,
    TOWER_MAGICIAN,
    TOWER_UNBUILT,
    WAVE_VECTOR_SLOTS,
)
from ..sim.engine import Engine
from .text import render_text

_SCALAR_LAYOUT: tuple[tuple[str, int], ...] = (
    ("Map_Center", 2),
    ("Map_Side_Length", 1),
    ("Map_Left_Boundary", 1),
    ("Map_Right_Boundary", 1),
    ("Map_Upper_Boundary", 1),
    ("Map_Lower_Boundary", 1),
    ("Tower_Points_Bounding_Box_Width_Height", 1),
    ("Level_Gold_Coins_Collection_Count", 1),
    ("Level_Friendly_Fire_Compensation_Count", 1),
    ("Level_Maximum_Gold_Coins", 1),
    ("Level_Initial_Health", 1),
    ("Level_Total_Waves_Number", 1),
    ("Level_Inter_Wave_Interval", 1),
    ("Level_Selling_Tower_Refund_Rate", 1),
    ("Level_Gold_Coins_Refresh_Interval", 1),
    ("Level_Gold_Coins_Retention_Time", 1),
    ("Level_Gold_Coins_Minimum_Pickup_Amount", 1),
    ("Level_Gold_Coins_Maximum_Pickup_Amount", 1),
    ("Level_Enemy_Destination", 2),
    ("Level_Current_Step", 1),
    ("Level_Current_Time", 1),
    ("Level_Current_Wave", 1),
    ("Level_Current_Wave_Countdown", 1),
    ("Level_Current_Gold_Coins", 1),
    ("Level_Current_Health", 1),
    ("Level_Remaining_Waves", 1),
    ("Level_Fog_Of_War_Position", 2),
    ("Level_Knight_Reinforcements_Countdown", 1),
    ("Level_Hero_Realtime_Status", 5),
    ("Level_Dropped_Gold_Coins_Realtime_Status", 3),
    ("Agent_Last_Action_Info", 5),
)

_BLOCK_LAYOUT: tuple[tuple[str, int], ...] = (
    ("Level_Enemy_Movement_Paths", MAX_ROADS * MAX_WAYPOINTS_PER_ROAD * 2),
    ("Level_Current_Wave_Enemies", WAVE_VECTOR_SLOTS),
    ("Level_Hero_Fire_Of_Rage_Positions", MAX_FIRE_ZONES * 2),
    ("Level_Towers_Realtime_Status", MAX_TOWER_POINTS * 8),
    ("Level_Enemies_Realtime_Status", MAX_ENEMIES * 4),
    ("Level_Knights_Realtime_Status", MAX_KNIGHTS * 3),
)


def _build_offsets() -> dict[str, tuple[int, int]]:
    offsets: dict[str, tuple[int, int]] = {}
    cursor = 0
    for name, size in _SCALAR_LAYOUT + _BLOCK_LAYOUT:
        offsets[name] = (cursor, size)
        cursor += size
    assert cursor == STRUCTURED_SIZE, f"layout sums to {cursor}, expected {STRUCTURED_SIZE}"
    return offsets


OFFSETS: dict[str, tuple[int, int]] = _build_offsets()

_TOWER_NAME_TO_CODE = {
    "Waiting to be Built": TOWER_UNBUILT,
    "Knight Tower": TOWER_KNIGHT,
    "Magician Tower": TOWER_MAGICIAN,
    "Archer Tower": TOWER_ARCHER,
}


class ObservationCapacityError(RuntimeError):
    """An entity collection exceeds its fixed observation block capacity."""


def _check_capacity(block: str, count: int, capacity: int) -> None:
    if count > capacity:
        raise ObservationCapacityError(
            f"{block} holds {count} entries, capacity {capacity}")


def flatten(engine: Engine, doc: dict | None = None) -> np.ndarray:
    """Flatten the (fog-filtered) game state into the length-759 vector."""
    if doc is None:
        doc = render_text(engine)
    out = np.zeros(STRUCTURED_SIZE, dtype=np.float32)

    def put(name: str, values) -> None:
        start, size = OFFSETS[name]
        values = list(values)
        _check_capacity(name, len(values), size)
        out[start:start + len(values)] = values

    put("Map_Center", (doc["Map_Center"]["X"], doc["Map_Center"]["Y"]))
    for name in ("Map_Side_Length", "Map_Left_Boundary", "Map_Right_Boundary",
                 "Map_Upper_Boundary", "Map_Lower_Boundary",
                 "Tower_Points_Bounding_Box_Width_Height",
                 "Level_Gold_Coins_Collection_Count",
                 "Level_Friendly_Fire_Compensation_Count",
                 "Level_Maximum_Gold_Coins", "Level_Initial_Health",
                 "Level_Total_Waves_Number", "Level_Inter_Wave_Interval",
                 "Level_Selling_Tower_Refund_Rate",
                 "Level_Gold_Coins_Refresh_Interval",
                 "Level_Gold_Coins_Retention_Time",
                 "Level_Gold_Coins_Minimum_Pickup_Amount",
                 "Level_Gold_Coins_Maximum_Pickup_Amount",
                 "Level_Current_Step", "Level_Current_Time", "Level_Current_Wave",
                 "Level_Current_Gold_Coins", "Level_Current_Health",
                 "Level_Remaining_Waves"):
        put(name, (doc[name],))
    put("Level_Enemy_Destination",
        (doc["Level_Enemy_Destination"]["X"], doc["Level_Enemy_Destination"]["Y"]))
    put("Level_Current_Wave_Countdown", (float(doc["Level_Current_Wave_Countdown"]),))
    put("Level_Fog_Of_War_Position",
        (doc["Level_Fog_Of_War_Position"]["X"], doc["Level_Fog_Of_War_Position"]["Y"]))
    put("Level_Knight_Reinforcements_Countdown",
        (doc["Level_Knight_Reinforcements_Countdown"],))

    hero = doc["Level_Hero_Realtime_Status"]
    if hero is not None:
        put("Level_Hero_Realtime_Status",
            (hero["Hero_Revive_Countdwon"], float(hero["Is_Hero_Dead"]),
             hero["Hero_Position"]["X"], hero["Hero_Position"]["Y"],
             hero["Hero_Current_Health"]))

    drop = doc["Level_Dropped_Gold_Coins_Realtime_Status"]
    if drop is not None:
        put("Level_Dropped_Gold_Coins_Realtime_Status",
            (drop["Position"]["X"], drop["Position"]["Y"], drop["RemainingLifetime"]))

    record = doc["Agent_Last_Action_Info"]
    put("Agent_Last_Action_Info",
        (record["Position"]["X"], record["Position"]["Y"], record["Action_Index"],
         float(record["Is_Success"]), record["Error_Code"]))

    paths = doc["Level_Enemy_Movement_Paths"]
    _check_capacity("Level_Enemy_Movement_Paths (roads)", len(paths), MAX_ROADS)
    start, _ = OFFSETS["Level_Enemy_Movement_Paths"]
    for r, road in enumerate(paths):
        _check_capacity("Level_Enemy_Movement_Paths (waypoints)",
                        len(road), MAX_WAYPOINTS_PER_ROAD)
        base = start + r * MAX_WAYPOINTS_PER_ROAD * 2
        for w, wp in enumerate(road):
            out[base + 2 * w] = wp["X"]
            out[base + 2 * w + 1] = wp["Y"]

    wave = doc["Level_Current_Wave_Enemies"]
    _check_capacity("Level_Current_Wave_Enemies", len(wave), ENEMY_TYPE_COUNT)
    start, _ = OFFSETS["Level_Current_Wave_Enemies"]
    out[start:start + len(wave)] = wave

    fires = doc["Level_Hero_Fire_Of_Rage_Positions"]
    _check_capacity("Level_Hero_Fire_Of_Rage_Positions", len(fires), MAX_FIRE_ZONES)
    start, _ = OFFSETS["Level_Hero_Fire_Of_Rage_Positions"]
    for i, pos in enumerate(fires):
        out[start + 2 * i] = pos["X"]
        out[start + 2 * i + 1] = pos["Y"]

    towers = doc["Level_Towers_Realtime_Status"]
    levels = doc.get("_tower_upgrade_levels") or [0] * len(towers)
    _check_capacity("Level_Towers_Realtime_Status", len(towers), MAX_TOWER_POINTS)
    start, _ = OFFSETS["Level_Towers_Realtime_Status"]
    for i, (entry, upgrade_level) in enumerate(zip(towers, levels)):
        base = start + i * 8
        out[base] = entry["Position"]["X"]
        out[base + 1] = entry["Position"]["Y"]
        out[base + 2] = _TOWER_NAME_TO_CODE[entry["Tower_Name"]]
        out[base + 3] = float(entry["Is_Bulit"])
        out[base + 4] = float(entry["Is_Frozen"])
        out[base + 5] = entry["Knights_Assembly_Position"]["X"]
        out[base + 6] = entry["Knights_Assembly_Position"]["Y"]
        out[base + 7] = upgrade_level

    enemies = doc["Level_Enemies_Realtime_Status"]
    _check_capacity("Level_Enemies_Realtime_Status", len(enemies), MAX_ENEMIES)
    start, _ = OFFSETS["Level_Enemies_Realtime_Status"]
    for i, entry in enumerate(enemies):
        base = start + i * 4
        out[base] = entry["Position"]["X"]
        out[base + 1] = entry["Position"]["Y"]
        out[base + 2] = entry["Current_Health"]
        out[base + 3] = entry["Type"]

    knights = doc["Level_Knights_Realtime_Status"]
    _check_capacity("Level_Knights_Realtime_Status", len(knights), MAX_KNIGHTS)
    start, _ = OFFSETS["Level_Knights_Realtime_Status"]
    for i, entry in enumerate(knights):
        base = start + i * 3
        out[base] = entry["Position"]["X"]
        out[base + 1] = entry["Position"]["Y"]
        out[base + 2] = entry["Current_Health"]

    return out

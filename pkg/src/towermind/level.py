"""Level configuration: file schema, validation, the difficulty metric, and
editor-export ingestion."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .catalog import EntityCatalog, default_config_dir
from .constants import (
    ENEMY_TYPE_COUNT,
    MAP_HALF,
    MAX_ROADS,
    MAX_TOWER_POINTS,
    MAX_WAYPOINTS_PER_ROAD,
    ROAD_MARGIN,
    WAVE_VECTOR_SLOTS,
)

# Design-time bounds used by the difficulty metric.
DIFFICULTY_R_MAX = 5
DIFFICULTY_T_MAX = 15
DIFFICULTY_E_TOTAL = 15
DIFFICULTY_N_MAX = 25
DIFFICULTY_I_MIN = 120
DIFFICULTY_G_MIN = 40

BENCHMARK_LEVEL_IDS = ("Lv1", "Lv2", "Lv3", "Lv4", "Lv5")

_BOUND = MAP_HALF + ROAD_MARGIN


class LevelValidationError(ValueError):
    """A level file violates a structural invariant."""


@dataclass(frozen=True)
class TowerPoint:
    x: float
    y: float
    assembly_x: float
    assembly_y: float
    misleading: bool = False


@dataclass(frozen=True)
class LevelConfig:
    level_id: str
    name: str
    roads: tuple[tuple[tuple[float, float], ...], ...]
    destination: tuple[float, float]
    tower_points: tuple[TowerPoint, ...]
    hero_start: tuple[float, float]
    fog_start: tuple[float, float]
    waves: tuple[tuple[int, ...], ...]      # per-wave counts over 15 enemy types
    inter_wave_interval: float
    initial_gold: int
    max_gold: int
    initial_base_health: int
    refund_rate: float
    gold_refresh_interval: int
    gold_retention_time: int
    gold_pickup_min: int
    gold_pickup_max: int

    @property
    def total_waves(self) -> int:
        return len(self.waves)

    @property
    def total_enemies(self) -> int:
        return sum(sum(w) for w in self.waves)

    def enemy_types_used(self) -> set[int]:
        return {t for wave in self.waves for t, n in enumerate(wave) if n > 0}


@dataclass(frozen=True)
class DifficultyComponents:
    d_r: float
    d_t: float
    d_e: float
    d_re: float

    @property
    def total(self) -> float:
        return self.d_r + self.d_t + self.d_e + self.d_re


def _check_coord(value, label: str, bound: float = _BOUND) -> float:
    v = float(value)
    if not (-bound <= v <= bound) or not math.isfinite(v):
        raise LevelValidationError(f"{label} out of bounds: {v}")
    return v


def _pair(value, label: str, bound: float = _BOUND) -> tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise LevelValidationError(f"{label} must be an [x, y] pair")
    return (_check_coord(value[0], f"{label}.x", bound), _check_coord(value[1], f"{label}.y", bound))


def validate_level(config: LevelConfig) -> None:
    """Raise LevelValidationError naming the first violated invariant."""
    if not config.roads:
        raise LevelValidationError("level must define at least one road")
    if len(config.roads) > MAX_ROADS:
        raise LevelValidationError(
            f"too many roads: {len(config.roads)} > {MAX_ROADS}")
    for i, road in enumerate(config.roads):
        if len(road) < 2:
            raise LevelValidationError(f"road {i} needs at least 2 waypoints")
        if len(road) > MAX_WAYPOINTS_PER_ROAD:
            raise LevelValidationError(
                f"road {i} has {len(road)} waypoints > {MAX_WAYPOINTS_PER_ROAD}")
        if road[-1] != config.destination:
            raise LevelValidationError(f"road {i} does not end at the destination")
    if not config.tower_points:
        raise LevelValidationError("level must define at least one tower point")
    if len(config.tower_points) > MAX_TOWER_POINTS:
        raise LevelValidationError(
            f"too many tower points: {len(config.tower_points)} > {MAX_TOWER_POINTS}")
    if not config.waves:
        raise LevelValidationError("level must define at least one wave")
    for i, wave in enumerate(config.waves):
        if len(wave) != ENEMY_TYPE_COUNT:
            raise LevelValidationError(
                f"wave {i} vector has {len(wave)} slots, expected {ENEMY_TYPE_COUNT}")
        if any(n < 0 for n in wave):
            raise LevelValidationError(f"wave {i} has a negative count")
        if sum(wave) == 0:
            raise LevelValidationError(f"wave {i} is empty")
        if sum(wave) > WAVE_VECTOR_SLOTS:
            raise LevelValidationError(
                f"wave {i} has {sum(wave)} enemies > {WAVE_VECTOR_SLOTS}")
    if config.inter_wave_interval <= 0:
        raise LevelValidationError("inter_wave_interval must be positive")
    if config.initial_gold < 0 or config.max_gold < config.initial_gold:
        raise LevelValidationError("initial_gold must be within [0, max_gold]")
    if config.initial_base_health <= 0:
        raise LevelValidationError("initial_base_health must be positive")
    if not (0.0 <= config.refund_rate <= 1.0):
        raise LevelValidationError("refund_rate must be within [0, 1]")
    if config.gold_refresh_interval <= 0 or config.gold_retention_time <= 0:
        raise LevelValidationError("gold refresh/retention must be positive")
    if not (0 < config.gold_pickup_min <= config.gold_pickup_max):
        raise LevelValidationError("gold pickup range must satisfy 0 < min <= max")


def _level_from_doc(doc: dict, fallback_id: str = "custom") -> LevelConfig:
    try:
        m = doc["map"]
        roads = tuple(
            tuple(_pair(p, f"road[{i}][{j}]") for j, p in enumerate(road))
            for i, road in enumerate(m["roads"])
        )
        points = tuple(
            TowerPoint(
                *_pair(tp["position"], f"tower_point[{i}].position", bound=MAP_HALF),
                *_pair(tp["assembly"], f"tower_point[{i}].assembly", bound=MAP_HALF),
                misleading=bool(tp.get("misleading", False)),
            )
            for i, tp in enumerate(m["tower_points"])
        )
        waves_doc = doc["waves"]
        econ = doc["economy"]
        config = LevelConfig(
            level_id=str(doc.get("id", fallback_id)),
            name=str(doc.get("name", doc.get("id", fallback_id))),
            roads=roads,
            destination=_pair(m["destination"], "destination"),
            tower_points=points,
            hero_start=_pair(m["hero_start"], "hero_start", bound=MAP_HALF),
            fog_start=_pair(m["fog_start"], "fog_start", bound=MAP_HALF),
            waves=tuple(tuple(int(n) for n in w) for w in waves_doc["compositions"]),
            inter_wave_interval=float(waves_doc["inter_wave_interval"]),
            initial_gold=int(econ["initial_gold"]),
            max_gold=int(econ["max_gold"]),
            initial_base_health=int(econ["initial_base_health"]),
            refund_rate=float(econ["refund_rate"]),
            gold_refresh_interval=int(econ["gold_refresh_interval"]),
            gold_retention_time=int(econ["gold_retention_time"]),
            gold_pickup_min=int(econ["gold_pickup_min"]),
            gold_pickup_max=int(econ["gold_pickup_max"]),
        )
    except LevelValidationError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise LevelValidationError(f"malformed level document: {exc}") from exc
    validate_level(config)
    return config


def load_level(source: str | Path | dict, config_dir: str | Path | None = None) -> LevelConfig:
    """Load a level from a bundled id ("Lv1".."Lv5"), a file path, or a parsed doc."""
    if isinstance(source, dict):
        return _level_from_doc(source)
    name = str(source)
    if name.capitalize() in BENCHMARK_LEVEL_IDS or name.lower() in [s.lower() for s in BENCHMARK_LEVEL_IDS]:
        base = Path(config_dir) if config_dir is not None else default_config_dir()
        path = base / "levels" / f"{name.lower()}.json"
    else:
        path = Path(name)
    if not path.is_file():
        raise LevelValidationError(f"no such level file: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise LevelValidationError(f"level file is not valid JSON: {exc}") from exc
    return _level_from_doc(doc, fallback_id=path.stem)


def load_benchmark_levels(config_dir: str | Path | None = None) -> dict[str, LevelConfig]:
    return {lid: load_level(lid, config_dir) for lid in BENCHMARK_LEVEL_IDS}


def difficulty(level: LevelConfig, catalog: EntityCatalog | None = None) -> DifficultyComponents:
    """Scalar level difficulty, the sum of road/tower/enemy/resource pressure terms."""
    if level.initial_gold == 0:
        raise ValueError("difficulty undefined for initial_gold = 0")
    if level.gold_pickup_min == 0:
        raise ValueError("difficulty undefined for zero gold drop amount")
    d_r = len(level.roads) / DIFFICULTY_R_MAX
    d_t = len(level.tower_points) / DIFFICULTY_T_MAX
    mean_per_wave = level.total_enemies / level.total_waves
    d_e = len(level.enemy_types_used()) / DIFFICULTY_E_TOTAL + mean_per_wave / DIFFICULTY_N_MAX
    d_re = (
        DIFFICULTY_I_MIN / level.initial_gold
        + DIFFICULTY_G_MIN / level.gold_pickup_min
        + (1.0 - level.refund_rate)
    ) / 3.0
    return DifficultyComponents(d_r=d_r, d_t=d_t, d_e=d_e, d_re=d_re)


# --- editor export ingestion -------------------------------------------------

EDITOR_SCHEMA_VERSION = 1

_DEFAULT_WAVES = {"inter_wave_interval": 6.0,
                  "compositions": [[0, 0, 0, 0, 0, 5, 0, 0, 0, 0, 0, 0, 0, 0, 0]]}
_DEFAULT_ECONOMY = {
    "initial_gold": 500, "max_gold": 3000, "initial_base_health": 20,
    "refund_rate": 1.0, "gold_refresh_interval": 2, "gold_retention_time": 15,
    "gold_pickup_min": 100, "gold_pickup_max": 130,
}


def _canonical_number(value) -> str:
    # JSON.stringify style: integral floats print without a decimal point.
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            raise ValueError("non-finite number in document")
        if value == int(value) and abs(value) < 1e15:
            return str(int(value))
        return repr(value)
    raise TypeError(f"not a number: {value!r}")


def canonical_json(doc, indent: int = 0) -> str:
    """Deterministic serialization (sorted keys, 2-space indent) that matches
    JSON.stringify(obj, null, 2) byte for byte, so editor exports round-trip."""
    pad = "  " * indent
    child_pad = "  " * (indent + 1)
    if isinstance(doc, dict):
        if not doc:
            return "{}"
        parts = [
            f'{child_pad}{json.dumps(str(k))}: {canonical_json(doc[k], indent + 1)}'
            for k in sorted(doc)
        ]
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    if isinstance(doc, (list, tuple)):
        if not doc:
            return "[]"
        parts = [f"{child_pad}{canonical_json(v, indent + 1)}" for v in doc]
        return "[\n" + ",\n".join(parts) + f"\n{pad}]"
    if doc is None:
        return "null"
    if isinstance(doc, str):
        return json.dumps(doc)
    return _canonical_number(doc)


def import_editor_export(document: dict | str | Path) -> LevelConfig:
    """Build a LevelConfig from a level-editor export document."""
    if not isinstance(document, dict):
        document = json.loads(Path(document).read_text(encoding="utf-8"))
    if document.get("kind") != "editor_export":
        raise LevelValidationError("not an editor export document")
    if document.get("schema_version") != EDITOR_SCHEMA_VERSION:
        raise LevelValidationError(
            f"unsupported editor schema_version: {document.get('schema_version')}")
    doc = {
        "id": document.get("id", document.get("name", "edited")),
        "name": document.get("name", "edited"),
        "map": {
            "roads": document["roads"],
            "destination": document["destination"],
            "tower_points": document["tower_points"],
            "hero_start": document.get("hero_start", [0.0, 0.0]),
            "fog_start": document.get("fog_start", [0.0, 1.5]),
        },
        "waves": document.get("waves", _DEFAULT_WAVES),
        "economy": document.get("economy", _DEFAULT_ECONOMY),
    }
    return _level_from_doc(doc, fallback_id="edited")


def export_editor_document(level: LevelConfig, background: str = "grass") -> dict:
    """Inverse of import_editor_export; exports canonicalize to stable bytes."""
    return {
        "schema_version": EDITOR_SCHEMA_VERSION,
        "kind": "editor_export",
        "id": level.level_id,
        "name": level.name,
        "background": background,
        "roads": [[[x, y] for x, y in road] for road in level.roads],
        "destination": list(level.destination),
        "tower_points": [
            {"position": [tp.x, tp.y], "assembly": [tp.assembly_x, tp.assembly_y],
             "misleading": tp.misleading}
            for tp in level.tower_points
        ],
        "hero_start": list(level.hero_start),
        "fog_start": list(level.fog_start),
        "waves": {"inter_wave_interval": level.inter_wave_interval,
                  "compositions": [list(w) for w in level.waves]},
        "economy": {
            "initial_gold": level.initial_gold,
            "max_gold": level.max_gold,
            "initial_base_health": level.initial_base_health,
            "refund_rate": level.refund_rate,
            "gold_refresh_interval": level.gold_refresh_interval,
            "gold_retention_time": level.gold_retention_time,
            "gold_pickup_min": level.gold_pickup_min,
            "gold_pickup_max": level.gold_pickup_max,
        },
    }

"""Static entity stat tables (towers, knight, hero, reinforcements, enemies).

Stats load from the JSON files under ``data/config``; those files are also
embedded verbatim in zero-shot prompts, so the loader never rewrites them.
Attack ranges in the tables are diameters; effective radii are halved here.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .constants import TICK_DT

CONFIG_DIR_ENV_VAR = "TOWERMIND_CONFIG_DIR"

_CATALOG_FILES = ("towers.json", "knight.json", "hero.json", "reinforcements.json", "enemies.json")


def default_config_dir() -> Path:
    override = os.environ.get(CONFIG_DIR_ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).parent / "data" / "config"


def _ticks(seconds: float) -> int:
    return round(seconds / TICK_DT)


@dataclass(frozen=True)
class TowerSpec:
    type_code: int
    name: str
    price: int
    attack_interval: float
    attack_damage: int
    attack_extra_damage: int
    attack_range: float
    can_attack_air: bool
    can_attack_ground: bool
    upgrade_price: int
    upgrade_growth: float

    @property
    def radius(self) -> float:
        return self.attack_range / 2.0

    @property
    def interval_ticks(self) -> int:
        return _ticks(self.attack_interval)

    def damage_at(self, level: int) -> tuple[int, int]:
        """(base, extra) damage after `level` upgrades."""
        factor = self.upgrade_growth ** level
        return round(self.attack_damage * factor), round(self.attack_extra_damage * factor)


@dataclass(frozen=True)
class KnightSpec:
    health: int
    movement_speed: float
    attack_interval: float
    attack_damage: int
    attack_extra_damage: int
    attack_range: float
    can_attack_air: bool
    can_attack_ground: bool
    ff_compensation_value: int
    ff_compensation_probability: float

    @property
    def radius(self) -> float:
        return self.attack_range / 2.0

    @property
    def interval_ticks(self) -> int:
        return _ticks(self.attack_interval)


@dataclass(frozen=True)
class HeroSpec:
    health: int
    movement_speed: float
    attack_interval: float
    attack_damage: int
    attack_extra_damage: int
    attack_range: float
    skill_damage: int
    skill_extra_damage: int
    skill_cost_health: int
    skill_duration: float
    skill_range: float
    upgrade_cost: int
    upgrade_health_growth: int
    recover_per_sec: int
    revive_time: float
    can_attack_air: bool
    can_attack_ground: bool

    @property
    def radius(self) -> float:
        return self.attack_range / 2.0

    @property
    def skill_radius(self) -> float:
        return self.skill_range / 2.0

    @property
    def interval_ticks(self) -> int:
        return _ticks(self.attack_interval)

    @property
    def revive_ticks(self) -> int:
        return _ticks(self.revive_time)

    @property
    def skill_duration_ticks(self) -> int:
        return _ticks(self.skill_duration)


@dataclass(frozen=True)
class ReinforcementSpec:
    number: int
    exist_time: float

    @property
    def exist_ticks(self) -> int:
        return _ticks(self.exist_time)


@dataclass(frozen=True)
class EnemySpec:
    type_code: int
    name: str
    health: int
    movement_speed: float
    attack_interval: float
    attack_damage: int
    attack_extra_damage: int
    flying: bool

    @property
    def interval_ticks(self) -> int:
        return _ticks(self.attack_interval)


@dataclass(frozen=True)
class Tuning:
    """Engine knobs the source material leaves unquantified. Defaults are
    chosen so the easiest bundled level stays winnable; all are overridable."""

    freeze_duration: float = 3.0       # tower-freeze length (Sorcerer / Bone Chanter)
    freeze_range: float = 2.5          # freeze reach, diameter like attack ranges
    gold_pickup_radius: float = 0.15   # "near the gold coins"
    fog_speed: float = 0.1             # fog drift, map units / s
    fog_redirect_interval: float = 5.0 # seconds between fog direction re-rolls
    spawn_spacing: float = 0.8         # seconds between consecutive spawns in a wave
    enemy_block_radius: float = 0.25   # ground enemies stop to fight inside this
    reinforce_cooldown: float = 10.0   # knight-reinforcements cooldown
    zone_damage_interval: float = 1.0  # fire-of-rage damage cadence


@dataclass(frozen=True)
class EntityCatalog:
    towers: dict[int, TowerSpec]
    knight: KnightSpec
    hero: HeroSpec
    reinforcements: ReinforcementSpec
    enemies: dict[int, EnemySpec]
    raw: dict[str, str]  # verbatim file bodies, keyed by stem (prompt embedding)


def _tower_from_json(entry: dict) -> TowerSpec:
    return TowerSpec(
        type_code=entry["Type"],
        name=entry["Name"],
        price=entry["Price"],
        attack_interval=entry["AttackSpeed"],
        attack_damage=entry["AttackDamage"],
        attack_extra_damage=entry["AttackExtraDamage"],
        attack_range=entry["AttackRange"],
        can_attack_air=entry["CanAttackAir"],
        can_attack_ground=entry["CanAttackGround"],
        upgrade_price=entry["UpgradePrice"],
        upgrade_growth=entry["UpgradeGrowth"],
    )


def _enemy_from_json(entry: dict) -> EnemySpec:
    return EnemySpec(
        type_code=entry["Type"],
        name=entry["Name"],
        health=entry["Health"],
        movement_speed=entry["MovementSpeed"],
        attack_interval=entry["AttackSpeed"],
        attack_damage=entry["AttackDamage"],
        attack_extra_damage=entry["AttackExtraDamage"],
        flying=entry["MovementType"] == "Flying",
    )


def load_catalog(config_dir: str | Path | None = None) -> EntityCatalog:
    base = Path(config_dir) if config_dir is not None else default_config_dir()
    raw: dict[str, str] = {}
    for name in _CATALOG_FILES:
        path = base / name
        if not path.is_file():
            raise FileNotFoundError(f"catalog file missing: {path}")
        raw[path.stem] = path.read_text(encoding="utf-8")

    towers_doc = json.loads(raw["towers"])["Towers"]
    towers = {t["Type"]: _tower_from_json(t) for t in towers_doc}
    if sorted(towers) != [1, 2, 3]:
        raise ValueError("tower catalog must define exactly types 1, 2, 3")

    k = json.loads(raw["knight"])
    knight = KnightSpec(
        health=k["Health"],
        movement_speed=k["MovementSpeed"],
        attack_interval=k["AttackSpeed"],
        attack_damage=k["AttackDamage"],
        attack_extra_damage=k["AttackExtraDamage"],
        attack_range=k["AttackRange"],
        can_attack_air=k["CanAttackAir"],
        can_attack_ground=k["CanAttackGround"],
        ff_compensation_value=k["FFCompensationValue"],
        ff_compensation_probability=k["FFCompensationProbability"],
    )

    h = json.loads(raw["hero"])
    hero = HeroSpec(
        health=h["Health"],
        movement_speed=h["MovementSpeed"],
        attack_interval=h["AttackSpeed"],
        attack_damage=h["AttackDamage"],
        attack_extra_damage=h["AttackExtraDamage"],
        attack_range=h["AttackRange"],
        skill_damage=h["SkillAttackDamage"],
        skill_extra_damage=h["SkillAttackExtraDamage"],
        skill_cost_health=h["SkillCostHealth"],
        skill_duration=h["SkillLastTime"],
        skill_range=h["SkillAttackRange"],
        upgrade_cost=h["UpgradeGoldCoinCost"],
        upgrade_health_growth=h["UpgradeHealthGrowthValue"],
        recover_per_sec=h["RecoverHealthPerSec"],
        revive_time=h["ReviveTime"],
        can_attack_air=h["CanAttackAir"],
        can_attack_ground=h["CanAttackGround"],
    )

    r = json.loads(raw["reinforcements"])
    reinforcements = ReinforcementSpec(number=r["Number"], exist_time=r["ExistTime"])

    enemies_doc = json.loads(raw["enemies"])["Enemies"]
    enemies = {e["Type"]: _enemy_from_json(e) for e in enemies_doc}
    if sorted(enemies) != list(range(15)):
        raise ValueError("enemy catalog must define exactly types 0..14")

    for spec in list(towers.values()) + list(enemies.values()):
        if spec.attack_damage < 0 or spec.attack_extra_damage < 0:
            raise ValueError(f"negative damage in catalog entry {spec.name!r}")

    return EntityCatalog(towers=towers, knight=knight, hero=hero,
                         reinforcements=reinforcements, enemies=enemies, raw=raw)


def load_env_features(config_dir: str | Path | None = None) -> dict:
    base = Path(config_dir) if config_dir is not None else default_config_dir()
    path = base / "env_config.json"
    if not path.is_file():
        return {"schema_version": 1, "debug_mode": False, "human_recording": False}
    return json.loads(path.read_text(encoding="utf-8"))

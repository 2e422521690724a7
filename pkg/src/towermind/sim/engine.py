"""Fixed-timestep world simulation.

Each tick advances 0.02 s through a fixed sub-phase order (required for
determinism): wave spawning, movement, blocking/target acquisition, attack
resolution, skill zones, gold refresh/pickup/expiry, hero upkeep, fog drift,
cooldown decrements, base-hit accounting. All stochastic events draw from
the state's single PRNG stream in exactly this order.
"""
from __future__ import annotations

import math

from ..catalog import EntityCatalog, Tuning
from ..constants import (
    FOG_HALF_H,
    FOG_HALF_W,
    MAP_HALF,
    MAX_ENEMIES,
    TICK_DT,
    TOWER_KNIGHT,
    TOWER_MAGICIAN,
)
from ..level import LevelConfig
from ..rng import Xoshiro256
from .state import (
    Enemy,
    Fog,
    GameState,
    GoldDrop,
    Hero,
    Knight,
    Tower,
)

FREEZE_CASTER_TYPES = (1, 7)  # Orc Sorcerer, Bone Chanter
MAGICIAN_TRAP_HALF = 0.4      # blade trap square, side 0.8

TWO_PI = 2.0 * math.pi


def resolve_attack(base_damage: int, extra_damage: int, rng: Xoshiro256) -> int:
    """Damage roll: base plus a uniform integer in [0, extra]. One rng draw."""
    return base_damage + rng.randint(0, extra_damage)


class Engine:
    """Deterministic single-level simulation. One instance per episode;
    never call into one instance from multiple threads."""

    def __init__(self, level: LevelConfig, catalog: EntityCatalog,
                 seed: int = 0, tuning: Tuning | None = None):
        self.level = level
        self.catalog = catalog
        self.tuning = tuning or Tuning()
        # per-road segment table: (next_wx, next_wy, unit_x, unit_y, length)
        self._segments: list[list[tuple[float, float, float, float, float]]] = []
        for road in level.roads:
            segs = []
            for (x0, y0), (x1, y1) in zip(road, road[1:]):
                dx, dy = x1 - x0, y1 - y0
                length = math.hypot(dx, dy)
                if length <= 0.0:
                    raise ValueError("zero-length road segment")
                segs.append((x1, y1, dx / length, dy / length, length))
            self._segments.append(segs)
        t = self.tuning
        self._freeze_ticks = round(t.freeze_duration / TICK_DT)
        self._freeze_radius = t.freeze_range / 2.0
        self._fog_redirect_ticks = round(t.fog_redirect_interval / TICK_DT)
        self._spawn_gap = round(t.spawn_spacing / TICK_DT)
        self._reinforce_ticks = round(t.reinforce_cooldown / TICK_DT)
        self._zone_damage_ticks = round(t.zone_damage_interval / TICK_DT)
        self._block_r2 = t.enemy_block_radius ** 2
        self._pickup_r2 = t.gold_pickup_radius ** 2
        self._interval_ticks = round(level.inter_wave_interval / TICK_DT)
        self._refresh_ticks = round(level.gold_refresh_interval / TICK_DT)
        self._retention_ticks = round(level.gold_retention_time / TICK_DT)
        self._total_waves = level.total_waves
        self.state = self.reset(seed)

    # -- lifecycle -----------------------------------------------------------

    def reset(self, seed: int) -> GameState:
        level, catalog = self.level, self.catalog
        rng = Xoshiro256(seed)
        towers = [
            Tower(point_index=i, x=tp.x, y=tp.y,
                  default_assembly_x=tp.assembly_x, default_assembly_y=tp.assembly_y,
                  assembly_x=tp.assembly_x, assembly_y=tp.assembly_y)
            for i, tp in enumerate(level.tower_points)
        ]
        hero = Hero(x=level.hero_start[0], y=level.hero_start[1],
                    health=catalog.hero.health, max_health=catalog.hero.health)
        angle = rng.uniform(0.0, TWO_PI)
        fog = Fog(x=level.fog_start[0], y=level.fog_start[1],
                  dir_x=math.cos(angle), dir_y=math.sin(angle),
                  redirect_ticks=self._fog_redirect_ticks)
        self.state = GameState(
            rng=rng,
            gold=level.initial_gold,
            base_health=level.initial_base_health,
            towers=towers,
            hero=hero,
            fog=fog,
            wave_countdown_ticks=self._interval_ticks,
            gold_refresh_ticks=self._refresh_ticks,
        )
        return self.state

    def tick(self) -> int:
        """Advance one tick. Returns the number of enemies that reached the
        base during this tick (each costs one base health point)."""
        state = self.state
        if state.done:
            raise RuntimeError("tick() on a terminated episode; reset first")
        state.step_index += 1
        self._phase_waves(state)
        arrivals = self._phase_movement(state)
        self._phase_blocking(state)
        self._phase_attacks(state)
        self._phase_zones(state)
        self._phase_gold(state)
        self._phase_hero(state)
        self._phase_fog(state)
        self._phase_timers(state)
        return self._phase_base(state, arrivals)

    # -- fog helpers ---------------------------------------------------------

    def fog_covers(self, x: float, y: float) -> bool:
        """Effective fog membership (elliptical cloud, void while a fire-of-rage
        zone burns inside it)."""
        state = self.state
        if state.fog_suppressed:
            return False
        return self._in_fog_raw(state, x, y)

    @staticmethod
    def _in_fog_raw(state: GameState, x: float, y: float) -> bool:
        dx = (x - state.fog.x) / FOG_HALF_W
        dy = (y - state.fog.y) / FOG_HALF_H
        return dx * dx + dy * dy <= 1.0

    def _update_fog_suppression(self, state: GameState) -> None:
        state.fog_suppressed = any(
            self._in_fog_raw_static(state.fog, z.x, z.y) for z in state.zones)

    @staticmethod
    def _in_fog_raw_static(fog: Fog, x: float, y: float) -> bool:
        dx = (x - fog.x) / FOG_HALF_W
        dy = (y - fog.y) / FOG_HALF_H
        return dx * dx + dy * dy <= 1.0

    # -- gold ledger ---------------------------------------------------------

    def _add_gold(self, state: GameState, amount: int, source: str) -> None:
        if source == "pickup":
            state.gold_from_pickups += amount
        elif source == "compensation":
            state.gold_from_compensation += amount
        else:
            state.gold_from_refunds += amount
        total = state.gold + amount
        if total > self.level.max_gold:
            state.gold_discarded += total - self.level.max_gold
            total = self.level.max_gold
        state.gold = total

    def _spend_gold(self, state: GameState, amount: int) -> None:
        state.gold -= amount
        state.gold_spent += amount

    # -- phase 1: waves ------------------------------------------------------

    def spawn_wave(self, state: GameState) -> None:
        """Enqueue the current wave's enemies and advance the wave counter."""
        composition = self.level.waves[state.wave_index - 1]
        queue = state.pending_spawns
        for type_code, count in enumerate(composition):
            for _ in range(count):
                queue.append(type_code)
        state.spawned_waves += 1
        if state.spawned_waves < self.level.total_waves:
            state.wave_index += 1
            state.wave_countdown_ticks = self._interval_ticks
        else:
            state.wave_countdown_ticks = 0

    def _phase_waves(self, state: GameState) -> None:
        if state.spawned_waves < self.level.total_waves:
            state.wave_countdown_ticks -= 1
            if state.wave_countdown_ticks <= 0:
                self.spawn_wave(state)
        if state.spawn_gap_ticks > 0:
            state.spawn_gap_ticks -= 1
        # Capacity backpressure keeps live enemies within observation capacity.
        if state.pending_spawns and state.spawn_gap_ticks <= 0 \
                and len(state.enemies) < MAX_ENEMIES:
            type_code = state.pending_spawns.popleft()
            road_index = state.rng.randint(0, len(self.level.roads) - 1)
            self._spawn_enemy(state, type_code, road_index)
            state.spawn_gap_ticks = self._spawn_gap

    def _spawn_enemy(self, state: GameState, type_code: int, road_index: int) -> None:
        spec = self.catalog.enemies[type_code]
        x0, y0 = self.level.roads[road_index][0]
        wx, wy, ux, uy, length = self._segments[road_index][0]
        enemy = Enemy(
            eid=state.next_entity_id, type_code=type_code, health=spec.health,
            x=x0, y=y0, road_index=road_index, waypoint_cursor=1, progress=0.0,
            speed=spec.movement_speed, flying=spec.flying,
            damage=spec.attack_damage, extra_damage=spec.attack_extra_damage,
            interval_ticks=spec.interval_ticks,
            freeze_caster=type_code in FREEZE_CASTER_TYPES,
            step_per_tick=spec.movement_speed * TICK_DT,
            seg_ux=ux, seg_uy=uy, seg_left=length,
        )
        state.next_entity_id += 1
        state.enemies.append(enemy)

    # -- phase 2: movement ---------------------------------------------------

    def _phase_movement(self, state: GameState) -> int:
        arrivals = 0
        segments = self._segments
        for enemy in state.enemies:
            if enemy.blocker is not None:
                continue
            step = enemy.step_per_tick
            left = enemy.seg_left
            if step < left:
                # fast path: stay on the current segment
                enemy.x += enemy.seg_ux * step
                enemy.y += enemy.seg_uy * step
                enemy.seg_left = left - step
                enemy.progress += step
                continue
            while step > 0.0:
                if step < enemy.seg_left:
                    enemy.x += enemy.seg_ux * step
                    enemy.y += enemy.seg_uy * step
                    enemy.seg_left -= step
                    enemy.progress += step
                    break
                # reach the waypoint, move on to the next segment
                road = segments[enemy.road_index]
                wx, wy, _, _, _ = road[enemy.waypoint_cursor - 1]
                enemy.x, enemy.y = wx, wy
                step -= enemy.seg_left
                enemy.progress += enemy.seg_left
                if enemy.waypoint_cursor >= len(road):
                    enemy.alive = False
                    arrivals += 1
                    break
                nwx, nwy, ux, uy, length = road[enemy.waypoint_cursor]
                enemy.waypoint_cursor += 1
                enemy.seg_ux, enemy.seg_uy, enemy.seg_left = ux, uy, length
        if arrivals:
            state.enemies = [e for e in state.enemies if e.alive]

        knight_speed = self.catalog.knight.movement_speed
        towers = state.towers
        for knight in state.knights:
            if knight.home_tower >= 0:
                home = towers[knight.home_tower]
                knight.goal_x, knight.goal_y = home.assembly_x, home.assembly_y
                speed = knight_speed * (self.catalog.towers[TOWER_KNIGHT].upgrade_growth
                                        ** home.upgrade_level)
            else:
                speed = knight_speed
            dx = knight.goal_x - knight.x
            dy = knight.goal_y - knight.y
            if dx == 0.0 and dy == 0.0:
                continue
            dist = math.hypot(dx, dy)
            step = speed * TICK_DT
            if dist <= step:
                knight.x, knight.y = knight.goal_x, knight.goal_y
            else:
                knight.x += dx / dist * step
                knight.y += dy / dist * step

        hero = state.hero
        if hero.has_target and not hero.dead:
            dx = hero.move_x - hero.x
            dy = hero.move_y - hero.y
            dist = math.hypot(dx, dy)
            step = self.catalog.hero.movement_speed * TICK_DT
            if dist <= step:
                hero.x, hero.y = hero.move_x, hero.move_y
                hero.has_target = False
            else:
                hero.x += dx / dist * step
                hero.y += dy / dist * step
        return arrivals

    # -- phase 3: blocking ---------------------------------------------------

    def _friendly_active(self, state: GameState, unit) -> bool:
        if isinstance(unit, Hero):
            if unit.dead:
                return False
        elif not unit.alive:
            return False
        return not self.fog_covers(unit.x, unit.y)

    def _phase_blocking(self, state: GameState) -> None:
        """Ground enemies stop to fight an active knight/hero inside the
        blocking radius; fogged or dead friendlies neither block nor fight."""
        block_r2 = self._block_r2
        hero = state.hero
        fog_covers = self.fog_covers
        hero_active = not hero.dead and not fog_covers(hero.x, hero.y)
        hx, hy = hero.x, hero.y
        if state.knights:
            active_knights = [k for k in state.knights
                              if k.alive and not fog_covers(k.x, k.y)]
        else:
            active_knights = ()
        for enemy in state.enemies:
            if enemy.flying:
                continue
            blocker = enemy.blocker
            if blocker is not None:
                if blocker is hero:
                    still = hero_active
                else:
                    still = blocker.alive and not fog_covers(blocker.x, blocker.y)
                if still:
                    dx = blocker.x - enemy.x
                    dy = blocker.y - enemy.y
                    still = dx * dx + dy * dy <= block_r2
                if still:
                    continue
                enemy.blocker = None
            best = None
            best_d2 = block_r2
            ex, ey = enemy.x, enemy.y
            if hero_active:
                dx = hx - ex
                if -0.5 < dx < 0.5:
                    dy = hy - ey
                    d2 = dx * dx + dy * dy
                    if d2 <= best_d2:
                        best, best_d2 = hero, d2
            for knight in active_knights:
                dx = knight.x - ex
                if dx > 0.5 or dx < -0.5:
                    continue
                dy = knight.y - ey
                d2 = dx * dx + dy * dy
                if d2 < best_d2:
                    best, best_d2 = knight, d2
            if best is not None:
                enemy.blocker = best

    # -- phase 4: attacks ----------------------------------------------------

    def _select_target(self, state: GameState, x: float, y: float, radius: float,
                       can_air: bool, can_ground: bool) -> Enemy | None:
        """Classic "first" targeting: the in-range enemy furthest along its
        path; ties go to the lower entity id."""
        r2 = radius * radius
        best = None
        best_progress = -1.0
        for enemy in state.enemies:
            dx = enemy.x - x
            if dx > radius or dx < -radius:
                continue
            dy = enemy.y - y
            if dx * dx + dy * dy > r2 or not enemy.alive:
                continue
            if enemy.flying:
                if not can_air:
                    continue
            elif not can_ground:
                continue
            if enemy.progress > best_progress:
                best, best_progress = enemy, enemy.progress
        return best

    def _kill_enemy(self, state: GameState, enemy: Enemy) -> None:
        enemy.alive = False
        enemy.blocker = None

    def _damage_knight(self, state: GameState, knight: Knight, amount: int,
                       from_hero_skill: bool) -> None:
        knight.health -= amount
        if knight.health <= 0:
            self._remove_knight(state, knight)
            if from_hero_skill:
                self.apply_friendly_fire(state, 1)

    def _remove_knight(self, state: GameState, knight: Knight) -> None:
        knight.alive = False
        if knight.home_tower >= 0:
            state.towers[knight.home_tower].knight_count -= 1

    def _damage_hero(self, state: GameState, amount: int) -> None:
        hero = state.hero
        hero.health -= amount
        if hero.health <= 0:
            self._kill_hero(state)

    def _kill_hero(self, state: GameState) -> None:
        hero = state.hero
        hero.health = 0
        hero.dead = True
        hero.has_target = False
        hero.revive_ticks = self.catalog.hero.revive_ticks

    def apply_friendly_fire(self, state: GameState, killed_knight_count: int) -> None:
        """Friendly-fire compensation for knights killed by the hero's skill."""
        spec = self.catalog.knight
        for _ in range(killed_knight_count):
            draw = state.rng.random()
            if draw < spec.ff_compensation_probability:
                self._add_gold(state, spec.ff_compensation_value, "compensation")
                state.ff_compensation_count += 1

    def _phase_attacks(self, state: GameState) -> None:
        rng = state.rng
        enemies = state.enemies
        any_enemy_dead = False

        # 4a. towers (archer/magician attacks, knight-tower summons)
        for tower in state.towers:
            if tower.cooldown_ticks > 0:
                tower.cooldown_ticks -= 1
            if tower.tower_type == 0 or tower.cooldown_ticks > 0:
                continue
            if tower.frozen_ticks > 0 or self.fog_covers(tower.x, tower.y):
                continue
            spec = self.catalog.towers[tower.tower_type]
            if tower.tower_type == TOWER_KNIGHT:
                if tower.knight_count < 3:
                    self._summon_knight(state, tower)
                    tower.cooldown_ticks = spec.interval_ticks
                continue
            target = self._select_target(state, tower.x, tower.y, spec.radius,
                                         spec.can_attack_air, spec.can_attack_ground)
            if target is None:
                continue
            base, extra = spec.damage_at(tower.upgrade_level)
            if tower.tower_type == TOWER_MAGICIAN:
                # blade trap: every ground enemy inside the square around the target
                tx, ty = target.x, target.y
                for enemy in enemies:
                    if not enemy.alive or enemy.flying:
                        continue
                    if abs(enemy.x - tx) <= MAGICIAN_TRAP_HALF \
                            and abs(enemy.y - ty) <= MAGICIAN_TRAP_HALF:
                        enemy.health -= resolve_attack(base, extra, rng)
                        if enemy.health <= 0:
                            self._kill_enemy(state, enemy)
                            any_enemy_dead = True
            else:
                target.health -= resolve_attack(base, extra, rng)
                if target.health <= 0:
                    self._kill_enemy(state, target)
                    any_enemy_dead = True
            tower.cooldown_ticks = spec.interval_ticks

        # 4b. knights
        kspec = self.catalog.knight
        growth = self.catalog.towers[TOWER_KNIGHT].upgrade_growth
        for knight in state.knights:
            if knight.cooldown_ticks > 0:
                knight.cooldown_ticks -= 1
            if not knight.alive or knight.cooldown_ticks > 0:
                continue
            if self.fog_covers(knight.x, knight.y):
                continue
            target = self._select_target(state, knight.x, knight.y, kspec.radius,
                                         kspec.can_attack_air, kspec.can_attack_ground)
            if target is None:
                continue
            if knight.home_tower >= 0:
                factor = growth ** state.towers[knight.home_tower].upgrade_level
                base = round(kspec.attack_damage * factor)
                extra = round(kspec.attack_extra_damage * factor)
            else:
                base, extra = kspec.attack_damage, kspec.attack_extra_damage
            target.health -= resolve_attack(base, extra, rng)
            if target.health <= 0:
                self._kill_enemy(state, target)
                any_enemy_dead = True
            knight.cooldown_ticks = kspec.interval_ticks

        # 4c. hero
        hero = state.hero
        hspec = self.catalog.hero
        if hero.cooldown_ticks > 0:
            hero.cooldown_ticks -= 1
        if not hero.dead and hero.cooldown_ticks <= 0 and enemies \
                and not self.fog_covers(hero.x, hero.y):
            target = self._select_target(state, hero.x, hero.y, hspec.radius,
                                         hspec.can_attack_air, hspec.can_attack_ground)
            if target is not None:
                target.health -= resolve_attack(
                    hspec.attack_damage, hspec.attack_extra_damage, rng)
                if target.health <= 0:
                    self._kill_enemy(state, target)
                    any_enemy_dead = True
                hero.cooldown_ticks = hspec.interval_ticks

        # 4d. enemies: freeze casts take priority over melee swings
        freeze_r2 = self._freeze_radius ** 2
        any_knight_dead = False
        for enemy in enemies:
            if enemy.cooldown_ticks > 0:
                enemy.cooldown_ticks -= 1
            if not enemy.alive or enemy.flying or enemy.cooldown_ticks > 0:
                continue
            if enemy.freeze_caster:
                best = None
                best_d2 = freeze_r2
                for tower in state.towers:
                    if not tower.built or tower.frozen_ticks > 0:
                        continue
                    dx = tower.x - enemy.x
                    dy = tower.y - enemy.y
                    d2 = dx * dx + dy * dy
                    if d2 < best_d2:
                        best, best_d2 = tower, d2
                if best is not None:
                    best.frozen_ticks = self._freeze_ticks
                    enemy.cooldown_ticks = enemy.interval_ticks
                    continue
            blocker = enemy.blocker
            if blocker is None:
                continue
            amount = resolve_attack(enemy.damage, enemy.extra_damage, rng)
            if isinstance(blocker, Hero):
                self._damage_hero(state, amount)
            else:
                blocker.health -= amount
                if blocker.health <= 0:
                    self._remove_knight(state, blocker)
                    any_knight_dead = True
            enemy.cooldown_ticks = enemy.interval_ticks

        if any_enemy_dead:
            state.enemies = [e for e in state.enemies if e.alive]
        if any_knight_dead:
            state.knights = [k for k in state.knights if k.alive]

    def _summon_knight(self, state: GameState, tower: Tower) -> None:
        spec = self.catalog.knight
        knight = Knight(kid=state.next_entity_id, x=tower.x, y=tower.y,
                        health=spec.health, home_tower=tower.point_index,
                        goal_x=tower.assembly_x, goal_y=tower.assembly_y)
        state.next_entity_id += 1
        state.knights.append(knight)
        tower.knight_count += 1

    # -- phase 5: fire-of-rage zones ------------------------------------------

    def _phase_zones(self, state: GameState) -> None:
        if not state.zones:
            return
        hspec = self.catalog.hero
        radius2 = hspec.skill_radius ** 2
        rng = state.rng
        any_enemy_dead = False
        expired = False
        for zone in state.zones:
            zone.remaining_ticks -= 1
            zone.damage_countdown -= 1
            if zone.damage_countdown <= 0 and zone.remaining_ticks >= 0:
                zx, zy = zone.x, zone.y
                for enemy in state.enemies:
                    if not enemy.alive or enemy.flying:
                        continue
                    dx = enemy.x - zx
                    dy = enemy.y - zy
                    if dx * dx + dy * dy <= radius2:
                        enemy.health -= resolve_attack(
                            hspec.skill_damage, hspec.skill_extra_damage, rng)
                        if enemy.health <= 0:
                            self._kill_enemy(state, enemy)
                            any_enemy_dead = True
                killed = 0
                for knight in state.knights:
                    if not knight.alive:
                        continue
                    dx = knight.x - zx
                    dy = knight.y - zy
                    if dx * dx + dy * dy <= radius2:
                        knight.health -= resolve_attack(
                            hspec.skill_damage, hspec.skill_extra_damage, rng)
                        if knight.health <= 0:
                            self._remove_knight(state, knight)
                            killed += 1
                if killed:
                    self.apply_friendly_fire(state, killed)
                    state.knights = [k for k in state.knights if k.alive]
                zone.damage_countdown = self._zone_damage_ticks
            if zone.remaining_ticks <= 0:
                expired = True
        if any_enemy_dead:
            state.enemies = [e for e in state.enemies if e.alive]
        if expired:
            state.zones = [z for z in state.zones if z.remaining_ticks > 0]
            self._update_fog_suppression(state)

    # -- phase 6: gold -------------------------------------------------------

    def update_gold(self, state: GameState) -> None:
        """Refresh countdown, drop expiry, and automatic pickup."""
        level = self.level
        state.gold_refresh_ticks -= 1
        if state.gold_refresh_ticks <= 0:
            state.gold_refresh_ticks = self._refresh_ticks
            if state.drop is None:
                x, y = self._draw_drop_position(state)
                state.drop = GoldDrop(x=x, y=y, lifetime_ticks=self._retention_ticks)
        drop = state.drop
        if drop is None:
            return
        drop.lifetime_ticks -= 1
        if drop.lifetime_ticks <= 0:
            state.drop = None
            return
        pickup_r2 = self._pickup_r2
        hero = state.hero
        collected = False
        if not hero.dead and not self.fog_covers(hero.x, hero.y):
            dx = hero.x - drop.x
            dy = hero.y - drop.y
            collected = dx * dx + dy * dy <= pickup_r2
        if not collected:
            for knight in state.knights:
                if not knight.alive or self.fog_covers(knight.x, knight.y):
                    continue
                dx = knight.x - drop.x
                dy = knight.y - drop.y
                if dx * dx + dy * dy <= pickup_r2:
                    collected = True
                    break
        if collected:
            amount = state.rng.randint(level.gold_pickup_min, level.gold_pickup_max)
            self._add_gold(state, amount, "pickup")
            state.gold_collection_count += 1
            state.drop = None

    def _draw_drop_position(self, state: GameState) -> tuple[float, float]:
        rng = state.rng
        for _ in range(16):
            x = rng.uniform(-MAP_HALF, MAP_HALF)
            y = rng.uniform(-MAP_HALF, MAP_HALF)
            if not self._in_fog_raw(state, x, y):
                return x, y
        return x, y

    def _phase_gold(self, state: GameState) -> None:
        self.update_gold(state)

    # -- phase 7: hero upkeep --------------------------------------------------

    def _phase_hero(self, state: GameState) -> None:
        hero = state.hero
        if hero.dead:
            hero.revive_ticks -= 1
            if hero.revive_ticks <= 0:
                hero.dead = False
                hero.health = hero.max_health
                hero.x, hero.y = self.level.hero_start
                hero.revive_ticks = 0
        elif hero.health < hero.max_health:
            hero.health += 1  # 50 hp/s at 50 ticks/s

    # -- phase 8: fog drift -----------------------------------------------------

    def _phase_fog(self, state: GameState) -> None:
        fog = state.fog
        fog.redirect_ticks -= 1
        if fog.redirect_ticks <= 0:
            angle = state.rng.uniform(0.0, TWO_PI)
            fog.dir_x = math.cos(angle)
            fog.dir_y = math.sin(angle)
            fog.redirect_ticks = self._fog_redirect_ticks
        step = self.tuning.fog_speed * TICK_DT
        fog.x += fog.dir_x * step
        fog.y += fog.dir_y * step
        if fog.x > MAP_HALF:
            fog.x = MAP_HALF
            fog.dir_x = -fog.dir_x
        elif fog.x < -MAP_HALF:
            fog.x = -MAP_HALF
            fog.dir_x = -fog.dir_x
        if fog.y > MAP_HALF:
            fog.y = MAP_HALF
            fog.dir_y = -fog.dir_y
        elif fog.y < -MAP_HALF:
            fog.y = -MAP_HALF
            fog.dir_y = -fog.dir_y

    # -- phase 9: misc timers ----------------------------------------------------

    def _phase_timers(self, state: GameState) -> None:
        if state.reinforce_ticks > 0:
            state.reinforce_ticks -= 1
        for tower in state.towers:
            if tower.frozen_ticks > 0:
                tower.frozen_ticks -= 1
            if tower.show_range_ticks > 0:
                tower.show_range_ticks -= 1
        expired = False
        for knight in state.knights:
            if knight.expire_ticks > 0:
                knight.expire_ticks -= 1
                if knight.expire_ticks == 0:
                    knight.alive = False
                    expired = True
        if expired:
            state.knights = [k for k in state.knights if k.alive]

    # -- phase 10: base hits -------------------------------------------------------

    def _phase_base(self, state: GameState, arrivals: int) -> int:
        # Arrivals past the killing blow do not count: each reward point
        # corresponds to exactly one base health point lost.
        counted = min(arrivals, state.base_health)
        if counted:
            state.breaches += counted
            state.base_health -= counted
        if state.base_health <= 0:
            state.done = True
            state.victory = False
        elif state.spawned_waves >= self.level.total_waves \
                and not state.pending_spawns and not state.enemies:
            state.done = True
            state.victory = True
        return counted

"""Pixel observation: a schematic 512x512 RGB top-down frame.

Flat-color software rasterizer; sprites are simple glyphs (discs, squares,
rings) with a fixed per-entity-class palette. The static layer (background,
roads, tower point boxes, base marker) is rendered once per level and cached.
Rendering is a pure function of the game state.
"""
from __future__ import annotations

import numpy as np

from ..constants import (
    FOG_HALF_H,
    FOG_HALF_W,
    MAP_SIDE,
    PIXEL_SIZE,
    TOWER_BOX_HALF,
)
from ..sim.engine import Engine

_SCALE = PIXEL_SIZE / MAP_SIDE

COLOR_BG = (86, 125, 70)
COLOR_ROAD = (150, 124, 92)
COLOR_ROAD_EDGE = (120, 98, 70)
COLOR_BASE = (178, 34, 34)
COLOR_BOX = (208, 200, 160)
COLOR_TOWER = {1: (70, 95, 205), 2: (150, 70, 200), 3: (225, 165, 60)}
COLOR_FROZEN = (160, 215, 235)
COLOR_KNIGHT = (90, 190, 230)
COLOR_HERO = (250, 250, 250)
COLOR_HERO_CORE = (40, 160, 220)
COLOR_GOLD = (245, 210, 60)
COLOR_FIRE = (240, 120, 40)
COLOR_FOG = (245, 245, 245)
COLOR_RANGE = (255, 255, 255)
COLOR_ASSEMBLY = (60, 80, 200)

ENEMY_PALETTE = (
    (170, 60, 50), (120, 40, 140), (200, 80, 160), (230, 60, 60),
    (90, 150, 60), (110, 130, 90), (210, 205, 190), (235, 230, 205),
    (60, 80, 120), (150, 60, 40), (230, 200, 80), (130, 100, 60),
    (80, 50, 30), (200, 120, 50), (100, 40, 70),
)

_DIGITS = {
    "0": ("111", "101", "101", "101", "111"),
    "1": ("010", "110", "010", "010", "111"),
    "2": ("111", "001", "111", "100", "111"),
    "3": ("111", "001", "111", "001", "111"),
    "4": ("101", "101", "111", "001", "001"),
    "5": ("111", "100", "111", "001", "111"),
    "6": ("111", "100", "111", "101", "111"),
    "7": ("111", "001", "010", "010", "010"),
    "8": ("111", "101", "111", "101", "111"),
    "9": ("111", "101", "111", "001", "111"),
    "-": ("000", "000", "111", "000", "000"),
}


def _px(x: float, y: float) -> tuple[int, int]:
    """World (x, y) -> pixel (col, row); world y points up."""
    return (int((x + MAP_SIDE / 2) * _SCALE), int((MAP_SIDE / 2 - y) * _SCALE))


def _fill_rect(img: np.ndarray, c0: int, r0: int, c1: int, r1: int, color) -> None:
    c0, c1 = max(0, c0), min(PIXEL_SIZE, c1)
    r0, r1 = max(0, r0), min(PIXEL_SIZE, r1)
    if c0 < c1 and r0 < r1:
        img[r0:r1, c0:c1] = color


def _fill_disc(img: np.ndarray, col: int, row: int, radius: int, color) -> None:
    c0, c1 = max(0, col - radius), min(PIXEL_SIZE, col + radius + 1)
    r0, r1 = max(0, row - radius), min(PIXEL_SIZE, row + radius + 1)
    if c0 >= c1 or r0 >= r1:
        return
    yy, xx = np.ogrid[r0 - row:r1 - row, c0 - col:c1 - col]
    mask = xx * xx + yy * yy <= radius * radius
    img[r0:r1, c0:c1][mask] = color


def _ring(img: np.ndarray, col: int, row: int, radius: int, width: int, color) -> None:
    c0, c1 = max(0, col - radius - width), min(PIXEL_SIZE, col + radius + width + 1)
    r0, r1 = max(0, row - radius - width), min(PIXEL_SIZE, row + radius + width + 1)
    if c0 >= c1 or r0 >= r1:
        return
    yy, xx = np.ogrid[r0 - row:r1 - row, c0 - col:c1 - col]
    d2 = xx * xx + yy * yy
    mask = (d2 <= (radius + width) ** 2) & (d2 >= max(0, radius - width) ** 2)
    img[r0:r1, c0:c1][mask] = color


def _stroke(img: np.ndarray, x0: float, y0: float, x1: float, y1: float,
            radius: int, color) -> None:
    c0, r0 = _px(x0, y0)
    c1, r1 = _px(x1, y1)
    length = max(abs(c1 - c0), abs(r1 - r0), 1)
    steps = max(2, length // max(1, radius)) * 2
    for i in range(steps + 1):
        t = i / steps
        _fill_disc(img, round(c0 + (c1 - c0) * t), round(r0 + (r1 - r0) * t),
                   radius, color)


def _draw_text(img: np.ndarray, col: int, row: int, text: str, color,
               scale: int = 4) -> None:
    for ch in text:
        glyph = _DIGITS.get(ch)
        if glyph is not None:
            for gy, line in enumerate(glyph):
                for gx, bit in enumerate(line):
                    if bit == "1":
                        _fill_rect(img, col + gx * scale, row + gy * scale,
                                   col + (gx + 1) * scale, row + (gy + 1) * scale,
                                   color)
        col += 4 * scale


_BASE_CACHE: dict[int, np.ndarray] = {}


def _base_layer(engine: Engine) -> np.ndarray:
    key = id(engine.level)
    cached = _BASE_CACHE.get(key)
    if cached is None:
        img = np.empty((PIXEL_SIZE, PIXEL_SIZE, 3), dtype=np.uint8)
        img[:] = COLOR_BG
        for road in engine.level.roads:
            for (x0, y0), (x1, y1) in zip(road, road[1:]):
                _stroke(img, x0, y0, x1, y1, 9, COLOR_ROAD_EDGE)
        for road in engine.level.roads:
            for (x0, y0), (x1, y1) in zip(road, road[1:]):
                _stroke(img, x0, y0, x1, y1, 7, COLOR_ROAD)
        half = int(TOWER_BOX_HALF * _SCALE)
        for tp in engine.level.tower_points:
            col, row = _px(tp.x, tp.y)
            _fill_rect(img, col - half, row - half, col + half, row + half, COLOR_BOX)
            _fill_rect(img, col - half + 3, row - half + 3,
                       col + half - 3, row + half - 3, COLOR_BG)
        col, row = _px(*engine.level.destination)
        _fill_rect(img, col - 12, row - 12, col + 12, row + 12, COLOR_BASE)
        _BASE_CACHE[key] = img
        cached = img
    return cached.copy()


def render_pixels(engine: Engine) -> np.ndarray:
    """512x512x3 uint8 frame; fog-covered entities are not drawn."""
    state = engine.state
    catalog = engine.catalog
    covers = engine.fog_covers
    img = _base_layer(engine)

    for zone in state.zones:
        col, row = _px(zone.x, zone.y)
        _fill_disc(img, col, row, int(catalog.hero.skill_radius * _SCALE), COLOR_FIRE)

    drop = state.drop
    if drop is not None:
        col, row = _px(drop.x, drop.y)
        _fill_disc(img, col, row, 7, COLOR_GOLD)

    for tower in state.towers:
        if covers(tower.x, tower.y):
            continue
        col, row = _px(tower.assembly_x, tower.assembly_y)
        _fill_disc(img, col, row, 4, COLOR_ASSEMBLY)
        if not tower.built:
            continue
        col, row = _px(tower.x, tower.y)
        color = COLOR_FROZEN if tower.frozen_ticks > 0 else COLOR_TOWER[tower.tower_type]
        _fill_rect(img, col - 8, row - 8, col + 8, row + 8, color)
        if tower.show_range_ticks > 0:
            spec = catalog.towers[tower.tower_type]
            _ring(img, col, row, int(spec.radius * _SCALE), 1, COLOR_RANGE)

    for knight in state.knights:
        if covers(knight.x, knight.y):
            continue
        col, row = _px(knight.x, knight.y)
        _fill_disc(img, col, row, 5, COLOR_KNIGHT)

    for enemy in state.enemies:
        if covers(enemy.x, enemy.y):
            continue
        col, row = _px(enemy.x, enemy.y)
        color = ENEMY_PALETTE[enemy.type_code]
        if enemy.flying:
            _ring(img, col, row, 5, 2, color)
        else:
            _fill_disc(img, col, row, 6, color)

    hero = state.hero
    if not hero.dead and not covers(hero.x, hero.y):
        col, row = _px(hero.x, hero.y)
        _fill_disc(img, col, row, 8, COLOR_HERO)
        _fill_disc(img, col, row, 5, COLOR_HERO_CORE)

    if not state.fog_suppressed:
        col, row = _px(state.fog.x, state.fog.y)
        rx = FOG_HALF_W * _SCALE
        ry = FOG_HALF_H * _SCALE
        c0, c1 = max(0, int(col - rx) - 1), min(PIXEL_SIZE, int(col + rx) + 2)
        r0, r1 = max(0, int(row - ry) - 1), min(PIXEL_SIZE, int(row + ry) + 2)
        if c0 < c1 and r0 < r1:
            yy, xx = np.ogrid[r0 - row:r1 - row, c0 - col:c1 - col]
            mask = (xx / rx) ** 2 + (yy / ry) ** 2 <= 1.0
            img[r0:r1, c0:c1][mask] = COLOR_FOG
    else:
        col, row = _px(state.fog.x, state.fog.y)
        _ring(img, col, row, int(FOG_HALF_W * _SCALE), 1, COLOR_FOG)

    # HUD corners: gold, base health, remaining waves, hero health
    _draw_text(img, 8, 8, str(state.gold), COLOR_GOLD)
    health_text = str(state.base_health)
    _draw_text(img, PIXEL_SIZE - 8 - 16 * len(health_text), 8, health_text, COLOR_BASE)
    waves_text = str(engine.level.total_waves - state.spawned_waves)
    _draw_text(img, 8, PIXEL_SIZE - 28, waves_text, (255, 255, 255))
    hero_text = str(hero.health)
    _draw_text(img, PIXEL_SIZE - 8 - 16 * len(hero_text), PIXEL_SIZE - 28,
               hero_text, COLOR_HERO_CORE)
    return img


def downsample(frame: np.ndarray, factor: int = 4) -> np.ndarray:
    """Mean-pool each axis by `factor` (512 -> 128 by default)."""
    h, w, c = frame.shape
    pooled = frame.reshape(h // factor, factor, w // factor, factor, c).mean(axis=(1, 3))
    return np.round(pooled).astype(np.uint8)

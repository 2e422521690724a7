"""Engine-wide constants: clock, map geometry, capacities, action and error codes."""
from __future__ import annotations

# Simulation clock. One action step spans TICKS_PER_ACTION ticks (0.32 s),
# i.e. 187.5 actions per minute.
TICK_DT = 0.02
TICKS_PER_SECOND = 50
TICKS_PER_ACTION = 16

# Map: square of side 6 centered on the origin.
MAP_SIDE = 6.0
MAP_HALF = 3.0
# Road endpoints may sit slightly off-screen so enemies enter/exit cleanly.
ROAD_MARGIN = 0.1

# Tower point bounding box (side length 0.5, membership by max-norm).
TOWER_BOX_SIDE = 0.5
TOWER_BOX_HALF = 0.25

# Fog of war cloud, approximated as an ellipse with these semi-axes
# (bounding box 3.5 x 1.7).
FOG_HALF_W = 1.75
FOG_HALF_H = 0.85

# Observation capacities (structured-observation block sizes).
MAX_ROADS = 5
MAX_WAYPOINTS_PER_ROAD = 20
MAX_TOWER_POINTS = 15
MAX_ENEMIES = 50
MAX_KNIGHTS = 50
MAX_FIRE_ZONES = 10
WAVE_VECTOR_SLOTS = 25
ENEMY_TYPE_COUNT = 15

STRUCTURED_SIZE = 759

PIXEL_SIZE = 512
PIXEL_DOWNSAMPLED = 128

# Action type indices.
ACTION_BUILD_ARCHER = 0
ACTION_BUILD_MAGICIAN = 1
ACTION_BUILD_KNIGHT = 2
ACTION_UPGRADE = 3
ACTION_SELL = 4
ACTION_SHOW_RANGE = 5
ACTION_NOOP = 6
ACTION_MOVE_ASSEMBLY = 7
ACTION_REINFORCEMENTS = 8
ACTION_MOVE_HERO = 9
ACTION_FIRE_OF_RAGE = 10
ACTION_UPGRADE_HERO = 11
ACTION_COUNT = 12

# Tower type codes (0 = unbuilt point).
TOWER_UNBUILT = 0
TOWER_KNIGHT = 1
TOWER_MAGICIAN = 2
TOWER_ARCHER = 3

# Build action index -> tower type code.
BUILD_ACTION_TOWER_TYPE = {
    ACTION_BUILD_ARCHER: TOWER_ARCHER,
    ACTION_BUILD_MAGICIAN: TOWER_MAGICIAN,
    ACTION_BUILD_KNIGHT: TOWER_KNIGHT,
}

# Error codes attached to invalid actions.
ERR_NONE = 0
ERR_BUILD_OCCUPIED = 1
ERR_BUILD_GOLD = 2
ERR_UPGRADE_MISSING = 3
ERR_UPGRADE_GOLD = 4
ERR_SELL_MISSING = 5
ERR_TOWER_COORDS = 6
ERR_ASSEMBLY_COORDS = 7
ERR_REINFORCE_COOLDOWN = 8
ERR_HERO_DEAD = 9
ERR_HERO_UPGRADE_GOLD = 10
ERR_SHOW_RANGE_MISSING = 11

# Discretized action grid for RL preprocessing.
GRID_CELLS = 10
GRID_PITCH = 0.6
DISCRETE_ACTION_SPACE = GRID_CELLS * GRID_CELLS * ACTION_COUNT

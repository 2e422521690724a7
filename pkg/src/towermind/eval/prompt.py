"""Zero-shot prompt assembly.

Sections, in order: game rules, action list and tips, error-code list, the
five raw configuration tables, level info, interaction history, the current
realtime status, an optional image marker, and the answer-format instruction.
Game-state blocks are shown in Python-literal JSON (True/False), history
actions in numpy array repr; both match how observations are presented to
models elsewhere in the stack.
"""
from __future__ import annotations

import numpy as np

from ..catalog import EntityCatalog
from ..level import LevelConfig
from ..obs.text import _pyjson

OPENING = (
    "You are an AI agent playing a video game, you need to build different types "
    "of defense towers at different locations on the map to prevent enemies from "
    "reaching their destination."
)

COMMON_RULES = (
    "- You need to spend gold coins to build towers, upgrade towers and increase "
    "your hero's maximum health. Gold coins will continue to drop at random "
    "locations on the map. You can send your knights or hero to pick up gold "
    "coins, and the gold coins will be picked up automatically when your knights "
    "or hers are near the gold coins.",
    "- If the number of gold coins you hold exceeds the maximum value, the excess "
    "will be discarded.",
    "- You will be given a certain amount of health at the beginning of each "
    "level. Every time an enemy reaches its destination, you will lose a point "
    "of health. When your health reaches 0, the game ends and the mission fails. "
    "Try your best to avoid losing any health points.",
    "- Enemies appear in waves, and each level has a different number of enemy "
    "waves. There is a certain amount of time between enemy waves. If your "
    "health is still greater than 0 after you have resisted all waves of enemy "
    "attacks, the mission is successful.",
    "- There are several paths for the enemies, and each enemy will randomly "
    "choose one.",
    "- The battlefield of this game is a square area, the details have been "
    "included in the level state part blow.",
    "- Between each path point, enemies will only move in a straight line.",
    "- The Fog Of War in the battlefield is an irregular cloud-shaped area that "
    "can obscure any element in the game. Its approximate dimensions are 3.5 "
    "wide and 1.7 tall. The obscured towers, knights and heroes will no longer "
    "attack the enemy, but if the Fog Of War obscures the Fire Of Rage released "
    "by the hero, it will lose its obstruction ability during this time.",
)

ACTIONS_INTRO = (
    "The following are the actions you can take. And for each action, you also "
    "need to provide a horizontal and a vertical coordinate between -3.0 and 3.0."
)

ACTION_LIST = (
    "0 - Build an Archer Tower at the coordinates you specify,",
    "1 - Build an Magician Tower at the coordinates you specify,",
    "2 - Build an Knight Tower at the coordinates you specify,",
    "3 - Upgrade a tower at the coordinates you specify,",
    "4 - Sell a tower at the coordinates you specify,",
    "5 - Show the attack range of a tower at the coordinates you specify,",
    "6 - Noop: do nothing,",
    "7 - Change the knights assembly location of a Knight Tower to the "
    "coordinates you specify,",
    "8 - Deploy Knight Reinforcements to the coordinates you specify,",
    "9 - Dispatch your hero to the coordinates you specify,",
    "10 - Your hero casts 'Fire of Rage' at your hero's coordinates,",
    "11 - Spend gold coins to increase your hero's maximum health.",
)

ACTION_TIPS = (
    "- Building a tower, upgrading a tower or increasing your hero's maximum "
    "health requires you to have enough gold coins, otherwise it will be an "
    "invalid action.",
    "- Action 0, 1, 2, 3, 4, 5 are only valid if the coordinates you specify "
    "are within the bounding box of the tower point. The bounding box of the "
    "tower point is a square with its coordinate as the center and a side "
    "length of 0.5.",
    "- Action 7 is only valid if the coordinates you specify is within the "
    "attack range of a Knight Tower.",
    "- Action 8 will be invalid during the Knight Reinforcements cooldown.",
    "- Action 9 means that your hero starts moving to the coordinates you "
    "specify, not a direct teleportation. If you set a new target coordinate "
    "during its movement, it will start moving to the new target coordinates.",
    "- Actions 9, 10, 11 are invalid if your hero dies.",
    "- If a tower point already has a tower, you should not build a tower at "
    "this tower point, which will result in an invalid action.",
    '- You should provide your action in json format, only three elements in '
    'this json structure: "X" is a floating point number representing the '
    'horizontal coordinate of the action you want to perform; "Y" is a '
    'floating point number representing the vertical coordinate of the action '
    'you want to perform; "Action" is an integer representing the index of '
    'action you want to perform.',
    "- Action 4 will return the funds spent on its construction and upgrade, "
    "but it may not be fully refunded, it depends on the "
    "'Level_Selling_Tower_Refund_Rate' value.",
)

ERROR_CODES_INTRO = (
    "The following are the actions error code list, If you performed an invalid "
    "action, you can find out why here:"
)

ERROR_CODE_LINES = (
    "0 - no error",
    "1 - build a tower where there is already a tower",
    "2 - build a tower but don't have enough gold coins",
    "3 - upgrade a non-existent tower",
    "4 - upgrade a tower but don't have enough gold coins",
    "5 - sell a non-existent tower",
    "6 - failure to provide valid coordinates for building, upgrading, selling "
    "a tower or showing the attack range of a tower",
    "7 - failed to provide the valid coordinates for changing the knights "
    "assembly location of a Knight Tower",
    "8 - deploy Knight Reinforcements that are on cooldown",
    "9 - try to manipulate a dead hero",
    "10 - increase your hero's maximum health but don't have enough gold coins",
    "11 - show the attack range of a non-existent tower",
)

CONFIG_INTRO = (
    "The following is the configuration table of each component of the game, "
    "organized in Json format:"
)

CONFIG_TIPS = (
    "- The attack range of the towers, hero, hero's skill and knights is "
    "circular, the positions of the circle centers are their position, and the "
    "attack range described above is the diameter. When enemies enter this "
    "range they will attack.",
    "- The final attack value of the towers, hero, hero's skill, knights and "
    "enemies is equal to AttackDamage plus a random value in the range of 0 to "
    "AttackExtraDamage.",
    "- The unit of time in this tower defense game is seconds.",
    "- The unit of range or space in this tower defense game is a virtual "
    "unified unit. It can be used directly for calculation during reasoning "
    "without conversion.",
    "- The AttackSpeed of the towers, hero, knights and enemies refers to the "
    "time interval between attacks. For the Knight Tower, it refers to the "
    "time interval between summoning knights.",
    "- Upgrading will increase the attack power of the Archer Tower and the "
    "Magician Tower, as well as the attack value and movement speed of the "
    "knights summoned by the Knight Tower.",
)

LEVEL_INFO_INTRO = (
    "The following is the information about this level, organized in Json format:"
)
HISTORY_INTRO = (
    "The following is the history of the past few steps, organized in Json format:"
)
CURRENT_INTRO = (
    "The following is the current real-time game status of this step, organized "
    "in Json format:"
)
IMAGE_MARKER = "Image observation provided."
CLOSING = (
    "Now please tell me the action you want to perform in this step, in JSON "
    "format, containing a floating point X coordinate, a floating point Y "
    "coordinate and an integer action index. Your answer should not contain "
    "any other text, just provide this json."
)

REALTIME_KEYS = (
    "Level_Gold_Coins_Collection_Count",
    "Level_Friendly_Fire_Compensation_Count",
    "Level_Current_Step",
    "Level_Current_Time",
    "Level_Current_Wave",
    "Level_Current_Wave_Enemies",
    "Level_Current_Wave_Countdown",
    "Level_Current_Gold_Coins",
    "Level_Current_Health",
    "Level_Remaining_Waves",
    "Level_Fog_Of_War_Position",
    "Level_Knight_Reinforcements_Countdown",
    "Level_Hero_Realtime_Status",
    "Level_Hero_Fire_Of_Rage_Positions",
    "Level_Towers_Realtime_Status",
    "Level_Enemies_Realtime_Status",
    "Level_Knights_Realtime_Status",
    "Level_Dropped_Gold_Coins_Realtime_Status",
    "Agent_Last_Action_Info",
)

LEVEL_INFO_KEYS = (
    "Map_Center",
    "Map_Side_Length",
    "Map_Left_Boundary",
    "Map_Right_Boundary",
    "Map_Upper_Boundary",
    "Map_Lower_Boundary",
    "Tower_Points_Bounding_Box_Width_Height",
    "Level_Maximum_Gold_Coins",
    "Level_Initial_Health",
    "Level_Total_Waves_Number",
    "Level_Inter_Wave_Interval",
    "Level_Selling_Tower_Refund_Rate",
    "Level_Gold_Coins_Refresh_Interval",
    "Level_Gold_Coins_Retention_Time",
    "Level_Gold_Coins_Maximum_Pickup_Amount",
    "Level_Gold_Coins_Minimum_Pickup_Amount",
    "Level_Enemy_Movement_Paths",
    "Level_Enemy_Destination",
)

_CONFIG_SECTIONS = (
    ("Towers", "towers"),
    ("Knight", "knight"),
    ("Hero", "hero"),
    ("Knight Reinforcements", "reinforcements"),
    ("Enemies", "enemies"),
)


def realtime_view(doc: dict) -> dict:
    return {k: doc[k] for k in REALTIME_KEYS}


def _all_scalars(value) -> bool:
    if isinstance(value, dict):
        return all(not isinstance(v, (dict, list, tuple)) for v in value.values())
    return all(not isinstance(v, (dict, list, tuple)) for v in value)


def _pyjson_pretty(value, indent: int = 0) -> str:
    """Indented Python-literal JSON; containers with only scalar children
    stay on one line (the way positions render in the state blocks)."""
    pad = "    " * indent
    child_pad = "    " * (indent + 1)
    if isinstance(value, dict) and value and not _all_scalars(value):
        lines = [f'{child_pad}"{k}": {_pyjson_pretty(v, indent + 1).lstrip()}'
                 for k, v in value.items()]
        return "{\n" + ",\n".join(lines) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)) and value and not _all_scalars(value):
        lines = [f"{child_pad}{_pyjson_pretty(v, indent + 1).lstrip()}" for v in value]
        return "[\n" + ",\n".join(lines) + f"\n{pad}]"
    return _pyjson(value)


def _format_action_array(action) -> str:
    x, y, c = action
    return repr(np.array([float(x), float(y), float(c)]))


def build_prompt(current_doc: dict, history: list[tuple[dict, object]],
                 level: LevelConfig, catalog: EntityCatalog,
                 include_image: bool = False, history_length: int = 3) -> str:
    """Assemble the full zero-shot prompt for one decision step.

    `history` holds (observation document, action) pairs, oldest first; only
    the last `history_length` entries are shown.
    """
    parts: list[str] = [OPENING, ""]
    parts.append("Common rules:")
    parts.append("")
    for rule in COMMON_RULES:
        parts.append(rule)
        parts.append("")
    parts.append(ACTIONS_INTRO)
    parts.append("")
    for line in ACTION_LIST:
        parts.append(line)
        parts.append("")
    parts.append("Action Tips:")
    parts.append("")
    for tip in ACTION_TIPS:
        parts.append(tip)
        parts.append("")
    parts.append(ERROR_CODES_INTRO)
    parts.append("")
    for line in ERROR_CODE_LINES:
        parts.append(line)
        parts.append("")
    parts.append(CONFIG_INTRO)
    parts.append("")
    for label, stem in _CONFIG_SECTIONS:
        parts.append(f"- {label} Configuration:")
        parts.append(catalog.raw[stem].strip())
        parts.append("")
    parts.append("Configuration Table Tips:")
    parts.append("")
    for tip in CONFIG_TIPS:
        parts.append(tip)
        parts.append("")
    parts.append(LEVEL_INFO_INTRO)
    level_info = {k: current_doc[k] for k in LEVEL_INFO_KEYS}
    parts.append(_pyjson_pretty_top(level_info))
    parts.append("")
    parts.append(HISTORY_INTRO)
    shown = history[-history_length:] if history_length > 0 else []
    history_lines = []
    for doc, action in shown:
        state_str = _pyjson(realtime_view(doc))
        history_lines.append(
            '{"state": "' + state_str + '", "action": ' + _format_action_array(
                (action.x, action.y, action.c) if hasattr(action, "x") else action) + "}")
    parts.append(",\n".join(history_lines))
    parts.append("")
    parts.append(CURRENT_INTRO)
    parts.append(_pyjson_pretty_top(realtime_view(current_doc)))
    parts.append("")
    if include_image:
        parts.append(IMAGE_MARKER)
        parts.append("")
    parts.append(CLOSING)
    return "\n".join(parts)


def _pyjson_pretty_top(doc: dict) -> str:
    lines = [f'    "{k}": {_pyjson_pretty(v, 1).lstrip()}' for k, v in doc.items()]
    return "{\n" + ",\n".join(lines) + "\n}"

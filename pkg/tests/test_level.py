from __future__ import annotations

import dataclasses

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

import towermind as tm
from towermind.level import (
    LevelValidationError,
    canonical_json,
    difficulty,
    export_editor_document,
    import_editor_export,
)

from helpers import make_level

EXPECTED_DIFFICULTY = {"Lv1": 2.45, "Lv2": 2.77, "Lv3": 3.42, "Lv4": 3.55, "Lv5": 3.74}


def test_benchmark_difficulty_reproduces_published_column(levels, catalog):
    for level_id, expected in EXPECTED_DIFFICULTY.items():
        comps = difficulty(levels[level_id], catalog)
        assert comps.total == pytest.approx(expected, abs=0.01), level_id
        assert comps.total == pytest.approx(
            comps.d_r + comps.d_t + comps.d_e + comps.d_re)


def test_lv1_matches_published_row(levels):
    lv1 = levels["Lv1"]
    assert len(lv1.roads) == 1
    assert len(lv1.tower_points) == 4
    assert len(lv1.enemy_types_used()) == 14
    assert lv1.total_enemies / lv1.total_waves == pytest.approx(20.8)
    assert lv1.initial_gold == 500
    assert lv1.gold_pickup_min == 100
    assert lv1.refund_rate == 1.0
    assert lv1.initial_base_health == 20
    assert lv1.total_waves == 5


def test_lv1_first_wave_is_eight_clowns(levels):
    wave1 = levels["Lv1"].waves[0]
    assert wave1[3] == 8
    assert sum(wave1) == 8


def test_misleading_points_flagged_in_lv1_and_lv2(levels):
    assert any(tp.misleading for tp in levels["Lv1"].tower_points)
    assert any(tp.misleading for tp in levels["Lv2"].tower_points)
    assert not any(tp.misleading for tp in levels["Lv3"].tower_points)


def test_minimal_level_loads():
    level = make_level()
    assert level.total_waves == 1
    assert len(level.roads) == 1


def test_six_roads_rejected():
    road = [[-3.0, 0.0], [3.0, 0.0]]
    with pytest.raises(LevelValidationError, match="roads"):
        make_level(roads=[road] * 6)


def test_too_many_waypoints_rejected():
    road = [[-3.0 + 0.28 * i, 0.0] for i in range(21)]
    road[-1] = [3.0, 0.0]
    with pytest.raises(LevelValidationError, match="waypoints"):
        make_level(roads=[road])


def test_out_of_bounds_waypoint_rejected():
    with pytest.raises(LevelValidationError, match="out of bounds"):
        make_level(roads=[[[-3.2, 0.0], [3.0, 0.0]]])


def test_road_must_end_at_destination():
    with pytest.raises(LevelValidationError, match="destination"):
        make_level(roads=[[[-3.0, 0.0], [2.0, 0.0]]], destination=[3.0, 0.0])


def test_oversized_wave_rejected():
    wave = [0] * 15
    wave[5] = 26
    with pytest.raises(LevelValidationError, match="enemies"):
        make_level(waves=[wave])


def test_difficulty_error_on_zero_gold_inputs(catalog):
    level = make_level()
    broken = dataclasses.replace(level, initial_gold=0)
    with pytest.raises(ValueError):
        difficulty(broken, catalog)
    broken = dataclasses.replace(level, gold_pickup_min=0)
    with pytest.raises(ValueError):
        difficulty(broken, catalog)


def test_refund_rate_one_zeroes_sellback_term(catalog):
    level = make_level(refund_rate=1.0)
    comps = difficulty(level, catalog)
    level0 = make_level(refund_rate=0.0)
    comps0 = difficulty(level0, catalog)
    assert comps0.d_re - comps.d_re == pytest.approx(1.0 / 3.0)


@settings(max_examples=40)
@given(gold=st.integers(min_value=120, max_value=5000),
       more_gold=st.integers(min_value=1, max_value=2000))
def test_difficulty_monotone_in_initial_gold(gold, more_gold):
    catalog = tm.load_catalog()
    base = difficulty(make_level(initial_gold=gold, max_gold=10_000), catalog).total
    richer = difficulty(make_level(initial_gold=gold + more_gold, max_gold=10_000),
                        catalog).total
    assert richer <= base


@settings(max_examples=20)
@given(n_roads=st.integers(min_value=1, max_value=4))
def test_difficulty_monotone_in_roads(n_roads):
    catalog = tm.load_catalog()

    def level_with(r):
        roads = [[[-3.0, -2.0 + 0.9 * i], [3.0, 0.0]] for i in range(r)]
        return make_level(roads=roads, destination=[3.0, 0.0])

    d_small = difficulty(level_with(n_roads), catalog).total
    d_large = difficulty(level_with(n_roads + 1), catalog).total
    assert d_large >= d_small


# -- editor exports -----------------------------------------------------------


def _sample_export() -> dict:
    return {
        "schema_version": 1,
        "kind": "editor_export",
        "id": "edited",
        "name": "edited",
        "background": "grass",
        "roads": [[[-3.0, -1.0], [0.0, -1.0], [0.5, 1.2], [3.0, 1.2]],
                  [[-3.0, 2.0], [0.5, 1.2], [3.0, 1.2]]],
        "destination": [3.0, 1.2],
        "tower_points": [
            {"position": [-1.5, -0.4], "assembly": [-1.5, -0.95], "misleading": False},
            {"position": [1.2, 0.6], "assembly": [1.2, 1.15], "misleading": False},
            {"position": [-2.2, 2.6], "assembly": [-2.2, 2.15], "misleading": True},
        ],
        "hero_start": [2.0, 0.5],
        "fog_start": [0.0, 2.0],
        "waves": {"inter_wave_interval": 6.0,
                  "compositions": [[0, 0, 0, 0, 0, 5, 0, 0, 0, 0, 0, 0, 0, 0, 0],
                                   [3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3]]},
        "economy": {
            "initial_gold": 400, "max_gold": 3000, "initial_base_health": 20,
            "refund_rate": 0.5, "gold_refresh_interval": 2, "gold_retention_time": 15,
            "gold_pickup_min": 80, "gold_pickup_max": 104,
        },
    }


def test_editor_import_structural_copy():
    level = import_editor_export(_sample_export())
    assert len(level.roads) == 2
    assert len(level.tower_points) == 3
    assert level.tower_points[2].misleading
    assert level.initial_gold == 400


def test_editor_roundtrip_byte_stable():
    doc = _sample_export()
    level = import_editor_export(doc)
    exported = export_editor_document(level)
    once = canonical_json(exported)
    again = canonical_json(export_editor_document(import_editor_export(exported)))
    assert once == again


def test_editor_reexport_preserves_canonical_source():
    doc = _sample_export()
    canonical_source = canonical_json(doc)
    level = import_editor_export(json_roundtrip(doc))
    reexported = export_editor_document(level, background=doc["background"])
    assert canonical_json(reexported) == canonical_source


def json_roundtrip(doc):
    import json

    return json.loads(json.dumps(doc))


def test_editor_out_of_bounds_rejected():
    doc = _sample_export()
    doc["roads"][0][0] = [3.2, 0.0]
    with pytest.raises(LevelValidationError):
        import_editor_export(doc)


def test_editor_wrong_kind_rejected():
    doc = _sample_export()
    doc["kind"] = "something"
    with pytest.raises(LevelValidationError):
        import_editor_export(doc)


def test_canonical_json_matches_js_number_formatting():
    assert canonical_json({"a": 1.0, "b": 0.5, "c": -3.0}) == (
        '{\n  "a": 1,\n  "b": 0.5,\n  "c": -3\n}')

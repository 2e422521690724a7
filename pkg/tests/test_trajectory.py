"""Trajectory recording and tick-exact replay."""
from __future__ import annotations

import io

import pytest

from towermind.eval import RandomAgent
from towermind.eval.runner import run_episode
from towermind.trajectory import TrajectoryWriter, load_trajectory, replay
from towermind.sim.actions import Action


def test_writer_reader_roundtrip():
    buf = io.StringIO()
    writer = TrajectoryWriter(level_id="Lv1", seed=3, cadence=16, stream=buf,
                              initial_digest="abc")
    writer.write_step(t=0, action=Action(1.0, -1.0, 6), error_code=0,
                      reward=0.0, done=False, obs_digest="d1")
    writer.write_step(t=16, action=Action(0.5, 0.5, 9), error_code=0,
                      reward=-1.0, done=True, obs_digest="d2")
    trajectory = load_trajectory(buf.getvalue().splitlines())
    assert trajectory.level_id == "Lv1"
    assert trajectory.seed == 3
    assert trajectory.cadence == 16
    assert trajectory.initial_digest == "abc"
    assert len(trajectory.records) == 2
    assert trajectory.score == -1.0


def test_non_trajectory_file_rejected():
    with pytest.raises(ValueError):
        load_trajectory(['{"kind": "something"}'])


def test_recorded_random_episode_replays_exactly(tmp_path):
    path = tmp_path / "ep.jsonl"
    record = run_episode(RandomAgent(5), "Lv1", seed=13, modality="structured",
                         record_path=path)
    trajectory = load_trajectory(path)
    result = replay(trajectory)
    assert result.rewards_match
    assert result.digests_match
    assert result.score == record.score
    assert result.base_health == record.final_base_health


def test_replay_detects_tampered_rewards(tmp_path):
    path = tmp_path / "ep.jsonl"
    run_episode(RandomAgent(5), "Lv2", seed=4, modality="structured",
                record_path=path)
    lines = path.read_text().splitlines()
    import json

    doc = json.loads(lines[1])
    doc["reward"] = doc["reward"] - 1.0
    lines[1] = json.dumps(doc)
    trajectory = load_trajectory(lines)
    result = replay(trajectory)
    assert not result.rewards_match


def test_replay_detects_tampered_actions(tmp_path):
    path = tmp_path / "ep.jsonl"
    run_episode(RandomAgent(2), "Lv1", seed=6, modality="structured",
                record_path=path)
    lines = path.read_text().splitlines()
    import json

    docs = [json.loads(line) for line in lines[1:]]
    target = next(d for d in docs if d["error_code"] == 0)
    target["action"] = [2.9, 2.9, 0]  # outside every tower point box
    rewritten = [lines[0]] + [json.dumps(d) for d in docs]
    result = replay(load_trajectory(rewritten))
    assert not (result.rewards_match and result.digests_match)

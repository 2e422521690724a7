"""Binding acceptance: shape checks for every modality, determinism
passthrough, batched-vs-serial trajectory equivalence."""
from __future__ import annotations

import numpy as np
import pytest

import towermind_gym as tg

NOOP = (0.0, 0.0, 6)


def test_structured_reset_and_step_shapes():
    with tg.make("towermind/Lv1", seed=42, modality="structured") as env:
        obs = env.reset()
        assert obs.shape == (759,)
        assert obs.dtype == np.float32
        assert env.observation_space.contains(obs)
        obs, reward, done, info = env.step(NOOP)
        assert obs.shape == (759,)
        assert reward == 0.0
        assert not done
        assert info["Agent_Last_Action_Info"]["Is_Success"] is True


def test_pixel_shapes_plain_and_downsampled():
    with tg.make("Lv1", seed=1, modality="pixels") as env:
        obs = env.reset()
        assert obs.shape == (512, 512, 3)
        assert obs.dtype == np.uint8
    with tg.make("Lv1", seed=1, modality="pixels", wrappers=("downsample",)) as env:
        obs = env.reset()
        assert obs.shape == (128, 128, 3)
        obs, _, _, _ = env.step(NOOP)
        assert obs.shape == (128, 128, 3)


def test_text_modality_passthrough():
    with tg.make("Lv1", seed=3, modality="text") as env:
        obs = env.reset()
        assert obs["Level_Current_Step"] == 0
        assert obs["Level_Current_Gold_Coins"] == 500
        obs, _, _, _ = env.step(NOOP)
        assert obs["Level_Current_Step"] == 16


def test_determinism_passthrough_two_handles():
    actions = [(0.5 * k - 2.0, 1.0, k % 12) for k in range(8)]
    rollouts = []
    for _ in range(2):
        with tg.make("Lv2", seed=9, modality="structured") as env:
            obs = env.reset()
            trace = [obs.tobytes()]
            for action in actions:
                obs, reward, done, _ = env.step(action)
                trace.append((obs.tobytes(), reward, done))
                if done:
                    break
            rollouts.append(trace)
    assert rollouts[0] == rollouts[1]


def test_discretizer_wrapper_action_space_size():
    with tg.make("Lv1", seed=2, wrappers=("discretize",)) as env:
        assert env.action_space.n == 1200
        obs, reward, done, info = env.step(6)  # cell (0, 0), noop
        assert info["Agent_Last_Action_Info"]["Error_Code"] == 0


def test_step_penalty_wrapper():
    with tg.make("Lv1", seed=2, wrappers=("step_penalty",)) as env:
        _, reward, _, _ = env.step(NOOP)
        assert reward == pytest.approx(-5e-4)


def test_render_returns_frame():
    with tg.make("Lv1", seed=5) as env:
        frame = env.render()
        assert frame.shape == (512, 512, 3)


def test_step_after_done_raises():
    with tg.make("Lv1", seed=0) as env:
        done = False
        while not done:
            _, _, done, _ = env.step(NOOP)
        with pytest.raises(RuntimeError):
            env.step(NOOP)
        env.reset()
        env.step(NOOP)


def test_vector_batched_equals_serial_n4():
    seeds = [3, 14, 15, 92]
    actions = [(1.68, 0.99, 0), (0.0, 0.0, 9), (-1.0, 2.0, 8), (0.0, 0.0, 6),
               (2.0, -2.0, 10), (1.68, 0.99, 3)]

    serial = []
    for seed in seeds:
        with tg.make("Lv1", seed=seed, modality="structured") as env:
            trace = []
            for action in actions:
                obs, reward, done, info = env.step(action)
                trace.append((obs.tobytes(), reward, done,
                              info["Agent_Last_Action_Info"]["Error_Code"]))
                if done:
                    break
            serial.append(trace)

    with tg.vector_make("Lv1", n=4, seeds=seeds, modality="structured") as venv:
        batched = [[] for _ in range(4)]
        for action in actions:
            obs, rewards, dones, infos = venv.step([action] * 4)
            for idx in range(4):
                batched[idx].append(
                    (obs[idx].tobytes(), rewards[idx], dones[idx],
                     infos[idx]["Agent_Last_Action_Info"]["Error_Code"]))
            if all(dones):
                break

    assert serial == batched


def test_vector_reset_returns_index_ordered_batch():
    with tg.vector_make("Lv3", n=2, seeds=[1, 2]) as venv:
        batch = venv.reset([1, 2])
        assert len(batch) == 2
        assert batch[0].shape == (759,)
        obs, rewards, dones, infos = venv.step([NOOP, NOOP])
        assert len(obs) == len(rewards) == len(dones) == len(infos) == 2


def test_vector_seed_count_mismatch_rejected():
    with pytest.raises(ValueError):
        tg.vector_make("Lv1", n=3, seeds=[1, 2])


def test_env_ids_exported():
    assert tg.ENV_IDS == ("towermind/Lv1", "towermind/Lv2", "towermind/Lv3",
                          "towermind/Lv4", "towermind/Lv5")

"""Agent evaluation runner: episodes across seeds, aggregation, reports."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..env import Env
from ..obs.text import render_text
from ..sim.actions import Action
from ..trajectory import TrajectoryWriter, observation_digest
from .agents import Agent, AgentContext, coerce_action
from .metrics import (
    BaselineTable,
    EpisodeRecord,
    HUMAN_BASELINES,
    mean_and_se,
    valid_action_rate,
)
from .prompt import build_prompt

_EPISODE_STEP_LIMIT = 100_000


@dataclass(frozen=True)
class LevelReport:
    level_id: str
    seeds: tuple[int, ...]
    score_mean: float
    score_se: float
    rate_mean: float
    rate_se: float
    normalized_score: float
    normalized_rate: float
    episodes: tuple[EpisodeRecord, ...]
    failed_seeds: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "level": self.level_id,
            "seeds": list(self.seeds),
            "score_mean": self.score_mean,
            "score_se": self.score_se,
            "valid_action_rate_mean": self.rate_mean,
            "valid_action_rate_se": self.rate_se,
            "normalized_score": self.normalized_score,
            "normalized_valid_action_rate": self.normalized_rate,
            "failed_seeds": list(self.failed_seeds),
            "episodes": [
                {
                    "seed": ep.seed,
                    "score": ep.score,
                    "valid_actions": ep.valid_action_count,
                    "total_actions": ep.total_action_count,
                    "parse_failures": ep.parse_failure_count,
                    "victory": ep.victory,
                    "final_base_health": ep.final_base_health,
                }
                for ep in self.episodes
            ],
        }


def run_episode(agent: Agent, level_id: str, seed: int, modality: str = "text",
                config_dir=None, prompt_mode: bool | None = None,
                include_image: bool = False, record_path: str | Path | None = None,
                history_length: int = 3) -> EpisodeRecord:
    """One sealed episode. The agent may return an Action, a coordinate
    triple, or raw text; unparseable output executes a noop and counts as an
    invalid action with a parse-failure flag."""
    env = Env(level_id, modality=modality, config_dir=config_dir)
    obs = env.reset(seed)
    agent.reset(seed, level_id)
    wants_prompt = prompt_mode if prompt_mode is not None else agent.wants_prompt

    writer = None
    stream = None
    if record_path is not None:
        stream = open(record_path, "w", encoding="utf-8")
        writer = TrajectoryWriter(level_id=env.level.level_id, seed=seed,
                                  cadence=env.ticks_per_action, stream=stream,
                                  initial_digest=observation_digest(env.engine))
        writer.write_header()

    history: list[tuple[dict, Action]] = []
    rewards: list[float] = []
    error_codes: list[int] = []
    valid = 0
    total = 0
    parse_failures = 0
    done = False
    try:
        while not done and total < _EPISODE_STEP_LIMIT:
            prompt = None
            if wants_prompt:
                doc = obs if isinstance(obs, dict) and "Map_Center" in obs \
                    else render_text(env.engine)
                prompt = build_prompt(doc, history, env.level, env.catalog,
                                      include_image=include_image,
                                      history_length=history_length)
            raw = agent.act(AgentContext(observation=obs, step_index=total,
                                         prompt=prompt))
            action = coerce_action(raw)
            parse_failed = action is None
            if parse_failed:
                parse_failures += 1
                action = Action(0.0, 0.0, 6)
            tick_before = env.state.step_index
            doc_before = render_text(env.engine) if wants_prompt else None
            result = env.step(action)
            total += 1
            record = result.info["action_record"]
            error_codes.append(record.error_code)
            if record.is_success and not parse_failed:
                valid += 1
            rewards.append(result.reward)
            done = result.done
            if wants_prompt:
                history.append((doc_before, action))
            if writer is not None:
                writer.write_step(t=tick_before, action=action,
                                  error_code=record.error_code,
                                  reward=result.reward, done=done,
                                  obs_digest=observation_digest(env.engine))
            obs = result.observation
    finally:
        if stream is not None:
            stream.close()

    state = env.state
    return EpisodeRecord(
        level_id=env.level.level_id, seed=seed, rewards=tuple(rewards),
        valid_action_count=valid, total_action_count=total,
        parse_failure_count=parse_failures, victory=state.victory,
        final_base_health=state.base_health, error_codes=tuple(error_codes),
    )


def run_agent(agent: Agent, level_id: str, seeds, modality: str = "text",
              config_dir=None, baselines: BaselineTable = HUMAN_BASELINES,
              record_dir: str | Path | None = None, **episode_kwargs) -> LevelReport:
    """Evaluate an agent over several seeds and aggregate mean +/- standard
    error, normalized against the human baseline table."""
    seeds = list(seeds)
    if not seeds:
        raise ValueError("at least one seed required")
    episodes: list[EpisodeRecord] = []
    failed: list[int] = []
    for seed in seeds:
        record_path = None
        if record_dir is not None:
            record_path = Path(record_dir) / f"{level_id.lower()}_seed{seed}.jsonl"
        try:
            episodes.append(run_episode(agent, level_id, seed, modality=modality,
                                        config_dir=config_dir,
                                        record_path=record_path, **episode_kwargs))
        except Exception:
            failed.append(seed)
    if not episodes:
        raise RuntimeError(f"all {len(seeds)} episodes failed on {level_id}")

    level_key = episodes[0].level_id
    scores = [ep.score for ep in episodes]
    rates = [valid_action_rate(ep) for ep in episodes]
    score_mean, score_se = mean_and_se(scores)
    rate_mean, rate_se = mean_and_se(rates)
    return LevelReport(
        level_id=level_key, seeds=tuple(seeds),
        score_mean=score_mean, score_se=score_se,
        rate_mean=rate_mean, rate_se=rate_se,
        normalized_score=baselines.normalize_score(level_key, score_mean),
        normalized_rate=baselines.normalize_rate(level_key, rate_mean),
        episodes=tuple(episodes), failed_seeds=tuple(failed),
    )


def format_report_table(reports: list[LevelReport]) -> str:
    header = (f"{'Level':<6} {'Score':>16} {'Rate':>14} "
              f"{'NormScore':>10} {'NormRate':>9} {'Episodes':>9}")
    lines = [header, "-" * len(header)]
    for rep in reports:
        lines.append(
            f"{rep.level_id:<6} "
            f"{rep.score_mean:>8.2f} ±{rep.score_se:>5.2f} "
            f"{rep.rate_mean:>7.3f} ±{rep.rate_se:>5.3f} "
            f"{rep.normalized_score:>10.2f} {rep.normalized_rate:>9.2f} "
            f"{len(rep.episodes):>9}")
    return "\n".join(lines)


def save_reports(reports: list[LevelReport], path: str | Path) -> None:
    doc = {"schema_version": 1, "kind": "eval_report",
           "levels": [rep.to_dict() for rep in reports]}
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")

from __future__ import annotations

import hypothesis.strategies as st
from hypothesis import given

from towermind.rng import MASK64, Xoshiro256


def test_same_seed_same_stream():
    a = Xoshiro256(1234)
    b = Xoshiro256(1234)
    assert [a.next_u64() for _ in range(100)] == [b.next_u64() for _ in range(100)]


def test_different_seeds_diverge():
    a = Xoshiro256(1)
    b = Xoshiro256(2)
    assert [a.next_u64() for _ in range(8)] != [b.next_u64() for _ in range(8)]


def test_draw_counter_tracks_consumption():
    rng = Xoshiro256(7)
    rng.randint(0, 50)
    rng.random()
    rng.uniform(-3.0, 3.0)
    assert rng.draws == 3


def test_state_roundtrip():
    rng = Xoshiro256(99)
    rng.next_u64()
    saved = rng.getstate()
    seq = [rng.next_u64() for _ in range(5)]
    rng.setstate(saved)
    assert [rng.next_u64() for _ in range(5)] == seq


@given(st.integers(min_value=0, max_value=2**64 - 1))
def test_outputs_are_64_bit(seed):
    rng = Xoshiro256(seed)
    for _ in range(4):
        assert 0 <= rng.next_u64() <= MASK64


@given(st.integers(min_value=-1000, max_value=1000),
       st.integers(min_value=0, max_value=1000), st.integers())
def test_randint_bounds(lo, span, seed):
    rng = Xoshiro256(seed)
    value = rng.randint(lo, lo + span)
    assert lo <= value <= lo + span


@given(st.integers())
def test_random_unit_interval(seed):
    rng = Xoshiro256(seed)
    for _ in range(8):
        assert 0.0 <= rng.random() < 1.0


def test_randint_is_roughly_uniform():
    rng = Xoshiro256(5)
    counts = [0] * 6
    for _ in range(60_000):
        counts[rng.randint(0, 5)] += 1
    assert all(abs(c - 10_000) < 600 for c in counts)

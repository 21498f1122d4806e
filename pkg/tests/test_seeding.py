import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from qsat2.seeding import (
    FACTOR_STREAM,
    GRAPH_STREAM,
    MASK64,
    derive_trial_seed,
    mix64,
    stream_seed,
)

u64 = st.integers(0, MASK64)


def test_golden_vectors():
    # frozen outputs: any change here silently reshuffles every experiment
    assert mix64(0) == 0
    assert mix64(1) == 6238072747940578789
    assert mix64(2**64 - 1) == 13029008266876403067
    assert derive_trial_seed(0, 0, 0) == 3746585686858627171
    assert derive_trial_seed(42, 3, 17) == 15582162091809384206
    assert stream_seed(0, GRAPH_STREAM) == 2039656155128696651
    assert stream_seed(0, FACTOR_STREAM) == 10666630031809862347


@given(u64)
def test_mix64_in_range(x):
    y = mix64(x)
    assert 0 <= y <= MASK64


@given(u64, st.integers(0, 1000), st.integers(0, 1000))
def test_derive_depends_on_all_inputs(master, gi, ti):
    base = derive_trial_seed(master, gi, ti)
    assert base != derive_trial_seed(master ^ 1, gi, ti)
    assert base != derive_trial_seed(master, gi + 1, ti)
    assert base != derive_trial_seed(master, gi, ti + 1)


def _mix64_vec(x: np.ndarray) -> np.ndarray:
    # numpy uint64 arithmetic wraps, matching the scalar masked version
    x = x.copy()
    x ^= x >> np.uint64(30)
    x *= np.uint64(0xBF58476D1CE4E5B9)
    x ^= x >> np.uint64(27)
    x *= np.uint64(0x94D049BB133111EB)
    x ^= x >> np.uint64(31)
    return x


def _derive_vec(master: int, gi: np.ndarray, ti: np.ndarray) -> np.ndarray:
    golden = np.uint64(0x9E3779B97F4A7C15)
    with np.errstate(over="ignore"):
        z = np.full_like(gi, mix64(master ^ int(golden)), dtype=np.uint64)
        z = _mix64_vec(z + gi.astype(np.uint64))
        z = _mix64_vec(z + ti.astype(np.uint64))
    return z


def test_vectorised_mirror_matches_scalar():
    gi = np.arange(64, dtype=np.uint64)
    ti = np.arange(64, dtype=np.uint64) * np.uint64(7)
    got = _derive_vec(99, gi, ti)
    for i in range(64):
        assert int(got[i]) == derive_trial_seed(99, int(gi[i]), int(ti[i]))


def test_million_trial_seeds_distinct():
    # a full sweep's worth of (grid, trial) cells must never collide
    grids, trials = 100, 10_000
    gi = np.repeat(np.arange(grids, dtype=np.uint64), trials)
    ti = np.tile(np.arange(trials, dtype=np.uint64), grids)
    seeds = _derive_vec(12345, gi, ti)
    assert len(np.unique(seeds)) == grids * trials


def test_stream_separation():
    seeds = [stream_seed(s, GRAPH_STREAM) for s in range(1000)]
    seeds += [stream_seed(s, FACTOR_STREAM) for s in range(1000)]
    assert len(set(seeds)) == 2000

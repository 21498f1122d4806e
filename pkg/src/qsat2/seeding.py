"""Deterministic seed derivation for reproducible parallel experiments.

Every trial gets its own 64-bit seed computed from (master, grid index,
trial index) by an avalanche mixer, so results never depend on how work is
scheduled.  The same mixer separates the graph and constraint streams
inside a single generation call.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# Stream tags for the independent RNG streams of one generation call.
GRAPH_STREAM = 0x67726170  # "grap"
FACTOR_STREAM = 0x66616374  # "fact"


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a bijective avalanche on 64-bit words."""
    z &= MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & MASK64
    z ^= z >> 31
    return z


def derive_trial_seed(master: int, grid_index: int, trial_index: int) -> int:
    """Mix the packed triple into a fresh 64-bit seed, one mixer pass per field."""
    z = mix64((master ^ _GOLDEN) & MASK64)
    z = mix64((z + grid_index) & MASK64)
    z = mix64((z + trial_index) & MASK64)
    return z


def stream_seed(seed: int, tag: int) -> int:
    """Sub-seed for one named stream of a generation call."""
    return mix64((seed ^ tag) & MASK64)

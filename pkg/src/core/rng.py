"""Seeded random generators shared by every randomized check"""

import zlib

import numpy as np

GENERATOR_NAME = "spinlab-rng-v1"

# Stable across platforms and Python versions (unlike hash()).
_STREAM_TAG = zlib.crc32(GENERATOR_NAME.encode("ascii"))


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """PCG64 generator for a config seed and a named sub-stream

    Args:
        seed: Non-negative integer seed from the experiment config
        stream: Index distinguishing independent draws within one run

    Returns:
        numpy Generator
    """
    if seed < 0:
        raise ValueError(f"Seed must be >= 0, got {seed}")
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence([_STREAM_TAG, int(seed), int(stream)]))
    )

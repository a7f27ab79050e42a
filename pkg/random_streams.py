import zlib

import numpy as np


def stream(seed: int, name: str) -> np.random.Generator:
    """
    Returns an independent generator for the named consumer of a run seed.

    Streams are keyed by a CRC of the name, so adding a new consumer never
    shifts the draws of an existing one.

    Parameters:
    seed (int): the run seed
    name (str): consumer name, e.g. "init" or "split"
    """
    key = zlib.crc32(name.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(key,)))


def derive_seed(seed: int, name: str) -> int:
    """
    Derives a plain integer seed for libraries that take `random_state` ints.
    """
    return int(stream(seed, name).integers(0, 2**31 - 1))

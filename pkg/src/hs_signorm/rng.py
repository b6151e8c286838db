"""Reproducible random streams.

All randomness derives from one 64-bit seed. Replicates are grouped in blocks of
fixed size; block ``b`` of stream ``s`` is drawn from a Philox (counter-based)
generator keyed by ``SeedSequence(seed, spawn_key=(s, b))``. The value of a
replicate therefore depends only on ``(seed, s, replicate index)``, never on how
blocks are scheduled across workers.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .config_loader import get_stream_block_size
from .errors import ValidationError

logger = logging.getLogger(__name__)

_SEED_MASK = (1 << 64) - 1


def block_generator(seed: int, stream: int, block: int) -> np.random.Generator:
    """Return the generator of block ``block`` of stream ``stream``."""
    sequence = np.random.SeedSequence(int(seed) & _SEED_MASK, spawn_key=(int(stream), int(block)))
    return np.random.Generator(np.random.Philox(sequence))


@dataclass(frozen=True)
class StreamPlan:
    """Partition of ``replicates`` into fixed-size blocks of one stream."""

    seed: int
    replicates: int
    stream: int = 0
    block_size: int = 0

    def __post_init__(self):
        if self.replicates < 1:
            raise ValidationError(f"replicates must be >= 1, got {self.replicates}")
        if self.block_size <= 0:
            object.__setattr__(self, "block_size", get_stream_block_size())

    @property
    def n_blocks(self) -> int:
        return -(-self.replicates // self.block_size)

    def blocks(self) -> Iterator[tuple[int, int, np.random.Generator]]:
        """Yield ``(block index, replicates in block, generator)`` in block order."""
        for block in range(self.n_blocks):
            size = min(self.block_size, self.replicates - block * self.block_size)
            yield block, size, block_generator(self.seed, self.stream, block)


"""Core value types: individuals and species."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(eq=False)
class Individual:
    """A candidate solution: genome, fitness (maximization) and the number
    of consecutive generations without personal improvement."""

    genome: np.ndarray
    fitness: float
    stagnation: int = 0

    def copy(self) -> "Individual":
        return Individual(self.genome.copy(), self.fitness, self.stagnation)


@dataclass(eq=False)
class Species:
    """A sub-population assigned to one basin of attraction.

    ``adaptive_state`` is created lazily when the species first evolves;
    it is owned by this species alone.
    """

    members: list = field(default_factory=list)
    adaptive_state: object = None

    def __len__(self) -> int:
        return len(self.members)

    @property
    def seed(self) -> Individual:
        """Best member (fitness-descending, list position breaks ties)."""
        best = self.members[0]
        for m in self.members[1:]:
            if m.fitness > best.fitness:
                best = m
        return best

    def seed_index(self) -> int:
        best = 0
        for i in range(1, len(self.members)):
            if self.members[i].fitness > self.members[best].fitness:
                best = i
        return best

    def genomes(self) -> np.ndarray:
        return np.stack([m.genome for m in self.members])

    def fitnesses(self) -> np.ndarray:
        return np.array([m.fitness for m in self.members], dtype=np.float64)

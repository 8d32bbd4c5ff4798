"""Peak archive: stores one representative per located peak, using a
midpoint valley test to decide whether a candidate is a new peak."""

from __future__ import annotations

import math

import numpy as np

from .bench.budget import FitnessBudget
from .bench.functions import evaluate
from .engine import repair_bounds
from .errors import BudgetExhausted
from .types import Individual


class PeakArchive:
    """Deduplicated (point, fitness) entries, one per distinct peak."""

    def __init__(self):
        self.entries: list = []  # (np.ndarray point, float fitness)

    def __len__(self):
        return len(self.entries)

    def nearest_entry(self, point):
        """(index, entry, distance) of the Euclidean-nearest entry, or
        None when empty; the lowest index wins exact distance ties."""
        if not self.entries:
            return None
        best_i = -1
        best_d = math.inf
        p = np.asarray(point, dtype=np.float64)
        for i, (q, _) in enumerate(self.entries):
            d = float(np.sqrt(((p - q) ** 2).sum()))
            if d < best_d:
                best_d = d
                best_i = i
        return best_i, self.entries[best_i], best_d

    def merge(self, localbest: Individual, budget: FitnessBudget, spec,
              rng=None) -> "PeakArchive":
        """Insert ``localbest`` if it represents a peak distinct from its
        nearest entry; otherwise keep that peak's best representative.

        Distinctness is decided by one budget-charged probe between the
        two points: strictly below both endpoints means a valley;
        strictly above both means a third peak lies between them (two
        near-converged maxima of one basin cannot be dominated from
        inside), unless the pair straddles a single peak within the
        niche radius, in which case the probe is that peak's better
        representative.  Only the in-between case means the same basin.
        With an ``rng`` the probe position is drawn from the middle half
        of the segment, which defeats evenly spaced peak lattices where
        the exact midpoint of two peaks is itself a peak.  The first
        insertion is free.  On budget exhaustion the archive is left
        unchanged.
        """
        point = np.array(localbest.genome, dtype=np.float64)
        lf = float(localbest.fitness)
        if not self.entries:
            self.entries.append((point, lf))
            return self
        i, (epoint, ef), dist = self.nearest_entry(point)
        t = 0.5 if rng is None else 0.25 + 0.5 * rng.uniform()
        probe = repair_bounds(point + t * (epoint - point), spec.lower_bounds,
                              spec.upper_bounds)
        try:
            mf = evaluate(spec, probe, budget)
        except BudgetExhausted:
            return self
        if mf < lf and mf < ef:
            self.entries.append((point, lf))
        elif mf > lf and mf > ef:
            if dist <= spec.niche_radius:
                self.entries[i] = (probe, mf)
            else:
                self.entries.append((point, lf))
        elif lf > ef:
            self.entries[i] = (point, lf)
        return self

    def as_individuals(self):
        return [Individual(np.array(p), f, 0) for p, f in self.entries]

    def to_lines(self):
        """One entry per line: comma-separated genome then fitness, at
        full double precision."""
        return ["%s,%s" % (",".join(repr(float(v)) for v in p), repr(float(f)))
                for p, f in self.entries]

    @classmethod
    def from_lines(cls, lines):
        arch = cls()
        for line in lines:
            line = line.strip()
            if not line:
                continue
            parts = [float(tok) for tok in line.split(",")]
            arch.entries.append((np.array(parts[:-1]), parts[-1]))
        return arch


def nearest_entry(archive: PeakArchive, point):
    return archive.nearest_entry(point)


def merge(archive: PeakArchive, localbest: Individual, budget: FitnessBudget,
          spec) -> PeakArchive:
    return archive.merge(localbest, budget, spec)

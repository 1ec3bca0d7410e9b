"""Monte Carlo counters shared by the oblivious-transfer and key-exchange studies."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class TrialStats:
    trials: int
    successes: int

    def __post_init__(self):
        if self.trials <= 0:
            raise ValueError("trials must be positive")
        if not 0 <= self.successes <= self.trials:
            raise ValueError("successes must lie in [0, trials]")

    @property
    def rate(self) -> float:
        return self.successes / self.trials

    def sigma(self, expected: float) -> float:
        """Binomial standard error of the rate around ``expected``."""
        return math.sqrt(expected * (1 - expected) / self.trials)

    def record(self, **extra) -> str:
        """Single-line ``key=value`` record; ``extra`` fields come first."""
        fields = dict(extra)
        fields.update(trials=self.trials, successes=self.successes, rate=f"{self.rate:.6f}")
        return " ".join(f"{k}={v}" for k, v in fields.items())

    def structured(self, **extra) -> str:
        """Same fields as :meth:`record`, one per line."""
        return self.record(**extra).replace(" ", "\n") + "\n"


def trial_seed(master_seed: int, i: int) -> int:
    """Seed for trial ``i``; trials can run in any order or in parallel."""
    return master_seed ^ i

"""Evaluation budget: every objective call costs exactly one unit."""

from __future__ import annotations

from ..errors import BudgetExhausted


class FitnessBudget:
    """Counts objective evaluations against the problem's FE cap.

    Niching valley checks, opposite populations, balance refills,
    local-search probes and archive midpoints all charge this counter;
    there are no free evaluations anywhere in a run.
    """

    __slots__ = ("used", "cap", "reserved")

    def __init__(self, cap: int, used: int = 0):
        if cap <= 0:
            raise ValueError("budget cap must be positive")
        if used > cap:
            raise ValueError("used exceeds cap")
        self.used = used
        self.cap = cap
        self.reserved = 0

    @property
    def remaining(self) -> int:
        """Evaluations still spendable (the hard cap minus holds)."""
        return max(0, self.cap - self.reserved - self.used)

    def reserve(self, n: int) -> None:
        """Hold back ``n`` evaluations (e.g. one per pending archive
        merge, so a located peak never misses scoring)."""
        self.reserved = min(self.reserved + n, max(0, self.cap - self.used))

    def release(self, n: int = 1) -> None:
        self.reserved = max(0, self.reserved - n)

    def spend_one(self) -> None:
        """Charge one evaluation; raises if nothing spendable remains."""
        if self.remaining <= 0:
            raise BudgetExhausted(f"fitness budget exhausted ({self.cap} evaluations)")
        self.used += 1

    def consume(self, n: int) -> None:
        """Charge ``n`` evaluations already performed by a kernel."""
        if n < 0 or self.used + n > self.cap:
            raise ValueError("kernel overspent the budget")
        self.used += n

    def __repr__(self) -> str:
        return f"FitnessBudget(used={self.used}, cap={self.cap})"

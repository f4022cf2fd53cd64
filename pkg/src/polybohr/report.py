"""Three-valued evaluation reports shared by the series and functional layers.

Every functional evaluation returns a value together with a rigorous upper
bound on the truncated tail.  The verdict against a threshold (normally 1) is
three-valued so that truncation can never silently mislabel a result:

* ``HOLDS``        value + tail_bound <= threshold, conclusive,
* ``VIOLATED``     value alone exceeds the threshold, conclusive,
* ``INCONCLUSIVE`` value <= threshold < value + tail_bound; raising the
  truncation degree shrinks the tail and resolves the case.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Verdict(str, enum.Enum):
    HOLDS = "HOLDS"
    VIOLATED = "VIOLATED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class EvalReport:
    """A functional value, its certified tail bound, and the verdict."""

    value: float
    tail_bound: float
    threshold: float = 1.0
    verdict: Verdict = Verdict.HOLDS
    detail: str = ""

    @staticmethod
    def build(value: float, tail_bound: float, threshold: float = 1.0,
              detail: str = "") -> "EvalReport":
        if tail_bound < 0.0:
            raise ValueError(f"negative tail bound {tail_bound}")
        if value > threshold:
            verdict = Verdict.VIOLATED
        elif value + tail_bound <= threshold:
            verdict = Verdict.HOLDS
        else:
            verdict = Verdict.INCONCLUSIVE
        return EvalReport(value, tail_bound, threshold, verdict, detail)

    @property
    def slack(self) -> float:
        """Distance from value + tail to the threshold (positive when HOLDS)."""
        return self.threshold - (self.value + self.tail_bound)

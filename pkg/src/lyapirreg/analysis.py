"""Finite-time Lyapunov exponent series and subsequence-limit verdicts."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

VERDICT_SCHEMA = "lyapirreg.verdict/1"

REGULAR = "regular"
IRREGULAR = "irregular"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Schedule:
    """A named, strictly increasing sequence of times."""

    name: str
    times: tuple

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(self.times))
        for t0, t1 in zip(self.times, self.times[1:]):
            if not t1 > t0:
                raise ValueError(f"schedule {self.name!r} is not strictly increasing")

    def __iter__(self) -> Iterator:
        return iter(self.times)

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class FtleSeries:
    """Pairs ``(time, log|D f^time v| / time)`` plus what produced them."""

    entries: tuple
    system: str = ""
    vector: tuple = ()
    schedule: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        entries = tuple((t, float(x)) for t, x in self.entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "vector", tuple(self.vector))
        for (t0, _), (t1, _) in zip(entries, entries[1:]):
            if not t1 > t0:
                raise ValueError("FtleSeries times must be strictly increasing")

    @property
    def times(self):
        return [t for t, _ in self.entries]

    @property
    def values(self):
        return [x for _, x in self.entries]

    def __len__(self):
        return len(self.entries)

    def subseries(self, indices: Sequence[int], schedule: str | None = None) -> "FtleSeries":
        return FtleSeries(
            tuple(self.entries[i] for i in indices),
            system=self.system,
            vector=self.vector,
            schedule=schedule if schedule is not None else self.schedule,
            meta=dict(self.meta),
        )


def tail_limit(series: FtleSeries, tail_fraction: float = 0.25) -> tuple[float, float]:
    """Mean and max-min spread over the last ``tail_fraction`` of the entries.

    At least two entries are always used.
    """
    if not 0.0 < tail_fraction < 1.0:
        raise ValueError("tail_fraction must lie in (0, 1)")
    if len(series) < 4:
        raise ValueError(f"series too short for a tail estimate ({len(series)} < 4)")
    values = series.values
    n = max(2, math.ceil(tail_fraction * len(values)))
    tail = values[-n:]
    return math.fsum(tail) / n, max(tail) - min(tail)


@dataclass(frozen=True)
class Verdict:
    verdict: str
    gap: float
    estimates: tuple
    spreads: tuple
    system: str = ""
    vector: tuple = ()
    schedules: tuple = ()

    def to_record(self) -> dict:
        return {
            "schema": VERDICT_SCHEMA,
            "system": self.system,
            "vector": list(self.vector),
            "schedules": list(self.schedules),
            "estimates": list(self.estimates),
            "spreads": list(self.spreads),
            "gap": self.gap,
            "verdict": self.verdict,
        }


def detect_irregular(series_a: FtleSeries, series_b: FtleSeries, gap_tol: float = 1e-2,
                     tail_fraction: float = 0.25, abs_floor: float = 1e-9) -> Verdict:
    """Compare the tail limits of two subsequences of the same FTLE sequence.

    A verdict is only issued when both tails are resolved to ``gap_tol / 4``;
    otherwise the result is ``inconclusive``.  A resolved pair is irregular
    when the gap between the tail means exceeds four times the larger spread
    (plus ``abs_floor``), and regular otherwise.  ``gap_tol`` therefore only
    gates resolution, so tightening it can turn a verdict inconclusive but
    never swap regular and irregular.
    """
    if gap_tol <= 0:
        raise ValueError("gap_tol must be positive")
    if series_a.system != series_b.system or series_a.vector != series_b.vector:
        raise ValueError(
            "series metadata mismatch: "
            f"{(series_a.system, series_a.vector)} vs {(series_b.system, series_b.vector)}")
    est_a, spr_a = tail_limit(series_a, tail_fraction)
    est_b, spr_b = tail_limit(series_b, tail_fraction)
    gap = abs(est_a - est_b)
    spread = max(spr_a, spr_b)
    if spread >= gap_tol / 4:
        verdict = INCONCLUSIVE
    elif gap > 4 * spread + abs_floor:
        verdict = IRREGULAR
    else:
        verdict = REGULAR
    return Verdict(verdict, gap, (est_a, est_b), (spr_a, spr_b),
                   system=series_a.system, vector=series_a.vector,
                   schedules=(series_a.schedule, series_b.schedule))

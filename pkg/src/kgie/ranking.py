"""Score aggregation and ranking sensitivity across weight choices.

Per-metric scores aggregate into three groups: coverage and correctness
average their entity- and triple-level values, and consistency averages
seven values (one minus the duplicate rate plus the six compliance
scores).  Pipelines are then ranked by weighted totals over an exhaustive
grid of weight vectors; the spread of ranks a pipeline attains across the
grid shows how sensitive its position is to the weighting.

Weight vectors use exact rational arithmetic so that grid membership and
score ties are never blurred by floating-point rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class GroupScores:
    coverage: float | None
    correctness: float | None
    consistency: float | None

    def as_tuple(self) -> tuple[float, float, float]:
        if self.coverage is None or self.correctness is None or self.consistency is None:
            raise ValueError("group score is undefined")
        return (self.coverage, self.correctness, self.consistency)


def _mean(values: Sequence[float | None]) -> float | None:
    if any(v is None for v in values):
        return None
    return sum(values) / len(values)  # type: ignore[arg-type]


def group_scores(
    cov_e: float | None,
    cov_t: float | None,
    corr_e: float | None,
    corr_t: float | None,
    dup_rate: float | None,
    compliance: Sequence[float | None],
) -> GroupScores:
    """Aggregate the thirteen per-metric values into the three groups.

    The consistency group averages seven members: ``1 - dup_rate`` and the
    six compliance values.  Any undefined member makes its group undefined.
    """
    if len(compliance) != 6:
        raise ValueError("expected exactly six compliance values")
    one_minus_dr = None if dup_rate is None else 1.0 - dup_rate
    return GroupScores(
        coverage=_mean((cov_e, cov_t)),
        correctness=_mean((corr_e, corr_t)),
        consistency=_mean((one_minus_dr, *compliance)),
    )


def _as_fraction(step: "Fraction | float | str | int") -> Fraction:
    if isinstance(step, Fraction):
        return step
    if isinstance(step, float):
        return Fraction(str(step))
    return Fraction(step)


def weight_grid(k: int, step: "Fraction | float | str | int") -> list[tuple[Fraction, ...]]:
    """All k-dimensional weight vectors with entries in multiples of ``step``.

    Every vector sums to exactly 1.  ``step`` must divide 1; the grid has
    C(1/step + k - 1, k - 1) vectors, in lexicographic order.
    """
    if k < 1:
        raise ValueError("need at least one weight dimension")
    frac = _as_fraction(step)
    if frac <= 0 or frac > 1:
        raise ValueError("step must be in (0, 1]")
    if (1 / frac).denominator != 1:
        raise ValueError("step must divide 1 exactly")
    units = int(1 / frac)

    vectors: list[tuple[Fraction, ...]] = []

    def build(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 1:
            vectors.append(tuple(Fraction(u) * frac for u in (*prefix, remaining)))
            return
        for used in range(remaining + 1):
            build([*prefix, used], remaining - used, slots - 1)

    build([], units, k)
    return vectors


def total_score(weights: Sequence["Fraction | float"], values: Sequence[float]) -> float:
    """Weighted sum of group scores."""
    if len(weights) != len(values):
        raise ValueError("weights and values differ in length")
    return float(sum(Fraction(w) * Fraction(v) for w, v in zip(weights, values)))


def harmonic_mean(values: Sequence[float]) -> float:
    """Harmonic mean; 0 as soon as any value is 0."""
    if not values:
        raise ValueError("harmonic mean of no values")
    if any(v < 0 for v in values):
        raise ValueError("harmonic mean needs non-negative values")
    if any(v == 0 for v in values):
        return 0.0
    return len(values) / sum(1.0 / v for v in values)


def _dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    return all(x >= y for x, y in zip(a, b)) and any(x > y for x, y in zip(a, b))


def _competition_ranks(
    totals: dict[str, Fraction], groups: dict[str, Sequence[float]]
) -> dict[str, int]:
    """Competition ranking ("1224") over descending totals.

    Pipelines with equal totals are ordered by dominance of their group
    scores; only mutually non-dominated ones actually share a rank.
    """
    ranks: dict[str, int] = {}
    placed = 0
    for total in sorted(set(totals.values()), reverse=True):
        tied = sorted(p for p, t in totals.items() if t == total)
        remaining = set(tied)
        while remaining:
            layer = sorted(
                p
                for p in remaining
                if not any(
                    _dominates(groups[q], groups[p]) for q in remaining if q != p
                )
            )
            if not layer:  # cannot happen: dominance is a strict partial order
                layer = sorted(remaining)
            for p in layer:
                ranks[p] = placed + 1
            placed += len(layer)
            remaining -= set(layer)
    return ranks


def rank_ranges(
    groups: dict[str, GroupScores | Sequence[float]],
    weights: Iterable[Sequence["Fraction | float"]],
) -> dict[str, tuple[int, int]]:
    """Min and max competition rank of each pipeline across weight vectors."""
    plain: dict[str, tuple[float, ...]] = {}
    for name, g in groups.items():
        plain[name] = g.as_tuple() if isinstance(g, GroupScores) else tuple(g)
    if not plain:
        return {}
    spans: dict[str, tuple[int, int]] = {}
    saw_weights = False
    for w in weights:
        saw_weights = True
        totals = {
            name: sum((Fraction(wi) * Fraction(vi) for wi, vi in zip(w, values)), Fraction(0))
            for name, values in plain.items()
        }
        for name, rank in _competition_ranks(totals, plain).items():
            lo, hi = spans.get(name, (rank, rank))
            spans[name] = (min(lo, rank), max(hi, rank))
    if not saw_weights:
        raise ValueError("no weight vectors supplied")
    return spans

"""Feature-to-class association scores and their normalized weight ratios.

Numeric features are scored by the absolute Pearson correlation against the
integer-encoded class labels; categorical features by Cramer's V over the
feature x label contingency table.  Both magnitudes live on the same [0, 1]
scale, so a feature's weight is simply its magnitude divided by the sum of
all magnitudes.  The sign of a Pearson score only records direction of
association; canvas area is allocated from the magnitude.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateFeatureError, DegenerateTableError, NoSignalError
from .ingest import Dataset, Kind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AssociationScore:
    feature: str
    method: str  # "pearson" | "cramers_v"
    raw: float
    magnitude: float
    degenerate: bool = False

    def __post_init__(self):
        assert abs(self.magnitude - abs(self.raw)) < 1e-15


@dataclass(frozen=True)
class WeightTable:
    """Per-feature scores plus the scale-free weight ratios.

    weights[i] = scores[i].magnitude / total, so the weights are invariant
    under any positive rescaling of the magnitudes and sum to one.
    """

    scores: tuple[AssociationScore, ...]
    total: float
    weights: tuple[float, ...]

    @classmethod
    def from_scores(cls, scores: Sequence[AssociationScore]) -> "WeightTable":
        total = float(sum(s.magnitude for s in scores))
        if total <= 0.0:
            raise NoSignalError(
                "all features have zero association with the class; nothing to lay out"
            )
        weights = tuple(s.magnitude / total for s in scores)
        return cls(scores=tuple(scores), total=total, weights=weights)

    def weight_of(self, feature: str) -> float:
        for s, w in zip(self.scores, self.weights):
            if s.feature == feature:
                return w
        raise KeyError(feature)

    def as_mapping(self) -> dict[str, float]:
        return {s.feature: w for s, w in zip(self.scores, self.weights)}


def pearson_r(x: Sequence[float], y: Sequence[float]) -> float:
    """Product-moment correlation of two equal-length numeric vectors."""
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.shape != ya.shape or xa.ndim != 1:
        raise ValueError("pearson_r needs two 1-D vectors of equal length")
    if xa.size < 2:
        raise ValueError("pearson_r needs at least 2 observations")
    a = xa - xa.mean()
    b = ya - ya.mean()
    saa = float(a @ a)
    sbb = float(b @ b)
    if saa == 0.0 or sbb == 0.0:
        raise DegenerateFeatureError("zero variance: correlation undefined")
    r = float(a @ b) / math.sqrt(saa * sbb)
    return max(-1.0, min(1.0, r))


def chi_square(table: Sequence[Sequence[float]]) -> float:
    """Chi-square statistic of a contingency table of non-negative counts."""
    obs = np.asarray(table, dtype=float)
    if obs.ndim != 2 or obs.shape[0] < 2 or obs.shape[1] < 2:
        raise DegenerateTableError("contingency table needs at least 2 rows and 2 columns")
    if (obs < 0).any():
        raise ValueError("contingency table counts must be non-negative")
    row_totals = obs.sum(axis=1)
    col_totals = obs.sum(axis=0)
    grand = float(obs.sum())
    if grand <= 0.0 or (row_totals == 0).any() or (col_totals == 0).any():
        raise DegenerateTableError("contingency table has an empty row or column")
    expected = np.outer(row_totals, col_totals) / grand
    return float(((obs - expected) ** 2 / expected).sum())


def cramers_v(table: Sequence[Sequence[float]]) -> float:
    """Cramer's V: chi-square normalized into [0, 1]."""
    obs = np.asarray(table, dtype=float)
    chi2 = chi_square(obs)
    n = float(obs.sum())
    k = min(obs.shape) - 1
    v = math.sqrt(chi2 / (n * k))
    return min(1.0, v)


def contingency_table(xs: Sequence, ys: Sequence) -> np.ndarray:
    """Cross-tabulate two aligned sequences; categories keep first-appearance order."""
    if len(xs) != len(ys):
        raise ValueError("sequences must be aligned")
    x_levels: dict = {}
    y_levels: dict = {}
    for v in xs:
        x_levels.setdefault(v, len(x_levels))
    for v in ys:
        y_levels.setdefault(v, len(y_levels))
    counts = np.zeros((len(x_levels), len(y_levels)), dtype=np.int64)
    for xv, yv in zip(xs, ys):
        counts[x_levels[xv], y_levels[yv]] += 1
    return counts


def compute_weights(dataset: Dataset) -> WeightTable:
    """Score every feature against the class labels and normalize.

    Degenerate features (constant column, or a contingency table with a
    single level) get magnitude 0 and are flagged rather than failing the
    run; they are excluded from layout downstream.  Raises NoSignalError
    when nothing scores above zero.
    """
    if not dataset.schema.features:
        raise NoSignalError("dataset has no features")
    labels = np.asarray(dataset.labels, dtype=float)
    scores = []
    for spec in dataset.schema.features:
        if spec.kind is Kind.NUMERIC:
            method = "pearson"
            try:
                raw = pearson_r(dataset.numeric(spec.name), labels)
                score = AssociationScore(spec.name, method, raw, abs(raw))
            except DegenerateFeatureError:
                score = AssociationScore(spec.name, method, 0.0, 0.0, degenerate=True)
        else:
            method = "cramers_v"
            try:
                v = cramers_v(contingency_table(dataset.columns[spec.name], dataset.labels))
                score = AssociationScore(spec.name, method, v, v)
            except DegenerateTableError:
                score = AssociationScore(spec.name, method, 0.0, 0.0, degenerate=True)
        if score.degenerate:
            logger.warning("feature %r is degenerate; weight forced to 0", spec.name)
        scores.append(score)
    return WeightTable.from_scores(scores)

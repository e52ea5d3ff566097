"""Accuracy curves and the normalized area-under-curve robustness score.

The robustness score of a curve A_0..A_n is the trapezoidal mean of the
accuracies over the n-1 consecutive level intervals, divided by the clean
accuracy A_0. A constant curve scores 1.0; values above 1.0 are possible
(accuracy above baseline under mild occlusion) and are reported unclamped.
"""

from dataclasses import dataclass, field

from occlubench.errors import (
    CurveSpacingError,
    DegenerateCurveError,
    EmptyInputError,
    MissingLevelError,
    ZeroBaselineError,
)

# Pseudo-kind tagging the shared clean (level 0) predictions.
CLEAN_KIND = "none"


def canonical_label(label: str) -> str:
    """Labels cross a text pipe, so equality is checked after trimming and
    case-folding."""
    return label.strip().casefold()


@dataclass(frozen=True)
class PredictionRecord:
    """One classifier verdict for one artifact."""

    image_id: str
    true_label: str
    pred_label: str
    kind: str  # occlusion kind wire name, or "none" for clean images
    level_percent: int


@dataclass
class RobustnessCurve:
    """Accuracy per occlusion level for one occlusion kind."""

    kind: str
    levels: list  # ascending percents, starting at 0, uniformly spaced
    accuracy: list  # same length, values in [0, 1]
    sample_count: list  # records per level

    def validate(self) -> None:
        if len(self.levels) != len(self.accuracy):
            raise CurveSpacingError("levels and accuracy lengths differ")
        _check_levels(self.levels)
        for a in self.accuracy:
            if not 0.0 <= a <= 1.0:
                raise CurveSpacingError(f"accuracy {a} outside [0, 1]")


def _check_levels(levels) -> None:
    if len(levels) < 1 or levels[0] != 0:
        raise CurveSpacingError("levels must start at 0")
    if len(levels) >= 2:
        step = levels[1] - levels[0]
        if step <= 0:
            raise CurveSpacingError("levels must be strictly ascending")
        for a, b in zip(levels, levels[1:]):
            if b - a != step:
                raise CurveSpacingError(f"non-uniform level spacing near {a}->{b}")


def accuracy(records) -> float:
    """Fraction of records whose predicted label matches the true label."""
    records = list(records)
    if not records:
        raise EmptyInputError("accuracy needs at least one record")
    correct = sum(
        1 for r in records if canonical_label(r.pred_label) == canonical_label(r.true_label)
    )
    return correct / len(records)


def build_curve(records, kind: str, expected_levels) -> RobustnessCurve:
    """Assemble one kind's accuracy curve. Level-0 accuracy comes from the
    shared clean records (kind "none"); other levels use matching-kind
    records only."""
    expected_levels = list(expected_levels)
    _check_levels(expected_levels)

    per_level = {level: [] for level in expected_levels}
    for r in records:
        if r.kind == kind or (r.kind == CLEAN_KIND and r.level_percent == 0):
            if r.level_percent in per_level:
                per_level[r.level_percent].append(r)

    missing = [level for level in expected_levels if not per_level[level]]
    if missing:
        raise MissingLevelError(kind, missing)

    curve = RobustnessCurve(
        kind=kind,
        levels=expected_levels,
        accuracy=[accuracy(per_level[level]) for level in expected_levels],
        sample_count=[len(per_level[level]) for level in expected_levels],
    )
    curve.validate()
    return curve


def nauc(curve: RobustnessCurve) -> float:
    """Normalized area under the accuracy curve."""
    if len(curve.levels) < 2:
        raise DegenerateCurveError("need at least two levels")
    _check_levels(curve.levels)
    a = curve.accuracy
    if a[0] == 0.0:
        raise ZeroBaselineError("clean accuracy is 0; normalization undefined")
    trapezoid_sum = sum((a[i] + a[i + 1]) / 2.0 for i in range(len(a) - 1))
    return trapezoid_sum / (len(a) - 1) / a[0]


def average_nauc(per_kind_naucs) -> float:
    """Unweighted mean over kinds."""
    values = list(per_kind_naucs)
    if not values:
        raise EmptyInputError("average_nauc needs at least one value")
    return sum(values) / len(values)


@dataclass
class KindResult:
    a0: float
    nauc: float
    curve: RobustnessCurve


@dataclass
class RobustnessReport:
    """Per-kind curves and scores for one model."""

    model_id: str
    kinds: dict = field(default_factory=dict)  # kind name -> KindResult
    average_nauc: float = 0.0

    def to_dict(self) -> dict:
        return {
            "model_id": self.model_id,
            "average_nauc": self.average_nauc,
            "kinds": {
                name: {
                    "a0": res.a0,
                    "nauc": res.nauc,
                    "levels": res.curve.levels,
                    "accuracy": res.curve.accuracy,
                    "sample_count": res.curve.sample_count,
                }
                for name, res in self.kinds.items()
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RobustnessReport":
        kinds = {}
        for name, payload in data["kinds"].items():
            curve = RobustnessCurve(
                kind=name,
                levels=list(payload["levels"]),
                accuracy=list(payload["accuracy"]),
                sample_count=list(payload.get("sample_count", [])),
            )
            kinds[name] = KindResult(
                a0=payload["a0"], nauc=payload["nauc"], curve=curve
            )
        return cls(
            model_id=data["model_id"],
            kinds=kinds,
            average_nauc=data["average_nauc"],
        )


def build_report(records, model_id: str, kinds, expected_levels) -> RobustnessReport:
    """Curves, per-kind scores and their mean for one prediction set."""
    results = {}
    for kind in kinds:
        curve = build_curve(records, kind, expected_levels)
        results[kind] = KindResult(a0=curve.accuracy[0], nauc=nauc(curve), curve=curve)
    return RobustnessReport(
        model_id=model_id,
        kinds=results,
        average_nauc=average_nauc(res.nauc for res in results.values()),
    )

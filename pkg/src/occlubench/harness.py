"""Sweep generation, manifest handling, prediction scoring and report
rendering.

Output tree layout: ``<out>/<kind>/<level>/<class>/<image_id>.png`` with
the level as three digits ("005" ... "100"). Clean images are written once
under the pseudo-kind "none" at level 000 and shared by every curve.

The manifest is JSON Lines: a header line, optional warning lines for
inputs that failed to decode, and one entry line per written artifact.
Parsing is tolerant: unknown line types are skipped.
"""

import csv
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from occlubench import _speedups
from occlubench.errors import (
    CoverageError,
    ImageDecodeError,
    ImageReadError,
    InsufficientImagesError,
    InvalidConfigError,
    UnknownImageError,
)
from occlubench.imaging import GRAY_FILL, apply_mask, load_image, resize, write_image
from occlubench.masks import (
    KIND_ORDER,
    KindParams,
    OcclusionKind,
    OcclusionSpec,
    generate,
)
from occlubench.metrics import (
    CLEAN_KIND,
    PredictionRecord,
    RobustnessReport,
    build_report,
)
from occlubench._rng import SplitMix64, fnv1a_64

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg"}

TRAIN_PER_CLASS = 16
VAL_PER_CLASS = 4

PREDICTIONS_HEADER = ["image_id", "kind", "level", "true_label", "pred_label"]


def seed_derive(master_seed: int, image_id: str, kind: str, level: int) -> int:
    """Stable per-artifact seed: FNV-1a over
    ``master_seed|image_id|kind|level``."""
    return fnv1a_64(f"{master_seed}|{image_id}|{kind}|{level}".encode("utf-8"))


def pixel_checksum(image) -> int:
    """64-bit FNV-1a over the decoded RGB bytes (not the file bytes, so
    PNG encoder differences cannot break verification)."""
    return _speedups.fnv1a_64(image.tobytes())


@dataclass
class SweepConfig:
    input_dir: Path
    output_dir: Path
    kinds: list = field(default_factory=lambda: list(KIND_ORDER))
    levels: list = field(default_factory=lambda: list(range(0, 101, 5)))
    resolution: int = 224
    master_seed: int = 42
    fill: tuple = GRAY_FILL
    params: KindParams = field(default_factory=KindParams)

    def validate(self) -> None:
        if not self.kinds:
            raise InvalidConfigError("kinds list must not be empty")
        if len(set(self.kinds)) != len(self.kinds):
            raise InvalidConfigError("duplicate kinds in config")
        if 0 not in self.levels:
            raise InvalidConfigError("levels must include 0")
        if sorted(self.levels) != list(self.levels):
            raise InvalidConfigError("levels must be ascending")
        if any(not 0 <= lv <= 100 for lv in self.levels):
            raise InvalidConfigError("levels must lie within [0, 100]")
        if len(self.levels) >= 2:
            step = self.levels[1] - self.levels[0]
            if step <= 0 or any(
                b - a != step for a, b in zip(self.levels, self.levels[1:])
            ):
                raise InvalidConfigError("levels must be uniformly spaced")
        if self.resolution < 1:
            raise InvalidConfigError("resolution must be >= 1")


@dataclass
class ManifestEntry:
    image_id: str
    class_label: str
    kind: str
    level_percent: int
    source_path: str
    output_path: str
    per_image_seed: int
    pixel_checksum: int

    def to_dict(self) -> dict:
        return {
            "type": "entry",
            "image_id": self.image_id,
            "class_label": self.class_label,
            "kind": self.kind,
            "level_percent": self.level_percent,
            "source_path": self.source_path,
            "output_path": self.output_path,
            "per_image_seed": self.per_image_seed,
            "pixel_checksum": self.pixel_checksum,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ManifestEntry":
        return cls(
            image_id=data["image_id"],
            class_label=data["class_label"],
            kind=data["kind"],
            level_percent=int(data["level_percent"]),
            source_path=data["source_path"],
            output_path=data["output_path"],
            per_image_seed=int(data["per_image_seed"]),
            pixel_checksum=int(data["pixel_checksum"]),
        )


def discover_images(input_dir):
    """Yield (class_label, stem, path) for every image under
    ``<input_dir>/<class>/<image>``, in sorted order."""
    input_dir = Path(input_dir)
    if not input_dir.is_dir():
        raise ImageReadError(f"input directory not found: {input_dir}")
    found = []
    for class_dir in sorted(p for p in input_dir.iterdir() if p.is_dir()):
        for path in sorted(class_dir.iterdir()):
            if path.suffix.lower() in IMAGE_SUFFIXES:
                found.append((class_dir.name, path.stem, path))
    return found


def split_dataset(input_dir, seed: int) -> dict:
    """Per class: seeded shuffle, first 16 images to train, next 4 to val,
    rest to test. Returns image_id -> split name."""
    images = discover_images(input_dir)
    by_class = {}
    for class_label, stem, _path in images:
        by_class.setdefault(class_label, []).append(stem)
    assignment = {}
    for class_label in sorted(by_class):
        stems = sorted(by_class[class_label])
        if len(stems) < TRAIN_PER_CLASS + VAL_PER_CLASS:
            raise InsufficientImagesError(
                f"class {class_label!r} has {len(stems)} images; "
                f"need at least {TRAIN_PER_CLASS + VAL_PER_CLASS}"
            )
        SplitMix64(fnv1a_64(f"{seed}|{class_label}".encode("utf-8"))).shuffle(stems)
        for i, stem in enumerate(stems):
            if i < TRAIN_PER_CLASS:
                split = "train"
            elif i < TRAIN_PER_CLASS + VAL_PER_CLASS:
                split = "val"
            else:
                split = "test"
            assignment[f"{class_label}__{stem}"] = split
    return assignment


def generate_sweep(config: SweepConfig, manifest_name: str = "manifest.jsonl"):
    """Write one occluded PNG per (image, kind, level > 0), the clean image
    once under kind "none", and a manifest cataloguing every artifact.
    Unreadable inputs are recorded as warnings and skipped.

    Returns (entries, warnings, manifest_path)."""
    config.validate()
    out_root = Path(config.output_dir)
    out_root.mkdir(parents=True, exist_ok=True)
    res = config.resolution

    entries = []
    warnings = []
    for class_label, stem, path in discover_images(config.input_dir):
        image_id = f"{class_label}__{stem}"
        try:
            base = resize(load_image(path), res, res)
        except (ImageReadError, ImageDecodeError) as exc:
            warnings.append({"type": "warning", "source_path": str(path), "message": str(exc)})
            continue

        clean_out = out_root / CLEAN_KIND / "000" / class_label / f"{image_id}.png"
        write_image(base, clean_out)
        entries.append(
            ManifestEntry(
                image_id=image_id,
                class_label=class_label,
                kind=CLEAN_KIND,
                level_percent=0,
                source_path=str(path),
                output_path=str(clean_out),
                per_image_seed=seed_derive(config.master_seed, image_id, CLEAN_KIND, 0),
                pixel_checksum=pixel_checksum(base),
            )
        )
        for kind in config.kinds:
            for level in config.levels:
                if level == 0:
                    continue
                seed = seed_derive(config.master_seed, image_id, kind.value, level)
                mask = generate(
                    OcclusionSpec(
                        kind=kind,
                        fraction=level / 100,
                        width=res,
                        height=res,
                        seed=seed,
                        params=config.params,
                    )
                )
                occluded = apply_mask(base, mask, config.fill)
                out = out_root / kind.value / f"{level:03d}" / class_label / f"{image_id}.png"
                write_image(occluded, out)
                entries.append(
                    ManifestEntry(
                        image_id=image_id,
                        class_label=class_label,
                        kind=kind.value,
                        level_percent=level,
                        source_path=str(path),
                        output_path=str(out),
                        per_image_seed=seed,
                        pixel_checksum=pixel_checksum(occluded),
                    )
                )

    entries.sort(key=lambda e: (e.class_label, e.image_id, e.kind, e.level_percent))
    manifest_path = out_root / manifest_name
    with open(manifest_path, "w", encoding="utf-8", newline="\n") as fh:
        header = {
            "type": "header",
            "generated_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
            "master_seed": config.master_seed,
            "resolution": res,
            "kinds": [k.value for k in config.kinds],
            "levels": list(config.levels),
            "fill": list(config.fill),
        }
        fh.write(json.dumps(header) + "\n")
        for warning in warnings:
            fh.write(json.dumps(warning) + "\n")
        for entry in entries:
            fh.write(json.dumps(entry.to_dict()) + "\n")
    return entries, warnings, manifest_path


def read_manifest(path):
    """Streaming, tolerant manifest parse: entry lines only."""
    entries = []
    path = Path(path)
    if not path.exists():
        raise ImageReadError(f"no such manifest: {path}")
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError:
                continue
            if isinstance(data, dict) and data.get("type") == "entry":
                entries.append(ManifestEntry.from_dict(data))
    return entries


def read_predictions(path):
    """Parse the predictions CSV (header image_id,kind,level,true_label,
    pred_label; UTF-8; LF)."""
    path = Path(path)
    if not path.exists():
        raise ImageReadError(f"no such predictions file: {path}")
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != PREDICTIONS_HEADER:
            raise InvalidConfigError(
                f"predictions header must be {','.join(PREDICTIONS_HEADER)}, "
                f"got {header}"
            )
        for row in reader:
            if not row:
                continue
            if len(row) != 5:
                raise InvalidConfigError(f"malformed predictions row: {row}")
            image_id, kind, level, true_label, pred_label = row
            records.append(
                PredictionRecord(
                    image_id=image_id,
                    kind=kind,
                    level_percent=int(level),
                    true_label=true_label,
                    pred_label=pred_label,
                )
            )
    return records


def write_predictions(records, path) -> None:
    """Emit the predictions CSV with the exact harness contract."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(PREDICTIONS_HEADER)
        for r in records:
            writer.writerow(
                [r.image_id, r.kind, r.level_percent, r.true_label, r.pred_label]
            )


def _ordered_kinds(names):
    """Canonical presentation order: known kinds first, extras sorted."""
    known = [k.value for k in KIND_ORDER if k.value in names]
    extras = sorted(n for n in names if n not in known)
    return known + extras


def evaluate(manifest_path, predictions_path, model_id: str) -> RobustnessReport:
    """Score a predictions file against a sweep manifest."""
    entries = read_manifest(manifest_path)
    if not entries:
        raise InvalidConfigError(f"manifest has no entries: {manifest_path}")
    records = read_predictions(predictions_path)

    manifest_ids = {e.image_id for e in entries}
    unknown = sorted({r.image_id for r in records} - manifest_ids)
    if unknown:
        raise UnknownImageError(
            f"predictions reference unknown image ids: {unknown[:5]}"
            + ("" if len(unknown) <= 5 else f" (+{len(unknown) - 5} more)")
        )

    predicted = {(r.image_id, r.kind, r.level_percent) for r in records}
    missing_cells = {
        (e.kind, e.level_percent)
        for e in entries
        if (e.image_id, e.kind, e.level_percent) not in predicted
    }
    if missing_cells:
        raise CoverageError(missing_cells)

    kinds = _ordered_kinds({e.kind for e in entries} - {CLEAN_KIND})
    levels = sorted({e.level_percent for e in entries})
    return build_report(records, model_id, kinds, levels)


def render_report(report: RobustnessReport, fmt: str) -> str:
    """Render a report as a markdown summary table or long-form CSV rows
    for curve plotting."""
    kinds = _ordered_kinds(report.kinds.keys())
    if fmt == "md":
        first = report.kinds[kinds[0]]
        headers = ["Model", "Acc."] + [f"NAUC {k}" for k in kinds] + ["Average NAUC"]
        row = (
            [report.model_id, f"{first.a0 * 100:.1f}%"]
            + [f"{report.kinds[k].nauc * 100:.1f}%" for k in kinds]
            + [f"{report.average_nauc * 100:.1f}%"]
        )
        lines = [
            "| " + " | ".join(headers) + " |",
            "| " + " | ".join("---" for _ in headers) + " |",
            "| " + " | ".join(row) + " |",
        ]
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        lines = ["model,kind,level,accuracy"]
        for kind in kinds:
            curve = report.kinds[kind].curve
            for level, acc in zip(curve.levels, curve.accuracy):
                lines.append(f"{report.model_id},{kind},{level},{acc}")
        return "\n".join(lines) + "\n"
    raise InvalidConfigError(f"unknown report format {fmt!r}; use md or csv")

"""Batch prediction over a sweep manifest."""

from pathlib import Path

from occlubench.harness import read_manifest, write_predictions
from occlubench.imaging import load_image
from occlubench.metrics import PredictionRecord

from occlubench_adapter.backends import load_backend
from occlubench_adapter.errors import AdapterError, MissingArtifactError
from occlubench_adapter.prompts import PromptTemplate


def predict_manifest(
    manifest_path,
    model_id: str,
    template: PromptTemplate,
    batch_size: int = 64,
):
    """Classify every manifest artifact; returns PredictionRecords in
    manifest order."""
    template.validate()
    if batch_size < 1:
        raise AdapterError("batch_size must be >= 1")
    entries = read_manifest(manifest_path)
    if not entries:
        raise AdapterError(f"manifest has no entries: {manifest_path}")
    for entry in entries:
        if not Path(entry.output_path).exists():
            raise MissingArtifactError(
                f"artifact missing for {entry.image_id} "
                f"({entry.kind}@{entry.level_percent}): {entry.output_path}"
            )

    backend = load_backend(model_id)
    text_embs = backend.embed_prompts(template)  # (L, D)

    records = []
    for start in range(0, len(entries), batch_size):
        batch = entries[start : start + batch_size]
        images = [load_image(e.output_path) for e in batch]
        image_embs = backend.embed_images(images)  # (B, D)
        best = (image_embs @ text_embs.T).argmax(axis=1)
        for entry, idx in zip(batch, best):
            records.append(
                PredictionRecord(
                    image_id=entry.image_id,
                    true_label=entry.class_label,
                    pred_label=template.labels[int(idx)],
                    kind=entry.kind,
                    level_percent=entry.level_percent,
                )
            )
    return records


def predict_to_csv(manifest_path, model_id, template, out_path, batch_size=64):
    records = predict_manifest(manifest_path, model_id, template, batch_size)
    write_predictions(records, out_path)
    return len(records)

"""Embedding backends.

A backend turns a batch of RGB images into embeddings and a list of text
prompts into embeddings; prediction is argmax cosine similarity. Two
backends exist:

* ``colorname`` — an offline reference model for smoke tests: images embed
  as their mean RGB, labels embed as the RGB of the color they name.
* any other model id — a CLIP-family checkpoint loaded through
  ``transformers`` (requires the ``clip`` extra and downloadable weights).
"""

import numpy as np

from occlubench_adapter.errors import ModelLoadError, PromptError

# Minimal color vocabulary for the offline backend.
_COLOR_TABLE = {
    "black": (0, 0, 0),
    "white": (255, 255, 255),
    "gray": (128, 128, 128),
    "red": (220, 30, 30),
    "green": (30, 200, 30),
    "blue": (30, 30, 220),
    "yellow": (230, 220, 30),
    "cyan": (30, 210, 210),
    "magenta": (210, 30, 210),
    "orange": (240, 150, 30),
    "purple": (130, 30, 180),
    "brown": (140, 90, 40),
}


def _normalize(vectors: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=-1, keepdims=True)
    norms[norms == 0] = 1.0
    return vectors / norms


class ColorNameBackend:
    """Deterministic offline backend: mean-RGB image embeddings against
    color-name text prototypes."""

    name = "colorname"

    def embed_images(self, images) -> np.ndarray:
        feats = np.stack([img.reshape(-1, 3).mean(axis=0) for img in images])
        return _normalize(feats)

    def embed_prompts(self, template) -> np.ndarray:
        protos = []
        for label in template.labels:
            key = label.strip().casefold()
            if key not in _COLOR_TABLE:
                raise PromptError(
                    f"colorname backend knows no color {label!r}; "
                    f"choose from {sorted(_COLOR_TABLE)}"
                )
            protos.append(_COLOR_TABLE[key])
        return _normalize(np.asarray(protos, dtype=float))


class ClipBackend:
    """CLIP-family checkpoint via transformers (e.g.
    openai/clip-vit-base-patch32, openai/clip-vit-base-patch16)."""

    def __init__(self, model_id: str):
        self.name = model_id
        try:
            import torch
            from transformers import CLIPModel, CLIPProcessor
        except ImportError as exc:
            raise ModelLoadError(
                f"transformers/torch unavailable for model {model_id!r}: {exc}"
            ) from exc
        try:
            self._torch = torch
            self._model = CLIPModel.from_pretrained(model_id).eval()
            self._processor = CLIPProcessor.from_pretrained(model_id)
        except Exception as exc:
            raise ModelLoadError(f"cannot load model {model_id!r}: {exc}") from exc

    def embed_images(self, images) -> np.ndarray:
        torch = self._torch
        inputs = self._processor(images=list(images), return_tensors="pt")
        with torch.no_grad():
            feats = self._model.get_image_features(**inputs)
        return _normalize(feats.cpu().numpy())

    def embed_prompts(self, template) -> np.ndarray:
        torch = self._torch
        inputs = self._processor(
            text=template.prompts(), return_tensors="pt", padding=True
        )
        with torch.no_grad():
            feats = self._model.get_text_features(**inputs)
        return _normalize(feats.cpu().numpy())


def load_backend(model_id: str):
    if model_id == ColorNameBackend.name:
        return ColorNameBackend()
    return ClipBackend(model_id)

"""Reference zero-shot classifier client for occlubench sweeps.

Consumes a sweep manifest, classifies every artifact by cosine similarity
between image embeddings and per-label prompt embeddings, and emits the
predictions CSV the occlubench harness consumes.
"""

from occlubench_adapter.prompts import PromptTemplate
from occlubench_adapter.predict import predict_manifest

__all__ = ["PromptTemplate", "predict_manifest"]

__version__ = "0.1.0"

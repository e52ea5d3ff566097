class AdapterError(Exception):
    exit_code = 1


class PromptError(AdapterError):
    """The prompt template or label list violates its invariants."""


class ModelLoadError(AdapterError):
    """The requested model cannot be loaded."""


class MissingArtifactError(AdapterError):
    """A manifest entry points at a file that does not exist."""

    exit_code = 2

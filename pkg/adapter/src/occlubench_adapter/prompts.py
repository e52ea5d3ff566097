from dataclasses import dataclass, field

from occlubench_adapter.errors import PromptError

DEFAULT_TEMPLATE = "a photo of a {label}"


@dataclass(frozen=True)
class PromptTemplate:
    """A prompt with a single ``{label}`` placeholder plus the class
    labels to substitute into it."""

    template: str = DEFAULT_TEMPLATE
    labels: tuple = field(default_factory=tuple)

    def validate(self) -> None:
        if self.template.count("{label}") != 1:
            raise PromptError(
                f"template must contain {{label}} exactly once: {self.template!r}"
            )
        if not self.labels:
            raise PromptError("label list must not be empty")
        cleaned = [lbl.strip() for lbl in self.labels]
        if any(not lbl for lbl in cleaned):
            raise PromptError("labels must be non-empty")
        if len(set(cleaned)) != len(cleaned):
            raise PromptError("labels must be unique")

    def render(self, label: str) -> str:
        return self.template.replace("{label}", label)

    def prompts(self):
        return [self.render(label) for label in self.labels]

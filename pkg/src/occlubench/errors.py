"""Exception hierarchy. ``exit_code`` drives the CLI process exit status:
1 for validation/coverage problems, 2 for I/O problems."""


class OcclubenchError(Exception):
    exit_code = 1


class InvalidSpecError(OcclubenchError):
    """An occlusion spec violates its invariants."""


class InvalidConfigError(OcclubenchError):
    """A sweep/CLI configuration violates its invariants."""


class DimensionMismatchError(OcclubenchError):
    """Image and mask dimensions disagree."""


class FormatPolicyError(OcclubenchError):
    """A lossy output format was requested for an occluded artifact."""


class ImageReadError(OcclubenchError):
    """The input file is missing or unreadable."""

    exit_code = 2


class ImageDecodeError(OcclubenchError):
    """The input file exists but cannot be decoded."""

    exit_code = 2


class ImageWriteError(OcclubenchError):
    """The output file cannot be written."""

    exit_code = 2


class EmptyInputError(OcclubenchError):
    """An operation that needs at least one record got none."""


class MissingLevelError(OcclubenchError):
    """One or more expected occlusion levels have no predictions."""

    def __init__(self, kind, levels):
        self.kind = kind
        self.levels = list(levels)
        super().__init__(f"kind {kind!r}: no predictions for levels {self.levels}")


class CurveSpacingError(OcclubenchError):
    """Occlusion levels are not uniformly spaced starting at 0."""


class ZeroBaselineError(OcclubenchError):
    """Clean accuracy is zero; the normalized curve area is undefined."""


class DegenerateCurveError(OcclubenchError):
    """A robustness curve needs at least two levels."""


class CoverageError(OcclubenchError):
    """Predictions do not cover every manifest entry."""

    def __init__(self, missing_cells):
        self.missing_cells = sorted(missing_cells)
        preview = ", ".join(f"{k}@{lv}" for k, lv in self.missing_cells[:10])
        more = "" if len(self.missing_cells) <= 10 else f" (+{len(self.missing_cells) - 10} more)"
        super().__init__(f"predictions missing for cells: {preview}{more}")


class UnknownImageError(OcclubenchError):
    """A prediction references an image id absent from the manifest."""


class InsufficientImagesError(OcclubenchError):
    """A class directory has fewer images than the split protocol needs."""

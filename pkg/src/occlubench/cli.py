"""Command line interface.

Exit codes: 0 success, 1 validation/coverage error, 2 I/O error.
"""

import json
import sys
from pathlib import Path

import click

from occlubench import harness
from occlubench.errors import InvalidConfigError, OcclubenchError
from occlubench.masks import OcclusionKind


def _parse_kinds(text: str):
    return [OcclusionKind.from_name(part) for part in text.split(",") if part.strip()]


def _parse_levels(text: str):
    try:
        start, stop, step = (int(v) for v in text.split(":"))
    except ValueError:
        raise InvalidConfigError(
            f"levels must look like start:stop:step, got {text!r}"
        ) from None
    if step <= 0:
        raise InvalidConfigError("levels step must be positive")
    return list(range(start, stop + 1, step))


def _parse_fill(text: str):
    try:
        r, g, b = (int(v) for v in text.split(","))
    except ValueError:
        raise InvalidConfigError(f"fill must look like R,G,B, got {text!r}") from None
    if any(not 0 <= v <= 255 for v in (r, g, b)):
        raise InvalidConfigError("fill channels must be in [0, 255]")
    return (r, g, b)


@click.group()
def cli():
    """Occlusion robustness benchmarking: exact-coverage sweeps and NAUC
    scoring."""


@cli.command("generate")
@click.option("--input", "input_dir", required=True, type=click.Path(), help="Dataset root, laid out as <class>/<image>.{png,jpg}.")
@click.option("--output", "output_dir", required=True, type=click.Path(), help="Output tree root; also receives manifest.jsonl.")
@click.option("--kinds", default="snow,rain,slide,bars,grid", show_default=True, help="Comma-separated occlusion kinds.")
@click.option("--levels", default="0:100:5", show_default=True, help="Occlusion percents as start:stop:step.")
@click.option("--size", default=224, show_default=True, help="Evaluation resolution (square).")
@click.option("--seed", default=42, show_default=True, help="Master seed.")
@click.option("--fill", default="128,128,128", show_default=True, help="Occlusion fill color R,G,B.")
def generate_cmd(input_dir, output_dir, kinds, levels, size, seed, fill):
    """Generate the occluded sweep and its manifest."""
    config = harness.SweepConfig(
        input_dir=Path(input_dir),
        output_dir=Path(output_dir),
        kinds=_parse_kinds(kinds),
        levels=_parse_levels(levels),
        resolution=size,
        master_seed=seed,
        fill=_parse_fill(fill),
    )
    entries, warnings, manifest_path = harness.generate_sweep(config)
    for warning in warnings:
        click.echo(f"warning: skipped {warning['source_path']}: {warning['message']}", err=True)
    click.echo(f"wrote {len(entries)} artifacts; manifest at {manifest_path}")


@cli.command("split")
@click.option("--input", "input_dir", required=True, type=click.Path())
@click.option("--seed", default=42, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def split_cmd(input_dir, seed, out_path):
    """Assign images to train/val/test (16/4/rest per class)."""
    assignment = harness.split_dataset(input_dir, seed)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(
        json.dumps({"seed": seed, "assignments": assignment}, indent=2) + "\n",
        encoding="utf-8",
    )
    counts = {}
    for split in assignment.values():
        counts[split] = counts.get(split, 0) + 1
    click.echo(f"wrote {out_path}: " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))


@cli.command("evaluate")
@click.option("--manifest", "manifest_path", required=True, type=click.Path())
@click.option("--predictions", "predictions_path", required=True, type=click.Path())
@click.option("--model-id", required=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def evaluate_cmd(manifest_path, predictions_path, model_id, out_path):
    """Score predictions against a manifest and write the report JSON."""
    report = harness.evaluate(manifest_path, predictions_path, model_id)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")
    for kind, res in report.kinds.items():
        click.echo(f"{kind}: A0={res.a0:.3f} NAUC={res.nauc:.3f}")
    click.echo(f"average NAUC: {report.average_nauc:.3f}")
    click.echo(f"report written to {out_path}")


@cli.command("report")
@click.option("--in", "in_path", required=True, type=click.Path())
@click.option("--format", "fmt", required=True, type=click.Choice(["md", "csv"]))
def report_cmd(in_path, fmt):
    """Render a report JSON as a markdown table or long-form CSV."""
    in_path = Path(in_path)
    if not in_path.exists():
        raise OcclubenchError(f"no such report: {in_path}")
    try:
        from occlubench.metrics import RobustnessReport

        report = RobustnessReport.from_dict(json.loads(in_path.read_text(encoding="utf-8")))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InvalidConfigError(f"malformed report JSON: {exc}") from exc
    click.echo(harness.render_report(report, fmt), nl=False)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1
    except OcclubenchError as exc:
        click.echo(f"error: {exc}", err=True)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())

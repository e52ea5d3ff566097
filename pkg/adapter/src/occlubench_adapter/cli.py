"""occlubench-adapter command line entry point."""

import sys
from pathlib import Path

import click

from occlubench_adapter.errors import AdapterError
from occlubench_adapter.predict import predict_to_csv
from occlubench_adapter.prompts import DEFAULT_TEMPLATE, PromptTemplate


@click.command()
@click.option("--manifest", "manifest_path", required=True, type=click.Path(), help="Sweep manifest (JSON Lines).")
@click.option("--model", "model_id", required=True, help="Model id (a CLIP checkpoint, or 'colorname' for the offline reference backend).")
@click.option("--labels", "labels_path", required=True, type=click.Path(), help="Text file with one class label per line.")
@click.option("--template", default=DEFAULT_TEMPLATE, show_default=True, help="Prompt template with a {label} placeholder.")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Predictions CSV output path.")
@click.option("--batch-size", default=64, show_default=True)
def cli(manifest_path, model_id, labels_path, template, out_path, batch_size):
    """Run zero-shot classification over a sweep manifest and emit the
    predictions CSV consumed by `occlubench evaluate`."""
    labels_path = Path(labels_path)
    if not labels_path.exists():
        raise AdapterError(f"no such labels file: {labels_path}")
    labels = tuple(
        line.strip() for line in labels_path.read_text(encoding="utf-8").splitlines()
        if line.strip()
    )
    prompt = PromptTemplate(template=template, labels=labels)
    n = predict_to_csv(manifest_path, model_id, prompt, out_path, batch_size)
    click.echo(f"wrote {n} predictions to {out_path}")


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
    except AdapterError as exc:
        click.echo(f"error: {exc}", err=True)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())

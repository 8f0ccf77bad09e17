"""Shared command-line handling for the demo scripts."""

import argparse
from pathlib import Path


def output_dir(description: str) -> Path:
    p = argparse.ArgumentParser(description=description)
    p.add_argument("--out", default=str(Path(__file__).resolve().parent / "out"),
                   help="directory for the SVG files (default: demos/out)")
    out = Path(p.parse_args().out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def saved(canvas, path: Path) -> None:
    canvas.save(path)
    print(f"  wrote {path} ({canvas.paths} paths, {canvas.markers} markers)")

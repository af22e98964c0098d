#!/usr/bin/env python3
"""Regenerate the golden SVGs under tests/golden/.

The goldens pin the canonical rendering style; rerun this script only when a
deliberate style change is made, and review the diffs.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from polarview.datasets import DatasetRegistry  # noqa: E402
from polarview.geometry import DiagramKind  # noqa: E402
from polarview.svg import render  # noqa: E402
from polarview.views import apply_radial_brush, build_views, small_multiples  # noqa: E402

GOLDEN_DIR = ROOT / "tests" / "golden"


def main() -> None:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    registry = DatasetRegistry(ROOT / "src" / "polarview" / "data")

    wine = registry.get("wine-samples").dataset
    bundle = build_views(wine, DiagramKind.SMI)
    brushed = apply_radial_brush(bundle, 0.25 * bundle.radial_max, 0.75 * bundle.radial_max)

    gp = registry.get("gp-sine-predictions").versioned
    grid = small_multiples(gp, DiagramKind.TAYLOR)

    outputs = {
        "wine_overview_smi.svg": render(bundle.overview()),
        "wine_detail_brushed_smi.svg": render(brushed.detail()),
        "wine_linking_smi.svg": render(bundle.linking()),
        "gp_grid_taylor.svg": render(grid),
    }
    for name, body in outputs.items():
        (GOLDEN_DIR / name).write_bytes(body)
        print(f"wrote tests/golden/{name} ({len(body)} bytes)")


if __name__ == "__main__":
    main()

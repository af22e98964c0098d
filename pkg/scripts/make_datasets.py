#!/usr/bin/env python3
"""Regenerate the bundled example datasets (deterministic, seeded).

The repository ships the frozen CSV outputs of this script; tests and the
service read those files, never this script. All three datasets are synthetic
stand-ins generated here so the repository carries no third-party data:

* climate_air_temperature.csv -- monthly near-surface air temperature for one
  observation series and seven named climate-model series. The models
  underestimate the seasonal amplitude and differ in phase and noise.
* wine_table.csv -- a wine-quality style table (11 numeric properties plus a
  quality stratum column). wine_samples.csv freezes the stratified sample of
  19 wines plus the per-property median reference used by the examples and
  the acceptance suite (exactly six clusters under the default config).
* gp_predictions.csv -- sine-regression predictions of four Gaussian-process
  variants over seven (sigma_f, sigma_l) hyper-parameter versions, long
  format with a version column.

Run from the repository root:  python3 scripts/make_datasets.py
"""

from __future__ import annotations

import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from polarview.clustering import ClusteringConfig  # noqa: E402
from polarview.datasets import dataset_to_csv, load_table, stratified_sample  # noqa: E402
from polarview.geometry import DiagramKind  # noqa: E402
from polarview.views import build_views  # noqa: E402

DATA_DIR = ROOT / "src" / "polarview" / "data"

WINE_GENERATION_SEED = 6
WINE_SAMPLE_SEED = 7
WINE_PER_STRATUM = 4

CLIMATE_MODELS = (
    "CanESM2",
    "CNRM-CM5",
    "GFDL-CM3",
    "GISS-E2-R",
    "HadGEM2-ES",
    "MIROC5",
    "MPI-ESM-LR",
)

WINE_FEATURES = (
    "fixed_acidity",
    "volatile_acidity",
    "citric_acid",
    "residual_sugar",
    "chlorides",
    "free_sulfur_dioxide",
    "total_sulfur_dioxide",
    "density",
    "pH",
    "sulphates",
    "alcohol",
)

# rows per quality stratum; 4 per stratum then samples 2+3+4+4+4+2 = 19 wines
WINE_STRATA = {"3": 2, "4": 3, "5": 30, "6": 30, "7": 20, "8": 2}

GP_VERSIONS = (
    ("v1", 0.2, 0.2),
    ("v2", 0.2, 0.5),
    ("v3", 0.2, 1.0),
    ("v4", 0.5, 0.2),
    ("v5", 0.5, 0.5),
    ("v6", 1.0, 0.5),
    ("v7", 1.0, 1.0),
)


def write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path.relative_to(ROOT)} ({len(rows)} rows)")


def make_climate() -> None:
    rng = np.random.Generator(np.random.Philox(key=2024))
    months = 36
    t = np.arange(months)
    season = np.cos(2.0 * math.pi * (t - 6.5) / 12.0)
    observation = 11.5 + 9.0 * season + rng.normal(0.0, 0.6, months)
    rows = []
    series = {"observation": observation}
    # amplitude factor < 1 for every model: the seasonal cycle is damped
    parameters = [
        ("CanESM2", 0.55, 1.6, 1.4),
        ("CNRM-CM5", 0.88, 0.1, 0.5),
        ("GFDL-CM3", 0.72, 0.9, 1.0),
        ("GISS-E2-R", 0.90, 0.05, 0.45),
        ("HadGEM2-ES", 0.66, 1.2, 1.1),
        ("MIROC5", 0.75, 0.7, 0.9),
        ("MPI-ESM-LR", 0.80, 0.4, 0.7),
    ]
    for name, amplitude, phase, noise in parameters:
        shifted = np.cos(2.0 * math.pi * (t - 6.5 - phase) / 12.0)
        series[name] = 11.5 + 9.0 * amplitude * shifted + rng.normal(0.0, noise, months)
    header = ["observation", *CLIMATE_MODELS]
    for i in range(months):
        rows.append([round(float(series[name][i]), 6) for name in header])
    write_csv(DATA_DIR / "climate_air_temperature.csv", header, rows)


def make_wine(generation_seed: int) -> None:
    rng = np.random.Generator(np.random.Philox(key=generation_seed))
    base = {
        "fixed_acidity": (8.3, 1.6),
        "volatile_acidity": (0.53, 0.18),
        "citric_acid": (0.27, 0.19),
        "residual_sugar": (2.5, 1.3),
        "chlorides": (0.087, 0.045),
        "free_sulfur_dioxide": (15.9, 10.4),
        "total_sulfur_dioxide": (46.5, 32.9),
        "density": (0.9967, 0.0019),
        "pH": (3.31, 0.15),
        "sulphates": (0.66, 0.17),
        "alcohol": (10.4, 1.07),
    }
    # quality shifts a few properties so strata are not interchangeable
    quality_effect = {
        "3": (-1.2, 0.28, -0.9), "4": (-0.6, 0.14, -0.5), "5": (0.0, 0.0, 0.0),
        "6": (0.3, -0.06, 0.4), "7": (0.8, -0.12, 0.9), "8": (1.4, -0.2, 1.5),
    }
    rows = []
    for quality in sorted(WINE_STRATA):
        count = WINE_STRATA[quality]
        alco_shift, vola_shift, acid_shift = quality_effect[quality]
        for _ in range(count):
            row = []
            for feature in WINE_FEATURES:
                mean, sd = base[feature]
                value = rng.normal(mean, sd)
                if feature == "alcohol":
                    value += alco_shift
                elif feature == "volatile_acidity":
                    value += vola_shift
                elif feature == "fixed_acidity":
                    value += acid_shift
                value = max(value, 0.001)
                row.append(round(float(value), 6))
            rows.append(row + [quality])
    write_csv(DATA_DIR / "wine_table.csv", list(WINE_FEATURES) + ["quality"], rows)


def freeze_wine_subset() -> int:
    table = load_table((DATA_DIR / "wine_table.csv").read_bytes())
    dataset, _ = stratified_sample(
        table, "quality", WINE_PER_STRATUM, WINE_SAMPLE_SEED, id="wine-samples"
    )
    (DATA_DIR / "wine_samples.csv").write_text(dataset_to_csv(dataset))
    bundle = build_views(dataset, DiagramKind.SMI, ClusteringConfig())
    print(
        f"wrote src/polarview/data/wine_samples.csv "
        f"({len(dataset.models())} samples, {len(bundle.clusters)} clusters)"
    )
    return len(bundle.clusters)


def gp_posterior_mean(
    x_train: np.ndarray, y_train: np.ndarray, x_test: np.ndarray,
    sigma_f: float, sigma_l: float, noise: float = 0.1,
) -> np.ndarray:
    def kernel(a, b):
        return sigma_f**2 * np.exp(-((a[:, None] - b[None, :]) ** 2) / (2.0 * sigma_l**2))

    k_tt = kernel(x_train, x_train) + noise**2 * np.eye(len(x_train))
    k_st = kernel(x_test, x_train)
    return k_st @ np.linalg.solve(k_tt, y_train)


def make_gp() -> None:
    rng = np.random.Generator(np.random.Philox(key=99))
    x_train = np.sort(rng.uniform(0.0, 2.0 * math.pi, 48))
    y_train = np.sin(x_train) + rng.normal(0.0, 0.1, len(x_train))
    x_test = np.linspace(0.0, 2.0 * math.pi, 60)
    truth = np.sin(x_test)

    header = ["version", "changed_params", "truth", "GP", "BCM", "MoE", "rBCM"]
    rows = []
    for label, sigma_f, sigma_l in GP_VERSIONS:
        full = gp_posterior_mean(x_train, y_train, x_test, sigma_f, sigma_l)
        halves = [
            gp_posterior_mean(x_train[:24], y_train[:24], x_test, sigma_f, sigma_l),
            gp_posterior_mean(x_train[24:], y_train[24:], x_test, sigma_f, sigma_l),
        ]
        interleaved = [
            gp_posterior_mean(x_train[0::2], y_train[0::2], x_test, sigma_f, sigma_l),
            gp_posterior_mean(x_train[1::2], y_train[1::2], x_test, sigma_f, sigma_l),
        ]
        bcm = 0.5 * (halves[0] + halves[1])
        moe = np.where(x_test < math.pi, halves[0], halves[1])
        rbcm = 0.5 * (interleaved[0] + interleaved[1])
        params = f"sigma_f={sigma_f} sigma_l={sigma_l}"
        for i in range(len(x_test)):
            rows.append(
                [
                    label,
                    params,
                    round(float(truth[i]), 6),
                    round(float(full[i]), 6),
                    round(float(bcm[i]), 6),
                    round(float(moe[i]), 6),
                    round(float(rbcm[i]), 6),
                ]
            )
    write_csv(DATA_DIR / "gp_predictions.csv", header, rows)


def write_manifest() -> None:
    manifest = [
        {
            "id": "climate-air-temperature",
            "title": "Air temperature: seven climate models vs observation",
            "path": "climate_air_temperature.csv",
            "reference_column": "observation",
            "provenance": "synthetic stand-in generated by scripts/make_datasets.py "
            "(seeded Philox); monthly series, damped model amplitudes",
        },
        {
            "id": "wine-samples",
            "title": "Nineteen stratified wine samples vs median wine",
            "path": "wine_samples.csv",
            "reference_column": "median",
            "provenance": "frozen stratified sample of wine_table.csv "
            f"(quality strata, {WINE_PER_STRATUM} per stratum, seed {WINE_SAMPLE_SEED})",
        },
        {
            "id": "gp-sine-predictions",
            "title": "Gaussian-process sine regression, seven hyper-parameter versions",
            "path": "gp_predictions.csv",
            "reference_column": "truth",
            "version_column": "version",
            "provenance": "synthetic GP posterior means generated by "
            "scripts/make_datasets.py (seeded Philox)",
        },
    ]
    path = DATA_DIR / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {path.relative_to(ROOT)}")


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    make_climate()
    make_wine(WINE_GENERATION_SEED)
    clusters = freeze_wine_subset()
    make_gp()
    write_manifest()
    if clusters != 6:
        print(f"WARNING: wine subset yields {clusters} clusters, expected 6")


if __name__ == "__main__":
    main()

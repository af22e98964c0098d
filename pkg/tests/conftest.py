from __future__ import annotations

from pathlib import Path

import pytest

from polarview.datasets import DatasetRegistry, load_csv

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "polarview" / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def registry() -> DatasetRegistry:
    return DatasetRegistry(DATA_DIR)


@pytest.fixture(scope="session")
def wine_dataset():
    return load_csv(
        (DATA_DIR / "wine_samples.csv").read_bytes(), "median", id="wine-samples"
    )


@pytest.fixture(scope="session")
def climate_dataset():
    return load_csv(
        (DATA_DIR / "climate_air_temperature.csv").read_bytes(),
        "observation",
        id="climate-air-temperature",
    )

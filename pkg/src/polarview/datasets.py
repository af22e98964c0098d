"""Tabular ingestion, versioned datasets, stratified sampling, and the bundled data registry.

CSV handling targets the RFC 4180 subset: comma separator, optional quoting,
LF or CRLF line endings, one header row, numeric cells below it.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import (
    DuplicateHeaderError,
    InconsistentModelsError,
    InvariantError,
    MissingReferenceError,
    ParseError,
    TooManyModelsError,
    UnknownColumnError,
    UnknownDatasetError,
)
from .metrics import SampleVector
from .views import MODEL_CAP

#: Environment variable naming the directory with manifest.json and CSVs.
DATA_DIR_ENV = "POLARS_DATA_DIR"

#: Optional metadata column in versioned CSVs: constant per version group,
#: excluded from the model columns, surfaced as the grid-cell annotation.
CHANGED_PARAMS_COLUMN = "changed_params"


@dataclass(frozen=True)
class Dataset:
    """A reference series plus up to twenty model series of equal length."""

    id: str
    title: str
    reference_name: str
    vectors: tuple[SampleVector, ...]
    provenance: str = ""
    dropped_rows: tuple[int, ...] = ()

    def __post_init__(self):
        names = [v.name for v in self.vectors]
        if len(set(names)) != len(names):
            raise DuplicateHeaderError(f"dataset {self.id!r} has duplicate series names")
        if names.count(self.reference_name) != 1:
            raise MissingReferenceError(
                f"reference column {self.reference_name!r} not found in dataset {self.id!r}"
            )
        lengths = {len(v) for v in self.vectors}
        if len(lengths) > 1:
            raise InvariantError(f"dataset {self.id!r} has unequal series lengths")
        if len(self.vectors) - 1 > MODEL_CAP:
            raise TooManyModelsError(
                f"dataset {self.id!r} has {len(self.vectors) - 1} models; cap is {MODEL_CAP}"
            )

    def reference(self) -> SampleVector:
        return next(v for v in self.vectors if v.name == self.reference_name)

    def models(self) -> list[SampleVector]:
        return [v for v in self.vectors if v.name != self.reference_name]

    def model_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.models())


@dataclass(frozen=True)
class DatasetVersion:
    label: str
    changed_params: str
    dataset: Dataset


@dataclass(frozen=True)
class VersionedDataset:
    """Ordered versions of the same model set, e.g. hyper-parameter sweeps."""

    id: str
    title: str
    versions: tuple[DatasetVersion, ...]
    provenance: str = ""

    def __post_init__(self):
        if not self.versions:
            raise InvariantError(f"versioned dataset {self.id!r} has no versions")
        first = self.versions[0].dataset
        for version in self.versions[1:]:
            if version.dataset.model_names() != first.model_names():
                raise InconsistentModelsError(
                    f"version {version.label!r} has a different model set"
                )
            if version.dataset.reference_name != first.reference_name:
                raise InconsistentModelsError(
                    f"version {version.label!r} has a different reference column"
                )

    def model_names(self) -> tuple[str, ...]:
        return self.versions[0].dataset.model_names()


def _read_rows(data: bytes | str) -> list[list[str]]:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    return [row for row in csv.reader(io.StringIO(text)) if row]


def _parse_header(rows: list[list[str]]) -> list[str]:
    if not rows:
        raise ParseError("empty CSV", row=0)
    header = [h.strip() for h in rows[0]]
    if len(set(header)) != len(header):
        seen = {h for h in header if header.count(h) > 1}
        raise DuplicateHeaderError(f"duplicate header(s): {sorted(seen)}")
    return header


def _parse_cells(
    rows: list[list[str]], header: list[str]
) -> tuple[list[list[float]], list[int]]:
    """Parse all data cells; drop rows holding non-finite values.

    Returns (kept rows, dropped row indices). Row indices are 0-based over
    data rows (the header is not counted). Unparseable cells raise.
    """
    parsed: list[list[float]] = []
    dropped: list[int] = []
    for i, row in enumerate(rows[1:]):
        if len(row) != len(header):
            raise ParseError(
                f"row {i} has {len(row)} cells, expected {len(header)}", row=i
            )
        values = []
        for name, cell in zip(header, row):
            try:
                values.append(float(cell))
            except ValueError:
                raise ParseError(
                    f"row {i}, column {name!r}: cannot parse {cell!r}", row=i, col=name
                ) from None
        if all(math.isfinite(v) for v in values):
            parsed.append(values)
        else:
            dropped.append(i)
    return parsed, dropped


def load_csv(
    data: bytes | str,
    reference_column: str,
    *,
    id: str = "dataset",
    title: str = "",
    provenance: str = "",
) -> Dataset:
    """One SampleVector per column; the named column becomes the reference."""
    rows = _read_rows(data)
    header = _parse_header(rows)
    if reference_column not in header:
        raise MissingReferenceError(f"no column named {reference_column!r}")
    parsed, dropped = _parse_cells(rows, header)
    vectors = tuple(
        SampleVector(name=name, values=tuple(row[col] for row in parsed))
        for col, name in enumerate(header)
    )
    return Dataset(
        id=id,
        title=title or id,
        reference_name=reference_column,
        vectors=vectors,
        provenance=provenance,
        dropped_rows=tuple(dropped),
    )


def load_versioned_csv(
    data: bytes | str,
    reference_column: str,
    version_column: str,
    *,
    id: str = "dataset",
    title: str = "",
    provenance: str = "",
) -> VersionedDataset:
    """Group long-format rows by version label, in first-appearance order."""
    rows = _read_rows(data)
    header = _parse_header(rows)
    if version_column not in header:
        raise UnknownColumnError(f"no version column named {version_column!r}")
    if reference_column not in header:
        raise MissingReferenceError(f"no column named {reference_column!r}")

    version_idx = header.index(version_column)
    params_idx = header.index(CHANGED_PARAMS_COLUMN) if CHANGED_PARAMS_COLUMN in header else None
    meta_cols = {version_idx} | ({params_idx} if params_idx is not None else set())
    value_header = [h for i, h in enumerate(header) if i not in meta_cols]

    groups: dict[str, list[list[str]]] = {}
    params: dict[str, str] = {}
    order: list[str] = []
    for row in rows[1:]:
        if len(row) != len(header):
            raise ParseError(f"row has {len(row)} cells, expected {len(header)}")
        label = row[version_idx].strip()
        if label not in groups:
            groups[label] = []
            order.append(label)
            params[label] = row[params_idx].strip() if params_idx is not None else ""
        groups[label].append([c for i, c in enumerate(row) if i not in meta_cols])

    versions = []
    for label in order:
        body = "\n".join(
            [",".join(value_header)]
            + [",".join(cells) for cells in groups[label]]
        )
        dataset = load_csv(
            body,
            reference_column,
            id=f"{id}:{label}",
            title=title or id,
            provenance=provenance,
        )
        versions.append(
            DatasetVersion(label=label, changed_params=params[label], dataset=dataset)
        )
    return VersionedDataset(
        id=id, title=title or id, versions=tuple(versions), provenance=provenance
    )


@dataclass(frozen=True)
class Table:
    """A plain labeled table used as sampling input (rows keep file order)."""

    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def column(self, name: str) -> list[str]:
        if name not in self.columns:
            raise UnknownColumnError(f"no column named {name!r}")
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]


def load_table(data: bytes | str) -> Table:
    rows = _read_rows(data)
    header = _parse_header(rows)
    for row in rows[1:]:
        if len(row) != len(header):
            raise ParseError(f"row has {len(row)} cells, expected {len(header)}")
    return Table(columns=tuple(header), rows=tuple(tuple(r) for r in rows[1:]))


def stratified_sample(
    table: Table,
    strata_column: str,
    per_stratum: int,
    seed: int,
    *,
    id: str = "sampled",
    title: str = "",
) -> tuple[Dataset, SampleVector]:
    """Draw per_stratum rows from each stratum with a Philox counter-based RNG.

    Each sampled row becomes one series over the numeric feature columns; the
    reference is the per-feature median over the full table. Strata smaller
    than per_stratum contribute all their rows. Identical seeds reproduce the
    sample byte for byte.
    """
    if per_stratum < 1:
        raise InvariantError("per_stratum must be >= 1")
    labels = table.column(strata_column)
    feature_cols = [c for c in table.columns if c != strata_column]
    if not feature_cols:
        raise UnknownColumnError("no feature columns besides the strata column")

    matrix = []
    for i, row in enumerate(table.rows):
        values = []
        for name in feature_cols:
            cell = row[table.columns.index(name)]
            try:
                values.append(float(cell))
            except ValueError:
                raise ParseError(
                    f"row {i}, column {name!r}: cannot parse {cell!r}", row=i, col=name
                ) from None
        matrix.append(values)

    strata: dict[str, list[int]] = {}
    for i, label in enumerate(labels):
        strata.setdefault(label, []).append(i)

    rng = np.random.Generator(np.random.Philox(key=abs(int(seed))))
    chosen: list[int] = []
    for label in sorted(strata):
        members = strata[label]
        take = min(per_stratum, len(members))
        picked = rng.choice(len(members), size=take, replace=False)
        chosen.extend(members[i] for i in sorted(int(p) for p in picked))
    chosen.sort()

    medians = np.median(np.asarray(matrix, dtype=float), axis=0)
    median_vector = SampleVector(name="median", values=tuple(float(v) for v in medians))
    samples = [
        SampleVector(name=f"row{i:03d}-{labels[i]}", values=tuple(matrix[i]))
        for i in chosen
    ]
    dataset = Dataset(
        id=id,
        title=title or id,
        reference_name="median",
        vectors=(median_vector, *samples),
        provenance=f"stratified sample: {per_stratum} per {strata_column!r}, seed {seed}",
    )
    return dataset, median_vector


def dataset_to_csv(dataset: Dataset) -> str:
    """Wide-format CSV: one column per series, reference first."""
    vectors = [dataset.reference()] + dataset.models()
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([v.name for v in vectors])
    for i in range(len(vectors[0])):
        writer.writerow([repr(v.values[i]) for v in vectors])
    return out.getvalue()


@dataclass(frozen=True)
class ManifestEntry:
    id: str
    title: str
    path: str
    reference_column: str
    version_column: str | None = None
    provenance: str = ""


def default_data_dir() -> Path:
    env = os.environ.get(DATA_DIR_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("polarview") / "data"))


def load_manifest(data_dir: Path) -> list[ManifestEntry]:
    manifest_path = data_dir / "manifest.json"
    if not manifest_path.exists():
        return []
    entries = json.loads(manifest_path.read_text("utf-8"))
    return [
        ManifestEntry(
            id=e["id"],
            title=e.get("title", e["id"]),
            path=e["path"],
            reference_column=e["reference_column"],
            version_column=e.get("version_column"),
            provenance=e.get("provenance", ""),
        )
        for e in entries
    ]


@dataclass
class RegistryRecord:
    entry: ManifestEntry
    dataset: Dataset | None = None
    versioned: VersionedDataset | None = None
    error: str | None = None
    error_code: str | None = None

    @property
    def available(self) -> bool:
        return self.error is None

    @property
    def model_count(self) -> int:
        if self.dataset is not None:
            return len(self.dataset.models())
        if self.versioned is not None:
            return len(self.versioned.model_names())
        return 0


class DatasetRegistry:
    """Immutable after construction: loaded once, then shared read-only."""

    def __init__(self, data_dir: Path | None = None):
        self.data_dir = data_dir or default_data_dir()
        self.records: dict[str, RegistryRecord] = {}
        for entry in load_manifest(self.data_dir):
            self.records[entry.id] = self._load(entry)

    def _load(self, entry: ManifestEntry) -> RegistryRecord:
        record = RegistryRecord(entry=entry)
        path = self.data_dir / entry.path
        try:
            data = path.read_bytes()
        except OSError as exc:
            record.error = f"cannot read {entry.path}: {exc}"
            record.error_code = "unavailable"
            return record
        try:
            if entry.version_column:
                record.versioned = load_versioned_csv(
                    data,
                    entry.reference_column,
                    entry.version_column,
                    id=entry.id,
                    title=entry.title,
                    provenance=entry.provenance,
                )
            else:
                record.dataset = load_csv(
                    data,
                    entry.reference_column,
                    id=entry.id,
                    title=entry.title,
                    provenance=entry.provenance,
                )
        except TooManyModelsError as exc:
            record.error = str(exc)
            record.error_code = TooManyModelsError.code
        except Exception as exc:  # broken files must not take down the others
            record.error = str(exc)
            record.error_code = "unavailable"
        return record

    def list_records(self) -> list[RegistryRecord]:
        return list(self.records.values())

    def get(self, dataset_id: str) -> RegistryRecord:
        if dataset_id not in self.records:
            raise UnknownDatasetError(f"no dataset with id {dataset_id!r}")
        return self.records[dataset_id]

import math
from dataclasses import replace

import numpy as np
import pytest

from polarview.datasets import Dataset, DatasetVersion, VersionedDataset
from polarview.errors import (
    InvalidIntervalError,
    InvalidRectError,
    ModelCapExceededError,
    TooFewModelsError,
    TooFewVersionsError,
    UnknownModelIdError,
    VersionMismatchError,
)
from polarview.geometry import DiagramKind
from polarview.metrics import SampleVector
from polarview.serialize import bundle_payload, canonical_json
from polarview.views import (
    DETAIL_PLOT_RADIUS_PX,
    LegendAction,
    LegendActionKind,
    WarningCode,
    apply_legend_action,
    apply_radial_brush,
    apply_rect_brush,
    build_views,
    detect_occlusion,
    linking_values,
    small_multiples,
)


def make_dataset(series: dict[str, list[float]], reference: str = "ref", id="d") -> Dataset:
    vectors = tuple(SampleVector(name, tuple(values)) for name, values in series.items())
    return Dataset(id=id, title=id, reference_name=reference, vectors=vectors)


def random_dataset(rng, n_models=8, n=40) -> Dataset:
    series = {"ref": list(rng.normal(0, 1.5, n))}
    for i in range(n_models):
        series[f"m{i:02d}"] = list(
            np.asarray(series["ref"]) * rng.uniform(0.2, 1.5) + rng.normal(0, 1, n)
        )
    return make_dataset(series)


def versioned(n_versions: int, rng=None) -> VersionedDataset:
    rng = rng or np.random.default_rng(3)
    versions = []
    for v in range(n_versions):
        series = {"ref": list(rng.normal(0, 1, 30))}
        for name in ("alpha", "beta"):
            series[name] = list(np.asarray(series["ref"]) + rng.normal(0, 0.5 + 0.1 * v, 30))
        versions.append(
            DatasetVersion(
                label=f"v{v + 1}",
                changed_params=f"step={v + 1}",
                dataset=make_dataset(series, id=f"d:v{v + 1}"),
            )
        )
    return VersionedDataset(id="d", title="d", versions=tuple(versions))


# ----------------------------------------------------------------- build_views


def test_wine_bundle_reproduces_six_clusters(wine_dataset):
    bundle = build_views(wine_dataset, DiagramKind.SMI)
    assert len(bundle.clusters) == 6
    assert len(bundle.detail().points) == 19
    assert len(bundle.overview().clusters) == 6


def test_model_cap_is_enforced():
    series = {"ref": [1.0, 2.0, 3.0, 4.0]}
    for i in range(21):
        series[f"m{i}"] = [1.0 + i, 2.0, 3.0 - i, 4.0]
    with pytest.raises(Exception):
        # 21 models cannot even be represented as a Dataset
        make_dataset(series)

    dataset = make_dataset({k: v for k, v in list(series.items())[:21]})
    assert len(dataset.models()) == 20
    object.__setattr__(dataset, "vectors", tuple(
        SampleVector(name, tuple(values)) for name, values in series.items()
    ))
    with pytest.raises(ModelCapExceededError):
        build_views(dataset, DiagramKind.TAYLOR)


def test_too_few_models():
    dataset = make_dataset({"ref": [1.0, 2.0, 3.0]})
    with pytest.raises(TooFewModelsError):
        build_views(dataset, DiagramKind.TAYLOR)


def test_single_identical_model_sits_on_reference():
    values = [0.5, 1.5, 0.25, 2.5, 1.0, 3.0]
    dataset = make_dataset({"ref": values, "twin": list(values)})
    for kind in DiagramKind:
        bundle = build_views(dataset, kind)
        detail = bundle.detail()
        assert len(detail.points) == 1
        point = detail.points[0]
        assert point.distance_to(bundle.reference) == pytest.approx(0.0, abs=1e-12)
        first, similarity, distance = linking_values(kind, point.metrics)
        assert similarity == pytest.approx(1.0)
        assert distance == pytest.approx(0.0, abs=1e-12)


def test_taylor_theta_max_flips_with_negative_correlation():
    values = [1.0, 2.0, 3.0, 4.0, 5.0, 4.0]
    positive = make_dataset({"ref": values, "m": [v * 1.1 + 0.2 for v in values]})
    assert build_views(positive, DiagramKind.TAYLOR).theta_max == pytest.approx(math.pi / 2)
    negative = make_dataset({"ref": values, "m": [-v for v in values]})
    assert build_views(negative, DiagramKind.TAYLOR).theta_max == pytest.approx(math.pi)


def test_model_cap_warning_at_exactly_twenty():
    series = {"ref": [1.0, 2.0, 3.0, 4.0]}
    for i in range(20):
        series[f"m{i:02d}"] = [1.0 + 0.3 * i, 2.1, 3.2 - 0.2 * i, 3.9]
    bundle = build_views(make_dataset(series), DiagramKind.TAYLOR)
    assert any(w.code is WarningCode.MODEL_CAP for w in bundle.static_warnings)


def test_degenerate_entropy_warning():
    dataset = make_dataset({"ref": [1.0, 2.0, 3.0, 4.0], "flat": [2.0, 2.0, 2.0, 2.0]})
    bundle = build_views(dataset, DiagramKind.SMI)
    degenerate = [w for w in bundle.static_warnings if w.code is WarningCode.DEGENERATE_ENTROPY]
    assert degenerate and degenerate[0].affected_ids == ("flat",)


# ---------------------------------------------------------------- radial brush


def test_full_range_brush_keeps_all_models(wine_dataset):
    bundle = build_views(wine_dataset, DiagramKind.SMI)
    brushed = apply_radial_brush(bundle, 0.0, bundle.radial_max)
    assert brushed.detail_points() == bundle.detail_points()
    assert brushed.selection == frozenset(bundle.model_ids)


def test_point_interval_brush_keeps_exactly_one_model():
    dataset = make_dataset(
        {
            "ref": [1.0, 2.0, 3.0, 4.0, 5.0],
            "a": [1.1, 2.1, 3.1, 4.1, 5.1],
            "b": [2.0, 4.0, 6.0, 8.0, 10.0],
        }
    )
    bundle = build_views(dataset, DiagramKind.TAYLOR)
    target = next(p for p in bundle.all_points if p.model_id == "a")
    brushed = apply_radial_brush(bundle, target.r, target.r)
    assert [p.model_id for p in brushed.detail_points()] == ["a"]


def test_random_brushes_match_linear_scan_oracle():
    rng = np.random.default_rng(606)
    bundle = build_views(random_dataset(rng, n_models=12), DiagramKind.TAYLOR)
    for _ in range(300):
        a, b = sorted(rng.uniform(0.0, bundle.radial_max, 2))
        brushed = apply_radial_brush(bundle, float(a), float(b))
        oracle = {p.model_id for p in bundle.all_points if a <= p.r <= b}
        assert set(brushed.selection) == oracle
        assert {p.model_id for p in brushed.detail_points()} == oracle


def test_invalid_brush_rejected(wine_dataset):
    bundle = build_views(wine_dataset, DiagramKind.SMI)
    with pytest.raises(InvalidIntervalError):
        apply_radial_brush(bundle, -0.1, 1.0)
    with pytest.raises(InvalidIntervalError):
        apply_radial_brush(bundle, 2.0, 1.0)
    with pytest.raises(InvalidIntervalError):
        apply_radial_brush(bundle, 0.0, bundle.radial_max * 1.5)


# --------------------------------------------------------------- legend actions


def test_double_click_selects_whole_cluster(wine_dataset):
    bundle = build_views(wine_dataset, DiagramKind.SMI)
    multi = next(c for c in bundle.clusters if c.count > 1)
    target = multi.member_ids[0]
    after = apply_legend_action(
        bundle, LegendAction(LegendActionKind.DOUBLE_CLICK, target)
    )
    assert after.selection == frozenset(multi.member_ids)


def test_single_click_toggle_is_an_involution(wine_dataset):
    bundle = build_views(wine_dataset, DiagramKind.SMI)
    model_id = bundle.model_ids[3]
    once = apply_legend_action(bundle, LegendAction(LegendActionKind.SINGLE_CLICK, model_id))
    assert model_id in once.hidden
    assert model_id not in {p.model_id for p in once.detail_points()}
    twice = apply_legend_action(once, LegendAction(LegendActionKind.SINGLE_CLICK, model_id))
    assert canonical_json(bundle_payload(twice)) == canonical_json(bundle_payload(bundle))


def test_reset_replays_to_initial_state(wine_dataset):
    bundle = build_views(wine_dataset, DiagramKind.SMI)
    initial = canonical_json(bundle_payload(bundle))
    state = apply_radial_brush(bundle, 0.2, bundle.radial_max * 0.9)
    state = apply_legend_action(state, LegendAction(LegendActionKind.SINGLE_CLICK, bundle.model_ids[0]))
    state = apply_legend_action(state, LegendAction(LegendActionKind.DOUBLE_CLICK, bundle.model_ids[5]))
    assert canonical_json(bundle_payload(state)) != initial
    reset = apply_legend_action(state, LegendAction(LegendActionKind.RESET))
    assert canonical_json(bundle_payload(reset)) == initial


def test_unknown_model_rejected(wine_dataset):
    bundle = build_views(wine_dataset, DiagramKind.SMI)
    with pytest.raises(UnknownModelIdError):
        apply_legend_action(bundle, LegendAction(LegendActionKind.SINGLE_CLICK, "nope"))


def test_detail_filter_soundness_random_sequences(wine_dataset):
    rng = np.random.default_rng(9000)
    bundle = build_views(wine_dataset, DiagramKind.SMI)
    state = bundle
    for _ in range(60):
        roll = rng.uniform()
        if roll < 0.4:
            a, b = sorted(rng.uniform(0.0, bundle.radial_max, 2))
            state = apply_radial_brush(state, float(a), float(b))
        elif roll < 0.8:
            model_id = str(rng.choice(bundle.model_ids))
            state = apply_legend_action(
                state, LegendAction(LegendActionKind.SINGLE_CLICK, model_id)
            )
        else:
            state = apply_legend_action(state, LegendAction(LegendActionKind.RESET))
        # composition oracle: brush interval then hidden toggles over the full set
        expected = [p for p in bundle.all_points if p.model_id not in state.hidden]
        if state.brush is not None:
            r0, r1 = state.brush
            expected = [p for p in expected if r0 <= p.r <= r1]
        assert state.detail_points() == tuple(expected)


# ------------------------------------------------------------------ rect brush


def test_rect_covering_half_disc_selects_all(wine_dataset):
    bundle = build_views(wine_dataset, DiagramKind.SMI)
    detail = bundle.detail()
    m = bundle.radial_max
    assert apply_rect_brush(detail, (-m, 0.0, m, m)) == frozenset(bundle.model_ids)


def test_rect_away_from_points_selects_none(wine_dataset):
    detail = build_views(wine_dataset, DiagramKind.SMI).detail()
    assert apply_rect_brush(detail, (1e6, 1e6, 1e6 + 1, 1e6 + 1)) == frozenset()


def test_random_rects_match_linear_scan(wine_dataset):
    rng = np.random.default_rng(77)
    bundle = build_views(wine_dataset, DiagramKind.SMI)
    detail = bundle.detail()
    m = bundle.radial_max
    for _ in range(300):
        x0, x1 = sorted(rng.uniform(-m, m, 2))
        y0, y1 = sorted(rng.uniform(0.0, m, 2))
        got = apply_rect_brush(detail, (x0, y0, x1, y1))
        oracle = {
            p.model_id for p in detail.points if x0 <= p.x <= x1 and y0 <= p.y <= y1
        }
        assert got == oracle


def test_invalid_rect(wine_dataset):
    detail = build_views(wine_dataset, DiagramKind.SMI).detail()
    with pytest.raises(InvalidRectError):
        apply_rect_brush(detail, (1.0, 0.0, 0.0, 1.0))


# ------------------------------------------------------------------- occlusion


def test_identical_models_are_flagged():
    values = [1.0, 2.0, 0.5, 3.0, 2.5, 0.0]
    dataset = make_dataset(
        {"ref": values, "a": [v + 0.5 for v in values], "b": [v + 0.5 for v in values]}
    )
    bundle = build_views(dataset, DiagramKind.TAYLOR)
    warnings = detect_occlusion(bundle.detail(), 7.0, 100.0)
    assert warnings and warnings[0].affected_ids == ("a", "b")


def test_distant_models_not_flagged():
    dataset = make_dataset(
        {
            "ref": [1.0, 2.0, 3.0, 4.0],
            "near": [1.1, 2.1, 3.1, 4.1],
            "far": [4.0, 1.0, 4.0, 1.0],
        }
    )
    bundle = build_views(dataset, DiagramKind.TAYLOR)
    warnings = detect_occlusion(bundle.detail(), 7.0, DETAIL_PLOT_RADIUS_PX / bundle.radial_max)
    for w in warnings:
        assert not ({"near", "far"} <= set(w.affected_ids))


def test_wine_occlusion_matches_all_pairs_oracle(wine_dataset):
    bundle = build_views(wine_dataset, DiagramKind.SMI)
    detail = bundle.detail()
    radius, scale = 7.0, DETAIL_PLOT_RADIUS_PX / bundle.radial_max
    warnings = detect_occlusion(detail, radius, scale)
    pairs = set()
    pts = list(detail.points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = math.hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) * scale
            if d < 1.6 * radius:
                pairs.add(tuple(sorted((pts[i].model_id, pts[j].model_id))))
    if pairs:
        expected = sorted({m for pair in pairs for m in pair})
        assert list(warnings[0].affected_ids) == expected
    else:
        assert warnings == []


# ------------------------------------------------------------- small multiples


@pytest.mark.parametrize("n", range(2, 13))
def test_grid_formula(n):
    grid = small_multiples(versioned(n), DiagramKind.TAYLOR)
    assert len(grid.cells) == n - 1
    assert grid.rows == math.ceil((n - 1) / 3)
    has_warning = any(w.code is WarningCode.GRID_SIZE for w in grid.warnings)
    assert has_warning == (grid.rows > 3)


def test_seven_versions_make_a_2x3_grid():
    grid = small_multiples(versioned(7), DiagramKind.TAYLOR)
    assert (grid.rows, grid.cols) == (2, 3)
    assert len(grid.cells) == 6


def test_cell_annotations_and_pairs():
    grid = small_multiples(versioned(3), DiagramKind.SMI)
    assert grid.cells[0].annotation == "v2 (step=2)"
    assert grid.cells[1].annotation == "v3 (step=3)"
    for cell in grid.cells:
        assert {p[0] for p in cell.pairs} == {"alpha", "beta"}
        assert len(cell.view.points) == 4  # two versions of each model


def test_too_few_versions():
    with pytest.raises(TooFewVersionsError):
        small_multiples(versioned(1), DiagramKind.TAYLOR)


def test_version_model_mismatch():
    v = versioned(2)
    broken_series = {"ref": [1.0, 2.0, 3.0], "gamma": [1.0, 2.5, 3.5]}
    broken = DatasetVersion("v2", "", make_dataset(broken_series, id="d:v2"))
    with pytest.raises(Exception):
        VersionedDataset(id="d", title="d", versions=(v.versions[0], broken))
    forged = replace(v, versions=(v.versions[0], replace(v.versions[1])))
    object.__setattr__(forged.versions[1], "dataset", broken.dataset)
    with pytest.raises(VersionMismatchError):
        small_multiples(forged, DiagramKind.TAYLOR)


def test_grid_shares_radial_scale():
    grid = small_multiples(versioned(4), DiagramKind.TAYLOR)
    assert len({cell.view.radial_max for cell in grid.cells}) == 1
    top = max(p.r for cell in grid.cells for p in cell.view.points)
    assert grid.radial_max >= top

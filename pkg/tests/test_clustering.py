import math

import numpy as np
import pytest

from polarview.clustering import (
    MARK_RADIUS_MAX_PX,
    MARK_RADIUS_MIN_PX,
    ClusteringConfig,
    dbscan,
    summarize,
)
from polarview.errors import EmptyInputError, InvariantError, LabelMismatchError
from polarview.geometry import DiagramKind, place, reference_point
from polarview.metrics import TaylorMetrics


def eps_graph_components(points, eps):
    """Brute-force oracle: connected components of the eps-neighborhood graph."""
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            d2 = (points[i][0] - points[j][0]) ** 2 + (points[i][1] - points[j][1]) ** 2
            if d2 <= eps * eps:
                parent[find(i)] = find(j)
    return [find(i) for i in range(n)]


def as_partition(labels):
    groups = {}
    for index, label in enumerate(labels):
        groups.setdefault(label, set()).add(index)
    return frozenset(frozenset(g) for g in groups.values())


def taylor_point(model_id, sigma, correlation, sigma_ref=1.0):
    crmse = math.sqrt(
        max(0.0, sigma_ref**2 + sigma**2 - 2 * sigma_ref * sigma * correlation)
    )
    return place(
        DiagramKind.TAYLOR, model_id, TaylorMetrics(sigma_ref, sigma, correlation, crmse)
    )


def test_two_well_separated_groups():
    group_a = [(0.0, 0.0), (0.01, 0.0), (0.0, 0.01)]
    group_b = [(1.0, 1.0), (1.01, 1.0), (1.0, 1.01)]
    labels = dbscan(group_a + group_b, ClusteringConfig(eps=0.1))
    assert as_partition(labels) == as_partition(eps_graph_components(group_a + group_b, 0.1))
    assert len(set(labels)) == 2


def test_all_isolated_points_become_singletons():
    points = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (5.0, 5.0)]
    labels = dbscan(points, ClusteringConfig(eps=0.1, min_pts=1))
    assert len(set(labels)) == 4


def test_random_instances_match_eps_graph_oracle():
    rng = np.random.default_rng(321)
    for _ in range(200):
        n = int(rng.integers(1, 21))
        points = [tuple(p) for p in rng.uniform(-1, 1, (n, 2))]
        eps = float(rng.uniform(0.05, 0.8))
        labels = dbscan(points, ClusteringConfig(eps=eps))
        assert as_partition(labels) == as_partition(eps_graph_components(points, eps))


def test_labels_independent_of_input_order():
    rng = np.random.default_rng(11)
    points = [tuple(p) for p in rng.uniform(-1, 1, (12, 2))]
    labels = dbscan(points, ClusteringConfig(eps=0.3))
    perm = list(rng.permutation(12))
    shuffled = [points[i] for i in perm]
    relabeled = dbscan(shuffled, ClusteringConfig(eps=0.3))
    assert [relabeled[perm.index(i)] for i in range(12)] == labels


def test_min_pts_noise_becomes_singletons():
    # one dense triple plus one outlier; with min_pts=3 the outlier is noise
    points = [(0.0, 0.0), (0.05, 0.0), (0.0, 0.05), (2.0, 2.0)]
    labels = dbscan(points, ClusteringConfig(eps=0.1, min_pts=3))
    assert labels[0] == labels[1] == labels[2]
    assert labels[3] != labels[0]


def test_dbscan_rejects_empty_and_nonfinite():
    with pytest.raises(EmptyInputError):
        dbscan([], ClusteringConfig())
    with pytest.raises(InvariantError):
        dbscan([(float("nan"), 0.0)], ClusteringConfig())


def test_config_validation():
    with pytest.raises(InvariantError):
        ClusteringConfig(eps=0.0)
    with pytest.raises(InvariantError):
        ClusteringConfig(min_pts=0)


# ------------------------------------------------------------------ summarize


def test_single_cluster_gets_shade_zero_and_id_one():
    ref = reference_point(DiagramKind.TAYLOR, TaylorMetrics(1.0, 1.0, 1.0, 0.0))
    points = [taylor_point(f"m{i}", 1.0 + 0.01 * i, 0.9) for i in range(4)]
    summaries = summarize(DiagramKind.TAYLOR, points, [0, 0, 0, 0], ref)
    assert len(summaries) == 1
    only = summaries[0]
    assert only.cluster_id == 1
    assert only.shade == 0
    assert only.count == 4
    assert only.member_ids == ("m0", "m1", "m2", "m3")


def test_singleton_cluster_centroid_is_the_member_point():
    ref = reference_point(DiagramKind.TAYLOR, TaylorMetrics(1.0, 1.0, 1.0, 0.0))
    lone = taylor_point("solo", 1.4, 0.6)
    near = taylor_point("near", 1.0, 0.99)
    summaries = summarize(DiagramKind.TAYLOR, [lone, near], [0, 1], ref)
    solo = next(s for s in summaries if s.member_ids == ("solo",))
    assert solo.centroid.r == pytest.approx(lone.r)
    assert solo.centroid.theta == pytest.approx(lone.theta)
    assert solo.mark_radius_px == MARK_RADIUS_MIN_PX


def test_ids_ordered_by_distance_and_shade_monotone():
    ref = reference_point(DiagramKind.TAYLOR, TaylorMetrics(1.0, 1.0, 1.0, 0.0))
    far = taylor_point("far", 3.0, -0.5)
    mid = taylor_point("mid", 1.8, 0.5)
    close = taylor_point("close", 1.05, 0.98)
    summaries = summarize(DiagramKind.TAYLOR, [far, mid, close], [0, 1, 2], ref)
    assert [s.member_ids[0] for s in summaries] == ["close", "mid", "far"]
    assert [s.cluster_id for s in summaries] == [1, 2, 3]
    assert summaries[0].shade <= summaries[1].shade <= summaries[2].shade
    assert summaries[-1].shade == 220


def test_mark_radius_square_root_law():
    ref = reference_point(DiagramKind.TAYLOR, TaylorMetrics(1.0, 1.0, 1.0, 0.0))
    points = [taylor_point(f"a{i}", 1.0 + i * 0.001, 0.95) for i in range(5)]
    points += [taylor_point("b", 2.5, 0.2)]
    labels = [0, 0, 0, 0, 0, 1]
    summaries = summarize(DiagramKind.TAYLOR, points, labels, ref)
    big = next(s for s in summaries if s.count == 5)
    small = next(s for s in summaries if s.count == 1)
    assert big.mark_radius_px == MARK_RADIUS_MAX_PX
    assert small.mark_radius_px == MARK_RADIUS_MIN_PX


def test_partition_property():
    ref = reference_point(DiagramKind.TAYLOR, TaylorMetrics(1.0, 1.0, 1.0, 0.0))
    rng = np.random.default_rng(8)
    points = [
        taylor_point(f"m{i}", float(rng.uniform(0.5, 3.0)), float(rng.uniform(-1, 1)))
        for i in range(15)
    ]
    coords = [(p.x, p.y) for p in points]
    labels = dbscan(coords, ClusteringConfig(eps=0.4))
    summaries = summarize(DiagramKind.TAYLOR, points, labels, ref)
    seen = [m for s in summaries for m in s.member_ids]
    assert sorted(seen) == sorted(p.model_id for p in points)
    assert len(seen) == len(set(seen))
    assert [s.cluster_id for s in summaries] == list(range(1, len(summaries) + 1))


def test_centroid_encodes_average_measures():
    ref = reference_point(DiagramKind.TAYLOR, TaylorMetrics(1.0, 1.0, 1.0, 0.0))
    a = taylor_point("a", 1.0, 0.8)
    b = taylor_point("b", 2.0, 0.6)
    summaries = summarize(DiagramKind.TAYLOR, [a, b], [0, 0], ref)
    centroid = summaries[0].centroid
    assert centroid.r == pytest.approx(1.5)
    assert centroid.theta == pytest.approx(math.acos(0.7))


def test_label_mismatch():
    ref = reference_point(DiagramKind.TAYLOR, TaylorMetrics(1.0, 1.0, 1.0, 0.0))
    with pytest.raises(LabelMismatchError):
        summarize(DiagramKind.TAYLOR, [taylor_point("a", 1.0, 0.5)], [0, 1], ref)

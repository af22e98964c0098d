import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarview.errors import (
    InvariantError,
    LengthMismatchError,
    NegativeRadiusError,
    ZeroVarianceError,
)
from polarview.metrics import (
    AUTO,
    BinningConfig,
    InfoMetrics,
    SampleVector,
    TaylorMetrics,
    cartesian_from_polar,
    info_metrics,
    polar_from_cartesian,
    taylor_metrics,
)


def vec(name, values):
    return SampleVector(name, tuple(float(v) for v in values))


# ---------------------------------------------------------------- SampleVector


def test_sample_vector_rejects_short_and_nonfinite():
    with pytest.raises(InvariantError):
        vec("x", [1.0])
    with pytest.raises(InvariantError):
        vec("x", [1.0, float("nan")])
    with pytest.raises(InvariantError):
        vec("x", [1.0, float("inf")])


# -------------------------------------------------------------- taylor_metrics


def test_identical_series_is_a_perfect_model():
    x = vec("x", [1.0, 2.0, 5.0, 3.0])
    m = taylor_metrics(x, vec("y", x.values))
    assert m.correlation == 1.0
    assert m.crmse == 0.0
    assert m.sigma_ref == m.sigma_model


def test_negated_shifted_series_has_correlation_minus_one():
    x = vec("x", [0.3, 1.9, -2.5, 4.0, 0.8])
    for c in (0.0, -3.7, 12.0):
        y = vec("y", [-v + c for v in x.values])
        m = taylor_metrics(x, y)
        assert m.correlation == pytest.approx(-1.0, abs=1e-12)
        assert m.crmse == pytest.approx(2.0 * m.sigma_ref, rel=1e-9)


def test_cosine_law_identity_against_direct_crmse_oracle():
    # oracle: centered RMSE computed directly with numpy, never via the identity
    rng = np.random.default_rng(1234)
    for _ in range(1000):
        x = rng.normal(rng.uniform(-5, 5), rng.uniform(0.5, 3.0), 100)
        y = rng.normal(rng.uniform(-5, 5), rng.uniform(0.5, 3.0), 100)
        m = taylor_metrics(vec("x", x), vec("y", y))
        oracle = float(np.sqrt(np.mean(((x - x.mean()) - (y - y.mean())) ** 2)))
        assert m.crmse == pytest.approx(oracle, rel=1e-12)
        rhs = m.sigma_ref**2 + m.sigma_model**2 - 2 * m.sigma_ref * m.sigma_model * m.correlation
        assert abs(m.crmse**2 - rhs) <= 1e-9 * max(1.0, m.sigma_ref**2)


def test_taylor_errors():
    with pytest.raises(LengthMismatchError):
        taylor_metrics(vec("x", [1, 2, 3]), vec("y", [1, 2]))
    with pytest.raises(ZeroVarianceError):
        taylor_metrics(vec("x", [2, 2, 2]), vec("y", [1, 2, 3]))


@given(
    st.lists(st.integers(-1000, 1000).map(float), min_size=3, max_size=40).filter(
        lambda v: len(set(v)) > 1
    ),
    st.randoms(use_true_random=False),
)
@settings(max_examples=60, deadline=None)
def test_taylor_permutation_invariance_bit_for_bit(values, rnd):
    import statistics

    from hypothesis import assume

    x = list(values)
    y = [v * 0.5 + i for i, v in enumerate(values)]
    assume(statistics.pvariance(y) > 1e-9)
    pairs = list(zip(x, y))
    rnd.shuffle(pairs)
    px, py = zip(*pairs)
    a = taylor_metrics(vec("x", x), vec("y", y))
    b = taylor_metrics(vec("x", px), vec("y", py))
    assert (a.sigma_ref, a.sigma_model, a.correlation, a.crmse) == (
        b.sigma_ref,
        b.sigma_model,
        b.correlation,
        b.crmse,
    )


@given(st.floats(-50, 50), st.floats(0.1, 20))
@settings(max_examples=40, deadline=None)
def test_taylor_shift_invariance_and_scale_linearity(shift, scale):
    x = [0.1, 2.4, -1.0, 3.3, 0.0, 5.2]
    y = [1.0, 2.0, -0.5, 2.8, 0.4, 4.9]
    base = taylor_metrics(vec("x", x), vec("y", y))
    shifted = taylor_metrics(vec("x", [v + shift for v in x]), vec("y", y))
    assert shifted.crmse == pytest.approx(base.crmse, rel=1e-9, abs=1e-12)
    assert shifted.correlation == pytest.approx(base.correlation, rel=1e-9)
    scaled = taylor_metrics(
        vec("x", [v * scale for v in x]), vec("y", [v * scale for v in y])
    )
    assert scaled.crmse == pytest.approx(scale * base.crmse, rel=1e-9)
    assert scaled.sigma_model == pytest.approx(scale * base.sigma_model, rel=1e-9)


# ---------------------------------------------------------------- info_metrics


def test_identical_series_has_unit_similarity():
    x = vec("x", [0.0, 1.0, 2.0, 3.0, 1.5, 2.5, 0.5, 3.5])
    m = info_metrics(x, vec("y", x.values))
    assert m.mi == m.h_ref == m.h_model
    assert m.vi == 0.0
    assert m.smi == 1.0
    assert m.nmi == 1.0
    assert m.rvi == 0.0


def test_independent_uniform_binary_series():
    x = vec("x", [0.0, 1.0, 0.0, 1.0])
    y = vec("y", [0.0, 0.0, 1.0, 1.0])
    m = info_metrics(x, y, BinningConfig(bin_count=2))
    assert m.h_ref == 1.0
    assert m.h_model == 1.0
    assert m.mi == 0.0
    assert m.vi == 2.0
    assert m.smi == 0.0
    assert m.nmi == 0.0


def test_uniform_four_bin_entropy_is_two_bits():
    x = vec("x", [0.0, 1.0, 2.0, 3.0])
    m = info_metrics(x, vec("y", x.values), BinningConfig(bin_count=4))
    assert m.h_ref == 2.0


def test_degenerate_constant_series_flagged():
    x = vec("x", [1.0, 1.0, 1.0, 1.0])
    y = vec("y", [0.0, 1.0, 2.0, 3.0])
    m = info_metrics(x, y, BinningConfig(bin_count=2))
    assert m.degenerate
    assert m.h_ref == 0.0
    assert m.smi == 0.0 and m.nmi == 0.0


def test_similarity_terms_match_numeric_identity_oracle():
    # oracle: solve the two cosine laws numerically for the similarity term,
    # given vi and the entropies, and compare to the closed-form values
    from scipy.optimize import brentq

    rng = np.random.default_rng(777)
    checked = 0
    for _ in range(300):
        n = int(rng.integers(30, 200))
        x = rng.normal(0, 1, n)
        y = 0.5 * x + rng.normal(0, rng.uniform(0.1, 2.0), n)
        m = info_metrics(vec("x", x), vec("y", y))
        if m.h_ref * m.h_model == 0:
            continue
        checked += 1

        def smi_law_residual(s):
            return m.h_ref**2 + m.h_model**2 - 2 * m.h_ref * m.h_model * (2 * s - 1) - m.vi**2

        def nmi_law_residual(t):
            return m.h_ref + m.h_model - 2 * math.sqrt(m.h_ref * m.h_model) * t - m.vi

        smi_oracle = brentq(smi_law_residual, 0.0, 1.0, xtol=1e-14)
        nmi_oracle = brentq(nmi_law_residual, 0.0, 1.0, xtol=1e-14)
        assert m.smi == pytest.approx(smi_oracle, abs=1e-9)
        assert m.nmi == pytest.approx(nmi_oracle, abs=1e-9)
    assert checked > 250


def test_mi_bounded_by_marginal_entropies():
    rng = np.random.default_rng(31)
    for _ in range(200):
        n = int(rng.integers(10, 120))
        x = rng.normal(0, 1, n)
        y = rng.normal(0, 1, n)
        m = info_metrics(vec("x", x), vec("y", y))
        assert 0.0 <= m.mi <= min(m.h_ref, m.h_model) + 1e-12
        assert 0.0 <= m.smi <= 1.0
        assert 0.0 <= m.nmi <= 1.0


def test_info_symmetry_under_swap_bit_for_bit():
    rng = np.random.default_rng(5)
    for _ in range(50):
        x = rng.normal(0, 1, 64)
        y = rng.normal(0, 1, 64)
        a = info_metrics(vec("x", x), vec("y", y))
        b = info_metrics(vec("y", y), vec("x", x))
        assert (a.mi, a.vi, a.smi, a.nmi) == (b.mi, b.vi, b.smi, b.nmi)
        assert (a.h_ref, a.h_model) == (b.h_model, b.h_ref)


def test_info_permutation_invariance_bit_for_bit():
    rng = np.random.default_rng(17)
    x = rng.normal(0, 1, 80)
    y = rng.normal(0, 1, 80)
    a = info_metrics(vec("x", x), vec("y", y))
    perm = rng.permutation(80)
    b = info_metrics(vec("x", x[perm]), vec("y", y[perm]))
    assert a == b


def test_binning_config():
    assert BinningConfig().resolve(100) == 10
    assert BinningConfig().resolve(101) == 11
    assert BinningConfig(bin_count=5).resolve(1000) == 5
    assert BinningConfig().bin_count == AUTO
    with pytest.raises(InvariantError):
        BinningConfig(bin_count=0)
    with pytest.raises(InvariantError):
        BinningConfig(log_base=1.0)


def test_metric_types_validate_identities():
    with pytest.raises(InvariantError):
        TaylorMetrics(sigma_ref=1.0, sigma_model=1.0, correlation=0.5, crmse=5.0)
    with pytest.raises(InvariantError):
        InfoMetrics(h_ref=1.0, h_model=1.0, mi=0.2, smi=0.9, nmi=0.9, vi=1.6, rvi=math.sqrt(1.6))


# ----------------------------------------------------- coordinate conversions


def test_polar_axis_points():
    assert polar_from_cartesian(1.0, 0.0) == (1.0, 0.0)
    r, theta = polar_from_cartesian(0.0, 1.0)
    assert r == 1.0 and theta == pytest.approx(math.pi / 2)
    assert polar_from_cartesian(0.0, 0.0) == (0.0, 0.0)


def test_cartesian_axis_points():
    assert cartesian_from_polar(1.0, 0.0) == (1.0, 0.0)
    x, y = cartesian_from_polar(2.0, math.pi)
    assert x == pytest.approx(-2.0, abs=1e-12)
    assert y == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(NegativeRadiusError):
        cartesian_from_polar(-0.5, 0.0)


def test_polar_round_trip_oracle():
    rng = np.random.default_rng(99)
    for _ in range(1000):
        x, y = rng.uniform(-10, 10, 2)
        if math.hypot(x, y) <= 1e-9:
            continue
        r, theta = polar_from_cartesian(x, y)
        assert -math.pi < theta <= math.pi
        rx, ry = cartesian_from_polar(r, theta)
        assert rx == pytest.approx(x, abs=1e-12 * max(1, abs(x)))
        assert ry == pytest.approx(y, abs=1e-12 * max(1, abs(y)))


def test_theta_half_open_interval():
    r, theta = polar_from_cartesian(-1.0, -0.0)
    assert theta == math.pi

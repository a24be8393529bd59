import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicone import tensor
from bicone.errors import DegenerateMetric, SignatureError, SuperluminalBoost, VarianceError
from bicone.tensor import (
    apply_boost,
    bimetric,
    boost,
    boost_metric,
    covector,
    determinant,
    interval,
    inverse,
    metric,
    minkowski,
    vector,
)

from oracles import cofactor_det, contract

ETA = np.diag([1.0, -1.0, -1.0, -1.0])


def test_minkowski_components():
    assert np.array_equal(minkowski().components, ETA)
    assert minkowski().kind == "gravitational"


@pytest.mark.parametrize("dx, expected", [((1, 0, 0, 0), 1.0), ((1, 1, 0, 0), 0.0), ((0, 0, 0, 0), 0.0)])
def test_minkowski_intervals(dx, expected):
    assert interval(minkowski(), vector(dx)) == expected


def test_bimetric_alpha_zero_is_eta():
    u = covector(0.3, -1.2, 0.5, 2.0)
    assert np.array_equal(bimetric(minkowski(), 0.0, u).components, ETA)


@pytest.mark.parametrize("alpha, expected", [(1.0, [2, -1, -1, -1]), (3.0, [4, -1, -1, -1])])
def test_bimetric_componentwise(alpha, expected):
    u = covector(1, 0, 0, 0)
    m = bimetric(minkowski(), alpha, u)
    oracle = [[ETA[i, j] + alpha * u.components[i] * u.components[j] for j in range(4)] for i in range(4)]
    assert np.array_equal(m.components, np.array(oracle))
    assert np.array_equal(m.components, np.diag(expected))
    assert m.kind == "quantum"


def test_bimetric_rejects_covariance_mixup():
    with pytest.raises(VarianceError):
        bimetric(minkowski(), 1.0, vector(1, 0, 0, 0))


def test_bimetric_degenerate_rejected():
    # 1 + alpha u.u = 1 - 1 * 1 = 0
    with pytest.raises(DegenerateMetric):
        bimetric(minkowski(), 1.0, covector(0, 1, 0, 0))


def test_bimetric_non_lorentzian_rejected():
    with pytest.raises(SignatureError):
        bimetric(minkowski(), 2.0, covector(0, 1, 0, 0))


def test_metric_requires_symmetry():
    a = np.diag([1.0, -1, -1, -1])
    a[0, 1] = 0.1
    with pytest.raises(ValueError):
        metric(a)


def test_inverse_of_eta():
    assert np.array_equal(inverse(minkowski()).components, ETA)


def test_inverse_diag2():
    inv = inverse(metric(np.diag([2.0, -1, -1, -1])))
    assert np.allclose(inv.components, np.linalg.inv(np.diag([2.0, -1, -1, -1])), atol=1e-15)
    assert np.allclose(inv.components, np.diag([0.5, -1, -1, -1]), atol=0)


def test_inverse_random_rank_one_100():
    rng = np.random.default_rng(11)
    for _ in range(100):
        alpha = rng.uniform(0, 10)
        u = rng.uniform(-1, 1, 4)
        if 1 + alpha * (u @ ETA @ u) < 0.5:
            continue
        m = bimetric(minkowski(), alpha, covector(u))
        mi = inverse(m).components
        assert np.max(np.abs(mi @ m.components - np.eye(4))) < 1e-12
        assert np.max(np.abs(mi - np.linalg.inv(m.components))) < 1e-12


def test_closed_form_relative_near_degenerate():
    # close to 1 + alpha u.u = 0 absolute agreement degrades with the inverse's size; relative holds
    rng = np.random.default_rng(5)
    count = 0
    while count < 300:
        alpha = rng.uniform(0, 10)
        u = rng.uniform(-1, 1, 4)
        lemma = 1 + alpha * (u @ ETA @ u)
        if not 1e-2 <= lemma < 0.5:
            continue
        count += 1
        m = bimetric(minkowski(), alpha, covector(u))
        closed = inverse(m).components
        generic = tensor.generic_inverse(m.components)
        assert np.max(np.abs(closed - generic)) / np.max(np.abs(generic)) < 1e-12


def test_generic_inverse_fallback_for_dense_metric():
    b = boost([0.3, 0.1, 0.0])
    m = boost_metric(b, metric(np.diag([4.0, -1, -1, -1])))
    assert np.max(np.abs(inverse(m).components @ m.components - np.eye(4))) < 1e-12


def test_determinant_examples():
    assert determinant(minkowski()) == -1.0
    d2 = metric(np.diag([2.0, -1, -1, -1]))
    assert determinant(d2) == pytest.approx(cofactor_det(d2.components), abs=1e-15)
    assert determinant(d2) == pytest.approx(-2.0, abs=1e-15)


def test_determinant_lemma_random():
    rng = np.random.default_rng(3)
    for _ in range(100):
        alpha = rng.uniform(0, 10)
        u = rng.uniform(-1, 1, 4)
        lemma = 1 + alpha * (u @ ETA @ u)
        if lemma < 0.5:
            continue
        m = bimetric(minkowski(), alpha, covector(u))
        oracle = cofactor_det(m.components)
        assert determinant(m) == pytest.approx(oracle, rel=1e-12)
        assert determinant(m) == pytest.approx(-lemma, rel=1e-12)


@pytest.mark.parametrize(
    "m, dx, expected",
    [
        (ETA, (1, 2, 0, 0), -3.0),
        (np.diag([9.0, -1, -1, -1]), (1, 2, 0, 0), 5.0),
        (ETA, (0, 0, 0, 0), 0.0),
    ],
)
def test_interval_examples(m, dx, expected):
    assert contract(m, dx) == expected
    assert interval(metric(m), vector(dx)) == expected


def test_interval_rejects_covector():
    with pytest.raises(VarianceError):
        interval(minkowski(), covector(1, 0, 0, 0))


def test_raise_lower_roundtrip():
    rng = np.random.default_rng(2)
    m = bimetric(minkowski(), 2.0, covector(0.8, 0.1, -0.2, 0.3))
    for _ in range(50):
        w = covector(rng.normal(size=4))
        back = tensor.lower_index(m, tensor.raise_index(m, w))
        assert back.is_covariant
        assert np.max(np.abs(back.components - w.components)) < 1e-12


def test_boost_identity():
    b = boost([0, 0, 0])
    assert np.array_equal(b.matrix, np.eye(4))
    assert b.gamma == 1.0


def test_boost_point_six():
    b = boost([0.6, 0, 0])
    gamma = 1 / np.sqrt(1 - 0.36)
    assert b.gamma == pytest.approx(gamma, abs=1e-15)
    assert b.gamma == pytest.approx(1.25, abs=1e-15)
    assert b.matrix[0, 0] == pytest.approx(1.25, abs=1e-15)
    assert b.matrix[0, 1] == pytest.approx(-0.75, abs=1e-15)


@pytest.mark.parametrize("v", [[1.0, 0, 0], [0.8, 0.6, 0.0], [0.0, 0.0, -1.5]])
def test_superluminal_boost_rejected(v):
    with pytest.raises(SuperluminalBoost):
        boost(v)


def test_boost_det_plus_one():
    rng = np.random.default_rng(9)
    for _ in range(100):
        v = rng.normal(size=3)
        v *= rng.uniform(0, 0.95) / np.linalg.norm(v)
        assert np.linalg.det(boost(v).matrix) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(
    st.tuples(*[st.floats(-0.57, 0.57) for _ in range(3)]),
)
def test_boost_orthogonality_property(v):
    b = boost(v)
    lam = b.matrix
    # Lambda^mu_nu Lambda_mu^sigma with Lambda_mu^sigma = eta_{mu a} Lambda^a_b eta^{b sigma}
    lowered = ETA @ lam @ ETA
    prod = np.einsum("mn,ms->ns", lam, lowered)
    assert np.max(np.abs(prod - np.eye(4))) < 1e-12


def test_wide_cone_boost_preserves_its_metric():
    b = boost([1.2, 0.5, -0.3], c=3.0)
    G = np.diag([9.0, -1, -1, -1])
    assert np.max(np.abs(b.matrix.T @ G @ b.matrix - G)) < 1e-12
    assert tensor.orthogonality_defect(b) < 1e-12


def test_apply_boost_identity():
    x = vector(1, 2, 3, 4)
    assert np.array_equal(apply_boost(boost([0, 0, 0]), x).components, x.components)


def test_apply_boost_eta_interval_preserved():
    b = boost([0.5, 0, 0])
    d = vector(1, 2, 0, 0)
    assert interval(minkowski(), d) == -3.0
    assert interval(minkowski(), apply_boost(b, d)) == pytest.approx(-3.0, abs=1e-12)


def test_apply_boost_ghat_interval_preserved_with_cotransformed_u():
    b = boost([0.5, 0, 0])
    u = covector(1, 0, 0, 0)
    d = vector(1, 2, 0, 0)
    gh = bimetric(minkowski(), 8.0, u)
    gh_boosted = bimetric(minkowski(), 8.0, apply_boost(b, u))
    assert interval(gh, d) == pytest.approx(5.0, abs=1e-12)
    assert contract(gh_boosted.components, apply_boost(b, d).components) == pytest.approx(5.0, abs=1e-12)
    assert interval(boost_metric(b, gh), apply_boost(b, d)) == pytest.approx(5.0, abs=1e-12)


def test_covector_contraction_invariant():
    b = boost([0.2, -0.4, 0.1])
    u = covector(0.3, 1.0, -2.0, 0.5)
    x = vector(1.5, -0.2, 0.7, 3.0)
    before = float(u.components @ x.components)
    after = float(apply_boost(b, u).components @ apply_boost(b, x).components)
    assert after == pytest.approx(before, abs=1e-12)


def test_signature_preserved_for_positive_lemma():
    rng = np.random.default_rng(21)
    for _ in range(500):
        alpha = rng.uniform(0, 10)
        u = rng.uniform(-1, 1, 4)
        if 1 + alpha * (u @ ETA @ u) <= 1e-3:
            continue
        eig = np.linalg.eigvalsh(bimetric(minkowski(), alpha, covector(u)).components)
        assert (eig > 0).sum() == 1 and (eig < 0).sum() == 3


def test_metric_values_are_immutable():
    m = minkowski()
    with pytest.raises(ValueError):
        m.components[0, 0] = 5.0

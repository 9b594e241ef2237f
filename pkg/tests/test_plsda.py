"""Tests for fishbit.analysis.plsda: fitting, cross-validation and classification."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fishbit.analysis import (
    AEROBIC,
    ANAEROBIC,
    classify,
    classify_many,
    label_by_speed,
    loo_q2,
    pls_da_fit,
    score_overlap_fraction,
)
from fishbit.errors import (
    ClassImbalanceBelowMinimum,
    DegenerateInput,
    SingularFeatures,
    UnfittedModel,
)


def _clusters(rng: np.random.Generator, per_class: int, shift: float):
    """Two Gaussian clouds in (resp_freq, activity) space, ``shift`` apart on both axes."""
    aerobic = rng.normal(0.0, 1.0, (per_class, 2))
    anaerobic = rng.normal(shift, 1.0, (per_class, 2))
    features = np.vstack([aerobic, anaerobic])
    labels = [AEROBIC] * per_class + [ANAEROBIC] * per_class
    return features, labels


def _one_hot(labels) -> np.ndarray:
    y = np.zeros((len(labels), 2))
    y[np.arange(len(labels)), [0 if l == AEROBIC else 1 for l in labels]] = 1.0
    return y


# ============================
# Fitting
# ============================

class TestFit:
    def test_separated_clusters(self, rng):
        features, labels = _clusters(rng, 20, 8.0)
        model = pls_da_fit(features, labels)

        predicted = [c.label for c in classify_many(model, features)]
        assert predicted == labels
        assert model.q2 > 0.9
        assert model.r2y > 0.9

    def test_moderate_overlap(self, rng):
        features, labels = _clusters(rng, 40, 1.7)
        model = pls_da_fit(features, labels)
        assert 0.4 <= model.r2y <= 0.8
        assert 0.4 <= model.q2 <= 0.8
        assert model.q2 <= model.r2y

    def test_permuted_labels_do_not_predict(self, rng):
        features, labels = _clusters(rng, 15, 1.0)
        q2s = []
        for _ in range(100):
            shuffled = list(rng.permutation(labels))
            q2s.append(pls_da_fit(features, shuffled).q2)
        assert np.mean(q2s) <= 0.0

    def test_loo_q2_matches_brute_force(self, rng):
        features, labels = _clusters(rng, 10, 2.0)
        model = pls_da_fit(features, labels)

        y = _one_hot(labels)
        press = 0.0
        for i in range(len(labels)):
            keep = np.arange(len(labels)) != i
            sub = pls_da_fit(
                features[keep], [l for j, l in enumerate(labels) if j != i],
                min_per_class=1, cross_validate=False,
            )
            residual = y[i] - sub.predict_response(features[i])[0]
            press += float(residual @ residual)
        expected = 1.0 - press / float(np.sum((y - y.mean(axis=0)) ** 2))

        assert model.q2 == pytest.approx(expected, abs=1e-10)
        assert loo_q2(features, y, 2) == pytest.approx(expected, abs=1e-10)

    def test_scores_are_orthogonal(self, rng):
        features, labels = _clusters(rng, 20, 2.0)
        model = pls_da_fit(features, labels, cross_validate=False)
        t = model.scores
        assert abs(float(t[:, 0] @ t[:, 1])) < 1e-8

    def test_transform_reproduces_training_scores(self, rng):
        features, labels = _clusters(rng, 20, 2.0)
        model = pls_da_fit(features, labels, cross_validate=False)
        assert np.allclose(model.transform(features), model.scores, atol=1e-10)

    def test_without_cross_validation(self, rng):
        features, labels = _clusters(rng, 10, 3.0)
        assert pls_da_fit(features, labels, cross_validate=False).q2 is None

    def test_class_below_minimum(self, rng):
        features, _ = _clusters(rng, 10, 3.0)
        labels = [AEROBIC] * 15 + [ANAEROBIC] * 5
        with pytest.raises(ClassImbalanceBelowMinimum):
            pls_da_fit(features, labels)

    def test_constant_feature(self, rng):
        features, labels = _clusters(rng, 10, 3.0)
        features[:, 1] = 0.7
        with pytest.raises(SingularFeatures):
            pls_da_fit(features, labels)

    def test_collinear_features(self, rng):
        features, labels = _clusters(rng, 10, 3.0)
        features[:, 1] = 2.0 * features[:, 0] + 1.0
        with pytest.raises(SingularFeatures):
            pls_da_fit(features, labels)

    def test_unknown_label(self, rng):
        features, labels = _clusters(rng, 10, 3.0)
        labels[0] = "resting"
        with pytest.raises(DegenerateInput):
            pls_da_fit(features, labels)

    def test_shape_mismatch(self, rng):
        features, labels = _clusters(rng, 10, 3.0)
        with pytest.raises(DegenerateInput):
            pls_da_fit(features, labels[:-1])

    @settings(max_examples=100, deadline=None)
    @given(
        scale=st.tuples(st.floats(0.01, 100.0), st.floats(0.01, 100.0)),
        shift=st.tuples(st.floats(-100.0, 100.0), st.floats(-100.0, 100.0)),
    )
    def test_labels_invariant_under_feature_rescaling(self, scale, shift):
        features, labels = _clusters(np.random.default_rng(17), 12, 3.0)
        base = pls_da_fit(features, labels, cross_validate=False)
        moved_features = features * np.asarray(scale) + np.asarray(shift)
        moved = pls_da_fit(moved_features, labels, cross_validate=False)

        assert [c.label for c in classify_many(moved, moved_features)] == \
            [c.label for c in classify_many(base, features)]


# ============================
# Classification
# ============================

class TestClassify:
    def test_class_means_classified_as_own_class(self, rng):
        features, labels = _clusters(rng, 20, 6.0)
        model = pls_da_fit(features, labels, cross_validate=False)

        assert classify(model, features[:20].mean(axis=0)).label == AEROBIC
        assert classify(model, features[20:].mean(axis=0)).label == ANAEROBIC

    def test_training_mean_scores_zero(self, rng):
        features, labels = _clusters(rng, 20, 6.0)
        model = pls_da_fit(features, labels, cross_validate=False)
        result = classify(model, model.x_means)
        assert result.score == pytest.approx(0.0, abs=1e-12)
        assert result.response == pytest.approx(0.5, abs=1e-12)

    def test_classes_on_opposite_sides_of_first_component(self, rng):
        features, labels = _clusters(rng, 20, 6.0)
        model = pls_da_fit(features, labels, cross_validate=False)
        results = classify_many(model, features)
        anaerobic = [r.score for r, l in zip(results, labels) if l == ANAEROBIC]
        aerobic = [r.score for r, l in zip(results, labels) if l == AEROBIC]
        # class means sit on opposite sides of zero along the first component
        assert np.sign(np.mean(anaerobic)) == -np.sign(np.mean(aerobic))

    def test_unfitted_model(self):
        with pytest.raises(UnfittedModel):
            classify(None, [2.5, 0.1])
        with pytest.raises(UnfittedModel):
            classify_many(None, [[2.5, 0.1]])


# ============================
# Labels and score overlap
# ============================

class TestLabelsAndOverlap:
    def test_label_by_speed(self):
        assert label_by_speed([1.0, 4.0, 4.5, 5.0], 4.5) == [AEROBIC, AEROBIC, AEROBIC, ANAEROBIC]

    def test_disjoint_scores(self):
        assert score_overlap_fraction([0.0, 1.0, 2.0, 3.0], [AEROBIC, AEROBIC, ANAEROBIC, ANAEROBIC]) == 0.0

    def test_partial_overlap(self):
        fraction = score_overlap_fraction([0.0, 2.0, 1.0, 3.0], [AEROBIC, AEROBIC, ANAEROBIC, ANAEROBIC])
        assert fraction == pytest.approx(0.5)

    def test_full_overlap(self):
        fraction = score_overlap_fraction([0.0, 3.0, 0.0, 3.0], [AEROBIC, AEROBIC, ANAEROBIC, ANAEROBIC])
        assert fraction == pytest.approx(1.0)

    def test_missing_class(self):
        with pytest.raises(DegenerateInput):
            score_overlap_fraction([0.0, 1.0], [AEROBIC, AEROBIC])

    def test_separated_clusters_have_no_overlap(self, rng):
        features, labels = _clusters(rng, 20, 8.0)
        model = pls_da_fit(features, labels, cross_validate=False)
        assert score_overlap_fraction(model.scores[:, 0], labels) == 0.0

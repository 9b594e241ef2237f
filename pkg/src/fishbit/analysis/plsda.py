# fishbit/analysis/plsda.py
"""Two-class PLS-DA (NIPALS) on per-window (respiratory frequency, activity) features."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from fishbit.errors import (
    ClassImbalanceBelowMinimum,
    DegenerateInput,
    SingularFeatures,
    UnfittedModel,
)
from fishbit.utils import get_logger, log_performance

logger = get_logger(__name__)

AEROBIC = "aerobic"
ANAEROBIC = "anaerobic"
CLASS_LABELS: Tuple[str, str] = (AEROBIC, ANAEROBIC)

MIN_PER_CLASS = 6
NIPALS_TOL = 1e-12
NIPALS_MAX_ITER = 500


# ============================
# Model
# ============================

@dataclass(frozen=True, eq=False)
class PlsModel:
    n_components: int
    x_means: np.ndarray
    x_stds: np.ndarray
    y_means: np.ndarray
    weights: np.ndarray          # W, (features, components)
    loadings: np.ndarray         # P, (features, components)
    y_loadings: np.ndarray       # Q, (classes, components)
    scores: np.ndarray           # T, (samples, components)
    r2y: float
    q2: Optional[float]
    class_labels: Tuple[str, str] = CLASS_LABELS

    def transform(self, features) -> np.ndarray:
        """Component scores of new samples (sequential deflation)."""
        x = (np.atleast_2d(np.asarray(features, dtype=float)) - self.x_means) / self.x_stds
        t = np.zeros((x.shape[0], self.n_components))
        for a in range(self.n_components):
            t[:, a] = x @ self.weights[:, a]
            x = x - np.outer(t[:, a], self.loadings[:, a])
        return t

    def predict_response(self, features) -> np.ndarray:
        """Predicted one-hot response, one column per class."""
        return self.transform(features) @ self.y_loadings.T + self.y_means


@dataclass(frozen=True)
class Classification:
    label: str
    score: float        # first-component score
    response: float     # predicted response of the second class


# ============================
# Fitting
# ============================

def _one_hot(labels: Sequence[str], class_labels: Tuple[str, str]) -> np.ndarray:
    index = {name: i for i, name in enumerate(class_labels)}
    unknown = sorted({str(l) for l in labels} - set(index))
    if unknown:
        raise DegenerateInput(f"unknown class labels: {', '.join(unknown)}")
    y = np.zeros((len(labels), len(class_labels)))
    y[np.arange(len(labels)), [index[str(l)] for l in labels]] = 1.0
    return y


def _nipals(x: np.ndarray, y: np.ndarray, n_components: int):
    """PLS2 NIPALS on centred/scaled blocks; returns W, P, Q, T and the Y residual."""
    x = x.copy()
    y = y.copy()
    n, p = x.shape
    W = np.zeros((p, n_components))
    P = np.zeros((p, n_components))
    Q = np.zeros((y.shape[1], n_components))
    T = np.zeros((n, n_components))

    for a in range(n_components):
        u = y[:, int(np.argmax(np.var(y, axis=0)))]
        t_old = None
        for _ in range(NIPALS_MAX_ITER):
            w = x.T @ u
            norm = np.linalg.norm(w)
            if norm < 1e-12:
                raise SingularFeatures(f"component {a + 1} has no X variance left to explain")
            w = w / norm
            t = x @ w
            q = y.T @ t / (t @ t)
            u = y @ q / (q @ q)
            if t_old is not None and np.linalg.norm(t - t_old) <= NIPALS_TOL * np.linalg.norm(t):
                break
            t_old = t

        p_a = x.T @ t / (t @ t)
        x = x - np.outer(t, p_a)
        y = y - np.outer(t, q)
        W[:, a], P[:, a], Q[:, a], T[:, a] = w, p_a, q, t

    return W, P, Q, T, y


def _fit(features: np.ndarray, y: np.ndarray, n_components: int) -> PlsModel:
    x_means = features.mean(axis=0)
    x_stds = features.std(axis=0, ddof=1)
    if np.any(x_stds <= 1e-12 * np.maximum(1.0, np.abs(x_means))):
        raise SingularFeatures("a feature is constant")

    x = (features - x_means) / x_stds
    if np.linalg.matrix_rank(x) < n_components:
        raise SingularFeatures(f"features span fewer than {n_components} dimensions")

    y_means = y.mean(axis=0)
    yc = y - y_means
    W, P, Q, T, residual = _nipals(x, yc, n_components)

    tss = float(np.sum(yc**2))
    r2y = 1.0 - float(np.sum(residual**2)) / tss if tss > 0 else 0.0
    return PlsModel(
        n_components=n_components,
        x_means=x_means,
        x_stds=x_stds,
        y_means=y_means,
        weights=W,
        loadings=P,
        y_loadings=Q,
        scores=T,
        r2y=r2y,
        q2=None,
    )


def loo_q2(features, y: np.ndarray, n_components: int) -> float:
    """Leave-one-out Q² = 1 - PRESS / TSS, refitting (scaling included) per left-out row."""
    features = np.asarray(features, dtype=float)
    n = features.shape[0]
    press = 0.0
    for i in range(n):
        keep = np.arange(n) != i
        model = _fit(features[keep], y[keep], n_components)
        residual = y[i] - model.predict_response(features[i])[0]
        press += float(residual @ residual)
    tss = float(np.sum((y - y.mean(axis=0)) ** 2))
    return 1.0 - press / tss


@log_performance()
def pls_da_fit(
    features,
    labels: Sequence[str],
    *,
    n_components: int = 2,
    class_labels: Tuple[str, str] = CLASS_LABELS,
    min_per_class: int = MIN_PER_CLASS,
    cross_validate: bool = True,
) -> PlsModel:
    """
    Fit a two-class PLS-DA model.

    Features are autoscaled (mean 0, unit variance); the response is one-hot.

    Args:
        features: (samples, features) matrix, e.g. (resp_freq, activity) per window
        labels: Class label per sample, each one of ``class_labels``
        n_components: Latent components to extract
        cross_validate: Compute leave-one-out Q²

    Raises:
        ClassImbalanceBelowMinimum: a class has fewer than ``min_per_class`` samples
        SingularFeatures: constant or collinear features
    """
    x = np.asarray(features, dtype=float)
    if x.ndim != 2 or x.shape[0] != len(labels):
        raise DegenerateInput(f"features of shape {x.shape} for {len(labels)} labels")

    y = _one_hot(labels, class_labels)
    counts = y.sum(axis=0).astype(int)
    for name, count in zip(class_labels, counts):
        if count < min_per_class:
            raise ClassImbalanceBelowMinimum(f"{count} '{name}' samples; need {min_per_class}")

    model = _fit(x, y, n_components)
    q2 = loo_q2(x, y, n_components) if cross_validate else None

    fitted = PlsModel(**{**model.__dict__, "q2": q2, "class_labels": tuple(class_labels)})
    q2_text = f"{q2:.3f}" if q2 is not None else "n/a"
    logger.info(f"PLS-DA fit on {x.shape[0]} samples: R²Y={fitted.r2y:.3f}, Q²={q2_text}")
    return fitted


# ============================
# Prediction
# ============================

def classify(model: Optional[PlsModel], window) -> Classification:
    """Class and first-component score of one (resp_freq, activity) window."""
    if model is None:
        raise UnfittedModel("classify needs a fitted PLS-DA model")
    return classify_many(model, [window])[0]


def classify_many(model: Optional[PlsModel], features) -> List[Classification]:
    if model is None:
        raise UnfittedModel("classify needs a fitted PLS-DA model")
    x = np.atleast_2d(np.asarray(features, dtype=float))
    scores = model.transform(x)
    response = scores @ model.y_loadings.T + model.y_means
    second = response[:, 1]
    return [
        Classification(
            label=model.class_labels[1] if r > 0.5 else model.class_labels[0],
            score=float(t),
            response=float(r),
        )
        for t, r in zip(scores[:, 0], second)
    ]


def label_by_speed(speeds: Sequence[float], threshold: float) -> List[str]:
    """Aerobic at or below ``threshold`` BL/s, anaerobic above."""
    return [ANAEROBIC if s > threshold + 1e-9 else AEROBIC for s in speeds]


def score_overlap_fraction(scores, labels: Sequence[str], class_labels: Tuple[str, str] = CLASS_LABELS) -> float:
    """
    Share of samples whose score lies inside the range shared by both classes.

    Zero when the two classes occupy disjoint score intervals.
    """
    s = np.asarray(scores, dtype=float).reshape(-1)
    lab = np.asarray([str(l) for l in labels])
    a, b = s[lab == class_labels[0]], s[lab == class_labels[1]]
    if a.size == 0 or b.size == 0:
        raise DegenerateInput("both classes need at least one score")

    lo = max(a.min(), b.min())
    hi = min(a.max(), b.max())
    if lo > hi:
        return 0.0
    return float(np.mean((s >= lo) & (s <= hi)))

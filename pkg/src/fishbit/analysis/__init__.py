"""Respirometry, speed knees, estimator agreement and PLS-DA."""

from __future__ import annotations

from fishbit.analysis.agreement import Agreement, agreement
from fishbit.analysis.knees import KneeReport, detect_mmr_mrf
from fishbit.analysis.plsda import (
    AEROBIC,
    ANAEROBIC,
    CLASS_LABELS,
    Classification,
    PlsModel,
    classify,
    classify_many,
    label_by_speed,
    loo_q2,
    pls_da_fit,
    score_overlap_fraction,
)
from fishbit.analysis.respirometry import (
    CyclePhases,
    Mo2Estimate,
    RespirometryRun,
    SpeedStep,
    measurement_phase,
    mo2_from_step,
)
from fishbit.analysis.solubility import o2_solubility

__all__ = [
    # Respirometry
    "CyclePhases",
    "SpeedStep",
    "Mo2Estimate",
    "RespirometryRun",
    "measurement_phase",
    "mo2_from_step",
    "o2_solubility",

    # Knees and agreement
    "KneeReport",
    "detect_mmr_mrf",
    "Agreement",
    "agreement",

    # PLS-DA
    "AEROBIC",
    "ANAEROBIC",
    "CLASS_LABELS",
    "PlsModel",
    "Classification",
    "pls_da_fit",
    "loo_q2",
    "classify",
    "classify_many",
    "label_by_speed",
    "score_overlap_fraction",
]

# fishbit/signal_core/filters.py
"""Causal IIR band-pass for the opercular (z) channel."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy import signal

from fishbit.errors import EmptyInput, InsufficientData, InvalidConfig
from fishbit.signal_core.types import EstimatorConfig, as_channel
from fishbit.utils import get_logger

logger = get_logger(__name__)


@lru_cache(maxsize=32)
def _cached_sos(cfg: EstimatorConfig) -> np.ndarray:
    band = [cfg.band_low, cfg.band_high]
    if not 0 < cfg.band_low < cfg.band_high < cfg.fs / 2:
        raise InvalidConfig(f"band {band} Hz violates Nyquist at fs={cfg.fs}")

    if cfg.filter_family == "cheby1":
        sos = signal.cheby1(
            cfg.filter_order, cfg.filter_ripple_db, band,
            btype="bandpass", fs=cfg.fs, output="sos",
        )
    else:
        sos = signal.butter(cfg.filter_order, band, btype="bandpass", fs=cfg.fs, output="sos")

    logger.debug(
        f"Designed {cfg.filter_family} band-pass {band} Hz at {cfg.fs} Hz "
        f"({sos.shape[0]} sections)"
    )
    sos.setflags(write=False)
    return sos


def design_bandpass(cfg: EstimatorConfig) -> np.ndarray:
    """
    Second-order sections of the band-pass described by ``cfg``.

    ``cheby1`` of order n yields n biquads; ``butter`` likewise. Each call
    returns a fresh writable copy: scipy's sosfilt rejects read-only buffers.
    """
    return np.array(_cached_sos(cfg))


def bandpass_filter(channel, cfg: EstimatorConfig) -> np.ndarray:
    """
    Forward-only band-pass of one channel.

    The delay line starts at steady state for the first sample, so a constant
    input produces zero output from the first sample on.

    Args:
        channel: 1-D acceleration samples in g
        cfg: Estimator configuration (band, family, order, warm-up)

    Returns:
        Filtered channel, same length as the input
    """
    x = as_channel(channel)
    if x.size == 0:
        raise EmptyInput("cannot filter an empty channel")
    if x.size < cfg.warmup_samples:
        raise InsufficientData(
            f"channel of {x.size} samples is shorter than the {cfg.warmup_samples}-sample warm-up"
        )

    sos = design_bandpass(cfg)
    zi = signal.sosfilt_zi(sos) * x[0]
    y, _ = signal.sosfilt(sos, x, zi=zi)
    return y


def frequency_response(cfg: EstimatorConfig, freqs) -> np.ndarray:
    """Magnitude response of the designed filter at ``freqs`` (Hz)."""
    freqs = np.atleast_1d(np.asarray(freqs, dtype=float))
    _, h = signal.sosfreqz(design_bandpass(cfg), worN=freqs, fs=cfg.fs)
    return np.abs(h)

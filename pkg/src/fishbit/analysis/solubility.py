# fishbit/analysis/solubility.py
"""
Dissolved oxygen at air saturation in seawater.

The table is generated on import from the Benson-Krause fit in mL/L
(Garcia & Gordon 1992, "combined fit" coefficients), converted to mg/L, and
interpolated bilinearly. Values are for 1 atm of moist air; other barometric
pressures scale linearly.
"""

from __future__ import annotations

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from fishbit.errors import AnalysisError

STANDARD_PRESSURE_KPA = 101.325
MG_PER_ML_O2 = 1.42905

TEMP_GRID_C = np.arange(0.0, 40.0 + 0.5, 1.0)
SALINITY_GRID_PSU = np.arange(0.0, 40.0 + 0.5, 5.0)

_A = (2.00907, 3.22014, 4.05010, 4.94457, -0.256847, 3.88767)
_B = (-6.24523e-3, -7.37614e-3, -1.03410e-2, -8.17083e-3)
_C0 = -4.88682e-7


def benson_krause_ml_per_l(temp_c, salinity_psu):
    """Saturation O2 concentration (mL/L) from the fitted polynomial."""
    t = np.asarray(temp_c, dtype=float)
    s = np.asarray(salinity_psu, dtype=float)
    ts = np.log((298.15 - t) / (273.15 + t))
    poly_t = sum(a * ts**i for i, a in enumerate(_A))
    poly_s = sum(b * ts**i for i, b in enumerate(_B))
    return np.exp(poly_t + s * poly_s + _C0 * s**2)


def _build_table() -> np.ndarray:
    tt, ss = np.meshgrid(TEMP_GRID_C, SALINITY_GRID_PSU, indexing="ij")
    return benson_krause_ml_per_l(tt, ss) * MG_PER_ML_O2


SOLUBILITY_TABLE_MG_L = _build_table()
_interpolator = RegularGridInterpolator(
    (TEMP_GRID_C, SALINITY_GRID_PSU), SOLUBILITY_TABLE_MG_L, method="linear", bounds_error=True
)


def o2_solubility(temp_c: float, salinity_psu: float, pressure_kpa: float = STANDARD_PRESSURE_KPA) -> float:
    """
    Oxygen solubility in mg/L.

    Raises:
        AnalysisError: temperature or salinity outside the 0-40 table
    """
    if pressure_kpa <= 0:
        raise AnalysisError(f"pressure must be positive, got {pressure_kpa} kPa")
    try:
        value = float(_interpolator([[temp_c, salinity_psu]])[0])
    except ValueError as e:
        raise AnalysisError(
            f"no solubility for {temp_c} °C, {salinity_psu} psu (table covers 0-40 °C, 0-40 psu)"
        ) from e
    return value * pressure_kpa / STANDARD_PRESSURE_KPA

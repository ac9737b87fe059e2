"""Deterministic synthetic stand-in for the ANSUR II public release.

The real survey cannot be redistributed with this package; this generator
produces a population with the same column vocabulary, realistic means,
spreads and inter-measurement correlations (landmark heights share a leg
length component), and the public release's subject counts (4082 male,
1986 female). Every loader accepts the real CSV instead; see README.
"""

from __future__ import annotations

import io

import numpy as np

DEFAULT_SEED = 20140602
MALE_COUNT = 4082
FEMALE_COUNT = 1986

COLUMNS = [
    "subjectid",
    "sex",
    "stature",
    "weightkg",
    "sittingheight",
    "acromialheight",
    "acromionradialelength",
    "radialestylionlength",
    "handlength",
    "footlength",
    "trochanterionheight",
    "lateralfemoralepicondyleheight",
    "lateralmalleolusheight",
    "iliocristaleheight",
    "biacromialbreadth",
    "hipbreadth",
]

# sex -> (stature mean mm, stature sd mm, weight mean kg, weight sd kg)
_BASE = {
    "Male": (1756.0, 68.0, 85.5, 14.3),
    "Female": (1628.0, 64.0, 67.8, 11.3),
}


def _rows(rng: np.random.Generator, sex: str, count: int) -> dict[str, np.ndarray]:
    st_mean, st_sd, w_mean, w_sd = _BASE[sex]
    stature = rng.normal(st_mean, st_sd, count)
    z = (stature - st_mean) / st_sd
    weight = np.clip(w_mean + 0.45 * w_sd * z + rng.normal(0, 0.85 * w_sd, count), 35, 180)
    leg = rng.normal(0, 6.0, count)  # shared landmark-height component

    def lin(ratio, noise_sd, extra=None):
        vals = ratio * stature + rng.normal(0, noise_sd, count)
        if extra is not None:
            vals = vals + extra
        return vals

    return {
        "sex": np.full(count, sex, dtype=object),
        "stature": stature,
        "weightkg": weight,
        "sittingheight": lin(0.520, 9.0),
        "acromialheight": lin(0.818, 3.0, extra=leg),
        "acromionradialelength": lin(0.186, 6.0),
        "radialestylionlength": lin(0.146, 5.0),
        "handlength": lin(0.108, 4.0),
        "footlength": lin(0.152, 5.5),
        "trochanterionheight": lin(0.530, 1.8, extra=leg),
        "lateralfemoralepicondyleheight": lin(0.285, 1.5, extra=0.6 * leg),
        "lateralmalleolusheight": lin(0.039, 1.5),
        "iliocristaleheight": lin(0.608, 2.2, extra=leg),
        "biacromialbreadth": lin(0.259, 9.0),
        "hipbreadth": lin(0.191, 10.0),
    }


def generate_population_csv(seed: int = DEFAULT_SEED) -> str:
    """Full synthetic survey as CSV text (header + one row per subject)."""
    rng = np.random.default_rng(seed)
    male = _rows(rng, "Male", MALE_COUNT)
    female = _rows(rng, "Female", FEMALE_COUNT)

    buf = io.StringIO()
    buf.write(",".join(COLUMNS) + "\n")
    sid = 1
    for block in (male, female):
        count = len(block["stature"])
        for i in range(count):
            vals = [str(sid), str(block["sex"][i])]
            for col in COLUMNS[2:]:
                v = block[col][i]
                vals.append(f"{v:.1f}" if col != "weightkg" else f"{v:.2f}")
            buf.write(",".join(vals) + "\n")
            sid += 1
    return buf.getvalue()
